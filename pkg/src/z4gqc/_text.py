"""Shared polynomial text format.

Terms in descending degree, caret exponents: ``x^3+2x+1``.  Parsing is
permissive (signs, ``*`` between coefficient and ``x``, arbitrary term
order, repeated exponents summed); formatting always emits the canonical
descending form with reduced coefficients and no ``-`` signs.
"""

from __future__ import annotations

import re

_TERM_RE = re.compile(
    r"""^\s*
    (?P<sign>[+-])?\s*
    (?P<coeff>\d+)?           # optional integer coefficient
    \s*\*?\s*
    (?P<var>x)?               # optional variable
    (?:\^(?P<exp>\d+))?       # optional exponent, only after the variable
    \s*$""",
    re.VERBOSE,
)

# split before every sign that starts a new term
_SPLIT_RE = re.compile(r"(?=[+-])")


def parse_poly(text: str) -> dict[int, int]:
    """Parse polynomial text into an exponent -> integer coefficient map.

    Coefficients are returned unreduced (possibly negative); callers reduce
    into their own ring.  Raises ValueError on malformed input.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    coeffs: dict[int, int] = {}
    for piece in _SPLIT_RE.split(s):
        piece = piece.strip()
        if not piece or piece in ("+", "-"):
            if piece:
                raise ValueError(f"dangling sign in polynomial text: {text!r}")
            continue
        m = _TERM_RE.match(piece)
        if not m or (m.group("exp") and not m.group("var")):
            raise ValueError(f"bad polynomial term {piece!r} in {text!r}")
        sign, coeff_s, var, exp_s = m.group("sign", "coeff", "var", "exp")
        if coeff_s is None:
            if var is None:
                raise ValueError(f"bad polynomial term {piece!r} in {text!r}")
            coeff = 1
        else:
            coeff = int(coeff_s)
        if sign == "-":
            coeff = -coeff
        if var is None:
            exp = 0
        else:
            exp = int(exp_s) if exp_s else 1
        coeffs[exp] = coeffs.get(exp, 0) + coeff
    return coeffs


def format_poly(coeffs) -> str:
    """Render ascending coefficients as canonical descending-degree text."""
    terms = []
    for exp in range(len(coeffs) - 1, -1, -1):
        c = coeffs[exp]
        if c == 0:
            continue
        if exp == 0:
            terms.append(str(c))
        else:
            xpart = "x" if exp == 1 else f"x^{exp}"
            terms.append(xpart if c == 1 else f"{c}{xpart}")
    return "+".join(terms) if terms else "0"
