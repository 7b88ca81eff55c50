"""Exact polynomial arithmetic over Z2 and factorization of x^n + 1.

Polynomials are immutable, stored as ascending coefficient tuples with no
trailing zeros; the zero polynomial has an empty tuple and degree -inf.
All of this is desk-scale exact arithmetic: degrees stay well under 100,
so schoolbook algorithms are used throughout.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Union

from z4gqc._text import format_poly, parse_poly

NEG_INF = float("-inf")


class BinPoly:
    """Polynomial over Z2 in canonical form.

    Supports ``+ - * // % divmod == hash bool`` with the usual meanings;
    ``+`` and ``-`` coincide.  Instances are treated as immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) % 2 for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_text(cls, text: str) -> "BinPoly":
        raw = parse_poly(text)
        if not raw:
            return cls()
        out = [0] * (max(raw) + 1)
        for exp, c in raw.items():
            out[exp] += c
        return cls(out)

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("BinPoly", self.coeffs))

    def __add__(self, other: "BinPoly") -> "BinPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return BinPoly(out)

    __sub__ = __add__

    def __mul__(self, other: "BinPoly") -> "BinPoly":
        if not self or not other:
            return BinPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] ^= a & b
        return BinPoly(out)

    def __divmod__(self, other: "BinPoly") -> tuple["BinPoly", "BinPoly"]:
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd, dv = len(rem) - 1, other.degree
        quo = [0] * max(dd - dv + 1, 0)
        for i in range(dd - dv, -1, -1):
            if len(rem) > i + dv and rem[i + dv]:
                quo[i] = 1
                for j, c in enumerate(other.coeffs):
                    rem[i + j] ^= c
        return BinPoly(quo), BinPoly(rem)

    def __floordiv__(self, other: "BinPoly") -> "BinPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "BinPoly") -> "BinPoly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "BinPoly":
        out, base = BIN_ONE, self
        for bit in bin(n)[2:]:
            out = out * out
            if bit == "1":
                out = out * base
        return out if n else BIN_ONE

    def derivative(self) -> "BinPoly":
        return BinPoly([(i * c) % 2 for i, c in enumerate(self.coeffs)][1:])

    def to_text(self) -> str:
        return format_poly(self.coeffs)

    def __repr__(self) -> str:
        return f"BinPoly({self.to_text()!r})"


BIN_ZERO = BinPoly()
BIN_ONE = BinPoly([1])
BIN_X = BinPoly([0, 1])


def bin_add(f: BinPoly, g: BinPoly) -> BinPoly:
    return f + g


def bin_mul(f: BinPoly, g: BinPoly) -> BinPoly:
    return f * g


def bin_divmod(f: BinPoly, g: BinPoly) -> tuple[BinPoly, BinPoly]:
    return divmod(f, g)


def bin_gcd(f: BinPoly, g: BinPoly) -> BinPoly:
    """Monic gcd; errors if both inputs are zero."""
    if not f and not g:
        raise ValueError("gcd of two zero polynomials is undefined")
    while g:
        f, g = g, f % g
    return f


def bin_gcd_ext(f: BinPoly, g: BinPoly) -> tuple[BinPoly, BinPoly, BinPoly]:
    """Extended gcd: returns (d, u, v) with u*f + v*g = d."""
    if not f and not g:
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = f, g
    u0, u1 = BIN_ONE, BIN_ZERO
    v0, v1 = BIN_ZERO, BIN_ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 + q * u1
        v0, v1 = v1, v0 + q * v1
    return r0, u0, v0


def _xq_mod(f: BinPoly, e: int) -> BinPoly:
    # x^(2^e) mod f by repeated squaring
    h = BIN_X % f
    for _ in range(e):
        h = (h * h) % f
    return h


def is_irreducible(f: BinPoly) -> bool:
    """Rabin's criterion over GF(2)."""
    d = f.degree
    if d is NEG_INF or d == 0:
        return False
    if d == 1:
        return True
    if _xq_mod(f, d) != BIN_X % f:
        return False
    for q in _prime_factors(d):
        h = _xq_mod(f, d // q) + BIN_X
        if bin_gcd(h if h else f, f).degree > 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _edf(f: BinPoly, d: int) -> list[BinPoly]:
    # equal-degree splitting of a product of distinct degree-d irreducibles,
    # via trace polynomials over a deterministic sweep of candidates
    if f.degree == d:
        return [f]
    for bits in itertools.count(2):
        # candidates of increasing size; skip constants
        h = BinPoly([(bits >> i) & 1 for i in range(bits.bit_length())])
        if h.degree < 1:
            continue
        tr = BIN_ZERO
        g = h % f
        for _ in range(d):
            tr = tr + g
            g = (g * g) % f
        for shift in (BIN_ZERO, BIN_ONE):
            cand = tr + shift
            if not cand:
                continue
            g1 = bin_gcd(cand, f)
            if 0 < g1.degree < f.degree:
                return _edf(g1, d) + _edf(f // g1, d)
    raise AssertionError("unreachable")


def factor_squarefree(f: BinPoly) -> list[BinPoly]:
    """Irreducible factors of a squarefree polynomial over Z2.

    Distinct-degree decomposition followed by equal-degree splitting;
    deterministic output order (degree, then ascending coefficient tuple).
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if f.degree > 0:
        df = f.derivative()
        # f' = 0 over Z2 means f is a perfect square
        if not df or bin_gcd(f, df).degree > 0:
            raise ValueError("input has a repeated factor")
    factors: list[BinPoly] = []
    g = f
    d = 0
    h = BIN_X % g if g.degree > 0 else BIN_ZERO
    while g.degree > 0:
        d += 1
        if 2 * d > g.degree:
            factors.append(g)
            break
        h = (h * h) % g
        part = bin_gcd((h + BIN_X) if (h + BIN_X) else g, g)
        if part.degree > 0:
            factors.extend(_edf(part, d))
            g = g // part
            h = h % g if g.degree > 0 else BIN_ZERO
    factors.sort(key=lambda p: (p.degree, p.coeffs))
    return factors


def factor_xn_minus_1(n: int) -> list[BinPoly]:
    """Irreducible factors of x^n + 1 over Z2, n odd.

    The input is squarefree for odd n, so every factor has multiplicity 1.
    Deterministic ordering: by degree, then by ascending coefficient tuple.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"block length must be odd and positive, got {n}")
    xn1 = BinPoly([1] + [0] * (n - 1) + [1])
    return factor_squarefree(xn1)
