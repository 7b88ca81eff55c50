"""Exact polynomial arithmetic over Z4.

Includes the reduction map to Z2, Bezout witnesses for coprime pairs,
Hensel lifting of divisors of x^n + 1 into divisors of x^n - 1, the
factorization of x^n - 1 into basic irreducibles, and the gcd of monic
polynomials with squarefree reductions (defined through the basic
irreducible factorization, as the usual Euclidean algorithm is not
available over Z4).

Same conventions as poly2: ascending coefficient tuples, no trailing
zeros, zero polynomial = empty tuple with degree -inf.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Union

from z4gqc._text import format_poly, parse_poly
from z4gqc.poly2 import BIN_ONE, BinPoly, NEG_INF, bin_gcd, bin_gcd_ext, factor_squarefree, factor_xn_minus_1


class GcdHypothesisError(ValueError):
    """gcd4 was called outside the regime where it is defined."""


class QuadPoly:
    """Polynomial over Z4 in canonical form (ascending coefficients).

    ``-1`` (and other negative integers) in input coefficients are reduced
    mod 4, so ``QuadPoly([-1, 1])`` is ``x+3``.  Division requires a
    unit-leading divisor: Z4 is not a domain and general division does not
    exist.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) % 4 for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_text(cls, text: str) -> "QuadPoly":
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

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    @property
    def is_unit_leading(self) -> bool:
        return self.leading in (1, 3)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("QuadPoly", self.coeffs))

    def __add__(self, other: "QuadPoly") -> "QuadPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % 4
        return QuadPoly(out)

    def __sub__(self, other: "QuadPoly") -> "QuadPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else 0
            b = other.coeffs[i] if i < len(other.coeffs) else 0
            out[i] = (a - b) % 4
        return QuadPoly(out)

    def __neg__(self) -> "QuadPoly":
        return QuadPoly([(-c) % 4 for c in self.coeffs])

    def __mul__(self, other) -> "QuadPoly":
        if isinstance(other, int):
            return QuadPoly([(c * other) % 4 for c in self.coeffs])
        if not self or not other:
            return QuadPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % 4
        return QuadPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "QuadPoly") -> tuple["QuadPoly", "QuadPoly"]:
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not other.is_unit_leading:
            raise ValueError(
                f"divisor {other.to_text()} has non-unit leading coefficient"
            )
        inv = 1 if other.leading == 1 else 3
        rem = list(self.coeffs)
        dv = other.degree
        quo = [0] * max(len(rem) - dv, 0)
        for i in range(len(rem) - dv - 1, -1, -1):
            c = (rem[i + dv] * inv) % 4
            if c:
                quo[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = (rem[i + j] - c * b) % 4
        return QuadPoly(quo), QuadPoly(rem)

    def __floordiv__(self, other: "QuadPoly") -> "QuadPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "QuadPoly") -> "QuadPoly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "QuadPoly":
        out, base = QUAD_ONE, self
        for bit in bin(n)[2:]:
            out = out * out
            if bit == "1":
                out = out * base
        return out if n else QUAD_ONE

    def subst_neg_x(self) -> "QuadPoly":
        """f(-x)."""
        return QuadPoly([c if i % 2 == 0 else (-c) % 4 for i, c in enumerate(self.coeffs)])

    def to_text(self) -> str:
        return format_poly(self.coeffs)

    def __repr__(self) -> str:
        return f"QuadPoly({self.to_text()!r})"


QUAD_ZERO = QuadPoly()
QUAD_ONE = QuadPoly([1])
QUAD_X = QuadPoly([0, 1])


def xn_minus_1(n: int) -> QuadPoly:
    return QuadPoly([-1] + [0] * (n - 1) + [1])


def quad_add(f: QuadPoly, g: QuadPoly) -> QuadPoly:
    return f + g


def quad_sub(f: QuadPoly, g: QuadPoly) -> QuadPoly:
    return f - g


def quad_mul(f: QuadPoly, g: QuadPoly) -> QuadPoly:
    return f * g


def quad_divmod(f: QuadPoly, g: QuadPoly) -> tuple[QuadPoly, QuadPoly]:
    return divmod(f, g)


def exact_div(f: QuadPoly, g: QuadPoly) -> QuadPoly:
    """f // g, raising ValueError when the division leaves a remainder."""
    q, r = divmod(f, g)
    if r:
        raise ValueError(f"{g.to_text()} does not divide {f.to_text()}")
    return q


def divides(g: QuadPoly, f: QuadPoly) -> bool:
    """True when g divides f exactly (g must be unit-leading or f zero)."""
    if not f:
        return True
    if not g or not g.is_unit_leading:
        return False
    return not divmod(f, g)[1]


def reduce_mod2(f: QuadPoly) -> BinPoly:
    """Coefficientwise reduction Z4 -> Z2 (the bar map)."""
    return BinPoly([c % 2 for c in f.coeffs])


def lift_mod2(t: BinPoly) -> QuadPoly:
    """The {0,1}-coefficient lift of a Z2 polynomial into Z4."""
    return QuadPoly(t.coeffs)


def is_coprime(f: QuadPoly, g: QuadPoly) -> bool:
    """True iff <f, g> = Z4[x], i.e. the mod-2 reductions are coprime."""
    rf, rg = reduce_mod2(f), reduce_mod2(g)
    if not rf and not rg:
        return False
    return bin_gcd(rf, rg).degree == 0


def coprime_witness(f: QuadPoly, g: QuadPoly) -> tuple[QuadPoly, QuadPoly]:
    """Bezout witness (u, v) with u*f + v*g = 1 over Z4.

    Lifts the Z2 witness by one Newton step: if u0*f + v0*g = 1 + 2e then
    ((1-2e)*u0, (1-2e)*v0) is exact over Z4.
    """
    if not is_coprime(f, g):
        raise ValueError("polynomials are not coprime over Z4")
    _, u0, v0 = bin_gcd_ext(reduce_mod2(f), reduce_mod2(g))
    u, v = lift_mod2(u0), lift_mod2(v0)
    err = u * f + v * g - QUAD_ONE  # all coefficients even
    corr = QUAD_ONE - err
    u, v = corr * u, corr * v
    assert u * f + v * g == QUAD_ONE
    return u, v


def hensel_lift(t: BinPoly, n: int) -> QuadPoly:
    """The unique monic divisor f of x^n - 1 over Z4 with reduction t.

    Computed by the Graeffe-style identity f(x^2) = +- t~(x) t~(-x) mod 4,
    where t~ is the {0,1}-lift of t.  Requires n odd and t | x^n + 1.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"block length must be odd and positive, got {n}")
    if not t or t.coeffs[-1] != 1:
        raise ValueError("lift requires a nonzero (monic) input")
    xn1 = BinPoly([1] + [0] * (n - 1) + [1])
    if t * (xn1 // t) != xn1:
        raise ValueError(f"{t.to_text()} does not divide x^{n}+1 over Z2")
    th = lift_mod2(t)
    prod = th * th.subst_neg_x()
    if t.degree % 2 == 1:
        prod = -prod
    # prod = f(x^2): odd coefficients must vanish
    assert all(c == 0 for c in prod.coeffs[1::2])
    f = QuadPoly(prod.coeffs[0::2])
    assert f.is_monic and reduce_mod2(f) == t
    assert divides(f, xn_minus_1(n))
    return f


def factor_xn1_z4(n: int) -> list[QuadPoly]:
    """Basic irreducible factorization of x^n - 1 over Z4, n odd.

    Factors are the Hensel lifts of the Z2 factors of x^n + 1 and inherit
    their deterministic ordering.
    """
    return [hensel_lift(t, n) for t in factor_xn_minus_1(n)]


def _hensel_step(f: QuadPoly, t: BinPoly, s: BinPoly) -> tuple[QuadPoly, QuadPoly]:
    # split monic f with reduction t*s (gcd(t,s)=1) as f = g*h, g-bar = t
    g0, h0 = lift_mod2(t), lift_mod2(s)
    delta4 = f - g0 * h0
    assert all(c % 2 == 0 for c in delta4.coeffs)
    delta = BinPoly([c // 2 for c in delta4.coeffs])
    _, u, v = bin_gcd_ext(t, s)
    q, g1 = divmod(v * delta, t)
    h1 = u * delta + q * s
    g = g0 + 2 * lift_mod2(g1)
    h = h0 + 2 * lift_mod2(h1)
    assert g * h == f
    return g, h


def basic_irreducible_factors(f: QuadPoly) -> list[QuadPoly]:
    """Factor a unit-leading f with squarefree reduction into basic irreducibles.

    Returns monic factors in deterministic order (degree, coefficient
    tuple); a leading unit of 3 is permitted and dropped, since it does not
    change the ideal <f>.  Raises GcdHypothesisError when the reduction has
    a repeated factor.
    """
    if not f.is_unit_leading:
        raise GcdHypothesisError(f"{f.to_text()} is not unit-leading")
    if f.leading == 3:
        f = f * 3
    fbar = reduce_mod2(f)
    if fbar.degree > 0:
        db = fbar.derivative()
        if not db or bin_gcd(fbar, db).degree > 0:
            raise GcdHypothesisError(
                f"reduction of {f.to_text()} has a repeated factor"
            )
    if f.degree <= 0:
        return []
    parts = factor_squarefree(fbar)
    out: list[QuadPoly] = []
    rest = f
    for t in parts[:-1]:
        s = reduce_mod2(rest) // t
        g, rest = _hensel_step(rest, t, s)
        out.append(g)
    out.append(rest)
    out.sort(key=lambda p: (p.degree, p.coeffs))
    return out


def gcd4(f: QuadPoly, g: QuadPoly) -> QuadPoly:
    """Greatest common monic divisor of two unit-leading polynomials
    whose reductions are squarefree.

    Computed by factoring both into basic irreducibles and multiplying the
    factors common to both.  The construction assumes the two
    factorizations refine into a common set of basic irreducibles (true
    whenever both inputs divide some x^n - 1); if factors on the two sides
    share a reduction but differ, no common refinement exists and
    GcdHypothesisError is raised rather than extrapolating.
    """
    ff = basic_irreducible_factors(f)
    gf = basic_irreducible_factors(g)
    gset = {p: p for p in gf}
    byred = {reduce_mod2(p): p for p in gf}
    common = []
    for p in ff:
        if p in gset:
            common.append(p)
        else:
            q = byred.get(reduce_mod2(p))
            if q is not None:
                raise GcdHypothesisError(
                    f"no common refinement: {p.to_text()} vs {q.to_text()}"
                )
    d = QUAD_ONE
    for p in common:
        d = d * p
    assert divides(d, f) and divides(d, g)
    return d


def gcd4_witness(f: QuadPoly, g: QuadPoly) -> tuple[QuadPoly, QuadPoly, QuadPoly]:
    """(d, u, v) with d = gcd4(f, g) and u*f + v*g = d."""
    d = gcd4(f, g)
    u, v = coprime_witness(exact_div(f, d), exact_div(g, d))
    assert u * f + v * g == d
    return d, u, v


def divisor_pairs(n: int) -> list[tuple[QuadPoly, QuadPoly]]:
    """All pairs (f, g) of monic divisors of x^n - 1 with g | f.

    There are 3^r of them for r basic irreducible factors: each factor is
    absent, in f only, or in both.  Deterministic order: the trit vectors
    in lexicographic order over the canonically ordered factors.
    """
    factors = factor_xn1_z4(n)
    out = []
    for trits in itertools.product((0, 1, 2), repeat=len(factors)):
        f, g = QUAD_ONE, QUAD_ONE
        for trit, p in zip(trits, factors):
            if trit >= 1:
                f = f * p
            if trit == 2:
                g = g * p
        out.append((f, g))
    return out


def reciprocal(f: QuadPoly) -> QuadPoly:
    """f*(x) = x^deg(f) f(1/x): the coefficient reversal.

    Not forced monic; if f(0) = 0 the degree drops.  Undefined for f = 0.
    """
    if not f:
        raise ValueError("reciprocal of the zero polynomial is undefined")
    return QuadPoly(f.coeffs[::-1])


def tilde(f: QuadPoly, m: int) -> QuadPoly:
    """f~(x) = f*(x) x^(m - deg f - 1); requires m > deg f.

    Returned unreduced; callers reduce mod x^m - 1 as needed.
    """
    if not f:
        raise ValueError("tilde of the zero polynomial is undefined")
    if m <= f.degree:
        raise ValueError(f"tilde needs m > deg f, got m={m}, deg={f.degree}")
    shift = m - f.degree - 1
    return QuadPoly([0] * shift + list(reciprocal(f).coeffs))


def inverse_mod(f: QuadPoly, mod: QuadPoly) -> QuadPoly:
    """Inverse of f in Z4[x]/(mod) for a unit-leading modulus of
    positive degree; lifts the F2 inverse by one Newton step."""
    if not mod or mod.degree <= 0:
        raise ValueError("modulus must have positive degree")
    if mod.leading not in (1, 3):
        raise ValueError("modulus must have a unit leading coefficient")
    a = f % mod
    d, u, _ = bin_gcd_ext(reduce_mod2(a), reduce_mod2(mod))
    if d.degree != 0:
        raise ValueError("not invertible modulo the given polynomial")
    inv = lift_mod2(u) % mod
    inv = (inv * (QuadPoly([2]) - a * inv)) % mod
    assert (a * inv) % mod == QuadPoly([1])
    return inv


def pow_mod(f: QuadPoly, e: int, mod: QuadPoly) -> QuadPoly:
    """f^e mod `mod` for e >= 0; negative e inverts f first."""
    if e < 0:
        return pow_mod(inverse_mod(f, mod), -e, mod)
    out = QuadPoly([1]) % mod
    base = f % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        e >>= 1
    return out
