"""Generalized quasi-cyclic codes over Z4.

A code here is a Z4[x]-submodule of R_{m_1} x ... x R_{m_l}, where
R_m = Z4[x]/(x^m - 1) and every block length m_i is odd.  `normalize`
rebuilds an arbitrary finite generating set into a triangular one:
row i vanishes on every block past i and carries f_i + 2*g_i on block
i with g_i | f_i | x^{m_i} - 1.  `min_gen_set` expands the triangular
rows into a spanning set whose size matches the code cardinality, and
`membership` returns explicit module coefficients for a codeword.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from .poly2 import BinPoly, bin_gcd, bin_gcd_ext
from .poly4 import (
    QUAD_ZERO,
    QuadPoly,
    exact_div,
    hensel_lift,
    lift_mod2,
    reduce_mod2,
    xn_minus_1,
)
from .z4linalg import howell_form, member, quad_matrix, solve, span_size


def check_lengths(lengths) -> tuple[int, ...]:
    """Validate a block-length profile: positive odd integers."""
    out = tuple(int(m) for m in lengths)
    if not out:
        raise ValueError("at least one block is required")
    for m in out:
        if m <= 0 or m % 2 == 0:
            raise ValueError(f"block lengths must be positive and odd, got {m}")
    return out


def _offsets(lengths: tuple[int, ...]) -> list[int]:
    out = [0]
    for m in lengths:
        out.append(out[-1] + m)
    return out


class ModuleElement:
    """One element of R_{m_1} x ... x R_{m_l}, a polynomial per block.

    Blocks are reduced mod x^{m_i} - 1 on construction, so any
    polynomial input is accepted.
    """

    __slots__ = ("lengths", "blocks")

    def __init__(self, lengths, blocks):
        self.lengths = check_lengths(lengths)
        if len(blocks) != len(self.lengths):
            raise ValueError("one polynomial per block is required")
        self.blocks = tuple(
            b % xn_minus_1(m) for b, m in zip(blocks, self.lengths)
        )

    @classmethod
    def from_texts(cls, lengths, texts) -> "ModuleElement":
        return cls(lengths, [QuadPoly.from_text(t) for t in texts])

    @classmethod
    def from_vector(cls, lengths, vec) -> "ModuleElement":
        lengths = check_lengths(lengths)
        v = np.asarray(vec, dtype=np.int64) % 4
        off = _offsets(lengths)
        if len(v) != off[-1]:
            raise ValueError(f"expected a vector of length {off[-1]}")
        return cls(
            lengths,
            [QuadPoly(v[off[i] : off[i + 1]]) for i in range(len(lengths))],
        )

    @classmethod
    def zero(cls, lengths) -> "ModuleElement":
        return cls(lengths, [QUAD_ZERO] * len(check_lengths(lengths)))

    @property
    def n(self) -> int:
        return sum(self.lengths)

    def to_vector(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.int64)
        off = _offsets(self.lengths)
        for i, b in enumerate(self.blocks):
            for j, c in enumerate(b.coeffs):
                out[off[i] + j] = c
        return out

    def star(self, c: QuadPoly) -> "ModuleElement":
        """Module action: multiply every block by c."""
        return ModuleElement(self.lengths, [c * b for b in self.blocks])

    def shift(self, u: int = 1) -> "ModuleElement":
        return self.star(QuadPoly([0] * u + [1]) if u else QuadPoly([1]))

    def truncated(self, i: int) -> "ModuleElement":
        """Projection onto the first i blocks."""
        if not 1 <= i <= len(self.lengths):
            raise ValueError("block count out of range")
        return ModuleElement(self.lengths[:i], self.blocks[:i])

    def is_zero(self) -> bool:
        return all(not b for b in self.blocks)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        if self.lengths != other.lengths:
            raise ValueError("mismatched block lengths")
        return ModuleElement(
            self.lengths, [a + b for a, b in zip(self.blocks, other.blocks)]
        )

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        if self.lengths != other.lengths:
            raise ValueError("mismatched block lengths")
        return ModuleElement(
            self.lengths, [a - b for a, b in zip(self.blocks, other.blocks)]
        )

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.lengths, [-b for b in self.blocks])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleElement)
            and self.lengths == other.lengths
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash((self.lengths, self.blocks))

    def to_text(self) -> str:
        return " | ".join(b.to_text() for b in self.blocks)

    def __repr__(self) -> str:
        return f"ModuleElement({self.to_text()!r})"


class GqcCode:
    """A Z4[x]-submodule given by block lengths and a generating set."""

    def __init__(self, lengths, generators):
        self.lengths = check_lengths(lengths)
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, ModuleElement) or g.lengths != self.lengths:
                raise ValueError("generators must share the code's lengths")
        self.generators = gens
        self._span = None
        self._howell = None

    @classmethod
    def from_polys(cls, lengths, rows) -> "GqcCode":
        lengths = check_lengths(lengths)
        gens = []
        for row in rows:
            polys = []
            for entry in row:
                if isinstance(entry, QuadPoly):
                    polys.append(entry)
                elif isinstance(entry, str):
                    polys.append(QuadPoly.from_text(entry))
                else:
                    polys.append(QuadPoly(entry))
            gens.append(ModuleElement(lengths, polys))
        return cls(lengths, gens)

    @property
    def n(self) -> int:
        return sum(self.lengths)

    def span_matrix(self) -> np.ndarray:
        """All shifts x^u * gen for u < lcm of the lengths; its Z4 row
        span is the code as a set."""
        if self._span is None:
            period = lcm(*self.lengths)
            rows = []
            for g in self.generators:
                cur = g
                for _ in range(period):
                    rows.append(cur.to_vector())
                    cur = cur.shift()
            if not rows:
                rows = [np.zeros(self.n, dtype=np.int64)]
            self._span = quad_matrix(rows)
        return self._span

    def howell(self) -> np.ndarray:
        if self._howell is None:
            self._howell = howell_form(self.span_matrix())
        return self._howell

    def cardinality(self) -> int:
        return span_size(self.howell())

    def contains_vector(self, vec) -> bool:
        return member(self.howell(), vec)

    def contains(self, elem: ModuleElement) -> bool:
        if elem.lengths != self.lengths:
            return False
        return self.contains_vector(elem.to_vector())

    def truncated(self, i: int) -> "GqcCode":
        """The projection onto the first i blocks, as a code."""
        return GqcCode(self.lengths[:i], [g.truncated(i) for g in self.generators])

    def same_code(self, other: "GqcCode") -> bool:
        return self.lengths == other.lengths and np.array_equal(
            self.howell(), other.howell()
        )


def cyclic_pair(rows: np.ndarray, m: int) -> tuple[QuadPoly, QuadPoly]:
    """Recover (f, g) with D = <f + 2g>, g | f | x^m - 1, from any Z4
    matrix whose row span is the shift-closed code D in R_m.

    The zero code comes back as f = g = x^m - 1.
    """
    target = xn_minus_1(m)
    if rows.size == 0 or not rows.any():
        return target, target
    h = howell_form(quad_matrix(rows, m))

    # reduction mod 2 gives the binary cyclic code <fbar>
    red = None
    tor_polys = []
    for row in h:
        nz = np.nonzero(row)[0]
        if not len(nz):
            continue
        poly = QuadPoly(row)
        if int(row[nz[0]]) % 2:
            rbar = reduce_mod2(poly)
            red = rbar if red is None else bin_gcd(red, rbar)
            tor_polys.append(rbar)
        else:
            tor_polys.append(BinPoly([c // 2 for c in row]))

    xm1_bar = reduce_mod2(target)
    fbar = xm1_bar if red is None else bin_gcd(red, xm1_bar)
    f = target if fbar == xm1_bar else hensel_lift(fbar, m)

    gbar = xm1_bar
    for p in tor_polys:
        gbar = bin_gcd(gbar, p)
    g = target if gbar == xm1_bar else hensel_lift(gbar, m)

    assert not divmod(fbar, gbar)[1], "torsion must contain the reduction"
    t, k = f.degree, g.degree
    assert span_size(h) == 4 ** (m - t) * 2 ** (t - k)
    # the single element f + 2g must regenerate the span
    gen = (f + QuadPoly([2]) * g) % target
    shifts = []
    cur = gen
    x = QuadPoly([0, 1])
    for _ in range(m):
        shifts.append(cur)
        cur = (x * cur) % target
    regen = quad_matrix([[s.coeffs[j] if j < len(s.coeffs) else 0 for j in range(m)] for s in shifts])
    assert np.array_equal(howell_form(regen), h), "span mismatch in cyclic recovery"
    return f, g


@dataclass
class NormalizedGenSet:
    """Triangular generating set: row i is zero past block i and its
    block-i entry is f_i + 2*g_i reduced mod x^{m_i} - 1."""

    lengths: tuple[int, ...]
    rows: tuple[ModuleElement, ...]
    fs: tuple[QuadPoly, ...]
    gs: tuple[QuadPoly, ...]
    # (row, block) pairs, 1-based, whose entry degree could not be pushed
    # below the diagonal degree; expected empty
    unreduced: tuple[tuple[int, int], ...] = ()

    @property
    def l(self) -> int:
        return len(self.lengths)

    @property
    def diagonals(self) -> tuple[QuadPoly, ...]:
        """Unreduced diagonal representatives f_i + 2*g_i."""
        two = QuadPoly([2])
        return tuple(f + two * g for f, g in zip(self.fs, self.gs))

    @property
    def ts(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.fs)

    @property
    def ks(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.gs)

    @property
    def hs(self) -> tuple[QuadPoly, ...]:
        """Cofactors h_i = (x^{m_i} - 1)/f_i."""
        return tuple(
            exact_div(xn_minus_1(m), f) for m, f in zip(self.lengths, self.fs)
        )

    def cardinality(self) -> int:
        size = 1
        for m, t, k in zip(self.lengths, self.ts, self.ks):
            size *= 4 ** (m - t) * 2 ** (t - k)
        return size

    def code(self) -> GqcCode:
        return GqcCode(self.lengths, self.rows)

    def torsion_rows(self) -> tuple[ModuleElement, ...]:
        """h_i * row_i; its block-i entry is 2 h_i g_i."""
        return tuple(r.star(h) for r, h in zip(self.rows, self.hs))

    def describe(self) -> str:
        lines = []
        for i, (m, f, g) in enumerate(zip(self.lengths, self.fs, self.gs), 1):
            lines.append(
                f"block {i}: m={m}  f={f.to_text()}  g={g.to_text()}"
                f"  row=({self.rows[i - 1].to_text()})"
            )
        return "\n".join(lines)


def _vanishing_rows(matrix: np.ndarray, lengths, i: int) -> np.ndarray:
    """Rows spanning the subcode of the row span that vanishes on all
    blocks past i, in original column order."""
    off = _offsets(check_lengths(lengths))
    n = off[-1]
    if i == len(lengths):
        h = howell_form(matrix)
        return h[[bool(r.any()) for r in h]]
    tail = list(range(off[i], n))
    head = list(range(off[i]))
    perm = tail + head
    hp = howell_form(np.asarray(matrix)[:, perm] % 4)
    keep = []
    for row in hp:
        nz = np.nonzero(row)[0]
        if len(nz) and nz[0] >= len(tail):
            orig = np.zeros(n, dtype=np.int64)
            orig[perm] = row
            keep.append(orig)
    if not keep:
        return np.zeros((0, n), dtype=np.int64)
    return quad_matrix(keep)


def normalize(code: GqcCode) -> NormalizedGenSet:
    """Build the triangular generating set of a code.

    Works from the last block towards the first.  For each block i the
    subcode vanishing past block i is extracted exactly (the row span
    keeps that property through the Howell form), its block-i shadow is
    a cyclic code whose pair (f_i, g_i) is recovered, and a preimage row
    with block-i entry f_i + 2*g_i is solved for.  A right-to-left
    division pass then forces every below-diagonal entry to degree
    below deg(f_i + 2*g_i).
    """
    lengths = code.lengths
    l = len(lengths)
    off = _offsets(lengths)
    full = code.span_matrix()
    h_full = howell_form(full)

    rows: list[ModuleElement] = [ModuleElement.zero(lengths)] * l
    fs: list[QuadPoly] = [QUAD_ZERO] * l
    gs: list[QuadPoly] = [QUAD_ZERO] * l
    two = QuadPoly([2])

    for i in range(l, 0, -1):
        sub = _vanishing_rows(h_full, lengths, i)
        block = sub[:, off[i - 1] : off[i]] if sub.size else sub.reshape(0, lengths[i - 1])
        f, g = cyclic_pair(block, lengths[i - 1])
        fs[i - 1], gs[i - 1] = f, g
        diag = (f + two * g) % xn_minus_1(lengths[i - 1])
        if not diag:
            # only the zero block reduces to nothing; its row is zero
            rows[i - 1] = ModuleElement.zero(lengths)
            continue
        target = np.zeros(lengths[i - 1], dtype=np.int64)
        for j, c in enumerate(diag.coeffs):
            target[j] = c
        combo = solve(block, target)
        assert combo is not None, "diagonal must lie in the block shadow"
        vec = (combo @ sub) % 4
        rows[i - 1] = ModuleElement.from_vector(lengths, vec)

    # push below-diagonal entries under the diagonal degree
    diags = [(f + two * g) for f, g in zip(fs, gs)]

    def reduce_row(j: int) -> None:
        # right to left, so each subtraction only disturbs columns further left
        for i in range(j - 1, 0, -1):
            e = rows[j - 1].blocks[i - 1]
            d = diags[i - 1]
            if not e or e.degree < d.degree:
                continue
            q = e // d
            if q:
                rows[j - 1] = rows[j - 1] - rows[i - 1].star(q)

    for j in range(2, l + 1):
        if not rows[j - 1].is_zero():
            reduce_row(j)

    # force entry degrees to decrease strictly down every column among
    # unit-leading entries; a leading coefficient of 2 cannot be cancelled
    # from above and exempts the entry from the chain (it is recorded)
    x = QuadPoly([0, 1])

    def anchor_degree(j: int, k: int) -> int:
        # degree of the nearest unit-leading entry above row j in column k,
        # falling back to the diagonal
        for i in range(j - 1, k, -1):
            p = rows[i - 1].blocks[k - 1]
            if p and p.leading != 2:
                return p.degree
        return diags[k - 1].degree

    def chain_violations(j: int) -> list[int]:
        out = []
        for k in range(1, j):
            e = rows[j - 1].blocks[k - 1]
            if e and e.leading != 2 and e.degree >= anchor_degree(j, k):
                out.append(k)
        return out

    for j in range(2, l + 1):
        if rows[j - 1].is_zero():
            continue
        seen = {rows[j - 1].blocks}
        budget = 16 * (sum(lengths) + l)
        progress = True
        while progress and budget > 0:
            budget -= 1
            progress = False
            for k in reversed(chain_violations(j)):
                e = rows[j - 1].blocks[k - 1]
                saved = rows[j - 1]
                # any unit-leading entry above of degree <= deg e cancels
                # the lead; probe nearest first, skip states already seen
                for i in range(j - 1, k, -1):
                    p = rows[i - 1].blocks[k - 1]
                    if not p or p.leading == 2 or p.degree > e.degree:
                        continue
                    c = QuadPoly([e.leading * p.leading % 4])  # 3*3 = 1
                    rows[j - 1] = saved - rows[i - 1].star(c * x ** (e.degree - p.degree))
                    reduce_row(j)
                    if rows[j - 1].blocks not in seen:
                        seen.add(rows[j - 1].blocks)
                        progress = True
                        break
                    rows[j - 1] = saved
                if progress:
                    break
        if not chain_violations(j):
            continue
        # greedy got trapped: ask directly for a representative of the same
        # coset whose entries all sit strictly below the anchor degrees;
        # each bound is a block of linear conditions on the combination
        prefix = GqcCode(lengths, tuple(rows[: j - 1])).span_matrix()
        cols: list[int] = []
        for k in range(1, j):
            bound = anchor_degree(j, k)
            cols.extend(range(off[k - 1] + bound, off[k]))
        vec = rows[j - 1].to_vector()
        if cols and prefix.size:
            combo = solve(prefix[:, cols], vec[cols])
            if combo is not None:
                rows[j - 1] = ModuleElement.from_vector(
                    lengths, (vec - combo @ prefix) % 4
                )

    unreduced = []
    for i in range(1, l):
        last = diags[i - 1].degree
        for j in range(i + 1, l + 1):
            e = rows[j - 1].blocks[i - 1]
            if not e:
                continue
            if e.leading == 2 or e.degree >= last:
                unreduced.append((j, i))
            else:
                last = e.degree

    out = NormalizedGenSet(lengths, tuple(rows), tuple(fs), tuple(gs), tuple(unreduced))
    assert out.cardinality() == span_size(h_full), "size bookkeeping failed"
    assert np.array_equal(out.code().howell(), h_full), "span changed"
    return out


@dataclass
class MinGenSet:
    """Spanning set x^u * row_i (u < m_i - t_i) plus x^u * (h_i * row_i)
    (u < t_i - k_i); coefficients Z4 on the first group and {0, 1} on
    the second enumerate the code without repetition."""

    lengths: tuple[int, ...]
    free_part: tuple[tuple[ModuleElement, ...], ...]
    torsion_part: tuple[tuple[ModuleElement, ...], ...]

    @property
    def elements(self) -> tuple[ModuleElement, ...]:
        out = []
        for grp in self.free_part:
            out.extend(grp)
        for grp in self.torsion_part:
            out.extend(grp)
        return tuple(out)

    @property
    def free_count(self) -> int:
        return sum(len(g) for g in self.free_part)

    @property
    def torsion_count(self) -> int:
        return sum(len(g) for g in self.torsion_part)

    def cardinality(self) -> int:
        return 4**self.free_count * 2**self.torsion_count

    def matrix(self) -> np.ndarray:
        elems = self.elements
        if not elems:
            return np.zeros((0, sum(self.lengths)), dtype=np.int64)
        return quad_matrix([e.to_vector() for e in elems])


def min_gen_set(norm: NormalizedGenSet) -> MinGenSet:
    """Expand a triangular set into the minimal spanning family."""
    free = []
    torsion = []
    for i in range(norm.l):
        m, t, k = norm.lengths[i], norm.ts[i], norm.ks[i]
        row = norm.rows[i]
        free.append(tuple(row.shift(u) if u else row for u in range(m - t)))
        b = row.star(norm.hs[i])
        torsion.append(tuple(b.shift(u) if u else b for u in range(t - k)))
    out = MinGenSet(norm.lengths, tuple(free), tuple(torsion))
    assert out.cardinality() == norm.cardinality()
    if out.elements:
        assert np.array_equal(
            howell_form(out.matrix()), norm.code().howell()
        ), "minimal family must regenerate the code"
    return out


@dataclass
class Witness:
    """Coefficients with sum_i q_i * row_i + w_i * (h_i * row_i) equal
    to the tested element."""

    qs: tuple[QuadPoly, ...]
    ws: tuple[QuadPoly, ...]

    def combine(self, norm: NormalizedGenSet) -> ModuleElement:
        acc = ModuleElement.zero(norm.lengths)
        for q, w, row, b in zip(self.qs, self.ws, norm.rows, norm.torsion_rows()):
            acc = acc + row.star(q) + b.star(w)
        return acc


def membership(norm: NormalizedGenSet, elem: ModuleElement) -> Witness | None:
    """Decide membership block by block, last block first, producing
    explicit coefficients.  Returns None for non-members."""
    if elem.lengths != norm.lengths:
        return None
    cur = elem
    l = norm.l
    qs = [QUAD_ZERO] * l
    ws = [QUAD_ZERO] * l
    two = QuadPoly([2])
    for i in range(l, 0, -1):
        m = norm.lengths[i - 1]
        p = cur.blocks[i - 1]
        f, g = norm.fs[i - 1], norm.gs[i - 1]
        if f.degree == m and g.degree == m:
            # zero block: nothing generates entries here
            if p:
                return None
            continue
        if not p:
            continue
        fbar = reduce_mod2(f)
        q0bar, rem = divmod(reduce_mod2(p), fbar)
        if rem:
            return None
        q0 = lift_mod2(q0bar)
        diag = (f + two * g) % xn_minus_1(m)
        resid = (p - q0 * diag) % xn_minus_1(m)
        assert all(c % 2 == 0 for c in resid.coeffs)
        sbar = BinPoly([c // 2 for c in resid.coeffs])
        q_extra = QUAD_ZERO
        w = QUAD_ZERO
        if sbar:
            gbar = reduce_mod2(g)
            hbar = reduce_mod2(norm.hs[i - 1])
            mult, rem2 = divmod(sbar, gbar)
            if rem2:
                return None
            d, abar, bbar = bin_gcd_ext(fbar, hbar * gbar)
            assert d == gbar
            mod = reduce_mod2(xn_minus_1(m))
            q_extra = two * lift_mod2((abar * mult) % mod)
            w = lift_mod2((bbar * mult) % mod)
        total_q = q0 + q_extra
        cur = cur - norm.rows[i - 1].star(total_q)
        if w:
            cur = cur - norm.torsion_rows()[i - 1].star(w)
        assert not cur.blocks[i - 1], "block must clear after subtraction"
        qs[i - 1], ws[i - 1] = total_q, w
    if not cur.is_zero():
        return None
    out = Witness(tuple(qs), tuple(ws))
    assert out.combine(norm) == elem
    return out
