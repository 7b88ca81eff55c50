"""Dual codes: linear-algebra oracle and closed-form elimination.

The duality pairing of two module elements collects every shift inner
product into one polynomial mod x^m - 1 (m the lcm of the block
lengths); it vanishes exactly when the elements are orthogonal under
the plain Z4 inner product in every cyclic shift.  `dual_oracle`
computes the dual by Z4 linear algebra.  `eliminate` runs a
fraction-free triangular elimination over a normalized generating set,
recording the quotient pairs (A, B) and the evolving polynomial
representatives, and `dual_closed_form` converts that record straight
into the dual's triangular rows, self-checking orthogonality and
cardinality before reporting success.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .gqc import GqcCode, ModuleElement, NormalizedGenSet, normalize
from .poly4 import (
    QUAD_ZERO,
    GcdHypothesisError,
    QuadPoly,
    exact_div,
    gcd4,
    inverse_mod,
    pow_mod,
    reciprocal,
    tilde,
    xn_minus_1,
)
from .z4linalg import kernel, solve


ONE = QuadPoly([1])
THREE = QuadPoly([3])


def conj_product(d: ModuleElement, c: ModuleElement) -> QuadPoly:
    """Pairing whose coefficients are the Z4 inner products of d with
    the cyclic shifts of c, as an element of Z4[x]/(x^m - 1)."""
    if d.lengths != c.lengths:
        raise ValueError("mismatched block lengths")
    m = lcm(*d.lengths)
    big = xn_minus_1(m)
    acc = QUAD_ZERO
    for di, ci, mi in zip(d.blocks, c.blocks, d.lengths):
        if not di or not ci:
            continue
        cof = exact_div(big, xn_minus_1(mi))
        acc = (acc + di * tilde(ci, m) * cof) % big
    return acc


def is_orthogonal(d: ModuleElement, c: ModuleElement) -> bool:
    return not conj_product(d, c)


def codes_orthogonal(a: GqcCode, b: GqcCode) -> bool:
    """Every generator pair orthogonal in every shift."""
    return all(
        is_orthogonal(x, y) for x in a.generators for y in b.generators
    )


def dual_oracle(code: GqcCode) -> GqcCode:
    """The dual by brute linear algebra: the Z4 kernel of the span
    matrix, re-read as module elements."""
    k = kernel(code.span_matrix())
    rows = [ModuleElement.from_vector(code.lengths, r) for r in k]
    if not rows:
        rows = [ModuleElement.zero(code.lengths)]
    dual = GqcCode(code.lengths, rows)
    assert dual.cardinality() * code.cardinality() == 4 ** code.n
    return dual


@dataclass
class EliminationTrace:
    """Record of the fraction-free elimination of a triangular set.

    snapshots[k][r-1][c-1] is the polynomial representative of row r,
    block c after step k (step 0 = the unit-scaled starting state).
    A[(r, k)], B[(r, k)] are the quotients used at step k on row r to
    clear block r - k; a skipped step stores (1, 0).
    """

    lengths: tuple[int, ...]
    rows: tuple[ModuleElement, ...]
    A: dict
    B: dict
    snapshots: list
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def l(self) -> int:
        return len(self.lengths)

    def G(self, k: int, r: int, c: int) -> QuadPoly:
        """Representative of row r, block c after step k (1-based r, c)."""
        return self.snapshots[k][r - 1][c - 1]

    def final_diag(self, r: int) -> QuadPoly:
        return self.snapshots[-1][r - 1][r - 1]


def eliminate(norm: NormalizedGenSet) -> EliminationTrace:
    """Clear everything below the diagonal of a triangular set.

    Step k rewrites row r as A*row_r^(k-1) - B*row_{r-k}^(0), where A
    and B are the cofactors of gcd4 of the ORIGINAL pivot diagonal and
    the current entry; pivots always enter in their starting state.
    The recorded representatives evolve by the same exact polynomial
    arithmetic, so the cleared entry cancels identically.  Rows are
    first scaled by 3 where needed so every diagonal representative is
    monic.  Entries with leading coefficient other than 1 and gcd4
    failures (repeated factors, incompatible lifts) are reported as
    violations; the latter stop the process.
    """
    l = norm.l
    lengths = norm.lengths
    rows = list(norm.rows)
    reps = [[QUAD_ZERO] * l for _ in range(l)]
    for r in range(1, l + 1):
        for c in range(1, r):
            reps[r - 1][c - 1] = rows[r - 1].blocks[c - 1]
        reps[r - 1][r - 1] = norm.diagonals[r - 1]
        if reps[r - 1][r - 1].leading == 3:
            rows[r - 1] = rows[r - 1].star(THREE)
            reps[r - 1] = [THREE * p for p in reps[r - 1]]
        assert reps[r - 1][r - 1].leading == 1

    rows0 = list(rows)
    reps0 = [list(row) for row in reps]
    snapshots = [[list(row) for row in reps]]
    A: dict = {}
    B: dict = {}
    violations: list[str] = []

    for k in range(1, l):
        for r in range(k + 1, l + 1):
            c = r - k
            entry = reps[r - 1][c - 1]
            if not entry:
                A[(r, k)] = ONE
                B[(r, k)] = QUAD_ZERO
                continue
            if entry.leading != 1:
                violations.append(
                    f"step {k}, row {r}, block {c}: entry is not monic"
                )
            pivot = reps0[c - 1][c - 1]
            try:
                d = gcd4(pivot, entry)
            except GcdHypothesisError as err:
                violations.append(f"step {k}, row {r}, block {c}: {err}")
                return EliminationTrace(
                    lengths, tuple(rows), A, B, snapshots, tuple(violations)
                )
            a_q = exact_div(pivot, d)
            b_q = exact_div(entry, d)
            A[(r, k)] = a_q
            B[(r, k)] = b_q
            rows[r - 1] = rows[r - 1].star(a_q) - rows0[c - 1].star(b_q)
            reps[r - 1] = [
                a_q * reps[r - 1][j] - b_q * reps0[c - 1][j] for j in range(l)
            ]
            assert not reps[r - 1][c - 1], "entry must cancel exactly"
            assert not rows[r - 1].blocks[c - 1]
            assert reps[r - 1][r - 1].leading == 1
        snapshots.append([list(row) for row in reps])

    return EliminationTrace(lengths, tuple(rows), A, B, snapshots, tuple(violations))


@dataclass
class DualResult:
    """Outcome of the closed-form dual construction.

    status is "applied" (rows form the dual, checked by orthogonality
    plus cardinality), "hypothesis-violated" (some level has a diagonal
    that is neither free nor zero, or the elimination could not run),
    or "mismatch" (the formulas did not produce an exact dual)."""

    status: str
    lengths: tuple[int, ...]
    rows: tuple[ModuleElement, ...] | None
    lambdas: dict | None
    detail: str = ""

    @property
    def applied(self) -> bool:
        return self.status == "applied"

    def code(self) -> GqcCode:
        if self.rows is None:
            raise ValueError(f"no closed-form dual: {self.status} ({self.detail})")
        return GqcCode(self.lengths, self.rows)


def level_traces(code: GqcCode) -> tuple[list[NormalizedGenSet], list[EliminationTrace], list[str]]:
    """Normalize every truncation of the code (first i blocks, i = 1..l)
    and eliminate each; truncations are re-normalized from scratch since
    the leading rows of the full normalized set need not generate them.
    Problems collect the per-level elimination violations."""
    l = len(code.lengths)
    norms, traces, problems = [], [], []
    for i in range(1, l + 1):
        sub = code if i == l else code.truncated(i)
        nm = normalize(sub)
        tr = eliminate(nm)
        problems.extend(f"level {i}: {v}" for v in tr.violations)
        norms.append(nm)
        traces.append(tr)
    return norms, traces, problems


def _row_entries(tr: EliminationTrace, i: int, mp: int) -> tuple[list[QuadPoly], dict, bool]:
    """Entries E_{i,1..i} of dual row i from the level-i trace.

    The third return value reports whether every below-diagonal entry
    was pinned by a congruence with a modulus of positive degree; a
    unit modulus says nothing, and the zero default used then is only
    a guess that the final certification may reject."""
    lengths = tr.lengths
    lams: dict = {}
    x = QuadPoly([0, 1])
    pinned = True

    lam_ii = ONE
    lams[(i, i)] = lam_ii
    e_ii = lam_ii * exact_div(xn_minus_1(lengths[i - 1]), reciprocal(tr.final_diag(i)))
    if i == 1:
        return [e_ii], lams, pinned

    a1 = tr.A[(i, i - 1)]
    if a1.degree == 0:
        lam_1 = QUAD_ZERO
        pinned = False
    else:
        astar = reciprocal(a1)
        bstar = reciprocal(tr.B[(i, i - 1)])
        exp = mp + tr.G(i - 2, i, 1).degree - tr.G(i - 2, i, i).degree
        lam_1 = (
            THREE * lam_ii * inverse_mod(bstar, astar) * pow_mod(x, exp, astar)
        ) % astar
    lams[(i, 1)] = lam_1
    entries = [lam_1 * exact_div(xn_minus_1(lengths[0]), reciprocal(tr.G(0, 1, 1)))]

    for s in range(2, i):
        a_s = tr.A[(s, s - 1)]
        if a_s.degree > 0:
            # congruence routed through row s's own last elimination step
            astar = reciprocal(a_s)
            bstar = reciprocal(tr.B[(s, s - 1)])
            exp = mp + tr.G(s - 2, s, s).degree - tr.G(s - 2, s, 1).degree
            lam_s = (THREE * lam_1 * bstar * pow_mod(x, exp, astar)) % astar
        else:
            # mod a unit the congruence above says nothing; when row i had
            # nothing left of block s at the step that cleared it, the same
            # two-term orthogonality argument against row i's intermediate
            # state pins lambda directly
            a_d = tr.A[(i, i - s)]
            clear_left = all(not tr.G(i - s - 1, i, t) for t in range(1, s))
            if a_d.degree > 0 and clear_left:
                astar = reciprocal(a_d)
                bstar = reciprocal(tr.B[(i, i - s)])
                pstar = reciprocal(exact_div(tr.final_diag(s), tr.G(0, s, s)))
                exp = mp + tr.G(i - s - 1, i, s).degree - tr.G(i - s - 1, i, i).degree
                lam_s = (
                    THREE * lam_ii * inverse_mod(bstar, astar) * pstar
                    * pow_mod(x, exp, astar)
                ) % astar
            else:
                lam_s = QUAD_ZERO
                pinned = False
        lams[(i, s)] = lam_s
        entries.append(
            lam_s * exact_div(xn_minus_1(lengths[s - 1]), reciprocal(tr.final_diag(s)))
        )

    entries.append(e_ii)
    return entries, lams, pinned


def _complete_row(
    tr: EliminationTrace,
    i: int,
    full_lengths: tuple[int, ...],
    gens: tuple[ModuleElement, ...],
) -> ModuleElement | None:
    """Rebuild dual row i when the congruences left entries unpinned.

    Each below-diagonal entry must annihilate the reversed accumulated
    diagonal of its block mod x^{m_s}-1, so it is a multiple of the
    complementary divisor H_s; the cofactor coefficients are the only
    unknowns, and pairing against every generator is Z4-linear in them.
    Returns None when no choice of cofactors works."""
    l = len(full_lengths)
    m_all = lcm(*full_lengths)
    diag = exact_div(xn_minus_1(full_lengths[i - 1]), reciprocal(tr.final_diag(i)))
    base_blocks = [QUAD_ZERO] * l
    base_blocks[i - 1] = diag
    fixed = ModuleElement(full_lengths, base_blocks)

    def pair_vector(elem: ModuleElement) -> np.ndarray:
        out = np.zeros(len(gens) * m_all, dtype=np.int64)
        for j, g in enumerate(gens):
            prod = conj_product(elem, g)
            cs = prod.coeffs
            out[j * m_all : j * m_all + len(cs)] = cs
        return out

    basis: list[ModuleElement] = []
    for s in range(1, i):
        d_s = tr.final_diag(s).degree
        if d_s == 0:
            continue  # entry reduces to zero whatever the cofactor
        h_s = exact_div(xn_minus_1(full_lengths[s - 1]), reciprocal(tr.final_diag(s)))
        for j in range(d_s):
            blocks = [QUAD_ZERO] * l
            blocks[s - 1] = QuadPoly([0] * j + [1]) * h_s
            basis.append(ModuleElement(full_lengths, blocks))

    target = (-pair_vector(fixed)) % 4
    if not basis:
        return fixed if not target.any() else None
    mat = np.array([pair_vector(b) for b in basis], dtype=np.int64)
    sol = solve(mat, target)
    if sol is None:
        return None
    out = fixed
    for c, b in zip(sol, basis):
        if c:
            out = out + b.star(QuadPoly([int(c)]))
    return out


def dual_closed_form(code: GqcCode) -> DualResult:
    """Build the dual's triangular rows from elimination data alone.

    Requires every diagonal of every truncation level to be free or
    zero.  The result is certified internally: every produced row must
    pair to zero with every normalized generator, and the cardinalities
    must multiply to 4^n; any failure is reported as a mismatch rather
    than returned."""
    lengths = code.lengths
    l = len(lengths)
    norms, traces, problems = level_traces(code)
    for i in range(1, l + 1):
        # each diagonal of the full set must divide x^{m_i} - 1, which
        # happens exactly for the free and zero blocks (f_i = g_i)
        if norms[-1].fs[i - 1] != norms[-1].gs[i - 1]:
            problems.append(f"block {i} diagonal is neither free nor zero")
    if problems:
        return DualResult(
            "hypothesis-violated", lengths, None, None, "; ".join(problems)
        )

    rows: list[ModuleElement] = []
    lambdas: dict = {}
    loose: list[int] = []
    for i in range(1, l + 1):
        mp = lcm(*lengths[:i])
        try:
            entries, lams, pinned = _row_entries(traces[i - 1], i, mp)
        except ValueError as err:
            return DualResult(
                "mismatch", lengths, None, None, f"row {i}: {err}"
            )
        lambdas.update(lams)
        if not pinned:
            loose.append(i)
        rows.append(
            ModuleElement(lengths, entries + [QUAD_ZERO] * (l - i))
        )

    def certify(cand_rows: list[ModuleElement]) -> str:
        for e in cand_rows:
            for a in norms[-1].rows:
                if not is_orthogonal(e, a):
                    return f"row ({e.to_text()}) does not annihilate ({a.to_text()})"
        cand = GqcCode(lengths, cand_rows)
        if cand.cardinality() * code.cardinality() != 4 ** code.n:
            return (
                f"cardinality {cand.cardinality()} does not complement"
                f" {code.cardinality()}"
            )
        return ""

    failure = certify(rows)
    detail = ""
    if failure and loose:
        # rows whose congruence moduli were units carry guessed zeros;
        # replace each by the annihilator-ideal solve and try again
        for i in loose:
            repaired = _complete_row(traces[i - 1], i, lengths, norms[-1].rows)
            if repaired is None:
                return DualResult(
                    "mismatch", lengths, tuple(rows), lambdas,
                    f"row {i}: no annihilator-ideal completion exists; {failure}",
                )
            rows[i - 1] = repaired
        failure = certify(rows)
        detail = "rows " + ", ".join(map(str, loose)) + " completed by solving the pairing conditions"
    if failure:
        return DualResult("mismatch", lengths, tuple(rows), lambdas, failure)
    return DualResult("applied", lengths, tuple(rows), lambdas, detail)


def residue_grid_check(code: GqcCode) -> list[tuple[tuple[int, int, int], bool]]:
    """For every level i, pivot block r <= i and oracle-dual row t in
    [r, i]: the dual entry at block r times the reversed accumulated
    diagonal of pivot r must vanish mod x^{m_r} - 1."""
    dual_norm = normalize(dual_oracle(code))
    _, traces, _ = level_traces(code)
    out = []
    for i in range(1, len(code.lengths) + 1):
        tr = traces[i - 1]
        if not tr.ok:
            continue
        for r in range(1, i + 1):
            gstar = reciprocal(tr.final_diag(r))
            mod = xn_minus_1(code.lengths[r - 1])
            for t in range(r, i + 1):
                e = dual_norm.rows[t - 1].blocks[r - 1]
                val = (e * gstar) % mod
                out.append(((i, r, t), not val))
    return out


def dual_degree_check(code: GqcCode) -> list[bool]:
    """deg f of oracle-dual block i must equal m_i minus the degree of
    the accumulated diagonal of the level-i elimination."""
    dual_norm = normalize(dual_oracle(code))
    _, traces, _ = level_traces(code)
    out = []
    for i, tr in enumerate(traces, 1):
        if not tr.ok:
            continue
        expect = code.lengths[i - 1] - tr.final_diag(i).degree
        out.append(dual_norm.ts[i - 1] == expect)
    return out
