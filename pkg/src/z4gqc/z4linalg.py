"""Linear algebra over Z4 on numpy integer matrices.

Convention: matrices are 2-D numpy arrays with entries in {0,1,2,3}; rows
span a Z4-submodule of Z4^n.  Because Z4 is not a field, plain row echelon
is not enough to answer span questions; the Howell form is the canonical
representative of a row span and backs membership, span comparison and
subcode extraction.  The coding-theory standard form [I A B / 0 2I 2C]
(after a column permutation) gives the type 4^k1 2^k2 and the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

QuadMatrix = np.ndarray  # entries reduced mod 4


def quad_matrix(rows, cols: int | None = None) -> QuadMatrix:
    """Build a matrix mod 4 from an iterable of rows (cols for empty input)."""
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, cols if cols is not None else 0), dtype=np.int64)
    return np.array(rows, dtype=np.int64) % 4


def howell_form(mat: QuadMatrix) -> QuadMatrix:
    """Canonical Howell normal form of the row span of mat.

    Two matrices have equal row spans over Z4 iff their Howell forms are
    identical.  Rows are pivoted left to right; unit pivots are normalized
    to 1 with zeros above, pivots of 2 keep entries above reduced mod 2.
    For every pivot-2 row, twice the row is pushed back into the working
    set so the span property holds for trailing-column sections.
    """
    return _howell(np.array(mat, dtype=np.int64) % 4, transform=False)[0]


def howell_with_transform(mat: QuadMatrix) -> tuple[QuadMatrix, QuadMatrix]:
    """(H, T) with H the Howell form and H = T @ mat (mod 4)."""
    m = np.array(mat, dtype=np.int64) % 4
    return _howell(m, transform=True)


def _howell(m: QuadMatrix, transform: bool) -> tuple[QuadMatrix, QuadMatrix]:
    nrows, ncols = m.shape
    if transform:
        work = np.hstack([m, np.eye(nrows, dtype=np.int64)])
    else:
        work = m.copy()
    rows = [r.copy() for r in work if r[:ncols].any()]
    out = []  # (pivot_col, row)
    for c in range(ncols):
        pidx = next((i for i, r in enumerate(rows) if r[c] % 2 == 1), None)
        if pidx is not None:
            pivot = rows.pop(pidx)
            if pivot[c] % 4 == 3:
                pivot = (pivot * 3) % 4
            new_rows = []
            for r in rows:
                if r[c]:
                    r = (r - r[c] * pivot) % 4
                if r[:ncols].any():
                    new_rows.append(r)
            rows = new_rows
        else:
            pidx = next((i for i, r in enumerate(rows) if r[c] == 2), None)
            if pidx is None:
                continue
            pivot = rows.pop(pidx)
            new_rows = []
            for r in rows:
                if r[c] == 2:
                    r = (r - pivot) % 4
                if r[:ncols].any():
                    new_rows.append(r)
            rows = new_rows
            extra = (2 * pivot) % 4
            if extra[:ncols].any():
                rows.append(extra)
        out.append((c, pivot % 4))
    # normalize entries above each pivot
    for i, (c, p) in enumerate(out):
        for j in range(i):
            rj = out[j][1]
            if p[c] == 1:
                k = rj[c] % 4
            else:  # pivot value 2: reduce the column entry mod 2
                k = (rj[c] % 4) // 2
            if k:
                out[j] = (out[j][0], (rj - k * p) % 4)
    if not out:
        h = np.zeros((0, work.shape[1]), dtype=np.int64)
    else:
        h = np.array([r for _, r in out], dtype=np.int64)
    return h[:, :ncols], h[:, ncols:]


def _pivots(h: QuadMatrix) -> list[tuple[int, int]]:
    # (column, value) of the leading entry of each Howell row
    out = []
    for r in h:
        nz = np.nonzero(r)[0]
        if len(nz):
            out.append((int(nz[0]), int(r[nz[0]])))
    return out


def span_size(mat: QuadMatrix) -> int:
    """Number of elements in the row span: 4 per unit pivot, 2 per 2-pivot."""
    size = 1
    for _, v in _pivots(howell_form(mat)):
        size *= 4 if v in (1, 3) else 2
    return size


def member(h: QuadMatrix, v) -> bool:
    """Is v in the row span represented by Howell form h?"""
    r = np.array(v, dtype=np.int64) % 4
    for row in h:
        nz = np.nonzero(row)[0]
        if not len(nz):
            continue
        c, p = int(nz[0]), int(row[nz[0]])
        if p == 1:
            k = r[c]
        else:
            if r[c] % 2:
                return False
            k = r[c] // 2
        if k:
            r = (r - k * row) % 4
    return not r.any()


def solve(mat: QuadMatrix, target) -> np.ndarray | None:
    """x with x @ mat = target (mod 4), or None when no solution exists."""
    h, t = howell_with_transform(mat)
    r = np.array(target, dtype=np.int64) % 4
    combo = np.zeros(mat.shape[0], dtype=np.int64)
    for row, trow in zip(h, t):
        nz = np.nonzero(row)[0]
        if not len(nz):
            continue
        c, p = int(nz[0]), int(row[nz[0]])
        if p == 1:
            k = int(r[c])
        else:
            if r[c] % 2:
                return None
            k = int(r[c] // 2)
        if k:
            r = (r - k * row) % 4
            combo = (combo + k * trow) % 4
    if r.any():
        return None
    assert ((combo @ (np.array(mat) % 4)) % 4 == np.array(target) % 4).all()
    return combo


@dataclass(frozen=True)
class StandardForm:
    """Result of standard_form: T is [I A B / 0 2I 2C] up to col_perm."""

    k1: int
    k2: int
    matrix: QuadMatrix
    col_perm: tuple[int, ...]  # T's column j holds original column col_perm[j]


def standard_form(mat: QuadMatrix) -> StandardForm:
    """Bring the row span to the Z4 standard generator form.

    Pass one collects unit pivots (made 1, their columns cleared), pass two
    collects pivots of 2 among the remaining all-even rows.  The returned
    permutation moves pivot columns to the front, unit pivots first.
    """
    m = np.array(mat, dtype=np.int64) % 4
    nrows, ncols = m.shape
    rows = [r.copy() for r in m if r.any()]
    unit_rows, unit_cols = [], []
    for c in range(ncols):
        pick = next((i for i, r in enumerate(rows) if r[c] % 2 == 1), None)
        if pick is None:
            continue
        p = rows.pop(pick)
        if p[c] == 3:
            p = (p * 3) % 4
        rows = [(r - r[c] * p) % 4 for r in rows]
        rows = [r for r in rows if r.any()]
        unit_rows = [(r - r[c] * p) % 4 for r in unit_rows]
        unit_rows.append(p)
        unit_cols.append(c)
    # remaining rows have only even entries
    assert all((r % 2 == 0).all() for r in rows)
    two_rows, two_cols = [], []
    for c in range(ncols):
        if c in unit_cols:
            continue
        pick = next((i for i, r in enumerate(rows) if r[c] == 2), None)
        if pick is None:
            continue
        p = rows.pop(pick)
        rows = [(r - (r[c] // 2) * p) % 4 for r in rows]
        rows = [r for r in rows if r.any()]
        two_rows = [(r - (r[c] // 2) * p) % 4 for r in two_rows]
        two_rows.append(p)
        two_cols.append(c)
    assert not rows  # everything reduced into the two bands
    # reduce unit-band entries in the 2-pivot columns mod 2
    for p, c in zip(two_rows, two_cols):
        unit_rows = [(r - (r[c] // 2) * p) % 4 for r in unit_rows]
    k1, k2 = len(unit_rows), len(two_rows)
    perm = unit_cols + two_cols + [c for c in range(ncols) if c not in unit_cols and c not in two_cols]
    t = np.array(
        [r[perm] for r in unit_rows + two_rows], dtype=np.int64
    ) if (k1 + k2) else np.zeros((0, ncols), dtype=np.int64)
    if k1 + k2:
        assert (t[:k1, :k1] == np.eye(k1, dtype=np.int64)).all()
        assert (t[k1:, :k1] == 0).all()
        assert (t[k1:, k1 : k1 + k2] == 2 * np.eye(k2, dtype=np.int64)).all()
    return StandardForm(k1=k1, k2=k2, matrix=t, col_perm=tuple(perm))


def kernel(mat: QuadMatrix) -> QuadMatrix:
    """Generators of {d in Z4^n : mat @ d = 0 (mod 4)}.

    Derived from the standard form: with generator bands [I A B] and
    [0 2I 2C], the kernel is spanned by (A C - B | -C | I) over Z4 plus
    (-2A | 2I | 0) on the torsion band.  Rows are returned in the original
    column order.
    """
    m = np.array(mat, dtype=np.int64) % 4
    nrows, ncols = m.shape
    sf = standard_form(m)
    k1, k2 = sf.k1, sf.k2
    w = ncols - k1 - k2
    a = sf.matrix[:k1, k1 : k1 + k2] if k1 else np.zeros((0, k2), dtype=np.int64)
    b = sf.matrix[:k1, k1 + k2 :] if k1 else np.zeros((0, w), dtype=np.int64)
    c = (sf.matrix[k1:, k1 + k2 :] // 2) if k2 else np.zeros((0, w), dtype=np.int64)
    rows = []
    for j in range(w):
        d3 = np.zeros(w, dtype=np.int64)
        d3[j] = 1
        d2 = (-c[:, j]) % 4 if k2 else np.zeros(0, dtype=np.int64)
        d1 = (-(a @ d2) - b[:, j]) % 4 if k1 else np.zeros(0, dtype=np.int64)
        rows.append(np.concatenate([d1, d2, d3]))
    for s in range(k2):
        d2 = np.zeros(k2, dtype=np.int64)
        d2[s] = 2
        d1 = (-(a @ d2)) % 4 if k1 else np.zeros(0, dtype=np.int64)
        rows.append(np.concatenate([d1, d2, np.zeros(w, dtype=np.int64)]))
    out = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        out[i, list(sf.col_perm)] = r
    assert not rows or ((m @ out.T) % 4 == 0).all()
    return out % 4


def binary_nullspace(mat: np.ndarray) -> np.ndarray:
    """Basis of {u : mat @ u = 0 (mod 2)} for a 0/1 matrix."""
    m = (np.array(mat, dtype=np.int64) % 2).copy()
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, nrows) if m[i, c]), None)
        if sel is None:
            continue
        m[[r, sel]] = m[[sel, r]]
        for i in range(nrows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        u = np.zeros(ncols, dtype=np.int64)
        u[fc] = 1
        for i, pc in enumerate(pivots):
            if m[i, fc]:
                u[pc] = 1
        basis.append(u)
    out = np.array(basis, dtype=np.int64) if basis else np.zeros((0, ncols), dtype=np.int64)
    assert not len(out) or not ((np.array(mat) % 2) @ out.T % 2).any()
    return out
