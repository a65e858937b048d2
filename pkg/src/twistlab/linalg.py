"""Small dense complex linear algebra: row reduction and nullspaces."""

from __future__ import annotations

import numpy as np

PIVOT_REL_TOL = 1e-10


def row_reduce(a: np.ndarray, rel_tol: float = PIVOT_REL_TOL):
    """Reduced row echelon form by Gaussian elimination with partial pivoting.

    Returns ``(R, pivots)``. Columns whose best remaining pivot is below
    ``rel_tol * max|a|`` are treated as free.
    """
    r = np.array(a, dtype=np.complex128, copy=True)
    m, n = r.shape
    scale = float(np.max(np.abs(r), initial=0.0))
    if scale == 0.0:
        return r, []
    thresh = rel_tol * scale
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        p = row + int(np.argmax(np.abs(r[row:, col])))
        if abs(r[p, col]) < thresh:
            r[row:, col] = 0
            continue
        if p != row:
            r[[row, p]] = r[[p, row]]
        r[row] /= r[row, col]
        others = np.arange(m) != row
        r[others] -= np.outer(r[others, col], r[row])
        pivots.append(col)
        row += 1
    r[row:] = 0
    return r, pivots


def nullspace(a: np.ndarray, rel_tol: float = PIVOT_REL_TOL) -> list[np.ndarray]:
    """Basis of ``{v : a v = 0}``, one vector per free column, pivot-normalized.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns.
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[1]
    r, pivots = row_reduce(a, rel_tol)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(n, dtype=np.complex128)
        v[fc] = 1.0
        for i, pc in enumerate(pivots):
            v[pc] = -r[i, fc]
        basis.append(v)
    return basis


def rank(a: np.ndarray, rel_tol: float = PIVOT_REL_TOL) -> int:
    return len(row_reduce(a, rel_tol)[1])
