"""Small exact linear algebra over any field with Python operators.

Works for Fraction and RatFunc entries alike; zero tests go through
`== zero` so canonical forms do the work.  Everything is dense and small
(the workbench never needs more than a few hundred rows).
"""

from __future__ import annotations

from fractions import Fraction


def _is_zero(x) -> bool:
    if isinstance(x, Fraction) or isinstance(x, int):
        return x == 0
    return x.is_zero()


def rref(rows: list, ncols: int, one, zero) -> tuple:
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for k in range(r, len(rows)):
            if not _is_zero(rows[k][c]):
                pivot = k
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and not _is_zero(rows[k][c]):
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: list, ncols: int, one, zero) -> int:
    return len(rref(rows, ncols, one, zero)[1])


def kernel(rows: list, ncols: int, one, zero) -> list:
    """Basis of the right kernel of the matrix (rows of length ncols)."""
    red, pivots = rref(rows, ncols, one, zero)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for r, c in enumerate(pivots):
            vec[c] = zero - red[r][f]
        basis.append(vec)
    return basis


def solve(rows: list, rhs: list, one, zero):
    """One solution x of A x = b, or None when inconsistent."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, n + 1, one, zero)
    if n in pivots:
        return None
    x = [zero] * n
    for r, c in enumerate(pivots):
        x[c] = red[r][n]
    return x


def in_span(vectors: list, target: list, one, zero) -> bool:
    """Whether target is a linear combination of the given vectors."""
    if all(_is_zero(t) for t in target):
        return True
    if not vectors:
        return False
    cols = list(zip(*vectors))
    rows = [list(c) for c in cols]
    return solve(rows, list(target), one, zero) is not None
