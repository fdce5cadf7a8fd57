"""Dense linear algebra over the prime field F_p.

Matrices are small (induced subcomplexes in Hochster enumeration), so everything
is dense: F_2 rows are packed into Python integers and reduced with XOR, other
primes use numpy int64 row operations.
"""
import numpy as np


def _pack_rows(matrix: np.ndarray) -> list[int]:
    rows = []
    for row in np.asarray(matrix, dtype=np.int64) % 2:
        bits = 0
        for col in np.flatnonzero(row):
            bits |= 1 << int(col)
        rows.append(bits)
    return rows


def rank_mod_2(matrix: np.ndarray) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in _pack_rows(matrix):
        while row:
            lead = row.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = row
                rank += 1
                break
            row ^= pivots[lead]
    return rank


def rref_mod_p(matrix: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    reduced = np.array(matrix, dtype=np.int64) % p
    n_rows, n_cols = reduced.shape if reduced.ndim == 2 else (0, 0)
    pivots: list[int] = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        candidates = np.flatnonzero(reduced[row:, col])
        if candidates.size == 0:
            continue
        pivot_row = row + int(candidates[0])
        if pivot_row != row:
            reduced[[row, pivot_row]] = reduced[[pivot_row, row]]
        inverse = pow(int(reduced[row, col]), -1, p)
        reduced[row] = (reduced[row] * inverse) % p
        others = np.flatnonzero(reduced[:, col])
        for other in others:
            if other != row:
                reduced[other] = (reduced[other] - reduced[other, col] * reduced[row]) % p
        pivots.append(col)
        row += 1
    return reduced, pivots


def rank_mod_p(matrix: np.ndarray, p: int = 2) -> int:
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0
    if p == 2:
        return rank_mod_2(matrix)
    return len(rref_mod_p(matrix, p)[1])


def nullspace_mod_p(matrix: np.ndarray, p: int = 2, n_cols: int | None = None) -> np.ndarray:
    """Basis of the kernel as the columns of an (n_cols x k) matrix."""
    matrix = np.asarray(matrix, dtype=np.int64)
    if n_cols is None:
        n_cols = matrix.shape[1] if matrix.ndim == 2 else 0
    if matrix.size == 0:
        return np.eye(n_cols, dtype=np.int64)
    reduced, pivots = rref_mod_p(matrix, p)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = np.zeros((n_cols, len(free)), dtype=np.int64)
    for k, free_col in enumerate(free):
        basis[free_col, k] = 1
        for r, pivot_col in enumerate(pivots):
            basis[pivot_col, k] = (-reduced[r, free_col]) % p
    return basis
