"""Gaussian elimination over an exact field, plus the float cross-check.

Matrices are lists of rows.  Every routine takes the field explicitly so that
integer and Fraction entries are coerced consistently.  A zero divisor met
during pivot inversion surfaces as ``ReducibleMinpolyError`` from the field.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

__all__ = [
    "rref",
    "rank",
    "kernel_basis",
    "left_kernel_basis",
    "linear_solve",
    "SolveResult",
    "numeric_rank",
    "numeric_solvable",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-8


def _coerce(A: Sequence[Sequence], F) -> list[list]:
    return [[F(x) for x in row] for row in A]


def rref(A: Sequence[Sequence], F) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with pivots chosen left to right, top to bottom."""
    M = _coerce(A, F)
    rows = len(M)
    cols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = F.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: Sequence[Sequence], F) -> int:
    return len(rref(A, F)[1])


def kernel_basis(A: Sequence[Sequence], F, ncols: int | None = None) -> list[list]:
    """Basis of ``{x : A x = 0}``; one vector per free column, that column set to 1."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    R, pivots = rref(A, F)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def left_kernel_basis(A: Sequence[Sequence], F, nrows: int | None = None) -> list[list]:
    """Basis of ``{y : y A = 0}``."""
    m = nrows if nrows is not None else len(A)
    n = len(A[0]) if A else 0
    At = [[A[i][j] for i in range(m)] for j in range(n)]
    return kernel_basis(At, F, m)


@dataclass
class SolveResult:
    """Outcome of ``A x = b``.

    When solvable, ``solution`` is a particular solution and ``kernel`` a
    basis of the homogeneous solutions.  Otherwise ``certificate`` is a row
    vector ``y`` with ``y A = 0`` and ``y b != 0``.
    """

    solvable: bool
    solution: list | None = None
    kernel: list[list] = dc_field(default_factory=list)
    certificate: list | None = None


def linear_solve(A: Sequence[Sequence], b: Sequence, F, ncols: int | None = None) -> SolveResult:
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if len(b) != m:
        raise ValueError("right-hand side has the wrong length")
    if m == 0:
        return SolveResult(True, [F.zero] * n, kernel_basis(A, F, n))
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(aug, F)
    if n in pivots:
        bb = [F(x) for x in b]
        for y in left_kernel_basis(A, F, m):
            if sum((yi * bi for yi, bi in zip(y, bb)), F.zero) != 0:
                return SolveResult(False, certificate=y)
        raise AssertionError("inconsistent system without a certificate")
    x = [F.zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return SolveResult(True, x, kernel_basis(A, F, n))


def _svals(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)


def numeric_rank(M, tol: float = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol * max(1, largest singular value)``."""
    s = _svals(M)
    if s.size == 0:
        return 0
    return int(np.sum(s > tol * max(1.0, float(s[0]))))


def numeric_solvable(M, b, tol: float = DEFAULT_TOL) -> bool:
    M = np.asarray(M, dtype=complex)
    b = np.asarray(b, dtype=complex).reshape(-1, 1)
    if M.size == 0:
        return bool(np.all(np.abs(b) <= tol))
    return numeric_rank(M, tol) == numeric_rank(np.hstack([M, b]), tol)
