"""Abelianization, Smith normal form over Z, and splittings of H_1.

A presentation with ``n`` generators and ``m`` relators gives the relation
matrix ``A`` (m x n, exponent sums).  Generator classes are row vectors in
``Z^n`` and ``H_1 = Z^n / rowspace(A)``.  From ``U A V = D`` the coordinates
``x V`` split ``H_1`` as ``Z/d_1 + ... + Z/d_r + Z^(n-r)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .errors import PreconditionError
from .presentation import Presentation

__all__ = [
    "IntMatrix",
    "SmithDecompositionZ",
    "H1Structure",
    "SplittingData",
    "abelianized_matrix",
    "smith_normal_form_int",
    "h1_structure",
    "canonical_splitting",
    "alternate_splitting",
]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged integer matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, other.cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def vecmul(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Row vector times matrix."""
        return tuple(sum(vec[k] * self.entries[k][j] for k in range(self.rows)) for j in range(self.cols))


@dataclass(frozen=True)
class SmithDecompositionZ:
    """``U @ A @ V == D`` with ``D`` diagonal, ``d_1 | d_2 | ...``, all ``d_i >= 0``."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def abelianized_matrix(P: Presentation) -> IntMatrix:
    """Exponent-sum matrix: entry (j, i) is the total exponent of S_i in R_j."""
    return IntMatrix.from_rows([r.exponent_vector(P.n) for r in P.relators], P.n)


def smith_normal_form_int(A: IntMatrix) -> SmithDecompositionZ:
    """Smith normal form by smallest-pivot elimination.

    Fine for the small relation matrices of hand-made presentations; the
    smallest-absolute-value pivot rule is not meant for large inputs.
    """
    m, n = A.rows, A.cols
    D = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()
    Vi = IntMatrix.identity(n).tolist()

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        # inverse operation on V^{-1}: row_src -= q * row_dst
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        while True:
            candidates = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
            if not candidates:
                break
            _, pi, pj = min(candidates)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        if all(D[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
    return SmithDecompositionZ(
        IntMatrix.from_rows(U, m),
        IntMatrix.from_rows(D, n),
        IntMatrix.from_rows(V, n),
        IntMatrix.from_rows(Vi, n),
    )


@dataclass(frozen=True)
class H1Structure:
    """``H_1 = (+)_i Z/d_i (+) Z^betti`` together with the SNF basis change."""

    n_generators: int
    torsion: tuple[int, ...]
    betti: int
    snf: SmithDecompositionZ

    @property
    def torsion_indices(self) -> tuple[int, ...]:
        """Columns of ``V`` carrying the torsion coordinates (aligned with ``torsion``)."""
        diag = self.snf.diagonal
        return tuple(k for k, d in enumerate(diag) if d > 1)

    @property
    def free_indices(self) -> tuple[int, ...]:
        return tuple(range(self.snf.rank, self.n_generators))

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 when torsion-free)."""
        return self.torsion[-1] if self.torsion else 1

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Coordinates ``vec @ V`` of a class in the Smith basis."""
        return self.snf.V.vecmul(vec)

    def torsion_part(self, vec: Sequence[int]) -> tuple[int, ...]:
        coords = self.coordinates(vec)
        return tuple(coords[k] % d for k, d in zip(self.torsion_indices, self.torsion))

    def same_class(self, u: Sequence[int], v: Sequence[int]) -> bool:
        cu, cv = self.coordinates(u), self.coordinates(v)
        diag = self.snf.diagonal
        for k in range(self.n_generators):
            d = diag[k] if k < len(diag) else 0
            if d == 0:
                if cu[k] != cv[k]:
                    return False
            elif (cu[k] - cv[k]) % d:
                return False
        return True

    def torsion_generator(self, k: int) -> tuple[int, ...]:
        """Exponent vector of the k-th Smith torsion generator."""
        return self.snf.V_inv.row(self.torsion_indices[k])


def h1_structure(P: Presentation) -> H1Structure:
    snf = smith_normal_form_int(abelianized_matrix(P))
    diag = snf.diagonal
    torsion = tuple(d for d in diag if d > 1)
    betti = P.n - snf.rank
    return H1Structure(P.n, torsion, betti, snf)


@dataclass(frozen=True)
class SplittingData:
    """A choice ``H_1 = tors(H_1) (+) Z``: projection ``p``, generator ``phi``, section ``s_p``.

    ``p`` has one row per generator holding its torsion coordinates (entry k
    read modulo ``torsion[k]``); ``phi`` holds the integer value on each
    generator; ``s_p_image`` is an exponent vector representing ``s_p(1)``.
    """

    h1: H1Structure
    p: tuple[tuple[int, ...], ...]
    phi: tuple[int, ...]
    s_p_image: tuple[int, ...]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.h1.torsion

    def phi_of(self, vec: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(vec, self.phi))

    def p_of(self, vec: Sequence[int]) -> tuple[int, ...]:
        out = []
        for k, d in enumerate(self.torsion):
            out.append(sum(vec[i] * self.p[i][k] for i in range(len(vec))) % d)
        return tuple(out)

    def check_section(self) -> bool:
        """``s_p(phi(x)) + p(x) == x`` on every generator class."""
        n = self.h1.n_generators
        if self.phi_of(self.s_p_image) != 1 or any(self.p_of(self.s_p_image)):
            return False
        for i in range(n):
            e = [int(i == j) for j in range(n)]
            f = self.phi_of(e)
            tors_vec = self.torsion_vector(self.p_of(e))
            rebuilt = [f * s + t for s, t in zip(self.s_p_image, tors_vec)]
            if not self.h1.same_class(rebuilt, e):
                return False
        return True

    def torsion_vector(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Exponent vector of the torsion element with the given Smith coordinates."""
        n = self.h1.n_generators
        out = [0] * n
        for k, c in enumerate(coords):
            gen = self.h1.torsion_generator(k)
            for i in range(n):
                out[i] += c * gen[i]
        return tuple(out)

    def negate_phi(self) -> "SplittingData":
        """Same projection, opposite generator: ``s_p(1)`` becomes its inverse class."""
        return SplittingData(
            self.h1,
            self.p,
            tuple(-x for x in self.phi),
            tuple(-x for x in self.s_p_image),
        )


def canonical_splitting(h: H1Structure) -> SplittingData:
    """Splitting read off the Smith basis; ``phi`` is signed so its first nonzero entry is positive."""
    if h.betti != 1:
        raise PreconditionError(f"not a rational homology circle: betti number is {h.betti}, expected 1")
    (free,) = h.free_indices
    V, Vi = h.snf.V, h.snf.V_inv
    phi = list(V.column(free))
    section = list(Vi.row(free))
    lead = next(x for x in phi if x != 0)
    if lead < 0:
        phi = [-x for x in phi]
        section = [-x for x in section]
    p = tuple(
        tuple(V[i, k] % d for k, d in zip(h.torsion_indices, h.torsion)) for i in range(h.n_generators)
    )
    split = SplittingData(h, p, tuple(phi), tuple(section))
    assert split.check_section()
    return split


def alternate_splitting(
    h: H1Structure, psi: Sequence[int], base: SplittingData | None = None
) -> SplittingData:
    """Splitting with projection ``p2 = p1 + psi o phi``.

    ``psi`` is ``psi(1)`` written in Smith torsion coordinates.
    """
    base = base or canonical_splitting(h)
    if len(psi) != len(h.torsion):
        raise PreconditionError(f"psi(1) needs {len(h.torsion)} torsion coordinates, got {len(psi)}")
    psi = tuple(int(c) % d for c, d in zip(psi, h.torsion))
    p2 = tuple(
        tuple((row[k] + base.phi[i] * psi[k]) % d for k, d in enumerate(h.torsion))
        for i, row in enumerate(base.p)
    )
    shift = base.torsion_vector(psi)
    section = tuple(s - c for s, c in zip(base.s_p_image, shift))
    split = SplittingData(h, p2, base.phi, section)
    assert split.check_section()
    return split
