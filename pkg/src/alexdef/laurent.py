"""Laurent polynomials K[t, t^-1] over an exact field, and matrices over them.

Units of the ring are the monomials ``c t^n`` (c nonzero).  The canonical
associate of a nonzero element has lowest exponent 0 and leading coefficient 1,
so ``t^2 - 6t + 1`` is already normal and ``-t^-1 (t - 1)`` normalizes to
``t - 1``.  The Euclidean size of ``f`` is its span (highest minus lowest
exponent).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .fields import QQ, format_poly, p_divmod, p_trim

__all__ = [
    "LaurentPoly",
    "LaurentMatrix",
    "SmithDecompositionR",
    "common_field",
    "laurent_gcd",
    "root_multiplicity",
    "minors_gcd",
    "smith_normal_form_laurent",
    "rational_roots",
]


def common_field(F, G):
    if F is G or F == G:
        return F
    if F in G.tower():
        return G
    if G in F.tower():
        return F
    raise TypeError(f"no common field for {F!r} and {G!r}")


class LaurentPoly:
    """Immutable element of K[t, t^-1], stored as ``{exponent: coefficient}``."""

    __slots__ = ("field", "_c")

    def __init__(self, field, coeffs: Mapping[int, object] | None = None) -> None:
        self.field = field
        clean = {}
        for k, c in (coeffs or {}).items():
            c = field(c)
            if c != 0:
                clean[int(k)] = c
        self._c = clean

    # -- constructors --

    @classmethod
    def constant(cls, field, c) -> "LaurentPoly":
        return cls(field, {0: c})

    @classmethod
    def monomial(cls, field, c, k: int) -> "LaurentPoly":
        return cls(field, {k: c})

    @classmethod
    def t(cls, field=QQ) -> "LaurentPoly":
        return cls(field, {1: 1})

    @classmethod
    def from_list(cls, field, coeffs: Sequence, shift: int = 0) -> "LaurentPoly":
        """``sum coeffs[k] t^(k + shift)`` (low degree first)."""
        return cls(field, {k + shift: c for k, c in enumerate(coeffs)})

    def zero_like(self) -> "LaurentPoly":
        return LaurentPoly(self.field)

    def one_like(self) -> "LaurentPoly":
        return LaurentPoly(self.field, {0: 1})

    # -- inspection --

    @property
    def coeffs(self) -> dict[int, object]:
        return dict(self._c)

    def __getitem__(self, k: int):
        return self._c.get(k, self.field.zero)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def min_exp(self) -> int:
        return min(self._c)

    @property
    def max_exp(self) -> int:
        return max(self._c)

    def span(self) -> int:
        """Euclidean size; -1 for zero."""
        return self.max_exp - self.min_exp if self._c else -1

    def leading_coeff(self):
        return self._c[self.max_exp]

    def is_unit(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def to_poly(self) -> tuple[list, int]:
        """``(coefficients low->high, shift)`` with ``self = t^shift * poly``."""
        if not self._c:
            return [], 0
        lo, hi = self.min_exp, self.max_exp
        return [self[k] for k in range(lo, hi + 1)], lo

    # -- arithmetic --

    def _lift(self, other) -> tuple["LaurentPoly", "LaurentPoly"]:
        if not isinstance(other, LaurentPoly):
            try:
                return self, LaurentPoly(self.field, {0: other})
            except TypeError:
                F = common_field(self.field, other.field)
                return self.change_field(F), LaurentPoly(F, {0: other})
        F = common_field(self.field, other.field)
        return self.change_field(F), other.change_field(F)

    def change_field(self, F) -> "LaurentPoly":
        if F is self.field:
            return self
        return LaurentPoly(F, self._c)

    def __add__(self, other):
        try:
            a, b = self._lift(other)
        except (TypeError, AttributeError):
            return NotImplemented
        out = dict(a._c)
        for k, c in b._c.items():
            out[k] = out[k] + c if k in out else c
        return LaurentPoly(a.field, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.field, {k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        try:
            a, b = self._lift(other)
        except (TypeError, AttributeError):
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        try:
            a, b = self._lift(other)
        except (TypeError, AttributeError):
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        try:
            a, b = self._lift(other)
        except (TypeError, AttributeError):
            return NotImplemented
        out: dict[int, object] = {}
        for i, c in a._c.items():
            for j, d in b._c.items():
                out[i + j] = out[i + j] + c * d if i + j in out else c * d
        return LaurentPoly(a.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit")
            (e, c), = self._c.items()
            return LaurentPoly(self.field, {e * k: self.field.one / c ** (-k)})
        result, base = self.one_like(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            a, b = self._lift(other)
        except (TypeError, AttributeError):
            return NotImplemented
        return a._c == b._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def scale(self, c) -> "LaurentPoly":
        return self * c

    def shift(self, n: int) -> "LaurentPoly":
        return LaurentPoly(self.field, {k + n: c for k, c in self._c.items()})

    # -- unit normalization and division --

    def normalize_unit(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Return ``(g, u)`` with ``self = u * g``, ``g`` canonical and ``u`` a unit."""
        if not self._c:
            return self, self.one_like()
        lo = self.min_exp
        lead = self.leading_coeff()
        inv = self.field.one / lead
        g = LaurentPoly(self.field, {k - lo: c * inv for k, c in self._c.items()})
        return g, LaurentPoly(self.field, {lo: lead})

    def normalized(self) -> "LaurentPoly":
        return self.normalize_unit()[0]

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Euclidean division: ``self = q * other + r`` with ``span(r) < span(other)``."""
        a, b = self._lift(other)
        if b.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if a.is_zero():
            return a, a
        A, ea = a.to_poly()
        B, eb = b.to_poly()
        q, r = p_divmod(A, B, a.field)
        Q = LaurentPoly.from_list(a.field, q, ea - eb)
        R = LaurentPoly.from_list(a.field, r, ea)
        return Q, R

    def divides(self, other: "LaurentPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- maps --

    def map_coeffs(self, fn: Callable, field=None) -> "LaurentPoly":
        F = field if field is not None else self.field
        return LaurentPoly(F, {k: fn(c) for k, c in self._c.items()})

    def evaluate(self, z):
        """Value at ``z`` (a field element, int or Fraction); ``z`` must be nonzero
        whenever negative exponents occur."""
        if not self._c:
            return self.field.zero
        if z == 0:
            if self.min_exp < 0:
                raise ZeroDivisionError("cannot evaluate a negative power at 0")
            return self[0]
        acc = None
        lo = self.min_exp
        poly, _ = self.to_poly()
        for c in reversed(poly):
            acc = c if acc is None else acc * z + c
        return acc * z**lo if lo else acc

    def derivation_D(self) -> "LaurentPoly":
        """``sum c_i t^i  ->  sum i c_i t^i``."""
        return LaurentPoly(self.field, {k: c * k for k, c in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """Conjugate the coefficients and substitute ``t -> t^-1``."""
        return LaurentPoly(self.field, {-k: self.field.conjugate(c) for k, c in self._c.items()})

    def invert_t(self) -> "LaurentPoly":
        return LaurentPoly(self.field, {-k: c for k, c in self._c.items()})

    def substitute_scaled(self, a) -> "LaurentPoly":
        """``f(a t)`` for a nonzero field element ``a``."""
        F = common_field(self.field, a.field) if hasattr(a, "field") else self.field
        a = F(a)
        return LaurentPoly(F, {k: F(c) * a**k for k, c in self._c.items()})

    # -- display --

    def format(self, var: str = "t") -> str:
        return format_poly(self._c, var, self.field.format, descending=True)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()})"


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Unit-normalized gcd; raises ``ValueError`` for ``gcd(0, 0)``."""
    a, b = a._lift(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.normalized()


def _as_laurent(minpoly, field) -> LaurentPoly:
    if isinstance(minpoly, LaurentPoly):
        return minpoly
    return LaurentPoly.from_list(field, list(minpoly))


def root_multiplicity(f: LaurentPoly, minpoly) -> int | float:
    """Largest ``k`` with ``minpoly^k | f``; ``math.inf`` when ``f`` is zero.

    ``minpoly`` is a LaurentPoly or a coefficient sequence (low degree first)
    over the coefficient field of ``f``.
    """
    if f.is_zero():
        return math.inf
    m = _as_laurent(minpoly, f.field)
    if m.span() < 1:
        raise ValueError("minimal polynomial must have positive degree")
    k = 0
    while True:
        q, r = f.divmod(m)
        if not r.is_zero():
            return k
        f = q
        k += 1


class LaurentMatrix:
    """Rectangular matrix of LaurentPoly entries over one coefficient field."""

    def __init__(self, field, rows: int, cols: int, entries: Sequence[Sequence[LaurentPoly]]) -> None:
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = tuple(tuple(e.change_field(field) for e in row) for row in entries)
        if len(self.entries) != rows or any(len(r) != cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence], cols: int | None = None) -> "LaurentMatrix":
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        ents = [
            [e if isinstance(e, LaurentPoly) else LaurentPoly.constant(field, e) for e in row]
            for row in rows
        ]
        return cls(field, len(rows), ncols, ents)

    @classmethod
    def identity(cls, field, n: int) -> "LaurentMatrix":
        return cls.from_rows(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "LaurentMatrix":
        return cls.from_rows(field, [[0] * cols for _ in range(rows)], cols)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self.entries[i]

    def tolist(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        F = common_field(self.field, other.field)
        zero = LaurentPoly(F)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(F, self.rows, other.cols, out)

    def map(self, fn: Callable[[LaurentPoly], LaurentPoly], field=None) -> "LaurentMatrix":
        F = field if field is not None else self.field
        return LaurentMatrix(F, self.rows, self.cols, [[fn(e) for e in r] for r in self.entries])

    def derivation_D(self) -> "LaurentMatrix":
        return self.map(LaurentPoly.derivation_D)

    def evaluate(self, z) -> list[list]:
        return [[e.evaluate(z) for e in r] for r in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "LaurentMatrix":
        return LaurentMatrix(
            self.field, len(rows), len(cols), [[self.entries[i][j] for j in cols] for i in rows]
        )

    def determinant(self) -> LaurentPoly:
        """Fraction-free (Bareiss) elimination with exact Laurent division."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return LaurentPoly.constant(self.field, 1)
        M = [list(r) for r in self.entries]
        sign = 1
        prev = LaurentPoly.constant(self.field, 1)
        for k in range(n - 1):
            if M[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
                if swap is None:
                    return LaurentPoly(self.field)
                M[k], M[swap] = M[swap], M[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
            prev = M[k][k]
        det = M[n - 1][n - 1]
        return det if sign == 1 else -det

    def format(self, var: str = "t") -> str:
        cells = [[e.format(var) for e in r] for r in self.entries]
        width = max((len(c) for r in cells for c in r), default=0)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.rows}x{self.cols})"


def minors_gcd(A: LaurentMatrix, k: int) -> LaurentPoly:
    """Unit-normalized gcd of all k x k minors; 1 for k = 0 and 0 if all vanish."""
    if k < 0 or k > min(A.rows, A.cols):
        raise ValueError(f"minor order {k} exceeds matrix dimensions {A.rows}x{A.cols}")
    one = LaurentPoly.constant(A.field, 1)
    if k == 0:
        return one
    g = LaurentPoly(A.field)
    for rows in combinations(range(A.rows), k):
        for cols in combinations(range(A.cols), k):
            m = A.submatrix(rows, cols).determinant()
            if m.is_zero():
                continue
            g = m.normalized() if g.is_zero() else laurent_gcd(g, m)
            if g == one:
                return one
    return g


@dataclass(frozen=True)
class SmithDecompositionR:
    """``U @ A @ V == D`` over K[t, t^-1].

    ``factors`` lists the diagonal of ``D`` in ascending divisibility
    (``factors[i] | factors[i+1]``), zeros last.  :attr:`descending` gives the
    reverse order ``r_0, r_1, ...`` with ``r_{i+1} | r_i``.
    """

    U: LaurentMatrix
    D: LaurentMatrix
    V: LaurentMatrix
    factors: tuple[LaurentPoly, ...]

    @property
    def rank(self) -> int:
        return sum(1 for f in self.factors if not f.is_zero())

    @property
    def descending(self) -> tuple[LaurentPoly, ...]:
        return tuple(reversed(self.factors))

    def nonzero_factors(self) -> tuple[LaurentPoly, ...]:
        return tuple(f for f in self.factors if not f.is_zero())

    def minors_gcd(self, k: int) -> LaurentPoly:
        """gcd of k x k minors, read off as the product of the first k factors."""
        one = LaurentPoly.constant(self.D.field, 1)
        if k > len(self.factors):
            raise ValueError("minor order exceeds matrix dimensions")
        prod = one
        for f in self.factors[:k]:
            prod = prod * f
        return prod.normalized()


def smith_normal_form_laurent(A: LaurentMatrix) -> SmithDecompositionR:
    """Diagonalize ``A`` by invertible row and column operations over K[t, t^-1]."""
    F = A.field
    r, c = A.rows, A.cols
    M = [list(row) for row in A.entries]
    one, zero = LaurentPoly.constant(F, 1), LaurentPoly(F)
    U = [[one if i == j else zero for j in range(r)] for i in range(r)]
    V = [[one if i == j else zero for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in M:
            row[dst] = row[dst] + q * row[src]
        for row in V:
            row[dst] = row[dst] + q * row[src]

    for t in range(min(r, c)):
        while True:
            cands = [
                (M[i][j].span(), i, j)
                for i in range(t, r)
                for j in range(t, c)
                if not M[i][j].is_zero()
            ]
            if not cands:
                break
            _, pi, pj = min(cands)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = M[t][t]
            dirty = False
            for i in range(t + 1, r):
                if M[i][t]:
                    q, rem = M[i][t].divmod(p)
                    add_row(i, t, -q)
                    dirty |= not rem.is_zero()
            for j in range(t + 1, c):
                if M[t][j]:
                    q, rem = M[t][j].divmod(p)
                    add_col(j, t, -q)
                    dirty |= not rem.is_zero()
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if not p.divides(M[i][j])),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, one)
        if M[t][t]:
            _, unit = M[t][t].normalize_unit()
            inv = unit ** -1
            M[t] = [e * inv for e in M[t]]
            U[t] = [e * inv for e in U[t]]
        else:
            break
    n = min(r, c)
    factors = tuple(M[i][i] for i in range(n))
    return SmithDecompositionR(
        LaurentMatrix(F, r, r, U),
        LaurentMatrix(F, r, c, M),
        LaurentMatrix(F, c, c, V),
        factors,
    )


def _rational_coordinates(c) -> list:
    """Coordinates over Q of a coefficient from Q or a cyclotomic field."""
    if hasattr(c, "coeffs"):
        if c.field.base is not QQ:
            raise TypeError("rational root scan needs coefficients in Q or Q(zeta_m)")
        return list(c.coeffs)
    return [QQ(c)]


def rational_roots(f: LaurentPoly) -> list[tuple]:
    """Rational roots of ``f`` with multiplicities, in increasing order.

    For cyclotomic coefficients ``f = sum_j zeta^j f_j(t)`` with rational
    ``f_j``, and a rational ``r`` is a root iff it is a common root of all
    ``f_j``.
    """
    import sympy

    if f.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    poly, _ = f.to_poly()
    coords = [_rational_coordinates(c) for c in poly]
    width = max(len(c) for c in coords)
    t = sympy.Symbol("t")
    g = None
    for j in range(width):
        part = [c[j] if j < len(c) else 0 for c in coords]
        expr = sympy.Poly(
            [sympy.Rational(q.numerator, q.denominator) for q in reversed(part)], t, domain="QQ"
        )
        if expr.is_zero:
            continue
        g = expr if g is None else sympy.gcd(g, expr)
    if g is None or g.degree() < 1:
        return []
    out = []
    for root in sorted(g.ground_roots()):
        r = QQ(int(root.p)) / int(root.q)
        out.append((r, root_multiplicity(f, [-r, 1])))
    return out
