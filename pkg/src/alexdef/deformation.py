"""Characters, twisted 1-cocycles, cup products and the deformability verdict.

Everything here is evaluated at a single point ``z`` (the value of the
character on ``s_p(1)``), so the linear algebra takes place over the top
field of a :class:`~alexdef.fields.FieldDescriptor`.

One-dimensional coefficient modules are described by their character
``chi``: a group element ``g`` acts on the module by multiplication with
``chi(g)``.  A 1-cochain is anything with ``value(w)`` and ``action(w)``;
a 2-cochain is anything with ``value(w1, w2)`` and ``action(w)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Protocol, Sequence

from .errors import InternalInconsistencyError, PreconditionError
from .fields import FieldDescriptor
from .lattice import h1_structure
from .laurent import LaurentMatrix, LaurentPoly, root_multiplicity
from .linalg import (
    SolveResult,
    kernel_basis,
    linear_solve,
    numeric_rank,
    numeric_solvable,
    rank,
    DEFAULT_TOL,
)
from .presentation import FreeWord, GroupRingElem, Presentation, fox_derivative
from .twisted import AlexanderSequence, TwistSetup, alexander_sequence, is_symmetric, jacobian

__all__ = [
    "CharacterAlpha",
    "evaluate_character",
    "dim_h1",
    "zero_order",
    "Homomorphism",
    "CocycleVec",
    "CupProduct",
    "CochainSum",
    "cocycle_generator",
    "cocycle_eval",
    "coboundary_vector",
    "two_cocycle_is_coboundary",
    "ObstructionResult",
    "cup_obstruction",
    "QuadConePoint",
    "quadratic_cone_membership",
    "Verdict",
    "FloatCheck",
    "DeformabilityReport",
    "deformability_verdict",
]


def _reverse_monic(coeffs: Sequence, F) -> list:
    """Minimal polynomial of ``1/z`` from that of ``z`` (low degree first)."""
    rev = [F(c) for c in reversed(coeffs)]
    lead = rev[-1]
    return [c / lead for c in rev]


class CharacterAlpha:
    """``alpha(g) = sigma(p(g)) * z^phi(g)`` with ``z`` a root of ``minpoly``.

    ``minpoly`` is a coefficient sequence over ``Q(zeta_m)`` (low degree
    first).  ``sign = -1`` marks the inverse character ``alpha^-``; use
    :meth:`minus` to build it.
    """

    def __init__(
        self,
        tw: TwistSetup,
        minpoly: Sequence,
        *,
        root_hint: complex | None = None,
        sign: int = 1,
        _point=None,
        _fd: FieldDescriptor | None = None,
    ) -> None:
        self.tw = tw
        self.sign = sign
        self.fd = _fd or FieldDescriptor(tw.order, minpoly, root_hint=root_hint)
        if self.fd.cyclotomic_order != tw.order:
            raise PreconditionError("field and twist disagree on the cyclotomic order")
        cyc = self.fd.cyclo
        self.minpoly = tuple(cyc(c) for c in minpoly)
        self.z = _point if _point is not None else self.fd.z

    @property
    def field(self):
        return self.fd.top

    @property
    def minpoly_laurent(self) -> LaurentPoly:
        return LaurentPoly.from_list(self.fd.cyclo, list(self.minpoly))

    def minus(self) -> "CharacterAlpha":
        """``alpha^-(g) = alpha(g)^-1``; lives in the same field, at ``1/z``."""
        return CharacterAlpha(
            self.tw.inverse(),
            _reverse_monic(self.minpoly, self.fd.cyclo),
            sign=-self.sign,
            _point=self.z.inverse(),
            _fd=self.fd,
        )

    def is_trivial(self) -> bool:
        return self.tw.is_trivial() and self.z == 1

    def __call__(self, w: FreeWord):
        return evaluate_character(self, w)

    def on_vector(self, vec: Sequence[int]):
        return self.field(self.tw.sigma_value(vec)) * self.z ** self.tw.splitting.phi_of(vec)

    def on_ring(self, e: GroupRingElem):
        return e.map(self, zero=self.field.zero)

    def minpoly_string(self) -> str:
        return self.fd.minpoly_string()


def evaluate_character(alpha: CharacterAlpha, w: FreeWord):
    return alpha.on_vector(w.exponent_vector(alpha.tw.h1.n_generators))


def evaluated_jacobian(P: Presentation, alpha: CharacterAlpha, J: LaurentMatrix | None = None) -> list[list]:
    J = J if J is not None else jacobian(P, alpha.tw)
    F = alpha.field
    return [[F(e.evaluate(alpha.z)) for e in row] for row in J.entries]


def dim_h1(P: Presentation, alpha: CharacterAlpha, J: LaurentMatrix | None = None) -> int:
    """``dim H^1(pi; C_alpha) = n - rank J(z) - 1`` for nontrivial ``alpha``."""
    if alpha.is_trivial():
        raise PreconditionError("dimension formula needs a nontrivial character")
    A = evaluated_jacobian(P, alpha, J)
    return P.n - (rank(A, alpha.field) if A else 0) - 1


def zero_order(alpha: CharacterAlpha, delta0: LaurentPoly) -> int | float:
    """Multiplicity of ``z`` as a root of ``delta0``; ``math.inf`` iff ``delta0 == 0``."""
    return root_multiplicity(delta0, alpha.minpoly_laurent)


# --- cochains ---------------------------------------------------------------


class OneCochain(Protocol):
    def value(self, w: FreeWord): ...
    def action(self, w: FreeWord): ...


class Homomorphism:
    """A homomorphism to the trivial module (C, +), given on generators."""

    def __init__(self, values: Sequence, F) -> None:
        self.values = tuple(F(v) for v in values)
        self.F = F

    def value(self, w: FreeWord):
        return sum((self.values[g] * e for g, e in w.letters), self.F.zero)

    def action(self, w: FreeWord):
        return self.F.one

    def __call__(self, w: FreeWord):
        return self.value(w)


class CocycleVec:
    """A 1-cochain with values in ``C_alpha``, given on generators.

    Values on words follow ``d(uv) = d(u) + alpha(u) d(v)``; it is a cocycle
    on the presented group exactly when it lies in the kernel of ``J(z)``.
    """

    def __init__(self, values: Sequence, alpha: CharacterAlpha, tag: str = "+") -> None:
        F = alpha.field
        self.values = tuple(F(v) for v in values)
        self.alpha = alpha
        self.tag = tag

    @property
    def F(self):
        return self.alpha.field

    def value(self, w: FreeWord):
        return cocycle_eval(self, w)

    def action(self, w: FreeWord):
        return self.alpha(w)

    def __call__(self, w: FreeWord):
        return self.value(w)

    def scaled(self, c) -> "CocycleVec":
        return CocycleVec([v * c for v in self.values], self.alpha, self.tag)

    def shifted(self, other: Sequence) -> "CocycleVec":
        return CocycleVec([a + b for a, b in zip(self.values, other)], self.alpha, self.tag)

    def __repr__(self) -> str:
        return "CocycleVec(" + ", ".join(str(v) for v in self.values) + ")"


def cocycle_eval(d: CocycleVec, w: FreeWord):
    F = d.F
    n = len(d.values)
    acc = F.zero
    prefix = [0] * n
    for gen, step in w.letter_sequence():
        if step > 0:
            acc = acc + d.alpha.on_vector(prefix) * d.values[gen]
            prefix[gen] += 1
        else:
            prefix[gen] -= 1
            # d(S^-1) = -alpha(S)^-1 d(S), shifted by the prefix
            acc = acc - d.alpha.on_vector(prefix) * d.values[gen]
    return acc


class CupProduct:
    """``(u cup v)(g1, g2) = u(g1) * chi_v(g1) * v(g2)`` for 1-dimensional modules."""

    def __init__(self, u, v) -> None:
        self.u, self.v = u, v

    def value(self, w1: FreeWord, w2: FreeWord):
        return self.u.value(w1) * self.v.action(w1) * self.v.value(w2)

    def action(self, w: FreeWord):
        return self.u.action(w) * self.v.action(w)


class CochainSum:
    """Linear combination of 2-cochains sharing one coefficient module."""

    def __init__(self, terms: Iterable[tuple[object, object]]) -> None:
        self.terms = list(terms)
        if not self.terms:
            raise ValueError("empty cochain sum")

    def value(self, w1: FreeWord, w2: FreeWord):
        it = iter(self.terms)
        c, t = next(it)
        acc = t.value(w1, w2) * c
        for c, t in it:
            acc = acc + t.value(w1, w2) * c
        return acc

    def action(self, w: FreeWord):
        return self.terms[0][1].action(w)


def coboundary_vector(P: Presentation, alpha: CharacterAlpha) -> list:
    """Generator values ``alpha(S_i) - 1`` of the coboundary of ``x = 1``."""
    return [alpha(FreeWord.generator(i)) - 1 for i in range(P.n)]


def cocycle_generator(P: Presentation, alpha: CharacterAlpha, J: LaurentMatrix | None = None) -> CocycleVec:
    """A deterministic cocycle spanning ``H^1(pi; C_alpha)`` when that space is a line.

    Kernel vectors of ``J(z)`` come from the reduced echelon form; each is
    reduced modulo the coboundary line by clearing the coordinate where the
    coboundary vector first is nonzero, and the first surviving vector is
    scaled so its first nonzero coordinate is 1.
    """
    dim = dim_h1(P, alpha, J)
    if dim != 1:
        raise PreconditionError(f"cocycle generator needs dim H^1 = 1, found {dim}")
    F = alpha.field
    A = evaluated_jacobian(P, alpha, J)
    basis = kernel_basis(A, F, P.n)
    b = coboundary_vector(P, alpha)
    j0 = next(i for i, x in enumerate(b) if x != 0)
    for v in basis:
        f = v[j0] / b[j0]
        red = [x - f * y for x, y in zip(v, b)]
        lead = next((x for x in red if x != 0), None)
        if lead is not None:
            return CocycleVec([x / lead for x in red], alpha)
    raise InternalInconsistencyError("kernel of J(z) lies in the coboundary line")


# --- 2-cocycles and the obstruction system ---------------------------------


@dataclass
class ObstructionResult:
    """Solvability of a coboundary system ``M a = rhs``.

    ``witness`` is a solution when solvable, else a row vector ``y`` with
    ``y M = 0`` and ``y rhs != 0``.
    """

    solvable: bool
    witness: list
    matrix: list[list] = field(repr=False, default_factory=list)
    rhs: list = field(repr=False, default_factory=list)


def _result(sol: SolveResult, M, rhs) -> ObstructionResult:
    return ObstructionResult(
        sol.solvable, sol.solution if sol.solvable else sol.certificate, M, rhs
    )


def two_cocycle_system(P: Presentation, c, F) -> tuple[list[list], list]:
    """``M[j][i] = chi(dR_j/dS_i)`` and ``rhs[j] = -sum_i c(dR_j/dS_i, S_i)``."""
    M, rhs = [], []
    for r in P.relators:
        row = []
        acc = F.zero
        for i in range(P.n):
            fox = fox_derivative(r, i, P.n)
            s_i = FreeWord.generator(i)
            row.append(F(fox.map(c.action, zero=F.zero)))
            acc = acc + fox.map(lambda w: c.value(w, s_i), zero=F.zero)
        M.append(row)
        rhs.append(-F(acc))
    return M, rhs


def two_cocycle_is_coboundary(P: Presentation, c, F) -> ObstructionResult:
    """Decide whether the normalized 2-cocycle ``c`` is a coboundary.

    Solves ``sum_i chi(dR_j/dS_i) a_i + sum_i c(dR_j/dS_i, S_i) = 0`` for
    ``a``, where ``c`` is extended linearly in its first argument.
    """
    M, rhs = two_cocycle_system(P, c, F)
    return _result(linear_solve(M, rhs, F, P.n), M, rhs)


def cup_obstruction(
    P: Presentation,
    alpha: CharacterAlpha,
    d_plus: CocycleVec,
    a=1,
    *,
    J: LaurentMatrix | None = None,
    cross_check: bool = True,
) -> ObstructionResult:
    """Solvability of ``J(z) x + a DJ(z) d_plus = 0`` (``a != 0``).

    With ``cross_check`` the same question is answered through
    :func:`two_cocycle_is_coboundary` for ``(a phi) cup d_plus`` and any
    disagreement raises ``InternalInconsistencyError``.
    """
    F = alpha.field
    a = F(a)
    if a == 0:
        raise PreconditionError("the scale a must be nonzero")
    J = J if J is not None else jacobian(P, alpha.tw)
    A = evaluated_jacobian(P, alpha, J)
    DA = [[F(e.evaluate(alpha.z)) for e in row] for row in J.derivation_D().entries]
    rhs = [-a * sum((x * y for x, y in zip(row, d_plus.values)), F.zero) for row in DA]
    result = _result(linear_solve(A, rhs, F, P.n), A, rhs)
    if cross_check:
        h = Homomorphism([a * x for x in alpha.tw.splitting.phi], F)
        generic = two_cocycle_is_coboundary(P, CupProduct(h, d_plus), F)
        if generic.solvable != result.solvable:
            raise InternalInconsistencyError(
                "obstruction system and 2-cocycle criterion disagree "
                f"({result.solvable} vs {generic.solvable})"
            )
    return result


@dataclass(frozen=True)
class QuadConePoint:
    a0: object
    a_plus: object
    a_minus: object


def quadratic_cone_membership(q: QuadConePoint) -> bool:
    """``a0 a+ = 0`` and ``a0 a- = 0``."""
    return q.a0 * q.a_plus == 0 and q.a0 * q.a_minus == 0


# --- verdict ----------------------------------------------------------------


class Verdict(str, enum.Enum):
    NOT_A_ZERO_RIGID = "NOT_A_ZERO_RIGID"
    SIMPLE_ZERO_DEFORMABLE = "SIMPLE_ZERO_DEFORMABLE"
    HIGHER_ORDER_INCONCLUSIVE = "HIGHER_ORDER_INCONCLUSIVE"
    POSITIVE_RANK_NA = "POSITIVE_RANK_NA"
    TRIVIAL_ALPHA = "TRIVIAL_ALPHA"


@dataclass(frozen=True)
class FloatCheck:
    """One exact decision recomputed in double precision at one complex root."""

    name: str
    root: complex
    exact: object
    numeric: object

    @property
    def agrees(self) -> bool:
        return self.exact == self.numeric


@dataclass
class DeformabilityReport:
    presentation: str
    torsion: tuple[int, ...]
    betti: int
    sigma: tuple[int, ...]
    sigma_generators: dict[str, int]
    cyclotomic_order: int
    phi: tuple[int, ...]
    z_minpoly: str
    deltas: list[LaurentPoly]
    symmetric: bool
    zero_order: int | float
    dim_h1_plus: int | None
    dim_h1_minus: int | None
    obstruction_solvable: bool | None
    verdict: Verdict
    component_dims: list[int]
    transverse: bool | None
    d_plus: CocycleVec | None = None
    warnings: list[str] = field(default_factory=list)
    float_checks: list[FloatCheck] = field(default_factory=list)


def _first_nonvanishing(seq: AlexanderSequence, alpha: CharacterAlpha) -> int:
    k = 0
    while k < len(seq.deltas) and alpha.field(seq.deltas[k].evaluate(alpha.z)) == 0:
        k += 1
    return k


def _embed_laurent(f: LaurentPoly, root: complex) -> complex:
    emb = f.field.embed
    return sum((emb(c) * root**k for k, c in f.coeffs.items()), 0j)


def _float_checks(P, alpha: CharacterAlpha, J: LaurentMatrix, d_plus, obstruction, tol) -> list[FloatCheck]:
    """Recompute ranks and solvability in double precision at every root of the minpoly."""
    F = alpha.field
    ext = alpha.fd.ext
    J_minus = jacobian(P, alpha.tw.inverse())
    r_plus = rank(evaluated_jacobian(P, alpha, J), F) if P.m else 0
    r_minus = rank(evaluated_jacobian(P, alpha.minus(), J_minus), F) if P.m else 0
    DJ = J.derivation_D()
    checks = []
    for root in ext.all_roots():
        Ap = [[_embed_laurent(e, root) for e in row] for row in J.entries]
        Am = [[_embed_laurent(e, 1 / root) for e in row] for row in J_minus.entries]
        checks.append(FloatCheck("rank J(z)", root, r_plus, numeric_rank(Ap, tol) if P.m else 0))
        checks.append(FloatCheck("rank J-(1/z)", root, r_minus, numeric_rank(Am, tol) if P.m else 0))
        if obstruction is not None and d_plus is not None:
            DA = [[_embed_laurent(e, root) for e in row] for row in DJ.entries]
            dv = [ext.embed(v, root) for v in d_plus.values]
            rhs = [-sum(x * y for x, y in zip(row, dv)) for row in DA]
            checks.append(
                FloatCheck("obstruction solvable", root, obstruction.solvable, numeric_solvable(Ap, rhs, tol))
            )
    return checks


def deformability_verdict(
    P: Presentation,
    alpha: CharacterAlpha,
    *,
    float_check: bool = False,
    tol: float = DEFAULT_TOL,
) -> DeformabilityReport:
    """Classify ``rho_alpha`` from the zero order of ``Delta_0`` and the cohomology at ``z``."""
    h = h1_structure(P)
    if h.betti != 1:
        raise PreconditionError(f"not a rational homology circle: betti number is {h.betti}, expected 1")
    tw = alpha.tw
    J = jacobian(P, tw)
    seq = alexander_sequence(P, tw)
    warnings: list[str] = []
    delta0 = seq.deltas[0]
    symmetric = False
    if not delta0.is_zero():
        symmetric, _ = is_symmetric(delta0)
        if not symmetric:
            warnings.append("Delta_0 is not symmetric; the input may not present a 3-manifold group")
    base = dict(
        presentation=P.name,
        torsion=h.torsion,
        betti=h.betti,
        sigma=tw.sigma,
        sigma_generators={g: e for g, e in zip(P.generators, tw.generator_values())},
        cyclotomic_order=tw.order,
        phi=tw.splitting.phi,
        z_minpoly=alpha.minpoly_string(),
        deltas=seq.deltas,
        symmetric=symmetric,
    )
    r = zero_order(alpha, delta0)

    if alpha.is_trivial():
        report = DeformabilityReport(
            **base, zero_order=r, dim_h1_plus=None, dim_h1_minus=None,
            obstruction_solvable=None, verdict=Verdict.TRIVIAL_ALPHA,
            component_dims=[3], transverse=None, warnings=warnings,
        )
        if float_check:
            report.float_checks = _float_checks(P, alpha, J, None, None, tol)
            _float_warnings(report)
        return report

    dim_plus = dim_h1(P, alpha, J)
    dim_minus = dim_h1(P, alpha.minus())
    expected = _first_nonvanishing(seq, alpha)
    if dim_plus != expected:
        raise InternalInconsistencyError(
            f"dim H^1 = {dim_plus} but the first Alexander polynomial not vanishing at z is Delta_{expected}"
        )
    if dim_minus != dim_plus:
        msg = f"dim H^1 differs for alpha+ ({dim_plus}) and alpha- ({dim_minus})"
        if symmetric:
            raise InternalInconsistencyError(msg)
        warnings.append(msg)

    d_plus = None
    obstruction = None
    if r == math.inf:
        verdict, dims, transverse = Verdict.POSITIVE_RANK_NA, [], None
    elif r == 0:
        if dim_plus != 0:
            raise InternalInconsistencyError(f"z is not a root of Delta_0 but dim H^1 = {dim_plus}")
        verdict, dims, transverse = Verdict.NOT_A_ZERO_RIGID, [3], None
    elif r == 1:
        if dim_plus != 1:
            raise InternalInconsistencyError(f"simple zero but dim H^1 = {dim_plus}")
        d_plus = cocycle_generator(P, alpha, J)
        obstruction = cup_obstruction(P, alpha, d_plus, J=J)
        if obstruction.solvable:
            raise InternalInconsistencyError("simple zero but the cup-product obstruction vanishes")
        verdict, dims, transverse = Verdict.SIMPLE_ZERO_DEFORMABLE, [4, 3], True
    else:
        verdict, dims, transverse = Verdict.HIGHER_ORDER_INCONCLUSIVE, [], None

    report = DeformabilityReport(
        **base,
        zero_order=r,
        dim_h1_plus=dim_plus,
        dim_h1_minus=dim_minus,
        obstruction_solvable=None if obstruction is None else obstruction.solvable,
        verdict=verdict,
        component_dims=dims,
        transverse=transverse,
        d_plus=d_plus,
        warnings=warnings,
    )
    if float_check:
        report.float_checks = _float_checks(P, alpha, J, d_plus, obstruction, tol)
        _float_warnings(report)
    return report


def _float_warnings(report: DeformabilityReport) -> None:
    for chk in report.float_checks:
        if not chk.agrees:
            report.warnings.append(
                f"float check disagrees on {chk.name} at z ~ {chk.root:.12g}: "
                f"exact {chk.exact}, float {chk.numeric}"
            )
