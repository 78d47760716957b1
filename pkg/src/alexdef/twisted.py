"""Twisted Fox Jacobians and twisted Alexander polynomials.

A twist is a splitting ``(p, phi, s_p)`` of H_1 together with a character
``sigma`` of the torsion subgroup, written as exponents of ``zeta_m`` on the
Smith torsion generators (``m`` = exponent of the torsion subgroup).  A word
``g`` is sent to ``sigma(p(g)) * t^phi(g)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InternalInconsistencyError, PreconditionError
from .fields import CyclotomicField, cyclotomic_field
from .lattice import H1Structure, SplittingData, canonical_splitting, h1_structure
from .laurent import (
    LaurentMatrix,
    LaurentPoly,
    SmithDecompositionR,
    laurent_gcd,
    minors_gcd,
    smith_normal_form_laurent,
)
from .presentation import FreeWord, GroupRingElem, Presentation, fox_derivative

__all__ = [
    "TwistSetup",
    "AlexanderSequence",
    "TorsionCheck",
    "twist_polynomial",
    "jacobian",
    "alexander_polynomials",
    "alexander_sequence",
    "is_symmetric",
    "torsion_order_check",
    "sigma_from_generator_values",
    "parse_sigma",
]


@dataclass(frozen=True)
class TwistSetup:
    """Splitting plus ``sigma`` given as ``zeta_m`` exponents on the Smith torsion generators."""

    splitting: SplittingData
    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        tors = self.splitting.torsion
        if len(self.sigma) != len(tors):
            raise PreconditionError(
                f"sigma needs one exponent per torsion generator ({len(tors)}), got {len(self.sigma)}"
            )
        m = self.order
        norm = tuple(int(e) % m for e in self.sigma)
        for e, d in zip(norm, tors):
            if (e * d) % m:
                raise PreconditionError(
                    f"sigma is not a homomorphism: zeta_{m}^{e} does not have order dividing {d}"
                )
        object.__setattr__(self, "sigma", norm)

    @classmethod
    def trivial(cls, splitting: SplittingData) -> "TwistSetup":
        return cls(splitting, (0,) * len(splitting.torsion))

    @property
    def h1(self) -> H1Structure:
        return self.splitting.h1

    @property
    def order(self) -> int:
        """``m``: the cyclotomic order hosting the values of sigma."""
        return self.h1.exponent

    @property
    def field(self) -> CyclotomicField:
        return cyclotomic_field(self.order)

    def is_trivial(self) -> bool:
        return not any(self.sigma)

    def with_splitting(self, splitting: SplittingData) -> "TwistSetup":
        return TwistSetup(splitting, self.sigma)

    def inverse(self) -> "TwistSetup":
        """The character ``g -> sigma(g)^-1``."""
        return TwistSetup(self.splitting, tuple(-e for e in self.sigma))

    def sigma_exponent(self, vec: Sequence[int]) -> int:
        """Exponent of ``zeta_m`` giving ``sigma(p(x))`` for an exponent vector ``x``."""
        coords = self.splitting.p_of(vec)
        return sum(e * c for e, c in zip(self.sigma, coords)) % self.order

    def sigma_value(self, vec: Sequence[int]):
        return self.field.zeta(self.sigma_exponent(vec))

    def sigma_of_torsion(self, coords: Sequence[int]):
        """``sigma`` of the torsion element with the given Smith coordinates."""
        return self.field.zeta(sum(e * c for e, c in zip(self.sigma, coords)))

    def generator_values(self) -> tuple[int, ...]:
        """``zeta_m`` exponent of ``sigma(p(S_i))`` for each generator index ``i``."""
        n = self.h1.n_generators
        return tuple(self.sigma_exponent([int(i == j) for j in range(n)]) for i in range(n))

    def twist_word(self, w: FreeWord) -> LaurentPoly:
        vec = w.exponent_vector(self.h1.n_generators)
        return LaurentPoly.monomial(self.field, self.sigma_value(vec), self.splitting.phi_of(vec))


def twist_polynomial(e: GroupRingElem, tw: TwistSetup) -> LaurentPoly:
    """Apply ``g -> sigma(p(g)) t^phi(g)`` linearly."""
    return e.map(tw.twist_word, zero=LaurentPoly(tw.field))


def jacobian(P: Presentation, tw: TwistSetup) -> LaurentMatrix:
    """Twisted Fox Jacobian: rows = relators, columns = generators in declaration order."""
    rows = [[twist_polynomial(fox_derivative(r, i, P.n), tw) for i in range(P.n)] for r in P.relators]
    return LaurentMatrix(tw.field, P.m, P.n, rows)


@dataclass
class AlexanderSequence:
    """``deltas[k]`` is the k-th twisted Alexander polynomial, unit-normalized.

    Only ``k = 0 .. n-1`` are stored; :meth:`delta` returns 1 beyond that.
    """

    deltas: list[LaurentPoly]
    snf: SmithDecompositionR
    n_generators: int

    @property
    def positive_rank(self) -> bool:
        """True when ``Delta_0`` vanishes identically."""
        return self.deltas[0].is_zero()

    def delta(self, k: int) -> LaurentPoly:
        if k < len(self.deltas):
            return self.deltas[k]
        return LaurentPoly.constant(self.deltas[0].field, 1)


def _delta_from_snf(snf: SmithDecompositionR, order: int, field) -> LaurentPoly:
    if order > len(snf.factors):
        return LaurentPoly(field)
    return snf.minors_gcd(order)


def alexander_polynomials(J: LaurentMatrix, up_to_k: int | None = None) -> AlexanderSequence:
    """``Delta_k`` = gcd of the ``(n-k-1)``-minors of ``J``, cross-checked against the SNF."""
    n = J.cols
    last = n - 1 if up_to_k is None else min(up_to_k, n - 1)
    snf = smith_normal_form_laurent(J)
    deltas = []
    for k in range(last + 1):
        order = n - k - 1
        if order > min(J.rows, J.cols):
            d = LaurentPoly(J.field)
        else:
            d = minors_gcd(J, order)
        via_snf = _delta_from_snf(snf, order, J.field)
        if d != via_snf:
            raise InternalInconsistencyError(
                f"Delta_{k}: minors give {d} but Smith form gives {via_snf}"
            )
        deltas.append(d)
    for k in range(len(deltas) - 1):
        if not deltas[k + 1].divides(deltas[k]):
            raise InternalInconsistencyError(f"Delta_{k + 1} does not divide Delta_{k}")
    return AlexanderSequence(deltas, snf, n)


def alexander_sequence(P: Presentation, tw: TwistSetup) -> AlexanderSequence:
    return alexander_polynomials(jacobian(P, tw))


def is_symmetric(d: LaurentPoly) -> tuple[bool, LaurentPoly | None]:
    """Test ``bar(d) = eps * d`` for a unit ``eps``; return ``(True, eps)`` or ``(False, None)``."""
    if d.is_zero():
        raise ValueError("symmetry is undefined for the zero polynomial")
    db = d.bar()
    g1, u1 = d.normalize_unit()
    g2, u2 = db.normalize_unit()
    if g1 != g2:
        return False, None
    return True, u2 * u1 ** -1


@dataclass(frozen=True)
class TorsionCheck:
    skipped: bool
    delta_at_one: Fraction | None = None
    torsion_order: int | None = None

    @property
    def agrees(self) -> bool | None:
        if self.skipped:
            return None
        return abs(self.delta_at_one) == self.torsion_order


def _integral_gcd(polys: Sequence[LaurentPoly]) -> LaurentPoly:
    """gcd in Z[t, t^-1] of polynomials with integer coefficients, positive leading coefficient."""
    nonzero = [f for f in polys if not f.is_zero()]
    if not nonzero:
        return polys[0] if polys else LaurentPoly(cyclotomic_field(1))
    content = 0
    g = None
    for f in nonzero:
        for c in f.coeffs.values():
            q = c.to_rational() if hasattr(c, "to_rational") else Fraction(c)
            if q.denominator != 1:
                raise ValueError("expected integer coefficients")
            content = math.gcd(content, int(q))
        g = f.normalized() if g is None else laurent_gcd(g, f)
    # clear denominators of the monic rational gcd to get its primitive part
    qs = [c.to_rational() if hasattr(c, "to_rational") else Fraction(c) for c in g.coeffs.values()]
    lcm = 1
    for q in qs:
        lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    prim = g.scale(lcm)
    cont = 0
    for c in prim.coeffs.values():
        q = c.to_rational() if hasattr(c, "to_rational") else Fraction(c)
        cont = math.gcd(cont, int(q))
    return prim.scale(Fraction(content, cont))


def torsion_order_check(P: Presentation, delta: LaurentPoly | None = None) -> TorsionCheck:
    """Compare ``|Delta(1)|`` of the untwisted polynomial with ``|tors H_1|``.

    ``Delta`` is normalized over the integers (gcd of the integral minors),
    so its value at 1 is well defined up to sign.  Skipped without relators.
    """
    if P.m == 0:
        return TorsionCheck(skipped=True)
    h = h1_structure(P)
    if delta is None:
        split = canonical_splitting(h)
        J = jacobian(P, TwistSetup.trivial(split))
        order = P.n - 1
        if order > min(J.rows, J.cols):
            return TorsionCheck(False, Fraction(0), h.torsion_order)
        minors = [
            J.submatrix(rows, cols).determinant()
            for rows in itertools.combinations(range(J.rows), order)
            for cols in itertools.combinations(range(J.cols), order)
        ]
        delta = _integral_gcd(minors)
    value = delta.evaluate(1)
    value = value.to_rational() if hasattr(value, "to_rational") else Fraction(value)
    return TorsionCheck(False, value, h.torsion_order)


def sigma_from_generator_values(
    P: Presentation, split: SplittingData, values: Mapping[str, int]
) -> TwistSetup:
    """Find the sigma whose value on each generator's torsion part is ``zeta_m^values[g]``.

    Generators not mentioned get exponent 0.  Raises ``PreconditionError`` if
    the prescription is not induced by a character of the torsion subgroup.
    """
    h = split.h1
    m = h.exponent
    unknown = [g for g in values if g not in P.generators]
    if unknown:
        raise PreconditionError(f"sigma mentions unknown generator(s): {', '.join(unknown)}")
    target = [int(values.get(g, 0)) % m for g in P.generators]
    choices = [range(0, m, m // d) for d in h.torsion]
    found = []
    for sig in itertools.product(*choices):
        tw = TwistSetup(split, tuple(sig))
        if list(tw.generator_values()) == target:
            found.append(tw)
    if not found:
        desc = ", ".join(f"{g}={values.get(g, 0)}" for g in P.generators)
        raise PreconditionError(
            f"sigma ({desc}, exponents of zeta_{m}) is not a well-defined character of the torsion subgroup"
        )
    if len(found) > 1:  # cannot happen: generators span the torsion subgroup
        raise InternalInconsistencyError("sigma prescription is ambiguous")
    return found[0]


def parse_sigma(text: str, P: Presentation, split: SplittingData) -> TwistSetup:
    """Parse ``trivial``, ``torsion:e1,e2,...`` or ``gen=e,gen=e`` (zeta_m exponents)."""
    text = text.strip()
    if text in ("", "trivial"):
        return TwistSetup.trivial(split)
    if text.startswith("torsion:"):
        body = text[len("torsion:"):]
        try:
            exps = tuple(int(x) for x in body.split(",") if x.strip())
        except ValueError as exc:
            raise PreconditionError(f"cannot parse sigma {text!r}") from exc
        return TwistSetup(split, exps)
    values: dict[str, int] = {}
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise PreconditionError(f"cannot parse sigma entry {item.strip()!r}; expected gen=exponent")
        name, _, exp = item.partition("=")
        try:
            values[name.strip()] = int(exp)
        except ValueError as exc:
            raise PreconditionError(f"sigma exponent for {name.strip()!r} is not an integer") from exc
    return sigma_from_generator_values(P, split, values)
