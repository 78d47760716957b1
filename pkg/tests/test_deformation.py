import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from alexdef import (
    CharacterAlpha,
    CupProduct,
    Homomorphism,
    PreconditionError,
    QuadConePoint,
    Verdict,
    canonical_splitting,
    cocycle_generator,
    cup_obstruction,
    deformability_verdict,
    dim_h1,
    h1_structure,
    jacobian,
    parse_presentation,
    parse_sigma,
    quadratic_cone_membership,
    two_cocycle_is_coboundary,
    zero_order,
    alexander_sequence,
)
from alexdef.deformation import CochainSum, coboundary_vector, evaluated_jacobian
from alexdef.fields import cyclotomic_field

from strategies import words

K2 = cyclotomic_field(2)
SIMPLE_ZEROS = [(1, [1, -6, 1]), (2, [-1, 1]), (3, [-1, 1]), (4, [-1, 1])]
NON_ZEROS = [(1, [-2, 1]), (2, [-2, 1]), (3, [3, 1]), (4, [-3, 1]), (1, [1, 1, 1])]


def phi_hom(alpha, scale=1):
    F = alpha.field
    return Homomorphism([F(scale) * x for x in alpha.tw.splitting.phi], F)


def is_cocycle(P, d):
    A = evaluated_jacobian(P, d.alpha)
    return all(sum((a * v for a, v in zip(row, d.values)), d.F.zero) == 0 for row in A)


@pytest.mark.parametrize("i, mp", SIMPLE_ZEROS)
def test_simple_zero_cohomology(torus_bundle, character, i, mp):
    alpha = character(i, mp)
    d0 = alexander_sequence(torus_bundle, alpha.tw).deltas[0]
    assert zero_order(alpha, d0) == 1
    assert dim_h1(torus_bundle, alpha) == 1
    assert dim_h1(torus_bundle, alpha.minus()) == 1


@pytest.mark.parametrize("i, mp", NON_ZEROS)
def test_non_zero_cohomology(torus_bundle, character, i, mp):
    alpha = character(i, mp)
    d0 = alexander_sequence(torus_bundle, alpha.tw).deltas[0]
    assert zero_order(alpha, d0) == 0
    assert dim_h1(torus_bundle, alpha) == 0
    assert dim_h1(torus_bundle, alpha.minus()) == 0


def test_trivial_character_rejected(torus_bundle, character):
    with pytest.raises(PreconditionError):
        dim_h1(torus_bundle, character(1, [-1, 1]))


def test_minus_character_is_inverse(torus_bundle, character):
    alpha = character(1, [1, -6, 1])
    beta = alpha.minus()
    for w in [torus_bundle.word("m"), torus_bundle.word("m^2 a b^-1"), torus_bundle.word("a m^-3")]:
        assert alpha(w) * beta(w) == 1
    assert beta.z ** 2 - 6 * beta.z + 1 == 0


def test_cocycle_generator_torus_sigma1(torus_bundle, character):
    alpha = character(1, [1, -6, 1])
    d = cocycle_generator(torus_bundle, alpha)
    z = alpha.z
    # proportional to (0, 2, z - 1), scaled so the first nonzero entry is 1
    assert d.values == (0, 1, (z - 1) / 2)
    assert is_cocycle(torus_bundle, d)


@pytest.mark.parametrize("i, mp", SIMPLE_ZEROS)
def test_cocycle_generator_is_not_a_coboundary(torus_bundle, character, i, mp):
    alpha = character(i, mp)
    d = cocycle_generator(torus_bundle, alpha)
    b = coboundary_vector(torus_bundle, alpha)
    assert is_cocycle(torus_bundle, d)
    # d and b independent: some 2x2 minor of (d; b) is nonzero
    assert any(d.values[p] * b[q] - d.values[q] * b[p] != 0 for p in range(3) for q in range(3))


@pytest.mark.parametrize("i, mp", SIMPLE_ZEROS)
def test_coboundary_is_cocycle(torus_bundle, character, i, mp):
    alpha = character(i, mp)
    d = cocycle_generator(torus_bundle, alpha)
    assert is_cocycle(torus_bundle, d.shifted(coboundary_vector(torus_bundle, alpha)))


@settings(max_examples=40)
@given(words(3, 10), words(3, 10))
def test_cocycle_rule_on_words(torus_bundle, character, u, v):
    alpha = character(2, [-1, 1])
    d = cocycle_generator(torus_bundle, alpha)
    assert d(u * v) == d(u) + alpha(u) * d(v)


@settings(max_examples=30)
@given(words(3, 6), words(3, 6), words(3, 6))
def test_cup_product_is_two_cocycle(torus_bundle, character, g1, g2, g3):
    alpha = character(1, [1, -6, 1])
    c = CupProduct(phi_hom(alpha), cocycle_generator(torus_bundle, alpha))
    delta = (
        c.action(g1) * c.value(g2, g3)
        - c.value(g1 * g2, g3)
        + c.value(g1, g2 * g3)
        - c.value(g1, g2)
    )
    assert delta == 0


@pytest.mark.parametrize("i, mp", SIMPLE_ZEROS)
def test_obstruction_unsolvable(torus_bundle, character, i, mp):
    alpha = character(i, mp)
    d = cocycle_generator(torus_bundle, alpha)
    res = cup_obstruction(torus_bundle, alpha, d)
    assert not res.solvable
    # certificate: y J(z) = 0 and y . rhs != 0
    y = res.witness
    F = alpha.field
    for j in range(3):
        assert sum((y[r] * res.matrix[r][j] for r in range(len(y))), F.zero) == 0
    assert sum((a * b for a, b in zip(y, res.rhs)), F.zero) != 0
    generic = two_cocycle_is_coboundary(torus_bundle, CupProduct(phi_hom(alpha), d), F)
    assert generic.solvable == res.solvable


@pytest.mark.parametrize("i, mp", SIMPLE_ZEROS)
def test_reversed_cup_also_not_coboundary(torus_bundle, character, i, mp):
    alpha = character(i, mp)
    d = cocycle_generator(torus_bundle, alpha)
    assert not two_cocycle_is_coboundary(torus_bundle, CupProduct(d, phi_hom(alpha)), alpha.field).solvable


def test_symmetric_cup_sum_has_explicit_primitive(torus_bundle, character):
    """z1 cup z2 + z2 cup z1 is the coboundary of f = z1 * z2, with a_i = f(S_i)."""
    alpha = character(2, [-1, 1])
    P = torus_bundle
    d, h = cocycle_generator(P, alpha), phi_hom(alpha)
    c = CochainSum([(1, CupProduct(h, d)), (1, CupProduct(d, h))])
    res = two_cocycle_is_coboundary(P, c, alpha.field)
    assert res.solvable
    gens = [P.word(g) for g in P.generators]
    a = [h(s) * d(s) for s in gens]
    assert any(x != 0 for x in a)
    residual = [sum((m * x for m, x in zip(row, a)), alpha.field.zero) - r for row, r in zip(res.matrix, res.rhs)]
    assert all(x == 0 for x in residual)


def test_zero_cochain_is_coboundary(torus_bundle, character):
    alpha = character(1, [1, -6, 1])
    d = cocycle_generator(torus_bundle, alpha)
    zero = Homomorphism([0, 0, 0], alpha.field)
    assert two_cocycle_is_coboundary(torus_bundle, CupProduct(zero, d), alpha.field).solvable


@pytest.mark.parametrize("i, mp", SIMPLE_ZEROS)
@pytest.mark.parametrize("scale", [5, Fraction(-2, 3)])
def test_obstruction_invariant_under_rescaling(torus_bundle, character, i, mp, scale):
    alpha = character(i, mp)
    d = cocycle_generator(torus_bundle, alpha)
    assert not cup_obstruction(torus_bundle, alpha, d.scaled(scale)).solvable


@pytest.mark.parametrize("i, mp", SIMPLE_ZEROS)
@pytest.mark.parametrize("lam", [1, -3, Fraction(7, 2)])
def test_obstruction_invariant_under_coboundary_shift(torus_bundle, character, i, mp, lam):
    alpha = character(i, mp)
    d = cocycle_generator(torus_bundle, alpha)
    b = [lam * x for x in coboundary_vector(torus_bundle, alpha)]
    assert not cup_obstruction(torus_bundle, alpha, d.shifted(b)).solvable


@pytest.mark.parametrize("i, mp", SIMPLE_ZEROS)
@pytest.mark.parametrize("a", [2, -1, Fraction(1, 7)])
def test_obstruction_invariant_under_scale(torus_bundle, character, i, mp, a):
    alpha = character(i, mp)
    d = cocycle_generator(torus_bundle, alpha)
    assert not cup_obstruction(torus_bundle, alpha, d, a=a).solvable


def test_obstruction_scale_zero_rejected(torus_bundle, character):
    alpha = character(1, [1, -6, 1])
    with pytest.raises(PreconditionError):
        cup_obstruction(torus_bundle, alpha, cocycle_generator(torus_bundle, alpha), a=0)


def test_obstruction_solvable_for_coboundary(torus_bundle, character):
    # a coboundary in place of d+ gives a solvable system
    alpha = character(1, [1, -6, 1])
    d = cocycle_generator(torus_bundle, alpha)
    cob = d.scaled(0).shifted(coboundary_vector(torus_bundle, alpha))
    assert cup_obstruction(torus_bundle, alpha, cob).solvable


def test_quadratic_cone():
    assert quadratic_cone_membership(QuadConePoint(0, 1, 1))
    assert quadratic_cone_membership(QuadConePoint(2, 0, 0))
    assert not quadratic_cone_membership(QuadConePoint(1, 1, 0))
    assert not quadratic_cone_membership(QuadConePoint(1, 0, 3))


# --- verdicts ---


@pytest.mark.parametrize("i, mp", SIMPLE_ZEROS)
def test_verdict_simple(torus_bundle, character, i, mp):
    r = deformability_verdict(torus_bundle, character(i, mp), float_check=True)
    assert r.verdict is Verdict.SIMPLE_ZERO_DEFORMABLE
    assert (r.zero_order, r.dim_h1_plus, r.dim_h1_minus) == (1, 1, 1)
    assert r.obstruction_solvable is False
    assert r.component_dims == [4, 3] and r.transverse
    assert r.symmetric
    assert r.float_checks and all(c.agrees for c in r.float_checks)
    assert r.warnings == []


def test_verdict_both_roots_of_quadratic(torus_bundle, twist):
    for hint in (3 + 8 ** 0.5, 3 - 8 ** 0.5):
        alpha = CharacterAlpha(twist(1), [1, -6, 1], root_hint=hint)
        assert abs(alpha.field.root - hint) < 1e-9
        r = deformability_verdict(torus_bundle, alpha, float_check=True)
        assert r.verdict is Verdict.SIMPLE_ZERO_DEFORMABLE


@pytest.mark.parametrize("i, mp", NON_ZEROS)
def test_verdict_not_a_zero(torus_bundle, character, i, mp):
    r = deformability_verdict(torus_bundle, character(i, mp), float_check=True)
    assert r.verdict is Verdict.NOT_A_ZERO_RIGID
    assert r.zero_order == 0 and r.component_dims == [3]
    assert (r.dim_h1_plus, r.dim_h1_minus) == (0, 0)
    assert all(c.agrees for c in r.float_checks)


def test_verdict_trivial(torus_bundle, character):
    r = deformability_verdict(torus_bundle, character(1, [-1, 1]))
    assert r.verdict is Verdict.TRIVIAL_ALPHA
    assert r.dim_h1_plus is None


def test_verdict_positive_rank():
    P = parse_presentation("gens: x y\nrels:\ny^2")
    tw = parse_sigma("y=1", P, canonical_splitting(h1_structure(P)))
    r = deformability_verdict(P, CharacterAlpha(tw, [-3, 1]))
    assert r.verdict is Verdict.POSITIVE_RANK_NA
    assert r.zero_order == math.inf
    assert r.dim_h1_plus == 1


def test_verdict_higher_order():
    # y and z are conjugated to their squares, so Delta_0 = (t - 2)^2
    P = parse_presentation("gens: x y z\nrels:\nx y x^-1 y^-2\nx z x^-1 z^-2")
    tw = parse_sigma("trivial", P, canonical_splitting(h1_structure(P)))
    r = deformability_verdict(P, CharacterAlpha(tw, [-2, 1]))
    assert str(r.deltas[0]) == "t^2-4*t+4"
    assert r.verdict is Verdict.HIGHER_ORDER_INCONCLUSIVE
    assert r.zero_order == 2 and r.dim_h1_plus == 2
    assert any("not symmetric" in w for w in r.warnings)


def test_verdict_needs_betti_one(twist):
    # the character is built for the torus bundle; the betti check on P fires first
    P = parse_presentation("gens: x\nrels:\nx^2")
    with pytest.raises(PreconditionError, match="betti"):
        deformability_verdict(P, CharacterAlpha(twist(1), [-2, 1]))


def test_derivative_of_jacobian_on_doubled_cocycle(torus_bundle, character):
    """DJ(z) (0, 2, z-1) = (2z, z^2 - z) for sigma_1."""
    alpha = character(1, [1, -6, 1])
    z = alpha.z
    DJ = jacobian(torus_bundle, alpha.tw).derivation_D()
    v = [0, 2, z - 1]
    got = [sum((alpha.field(e.evaluate(z)) * x for e, x in zip(row, v)), alpha.field.zero) for row in DJ.entries]
    assert got == [2 * z, z * z - z]
    assert cocycle_generator(torus_bundle, alpha).scaled(2).values == tuple(alpha.field(x) for x in v)


def test_reducible_minpoly_rejected(twist):
    from alexdef import ReducibleMinpolyError

    with pytest.raises(ReducibleMinpolyError):
        CharacterAlpha(twist(2), [-1, 0, 1])  # (t - 1)(t + 1)


def test_minus_field_shared(character):
    alpha = character(3, [-1, 1])
    assert alpha.minus().field is alpha.field
    assert alpha.minus().minus().z == alpha.z


def test_jacobian_evaluation_matches_character(torus_bundle, character):
    # J(z) computed from the Laurent matrix equals the Fox derivatives pushed through alpha
    from alexdef import fox_derivative

    alpha = character(4, [-1, 1])
    A = evaluated_jacobian(torus_bundle, alpha, jacobian(torus_bundle, alpha.tw))
    for j, r in enumerate(torus_bundle.relators):
        for i in range(3):
            assert A[j][i] == alpha.on_ring(fox_derivative(r, i, 3))
