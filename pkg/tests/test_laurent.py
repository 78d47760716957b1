import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from alexdef import QQ, LaurentMatrix, LaurentPoly, cyclotomic_field, laurent_gcd, minors_gcd, rational_roots, root_multiplicity, smith_normal_form_laurent
from alexdef.fields import SimpleExtension

from strategies import laurent_polys

T = sympy.Symbol("t")
Q1 = cyclotomic_field(1)
Q4 = cyclotomic_field(4)


def lp(coeffs, shift=0, F=QQ):
    return LaurentPoly.from_list(F, [F(c) for c in coeffs], shift)


def to_sympy(f):
    return sum((sympy.Rational(c.numerator, c.denominator) * T**k for k, c in f.coeffs.items()), sympy.Integer(0))


def laurent_matrices(F, max_rows, max_cols, max_terms=2, lo=-1, hi=1):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(laurent_polys(F, max_terms, lo, hi), min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda rows: LaurentMatrix.from_rows(F, rows, c))
        )
    )


def check_laurent_snf(A):
    s = smith_normal_form_laurent(A)
    assert s.U @ A @ s.V == s.D
    assert s.U.determinant().is_unit() and s.V.determinant().is_unit()
    for i in range(A.rows):
        for j in range(A.cols):
            if i != j:
                assert s.D[i, j].is_zero()
    fs = s.factors
    for a, b in zip(fs, fs[1:]):
        assert a.divides(b)
    for f in fs:
        assert f.is_zero() or f == f.normalized()
    for k in range(min(A.rows, A.cols) + 1):
        assert s.minors_gcd(k) == minors_gcd(A, k)
    return s


def test_normalization():
    f = lp([2, 4, -6], shift=-3)
    g, u = f.normalize_unit()
    assert g == lp([Fraction(-1, 3), Fraction(-2, 3), 1])
    assert u * g == f
    assert u.is_unit()
    assert LaurentPoly(QQ).normalized().is_zero()


def test_divmod_and_gcd():
    a = lp([1, -6, 1]) * lp([-1, 1])
    b = lp([-1, 1], shift=-4) * lp([2, 1])
    assert laurent_gcd(a, b) == lp([-1, 1])
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.span() < b.span()
    with pytest.raises(ValueError):
        laurent_gcd(LaurentPoly(QQ), LaurentPoly(QQ))


@given(laurent_polys(QQ, 4, -3, 3, st.integers(-5, 5)), laurent_polys(QQ, 4, -3, 3, st.integers(-5, 5)))
def test_gcd_matches_sympy(a, b):
    assume(not (a.is_zero() and b.is_zero()))
    g = laurent_gcd(a, b)
    # clear negative powers, take the polynomial gcd, then strip powers of t
    want = sympy.Poly(sympy.gcd(sympy.expand(to_sympy(a) * T**10), sympy.expand(to_sympy(b) * T**10)), T)
    low = min(e for (e,) in want.monoms())
    want = sympy.Poly(sympy.expand(want.as_expr() / T**low), T).monic()
    assert sympy.expand(to_sympy(g) - want.as_expr()) == 0
    assert g.divides(a) and g.divides(b)


@given(laurent_polys(Q4, 3), laurent_polys(Q4, 3), laurent_polys(Q4, 3))
def test_ring_axioms_cyclotomic(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly(Q4)


@given(laurent_polys(Q4, 3), laurent_polys(Q4, 3))
def test_leibniz_rule(a, b):
    assert (a * b).derivation_D() == a.derivation_D() * b + a * b.derivation_D()


@given(laurent_polys(Q4, 3), laurent_polys(Q4, 3))
def test_bar_is_ring_map(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert a.bar().bar() == a


@given(laurent_polys(QQ, 4, -3, 3), st.integers(-3, 3).filter(bool))
def test_evaluate_is_homomorphism(a, x):
    b = a * a + lp([1, 1])
    assert b.evaluate(Fraction(x)) == a.evaluate(Fraction(x)) ** 2 + 1 + x


def test_substitute_scaled():
    f = lp([1, -6, 1])
    g = f.substitute_scaled(QQ(-1))
    assert g == lp([1, 6, 1])
    F = Q4
    h = LaurentPoly.from_list(F, [F(-1), F(1)]).substitute_scaled(F.zeta())
    assert h == LaurentPoly.from_list(F, [F(-1), F.zeta()])


def test_root_multiplicity():
    m = lp([1, -6, 1])
    f = m * m * lp([-1, 1])
    assert root_multiplicity(f, m) == 2
    assert root_multiplicity(f, lp([-1, 1])) == 1
    assert root_multiplicity(f, lp([-2, 1])) == 0
    assert root_multiplicity(LaurentPoly(QQ), m) == math.inf


@given(
    st.integers(1, 4),
    laurent_polys(QQ, 3, -2, 2, st.integers(-4, 4)),
    st.sampled_from([[1, -6, 1], [-1, 1], [-2, 1], [2, 0, 1], [1, 1, 1]]),
)
def test_order_drops_by_one_under_D(k, g, m_coeffs):
    """ord_z(eta) = ord_z(D eta) + 1 for a nonzero root z (D = t d/dt)."""
    m = lp(m_coeffs)
    assume(not g.is_zero() and root_multiplicity(g, m) == 0)
    eta = m**k * g
    assert root_multiplicity(eta, m) == k
    assert root_multiplicity(eta.derivation_D(), m) == k - 1


def test_order_drop_over_extension():
    # eta = (t - z)^2 (t + 3) over Q(z), z a root of t^2 - 6t + 1
    E = SimpleExtension(Q1, [1, -6, 1], "z")
    z = E.gen
    lin = LaurentPoly.from_list(E, [-z, E.one])
    eta = lin * lin * LaurentPoly.from_list(E, [E(3), E.one])
    assert eta.evaluate(z) == 0
    assert eta.derivation_D().evaluate(z) == 0
    assert eta.derivation_D().derivation_D().evaluate(z) != 0


def test_rational_roots():
    f = lp([1, -6, 1]) * lp([-1, 1]) ** 2 * lp([1, 2])
    assert rational_roots(f) == [(Fraction(-1, 2), 1), (Fraction(1), 2)]
    assert rational_roots(lp([1, -6, 1])) == []
    F = Q4
    g = LaurentPoly.from_list(F, [F(-2), F(1)]) * LaurentPoly.from_list(F, [-F.zeta(), F(1)])
    assert rational_roots(g) == [(Fraction(2), 1)]


def test_determinant_matches_sympy():
    rows = [[lp([1, 2]), lp([0, -1], -1), lp([3])], [lp([1]), lp([1, 1, 1], -1), lp([0])], [lp([2]), lp([-1]), lp([1, 0, 1])]]
    A = LaurentMatrix.from_rows(QQ, rows)
    want = sympy.Matrix([[to_sympy(e) for e in r] for r in rows]).det()
    assert sympy.simplify(to_sympy(A.determinant()) - want) == 0


@settings(max_examples=60)
@given(laurent_matrices(QQ, 5, 6))
def test_snf_over_rationals(A):
    check_laurent_snf(A)


@settings(max_examples=25)
@given(laurent_matrices(Q4, 3, 4))
def test_snf_over_cyclotomic(A):
    check_laurent_snf(A)


def test_snf_descending_and_rank():
    A = LaurentMatrix.from_rows(QQ, [[lp([-1, 1]), lp([0])], [lp([0]), lp([1, -6, 1])]])
    s = check_laurent_snf(A)
    assert s.rank == 2
    assert s.descending[-1] == LaurentPoly.constant(QQ, 1)
    assert s.descending[0] == lp([-1, 1]) * lp([1, -6, 1])


def test_minors_gcd_bounds():
    A = LaurentMatrix.from_rows(QQ, [[lp([1]), lp([2])]])
    assert minors_gcd(A, 0) == LaurentPoly.constant(QQ, 1)
    with pytest.raises(ValueError):
        minors_gcd(A, 2)
