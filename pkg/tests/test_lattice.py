import itertools
import math

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from alexdef import (
    IntMatrix,
    PreconditionError,
    alternate_splitting,
    canonical_splitting,
    h1_structure,
    parse_presentation,
    smith_normal_form_int,
)
from alexdef.lattice import abelianized_matrix


def int_matrices(max_rows=5, max_cols=6, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def minors_gcd_z(rows, k):
    A = sympy.Matrix(rows)
    g = 0
    for r in itertools.combinations(range(A.rows), k):
        for c in itertools.combinations(range(A.cols), k):
            g = math.gcd(g, int(A.extract(list(r), list(c)).det()))
    return g


def check_snf(rows):
    A = IntMatrix.from_rows(rows)
    s = smith_normal_form_int(A)
    assert s.U @ A @ s.V == s.D
    assert abs(s.U.determinant()) == 1 and abs(s.V.determinant()) == 1
    assert s.V @ s.V_inv == IntMatrix.identity(A.cols)
    diag = s.diagonal
    for i in range(s.D.rows):
        for j in range(s.D.cols):
            if i != j:
                assert s.D[i, j] == 0
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[: len(nz)] == tuple(nz)
    return s


def test_torus_bundle_h1(torus_bundle):
    h = h1_structure(torus_bundle)
    assert h.torsion == (2, 2)
    assert h.betti == 1
    assert h.torsion_order == 4
    assert h.exponent == 2


def test_torus_bundle_smith_coordinates(torus_bundle):
    # mu is the free generator; a and b span the torsion subgroup
    h = h1_structure(torus_bundle)
    split = canonical_splitting(h)
    assert split.phi == (1, 0, 0)
    assert split.check_section()
    assert split.p_of((1, 0, 0)) == (0, 0)
    assert {split.p_of((0, 1, 0)), split.p_of((0, 0, 1))} == {(1, 0), (0, 1)}


def test_abelianized_matrix(torus_bundle):
    assert abelianized_matrix(torus_bundle).tolist() == [[0, 0, -2], [0, -2, -4]]


@pytest.mark.parametrize(
    "text, torsion, betti",
    [
        ("gens: x\nrels:", (), 1),
        ("gens: x\nrels:\nx^2", (2,), 0),
        ("gens: x y\nrels:\nx^6 y^4", (2,), 1),
        ("gens: x y z\nrels:\nx^2\ny^3", (6,), 1),
        ("gens: x y\nrels:\nx y x^-1 y^-1", (), 2),
    ],
)
def test_h1_examples(text, torsion, betti):
    h = h1_structure(parse_presentation(text))
    assert (h.torsion, h.betti) == (torsion, betti)


def test_canonical_splitting_needs_betti_one():
    with pytest.raises(PreconditionError):
        canonical_splitting(h1_structure(parse_presentation("gens: x\nrels:\nx^2")))


@pytest.mark.parametrize("psi", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_alternate_splittings_are_sections(torus_bundle, psi):
    h = h1_structure(torus_bundle)
    base = canonical_splitting(h)
    split = alternate_splitting(h, psi, base)
    assert split.check_section()
    assert split.phi == base.phi
    # p2(mu) = p1(mu) + psi since phi(mu) = 1
    assert split.p_of((1, 0, 0)) == tuple((a + b) % 2 for a, b in zip(base.p_of((1, 0, 0)), psi))


def test_negate_phi_is_section(torus_bundle):
    assert canonical_splitting(h1_structure(torus_bundle)).negate_phi().check_section()


@given(int_matrices())
def test_snf_properties(rows):
    s = check_snf(rows)
    want = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    want_diag = sorted(abs(int(want[i, i])) for i in range(min(want.shape)))
    assert sorted(s.diagonal) == want_diag


@given(int_matrices(4, 4, -4, 4))
def test_snf_matches_determinantal_divisors(rows):
    s = smith_normal_form_int(IntMatrix.from_rows(rows))
    prod = 1
    for k, d in enumerate(s.diagonal, start=1):
        prod *= d
        assert prod == minors_gcd_z(rows, k)


def test_snf_zero_and_identity():
    check_snf([[0, 0, 0], [0, 0, 0]])
    s = check_snf([[1, 0], [0, 1]])
    assert s.diagonal == (1, 1)
