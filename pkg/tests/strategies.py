"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction

from hypothesis import strategies as st

from alexdef import FreeWord, LaurentPoly, reduce_word
from alexdef.fields import SimpleExtension

small_ints = st.integers(min_value=-5, max_value=5)
fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


def words(n_gens=3, max_len=30):
    syll = st.tuples(st.integers(0, n_gens - 1), st.integers(-3, 3).filter(bool))
    return st.lists(syll, max_size=max_len).map(reduce_word).filter(lambda w: len(w) <= max_len)


def ext_elements(F, coeff=fractions):
    """Elements of a field level built from random coordinates over its base."""
    if not isinstance(F, SimpleExtension):
        return coeff
    return st.lists(ext_elements(F.base, coeff), min_size=F.degree, max_size=F.degree).map(F.from_poly)


def laurent_polys(F, max_terms=4, lo=-3, hi=3, coeff=None):
    coeff = coeff if coeff is not None else ext_elements(F, st.builds(Fraction, st.integers(-4, 4)))
    return st.dictionaries(st.integers(lo, hi), coeff, max_size=max_terms).map(lambda d: LaurentPoly(F, d))


__all__ = ["words", "ext_elements", "laurent_polys", "small_ints", "fractions", "FreeWord"]
