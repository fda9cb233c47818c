"""Hypothesis strategies for small objects over GF(p)."""

from fractions import Fraction

from hypothesis import strategies as st

from fuzzyhomlie import FieldSpec, FuzzyFlag, HomLieAlgebra, Matrix, span

PRIMES = st.sampled_from([2, 3, 5])


def vectors(p, n):
    return st.tuples(*[st.integers(0, p - 1)] * n)


@st.composite
def subspaces(draw, p, n, max_gens=4):
    gens = draw(st.lists(vectors(p, n), max_size=max_gens))
    return span(FieldSpec(p), gens, n)


@st.composite
def matrices(draw, p, m, n):
    rows = draw(st.lists(vectors(p, n), min_size=m, max_size=m))
    return Matrix(FieldSpec(p), tuple(rows), n)


@st.composite
def skew_algebras(draw, p, n, zero_alpha=False):
    """Arbitrary alternating bracket and twist; not necessarily Hom-Lie."""
    brackets = {(i, j): draw(vectors(p, n)) for i in range(n) for j in range(i + 1, n)}
    alpha = None if zero_alpha else draw(st.lists(vectors(p, n), min_size=n, max_size=n))
    return HomLieAlgebra(FieldSpec(p), n, brackets, alpha)


LEVELS = [Fraction(k, 10) for k in range(11)] + [Fraction(k, 7) for k in range(1, 7)]


@st.composite
def flags(draw, p, n):
    """Nested spans of growing prefixes of random vectors, with random decreasing levels."""
    f = FieldSpec(p)
    gens = draw(st.lists(vectors(p, n), max_size=n + 1))
    chain = []
    for k in range(len(gens) + 1):
        S = span(f, gens[:k], n)
        if not chain or chain[-1] != S:
            chain.append(S)
    levels = sorted(draw(st.sets(st.sampled_from(LEVELS), min_size=len(chain) + 1,
                                 max_size=len(chain) + 1)), reverse=True)
    baseline = None if chain[-1].is_full else levels[len(chain)]
    return FuzzyFlag(f, n, tuple(zip(chain, levels)), baseline)
