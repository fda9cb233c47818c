import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzyhomlie import (
    FieldSpec,
    HomLieAlgebra,
    Matrix,
    Morphism,
    Subspace,
    bracket,
    check_axioms,
    closure,
    direct_sum_algebras,
    enumerate_morphisms,
    is_ideal,
    is_morphism,
    is_subalgebra,
    standard_example,
    span,
)
from fuzzyhomlie.errors import (
    CapExceeded,
    DimensionMismatch,
    EmptyList,
    FieldMismatch,
    InvariantViolation,
    NotCertified,
    UnsupportedField,
)
from fuzzyhomlie.exact import all_vectors, enumerate_vectors
from fuzzyhomlie.homlie import FailureKind, Mode, inclusion_matrix, jacobi_defect, projection_matrix

from strategies import PRIMES, skew_algebras, subspaces, vectors

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def naive_bracket(table, p, x, y):
    """Bilinear expansion over all ordered basis pairs of a full table."""
    n = len(x)
    out = [0] * n
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[k] += x[i] * y[j] * table[i][j][k]
    return tuple(c % p for c in out)


def full_table(A):
    p, n = A.field.p, A.dim
    t = [[(0,) * n for _ in range(n)] for _ in range(n)]
    for (i, j), v in A.structure.items():
        t[i][j] = v
        t[j][i] = tuple(-c % p for c in v)
    return t


def brute_force_hom_lie(A):
    """Hom-Jacobi over every triple of vectors, independent of check_axioms."""
    p = A.field.p
    t = full_table(A)
    alpha = A.alpha
    vs = list(all_vectors(A.field, A.dim))
    for x, y, z in itertools.product(vs, repeat=3):
        acc = [0] * A.dim
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            term = naive_bracket(t, p, alpha.apply(a), naive_bracket(t, p, b, c))
            acc = [u + v for u, v in zip(acc, term)]
        if any(c % p for c in acc):
            return False
    return True


def test_bracket_examples(example):
    assert bracket(example, E1, E3) == E1
    assert bracket(example, (2, 1, 0), E3) == (2, 0, 0)
    assert bracket(example, (1, 2, 3), (1, 2, 3)) == (0, 0, 0)
    with pytest.raises(DimensionMismatch):
        bracket(example, (1, 0), E3)


def test_storage_invariants(Q):
    with pytest.raises(InvariantViolation):
        HomLieAlgebra(Q, 2, {(0, 0): (1, 0)})
    with pytest.raises(InvariantViolation):
        HomLieAlgebra(Q, 2, {(0, 1): (1, 0), (1, 0): (1, 0)})
    A = HomLieAlgebra(Q, 2, {(1, 0): (1, 0)})
    assert A.structure == {(0, 1): (-1, 0)}
    with pytest.raises(DimensionMismatch):
        HomLieAlgebra(Q, 2, {}, ((1, 0),))
    with pytest.raises(FieldMismatch):
        HomLieAlgebra(Q, 1, {}, Matrix(FieldSpec(3), ((1,),)))


def test_check_axioms_examples(Q, example):
    assert check_axioms(example).valid
    arbitrary = HomLieAlgebra(Q, 3, {(0, 1): (1, 2, 3), (0, 2): (4, 5, 6), (1, 2): (7, 8, 9)})
    assert check_axioms(arbitrary).valid  # zero twist map
    lie_like = HomLieAlgebra(Q, 3, {(0, 1): E3, (1, 2): E1, (0, 2): E1}, Matrix.identity(Q, 3))
    rep = check_axioms(lie_like)
    assert not rep.valid
    (failure,) = rep.failures
    assert failure.kind is FailureKind.HOM_JACOBI
    assert failure.witness == (0, 1, 2)
    assert failure.defect == E3


def test_jacobi_defect_by_hand(Q):
    # [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]] = [e1,e1] + [e2,-e1] + [e3,e3] = [e1,e2] = e3
    A = HomLieAlgebra(Q, 3, {(0, 1): E3, (1, 2): E1, (0, 2): E1}, Matrix.identity(Q, 3))
    assert jacobi_defect(A, E1, E2, E3) == E3


@given(st.sampled_from([2, 3]), st.integers(1, 3), st.data())
def test_check_axioms_matches_brute_force(p, n, data):
    A = data.draw(skew_algebras(p, n, zero_alpha=data.draw(st.booleans())))
    if p == 3 and n == 3:
        n = 2
        A = data.draw(skew_algebras(p, n))
    assert check_axioms(A).valid == brute_force_hom_lie(A)


@given(PRIMES, st.integers(1, 4), st.data())
def test_bracket_matches_naive_expansion(p, n, data):
    A = data.draw(skew_algebras(p, n))
    x, y = data.draw(vectors(p, n)), data.draw(vectors(p, n))
    assert bracket(A, x, y) == naive_bracket(full_table(A), p, x, y)


@given(PRIMES, st.integers(1, 4), st.data())
def test_antisymmetry_and_bilinearity(p, n, data):
    A = data.draw(skew_algebras(p, n))
    f = A.field
    x, y, z = (data.draw(vectors(p, n)) for _ in range(3))
    a = data.draw(st.integers(0, p - 1))
    assert all((u + v) % p == 0 for u, v in zip(bracket(A, x, y), bracket(A, y, x)))
    ax_y = tuple((a * u + v) % p for u, v in zip(x, y))
    lhs = bracket(A, ax_y, z)
    rhs = tuple(f.add(f.mul(a, u), v) for u, v in zip(bracket(A, x, z), bracket(A, y, z)))
    assert lhs == rhs


@given(PRIMES, st.data())
def test_jacobi_defect_alternates_under_permutation(p, data):
    A = data.draw(skew_algebras(p, 3))
    e = A.basis()
    d = jacobi_defect(A, *e)
    for perm in itertools.permutations(range(3)):
        sign = 1 if perm in {(0, 1, 2), (1, 2, 0), (2, 0, 1)} else -1
        got = jacobi_defect(A, *(e[i] for i in perm))
        assert got == tuple(sign * c % p for c in d)


def test_subalgebra_and_ideal_examples(Q, example):
    assert is_subalgebra(example, Subspace.zero(Q, 3))
    assert is_subalgebra(example, Subspace.full(Q, 3))
    assert is_subalgebra(example, span(Q, [E1, E2], 3))
    assert is_subalgebra(example, span(Q, [E3], 3))
    assert is_ideal(example, Subspace.full(Q, 3))
    assert is_ideal(example, span(Q, [E1, E2], 3))
    assert not is_ideal(example, span(Q, [E3], 3))
    assert not is_subalgebra(example, span(Q, [E1], 3))  # alpha(e1) = e2 escapes
    with pytest.raises(DimensionMismatch):
        is_ideal(example, Subspace.full(Q, 2))


def _brute_closed(A, H, mode):
    members = set(enumerate_vectors(H))
    others = members if mode is Mode.SUBALGEBRA else set(all_vectors(A.field, A.dim))
    return all(A.twist(x) in members for x in members) and all(
        bracket(A, x, y) in members for x in members for y in others)


@given(st.sampled_from([2, 3]), st.integers(1, 3), st.data())
def test_subalgebra_ideal_match_brute_force(p, n, data):
    A = data.draw(skew_algebras(p, n))
    H = data.draw(subspaces(p, n))
    assert is_subalgebra(A, H) == _brute_closed(A, H, Mode.SUBALGEBRA)
    assert is_ideal(A, H) == _brute_closed(A, H, Mode.IDEAL)
    if is_ideal(A, H):
        assert is_subalgebra(A, H)


def test_closure_examples(Q, example):
    assert closure(example, [], Mode.SUBALGEBRA) == Subspace.zero(Q, 3)
    assert closure(example, [], Mode.IDEAL) == Subspace.zero(Q, 3)
    assert closure(example, [E1], Mode.SUBALGEBRA) == span(Q, [E1, E2], 3)
    assert closure(example, [E3], Mode.IDEAL) == Subspace.full(Q, 3)


@given(st.sampled_from([2, 3]), st.integers(1, 3), st.data())
def test_closure_is_smallest(p, n, data):
    A = data.draw(skew_algebras(p, n))
    seeds = data.draw(st.lists(vectors(p, n), max_size=2))
    for mode in Mode:
        H = closure(A, seeds, mode)
        assert _brute_closed(A, H, mode)
        assert all(v in H for v in seeds)
        # minimality: every closed subspace containing the seeds contains H
        for G in _all_subspaces(A.field, n):
            if all(v in G for v in seeds) and _brute_closed(A, G, mode):
                assert all(b in G for b in H.basis)


def _all_subspaces(f, n):
    vs = list(all_vectors(f, n))
    seen = set()
    for k in range(n + 1):
        for gens in itertools.combinations(vs, k):
            S = span(f, gens, n)
            if S not in seen:
                seen.add(S)
                yield S


def test_direct_sum_examples(Q, example):
    single = direct_sum_algebras([example])
    assert single.structure == example.structure and single.alpha == example.alpha
    S = direct_sum_algebras([example, example])
    assert S.dim == 6
    assert bracket(S, (1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1)) == (0,) * 6
    assert bracket(S, (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 0, 1)) == (0, 0, 0, 1, 0, 0)
    assert S.twist((1, 0, 0, 0, 0, 0)) == (0, 1, 0, 0, 0, 0)
    assert check_axioms(S).valid
    with pytest.raises(EmptyList):
        direct_sum_algebras([])
    with pytest.raises(FieldMismatch):
        direct_sum_algebras([example, standard_example(FieldSpec(3))])


@given(st.sampled_from([2, 3]), st.data())
def test_direct_sum_of_valid_algebras_is_valid(p, data):
    parts = []
    for _ in range(data.draw(st.integers(1, 3))):
        parts.append(data.draw(skew_algebras(p, data.draw(st.integers(1, 3)), zero_alpha=True)))
    parts.append(standard_example(FieldSpec(p)))
    assert check_axioms(direct_sum_algebras(parts)).valid


def test_morphism_examples(Q, example):
    other = HomLieAlgebra(Q, 2, {(0, 1): (1, 1)}, ((0, 1), (0, 0)))
    assert is_morphism(Matrix.identity(Q, 3), example, example)
    assert is_morphism(Matrix.zeros(Q, 2, 3), example, other)
    S = direct_sum_algebras([example, other])
    assert is_morphism(inclusion_matrix([example, other], 0), example, S)
    assert is_morphism(inclusion_matrix([example, other], 1), other, S)
    assert is_morphism(projection_matrix([example, other], 0), S, example)
    assert not is_morphism(Matrix(Q, ((0, 1, 0), (1, 0, 0), (0, 0, 1))), example, example)
    with pytest.raises(DimensionMismatch):
        is_morphism(Matrix.identity(Q, 2), example, example)
    with pytest.raises(NotCertified):
        Morphism.certify(Matrix(Q, ((0, 1, 0), (1, 0, 0), (0, 0, 1))), example, example)
    with pytest.raises(NotCertified):
        Morphism(example, example, Matrix.identity(Q, 3)).require_certified()


def test_enumerate_morphisms():
    f = FieldSpec(2)
    line = HomLieAlgebra(f, 1, {}, ((1,),))
    found = list(enumerate_morphisms(line, line))
    assert [m.map.rows for m in found] == [((0,),), ((1,),)]
    assert all(m.certified for m in found)
    example = standard_example(f)
    maps = [m.map for m in enumerate_morphisms(example, example)]
    assert Matrix.zeros(f, 3, 3) in maps and Matrix.identity(f, 3) in maps
    with pytest.raises(CapExceeded):
        list(enumerate_morphisms(example, example, cap=100))
    with pytest.raises(UnsupportedField):
        list(enumerate_morphisms(standard_example(FieldSpec()), standard_example(FieldSpec())))


@given(st.sampled_from([2, 3]), st.data())
def test_enumerated_morphisms_recheck_pointwise(p, data):
    A = data.draw(skew_algebras(p, data.draw(st.integers(1, 2))))
    B = data.draw(skew_algebras(p, data.draw(st.integers(1, 2))))
    xs = list(all_vectors(A.field, A.dim))
    count = 0
    for flat in itertools.product(range(p), repeat=A.dim * B.dim):
        rows = tuple(flat[r * A.dim:(r + 1) * A.dim] for r in range(B.dim))
        M = Matrix(A.field, rows, A.dim)
        ok = all(M.apply(A.twist(x)) == B.twist(M.apply(x)) for x in xs) and all(
            M.apply(bracket(A, x, y)) == bracket(B, M.apply(x), M.apply(y)) for x in xs for y in xs)
        count += ok
    assert len(list(enumerate_morphisms(A, B))) == count
