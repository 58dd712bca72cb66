#!/usr/bin/env python3
"""
Тесты классических кодов: двойственность, эрмитова ортогональность, циклические коды, выкалывание
"""
import itertools

import galois
import numpy as np
import pytest

from classical_codes import (
    LinearCode,
    bch_run,
    conjugate,
    cyclic_from_roots,
    cyclotomic_closure,
    cyclotomic_cosets,
    dual,
    hamming_weights,
    hermitian_dual,
    hermitian_inner,
    hermitian_violation,
    is_hermitian_self_orthogonal,
    min_weight,
    min_weight_diff,
    multiplicative_order,
    puncture,
    puncture_expansion,
    trace_orthogonal_basis,
    weight_distribution,
    weight_layer,
)
from exceptions import (
    DependentGeneratorsError,
    DimensionMismatchError,
    FieldParameterError,
    MathPreconditionError,
    ResourceBoundError,
)
from finite_field import field_create

FIVE_QUBIT_ROWS = [[2, 3, 3, 2, 0], [0, 2, 3, 3, 2]]


@pytest.fixture
def hexacode_like(gf4):
    return LinearCode.from_rows(gf4, FIVE_QUBIT_ROWS, 5)


def test_linear_code_basics(gf4, hexacode_like):
    C = hexacode_like
    assert C.dimension == 2
    assert C.q == 4
    assert C.rows_as_strings() == ["10112", "01221"]
    assert np.all(C.contains(gf4.gf(FIVE_QUBIT_ROWS)))
    assert C.contains(gf4.gf([1, 0, 1, 1, 2])) is True
    assert C.contains(gf4.gf([1, 0, 0, 0, 0])) is False
    assert repr(C) == "LinearCode([5,2]_4)"


def test_from_rows_errors(gf4):
    with pytest.raises(DependentGeneratorsError):
        LinearCode.from_rows(gf4, [[1, 2, 3], [2, 3, 1]], 3, strict=True)
    assert LinearCode.from_rows(gf4, [[1, 2, 3], [2, 3, 1]], 3).dimension == 1
    with pytest.raises(DimensionMismatchError):
        LinearCode.from_rows(gf4, [[1, 2, 3]], 4)
    assert LinearCode.from_rows(gf4, [], 3) == LinearCode.zero(gf4, 3)


def test_dual_and_conjugate(gf4, gf16, rng):
    for field in (gf4, gf16):
        for _ in range(20):
            n = int(rng.integers(2, 7))
            r = int(rng.integers(0, n + 1))
            C = LinearCode.from_rows(field, rng.integers(0, field.order, size=(r, n)), n)
            assert dual(C).dimension == n - C.dimension
            assert dual(dual(C)) == C
            power = field.conjugation_power
            assert conjugate(conjugate(C, power), power) == C
            assert conjugate(C, power).dimension == C.dimension
            assert dual(conjugate(C, power)) == conjugate(dual(C), power)
            assert hermitian_dual(C).dimension == n - C.dimension


def test_hermitian_self_orthogonality(gf4, hexacode_like):
    C = hexacode_like
    assert is_hermitian_self_orthogonal(C)
    assert C.is_subcode_of(hermitian_dual(C))
    assert hermitian_inner(C.gen[0], C.gen[1], gf4) == 0
    assert is_hermitian_self_orthogonal(LinearCode.zero(gf4, 4))

    bad = LinearCode.from_rows(gf4, [[1, 0, 0], [0, 1, 0]], 3)
    assert hermitian_violation(bad) == (0, 0)
    assert not is_hermitian_self_orthogonal(bad)


def test_trace_dual_equals_hermitian_dual(gf4, hexacode_like, rng):
    C = hexacode_like
    basis = trace_orthogonal_basis(C)
    assert LinearCode.from_rows(gf4, np.asarray(basis), 5) == hermitian_dual(C)

    gf25 = field_create(5, 2)
    for _ in range(10):
        C = LinearCode.from_rows(gf25, rng.integers(0, 25, size=(2, 4)), 4)
        basis = trace_orthogonal_basis(C)
        assert LinearCode.from_rows(gf25, np.asarray(basis), 4) == hermitian_dual(C)

    with pytest.raises(FieldParameterError):
        trace_orthogonal_basis(LinearCode.zero(field_create(2, 4), 3))


def test_min_weight(gf4, hexacode_like):
    C = hexacode_like
    assert min_weight(C) == 4
    assert min_weight(hermitian_dual(C)) == 3
    assert min_weight_diff(hermitian_dual(C), C) == 3
    assert min_weight(LinearCode.full(gf4, 3)) == 1


def test_min_weight_errors(gf4, hexacode_like):
    with pytest.raises(MathPreconditionError):
        min_weight(LinearCode.zero(gf4, 5))
    with pytest.raises(MathPreconditionError):
        min_weight_diff(hexacode_like, hexacode_like)
    with pytest.raises(ResourceBoundError):
        min_weight(LinearCode.from_rows(gf4, np.eye(5, 10, dtype=np.int64), 10), max_enum=100)
    # the dual of the full code has one word
    assert min_weight(LinearCode.full(gf4, 10), max_enum=100) == 1


def all_codewords(code: LinearCode):
    messages = code.field.gf(np.array(list(itertools.product(range(code.q), repeat=code.dimension)), dtype=np.int64))
    return messages @ code.gen


@pytest.mark.parametrize("p", [2, 3])
def test_weight_distribution_from_either_side(p, rng):
    field = field_create(p, 2)
    for _ in range(15):
        n = int(rng.integers(2, 6))
        r = int(rng.integers(1, n + 1))
        C = LinearCode.from_rows(field, rng.integers(0, field.order, size=(r, n)), n)
        if C.dimension == 0:
            continue
        words = all_codewords(C)
        expected = np.bincount(hamming_weights(words), minlength=n + 1)
        assert weight_distribution(C) == [int(a) for a in expected]
        assert sum(weight_distribution(C)) == field.order ** C.dimension

        nonzero = hamming_weights(words)[np.any(np.asarray(words) != 0, axis=1)]
        if nonzero.size:
            assert min_weight(C) == int(nonzero.min())


def test_weight_distribution_of_trivial_codes(gf4):
    assert weight_distribution(LinearCode.zero(gf4, 3)) == [1, 0, 0, 0]
    assert weight_distribution(LinearCode.full(gf4, 3)) == [1, 9, 27, 27]


def test_min_weight_diff_matches_direct_enumeration(gf4, hexacode_like):
    outer, inner = hermitian_dual(hexacode_like), hexacode_like
    words = all_codewords(outer)
    outside = words[~inner.contains(words)]
    assert min_weight_diff(outer, inner) == int(hamming_weights(outside).min())
    # a custom weight takes the enumeration path
    assert min_weight_diff(outer, inner, weight=lambda w: hamming_weights(w)) == 3


def test_hamming_weights(gf4):
    words = gf4.gf([[0, 0, 0], [1, 0, 3], [2, 2, 2]])
    assert list(hamming_weights(words)) == [0, 2, 3]


def test_cyclotomic_helpers():
    assert multiplicative_order(4, 5) == 2
    assert multiplicative_order(2, 15) == 4
    assert multiplicative_order(4, 15) == 2
    assert multiplicative_order(3, 1) == 1
    assert cyclotomic_closure([1], 4, 5) == (1, 4)
    assert cyclotomic_closure([1, 2, 3, 4], 4, 15) == (1, 2, 3, 4, 8, 12)
    assert cyclotomic_cosets(4, 5) == [(0,), (1, 4), (2, 3)]
    assert cyclotomic_cosets(2, 15) == [(0,), (1, 2, 4, 8), (3, 6, 9, 12), (5, 10), (7, 11, 13, 14)]


def test_bch_run():
    assert bch_run([2, 3], 5) == (3, 2)
    assert bch_run([4, 0], 5) == (3, 4)
    assert bch_run([1, 2, 3, 4, 8, 12], 15) == (5, 1)
    assert bch_run([], 5) == (1, 0)
    assert bch_run(range(5), 5) == (6, 0)


def test_cyclic_code_from_roots(gf4):
    D = cyclic_from_roots(gf4, 5, [2, 3])
    assert D.zeros == (2, 3)
    assert D.base.dimension == 3
    assert (D.designed_distance, D.bch_start) == (3, 2)
    assert D.ext.order == 16
    assert D.gamma ** 5 == 1 and D.gamma != 1

    x_n_minus_1 = galois.Poly.Degrees([5, 0], [1, 1], field=gf4.gf)
    assert x_n_minus_1 % D.gpoly == galois.Poly.Zero(field=gf4.gf)
    assert D.gpoly.degree == 2

    # every codeword vanishes at γ^j for the zeros j
    values = D.embed(D.base.gen) @ D.power_sum_rows(D.zeros).T
    assert not np.any(values)
    assert np.array_equal(D.restrict(D.embed(gf4.elements)), gf4.elements)
    assert D.restrict(D.ext.primitive.reshape(1)) is None


def test_cyclic_closure_and_prime_base():
    gf4 = field_create(2, 2)
    D = cyclic_from_roots(gf4, 5, [1])
    assert D.roots == (1,)
    assert D.zeros == (1, 4)

    gf3 = field_create(3, 1)
    D = cyclic_from_roots(gf3, 4, [1])
    assert D.zeros == (1, 3)
    assert D.base.dimension == 2
    assert D.designed_distance == 2


def test_cyclic_rejects_non_coprime_length(gf4):
    with pytest.raises(FieldParameterError):
        cyclic_from_roots(gf4, 6, [1])
    with pytest.raises(DimensionMismatchError):
        cyclic_from_roots(gf4, 0, [])


def test_bch15_code(gf4):
    D = cyclic_from_roots(gf4, 15, [1, 2, 3, 4])
    assert D.zeros == (1, 2, 3, 4, 8, 12)
    assert D.base.dimension == 9
    assert D.designed_distance == 5


def test_puncture(gf4):
    D = cyclic_from_roots(gf4, 15, [1, 2, 3, 4])
    child, expansion = puncture(D.base, 1)
    assert child.n == 14
    assert child.dimension == 9
    assert expansion.verify()
    assert expansion.a.shape == (5, 6)
    padded = expansion.padded_child_rows()
    assert not np.any(padded[:, 0])

    with pytest.raises(DimensionMismatchError):
        puncture(D.base, 0)
    with pytest.raises(DimensionMismatchError):
        puncture(D.base, 16)


def test_puncture_expansion_rejects_foreign_rows(gf4):
    parent = gf4.gf([[1, 0, 0]])
    child = gf4.gf([[1, 1]])
    with pytest.raises(MathPreconditionError):
        puncture_expansion(parent, child, 1)


def test_weight_layer():
    layer = weight_layer(3, 1, 3)
    assert layer.tolist() == [[0, 0, 1], [0, 0, 2], [0, 1, 0], [0, 2, 0], [1, 0, 0], [2, 0, 0]]
    assert weight_layer(4, 0, 5).tolist() == [[0, 0, 0, 0]]
    assert weight_layer(4, 2, 3).shape == (24, 4)


if __name__ == "__main__":
    pytest.main([__file__])
