#!/usr/bin/env python3
"""
Тесты преобразования синдромов и декодеров
"""
import itertools

import numpy as np
import pytest

from classical_codes import cyclic_from_roots, min_weight, weight_layer
from decoders import (
    BerlekampMasseyDecoder,
    CosetLeaderDecoder,
    DecodeResult,
    StabilizerDecoder,
    bm_decode,
    convert_syndrome,
    convert_syndrome_general,
    convert_syndrome_m1,
    coset_leader_decode,
    punctured_decode,
    symplectic_table_decode,
)
from exceptions import DimensionMismatchError, ResourceBoundError, UsageError
from models import DecodeStatus, DecoderKind
from simulation_service import SimulationService


def errors_up_to(code, weight):
    service = SimulationService(code)
    for w in range(weight + 1):
        yield from service.enumerate_errors(w)


def classical_errors(field, n, weight):
    """Every classical error of exactly the given Hamming weight"""
    return field.gf(weight_layer(n, weight, field.order))


def test_m1_conversion_matches_direct_syndrome(five_qubit):
    code = five_qubit
    H = code.classical_check_rows
    for e in errors_up_to(code, 2):
        syndrome = convert_syndrome_m1(code.raw_syndrome(e), code)
        assert np.array_equal(syndrome.classical, H @ code.to_classical(e))


def test_syndromes_are_linear(five_qubit, rng):
    code = five_qubit
    errors = list(errors_up_to(code, 2))
    for _ in range(50):
        e1, e2 = (errors[int(i)] for i in rng.integers(0, len(errors), size=2))
        total = code.raw_syndrome(e1 + e2)
        assert total == tuple((a + b) % 2 for a, b in zip(code.raw_syndrome(e1), code.raw_syndrome(e2)))


@pytest.mark.parametrize("name", ["five_qubit_big_phi", "quartic_code"])
def test_general_conversion_matches_direct_syndrome(name, request, rng):
    code = request.getfixturevalue(name)
    H = code.classical_check_rows
    for e in errors_up_to(code, 1):
        syndrome = convert_syndrome_general(code.raw_syndrome(e), code)
        assert np.array_equal(syndrome.classical, H @ code.to_classical(e))
    for _ in range(100):
        c = code.field.gf(rng.integers(0, code.field.order, size=code.n))
        e = code.from_classical(c)
        assert np.array_equal(convert_syndrome(code.raw_syndrome(e), code).classical, H @ c)


def test_conversion_errors(five_qubit, five_qubit_big_phi, five_qubit_symplectic):
    with pytest.raises(UsageError):
        convert_syndrome_m1((0, 0, 0, 0), five_qubit_big_phi)
    with pytest.raises(UsageError):
        convert_syndrome_general((0, 0, 0, 0), five_qubit)
    with pytest.raises(DimensionMismatchError):
        convert_syndrome_m1((0, 1), five_qubit)
    syndrome = convert_syndrome((1, 0, 1, 1), five_qubit_symplectic)
    assert syndrome.raw == (1, 0, 1, 1)
    assert syndrome.classical is None


def test_coset_leader_decoder_corrects_single_errors(five_qubit, gf4):
    H = five_qubit.classical_check_rows
    decoder = CosetLeaderDecoder(H)
    zero = decoder.decode(gf4.gf.Zeros(H.shape[0]))
    assert zero.ok and not np.any(zero.error_estimate)
    for e in classical_errors(gf4, 5, 1):
        result = decoder.decode(H @ e)
        assert result.status == DecodeStatus.UNIQUE
        assert np.array_equal(result.error_estimate, e)


def test_coset_leader_tie_break_is_lexicographic(gf4):
    H = gf4.gf([[1, 1, 0]])
    assert list(np.asarray(coset_leader_decode(H, [1]).error_estimate)) == [0, 1, 0]
    assert list(np.asarray(coset_leader_decode(H, [3]).error_estimate)) == [0, 3, 0]


def test_coset_leader_table_bound(five_qubit):
    with pytest.raises(ResourceBoundError):
        CosetLeaderDecoder(five_qubit.classical_check_rows, limit=3)


def test_bm_repetition_code_exhaustive(gf4):
    D = cyclic_from_roots(gf4, 5, [1, 2, 3, 4])
    assert D.designed_distance == 5
    H = D.base.parity_check
    decoder = BerlekampMasseyDecoder(D, H)
    for w in range(3):
        for e in classical_errors(gf4, 5, w):
            result = decoder.decode(H @ e)
            assert result.ok
            assert np.array_equal(result.error_estimate, e)


def test_bm_length_seven_exhaustive(gf4):
    D = cyclic_from_roots(gf4, 7, [1])
    assert D.zeros == (1, 2, 4)
    assert D.designed_distance == 3
    assert D.ext.order == 64
    H = D.base.parity_check
    for e in classical_errors(gf4, 7, 1):
        result = bm_decode(D, H @ e)
        assert np.array_equal(result.error_estimate, e)


@pytest.mark.parametrize("n,roots", [
    (3, [1, 2]), (3, [0, 1]), (3, [2, 0]),
    (5, [2]), (5, [1, 2]), (5, [4, 0]), (5, [0, 2]),
    (7, [1]), (7, [3]), (7, [0, 1]), (7, [0, 3]), (7, [1, 3]),
])
def test_bm_agrees_with_coset_table(gf4, n, roots):
    D = cyclic_from_roots(gf4, n, roots)
    delta = D.designed_distance
    assert delta >= 3
    assert delta <= min_weight(D.base)
    H = D.base.parity_check
    bm = BerlekampMasseyDecoder(D, H)
    table = CosetLeaderDecoder(H)
    for w in range((delta - 1) // 2 + 1):
        for e in classical_errors(gf4, n, w):
            syndrome = H @ e
            from_bm, from_table = bm.decode(syndrome), table.decode(syndrome)
            assert from_bm.ok and from_table.ok
            assert np.array_equal(from_bm.error_estimate, from_table.error_estimate)
            assert np.array_equal(from_bm.error_estimate, e)


def test_bm_with_erasures(gf4):
    D = cyclic_from_roots(gf4, 5, [1, 2, 3, 4])
    H = D.base.parity_check
    decoder = BerlekampMasseyDecoder(D, H)

    # one error plus two erasures: 2 * 1 + 2 < 5
    e = gf4.gf([1, 2, 0, 3, 0])
    result = decoder.decode(H @ e, erasures=(1, 3))
    assert np.array_equal(result.error_estimate, e)

    # an erased position may also be correct
    e = gf4.gf([0, 0, 2, 0, 0])
    result = decoder.decode(H @ e, erasures=(0, 2))
    assert np.array_equal(result.error_estimate, e)

    # four erasures, no errors
    for values in itertools.product(range(4), repeat=2):
        e = gf4.gf([values[0], 0, values[1], 1, 0])
        result = decoder.decode(H @ e, erasures=(0, 1, 2, 3))
        assert np.array_equal(result.error_estimate, e)

    assert decoder.decode(H @ e, erasures=range(5)).status == DecodeStatus.FAILURE_DETECTED


def test_bm_random_errors_on_bch15(gf4, rng):
    D = cyclic_from_roots(gf4, 15, [1, 2, 3, 4])
    H = D.base.parity_check
    decoder = BerlekampMasseyDecoder(D, H)
    for _ in range(200):
        w = int(rng.integers(0, 3))
        e = gf4.gf.Zeros(15)
        positions = rng.choice(15, size=w, replace=False)
        e[positions] = gf4.gf(rng.integers(1, 4, size=w))
        result = decoder.decode(H @ e)
        assert result.ok
        assert np.array_equal(result.error_estimate, e)


def test_bm_beyond_radius_never_lies(gf4, rng):
    D = cyclic_from_roots(gf4, 15, [1, 2, 3, 4])
    H = D.base.parity_check
    decoder = BerlekampMasseyDecoder(D, H)
    for _ in range(200):
        e = gf4.gf.Zeros(15)
        positions = rng.choice(15, size=3, replace=False)
        e[positions] = gf4.gf(rng.integers(1, 4, size=3))
        syndrome = H @ e
        result = decoder.decode(syndrome)
        if result.ok:
            assert np.array_equal(H @ result.error_estimate, syndrome)
            assert np.count_nonzero(result.error_estimate) <= 2


def test_punctured_decode_matches_child_table(punctured_bch, gf4):
    code = punctured_bch
    expansion = code.expansion
    parent = BerlekampMasseyDecoder(code.cyclic, expansion.parent_rows)
    table = CosetLeaderDecoder(expansion.child_rows)
    for e in classical_errors(gf4, 14, 1):
        syndrome = expansion.child_rows @ e
        result = punctured_decode(expansion, syndrome, parent)
        assert result.ok
        assert np.array_equal(result.error_estimate, e)
        assert np.array_equal(table.decode(syndrome).error_estimate, e)


def test_symplectic_table_decoder(five_qubit_symplectic):
    code = five_qubit_symplectic
    zero = symplectic_table_decode(code, (0, 0, 0, 0))
    assert zero.ok and zero.symplectic.is_zero()
    for e in errors_up_to(code, 1):
        result = symplectic_table_decode(code, code.raw_syndrome(e))
        assert result.symplectic == e


@pytest.mark.parametrize("name,kind", [
    ("five_qubit", DecoderKind.TABLE),
    ("five_qubit_big_phi", DecoderKind.TABLE),
    ("five_qubit_cyclic", DecoderKind.TABLE),
    ("five_qubit_cyclic", DecoderKind.BM),
    ("five_qubit_symplectic", DecoderKind.TABLE),
    ("punctured_bch", DecoderKind.BM),
])
def test_pipeline_corrects_single_errors(name, kind, request):
    code = request.getfixturevalue(name)
    decoder = StabilizerDecoder(code, kind)
    for e in errors_up_to(code, 1):
        syndrome, result = decoder.decode(code.raw_syndrome(e))
        assert syndrome.raw == code.raw_syndrome(e)
        assert result.ok
        assert result.symplectic == e


def test_pipeline_rejects_unsupported_decoders(five_qubit, five_qubit_symplectic):
    with pytest.raises(UsageError):
        StabilizerDecoder(five_qubit, DecoderKind.BM)
    with pytest.raises(UsageError):
        StabilizerDecoder(five_qubit_symplectic, DecoderKind.BM)


def test_failure_result():
    result = DecodeResult.failure()
    assert not result.ok
    assert result.error_estimate is None


if __name__ == "__main__":
    pytest.main([__file__])
