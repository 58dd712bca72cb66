#!/usr/bin/env python3
"""
Тесты моделирования цикла коррекции ошибок
"""
from collections import Counter

import numpy as np
import pytest
from pydantic import ValidationError

from exceptions import UsageError
from models import ChannelKind, ChannelSpec, DecoderKind, ResidualClass, TrialReport
from simulation_service import SimulationService
from symplectic import SymplecticVector, alt_dual, alt_inner, sym_weight


def fixed(weight, seed=5):
    return ChannelSpec(kind=ChannelKind.FIXED_WEIGHT, weight=weight, seed=seed)


def assert_consistent(report: TrialReport):
    assert report.successes == report.exact_recoveries + report.degenerate_recoveries
    assert report.trials == report.successes + report.detected_failures + report.logical_errors


def test_sample_error_weights(five_qubit):
    service = SimulationService(five_qubit)
    assert service.local_size == 4
    assert service.sample_error(fixed(0), 0).is_zero()
    for index in range(20):
        assert sym_weight(service.sample_error(fixed(5), index)) == 5
        assert sym_weight(service.sample_error(fixed(2), index)) == 2
    with pytest.raises(UsageError):
        service.sample_error(fixed(6), 0)


def test_sample_error_is_deterministic(five_qubit):
    service = SimulationService(five_qubit)
    spec = fixed(2, seed=99)
    assert service.sample_error(spec, 7) == service.sample_error(spec, 7)
    samples = {service.sample_error(spec, i).to_string() for i in range(30)}
    assert len(samples) > 1


def test_weight_one_samples_are_uniform(five_qubit):
    service = SimulationService(five_qubit)
    spec = fixed(1, seed=2024)
    samples = 10_000
    counts = Counter(service.sample_error(spec, i).to_string() for i in range(samples))
    assert len(counts) == 15
    expected = samples / 15
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    # 14 degrees of freedom, 0.999 quantile is about 36.1
    assert chi2 < 36.1


def test_iid_channel(five_qubit):
    service = SimulationService(five_qubit)
    quiet = ChannelSpec(kind=ChannelKind.IID, rate=0.0, seed=1)
    loud = ChannelSpec(kind=ChannelKind.IID, rate=1.0, seed=1)
    assert service.sample_error(quiet, 3).is_zero()
    assert sym_weight(service.sample_error(loud, 3)) == 5
    report = service.run_trials(quiet, 25)
    assert report.exact_recoveries == 25


def test_channel_spec_validation():
    with pytest.raises(ValidationError):
        ChannelSpec(kind=ChannelKind.FIXED_WEIGHT)
    with pytest.raises(ValidationError):
        ChannelSpec(kind=ChannelKind.IID, rate=1.5)
    with pytest.raises(ValidationError):
        ChannelSpec(kind=ChannelKind.FIXED_WEIGHT, weight=1, seed=-1)
    assert "(convention)" in fixed(1).describe()


def test_measure(five_qubit):
    code = five_qubit
    service = SimulationService(code)
    assert not any(service.measure(SymplecticVector.zeros(2, 1, 5)))
    for g in code.generators:
        assert not any(service.measure(g))
    syndromes = set()
    for e in service.enumerate_errors(1):
        raw = service.measure(e)
        assert raw == tuple(int(alt_inner(g, e)) for g in code.generators)
        syndromes.add(raw)
    assert len(syndromes) == 15


def test_classify_residual(five_qubit):
    code = five_qubit
    service = SimulationService(code)
    error = next(service.enumerate_errors(1))
    assert service.classify_residual(None, error) == ResidualClass.FAILURE_DETECTED
    assert service.classify_residual(error, error) == ResidualClass.EXACT
    assert service.classify_residual(error + code.generators[0], error) == ResidualClass.DEGENERATE

    normalizer = alt_dual(code.generator_matrix, 2, 1, 5)
    logical = next(SymplecticVector.from_array(2, 1, 5, row) for row in normalizer
                   if not code.in_stabilizer(SymplecticVector.from_array(2, 1, 5, row)))
    assert service.classify_residual(error + logical, error) == ResidualClass.LOGICAL_ERROR

    other = list(service.enumerate_errors(1))[1]
    with pytest.raises(AssertionError):
        service.classify_residual(other, error)


def test_exhaustive_single_errors_on_five_qubit(five_qubit):
    report = SimulationService(five_qubit).run_exhaustive(1)
    assert (report.trials, report.successes) == (15, 15)
    assert report.logical_errors == 0 and report.detected_failures == 0
    assert_consistent(report)


def test_exhaustive_double_errors_fail_sometimes(five_qubit):
    report = SimulationService(five_qubit).run_exhaustive(2)
    assert report.trials == 10 * 9
    assert report.success_rate < 1.0
    assert_consistent(report)


@pytest.mark.parametrize("name,kind", [
    ("five_qubit_big_phi", DecoderKind.TABLE),
    ("five_qubit_cyclic", DecoderKind.BM),
    ("five_qubit_symplectic", DecoderKind.TABLE),
])
def test_guarantee_region_other_pathways(name, kind, request):
    code = request.getfixturevalue(name)
    report = SimulationService(code, kind).run_exhaustive(1)
    assert report.successes == report.trials == 15


def test_punctured_bch_trials(punctured_bch):
    service = SimulationService(punctured_bch, DecoderKind.BM)
    report = service.run_trials(fixed(1, seed=8), 60)
    assert report.successes == 60
    assert_consistent(report)


def test_run_trials_determinism(five_qubit):
    service = SimulationService(five_qubit)
    first = service.run_trials(fixed(2, seed=17), 200)
    second = service.run_trials(fixed(2, seed=17), 200)
    assert first.render() == second.render()
    assert first.trials == 200
    assert_consistent(first)
    assert "elapsed" not in first.render()
    assert "elapsed" in first.render(include_timing=True)


def test_zero_trials(five_qubit):
    service = SimulationService(five_qubit)
    report = service.run_trials(fixed(1), 0)
    assert report.trials == 0
    assert report.success_rate == 1.0
    assert "trials: 0" in report.render()
    with pytest.raises(UsageError):
        service.run_trials(fixed(1), -1)


def test_summary_line(five_qubit):
    report = SimulationService(five_qubit).run_exhaustive(1)
    line = report.summary_line()
    assert line.startswith("SUMMARY code=[[5,1,3]]_2 decoder=table trials=15 successes=15")
    assert line.endswith("rate=1.000000")


def test_decode_strings(five_qubit):
    service = SimulationService(five_qubit)
    transcripts = service.decode_strings(["00000|00000", "10000|00000"])
    assert transcripts[0].to_line().startswith("error=00000|00000 raw=0000")
    assert transcripts[1].estimate == "10000|00000"
    assert all(t.residual == ResidualClass.EXACT for t in transcripts)


def test_quartic_code_trials(quartic_code):
    service = SimulationService(quartic_code)
    assert service.local_size == 16
    report = service.run_trials(fixed(1, seed=3), 40)
    assert report.trials == 40
    assert_consistent(report)
    zero = service.run_exhaustive(0)
    assert zero.exact_recoveries == 1


def test_quartic_code_guarantee_region(quartic_code):
    # every error up to (d-1)/2 goes through the P_2m syndrome conversion and back
    radius = (quartic_code.d - 1) // 2
    assert radius >= 1
    report = SimulationService(quartic_code, DecoderKind.TABLE).run_exhaustive(radius)
    assert report.trials == 4 * 15
    assert report.successes == report.trials
    assert report.logical_errors == 0 and report.detected_failures == 0
    assert_consistent(report)


if __name__ == "__main__":
    pytest.main([__file__])
