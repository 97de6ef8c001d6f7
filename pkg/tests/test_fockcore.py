import math

import numpy as np
import pytest

from qzzb.fockcore import (
    DomainError,
    EnergySpectrum,
    FockState,
    GeneratorStats,
    SpeedLimitConstants,
    fidelity_from_spectrum,
    generator_stats_from_spectrum,
    ml_fidelity_surrogate,
    mode_number_spectrum,
    mt_fidelity_surrogate,
    optimal_lambda,
    spectrum_from_pairs,
)
from qzzb.probes import noon_state, optimal_probe

LAM = 0.7246


def test_constants():
    k = SpeedLimitConstants()
    assert k.c_ml == pytest.approx(0.0238075, abs=5e-8)
    assert k.c_mt == pytest.approx(0.1168502, abs=1e-7)
    assert SpeedLimitConstants(0.9).c_ml == pytest.approx(1 / (80 * 0.81), rel=1e-15)


def test_optimal_lambda_is_sharp_constant():
    lam = optimal_lambda()
    assert lam == pytest.approx(0.7246113537767085, abs=1e-13)
    u = np.linspace(1e-6, 10, 200_001)
    assert np.max((1 - np.cos(u)) / u) <= lam + 1e-12


def test_bad_lambda():
    with pytest.raises(DomainError):
        SpeedLimitConstants(0.0)


def test_fock_state_validates_norm():
    with pytest.raises(DomainError):
        FockState(1, {(0,): 0.5})
    with pytest.raises(DomainError):
        FockState(2, {(1,): 1.0})
    s = FockState.from_terms(2, [((1, 0), 3.0), ((0, 1), 4.0)])
    assert s.norm_squared() == pytest.approx(1.0, abs=1e-15)


def test_vacuum_spectrum():
    spec = mode_number_spectrum(FockState(1, {(0,): 1.0}), 0)
    assert spec.as_dict() == {0.0: 1.0}


def test_noon_spectrum():
    spec = mode_number_spectrum(noon_state(2), 0)
    assert spec.as_dict() == pytest.approx({0.0: 0.5, 2.0: 0.5})


def test_optimal_probe_spectrum():
    a2 = 1 / (2 + math.sqrt(2))
    spec = mode_number_spectrum(optimal_probe(2, 3), 1).as_dict()
    assert spec[3.0] == pytest.approx(a2, abs=1e-15)
    assert spec[0.0] == pytest.approx(1 - a2, abs=1e-15)


def test_mode_out_of_range():
    with pytest.raises(IndexError):
        mode_number_spectrum(noon_state(1), 2)


def test_spectrum_merges_and_validates():
    spec = EnergySpectrum(((0.25, 1.0), (0.25, 1.0 + 1e-14), (0.5, 0.0)))
    assert len(spec.entries) == 2
    with pytest.raises(DomainError):
        EnergySpectrum(())
    with pytest.raises(DomainError):
        spectrum_from_pairs([(0.5, 0.0)])


def test_fidelity_examples():
    assert fidelity_from_spectrum(spectrum_from_pairs([(1, 0)]), 3.7) == 1.0
    two = spectrum_from_pairs([(0.5, 0), (0.5, 2)])
    assert fidelity_from_spectrum(two, math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert fidelity_from_spectrum(two, math.pi / 4) == pytest.approx(math.cos(math.pi / 4), abs=1e-15)
    assert fidelity_from_spectrum(two, 0.0) == 1.0
    with pytest.raises(DomainError):
        fidelity_from_spectrum(two, -1.0)


def test_generator_stats_examples():
    s = generator_stats_from_spectrum(spectrum_from_pairs([(1, 5)]))
    assert (s.mean, s.variance, s.effective_mean) == (5.0, 0.0, 0.0)
    for n in (1, 2, 7):
        s = generator_stats_from_spectrum(mode_number_spectrum(noon_state(n), 0))
        assert s.effective_mean == pytest.approx(n / 2, rel=1e-15)
        assert s.variance == pytest.approx(n * n / 4, rel=1e-14)
    a2 = 1 / (3 + math.sqrt(3))
    s = generator_stats_from_spectrum(mode_number_spectrum(optimal_probe(3, 11), 2))
    assert s.effective_mean == pytest.approx(a2 * 11, rel=1e-14)
    assert s.variance == pytest.approx(a2 * (1 - a2) * 121, rel=1e-13)


def test_negative_energy_ground_shift():
    s = generator_stats_from_spectrum(spectrum_from_pairs([(0.5, -3), (0.5, 1)]))
    assert s.e_min == -3
    assert s.effective_mean == pytest.approx(2.0)
    assert s.variance == pytest.approx(4.0)


def test_ml_surrogate_examples():
    one = GeneratorStats.from_moments(1.0, 1.0)
    assert ml_fidelity_surrogate(one, LAM, 0.0) == 1.0
    assert ml_fidelity_surrogate(GeneratorStats.from_moments(0.0, 0.0), LAM, 12.0) == 1.0
    assert ml_fidelity_surrogate(one, LAM, 1 / (2 * LAM)) == pytest.approx(0.0, abs=1e-7)
    assert ml_fidelity_surrogate(one, LAM, 5.0) == 0.0


def test_mt_surrogate_examples():
    assert mt_fidelity_surrogate(GeneratorStats.from_moments(1, 1), 0.0) == 1.0
    assert mt_fidelity_surrogate(GeneratorStats.from_moments(1, 1), math.pi / 2) == pytest.approx(0, abs=1e-15)
    assert mt_fidelity_surrogate(GeneratorStats.from_moments(1, 4), math.pi / 8) == pytest.approx(0.70710678, abs=1e-8)
    assert mt_fidelity_surrogate(GeneratorStats.from_moments(1, 1), 2.5) == 0.0
