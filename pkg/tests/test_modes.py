import math

import pytest
from hypothesis import given, strategies as st

from dkp_s3.errors import DegenerateEnergyError, DomainError
from dkp_s3.modes import (Branch, HelicityClass, ModeSpec, energy_nonzero_sigma, energy_zero_sigma,
                          enumerate_modes, lambda_of, mode_triples, sigma_of, spectral_point)

quantum = st.integers(min_value=0, max_value=6)
azimuthal = st.integers(min_value=-6, max_value=6)
mass = st.floats(min_value=0, max_value=20)


@pytest.mark.parametrize("m, n_r, want", [(0, 0, 0.0), (1, 2, 12.0), (-2, 1, 12.0)])
def test_lambda_examples(m, n_r, want):
    assert lambda_of(m, n_r) == want


@pytest.mark.parametrize("args, want", [((0, 0, 0, 0), 1.0), ((3, 1, 1, 1), 5.0), ((0, 2, 0, 0), 3.0)])
def test_nonzero_sigma_energies(args, want):
    assert energy_nonzero_sigma(*args) == want


def test_zero_sigma_energies():
    assert energy_zero_sigma(1, 0, 0, 0) == 1.0
    assert energy_zero_sigma(2, 1, 0, 1) == pytest.approx(math.sqrt(12), abs=1e-15)
    with pytest.raises(DegenerateEnergyError):
        energy_zero_sigma(0, 0, 0, 0)


def test_sigma_examples():
    assert sigma_of(3.0, 3.0, Branch.PLUS) == 0
    assert sigma_of(3.0, 3.0, Branch.MINUS) == 0
    assert sigma_of(5.0, 3.0, Branch.PLUS) == 4j
    assert sigma_of(2.0, 0.0, Branch.MINUS) == -2j
    with pytest.raises(DomainError):
        sigma_of(1.0, 2.0)


def test_invalid_mode_numbers():
    with pytest.raises(ValueError):
        ModeSpec(0, -1, 0)
    with pytest.raises(ValueError):
        ModeSpec(0, 0, 0, M=-1.0)


def test_enumeration_ground_state():
    modes = enumerate_modes(0, 0.0, {HelicityClass.NONZERO_PLUS})
    assert len(modes) == 1
    mode, point = modes[0]
    assert (mode.m, mode.n_r, mode.n_z) == (0, 0, 0)
    assert point.epsilon == 1.0


def test_enumeration_first_level():
    modes = enumerate_modes(1, 0.0, {HelicityClass.NONZERO_PLUS})
    excited = sorted((m.m, m.n_r, m.n_z) for m, p in modes if p.epsilon == 2.0)
    assert excited == [(-1, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert len(modes) == 5


def test_enumeration_is_sorted_and_skips_degenerate():
    modes = enumerate_modes(3, 0.0, (HelicityClass.ZERO, HelicityClass.NONZERO_MINUS))
    eps = [p.epsilon for _, p in modes]
    assert eps == sorted(eps)
    assert not any(m.helicity_class is HelicityClass.ZERO and m.principal_n == 0 for m, _ in modes)


@given(st.integers(min_value=0, max_value=8))
def test_level_multiplicity_is_square(n):
    # counted empirically; the number of triples at level n comes out as (n + 1)^2
    level = [t for t in mode_triples(n) if abs(t[0]) + t[1] + t[2] == n]
    assert len(level) == (n + 1) ** 2


@given(azimuthal, quantum, quantum, mass, st.sampled_from(list(HelicityClass)))
def test_spectral_point_invariants(m, n_r, n_z, M, cls):
    mode = ModeSpec(m, n_r, n_z, M, cls)
    try:
        p = spectral_point(mode)
    except DegenerateEnergyError:
        assert cls is HelicityClass.ZERO and M * M + (mode.principal_n + 1) ** 2 - 1 <= 0
        return
    assert p.lam == lambda_of(m, n_r) == lambda_of(-m, n_r)
    assert p.epsilon > 0
    if cls.nonzero:
        assert abs(p.sigma ** 2 + p.epsilon ** 2 - M ** 2) <= 1e-12 * max(1.0, p.epsilon ** 2)
        assert p.sigma.imag * mode.branch.value > 0
    else:
        assert p.sigma == 0
        assert p.epsilon ** 2 - M ** 2 + 1 == pytest.approx((mode.principal_n + 1) ** 2, rel=1e-12)


@given(azimuthal, quantum, quantum, mass)
def test_energy_grows_with_every_quantum_number(m, n_r, n_z, M):
    base = energy_nonzero_sigma(M, m, n_r, n_z)
    assert energy_nonzero_sigma(M, m, n_r + 1, n_z) > base
    assert energy_nonzero_sigma(M, m, n_r, n_z + 1) > base
    assert energy_nonzero_sigma(M, abs(m) + 1, n_r, n_z) > base


@given(azimuthal, quantum, quantum)
def test_massless_spectrum_is_integer(m, n_r, n_z):
    assert energy_nonzero_sigma(0.0, m, n_r, n_z) == abs(m) + n_r + n_z + 1
