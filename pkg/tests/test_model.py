import math
import time

import numpy as np
import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from cli.selftest import random_model_params
from models import ModelParams, CLOSED_FORM, SPECTRAL, build_hamiltonian, derive_couplings, thermal_state, \
    thermal_state_closed_form, thermal_state_spectral, to_density_matrix, XStateElements
from qmat import hermitian_eigen
from utils import DomainError
from conftest import PSI_MINUS, PSI_PLUS, projector

coupling = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False)
field = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False)
temperature = st.floats(min_value=0.05, max_value=5.0, allow_nan=False, allow_infinity=False)

X_PATTERN = np.array([[1, 0, 0, 1],
                      [0, 1, 1, 0],
                      [0, 1, 1, 0],
                      [1, 0, 0, 1]], dtype=bool)


@pytest.mark.parametrize("kwargs", [{"kT": 0.0}, {"kT": -1.0}, {"jx": math.nan}, {"b": math.inf}])
def test_model_params_validation(kwargs):
    with pytest.raises(DomainError):
        ModelParams(**kwargs)


def test_model_params_named_models():
    assert ModelParams.xxx(0.5) == ModelParams(jx=0.5, jy=0.5, jz=0.5)
    assert ModelParams.xxz(0.4, -0.5, kT=2.0) == ModelParams(jx=0.4, jy=0.4, jz=-0.5, kT=2.0)
    assert ModelParams.ising(1.0, b=2.0) == ModelParams(jx=1.0, b=2.0)
    assert ModelParams(jx=1.3, jy=0.7).swapped_xy() == ModelParams(jx=0.7, jy=1.3)


def test_zero_hamiltonian():
    assert np.array_equal(build_hamiltonian(ModelParams()), np.zeros((4, 4)))


def test_xxx_singlet_eigenvalue():
    j = 0.8
    h = build_hamiltonian(ModelParams.xxx(j))
    assert np.allclose(h @ PSI_MINUS, -0.75 * j * PSI_MINUS)
    assert np.allclose(hermitian_eigen(h).eigenvalues, [-0.75 * j, 0.25 * j, 0.25 * j, 0.25 * j])


def test_ising_corner_entry():
    h = build_hamiltonian(ModelParams.ising(1.0))
    assert h[0, 3] == pytest.approx(0.25)


def test_hamiltonian_has_x_shape(rng):
    h = build_hamiltonian(random_model_params(rng))
    assert np.all(h[~X_PATTERN] == 0)
    assert np.allclose(h, h.conj().T)
    assert np.allclose(h.imag, 0)


def test_derived_couplings():
    c = derive_couplings(ModelParams(jx=1.3, jy=0.7, jz=0.2, b=0.5, kT=2.0))
    assert c.delta == pytest.approx(0.6)
    assert c.sigma == pytest.approx(2.0)
    assert c.eta ** 2 == pytest.approx(0.36 + 16 * 0.25, rel=1e-12)
    assert (c.alpha, c.beta, c.gamma) == pytest.approx((0.2 / 8, c.eta / 8, 2.0 / 8))


def test_infinite_temperature_state():
    x = thermal_state_closed_form(ModelParams())
    assert (x.a11, x.a22, x.b11, x.a12, x.b12, x.z) == (1.0, 1.0, 1.0, 0.0, 0.0, 4.0)
    assert np.allclose(to_density_matrix(x), np.eye(4) / 4)
    assert np.allclose(thermal_state_spectral(ModelParams()), np.eye(4) / 4)


def test_to_density_matrix_layout():
    rho = to_density_matrix(XStateElements(a11=1, a12=0.5, a22=2, b11=0.5, b12=-0.25, z=4))
    assert rho[0, 0] == 0.25 and rho[3, 3] == 0.5 and rho[1, 1] == rho[2, 2] == 0.125
    assert rho[0, 3] == rho[3, 0] == 0.125
    assert rho[1, 2] == rho[2, 1] == -0.0625
    assert np.all(rho[~X_PATTERN] == 0)


def test_trace_consistency(rng):
    for _ in range(50):
        x = thermal_state_closed_form(random_model_params(rng))
        assert x.z == pytest.approx(x.a11 + x.a22 + 2 * x.b11, rel=1e-12)
        assert x.a11 > 0 and x.a22 > 0 and x.b11 > 0
        assert x.a11 * x.a22 - x.a12 ** 2 >= -1e-12 * x.z ** 2
        assert x.b11 ** 2 - x.b12 ** 2 >= -1e-12 * x.z ** 2


def test_zero_field_symmetry(rng):
    for _ in range(20):
        p = ModelParams(jx=rng.uniform(-3, 3), jy=rng.uniform(-3, 3), jz=rng.uniform(-3, 3), kT=rng.uniform(0.05, 5))
        x = thermal_state_closed_form(p)
        assert x.a11 == x.a22


def test_isotropic_xy_zero_field_limit():
    x = thermal_state_closed_form(ModelParams.xxz(1.0, 0.3, kT=0.7))
    assert x.a12 == 0.0
    assert x.a11 == x.a22


@pytest.mark.parametrize("params", [
    ModelParams(jx=0.4, jy=0.4, jz=-0.5, b=0.0, kT=0.5),
    ModelParams(jx=1.3, jy=0.7, jz=0.0, b=2.5, kT=0.8),
    ModelParams(jx=1.0, jy=0.0, jz=0.0, b=-1.5, kT=0.3),
    ModelParams(jx=4.0, jy=-3.0, jz=10.0, b=0.0, kT=0.01),
])
def test_closed_form_matches_spectral(params):
    closed = thermal_state(params, CLOSED_FORM)
    spectral = thermal_state(params, SPECTRAL)

    assert np.max(np.abs(closed - spectral)) < 1e-10
    assert np.trace(closed).real == pytest.approx(1.0, abs=1e-10)
    assert np.min(hermitian_eigen(closed).eigenvalues) >= -1e-10


@pytest.mark.slow
def test_oracle_agreement_on_random_draws(rng):
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        p = random_model_params(rng)
        worst = max(worst, np.max(np.abs(thermal_state(p) - thermal_state_spectral(p))))

    assert worst < 1e-10
    assert time.perf_counter() - start < 5.0


@settings(max_examples=100, deadline=None)
@given(coupling, coupling, coupling, field, temperature)
@example(0.0, 3.27e-285, 0.0, 0.0, 1.0)
def test_oracle_agreement_property(jx, jy, jz, b, kT):
    p = ModelParams(jx=jx, jy=jy, jz=jz, b=b, kT=kT)
    assert np.max(np.abs(thermal_state(p) - thermal_state_spectral(p))) < 1e-10


@pytest.mark.parametrize("params", [
    ModelParams(jy=3.27e-285),
    ModelParams(jx=1e-200, jy=-1e-200, jz=0.5),
    ModelParams(jx=1.0, jy=1.0, b=1e-300),
])
def test_closed_form_with_vanishing_eta(params):
    x = thermal_state_closed_form(params)
    assert np.all(np.isfinite([x.a11, x.a12, x.a22, x.b11, x.b12, x.z]))
    assert np.max(np.abs(to_density_matrix(x) - thermal_state_spectral(params))) < 1e-10


@pytest.mark.parametrize("j", [-200.0, 200.0])
def test_strong_coupling_uses_log_scale(j):
    p = ModelParams.xxx(j, kT=0.1)
    x = thermal_state_closed_form(p)
    rho = to_density_matrix(x)

    assert x.log_scale > 0
    assert np.all(np.isfinite(rho))
    assert np.max(np.abs(rho - thermal_state_spectral(p))) < 1e-10


def test_antiferromagnetic_limit_is_singlet():
    assert np.allclose(thermal_state(ModelParams.xxx(200.0)), projector(PSI_MINUS), atol=1e-12)


def test_ferromagnetic_limit_is_triplet_mixture():
    expected = (np.diag([1.0, 0.0, 0.0, 0.0]) + np.diag([0.0, 0.0, 0.0, 1.0]) + projector(PSI_PLUS)) / 3
    assert np.allclose(thermal_state(ModelParams.xxx(-200.0)), expected, atol=1e-12)


def test_xxx_low_temperature_singlet_weight():
    rho = thermal_state(ModelParams.xxx(1.0, kT=0.1))
    weights = np.exp(-np.array([-0.75, 0.25, 0.25, 0.25]) / 0.1)
    assert hermitian_eigen(rho).eigenvalues[-1] == pytest.approx(weights[0] / weights.sum(), rel=1e-10)


def test_thermal_state_rejects_unknown_method():
    with pytest.raises(ValueError):
        thermal_state(ModelParams(), "taylor")
