import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skpflux.model import (
    NATURAL,
    Constants,
    DomainError,
    FieldConfig,
    NoBoundSpectrumError,
    PotentialParams,
    QuantumState,
    cutoffs,
    dimensionless_map,
    energy_2d,
    energy_3d,
    energy_dB,
    energy_dB2,
    energy_levels,
    greene_aldrich,
    greene_aldrich_check,
    potential_eval,
    quantization_residual,
)

P = PotentialParams()


def test_constants_validation():
    with pytest.raises(ValueError):
        Constants(hbar=0.0)
    with pytest.raises(ValueError):
        Constants(tau_sign=0.5)
    assert NATURAL.tau == -1.0
    assert NATURAL.phi0 == 1.0


def test_params_validation():
    with pytest.raises(ValueError):
        PotentialParams(alpha=0.0)
    with pytest.raises(ValueError):
        PotentialParams(C=-1.0)
    with pytest.raises(ValueError):
        FieldConfig(B=-1.0)
    with pytest.raises(ValueError):
        QuantumState(n=-1)


def test_from_molecule():
    p = PotentialParams.from_molecule(De=2.0, re=1.5, alpha=0.01)
    assert (p.A, p.C) == (6.0, 4.5)


def test_potential_limits():
    r = np.array([0.5, 1.0, 3.0])
    # alpha -> 0 gives the bare Kratzer form
    v = potential_eval(PotentialParams(alpha=1e-12), r)
    assert np.allclose(v, -1.0 / r + 0.5 / r**2, rtol=1e-10)
    # C = 0 gives Yukawa
    v = potential_eval(PotentialParams(C=0.0, alpha=0.2), r)
    assert np.allclose(v, -np.exp(-0.2 * r) / r)
    with pytest.raises(DomainError):
        potential_eval(P, 0.0)


def test_greene_aldrich_small_r():
    r = 1e-3
    assert greene_aldrich(0.005, r) == pytest.approx(1.0 / r**2, rel=1e-5)


def test_greene_aldrich_check_warns():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert greene_aldrich_check(P)
    with pytest.warns(UserWarning):
        assert not greene_aldrich_check(PotentialParams(alpha=0.5))
    assert greene_aldrich_check(PotentialParams(A=0.0, alpha=0.5))


def test_dimensionless_reference_point():
    d = dimensionless_map(P, FieldConfig(), QuantumState(0, 0))
    assert d.beta1 == pytest.approx(400.0)
    assert d.beta2 == 1.0
    assert (d.delta1, d.delta2, d.delta3) == (0.0, 0.0, 0.0)
    assert d.gamma == -0.25
    assert d.nu == 1.5
    assert d.sigma_exp == d.nu


def test_ground_state_table_value():
    assert energy_2d(P, FieldConfig(), QuantumState(0, 0)) == pytest.approx(-0.224453125, abs=5e-10)


def test_zero_field_degeneracy():
    f = FieldConfig()
    for n in range(4):
        assert energy_2d(P, f, QuantumState(n, 1)) == energy_2d(P, f, QuantumState(n, -1))


def test_fields_lift_degeneracy():
    for f in (FieldConfig(B=4.0), FieldConfig(phi_AB=4.0)):
        assert energy_2d(P, f, QuantumState(0, 1)) != energy_2d(P, f, QuantumState(0, -1))


def test_nu_radicand_negative_raises():
    # m = -4, phi = 4 cancels (m + xi)^2 and the linear B terms dominate
    with pytest.raises(NoBoundSpectrumError):
        energy_2d(P, FieldConfig(B=0.02, phi_AB=4.0), QuantumState(0, -4))


def test_energy_levels_vectorised():
    f = FieldConfig(B=1.0, phi_AB=2.0)
    E = energy_levels(P, f, 1, np.arange(5))
    assert E == pytest.approx([energy_2d(P, f, QuantumState(n, 1)) for n in range(5)], rel=1e-15)


def test_energy_3d_matches_half_integer_m():
    for ell in range(4):
        for n in range(4):
            e3 = energy_3d(P, ell, n)
            # m = ell + 1/2 through the 2D formula at zero fields
            g = (ell + 0.5) ** 2
            nu = 0.5 + math.sqrt(1.0 + g)
            P2 = -400.0 - g + 0.25
            phi = n + nu
            e2 = 0.005**2 / 2 * (g - 0.25) - 0.005**2 / 2 * ((P2 - phi**2) / (2 * phi)) ** 2
            assert e3 == pytest.approx(e2, rel=1e-12)


def test_energy_3d_rejects_fields():
    with pytest.raises(DomainError):
        energy_3d(P, 0, 0, f=FieldConfig(B=1.0))


def _fd(fun, x, h):
    return (fun(x + h) - fun(x - h)) / (2 * h)


def test_energy_dB_reference_point():
    q = QuantumState(0, 0)
    e = lambda B: energy_2d(P, FieldConfig(B, 1.0), q)
    assert energy_dB(P, FieldConfig(2.0, 1.0), q) == pytest.approx(_fd(e, 2.0, 1e-5), rel=1e-6)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(0.5, 8.0),
    st.floats(0.0, 8.0),
    st.integers(-2, 2),
    st.integers(0, 3),
)
def test_energy_B_derivatives_against_differences(B, phi, m, n):
    q = QuantumState(n, m)
    try:
        energy_dB(P, FieldConfig(B, phi), q)
    except DomainError:
        return
    h = 1e-5 * max(1.0, B)
    e = lambda b: energy_2d(P, FieldConfig(b, phi), q)
    d1 = energy_dB(P, FieldConfig(B, phi), q)
    assert d1 == pytest.approx(_fd(e, B, h), rel=1e-6, abs=1e-12)
    de = lambda b: energy_dB(P, FieldConfig(b, phi), q)
    assert energy_dB2(P, FieldConfig(B, phi), q) == pytest.approx(_fd(de, B, h), rel=1e-5, abs=1e-12)


def test_cutoffs_reference():
    c = cutoffs(P, FieldConfig(), 0)
    assert c.P2 == pytest.approx(-399.75)
    assert c.eta_max == pytest.approx(-1.5 + math.sqrt(399.75))
    assert c.n_max == 18
    # strong field: no rising branch
    assert cutoffs(P, FieldConfig(B=4.0), 0).n_max == 0


def test_energy_rises_up_to_cutoff():
    E = energy_levels(P, FieldConfig(), 0, np.arange(25))
    n_max = cutoffs(P, FieldConfig(), 0).n_max
    assert np.all(np.diff(E[: n_max + 1]) > 0)
    assert E[n_max + 2] < E[n_max + 1]


def test_quantization_residual_is_twice_phi():
    # with principal square roots the printed condition leaves 2(n + nu)
    for n in range(4):
        q = QuantumState(n, 1)
        nu = dimensionless_map(P, FieldConfig(), q).nu
        assert quantization_residual(P, FieldConfig(), q) == pytest.approx(2 * (n + nu), rel=1e-9)


def test_quantization_residual_sensitive_to_energy():
    q = QuantumState(0, 0)
    E = energy_2d(P, FieldConfig(), q)
    r0 = quantization_residual(P, FieldConfig(), q, E=E)
    r1 = quantization_residual(P, FieldConfig(), q, E=E + 1e-3)
    assert abs(r1 - r0) > 1e-6


def test_tau_sign_changes_field_columns():
    k = Constants(tau_sign=1.0)
    f = FieldConfig(B=4.0)
    q = QuantumState(0, 1)
    assert abs(energy_2d(P, f, q, k) - energy_2d(P, f, q)) > 1e-6
