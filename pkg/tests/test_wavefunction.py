from dataclasses import replace

import numpy as np
import pytest

from skpflux.model import DomainError, FieldConfig, PotentialParams, QuantumState, dimensionless_map
from skpflux.wavefunction import count_nodes, normalize, radial_solution, rho_r, rho_s

P = PotentialParams()
FIELDS = [FieldConfig(), FieldConfig(B=1.0, phi_AB=1.0), FieldConfig(phi_AB=4.0)]


def test_exponents_and_parameters():
    q = QuantumState(2, 1)
    d = dimensionless_map(P, FieldConfig(), q)
    sol = radial_solution(P, FieldConfig(), q)
    assert sol.sigma_exp == d.nu
    assert sol.lambda_exp == d.lambda_exp
    lam, sig = sol.lambda_exp, sol.sigma_exp
    assert sol.hypergeo_params == (-2, 2 + 2 * (lam + sig), 2 * lam + 1)


def test_boundary_values_vanish():
    sol = radial_solution(P, FieldConfig(), QuantumState(1, 0))
    assert rho_s(sol, 0.0) == 0.0
    assert rho_s(sol, 1.0) == 0.0


def test_rho_s_domain():
    sol = radial_solution(P, FieldConfig(), QuantumState(0, 0))
    with pytest.raises(DomainError):
        rho_s(sol, 1.5)
    with pytest.raises(DomainError):
        rho_r(sol, P, -1.0)


@pytest.mark.parametrize("f", FIELDS)
@pytest.mark.parametrize("n", [0, 1, 3])
def test_normalisation_against_trapezoid(f, n):
    sol = normalize(radial_solution(P, f, QuantumState(n, 0)), P)
    r = np.linspace(1e-9, 12000.0, 3_000_001)
    total = np.trapezoid(rho_r(sol, P, r) ** 2, r)
    assert total == pytest.approx(1.0, rel=1e-8)


def test_normalize_rejects_zero_lambda():
    sol = radial_solution(P, FieldConfig(), QuantumState(0, 0))
    with pytest.raises(DomainError):
        normalize(replace(sol, lambda_exp=0.0), P)


@pytest.mark.parametrize("f", FIELDS)
@pytest.mark.parametrize("m", [-1, 0, 1])
def test_node_count_equals_n(f, m):
    for n in range(5):
        sol = radial_solution(P, f, QuantumState(n, m))
        assert count_nodes(sol, P) == n
