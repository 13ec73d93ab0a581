"""Partition function and thermodynamic/magnetic response.

Three routes to Z:

* ``ZMethod.DIRECT_SUM`` -- sum of Boltzmann factors over n = 0..n_max.
* ``ZMethod.QUADRATURE`` -- the classical limit, integral of exp(-beta E(phi))
  over phi in [nu, nu + eta_max] with E(phi) the closed-form energy at
  continuous phi = n + nu.
* ``ZMethod.CLOSED_FORM`` -- the same integral through error functions of
  imaginary argument.

The direct sum carries analytic beta- and B-derivatives; the integral
routes use central differences with one Richardson step.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy import integrate

from .model import (
    NATURAL,
    DomainError,
    QuantumState,
    _energy_B_derivatives,
    _energy_from_phi,
    cutoffs,
    energy_2d,
    energy_dB,
    energy_dB2,
)
from .specfun import erf_complex


class ZMethod(str, enum.Enum):
    DIRECT_SUM = "sum"
    QUADRATURE = "quad"
    CLOSED_FORM = "closed"


class Convention(str, enum.Enum):
    STANDARD = "standard"
    PAPER_LITERAL = "paper"


class ClosedFormUnstable(ArithmeticError):
    """The error-function closed form cannot be evaluated in double precision."""


@dataclass(frozen=True)
class IntegralParams:
    M_coef: float
    N_coef: float
    W_coef: float
    phi_lo: float
    phi_hi: float


@dataclass(frozen=True)
class ErfTerms:
    lam1: complex
    lam2: complex
    pi1: complex
    pi2: complex
    xi_term: complex


@dataclass(frozen=True)
class ThermoPoint:
    beta: float
    B: float
    phi_AB: float
    Z: float
    U: float
    Cv: float
    F: float
    S: float
    magnetization: float
    chi: float
    z_method: ZMethod
    convention: Convention


def _check_beta(beta):
    if not beta > 0:
        raise DomainError("beta must be > 0")


def integral_params(p, f, m, k=NATURAL) -> IntegralParams:
    """Coefficients of -E(phi) = M/phi^2 + N phi^2 + W and the phi range."""
    cut = cutoffs(p, f, m, k)
    c = k.energy_scale * p.alpha**2
    nu = _nu_of(p, f, m, k)
    return IntegralParams(
        M_coef=c * cut.P2**2 / 4.0,
        N_coef=c / 4.0,
        W_coef=-c * cut.P2 / 2.0 - cut.P1,
        phi_lo=nu,
        phi_hi=nu + cut.eta_max,
    )


def _nu_of(p, f, m, k):
    from .model import _nu

    return _nu(p, f, m, k)


# --- direct sum --------------------------------------------------------------


def _levels(p, f, m, k):
    n_max = cutoffs(p, f, m, k).n_max
    return [energy_2d(p, f, QuantumState(n, m), k) for n in range(n_max + 1)]


def partition_direct(p, f, m, k=NATURAL, beta=1.0) -> float:
    _check_beta(beta)
    return math.fsum(math.exp(-beta * E) for E in _levels(p, f, m, k))


# --- classical-limit integral -----------------------------------------------


def _log_partition_quad(p, f, m, k, beta):
    ip = integral_params(p, f, m, k)
    if not ip.phi_hi > ip.phi_lo:
        raise DomainError("classical limit undefined: eta_max = 0")
    cut = cutoffs(p, f, m, k)
    c0 = k.energy_scale * p.alpha**2
    E_ref = _energy_from_phi(cut.P1, cut.P2, c0, ip.phi_lo)

    def g(phi):
        return math.exp(-beta * (_energy_from_phi(cut.P1, cut.P2, c0, phi) - E_ref))

    val, _ = integrate.quad(g, ip.phi_lo, ip.phi_hi, epsabs=0.0, epsrel=1e-13, limit=200)
    return math.log(val) - beta * E_ref


def partition_quadrature(p, f, m, k=NATURAL, beta=1.0) -> float:
    _check_beta(beta)
    return math.exp(_log_partition_quad(p, f, m, k, beta))


def _roots(ip, beta):
    # principal roots of the negative reals -M beta, -N beta: exactly imaginary
    return 1j * math.sqrt(ip.M_coef * beta), 1j * math.sqrt(ip.N_coef * beta)


def erf_terms(p, f, m, k=NATURAL, beta=1.0) -> ErfTerms:
    """Error-function arguments of the closed form.

    The phi^2 coefficient of the exponent is N and the 1/phi^2 coefficient
    is M, so the roles of the two square roots follow that assignment.
    """
    ip = integral_params(p, f, m, k)
    nu, eta = ip.phi_lo, ip.phi_hi - ip.phi_lo
    sq_m, sq_n = _roots(ip, beta)
    lam1 = sq_m / nu
    lam2 = sq_n * nu
    pi1 = sq_n * eta
    pi2 = sq_m / (eta + nu)
    return ErfTerms(lam1, lam2, pi1, pi2, pi1 + lam2 - pi2)


def partition_closed(p, f, m, k=NATURAL, beta=1.0, imag_tol=1e-8) -> float:
    _check_beta(beta)
    ip = integral_params(p, f, m, k)
    if not ip.phi_hi > ip.phi_lo:
        raise DomainError("classical limit undefined: eta_max = 0")
    if not ip.M_coef > 0:
        raise DomainError("closed form needs M > 0")
    t = erf_terms(p, f, m, k, beta)
    sq_m, sq_n = _roots(ip, beta)
    try:
        e_lo_minus = erf_complex(t.lam1 - t.lam2)
        e_lo_plus = erf_complex(t.lam1 + t.lam2)
        e_hi_plus = erf_complex(t.pi1 + t.lam2 + t.pi2)
        e_xi = erf_complex(t.xi_term)
        pref = -math.sqrt(math.pi) * _cexp(ip.W_coef * beta - 2 * sq_n * sq_m) / (4 * sq_n)
        bracket = -e_lo_minus + _cexp(4 * sq_n * sq_m) * (e_lo_plus - e_hi_plus) - e_xi
        Z = pref * bracket
    except OverflowError as exc:
        raise ClosedFormUnstable(
            "closed form numerically unstable; use quadrature"
        ) from exc
    if not (math.isfinite(Z.real) and Z.real > 0):
        raise ClosedFormUnstable("closed form numerically unstable; use quadrature")
    if abs(Z.imag) > imag_tol * abs(Z.real):
        raise ClosedFormUnstable(f"imaginary residue {Z.imag:.3g} in closed form")
    return Z.real


def _cexp(z):
    z = complex(z)
    if z.real > 709.0:
        raise OverflowError("exp overflow")
    return math.exp(z.real) * complex(math.cos(z.imag), math.sin(z.imag))


def partition(p, f, m, k=NATURAL, beta=1.0, method=ZMethod.DIRECT_SUM) -> float:
    method = ZMethod(method)
    if method is ZMethod.DIRECT_SUM:
        return partition_direct(p, f, m, k, beta)
    if method is ZMethod.QUADRATURE:
        return partition_quadrature(p, f, m, k, beta)
    return partition_closed(p, f, m, k, beta)


def log_partition(p, f, m, k=NATURAL, beta=1.0, method=ZMethod.DIRECT_SUM) -> float:
    method = ZMethod(method)
    if method is ZMethod.QUADRATURE:
        _check_beta(beta)
        return _log_partition_quad(p, f, m, k, beta)
    return math.log(partition(p, f, m, k, beta, method))


# --- finite differences ------------------------------------------------------


def derivative(fun, x, h, order=1, lower=None):
    """Central difference with one Richardson step; forward stencils near `lower`."""
    forward = lower is not None and x - 2 * h < lower

    def d(step):
        if order == 1:
            if forward:
                return (-3 * fun(x) + 4 * fun(x + step) - fun(x + 2 * step)) / (2 * step)
            return (fun(x + step) - fun(x - step)) / (2 * step)
        if order == 2:
            if forward:
                return (
                    2 * fun(x) - 5 * fun(x + step) + 4 * fun(x + 2 * step) - fun(x + 3 * step)
                ) / step**2
            return (fun(x + step) - 2 * fun(x) + fun(x - step)) / step**2
        raise ValueError("order must be 1 or 2")

    return (4 * d(h / 2) - d(h)) / 3


# relative beta steps; smaller steps drown in quadrature noise for second derivatives
BETA_STEP_1 = 3e-3
BETA_STEP_2 = 1e-2
B_STEP = 1e-4


def _energy_spread(p, f, m, k):
    """E at the top of the integration range minus E at the bottom."""
    ip = integral_params(p, f, m, k)
    cut = cutoffs(p, f, m, k)
    c0 = k.energy_scale * p.alpha**2
    lo = _energy_from_phi(cut.P1, cut.P2, c0, ip.phi_lo)
    hi = _energy_from_phi(cut.P1, cut.P2, c0, ip.phi_hi)
    return max(hi - lo, 1e-300)


def _exp_or_inf(x):
    # Z can leave double range at low temperature while ln Z stays usable
    return math.exp(x) if x < 709.78 else math.inf


def _with_B(f, B):
    return type(f)(B=B, phi_AB=f.phi_AB)


# --- thermodynamic functions -------------------------------------------------


def thermo_point(
    p,
    f,
    m,
    k=NATURAL,
    beta=1.0,
    z_method=ZMethod.DIRECT_SUM,
    convention=Convention.STANDARD,
) -> ThermoPoint:
    _check_beta(beta)
    z_method = ZMethod(z_method)
    convention = Convention(convention)
    kB = k.k_B

    if z_method is ZMethod.DIRECT_SUM:
        n_max = cutoffs(p, f, m, k).n_max
        rows = [_energy_B_derivatives(p, f, QuantumState(n, m), k) for n in range(n_max + 1)]
        E_min = min(E for E, _, _ in rows)
        # shifted weights; the shift cancels in every ensemble average
        w = [math.exp(-beta * (E - E_min)) for E, _, _ in rows]
        Zs = math.fsum(w)
        lnZ = math.log(Zs) - beta * E_min
        Z = _exp_or_inf(lnZ)
        U = math.fsum(wi * E for wi, (E, _, _) in zip(w, rows)) / Zs
        var = math.fsum(wi * (E - U) ** 2 for wi, (E, _, _) in zip(w, rows)) / Zs
        dE = math.fsum(wi * d1 for wi, (_, d1, _) in zip(w, rows)) / Zs
        var_d = math.fsum(wi * (d1 - dE) ** 2 for wi, (_, d1, _) in zip(w, rows)) / Zs
        d2E = math.fsum(wi * d2 for wi, (_, _, d2) in zip(w, rows)) / Zs
        magnetization = -dE
        chi = -d2E + beta * var_d
        dU_dbeta = -var
    else:
        def lnz(b, B=f.B):
            return log_partition(p, _with_B(f, B), m, k, b, z_method)

        lnZ = lnz(beta)
        Z = _exp_or_inf(lnZ)
        # ln Z curves on the scale 1/beta or 1/(energy spread), whichever is larger
        scale = max(beta, 1.0 / _energy_spread(p, f, m, k))
        U = -derivative(lnz, beta, BETA_STEP_1 * scale, lower=0.0)
        dU_dbeta = -derivative(lnz, beta, BETA_STEP_2 * scale, order=2, lower=0.0)
        hB = B_STEP * max(1.0, f.B)
        if f.B < 2 * hB:
            # one-sided stencil; B enters as B/alpha so it needs a finer step
            hB /= 10.0
        magnetization = derivative(lambda B: lnz(beta, B), f.B, hB, lower=0.0) / beta
        chi = derivative(lambda B: lnz(beta, B), f.B, hB, order=2, lower=0.0) / beta

    F = -lnZ / beta
    if convention is Convention.STANDARD:
        Cv = -kB * beta**2 * dU_dbeta
        S = kB * (lnZ + beta * U)
    else:
        Cv = kB * dU_dbeta
        # dF/dbeta = lnZ/beta^2 + U/beta
        S = -kB * (lnZ / beta**2 + U / beta)
    return ThermoPoint(
        beta=beta,
        B=f.B,
        phi_AB=f.phi_AB,
        Z=Z,
        U=U,
        Cv=Cv,
        F=F,
        S=S,
        magnetization=magnetization,
        chi=chi,
        z_method=z_method,
        convention=convention,
    )


def magnetization_zero_T(p, f, q, k=NATURAL) -> float:
    """M_nm = -dE_nm/dB for a single state."""
    return -energy_dB(p, f, q, k)


def susceptibility_zero_T(p, f, q, k=NATURAL) -> float:
    """chi_nm = dM_nm/dB = -d2E_nm/dB2 for a single state."""
    return -energy_dB2(p, f, q, k)
