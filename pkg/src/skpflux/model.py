"""Screened Kratzer potential in a magnetic field plus Aharonov-Bohm flux.

Parameter types, the dimensionless mapping and the closed-form 2D/3D
spectrum with its analytic field derivatives. Everything is in natural
units unless a :class:`Constants` instance says otherwise.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Argument outside the domain of a formula."""


class NoBoundSpectrumError(DomainError):
    """The square root defining nu has a negative radicand."""


@dataclass(frozen=True)
class Constants:
    hbar: float = 1.0
    mu: float = 1.0
    e_charge: float = 1.0
    c_light: float = 1.0
    k_B: float = 1.0
    # -1 is the physical convention; +1 exists so the sign dependence can be tested
    tau_sign: float = -1.0

    def __post_init__(self):
        for name in ("hbar", "mu", "e_charge", "c_light", "k_B"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.tau_sign not in (-1.0, 1.0):
            raise ValueError("tau_sign must be -1 or +1")

    @property
    def tau(self) -> float:
        return self.tau_sign * self.e_charge / self.c_light

    @property
    def phi0(self) -> float:
        """Flux quantum hbar*c/e."""
        return self.hbar * self.c_light / self.e_charge

    @property
    def energy_scale(self) -> float:
        """hbar^2/(2 mu); multiply by alpha^2 to get the P1 prefactor."""
        return self.hbar**2 / (2.0 * self.mu)


NATURAL = Constants()


@dataclass(frozen=True)
class PotentialParams:
    A: float = 1.0
    C: float = 0.5
    alpha: float = 0.005

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be > 0")
        if not self.A >= 0:
            raise ValueError("A must be >= 0")
        if not self.C >= 0:
            raise ValueError("C must be >= 0")

    @classmethod
    def from_molecule(cls, De: float, re: float, alpha: float) -> "PotentialParams":
        """Build from dissociation energy and equilibrium bond length."""
        return cls(A=2.0 * De * re, C=De * re * re, alpha=alpha)


@dataclass(frozen=True)
class FieldConfig:
    B: float = 0.0
    phi_AB: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.B) and self.B >= 0):
            raise ValueError("B must be finite and >= 0")
        if not (math.isfinite(self.phi_AB) and self.phi_AB >= 0):
            raise ValueError("phi_AB must be finite and >= 0")

    def xi(self, k: Constants = NATURAL) -> float:
        return self.phi_AB / k.phi0


@dataclass(frozen=True)
class QuantumState:
    n: int = 0
    m: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")


@dataclass(frozen=True)
class DimensionlessSet:
    beta1: float
    beta2: float
    delta1: float
    delta2: float
    delta3: float
    gamma: float
    xi: float
    tau: float
    nu: float
    eps: float
    lambda_exp: float
    sigma_exp: float


@dataclass(frozen=True)
class SpectrumCutoffs:
    P1: float
    P2: float
    eta_max: float
    n_max: int


def potential_eval(p: PotentialParams, r):
    """V(r) = (-A/r + C/r^2) exp(-alpha r)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("potential is defined for r > 0 only")
    out = (-p.A / r + p.C / r**2) * np.exp(-p.alpha * r)
    return out if out.ndim else float(out)


def greene_aldrich(alpha: float, r):
    """Greene-Aldrich replacement for 1/r^2: alpha^2 / (1 - exp(-alpha r))^2."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0) or alpha <= 0:
        raise DomainError("need r > 0 and alpha > 0")
    out = alpha**2 / (-np.expm1(-alpha * r)) ** 2
    return out if out.ndim else float(out)


def greene_aldrich_check(p: PotentialParams, threshold: float = 0.1) -> bool:
    """Warn if alpha times the Kratzer minimum position exceeds `threshold`."""
    if p.A == 0:
        return True
    r_char = 2.0 * p.C / p.A
    ok = p.alpha * r_char <= threshold
    if not ok:
        warnings.warn(
            f"alpha*r_char = {p.alpha * r_char:.3g} > {threshold}: "
            "Greene-Aldrich approximation is poor here",
            stacklevel=2,
        )
    return ok


# --- internal scalar pieces shared by energy, derivatives and cutoffs -------


def _nu_radicand(p, f, m, k):
    tau, h, a = k.tau, k.hbar, p.alpha
    mx = m + f.xi(k)
    return (
        tau**2 * f.B**2 / (h**2 * a**2)
        + 2.0 * k.mu * p.C / h**2
        - 2.0 * m * tau * f.B / (h * a)
        - tau**2 * f.B * f.phi_AB / (h**2 * a * math.pi)
        + mx**2
    )


def _nu(p, f, m, k):
    q = _nu_radicand(p, f, m, k)
    if q < 0:
        raise NoBoundSpectrumError(
            f"no bound spectrum under these fields (nu radicand {q:.6g} < 0 "
            f"at B={f.B}, phi_AB={f.phi_AB}, m={m}, alpha={p.alpha})"
        )
    return 0.5 + math.sqrt(q)


def _P1(p, f, m, k):
    return k.energy_scale * p.alpha**2 * ((m + f.xi(k)) ** 2 - 0.25)


def _P2(p, f, m, k):
    tau, h, a = k.tau, k.hbar, p.alpha
    return (
        tau**2 * f.B**2 / (h**2 * a**2)
        - 2.0 * k.mu * p.A / (h**2 * a)
        - (m + f.xi(k)) ** 2
        + 0.25
    )


def _energy_from_phi(P1, P2, c0, phi):
    return P1 - c0 * ((P2 - phi**2) / (2.0 * phi)) ** 2


def dimensionless_map(
    p: PotentialParams, f: FieldConfig, q: QuantumState, k: Constants = NATURAL
) -> DimensionlessSet:
    greene_aldrich_check(p)
    h, a, tau, m = k.hbar, p.alpha, k.tau, q.m
    xi = f.xi(k)
    nu = _nu(p, f, m, k)
    E = energy_2d(p, f, q, k)
    eps = -2.0 * k.mu * E / (h**2 * a**2)
    gamma = (m + xi) ** 2 - 0.25
    return DimensionlessSet(
        beta1=2.0 * k.mu * p.A / (h**2 * a),
        beta2=2.0 * k.mu * p.C / h**2,
        delta1=2.0 * m * tau * f.B / (h * a),
        delta2=tau**2 * f.B**2 / (h**2 * a**2),
        delta3=tau**2 * f.B * f.phi_AB / (h**2 * a * math.pi),
        gamma=gamma,
        xi=xi,
        tau=tau,
        nu=nu,
        eps=eps,
        lambda_exp=math.sqrt(max(eps + gamma, 0.0)),
        sigma_exp=nu,
    )


def energy_2d(
    p: PotentialParams, f: FieldConfig, q: QuantumState, k: Constants = NATURAL
) -> float:
    """Closed-form bound-state energy E_nm of the 2D problem."""
    nu = _nu(p, f, q.m, k)
    c0 = k.energy_scale * p.alpha**2
    return _energy_from_phi(_P1(p, f, q.m, k), _P2(p, f, q.m, k), c0, q.n + nu)


def energy_levels(p, f, m, n, k=NATURAL):
    """Vectorised `energy_2d` over an array of radial quantum numbers."""
    nu = _nu(p, f, m, k)
    c0 = k.energy_scale * p.alpha**2
    phi = np.asarray(n, dtype=float) + nu
    return _energy_from_phi(_P1(p, f, m, k), _P2(p, f, m, k), c0, phi)


def energy_3d(p: PotentialParams, ell: int, n: int, k: Constants = NATURAL, f=None):
    """3D energy E_nl, valid at zero external fields only."""
    if f is not None and (f.B != 0 or f.phi_AB != 0):
        raise DomainError("3D reduction defined at zero fields only")
    if ell < 0 or n < 0:
        raise DomainError("need ell >= 0 and n >= 0")
    L = ell * (ell + 1)
    c0 = k.energy_scale * p.alpha**2
    beta1 = 2.0 * k.mu * p.A / (k.hbar**2 * p.alpha)
    K = n + 0.5 + math.sqrt(0.25 + L + 2.0 * k.mu * p.C / k.hbar**2)
    return c0 * L - c0 * ((K**2 + L + beta1) / (2.0 * K)) ** 2


def _energy_B_derivatives(p, f, q, k, tol=1e-12):
    """Return (E, dE/dB, d2E/dB2) by the chain rule through P2 and nu."""
    h, a, tau, m = k.hbar, p.alpha, k.tau, q.m
    Q = _nu_radicand(p, f, m, k)
    if Q <= tol:
        raise DomainError(f"derivative singular: nu radicand {Q:.3g} ~ 0")
    sq = math.sqrt(Q)
    c0 = k.energy_scale * a**2
    Q1 = 2 * tau**2 * f.B / (h**2 * a**2) - 2 * m * tau / (h * a) - tau**2 * f.phi_AB / (
        h**2 * a * math.pi
    )
    Q2 = 2 * tau**2 / (h**2 * a**2)
    K = q.n + 0.5 + sq
    K1 = Q1 / (2 * sq)
    K2 = Q2 / (2 * sq) - Q1**2 / (4 * Q * sq)
    P2 = _P2(p, f, m, k)
    P21 = 2 * tau**2 * f.B / (h**2 * a**2)
    P22 = Q2
    g = P2 / (2 * K) - K / 2
    g1 = P21 / (2 * K) - P2 * K1 / (2 * K**2) - K1 / 2
    g2 = (
        P22 / (2 * K)
        - P21 * K1 / K**2
        - P2 * K2 / (2 * K**2)
        + P2 * K1**2 / K**3
        - K2 / 2
    )
    E = _P1(p, f, m, k) - c0 * g * g
    return E, -2 * c0 * g * g1, -2 * c0 * (g1 * g1 + g * g2)


def energy_dB(p, f, q, k=NATURAL) -> float:
    """Analytic dE_nm/dB."""
    return _energy_B_derivatives(p, f, q, k)[1]


def energy_dB2(p, f, q, k=NATURAL) -> float:
    """Analytic d2E_nm/dB2."""
    return _energy_B_derivatives(p, f, q, k)[2]


def cutoffs(p: PotentialParams, f: FieldConfig, m: int, k: Constants = NATURAL) -> SpectrumCutoffs:
    """Largest radial index on the rising branch of E(n).

    E(n+nu) peaks at (n+nu)^2 = -P2; n_max is the floor of that stationary
    point, clamped to 0 when the peak lies below nu.
    """
    nu = _nu(p, f, m, k)
    P2 = _P2(p, f, m, k)
    eta = -nu + math.sqrt(-P2) if -P2 > nu * nu else 0.0
    return SpectrumCutoffs(P1=_P1(p, f, m, k), P2=P2, eta_max=eta, n_max=int(math.floor(eta)))


def quantization_residual(p, f, q, k=NATURAL, E=None) -> float:
    """(lambda + sigma) - sqrt(eps - beta1 + delta2) + n at energy E.

    Both square roots are principal. Defaults to E = energy_2d(q).
    """
    if E is None:
        E = energy_2d(p, f, q, k)
    h, a = k.hbar, p.alpha
    eps = -2.0 * k.mu * E / (h**2 * a**2)
    gamma = (q.m + f.xi(k)) ** 2 - 0.25
    beta1 = 2.0 * k.mu * p.A / (h**2 * a)
    delta2 = k.tau**2 * f.B**2 / (h**2 * a**2)
    r1, r2 = eps + gamma, eps - beta1 + delta2
    if r1 < 0 or r2 < 0:
        raise DomainError("negative radicand in quantization condition")
    sigma = _nu(p, f, q.m, k)
    return math.sqrt(r1) + sigma - math.sqrt(r2) + q.n
