"""Independent numerical checks on the closed-form spectrum.

The finite-difference solver discretises the Greene-Aldrich radial equation

    rho'' + [2 mu E / hbar^2 + U_eff(r)] rho = 0

on a uniform grid with Dirichlet ends and extracts eigenvalues by Sturm
sequence bisection on the symmetric tridiagonal matrix.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numba
import numpy as np
from scipy import optimize

from .model import (
    NATURAL,
    DomainError,
    _energy_from_phi,
    _nu,
    _P1,
    _P2,
    energy_2d,
    QuantumState,
)


@dataclass(frozen=True)
class FdGrid:
    r_min: float
    r_max: float
    points: int

    def __post_init__(self):
        if not (0 < self.r_min < self.r_max):
            raise ValueError("need 0 < r_min < r_max")
        if self.points < 3:
            raise ValueError("need at least 3 points")

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.points - 1)

    def refined(self, factor: int = 2) -> "FdGrid":
        return FdGrid(self.r_min, self.r_max, factor * (self.points - 1) + 1)

    def nodes(self):
        return np.linspace(self.r_min, self.r_max, self.points)


class FdSpectrum(NamedTuple):
    energies: np.ndarray
    complete: bool


def effective_potential(p, f, m, k=NATURAL, r=None):
    """Coefficient U_eff(r) of the radial equation, excluding the energy term.

    As printed in the field-dependent radial equation except for the
    centrifugal term, whose sign follows the s-coordinate form
    (-(m+xi)^2 + 1/4) alpha^2 / (1 - e^{-alpha r})^2.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be > 0")
    h, a, mu, tau, B = k.hbar, p.alpha, k.mu, k.tau, f.B
    s = np.exp(-a * r)
    om = -np.expm1(-a * r)
    om2 = om * om
    gamma = (m + f.xi(k)) ** 2 - 0.25
    out = (
        2 * mu * p.A * a * s / (h**2 * om)
        - 2 * mu * p.C * a**2 * s / (h**2 * om2)
        + (2 * m * tau / h) * a * B * s / om2
        - tau**2 * B**2 * s * s / (h**2 * om2)
        - tau**2 * a * B * f.phi_AB * s / (h**2 * om2 * math.pi)
        - gamma * a**2 / om2
    )
    return out if out.ndim else float(out)


def threshold_energy(p, f, m, k=NATURAL):
    """Energy at which the effective potential flattens out as r -> inf."""
    return _P1(p, f, m, k)


def ga_exact_energy(p, f, q, k=NATURAL):
    """Exact eigenvalue of the equation `effective_potential` defines.

    Same structure as the closed-form spectrum but with +beta1 inside the
    square and the +delta3 root from the s=1 indicial equation.
    """
    h, a, mu, tau, B, m = k.hbar, p.alpha, k.mu, k.tau, f.B, q.m
    beta1 = 2 * mu * p.A / (h**2 * a)
    beta2 = 2 * mu * p.C / h**2
    d1 = 2 * m * tau * B / (h * a)
    d2 = tau**2 * B**2 / (h**2 * a**2)
    d3 = tau**2 * B * f.phi_AB / (h**2 * a * math.pi)
    gamma = (m + f.xi(k)) ** 2 - 0.25
    rad = 0.25 + beta2 + d2 - d1 + d3 + gamma
    if rad < 0:
        raise DomainError("complex sigma")
    K = q.n + 0.5 + math.sqrt(rad)
    lam = (beta1 + d2 - gamma - K * K) / (2 * K)
    if lam <= 0:
        raise DomainError(f"state n={q.n} is not bound (lambda = {lam:.4g})")
    c0 = k.energy_scale * a * a
    return c0 * gamma - c0 * lam * lam


@numba.njit(cache=True)
def _sturm_count(d, e2, x):
    """Number of eigenvalues of the tridiagonal (d, e) strictly below x."""
    count = 0
    q = d[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, d.shape[0]):
        if q == 0.0:
            q = 1e-300
        q = d[i] - x - e2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _bisect_lowest(d, e2, lo, hi, count, rtol):
    out = np.empty(count)
    for j in range(count):
        a, b = lo, hi
        while b - a > rtol * max(abs(a), abs(b)) + 1e-300:
            mid = 0.5 * (a + b)
            if mid == a or mid == b:
                break
            if _sturm_count(d, e2, mid) > j:
                b = mid
            else:
                a = mid
        out[j] = 0.5 * (a + b)
        lo = a
    return out


def sturm_count(d, e, x) -> int:
    d = np.ascontiguousarray(d, dtype=float)
    e2 = np.ascontiguousarray(np.asarray(e, dtype=float) ** 2)
    return int(_sturm_count(d, e2, float(x)))


def tridiagonal_lowest(d, e, count, upper=None, rtol=4e-16):
    """Lowest `count` eigenvalues below `upper` by Sturm bisection."""
    d = np.ascontiguousarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    e2 = np.ascontiguousarray(e**2)
    ae = np.abs(e)
    rad = np.zeros_like(d)
    rad[:-1] += ae
    rad[1:] += ae
    lo = float(np.min(d - rad))
    hi = float(np.max(d + rad)) if upper is None else float(upper)
    available = int(_sturm_count(d, e2, hi))
    want = min(count, available)
    vals = _bisect_lowest(d, e2, lo, hi, want, rtol)
    return vals, want == count


def fd_eigenvalues(p, f, m, k=NATURAL, grid=None, count=1) -> FdSpectrum:
    """Lowest bound eigenvalues of the three-point discretisation.

    Only eigenvalues below the asymptotic threshold are returned;
    ``complete`` is False when fewer than ``count`` exist on this grid.
    """
    if grid is None:
        grid = auto_grid(p, f, m, k, count)
    r = grid.nodes()[1:-1]
    h = grid.spacing
    c = k.energy_scale
    d = c * (2.0 / h**2 - effective_potential(p, f, m, k, r))
    e = np.full(len(r) - 1, -c / h**2)
    vals, complete = tridiagonal_lowest(d, e, count, upper=threshold_energy(p, f, m, k))
    return FdSpectrum(vals, complete)


def fd_eigenvalues_extrapolated(p, f, m, k=NATURAL, grid=None, count=1, levels=2):
    """Richardson-extrapolated eigenvalues from grids h, h/2, ..., h/2^levels.

    levels=1 is the classic (4 E(h/2) - E(h)) / 3. levels=2 fits
    E(h) = E + a h^2 log h + b h^2 through three grids; the log term comes
    from the r^(3/2) behaviour at the origin when (m+xi)^2 + 2 mu C / hbar^2 = 2
    (e.g. m = 0, C = 1/2) and otherwise just absorbs the next correction.
    """
    if levels not in (1, 2):
        raise ValueError("levels must be 1 or 2")
    if grid is None:
        grid = auto_grid(p, f, m, k, count)
    table, hs = [], []
    g = grid
    for _ in range(levels + 1):
        table.append(fd_eigenvalues(p, f, m, k, g, count).energies)
        hs.append(g.spacing)
        g = g.refined()
    n = min(len(t) for t in table)
    E = np.array([t[:n] for t in table])
    if levels == 1:
        return FdSpectrum((4.0 * E[1] - E[0]) / 3.0, n == count)
    h = np.array(hs)
    design = np.stack([np.ones(3), h**2 * np.log(h), h**2], axis=1)
    coef = np.linalg.solve(design, E) if n else np.empty((3, 0))
    return FdSpectrum(coef[0], n == count)


def auto_grid(p, f, m, k=NATURAL, count=1, r_min=1e-5, ppw=24.0, max_points=400001):
    """Grid sized from the effective potential and a coarse pre-solve.

    The spacing resolves the largest local wavenumber in the classically
    allowed region (``ppw`` points per radian); r_max places the outer
    turning point of the highest wanted state 20 decay lengths inside the
    box. A small r_min matters: the Dirichlet wall shifts a level by roughly
    rho(r_min)^2 / r_min, which for rho ~ r^1.5 is 1e-6 relative at r_min = 1e-3.
    """
    c = k.energy_scale
    e_thr = threshold_energy(p, f, m, k)
    span = 60.0 / p.alpha
    probe = np.geomspace(r_min, span, 20000)
    V = -c * effective_potential(p, f, m, k, probe)
    i_min = int(np.argmin(V))
    v_min = V[i_min]
    if v_min >= e_thr:
        # no well: nothing can bind, any modest grid reports that
        return FdGrid(r_min, span, 2001)
    k_max = math.sqrt((e_thr - v_min) / c)
    coarse_pts = min(int(span * 3.0 * k_max) + 1, 200001)
    coarse = FdGrid(r_min, span, max(coarse_pts, 2001))
    est = fd_eigenvalues(p, f, m, k, coarse, count).energies
    e_top = est[-1] if len(est) else 0.5 * (v_min + e_thr)
    kappa = math.sqrt(max(e_thr - e_top, 1e-300) / c)
    allowed = np.nonzero(V < e_top)[0]
    r_turn = probe[allowed[-1]] if len(allowed) else probe[i_min]
    r_max = min(r_turn + 20.0 / kappa, span)
    # the inner r^sigma region needs a few points before the well
    h = min(1.0 / (ppw * k_max), probe[i_min] / 8.0)
    points = min(int(math.ceil((r_max - r_min) / h)) + 1, max_points)
    return FdGrid(r_min, r_max, max(points, 201))


def brute_force_nmax(p, f, m, k=NATURAL, n_ceiling=1000, samples_per_unit=64):
    """Last integer n before E(n + nu) stops rising, found by scanning.

    Scans the closed-form E over continuous n in [0, n_ceiling], refines the
    maximiser with a bounded scalar search and floors it.
    """
    if n_ceiling < 1:
        raise ValueError("n_ceiling must be >= 1")
    nu = _nu(p, f, m, k)
    P1, P2 = _P1(p, f, m, k), _P2(p, f, m, k)
    c0 = k.energy_scale * p.alpha**2
    x = np.linspace(0.0, float(n_ceiling), int(samples_per_unit * n_ceiling) + 1)
    E = _energy_from_phi(P1, P2, c0, x + nu)
    i = int(np.argmax(E))
    if i == 0:
        return 0
    if i == len(x) - 1:
        return int(n_ceiling)
    step = x[1] - x[0]
    res = optimize.minimize_scalar(
        lambda t: -_energy_from_phi(P1, P2, c0, t + nu),
        bounds=(x[i] - step, x[i] + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return int(min(max(math.floor(res.x), 0), n_ceiling))


def brute_force_partition(p, f, m, k=NATURAL, beta=1.0) -> float:
    """Plain loop over the bound states up to the scanned n_max."""
    if not beta > 0:
        raise DomainError("beta must be > 0")
    n_max = brute_force_nmax(p, f, m, k, n_ceiling=_ceiling(p, f, m, k))
    terms = [math.exp(-beta * energy_2d(p, f, QuantumState(n, m), k)) for n in range(n_max + 1)]
    return math.fsum(terms)


def _ceiling(p, f, m, k=NATURAL):
    # generous upper bound on the peak index: 10*(sqrt(-P2)) + 10
    P2 = _P2(p, f, m, k)
    return int(10 * math.sqrt(max(-P2, 0.0)) + 10)
