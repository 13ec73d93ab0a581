"""Radial bound-state functions rho(s) = s^lambda (1-s)^sigma 2F1(-n, n+2(lambda+sigma); 2lambda+1; s).

The full 2D state is psi = exp(i m phi) rho(r) / sqrt(2 pi r), so with the
area element r dr dphi the normalisation integral is over plain dr.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate

from .model import NATURAL, DomainError, dimensionless_map
from .specfun import gauss_2f1_terminating


@dataclass(frozen=True)
class RadialSolution:
    lambda_exp: float
    sigma_exp: float
    n: int
    hypergeo_params: tuple
    alpha: float
    norm: float = 1.0


def radial_solution(p, f, q, k=NATURAL) -> RadialSolution:
    """Unnormalised radial solution for state q at the closed-form energy."""
    d = dimensionless_map(p, f, q, k)
    if d.eps + d.gamma < 0:
        raise DomainError("non-normalizable state: lambda is complex")
    lam, sig = d.lambda_exp, d.sigma_exp
    return RadialSolution(
        lambda_exp=lam,
        sigma_exp=sig,
        n=q.n,
        hypergeo_params=(-q.n, q.n + 2.0 * (lam + sig), 2.0 * lam + 1.0),
        alpha=p.alpha,
    )


def rho_s(sol: RadialSolution, s):
    s = np.asarray(s, dtype=float)
    if np.any((s < 0) | (s > 1)):
        raise DomainError("s must lie in [0, 1]")
    if not (math.isfinite(sol.lambda_exp) and math.isfinite(sol.sigma_exp)):
        raise DomainError("non-normalizable state")
    _, b, c = sol.hypergeo_params
    poly = np.vectorize(lambda x: gauss_2f1_terminating(sol.n, b, c, x), otypes=[float])(s)
    with np.errstate(divide="ignore", under="ignore"):
        out = sol.norm * s**sol.lambda_exp * (1.0 - s) ** sol.sigma_exp * poly
    return out if out.ndim else float(out)


def rho_r(sol: RadialSolution, p, r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be > 0")
    return rho_s(sol, np.exp(-p.alpha * r))


def _support(sol, p, rel_cut=1e-16):
    """Peak position and a cutoff radius beyond which rho^2 < rel_cut * peak."""
    # in s the factor s^lambda decays like exp(-alpha*lambda*r)
    decay = max(p.alpha * sol.lambda_exp, 1e-12)
    r_hi = (sol.n + 1 + sol.sigma_exp) / decay
    while True:
        r = np.linspace(r_hi * 1e-6, r_hi, 4001)
        w = rho_r(sol, p, r) ** 2
        peak = w.max()
        if w[-1] < rel_cut * peak:
            break
        r_hi *= 2.0
    r_peak = r[np.argmax(w)]
    above = np.nonzero(w >= rel_cut * peak)[0]
    r_cut = r[min(above[-1] + 1, len(r) - 1)]
    return r_peak, r_cut


def normalize(sol: RadialSolution, p) -> RadialSolution:
    """Rescale so that the integral of rho(r)^2 dr over (0, inf) is 1."""
    if not (sol.lambda_exp > 0 and sol.sigma_exp > 0.5):
        raise DomainError("non-integrable exponents")
    unit = replace(sol, norm=1.0)
    r_peak, r_cut = _support(unit, p)

    def g(r):
        return rho_r(unit, p, r) ** 2

    pieces = [(0.0, r_peak), (r_peak, r_cut)]
    total = 0.0
    for lo, hi in pieces:
        if hi > lo:
            val, _ = integrate.quad(g, max(lo, 1e-300), hi, epsabs=0.0, epsrel=1e-12, limit=400)
            total += val
    return replace(sol, norm=1.0 / math.sqrt(total))


def count_nodes(sol: RadialSolution, p, points: int = 20001) -> int:
    """Interior sign changes of rho_r on a dense grid covering its support."""
    _, r_cut = _support(replace(sol, norm=1.0), p, rel_cut=1e-30)
    r = np.linspace(r_cut * 1e-7, r_cut, points)
    v = rho_r(sol, p, r)
    v = v[v != 0]
    return int(np.count_nonzero(np.diff(np.sign(v)) != 0))
