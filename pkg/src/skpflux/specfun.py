"""Error functions and the terminating Gauss hypergeometric series.

Only what the closed forms need: erf on the real line, erfi on the real
line, erf at purely real or purely imaginary complex points, and 2F1 with
a non-positive integer first parameter.
"""

import math

import numpy as np

_TWO_OVER_SQRTPI = 2.0 / math.sqrt(math.pi)
_ERF_SERIES_MAX = 2.5
ERFI_MAX_ARG = 30.0


def _erf_series(x):
    # erf(x) = 2/sqrt(pi) exp(-x^2) sum_k 2^k x^(2k+1) / (2k+1)!!, all terms positive
    x2 = x * x
    term = x
    total = x
    k = 0
    while True:
        k += 1
        term *= 2.0 * x2 / (2 * k + 1)
        total += term
        if term <= 1e-17 * total:
            break
    return _TWO_OVER_SQRTPI * math.exp(-x2) * total


def _erfc_cf(x):
    """erfc(x) for x > 0 by modified Lentz on the Laplace continued fraction."""
    # erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    tiny = 1e-300
    f = x
    C = x
    D = 0.0
    for j in range(1, 500):
        a = 0.5 * j
        D = x + a * D
        D = 1.0 / (D if D != 0 else tiny)
        C = x + a / C
        if C == 0:
            C = tiny
        delta = C * D
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x * x) / (math.sqrt(math.pi) * f)


def _erf_scalar(x):
    if x != x:
        return math.nan
    ax = abs(x)
    if ax == 0.0:
        return 0.0 * x
    if ax < _ERF_SERIES_MAX:
        v = _erf_series(ax)
    elif ax > 27.0:
        v = 1.0
    else:
        v = 1.0 - _erfc_cf(ax)
    return v if x > 0 else -v


def erf_real(x):
    """Error function of a real argument (absolute accuracy ~1e-15)."""
    if np.ndim(x) == 0:
        return _erf_scalar(float(x))
    return np.vectorize(_erf_scalar, otypes=[float])(x)


def _erfi_scalar(x):
    ax = abs(x)
    if ax > ERFI_MAX_ARG:
        raise OverflowError(f"erfi argument |{x}| > {ERFI_MAX_ARG}")
    x2 = ax * ax
    # sum_k x^(2k+1) / (k! (2k+1)); ratio of successive x^(2k+1)/k! is x^2/k
    p = ax
    total = ax
    k = 0
    while True:
        k += 1
        p *= x2 / k
        t = p / (2 * k + 1)
        total += t
        if k > x2 and t <= 1e-17 * total:
            break
    v = _TWO_OVER_SQRTPI * total
    if not math.isfinite(v):
        raise OverflowError(f"erfi({x}) overflows double precision")
    return v if x >= 0 else -v


def erfi(x):
    """Imaginary error function erfi(x) = -i erf(ix) for real x."""
    if np.ndim(x) == 0:
        return _erfi_scalar(float(x))
    return np.vectorize(_erfi_scalar, otypes=[float])(x)


def erf_complex(z: complex, tol: float = 1e-300) -> complex:
    """erf at a purely real or purely imaginary point.

    Raises ValueError for a genuinely complex argument (both parts nonzero).
    """
    z = complex(z)
    if abs(z.imag) <= tol:
        return complex(_erf_scalar(z.real), 0.0)
    if abs(z.real) <= tol:
        return complex(0.0, _erfi_scalar(z.imag))
    raise ValueError(f"erf_complex supports purely real or imaginary arguments, got {z}")


def gauss_2f1_terminating(n: int, b: float, c: float, s: float) -> float:
    """2F1(-n, b; c; s) as the exact degree-n polynomial."""
    if n < 0 or int(n) != n:
        raise ValueError("n must be a non-negative integer")
    n = int(n)
    if c <= 0 and float(c).is_integer() and c > -n:
        raise ZeroDivisionError(f"2F1 pole: c = {c} hits zero in (c)_k for k <= {n}")
    term = 1.0
    total = 1.0
    for k in range(n):
        term *= (k - n) * (b + k) / ((c + k) * (k + 1)) * s
        total += term
    return total
