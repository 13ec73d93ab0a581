import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skpflux.specfun import (
    ERFI_MAX_ARG,
    erf_complex,
    erf_real,
    erfi,
    gauss_2f1_terminating,
)


@pytest.mark.parametrize("x", [0.0, 1e-8, 0.3, 1.0, 2.49, 2.51, 4.0, 6.0, 27.5, -1.7])
def test_erf_matches_mpmath(x):
    assert abs(erf_real(x) - float(mpmath.erf(x))) <= 1e-15


def test_erf_odd_and_bounded():
    xs = np.linspace(-8, 8, 321)
    v = erf_real(xs)
    assert np.allclose(v, -erf_real(-xs), atol=0, rtol=0)
    assert np.all(np.abs(v) <= 1.0)
    assert np.all(np.diff(v) >= 0)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-26.0, max_value=26.0, allow_nan=False))
def test_erfi_relative_accuracy(x):
    ref = float(mpmath.erfi(x))
    got = erfi(x)
    if ref == 0:
        assert got == 0
    else:
        assert abs(got - ref) <= 1e-13 * abs(ref)


def test_erfi_small_argument_series():
    x = 1e-6
    assert erfi(x) == pytest.approx(2 * x / math.sqrt(math.pi), rel=1e-12)


def test_erfi_overflow_raises():
    with pytest.raises(OverflowError):
        erfi(ERFI_MAX_ARG + 1.0)


def test_erf_complex_imaginary_axis_is_i_erfi():
    for y in (0.1, 1.0, 5.0, -3.0):
        z = erf_complex(1j * y)
        assert z.real == 0.0
        assert z.imag == pytest.approx(erfi(y), rel=1e-15)


def test_erf_complex_real_axis():
    assert erf_complex(0.7 + 0j) == complex(erf_real(0.7), 0.0)


def test_erf_complex_rejects_general_point():
    with pytest.raises(ValueError):
        erf_complex(1.0 + 1.0j)


def test_2f1_terminating_against_mpmath():
    for n in range(6):
        for b, c, s in [(3.5, 2.2, 0.3), (10.0, 1.5, 0.9), (0.4, 7.0, 0.01)]:
            ref = float(mpmath.hyp2f1(-n, b, c, s))
            assert gauss_2f1_terminating(n, b, c, s) == pytest.approx(ref, rel=1e-13, abs=1e-15)


def test_2f1_degree_zero_is_one():
    assert gauss_2f1_terminating(0, 3.0, 2.0, 0.5) == 1.0


def test_2f1_pole_raises():
    with pytest.raises(ZeroDivisionError):
        gauss_2f1_terminating(3, 1.0, -1.0, 0.5)


def test_2f1_bad_degree():
    with pytest.raises(ValueError):
        gauss_2f1_terminating(-1, 1.0, 1.0, 0.5)
