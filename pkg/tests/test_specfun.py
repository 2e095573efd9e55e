"""Special-function layer against an independent high-precision oracle."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from hedgehog import errors
from hedgehog.specfun import (
    EULER_GAMMA,
    bessel_j0,
    bessel_j1,
    bessel_y0,
    bessel_y1,
    cot_c,
    j0_zeros,
    principal_log,
    tan_c,
)

mpmath.mp.dps = 40

RNG = np.random.default_rng(20260826)


def _sample_points():
    pts = list(0.1 + 49.9 * RNG.random(100))
    re = 0.1 + 19.9 * RNG.random(100)
    im = -5.0 + 10.0 * RNG.random(100)
    pts += [complex(a, b) for a, b in zip(re, im)]
    return pts


POINTS = _sample_points()


@pytest.mark.parametrize(
    "ours,oracle",
    [
        (bessel_j0, lambda z: mpmath.besselj(0, z)),
        (bessel_y0, lambda z: mpmath.bessely(0, z)),
        (bessel_j1, lambda z: mpmath.besselj(1, z)),
        (bessel_y1, lambda z: mpmath.bessely(1, z)),
    ],
    ids=["j0", "y0", "j1", "y1"],
)
def test_bessel_matches_oracle(ours, oracle):
    worst = 0.0
    for z in POINTS:
        ref = complex(oracle(z))
        got = complex(ours(z))
        rel = abs(got - ref) / max(abs(ref), 1e-300)
        worst = max(worst, rel)
    assert worst < 1e-10, f"worst relative error {worst:.3e}"


def test_wronskian_identity():
    # J1(z) Y0(z) - J0(z) Y1(z) = 2/(pi z)
    for z in POINTS[:100]:
        lhs = bessel_j1(z) * bessel_y0(z) - bessel_j0(z) * bessel_y1(z)
        assert abs(lhs - 2.0 / (math.pi * z)) <= 1e-9 * abs(lhs)


def test_bessel_small_argument_series_anchor():
    assert abs(bessel_j0(1e-8) - 1.0) < 1e-15
    ref = complex(mpmath.bessely(0, mpmath.mpf("0.001")))
    assert abs(bessel_y0(0.001) - ref) < 1e-12


def test_principal_log_branch():
    assert abs(principal_log(-1.0 + 0j).imag - math.pi) < 1e-15
    assert abs(principal_log(1j) - 1j * math.pi / 2) < 1e-15
    z = 2.0 - 3.0j
    assert abs(principal_log(z) - cmath.log(z)) < 1e-15


def test_tan_cot_stable_forms():
    for z in [0.3, 1.2 - 0.7j, 2.0 + 30j, 2.0 - 30j]:
        ref = complex(mpmath.tan(z))
        assert abs(complex(tan_c(z)) - ref) <= 1e-12 * max(1.0, abs(ref))
        ref = complex(mpmath.cot(z))
        assert abs(complex(cot_c(z)) - ref) <= 1e-12 * max(1.0, abs(ref))
    # deep in the half-plane tan tends to +/- i without overflow
    assert abs(complex(tan_c(1.0 + 400j)) - 1j) < 1e-15
    assert abs(complex(tan_c(1.0 - 400j)) + 1j) < 1e-15


def test_tan_pole_guard():
    with pytest.raises(errors.PoleError):
        tan_c(math.pi / 2)
    with pytest.raises(errors.PoleError):
        cot_c(math.pi)


def test_j0_zeros_against_oracle():
    zeros = j0_zeros(10)
    for n, z in enumerate(zeros, start=1):
        ref = float(mpmath.besseljzero(0, n))
        assert abs(z - ref) < 1e-12


def test_euler_gamma_constant():
    assert abs(EULER_GAMMA - float(mpmath.euler)) < 1e-15
