"""Regularized Green's functions of the compact parts."""

import math

import mpmath
import numpy as np
import pytest

from hedgehog.errors import BranchCutError, DomainError, NotSupportedError, PoleError
from hedgehog.geometry import (
    f1_eval,
    f1_poles_in_disc,
    f1_series_eval,
    make_geometry,
)
from hedgehog.specfun import EULER_GAMMA

mpmath.mp.dps = 40

RNG = np.random.default_rng(42)


def test_interval_closed_form():
    iv = make_geometry("interval", 1.0)
    for k in [0.7, 1.9 - 0.4j, 3.3 + 1.1j]:
        ref = complex(mpmath.tan(k)) / (2.0 * k)
        assert abs(f1_eval(iv, k) - ref) < 1e-13


def test_interval_origin_limit():
    iv = make_geometry("interval", 2.0)
    # tan(kl)/(2k) -> l/2 as k -> 0
    assert abs(f1_eval(iv, 1e-10) - 1.0) < 1e-9


def test_interval_series_identity():
    iv = make_geometry("interval", 1.0)
    for _ in range(20):
        k = complex(RNG.uniform(0.3, 6.0), RNG.uniform(-2.0, 2.0))
        if abs(k.imag) < 0.05:  # keep away from the real poles of tan
            k += 0.3j
        closed = f1_eval(iv, k)
        series = f1_series_eval(iv, k, 100000)
        assert abs(series - closed) < 1e-6


def test_interval_series_tail_correction_matters():
    iv = make_geometry("interval", 1.0)
    k = 2.0 - 1.0j
    closed = f1_eval(iv, k)
    with_tail = f1_series_eval(iv, k, 2000)
    without_tail = f1_series_eval(iv, k, 2000, tail_correction=False)
    assert abs(with_tail - closed) < 1e-7
    assert abs(without_tail - closed) > 1e-5


def test_disc_reference_value():
    # independent oracle: -(1/2pi)(log k - log 2 + gamma) + Y0(kR)/(4 J0(kR))
    disc = make_geometry("disc", math.pi)
    for k in [0.6, 2.0 + 1.0j, 3.0 - 2.0j]:
        ref = complex(
            -(mpmath.log(k) - mpmath.log(2) + mpmath.euler) / (2 * mpmath.pi)
            + mpmath.bessely(0, k * mpmath.pi) / (4 * mpmath.besselj(0, k * mpmath.pi))
        )
        assert abs(f1_eval(disc, k) - ref) < 1e-12


def test_disc_continuous_across_negative_axis():
    disc = make_geometry("disc", 1.0)
    above = f1_eval(disc, -2.0 + 1e-9j)
    below = f1_eval(disc, -2.0 - 1e-9j)
    assert abs(above - below) < 1e-6


def test_disc_domain_errors():
    disc = make_geometry("disc", 1.0)
    with pytest.raises(DomainError):
        f1_eval(disc, 0.0)
    with pytest.raises(BranchCutError):
        f1_eval(disc, -1.5)


def test_ball_closed_form():
    ball = make_geometry("ball", 1.0)
    for k in [0.8, 1.7 - 0.9j]:
        ref = -(k / (4 * math.pi)) * complex(mpmath.cot(k))
        assert abs(f1_eval(ball, k) - ref) < 1e-13
    # k -> 0 limit of -(k/4pi) cot(kR) is -1/(4 pi R)
    assert abs(f1_eval(ball, 1e-10) - (-1.0 / (4 * math.pi))) < 1e-9


def test_poles_in_disc():
    iv = make_geometry("interval", 1.0)
    poles = sorted(f1_poles_in_disc(iv, 10.0).real.tolist())
    expected = [s * (n + 0.5) * math.pi for n in range(3) for s in (-1, 1)]
    assert len(poles) == 6
    assert np.allclose(poles, sorted(expected), atol=1e-10)

    ball = make_geometry("ball", 1.0)
    bp = sorted(f1_poles_in_disc(ball, 7.0).real.tolist())
    assert np.allclose(bp, [-2 * math.pi, -math.pi, math.pi, 2 * math.pi], atol=1e-10)

    disc = make_geometry("disc", 1.0)
    dp = sorted(p for p in f1_poles_in_disc(disc, 9.0).real.tolist() if p > 0)
    assert np.allclose(
        dp, [float(mpmath.besseljzero(0, n)) for n in (1, 2, 3)], atol=1e-10
    )


def test_pole_proximity_guard():
    iv = make_geometry("interval", 1.0)
    with pytest.raises(PoleError):
        f1_eval(iv, math.pi / 2)


@pytest.mark.parametrize(
    "kind,size",
    [("interval", 1.0), ("disc", math.pi), ("ball", 1.0)],
)
def test_asymptotic_leading_halving(kind, size):
    geo = make_geometry(kind, size)
    errs = []
    for y in (5.0, 10.0, 20.0, 40.0):
        k = 0.8 + 1j * y
        errs.append(abs(f1_eval(geo, k) - geo.asymptotic_leading(k)))
    # the deviation must at least shrink geometrically until it reaches the
    # double-precision roundoff floor
    for a, b in zip(errs, errs[1:]):
        assert b <= 0.75 * a + 1e-15


def test_asymptotic_leading_lower_half_mirror():
    for kind, size in [("interval", 1.0), ("disc", math.pi), ("ball", 1.0)]:
        geo = make_geometry(kind, size)
        k = 0.8 + 12.0j
        up = geo.asymptotic_leading(k)
        down = geo.asymptotic_leading(np.conj(k))
        assert abs(down - np.conj(up)) < 1e-13


def test_disc_upper_half_anchor():
    # continuation along the imaginary axis: F1 at k = 10i for the pi-disc
    disc = make_geometry("disc", math.pi)
    val = f1_eval(disc, 10j)
    lead = -(np.log(-1j * 10j) - math.log(2.0) + EULER_GAMMA) / (2 * math.pi)
    assert abs(val - lead) < 5e-3
    assert abs(val - (-0.3480)) < 1e-3


def test_custom_backend_and_unsupported():
    geo = make_geometry("interval", 1.0)
    with pytest.raises(NotSupportedError):
        geo.green_off_diagonal(1.0, 0.2, 0.4)
    with pytest.raises(DomainError):
        make_geometry("interval", -1.0)
    with pytest.raises(DomainError):
        make_geometry("torus", 1.0)
