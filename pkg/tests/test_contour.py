"""Argument-principle counting and root finding for meromorphic functions."""

import cmath
import math

import numpy as np
import pytest

from hedgehog.contour import (
    Contour,
    counting_function,
    find_roots,
    winding_count,
)
from hedgehog.errors import UnresolvedCellError

RNG = np.random.default_rng(777)


def random_rational(seed):
    """Random rational function with known zeros and poles in |z| < 2."""
    rng = np.random.default_rng(seed)
    n_zeros = rng.integers(0, 5)
    n_poles = rng.integers(0, 4)
    def box(n):
        pts = rng.uniform(-1.6, 1.6, n) + 1j * rng.uniform(-1.6, 1.6, n)
        # keep sampled points away from the |z| = 2 test circle
        return pts[np.abs(np.abs(pts) - 2.0) > 0.05]

    zeros = box(n_zeros)
    poles = box(n_poles)
    # keep zeros and poles separated so multiplicities stay unambiguous
    ok_z = [z for z in zeros if all(abs(z - p) > 0.1 for p in poles)]
    zeros = np.array(ok_z)

    def f(z):
        out = (1.0 + 0.3j) * np.ones_like(np.asarray(z, dtype=complex))
        for r in zeros:
            out = out * (z - r)
        for p in poles:
            out = out / (z - p)
        return out if np.ndim(z) else complex(out)

    return f, zeros, poles


def test_winding_exact_on_random_rationals():
    contour = Contour.circle(0j, 2.0)
    for seed in range(100):
        f, zeros, poles = random_rational(seed)
        z_in = sum(1 for z in zeros if abs(z) < 2.0)
        p_in = sum(1 for p in poles if abs(p) < 2.0)
        count = winding_count(f, contour, poles=list(poles))
        assert count.net == z_in - p_in
        assert count.zeros == z_in


def test_find_roots_recovers_constructed_zeros():
    region = Contour.rectangle(-2 - 2j, 2 + 2j)
    for seed in range(40):
        f, zeros, poles = random_rational(seed)
        roots = find_roots(f, region, known_poles=list(poles), tol=1e-12)
        assert sum(r.multiplicity for r in roots) == len(zeros)
        for z in zeros:
            assert min(abs(r.location - z) for r in roots) < 1e-9


def test_multiple_root_multiplicity():
    f = lambda z: (z - (1 - 1j)) ** 3 * (z + 0.5)
    roots = find_roots(f, Contour.rectangle(-2 - 2j, 2 + 2j), tol=1e-10)
    roots.sort(key=lambda r: r.location.real)
    assert [r.multiplicity for r in roots] == [1, 3]
    assert abs(roots[1].location - (1 - 1j)) < 1e-5


def test_entire_function_with_many_zeros():
    # sin z on |z| < 10: zeros at n*pi, |n| <= 3, plus 0
    count = winding_count(np.sin, Contour.circle(0j, 10.0))
    assert count.net == 7
    roots = find_roots(np.sin, Contour.rectangle(-10 - 1j, 10 + 1j), tol=1e-11)
    got = sorted(r.location.real for r in roots)
    assert np.allclose(got, [n * math.pi for n in range(-3, 4)], atol=1e-9)


def test_pole_corrected_counting():
    # tan has zeros at n*pi and poles at (n+1/2)*pi; net winding is the
    # difference, zeros need the declared poles to disentangle
    poles = [s * (n + 0.5) * math.pi for n in range(2) for s in (-1, 1)]
    count = winding_count(np.tan, Contour.circle(0j, 6.0), poles=poles)
    assert count.net == 3 - 4
    assert count.zeros == 3
    assert count.poles_enclosed == 4


def stable_tan_minus_i(k):
    """tan k - i without catastrophic cancellation deep in the half-planes."""
    arr = np.atleast_1d(np.asarray(k, dtype=complex))
    lower = arr.imag < 0
    out = np.empty_like(arr)
    out[lower] = -2j / (1.0 + np.exp(-2j * arr[lower]))
    e = np.exp(2j * arr[~lower])
    out[~lower] = -2j * e / (e + 1.0)
    return out.reshape(np.shape(k)) if np.ndim(k) else complex(out[0])


def test_tan_minus_i_never_vanishes():
    # the non-Weyl numerator: poles at (n+1/2)pi, no zeros at any radius
    for radius in (5.0, 10.0, 20.0):
        n_poles = 2 * int(radius / math.pi + 0.5)
        poles = [
            s * (n + 0.5) * math.pi
            for n in range(int(radius / math.pi + 0.5))
            for s in (-1, 1)
        ]
        count = winding_count(
            stable_tan_minus_i, Contour.circle(0j, radius), poles=poles
        )
        assert count.zeros == 0
        assert count.net == -n_poles


def test_counting_function_radii():
    rows = counting_function(np.sin, [2.0, 5.0, 8.0])
    assert [row["zeros"] for row in rows] == [1, 3, 5]
    assert all(row["net"] == row["zeros"] for row in rows)


def test_perturbation_stability():
    # winding counts are stable under 1e-9 perturbations of the function
    f, zeros, poles = random_rational(3)
    g = lambda z: f(z) * (1.0 + 1e-9) + 1e-12
    contour = Contour.circle(0j, 2.0)
    assert winding_count(g, contour, poles=list(poles)).net == len(zeros) - len(
        poles
    )


def test_contains_and_points():
    c = Contour.circle(1 + 1j, 2.0)
    assert c.contains(1 + 1j) and not c.contains(4 + 4j)
    r = Contour.rectangle(0j, 2 + 1j)
    assert r.contains(1 + 0.5j) and not r.contains(3 + 0.5j)
    pts = c.points(np.linspace(0.0, 1.0, 5))
    assert np.allclose(np.abs(pts - (1 + 1j)), 2.0)


def test_unresolved_cell_reports_partials():
    # a function whose "roots" cannot exist: declared pole that is not there
    f = lambda z: 1.0 + 0.0 * z
    with pytest.raises(UnresolvedCellError):
        find_roots(f, Contour.rectangle(-1 - 1j, 1 + 1j), known_poles=[0.2 + 0.1j])
