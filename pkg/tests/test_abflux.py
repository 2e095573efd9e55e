"""Half-flux disc with a central lead: no-true-resonance demonstration."""

import math

import mpmath
import numpy as np
import pytest

from hedgehog.abflux import (
    SQRT_PI,
    ChannelSolution,
    boundary_functionals,
    closed_form_incoming,
    coupling_residual,
    lead_profile,
    make_ab_system,
    outgoing_component,
    persistent_eigenvalues,
    solve_channel,
    true_resonance_scan,
)
from hedgehog.errors import (
    ConfigError,
    DomainError,
    NotSupportedError,
    SingularMomentumError,
)

mpmath.mp.dps = 30

SYSTEM = make_ab_system(1.0)


def test_system_validation():
    with pytest.raises(ConfigError):
        make_ab_system(-1.0)
    with pytest.raises(ConfigError):
        make_ab_system(1.0, alpha=1.5)
    u = make_ab_system(1.0, rho=0.7).coupling.entries
    assert abs(u[2, 2] - np.exp(0.7j)) < 1e-15
    assert u[0, 1] == 1.0 and u[1, 0] == 1.0


def test_boundary_functionals_examples():
    phi1, phi2 = boundary_functionals(
        SYSTEM, ChannelSolution(a=0, b=0, c=1, k=math.pi / 2)
    )
    assert np.allclose(phi1, [0.0, SQRT_PI, 0.0], atol=1e-15)
    assert np.max(np.abs(phi2)) < 1e-15
    phi1, phi2 = boundary_functionals(SYSTEM, ChannelSolution(a=1, b=0, c=0, k=2.3))
    assert np.max(np.abs(phi1)) == 0.0
    assert np.allclose(phi2, [2.3, 0.0, 0.0], atol=1e-15)


def test_functionals_conjugation():
    k = 1.4 - 0.6j
    sol = ChannelSolution(a=0.3 + 0.1j, b=-0.2j, c=1.1, k=k)
    conj_sol = ChannelSolution(
        a=np.conj(sol.a), b=np.conj(sol.b), c=np.conj(sol.c), k=np.conj(k)
    )
    p1, p2 = boundary_functionals(SYSTEM, sol)
    q1, q2 = boundary_functionals(SYSTEM, conj_sol)
    assert np.allclose(q1, np.conj(p1), atol=1e-14)
    assert np.allclose(q2, np.conj(p2), atol=1e-14)


def test_coupling_residual_family():
    for k in [1.7, 2.0 - 0.7j]:
        c = 0.8 + 0.2j
        sol = ChannelSolution(
            a=c * SQRT_PI * np.cos(k), b=c * SQRT_PI * np.sin(k), c=c, k=k
        )
        assert np.linalg.norm(coupling_residual(SYSTEM, sol)) < 1e-12
        zero = ChannelSolution(a=0, b=0, c=0, k=k)
        assert np.linalg.norm(coupling_residual(SYSTEM, zero)) == 0.0
        perturbed = ChannelSolution(a=sol.a, b=sol.b + 1.0, c=c, k=k)
        assert np.linalg.norm(coupling_residual(SYSTEM, perturbed)) >= 0.5


def test_outgoing_component_identities():
    # a = i, b = 1 gives cos kx + i sin kx = e^{ikx}: purely outgoing
    inc, out = outgoing_component(ChannelSolution(a=1j, b=1, c=0, k=1.0))
    assert inc == 0 and out == 1
    inc, out = outgoing_component(ChannelSolution(a=0, b=0, c=0, k=1.0))
    assert inc == 0 and out == 0


def test_solved_family_closed_forms():
    for k in [1.7 - 0.01j, 5.0 - 2.5j, 0.3 - 1.0j]:
        sol = solve_channel(SYSTEM, k)
        assert abs(sol.a - SQRT_PI * np.cos(k)) < 1e-10
        assert abs(sol.b - SQRT_PI * np.sin(k)) < 1e-10
        inc, _ = outgoing_component(sol)
        assert abs(inc - closed_form_incoming(SYSTEM, k)) < 1e-10
        assert abs(abs(inc) - (SQRT_PI / 2.0) * math.exp(k.imag)) < 1e-10
        for x in (0.0, 0.3, 1.1, 2.7, 5.0):
            assert abs(lead_profile(sol, x) - SQRT_PI * np.sin(k * (1.0 + x))) < 1e-10


def test_rho_independence():
    for rho in (0.0, math.pi / 2, math.pi):
        sol = solve_channel(make_ab_system(1.0, rho=rho), 2.0 - 0.5j)
        base = solve_channel(SYSTEM, 2.0 - 0.5j)
        assert abs(sol.a - base.a) < 1e-14 and abs(sol.b - base.b) < 1e-14


def test_solve_channel_degenerate_momentum():
    with pytest.raises(SingularMomentumError):
        solve_channel(SYSTEM, 0.0)


def test_scan_no_true_resonances():
    report = true_resonance_scan(SYSTEM, (0.1, 10.0, -3.0, -1e-3), 100, 100)
    assert report.n_points == 10000
    assert report.min_incoming_amp >= 0.04
    assert report.closed_form_deviation_max < 1e-10
    assert not report.trivial


def test_scan_trivial_and_refusals():
    assert true_resonance_scan(SYSTEM, (0.1, 10.0, -3.0, -1e-3), c=0).trivial
    with pytest.raises(NotSupportedError):
        true_resonance_scan(make_ab_system(1.0, alpha=0.3), (0.1, 10, -3, -1e-3))
    with pytest.raises(DomainError):
        true_resonance_scan(SYSTEM, (0.1, 10.0, -3.0, 0.0))


def test_persistent_eigenvalues():
    got = persistent_eigenvalues(SYSTEM, 1, 1)
    assert abs(got[0] - 4.493409457909064) < 1e-12
    # |m + 1/2| symmetry: m = -2 has the same order 3/2 as m = 1
    assert persistent_eigenvalues(SYSTEM, -2, 2) == persistent_eigenvalues(
        SYSTEM, 1, 2
    )
    # oracle: zeros of the half-integer Bessel function of order 5/2
    got = persistent_eigenvalues(SYSTEM, 2, 2)
    for k in got:
        assert abs(complex(mpmath.besselj(2.5, k))) < 1e-10
    # radius scaling
    scaled = persistent_eigenvalues(make_ab_system(2.0), 1, 1)
    assert abs(scaled[0] - 4.493409457909064 / 2.0) < 1e-12
    for bad in (0, -1):
        with pytest.raises(DomainError):
            persistent_eigenvalues(SYSTEM, bad, 1)
    with pytest.raises(ConfigError):
        persistent_eigenvalues(SYSTEM, 1, 0)


def test_selfadjointness_form_skew_symmetry():
    # (Phi1(x)* . Phi2(y)) - (Phi1(y)* . Phi2(x))-bar changes sign under swap
    s1 = solve_channel(SYSTEM, 2.0 - 0.3j)
    s2 = solve_channel(SYSTEM, 1.3 - 1.1j, c=0.5j)
    p11, p21 = boundary_functionals(SYSTEM, s1)
    p12, p22 = boundary_functionals(SYSTEM, s2)
    form = np.vdot(p11, p22) - np.conj(np.vdot(p12, p21))
    swapped = np.vdot(p12, p21) - np.conj(np.vdot(p11, p22))
    assert abs(form + np.conj(swapped)) < 1e-12
