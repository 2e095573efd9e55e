"""Resonance location, classification, counting, and strip confinement."""

import math

import numpy as np
import pytest

from hedgehog.contour import Contour, winding_count
from hedgehog.errors import DomainError, NotSupportedError
from hedgehog.geometry import make_geometry
from hedgehog.model import HedgehogSystem, preset_coupling
from hedgehog.resonance import (
    Q0Matrix,
    counting_report,
    declared_poles,
    find_resonances,
    q0_matrix,
    resonance_det,
    resonance_function,
    strip_bound,
)

SHUTTLE = preset_coupling("custom", 1, {"matrix": [[0, 1], [1, 0]]})
INTERVAL = make_geometry("interval", 1.0)


def shuttle_system():
    return HedgehogSystem(geometry=INTERVAL, leads=1, coupling=SHUTTLE)


def dirichlet_system():
    return HedgehogSystem(
        geometry=INTERVAL, leads=1, coupling=preset_coupling("dirichlet_junction", 1)
    )


def test_shuttle_analytic_family():
    # F = (tan k + 2i)/(2k): zeros at (2n+1)pi/2 - (i/2) ln 3
    found = find_resonances(shuttle_system(), (0.2, 10.0, -2.0, 0.01))
    expected = [
        complex((2 * n + 1) * math.pi / 2.0, -0.5 * math.log(3.0)) for n in range(3)
    ]
    assert len(found) == 3
    for r, e in zip(found, expected):
        assert abs(r.location - e) < 1e-8
        assert r.kind == "true_resonance"
        assert r.multiplicity == 1


def test_dirichlet_embedded_eigenvalues():
    found = find_resonances(dirichlet_system(), (0.2, 10.0, -2.0, 0.01))
    assert [r.kind for r in found] == ["embedded_eigenvalue"] * 3
    assert np.allclose(
        [r.location.real for r in found], [math.pi, 2 * math.pi, 3 * math.pi],
        atol=1e-9,
    )
    assert all(abs(r.location.imag) < 1e-10 for r in found)


def test_reflection_symmetry():
    # F(-conj k) = conj F(k) for the built-ins: mirrored resonances exist
    sys1 = shuttle_system()
    right = find_resonances(sys1, (0.2, 5.0, -2.0, 0.01))
    left = find_resonances(sys1, (-5.0, -0.2, -2.0, 0.01))
    assert len(right) == len(left)
    mirrored = sorted((-np.conj(r.location) for r in left), key=lambda z: z.real)
    for a, b in zip(right, mirrored):
        assert abs(a.location - b) < 1e-9
    for k in [1.0 - 0.4j, 3.2 - 1.1j]:
        assert abs(
            resonance_function(sys1, -np.conj(k))
            - np.conj(resonance_function(sys1, k))
        ) < 1e-12


def test_pole_disjointness():
    sys1 = shuttle_system()
    found = find_resonances(sys1, (0.2, 10.0, -2.0, 0.01))
    poles = declared_poles(sys1, 11.0)
    for r in found:
        assert min(abs(r.location - p) for p in poles) > 1e-9


def test_winding_consistency():
    sys1 = shuttle_system()
    region = (0.2, 10.0, -2.0, 0.01)
    found = find_resonances(sys1, region)
    contour = Contour.rectangle(complex(region[0], region[2]), complex(region[1], region[3]))
    poles = [p for p in declared_poles(sys1, 12.0) if contour.contains(p)]
    count = winding_count(lambda k: resonance_function(sys1, k), contour, poles=poles)
    assert count.zeros == sum(r.multiplicity for r in found)


def test_counting_non_weyl_vs_weyl():
    kir2 = HedgehogSystem(
        geometry=INTERVAL, leads=2, coupling=preset_coupling("kirchhoff", 2)
    )
    rows = counting_report(kir2, [10.0, 20.0, 40.0])
    assert [row["count"] for row in rows] == [0, 0, 0]

    rows = counting_report(dirichlet_system(), [10.0, 20.0, 40.0])
    assert [row["count"] for row in rows] == [
        2 * math.floor(R / math.pi) for R in (10.0, 20.0, 40.0)
    ]


def test_counting_weyl_shuttle():
    rows = counting_report(shuttle_system(), [10.0, 20.0])
    expected = [
        2 * sum(1 for n in range(50) if (2 * n + 1) * math.pi / 2 < R)
        for R in (10.0, 20.0)
    ]
    assert [row["count"] for row in rows] == expected


def test_strip_bound_shuttle_constant_width():
    rep = strip_bound(
        shuttle_system(), [(0.2, 10.0, -2.0, 0.01), (0.2, 20.0, -2.0, 0.01)]
    )
    assert rep.stable
    assert abs(rep.max_abs_im[-1] - 0.5 * math.log(3.0)) < 1e-9


def test_strip_bound_needs_two_windows():
    with pytest.raises(DomainError):
        strip_bound(shuttle_system(), [(0.2, 10.0, -2.0, 0.01)])


def test_q0_matrix_single_contact():
    sys1 = shuttle_system()
    q0 = q0_matrix(sys1, 1.3 - 0.2j)
    assert q0.values.shape == (1, 1)
    iv = make_geometry("interval", 1.0)
    assert abs(q0.values[0, 0] - iv.f1(1.3 - 0.2j)) < 1e-13


def test_resonance_det_single_contact_identity():
    # det[(u-1)Q0 - i(u+1)] = (u-1) * (F1 - i(u+1)/(u-1)) = (u-1) * F(k)
    sys1 = shuttle_system()
    from hedgehog.model import effective_coupling

    for k in [1.1 - 0.5j, 2.7 - 1.3j]:
        q0 = q0_matrix(sys1, k)
        u = np.atleast_2d(effective_coupling(sys1.coupling, k))
        det = resonance_det(k, q0, u)
        direct = (u[0, 0] - 1.0) * resonance_function(sys1, k)
        assert abs(det - direct) < 1e-12


def test_multi_contact_refusal():
    from hedgehog.model import CouplingMatrix

    coupling = CouplingMatrix(np.eye(3, dtype=complex), n_contacts=2)
    sys2 = HedgehogSystem(geometry=INTERVAL, leads=1, coupling=coupling)
    with pytest.raises(NotSupportedError):
        q0_matrix(sys2, 1.0)


def test_origin_exclusion_band():
    # searches spanning the origin skip |Re k| < 0.1 without failing
    found = find_resonances(shuttle_system(), (-5.0, 5.0, -2.0, 0.01))
    assert all(abs(r.location.real) > 0.1 for r in found)
    assert len(found) == 4  # +-pi/2, +-3pi/2 rows


def test_negative_count_guard():
    with pytest.raises(DomainError):
        counting_report(shuttle_system(), [-1.0])
