"""On-shell scattering matrix for single-junction hedgehog systems.

The junction couples the compact-part boundary pair (d, -c) with the lead
boundary pairs (a_i + b_i, ik (b_i - a_i)) through the unitary matrix U:

    (U - I) Psi + i (U + I) Psi' = 0,
    Psi  = (c F1(k), a + b),      Psi' = (-c, ik (b - a)),

where c is the Green's-function coefficient on the compact part, a the
incoming and b the outgoing lead amplitudes.  For every unit incoming
vector the (1+M)-row system is solved for (c, b); the b-columns form
S(k).  The orientation of the compact-part derivative entry (-c) is the
convention under which the decoupled junction gives S = I and all
S-matrix poles lie in the lower half-plane.

Analytic continuation is plain evaluation of the same finite formulas at
complex k.  The poles of S are the zeros of the reduced outgoing
determinant; eliminating the decoupling factor detD(k) leaves

    det Mat(k) / detD(k) = (u~(k) - 1) F1(k) - i (u~(k) + 1),

a function whose only poles are those of F1 and whose zeros coincide
with the resonances (with multiplicity).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import contour as ct
from .errors import DomainError, NotSupportedError, SingularSystemError
from .geometry import f1_eval, f1_poles_in_disc
from .model import HedgehogSystem, effective_coupling

__all__ = [
    "ScatteringSolve",
    "s_matrix",
    "s_identities_check",
    "reduced_outgoing_det",
    "s_pole_search",
]

#: Reciprocal condition number below which the solve is declared singular.
RCOND_SINGULAR = 1e-13


@dataclass(frozen=True)
class ScatteringSolve:
    """Result of a scattering solve at one momentum."""

    s_matrix: np.ndarray
    interior_amplitudes: np.ndarray
    condition_number: float
    momentum: complex


def _assembly(system: HedgehogSystem, k: complex):
    """Coefficient blocks of the junction system at momentum k.

    Returns (mat, a_block): mat columns are [c | b_1..b_M], and the
    right-hand side for incoming vector a is -a_block @ a.
    """
    if system.coupling.n_contacts != 1:
        raise NotSupportedError(
            "scattering solves support a single junction contact; "
            "multi-contact systems have no built-in S-matrix assembly")
    u = system.coupling.entries
    m = system.coupling.leads
    w1 = u - np.eye(1 + m)
    w2 = 1j * (u + np.eye(1 + m))
    f1 = f1_eval(system.geometry, k)
    lead = slice(1, 1 + m)
    mat = np.empty((1 + m, 1 + m), dtype=complex)
    mat[:, 0] = w1[:, 0] * f1 - w2[:, 0]
    mat[:, 1:] = w1[:, lead] + 1j * k * w2[:, lead]
    a_block = w1[:, lead] - 1j * k * w2[:, lead]
    return mat, a_block


def s_matrix(system: HedgehogSystem, k) -> ScatteringSolve:
    """Scattering matrix S(k) and the interior Green coefficient."""
    k = complex(k)
    if k == 0:
        raise DomainError("k = 0 is degenerate for the scattering solve")
    mat, a_block = _assembly(system, k)
    cond = float(np.linalg.cond(mat))
    if not np.isfinite(cond) or 1.0 / cond < RCOND_SINGULAR:
        raise SingularSystemError(
            f"scattering system singular at k = {k}: S-matrix pole or "
            "eigenfunction supported on the compact part")
    x = np.linalg.solve(mat, -a_block)
    return ScatteringSolve(s_matrix=x[1:, :], interior_amplitudes=x[0, :],
                           condition_number=cond, momentum=k)


def s_identities_check(system: HedgehogSystem, k, tolerance: float = 1e-10) -> dict:
    """Max-norm deviations of S(k) S(-k) = I and S(-k) = conj(S(conj(k)))."""
    k = complex(k)
    s_k = s_matrix(system, k).s_matrix
    s_mk = s_matrix(system, -k).s_matrix
    s_conj = s_matrix(system, np.conj(k)).s_matrix
    m = s_k.shape[0]
    dev_inverse = float(np.abs(s_k @ s_mk - np.eye(m)).max())
    dev_conj = float(np.abs(s_mk - np.conj(s_conj)).max())
    return {
        "momentum": k,
        "inverse_deviation": dev_inverse,
        "conjugation_deviation": dev_conj,
        "passed": dev_inverse <= tolerance and dev_conj <= tolerance,
        "tolerance": tolerance,
    }


def reduced_outgoing_det(system: HedgehogSystem, k):
    """det of the junction system with the decoupling factor detD removed.

    Vectorized over k; zeros are the S-matrix poles (= resonances), the
    only poles are those of F1.
    """
    karr = np.atleast_1d(np.asarray(k, dtype=complex))
    u = system.coupling.entries
    m = system.coupling.leads
    u4 = u[1:, 1:]
    eye_m = np.eye(m)
    out = np.empty_like(karr)
    f1 = np.atleast_1d(f1_eval(system.geometry, karr))
    for i, kk in enumerate(karr.ravel()):
        mat, _ = _assembly(system, kk)
        detd = np.linalg.det((1 - kk) * u4 - (1 + kk) * eye_m)
        out.ravel()[i] = np.linalg.det(mat) / detd
    del f1
    return complex(out[0]) if np.ndim(k) == 0 else out.reshape(np.shape(k))


def s_pole_search(system: HedgehogSystem, region, tol: float = 1e-10) -> list:
    """Poles of the analytically continued S-matrix inside a rectangle.

    region is (re_lo, re_hi, im_lo, im_hi) or a rectangle Contour.
    Returns RootRecords ordered by (Re, Im); multiplicities come from the
    winding counts of the reduced determinant.
    """
    if isinstance(region, ct.Contour):
        rect = region
    else:
        re_lo, re_hi, im_lo, im_hi = (float(x) for x in region)
        rect = ct.Contour.rectangle(complex(re_lo, im_lo), complex(re_hi, im_hi))
    radius = abs(rect.corner_lo) + abs(rect.corner_hi) + 1.0
    poles = f1_poles_in_disc(system.geometry, radius)
    # an F1 pole cancels in (u~-1) F1 - i (u~+1) wherever u~ = 1 there
    # (totally decoupled junctions have no S-matrix poles at all)
    if poles.size:
        ut = np.atleast_1d(effective_coupling(system.coupling, poles.astype(complex)))
        poles = poles[np.abs(ut - 1) > 1e-8]
    func = lambda k: reduced_outgoing_det(system, k)
    roots = ct.find_roots(func, rect, known_poles=poles, tol=tol)
    return roots
