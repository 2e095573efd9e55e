"""Resonance condition, root search, counting, and strip confinement.

For a single junction the resonance condition reads

    F(k) = F1(k) - i (u~(k) + 1) / (u~(k) - 1) = 0,

where F1 is the regularized Green's value of the compact part and u~ the
effective (Schur-complement) coupling.  The sign of the coupling term is
the convention under which all resonances land in the closed lower
half-plane, verified against the analytic interval/shuttle family
k = (2n+1)pi/2 - (i/2) ln 3; the opposite sign mirrors them upward.

Counting on large circles needs care for one-dimensional compact parts:
deep in the half-planes F(k) is an exponentially small difference of
O(1) terms and direct evaluation loses all phase information.  The
counting path therefore rewrites 2k cos(kl) (u~-1) detD * F(k) as the
entire "characteristic" combination

    H(k) = e^{ikl} P+(k) + e^{-ikl} P-(k),
    P+-(k) = i k p(k) -+ (i/2) q(k),
    p = (u~+1) detD,   q = (u~-1) detD        (polynomials, deg <= M),

whose evaluation is stable everywhere; the zero count of F is then
recovered by subtracting the known multiplier zeros (the origin and the
roots of q) and adding back the declared poles of the coupling term.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import contour as ct
from .errors import DomainError, NotSupportedError
from .geometry import CustomBackend, IntervalBackend, f1_eval, f1_poles_in_disc
from .model import (HedgehogSystem, coupling_term_poles, effective_coupling,
                    effective_coupling_term)

__all__ = [
    "Resonance",
    "Q0Matrix",
    "StripReport",
    "EPSILON",
    "RE_EXCLUSION",
    "resonance_function",
    "resonance_det",
    "q0_matrix",
    "declared_poles",
    "find_resonances",
    "counting_report",
    "strip_bound",
]

#: Classification band: |Im k| <= EPSILON is an embedded eigenvalue.
EPSILON = 1e-8
#: Searches exclude |Re k| < RE_EXCLUSION (degenerate boundary map at k = 0).
RE_EXCLUSION = 0.1


@dataclass(frozen=True)
class Resonance:
    """A zero of the resonance function."""

    location: complex
    multiplicity: int
    kind: str          # "true_resonance" | "embedded_eigenvalue"
    residual: float


@dataclass(frozen=True)
class Q0Matrix:
    """Junction Green's matrix: diagonal F1 values, off-diagonal Green values."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DomainError("Q0 matrix must be square")
        if not np.allclose(v, v.T, rtol=0, atol=1e-10 * (1 + np.abs(v).max())):
            raise DomainError("Q0 matrix must be symmetric")
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class StripReport:
    """Strip-confinement evidence over nested search windows."""

    search_windows: tuple
    max_abs_im: tuple
    stable: bool
    resonances: tuple = field(default=(), repr=False)


def resonance_function(system: HedgehogSystem, k):
    """F(k) = F1(k) - i (u~+1)/(u~-1); zeros are the resonances."""
    f1 = f1_eval(system.geometry, k)
    term = effective_coupling_term(system.coupling, k)
    return f1 - term


def resonance_det(k, q0: Q0Matrix, utilde: np.ndarray):
    """det[(U~ - I) Q0 - i (U~ + I)] for the multi-contact condition.

    For dim 1 this equals (u~ - 1) * (single-junction resonance function).
    """
    u = np.asarray(utilde, dtype=complex)
    if u.shape != (q0.dim, q0.dim):
        raise DomainError("effective coupling and Q0 dimensions disagree")
    eye = np.eye(q0.dim)
    return complex(np.linalg.det((u - eye) @ q0.values - 1j * (u + eye)))


def q0_matrix(system: HedgehogSystem, k, points=None) -> Q0Matrix:
    """Junction Green's matrix at momentum k.

    Built-in geometries support a single contact only (1x1 matrix of F1);
    asking for more contacts requires a custom backend supplying
    off-diagonal Green values at explicit contact points.
    """
    n = system.coupling.n_contacts
    if n == 1:
        return Q0Matrix(np.array([[f1_eval(system.geometry, k)]]))
    if not isinstance(system.geometry, CustomBackend):
        raise NotSupportedError(
            "multi-contact Q0 matrices require a custom geometry backend "
            "with off-diagonal Green values; built-ins expose the single "
            "junction value only")
    if points is None or len(points) != n:
        raise DomainError("q0_matrix needs one contact point per contact")
    vals = np.empty((n, n), dtype=complex)
    for i in range(n):
        vals[i, i] = f1_eval(system.geometry, k)
        for j in range(i + 1, n):
            g = system.geometry.green_off_diagonal(points[i], points[j], k)
            vals[i, j] = vals[j, i] = g
    return Q0Matrix(vals)


def declared_poles(system: HedgehogSystem, radius: float) -> np.ndarray:
    """Simple poles of the resonance function with |k| < radius:
    poles of F1 plus the poles of the coupling term (zeros of u~ - 1)."""
    f1p = f1_poles_in_disc(system.geometry, radius)
    ctp = coupling_term_poles(system.coupling)
    ctp = ctp[np.abs(ctp) < radius] if ctp.size else ctp
    return np.concatenate([f1p.astype(complex), ctp])


def _classify(root: ct.RootRecord) -> Resonance:
    kind = ("embedded_eigenvalue" if abs(root.location.imag) <= EPSILON
            else "true_resonance")
    return Resonance(location=root.location, multiplicity=root.multiplicity,
                     kind=kind, residual=root.residual)


def _region_rectangles(region):
    """Normalize a region to rectangles avoiding |Re k| < RE_EXCLUSION."""
    if isinstance(region, ct.Contour):
        if region.kind != "rectangle":
            raise DomainError("find_resonances expects a rectangular region")
        lo, hi = region.corner_lo, region.corner_hi
    else:
        re_lo, re_hi, im_lo, im_hi = (float(x) for x in region)
        lo, hi = complex(re_lo, im_lo), complex(re_hi, im_hi)
    rects = []
    if lo.real < -RE_EXCLUSION:
        rects.append(ct.Contour.rectangle(lo, complex(min(hi.real, -RE_EXCLUSION), hi.imag)))
    if hi.real > RE_EXCLUSION:
        rects.append(ct.Contour.rectangle(complex(max(lo.real, RE_EXCLUSION), lo.imag), hi))
    if not rects:
        raise DomainError(
            f"search region lies entirely inside the excluded band |Re k| < {RE_EXCLUSION}")
    return rects


def find_resonances(system: HedgehogSystem, region, tol: float = 1e-10) -> list[Resonance]:
    """All resonances in a rectangular region (re_lo, re_hi, im_lo, im_hi).

    The band |Re k| < 0.1 around the origin is excluded from the search.
    Roots are classified by the |Im k| <= 1e-8 band and ordered by
    (Re, Im).  A root in the open upper half-plane beyond the band
    indicates a broken sign convention and triggers a warning.
    """
    rects = _region_rectangles(region)
    radius = max(abs(r.corner_lo) + abs(r.corner_hi) for r in rects) + 1.0
    poles = declared_poles(system, radius)
    func = lambda k: resonance_function(system, k)
    out: list[Resonance] = []
    for rect in rects:
        for rec in ct.find_roots(func, rect, known_poles=poles, tol=tol):
            if poles.size and np.min(np.abs(rec.location - poles)) <= 10 * tol:
                continue    # Newton drifted onto a declared pole
            out.append(_classify(rec))
    for res in out:
        if res.location.imag > EPSILON:
            warnings.warn(
                f"resonance at {res.location} lies in the open upper half-plane; "
                "the coupling-term sign convention may be mirrored",
                stacklevel=2)
    out.sort(key=lambda r: (r.location.real, r.location.imag))
    return out


# -- stable counting for one-dimensional compact parts --------------------

def _coupling_polynomials(coupling):
    """Fit p(k) = (u~+1) detD and q(k) = (u~-1) detD as polynomials.

    detD is the determinant of (1-k) U4 - (1+k) I.  Both products are
    polynomials of degree <= M (number of leads); they are recovered by
    least-squares interpolation on a circle of sample momenta and
    coefficients below 1e-10 of the largest are truncated to exact zeros
    (this removes structurally vanishing combinations that pointwise
    evaluation cannot distinguish from roundoff).
    """
    u1, u2, u3, u4 = coupling.blocks()
    m = coupling.leads
    deg = m
    eye = np.eye(m)
    for rad in (0.7, 0.9, 1.3):
        ks = rad * np.exp(2j * np.pi * (np.arange(2 * deg + 6) + 0.31) / (2 * deg + 6))
        try:
            ut = effective_coupling(coupling, ks)
        except Exception:
            continue
        detd = np.array([np.linalg.det((1 - k) * u4 - (1 + k) * eye) for k in ks])
        p = np.polynomial.polynomial.polyfit(ks, (np.asarray(ut) + 1) * detd, deg)
        q = np.polynomial.polynomial.polyfit(ks, (np.asarray(ut) - 1) * detd, deg)
        return _truncate_poly(p), _truncate_poly(q)
    raise DomainError("could not sample the effective coupling on any probe circle")


def _truncate_poly(c, scale=None):
    c = np.asarray(c, dtype=complex)
    top = np.abs(c).max() if scale is None else float(scale)
    if top == 0:
        return c
    c = np.where(np.abs(c) < 1e-10 * top, 0.0, c)
    return c


def _poly_roots(c):
    c = np.trim_zeros(np.asarray(c, dtype=complex), "b")
    if c.size <= 1:
        return np.zeros(0, dtype=complex)
    return np.polynomial.polynomial.polyroots(c)


def _interval_characteristic(system: HedgehogSystem):
    """Entire function H with zeros(F) = zeros(H) - Z_mult + declared poles.

    Returns (H, q_roots) where H(k) = e^{ikl} P+(k) + e^{-ikl} P-(k).
    """
    p, q = _coupling_polynomials(system.coupling)
    ell = system.geometry.size
    # P+- = i k p -+ (i/2) q
    kp = 1j * np.concatenate([[0.0], p])
    pad = max(kp.size, q.size)
    kp = np.pad(kp, (0, pad - kp.size))
    qq = np.pad(q.astype(complex), (0, pad - q.size))
    scale = max(np.abs(kp).max(), np.abs(qq).max())
    p_plus = _truncate_poly(kp - 0.5j * qq, scale)
    p_minus = _truncate_poly(kp + 0.5j * qq, scale)

    def char(k):
        karr = np.asarray(k, dtype=complex)
        a = np.polynomial.polynomial.polyval(karr, p_plus)
        b = np.polynomial.polynomial.polyval(karr, p_minus)
        return np.exp(1j * karr * ell) * a + np.exp(-1j * karr * ell) * b

    return char, _poly_roots(q)


def _count_one_radius(system: HedgehogSystem, radius: float) -> dict:
    geo = system.geometry
    ctp = coupling_term_poles(system.coupling)
    ctp_in = int(np.count_nonzero(np.abs(ctp) < radius)) if ctp.size else 0
    if isinstance(geo, IntervalBackend):
        char, q_roots = _interval_characteristic(system)
        row = ct.counting_function(char, [radius])[0]
        q_in = int(np.count_nonzero(np.abs(q_roots) < radius)) if q_roots.size else 0
        # H = 2k cos(kl) q(k) F(k): remove the multiplier's origin zero and
        # the q zeros, add back the coupling-term poles (F1 poles cancel).
        n = row["zeros"] - 1 - q_in + ctp_in
        return {"radius": radius, "count": int(n), "net": row["net"],
                "samples": row["samples"]}
    poles = declared_poles(system, 2 * radius)
    row = ct.counting_function(lambda k: resonance_function(system, k),
                               [radius], known_poles=poles)[0]
    return {"radius": radius, "count": int(row["zeros"]), "net": row["net"],
            "samples": row["samples"]}


def counting_report(system: HedgehogSystem, radii) -> list[dict]:
    """Zero counts N(R) of the resonance function for each radius."""
    rows = [_count_one_radius(system, float(r)) for r in radii]
    for row in rows:
        if row["count"] < 0:
            raise DomainError(
                f"negative zero count at radius {row['radius']}: "
                "pole declarations are inconsistent")
    return rows


def strip_bound(system: HedgehogSystem, windows, tol: float = 1e-10) -> StripReport:
    """Resonance searches over nested windows; reports max |Im k| per window
    and whether it is stable (< 5% change between the two largest)."""
    windows = [tuple(float(x) for x in w) for w in windows]
    if len(windows) < 2:
        raise DomainError("strip_bound needs at least two windows")
    maxima = []
    found = []
    for w in windows:
        res = find_resonances(system, w, tol=tol)
        found.append(tuple(res))
        maxima.append(max((abs(r.location.imag) for r in res), default=0.0))
    a, b = maxima[-2], maxima[-1]
    stable = abs(b - a) < 0.05 * max(a, 1e-12) or (a == 0.0 and b == 0.0)
    return StripReport(search_windows=tuple(windows), max_abs_im=tuple(maxima),
                       stable=bool(stable), resonances=tuple(found))
