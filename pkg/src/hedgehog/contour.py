"""Argument-principle machinery: winding counts and root isolation.

winding_count samples a function along a closed contour and unwraps the
phase adaptively, bisecting every arc whose phase step reaches pi/2; the
net count (zeros minus poles, with multiplicity) is then the exact total
phase increment divided by 2 pi.  find_roots quadrisects rectangles whose
pole-corrected count is positive until each cell is smaller than 64 * tol
and polishes the surviving cells with a Newton iteration using a central
difference derivative; stagnating iterations switch to the modified step
m * f / f' for multiplicity-m cells.

Poles are handled by declaration: the caller supplies known pole
locations with multiplicities (analytically known for every built-in
geometry), and the zero count inside a contour is net + declared pole
multiplicity enclosed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (DomainError, OnContourSingularityError,
                     UnresolvedCellError)

__all__ = [
    "Contour",
    "ContourCount",
    "RootRecord",
    "winding_count",
    "find_roots",
    "counting_function",
]

#: Phase-step bound for adaptive unwrapping (radians); safety factor 2
#: below the pi aliasing limit.
PHASE_STEP_BOUND = np.pi / 2
#: Modulus-step bound: |delta ln|f|| above this triggers refinement too.
#: Together with the phase bound and corner samples this prevents a
#: near-contour zero of multiplicity up to ~10 from aliasing a full turn.
MODULUS_STEP_BOUND = 0.5
#: Default refinement policy.
DEFAULT_POLICY = {"initial_samples": 64, "max_refinement_depth": 40}
#: Cell is handed to Newton once its diameter falls below this multiple of tol.
CELL_DIAMETER_FACTOR = 64.0
#: Fractional offsets tried when a contour edge hits a singular value.
SPLIT_RETRIES = (0.5, 0.503, 0.497, 0.51, 0.52)
#: Radius perturbations tried by counting_function on singular circles.
RADIUS_RETRIES = (0.0, 1e-3, -1e-3, 2e-3, -2e-3)
#: Fixed irrational sample offset: keeps samples off exact axis crossings
#: (origin-centred circles would otherwise hit branch cuts head-on).
SAMPLE_OFFSET = 0.1010678118654755


@dataclass(frozen=True)
class Contour:
    """A positively oriented circle or axis-aligned rectangle."""

    kind: str                      # "circle" | "rectangle"
    center: complex = 0j
    radius: float = 0.0
    corner_lo: complex = 0j        # rectangle: lower-left
    corner_hi: complex = 0j        # rectangle: upper-right

    @staticmethod
    def circle(center, radius) -> "Contour":
        if not radius > 0:
            raise DomainError("circle radius must be positive")
        return Contour("circle", center=complex(center), radius=float(radius))

    @staticmethod
    def rectangle(corner_lo, corner_hi) -> "Contour":
        lo, hi = complex(corner_lo), complex(corner_hi)
        if not (hi.real > lo.real and hi.imag > lo.imag):
            raise DomainError("rectangle corners must satisfy lo < hi componentwise")
        return Contour("rectangle", corner_lo=lo, corner_hi=hi)

    def points(self, t: np.ndarray) -> np.ndarray:
        """Map parameters t in [0, 1) onto the contour."""
        if self.kind == "circle":
            return self.center + self.radius * np.exp(2j * np.pi * t)
        lo, hi = self.corner_lo, self.corner_hi
        w, h = hi.real - lo.real, hi.imag - lo.imag
        per = 2 * (w + h)
        s = np.asarray(t) * per
        z = np.empty(np.shape(s), dtype=complex)
        m0 = s < w
        m1 = (~m0) & (s < w + h)
        m2 = (~m0) & (~m1) & (s < 2 * w + h)
        m3 = ~(m0 | m1 | m2)
        z[m0] = lo + s[m0]
        z[m1] = complex(hi.real, lo.imag) + 1j * (s[m1] - w)
        z[m2] = hi - (s[m2] - w - h)
        z[m3] = complex(lo.real, hi.imag) - 1j * (s[m3] - 2 * w - h)
        return z

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.kind == "circle":
            return np.abs(z - self.center) < self.radius
        lo, hi = self.corner_lo, self.corner_hi
        return ((z.real > lo.real) & (z.real < hi.real)
                & (z.imag > lo.imag) & (z.imag < hi.imag))


@dataclass(frozen=True)
class ContourCount:
    """Result of a winding evaluation: net = zeros - poles inside."""

    net: int
    samples_used: int
    min_modulus_on_contour: float
    zeros: int = 0                 # net + declared pole multiplicity enclosed
    poles_enclosed: int = 0


@dataclass(frozen=True)
class RootRecord:
    """A polished root with Newton diagnostics."""

    location: complex
    multiplicity: int
    residual: float
    newton_iterations: int


def _normalize_poles(poles):
    """Accept plain locations or (location, multiplicity) pairs."""
    locs, mults = [], []
    for p in poles:
        if isinstance(p, tuple):
            locs.append(complex(p[0]))
            mults.append(int(p[1]))
        else:
            locs.append(complex(p))
            mults.append(1)
    return np.asarray(locs, dtype=complex), np.asarray(mults, dtype=int)


def _phases_adaptive(func, contour: Contour, policy):
    """Sample func along the contour, refining until phase steps < pi/2.

    Returns (total_phase_increment, n_samples, min_modulus).
    """
    n0 = int(policy.get("initial_samples", 64))
    depth = int(policy.get("max_refinement_depth", 40))
    t = (np.arange(n0) + SAMPLE_OFFSET) / n0
    if contour.kind == "rectangle":
        # corners must be samples: the phase/modulus step bounds prevent
        # aliasing only along straight segments
        lo, hi = contour.corner_lo, contour.corner_hi
        w, h = hi.real - lo.real, hi.imag - lo.imag
        per = 2 * (w + h)
        t = np.unique(np.concatenate(
            [t, np.array([0.0, w, w + h, 2 * w + h]) / per]))
    z = contour.points(t)
    v = np.asarray(func(z), dtype=complex)
    _guard_values(v, z)
    ph = np.angle(v)
    lg = np.log(np.abs(v))
    vmin = float(np.min(np.abs(v)))
    for _ in range(depth):
        d = np.diff(np.concatenate([ph, ph[:1]]))
        d = (d + np.pi) % (2 * np.pi) - np.pi
        dl = np.diff(np.concatenate([lg, lg[:1]]))
        # a modulus jump flags a near-contour zero whose full phase turn
        # would otherwise alias below the pi/2 step bound
        bad = (np.abs(d) >= PHASE_STEP_BOUND) | (np.abs(dl) >= MODULUS_STEP_BOUND)
        if not np.any(bad):
            return float(np.sum(d)), t.size, vmin
        idx = np.nonzero(bad)[0]
        t_right = np.concatenate([t[1:], t[:1] + 1.0])
        t_new = (0.5 * (t[idx] + t_right[idx])) % 1.0
        z_new = contour.points(t_new)
        v_new = np.asarray(func(z_new), dtype=complex)
        _guard_values(v_new, z_new)
        vmin = min(vmin, float(np.min(np.abs(v_new))))
        t = np.concatenate([t, t_new])
        ph = np.concatenate([ph, np.angle(v_new)])
        lg = np.concatenate([lg, np.log(np.abs(v_new))])
        order = np.argsort(t)
        t, ph, lg = t[order], ph[order], lg[order]
        if t.size > 2_000_000:
            break
    raise OnContourSingularityError(
        "phase unwrapping failed to converge on the contour",
        location=complex(contour.points(np.array([SAMPLE_OFFSET]))[0]))


def _guard_values(v, z):
    bad = (np.abs(v) == 0.0) | ~np.isfinite(v)
    if np.any(bad):
        i = int(np.nonzero(bad)[0][0])
        raise OnContourSingularityError(
            "function value singular or vanishing on the contour",
            location=complex(z[i]))


def winding_count(func, contour: Contour, poles=(), policy=None) -> ContourCount:
    """Net count (zeros minus poles) of func inside the contour, plus the
    zero count corrected for declared poles."""
    total, n, vmin = _phases_adaptive(func, contour, policy or DEFAULT_POLICY)
    w = int(np.rint(total / (2 * np.pi)))
    if abs(total - 2 * np.pi * w) > 1e-6:
        raise OnContourSingularityError(
            "unwrapped phase total is not an integer multiple of 2 pi",
            location=contour.center if contour.kind == "circle" else contour.corner_lo)
    locs, mults = _normalize_poles(poles)
    inside = int(np.sum(mults[contour.contains(locs)])) if locs.size else 0
    return ContourCount(net=w, samples_used=n, min_modulus_on_contour=vmin,
                        zeros=w + inside, poles_enclosed=inside)


def _count_in_rect(func, lo, hi, poles):
    return winding_count(func, Contour.rectangle(lo, hi), poles=poles)


def _split_rect(func, lo, hi, poles, parent_zeros):
    """Quadrisect [lo, hi]; retry with perturbed split lines when an edge
    hits a singularity.  Returns a list of (lo, hi, zeros) children."""
    last_err = None
    for fx in SPLIT_RETRIES:
        for fy in SPLIT_RETRIES:
            mx = lo.real + fx * (hi.real - lo.real)
            my = lo.imag + fy * (hi.imag - lo.imag)
            quads = [
                (lo, complex(mx, my)),
                (complex(mx, lo.imag), complex(hi.real, my)),
                (complex(lo.real, my), complex(mx, hi.imag)),
                (complex(mx, my), hi),
            ]
            try:
                counts = [_count_in_rect(func, qlo, qhi, poles).zeros
                          for qlo, qhi in quads]
                if sum(counts) != parent_zeros:
                    # a zero sits on a split line: perturb the split
                    raise OnContourSingularityError(
                        "child counts disagree with the parent",
                        location=complex(mx, my))
                return [(qlo, qhi, c) for (qlo, qhi), c in zip(quads, counts)]
            except OnContourSingularityError as exc:
                last_err = exc
                continue
    raise last_err


def _feval(func, z):
    return complex(np.asarray(func(np.array([z], dtype=complex)))[0])


def _newton_polish(func, z0, tol, multiplicity=1, max_iter=80):
    z = complex(z0)
    steps = []
    modified = False
    for it in range(1, max_iter + 1):
        h = max(1e-7, 1e-7 * abs(z))
        f = _feval(func, z)
        fp = (_feval(func, z + h) - _feval(func, z - h)) / (2 * h)
        if fp == 0 or not np.isfinite(fp):
            return None
        step = f / fp
        if modified:
            step *= multiplicity
        steps.append(abs(step))
        z = z - step
        if abs(step) <= tol:
            res = abs(_feval(func, z))
            return RootRecord(location=z, multiplicity=multiplicity,
                              residual=res, newton_iterations=it)
        # stagnation ratio test: a multiple root converges only linearly
        if (not modified and multiplicity > 1 and len(steps) >= 5
                and steps[-1] > 0.4 * steps[-5]):
            modified = True
    return None


def _resolve_cell(func, qlo, qhi, nz, tol):
    """Polish the nz-fold zero certified inside the small cell [qlo, qhi].

    Newton from several seeds; among the candidates that finished inside
    the doubled cell, the point with the smallest |f| wins, provided it
    beats the cell-corner scale (a multiplicity-m zero cannot always be
    polished below the double-precision m-th-root floor, in which case
    the winding-certified cell centre itself is the best estimate).
    """
    center = 0.5 * (qlo + qhi)
    diam = abs(qhi - qlo)
    corners = np.array([qlo, qhi, complex(qlo.real, qhi.imag),
                        complex(qhi.real, qlo.imag)])
    corner_scale = float(np.max(np.abs(np.asarray(func(corners)))))
    best_z, best_res, best_it = center, abs(_feval(func, center)), 0
    newton_hit = False
    seeds = [center,
             qlo + 0.25 * (qhi - qlo),
             qlo + 0.75 * (qhi - qlo),
             complex(qhi.real - 0.25 * (qhi.real - qlo.real),
                     qlo.imag + 0.25 * (qhi.imag - qlo.imag))]
    for seed in seeds:
        rec = _newton_polish(func, seed, tol, multiplicity=nz)
        if rec is None:
            continue
        z = rec.location
        if not (qlo.real - diam <= z.real <= qhi.real + diam
                and qlo.imag - diam <= z.imag <= qhi.imag + diam):
            continue
        newton_hit = True
        if rec.residual < best_res:
            best_z, best_res, best_it = z, rec.residual, rec.newton_iterations
    # without a converged Newton candidate the winding certificate alone is
    # trusted only when the centre value clearly undercuts the cell boundary
    ok = corner_scale if newton_hit else 1e-3 * corner_scale
    if best_res <= ok and np.isfinite(best_res):
        return RootRecord(location=best_z, multiplicity=nz,
                          residual=best_res, newton_iterations=best_it)
    return None


def find_roots(func, region: Contour, known_poles=(), tol: float = 1e-10) -> list[RootRecord]:
    """All zeros of func inside the region, polished to |step| <= tol.

    known_poles (locations or (location, multiplicity) pairs) are excluded
    from the counts.  Roots closer than 10 * tol are merged with summed
    multiplicity.  Raises UnresolvedCellError (carrying any roots already
    found) if some cell cannot be resolved.
    """
    if region.kind == "circle":
        c, r = region.center, region.radius
        lo = complex(c.real - r, c.imag - r)
        hi = complex(c.real + r, c.imag + r)
    else:
        lo, hi = region.corner_lo, region.corner_hi

    top = _count_in_rect(func, lo, hi, known_poles)
    stack = [(lo, hi, top.zeros)]
    roots: list[RootRecord] = []
    unresolved = []
    while stack:
        qlo, qhi, nz = stack.pop()
        if nz <= 0:
            continue
        diam = abs(qhi - qlo)
        if diam < CELL_DIAMETER_FACTOR * tol:
            rec = _resolve_cell(func, qlo, qhi, nz, tol)
            if rec is None:
                unresolved.append(Contour.rectangle(qlo, qhi))
            else:
                roots.append(rec)
            continue
        try:
            for clo, chi, cnz in _split_rect(func, qlo, qhi, known_poles, nz):
                if cnz > 0:
                    stack.append((clo, chi, cnz))
        except OnContourSingularityError:
            unresolved.append(Contour.rectangle(qlo, qhi))

    # deduplicate and restrict to the requested region
    merged: list[RootRecord] = []
    for rec in sorted(roots, key=lambda r: (r.location.real, r.location.imag)):
        if region.kind == "circle" and abs(rec.location - region.center) >= region.radius:
            continue
        near = [m for m in merged if abs(rec.location - m.location) <= 10 * tol]
        if near:
            keep = near[0]
            merged[merged.index(keep)] = RootRecord(
                location=keep.location,
                multiplicity=keep.multiplicity + rec.multiplicity,
                residual=min(keep.residual, rec.residual),
                newton_iterations=max(keep.newton_iterations, rec.newton_iterations))
        else:
            merged.append(rec)
    if unresolved:
        raise UnresolvedCellError(
            f"{len(unresolved)} cell(s) could not be resolved",
            roots=merged, cells=unresolved)
    return merged


def counting_function(func, radii, known_poles=(), center=0j) -> list[dict]:
    """Argument-principle counts on circles |k - center| = R for each R.

    Returns one row per radius: {radius, net, zeros} with
    zeros = net + enclosed declared pole multiplicity.  A circle passing
    through a singularity is perturbed by +-1e-3 * R and retried.
    """
    rows = []
    for radius in np.atleast_1d(radii):
        radius = float(radius)
        if not radius > 0:
            raise DomainError("radius must be positive")
        last = None
        for shift in RADIUS_RETRIES:
            r = radius * (1.0 + shift)
            try:
                cc = winding_count(func, Contour.circle(center, r), poles=known_poles)
                rows.append({"radius": radius, "net": cc.net, "zeros": cc.zeros,
                             "samples": cc.samples_used,
                             "min_modulus": cc.min_modulus_on_contour})
                break
            except OnContourSingularityError as exc:
                last = exc
        else:
            raise last
    return rows
