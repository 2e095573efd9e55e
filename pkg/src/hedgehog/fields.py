"""Phase-field grids and phase-jump counting for complex-plane diagnostics.

The principal argument of a meromorphic function, sampled on a rectangle,
makes its zeros and poles visible as endpoints of 2*pi discontinuity lines
(where the function crosses the negative real axis).  Counting how many such
lines cross a circle of growing radius tracks the number of enclosed
singularities, which is the visual form of zero counting by the argument
principle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, HedgehogError

__all__ = [
    "PhaseField",
    "compute_phase_field",
    "write_phase_csv",
    "write_phase_pgm",
    "count_phase_jumps",
    "count_phase_jumps_segment",
]

#: Fractional angular offset applied to circle sampling so that samples do
#: not land exactly on axes, where many functions of interest are singular.
ARC_SAMPLE_OFFSET = 0.1010678118654755

#: A step of the principal argument larger than this between neighbouring
#: samples is treated as a wrap across the +/-pi seam, i.e. a jump line.
JUMP_THRESHOLD = math.pi

#: Phase steps above this trigger bisection of the sampling interval: the
#: step is either rapid smooth variation (resolved by refinement) or a seam
#: crossing (persists down to REFINE_WIDTH, then counted).
REFINE_THRESHOLD = math.pi / 2.0

#: Log-modulus steps above this also trigger bisection: a zero or pole close
#: to the path can swing the phase by a full turn between samples while the
#: principal argument lands back near its starting value, which the phase
#: criterion alone cannot see.
MODULUS_REFINE_THRESHOLD = 0.5

#: Parameter-interval width below which a persisting large phase step is
#: accepted as a genuine discontinuity rather than refined further.
REFINE_WIDTH = 1e-9

#: Asymmetric split ratio for refinement.  A midpoint split can re-centre an
#: even-multiplicity zero at every level, leaving both the phase and the
#: modulus steps of the straddling child deceptively small; the golden-ratio
#: split cannot stay symmetric across levels.
SPLIT_RATIO = 0.3819660112501051


@dataclass(frozen=True)
class PhaseField:
    """Principal-argument samples of a function on a rectangular grid.

    ``phase[j, i]`` is the argument at ``re_values[i] + 1j * im_values[j]``;
    NaN marks points where the function is singular or could not be
    evaluated.
    """

    re_values: np.ndarray
    im_values: np.ndarray
    phase: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.phase.shape


def _try_eval(func, k: complex) -> complex:
    try:
        value = complex(func(k))
    except (HedgehogError, ZeroDivisionError, FloatingPointError):
        return complex("nan")
    if not (np.isfinite(value.real) and np.isfinite(value.imag)):
        return complex("nan")
    return value


def compute_phase_field(
    func, region: tuple[float, float, float, float], nx: int, ny: int
) -> PhaseField:
    """Sample arg(func) on an ``nx`` x ``ny`` grid over a rectangle.

    ``region`` is (re_min, re_max, im_min, im_max).  Points where the
    function is singular, raises a domain error, or returns zero/nonfinite
    values are recorded as NaN.
    """
    if nx < 2 or ny < 2:
        raise ConfigError(f"grid must be at least 2x2, got {nx}x{ny}")
    re_lo, re_hi, im_lo, im_hi = map(float, region)
    if not (re_lo < re_hi and im_lo < im_hi):
        raise ConfigError(f"degenerate rectangle {region!r}")
    res = np.linspace(re_lo, re_hi, nx)
    ims = np.linspace(im_lo, im_hi, ny)
    phase = np.full((ny, nx), np.nan)
    for j, im in enumerate(ims):
        for i, re in enumerate(res):
            value = _try_eval(func, complex(re, im))
            if value != 0 and value == value:  # nonzero and not NaN
                phase[j, i] = math.atan2(value.imag, value.real)
    return PhaseField(re_values=res, im_values=ims, phase=phase)


def write_phase_csv(field: PhaseField, path) -> None:
    """Write the field as CSV rows ``re,im,phase``, row-major, re fastest.

    Singular points are written with an empty phase column.
    """
    with open(path, "w", encoding="ascii") as fh:
        fh.write("re,im,phase\n")
        for j, im in enumerate(field.im_values):
            for i, re in enumerate(field.re_values):
                p = field.phase[j, i]
                cell = "" if math.isnan(p) else repr(float(p))
                fh.write(f"{float(re)!r},{float(im)!r},{cell}\n")


def write_phase_pgm(field: PhaseField, path) -> None:
    """Write an 8-bit grayscale PGM, phase mapped linearly (-pi, pi] -> 0..255.

    Singular points map to 0.  Rows run top-to-bottom in decreasing Im so the
    image is oriented like a plot.
    """
    ny, nx = field.shape
    levels = np.zeros((ny, nx), dtype=np.uint8)
    finite = ~np.isnan(field.phase)
    scaled = (field.phase[finite] + math.pi) / (2.0 * math.pi) * 255.0
    levels[finite] = np.clip(np.rint(scaled), 0, 255).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{nx} {ny}\n255\n".encode("ascii"))
        fh.write(levels[::-1, :].tobytes())


def count_phase_jumps(
    func,
    radius: float,
    center: complex = 0j,
    arc: tuple[float, float] | None = None,
    samples: int = 4096,
) -> int:
    """Count 2*pi discontinuity lines of arg(func) crossing a circular arc.

    The arc ``(theta_lo, theta_hi)`` in radians defaults to the full circle.
    The principal argument is sampled along the arc; a step exceeding pi in
    magnitude between valid neighbouring samples is a seam wrap, i.e. one
    jump line crossed.  Samples where the function cannot be evaluated are
    skipped (the step test pairs only consecutive valid samples).
    """
    if radius <= 0:
        raise ConfigError(f"radius must be positive, got {radius!r}")
    if samples < 16:
        raise ConfigError(f"need at least 16 samples, got {samples}")
    if arc is None:
        theta_lo, theta_hi = 0.0, 2.0 * math.pi
    else:
        theta_lo, theta_hi = map(float, arc)
        if theta_hi <= theta_lo:
            raise ConfigError(f"empty arc {arc!r}")
    span = theta_hi - theta_lo
    offset = ARC_SAMPLE_OFFSET * span / samples
    thetas = theta_lo + offset + np.arange(samples) * (span - 2 * offset) / (
        samples - 1
    )
    def at(theta: float) -> complex:
        return center + radius * complex(math.cos(theta), math.sin(theta))

    return _count_wraps(func, at, thetas)


def count_phase_jumps_segment(
    func, start: complex, end: complex, samples: int = 4096
) -> int:
    """Count 2*pi discontinuity lines of arg(func) crossing a straight segment.

    Useful as a shallow traverse below the real axis: seam lines emitted by
    near-axis zeros and poles are short arcs hugging the axis, so a segment
    at small constant depth crosses one line per enclosed singularity pair
    while a large circle would miss all but the outermost ones.
    """
    if samples < 16:
        raise ConfigError(f"need at least 16 samples, got {samples}")
    ts = np.linspace(0.0, 1.0, samples)
    a, b = complex(start), complex(end)

    def at(t: float) -> complex:
        return a + t * (b - a)

    return _count_wraps(func, at, ts)


def _count_wraps(func, at, ts) -> int:
    """Count +/-pi seam crossings of arg(func(at(t))) along the parameter grid.

    Intervals with a phase step above REFINE_THRESHOLD are bisected: rapid
    smooth variation (e.g. near a pole just off the path) resolves under
    refinement, while a genuine seam crossing keeps its ~2*pi step down to
    REFINE_WIDTH and is then counted as one jump line.
    """
    scale = abs(float(ts[-1]) - float(ts[0])) or 1.0

    def sample(t: float):
        value = _try_eval(func, complex(at(t)))
        if value != value:  # NaN
            return None
        return math.atan2(value.imag, value.real), math.log(abs(value))

    def needs_refine(s0, s1) -> bool:
        return (
            abs(s1[0] - s0[0]) > REFINE_THRESHOLD
            or abs(s1[1] - s0[1]) > MODULUS_REFINE_THRESHOLD
        )

    def seams(t0: float, s0, t1: float, s1) -> int:
        if not needs_refine(s0, s1):
            return 0
        if t1 - t0 <= REFINE_WIDTH * scale:
            return 1 if abs(s1[0] - s0[0]) > JUMP_THRESHOLD else 0
        tm = t0 + SPLIT_RATIO * (t1 - t0)
        sm = sample(tm)
        if sm is None:
            return 0
        return seams(t0, s0, tm, sm) + seams(tm, sm, t1, s1)

    jumps = 0
    prev = None
    for t in ts:
        cur = sample(float(t))
        if cur is None:
            prev = None
            continue
        if prev is not None:
            jumps += seams(prev[0], prev[1], float(t), cur)
        prev = (float(t), cur)
    return jumps
