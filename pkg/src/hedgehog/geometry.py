"""Green's-function geometry backends.

Each backend supplies the regularized Green's value F1(k) at the junction
(the Green's function at coinciding points with its energy-independent
singular part removed), the poles of F1 on the real momentum axis, and the
leading large-|Im k| behaviour used by the asymptotics checks.

Closed forms for the built-ins (junction at the symmetry point, Dirichlet
outer boundary):

    interval, half-length l:  F1(k) = tan(k l) / (2 k)
    disc, radius R:           F1(k) = -(1/2pi)(ln k - ln 2 + g) + Y0(kR)/(4 J0(kR))
    ball, radius R:           F1(k) = -(k / 4pi) cot(k R)

The ball form follows from the radial Dirichlet solution
sin(k(R-r))/(4 pi r sin kR) after subtracting the 1/(4 pi r) singular part;
its sign is pinned by the +ik/(4 pi) leading behaviour for Im k > 0 (see
asymptotic_leading).

Sign convention note: the leading terms returned by asymptotic_leading are
the ones the closed forms actually satisfy,

    1D:  -1/(2ik)                        for Im k > 0,
    2D:  -(1/2pi)(ln(-ik) - ln 2 + g)    for Im k > 0,
    3D:  +ik/(4 pi)                      for Im k > 0,

with the complex-conjugate mirror for Im k < 0.  For 2D and 3D these are
the negatives of a commonly quoted variant; the resolution was fixed
numerically against the Bessel/trigonometric closed forms, which are
unambiguous once the singular part is normalized as -(ln r)/2pi (2D) and
1/(4 pi r) (3D).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import BranchCutError, DomainError, NotSupportedError, PoleError

__all__ = [
    "GeometryBackend",
    "IntervalBackend",
    "DiscBackend",
    "BallBackend",
    "CustomBackend",
    "make_geometry",
    "f1_eval",
    "f1_series_eval",
    "f1_poles_in_disc",
]

#: Distance from a pole of F1 below which evaluation is refused.
POLE_PROXIMITY = 1e-12


@dataclass(frozen=True)
class GeometryBackend:
    """Base class; use one of the concrete backends below."""

    size: float

    kind = "abstract"
    dimension = 0

    def __post_init__(self):
        if not self.size > 0:
            raise DomainError("geometry size must be positive")

    # -- interface -----------------------------------------------------
    def f1(self, k):
        raise NotImplementedError

    def poles_in_disc(self, radius: float) -> np.ndarray:
        """Real poles of F1 with |k| < radius, both signs, ascending.

        All built-in poles are simple.
        """
        pos = self._positive_poles(radius)
        return np.sort(np.concatenate([-pos, pos]))

    def _positive_poles(self, radius: float) -> np.ndarray:
        raise NotImplementedError

    def asymptotic_leading(self, k):
        """Leading term of F1 for large |Im k| (see module docstring)."""
        raise NotImplementedError

    def green_off_diagonal(self, x_i, x_j, k):
        raise NotSupportedError(
            f"the {self.kind} backend provides junction data only; "
            "off-diagonal Green values require a custom backend")

    # -- helpers -------------------------------------------------------
    def _check_pole_distance(self, karr):
        poles = self._positive_poles(float(np.max(np.abs(karr))) + 1.0)
        if poles.size == 0:
            return
        full = np.concatenate([-poles, poles])
        d = np.min(np.abs(karr[..., None] - full[None, :]), axis=-1)
        if np.any(d < POLE_PROXIMITY):
            raise PoleError("f1_eval: momentum within 1e-12 of a pole of F1")


def _karr(k):
    scalar = np.isscalar(k) or np.ndim(k) == 0
    return np.atleast_1d(np.asarray(k, dtype=complex)), scalar


def _kret(out, k, scalar):
    return complex(out[0]) if scalar else out.reshape(np.shape(k))


@dataclass(frozen=True)
class IntervalBackend(GeometryBackend):
    """Abscissa of half-length l with Dirichlet endpoints, junction at 0."""

    kind = "interval"
    dimension = 1

    def f1(self, k):
        karr, scalar = _karr(k)
        self._check_pole_distance(karr)
        out = np.empty_like(karr)
        tiny = np.abs(karr) < 1e-8
        # removable point k = 0: tan(kl)/(2k) -> l/2
        if np.any(tiny):
            kl = karr[tiny] * self.size
            # tan(x)/x = 1 + x^2/3 + 2x^4/15 + ...
            out[tiny] = (self.size / 2.0) * (1.0 + kl * kl / 3.0)
        if np.any(~tiny):
            kk = karr[~tiny]
            out[~tiny] = specfun.tan_c(kk * self.size) / (2.0 * kk)
        return _kret(out, k, scalar)

    def f1_series(self, k, n_terms: int, tail_correction: bool = True):
        """Spectral series (1/l) sum_n 1/(((2n-1)pi/2l)^2 - k^2).

        The tail beyond n_terms is approximated by the midpoint-rule
        integral (1/(2 pi k)) ln((a0 + k)/(a0 - k)) with a0 = N pi / l,
        accurate to O(N^-3).
        """
        karr, scalar = _karr(k)
        n = np.arange(1, n_terms + 1)
        a = (2 * n - 1) * np.pi / (2.0 * self.size)
        k2 = karr[:, None] ** 2
        denom = a[None, :] ** 2 - k2
        if np.any(np.abs(denom) < 1e-12):
            raise PoleError("f1_series_eval: k^2 collides with a retained eigenvalue")
        out = np.sum(1.0 / denom, axis=1) / self.size
        if tail_correction:
            a0 = n_terms * np.pi / self.size
            with np.errstate(divide="ignore", invalid="ignore"):
                tail = np.where(
                    np.abs(karr) < 1e-8,
                    1.0 / (np.pi * a0),
                    np.log((a0 + karr) / (a0 - karr)) / (2.0 * np.pi * karr),
                )
            out = out + tail
        return _kret(out, k, scalar)

    def _positive_poles(self, radius):
        n_max = int(np.floor(radius * self.size / np.pi + 0.5))
        n = np.arange(1, n_max + 1)
        pos = (2 * n - 1) * np.pi / (2.0 * self.size)
        return pos[pos < radius]

    def asymptotic_leading(self, k):
        karr, scalar = _karr(k)
        sgn = np.where(karr.imag > 0, 1.0, -1.0)
        out = -sgn / (2j * karr)
        return _kret(out, k, scalar)


@dataclass(frozen=True)
class DiscBackend(GeometryBackend):
    """Flat disc of radius R, Dirichlet boundary, junction at the centre."""

    kind = "disc"
    dimension = 2

    _pole_cache_size = 0  # class-level; per-instance cache via object dict

    def f1(self, k):
        karr, scalar = _karr(k)
        if np.any(karr == 0):
            raise DomainError("disc f1: k = 0 is on the logarithmic branch point")
        if np.any((karr.real < 0) & (karr.imag == 0)):
            raise BranchCutError("disc f1: k on the logarithm branch cut")
        self._check_pole_distance(karr)
        kr = karr * self.size
        j0 = np.atleast_1d(specfun.bessel_j0(kr))
        y0 = np.atleast_1d(specfun.bessel_y0(kr))
        lg = np.log(np.abs(karr)) + 1j * np.angle(karr)
        out = (-(lg - np.log(2.0) + specfun.EULER_GAMMA) / (2.0 * np.pi)
               + y0 / (4.0 * j0))
        return _kret(out, k, scalar)

    def _positive_poles(self, radius):
        # k = (zeros of J0) / R; J0 zeros ~ (n - 1/4) pi
        count = max(1, int(np.ceil(radius * self.size / np.pi)) + 2)
        cache = getattr(self, "_j0z", None)
        if cache is None or cache.size < count:
            cache = specfun.j0_zeros(count)
            object.__setattr__(self, "_j0z", cache)
        pos = cache / self.size
        return pos[pos < radius]

    def asymptotic_leading(self, k):
        karr, scalar = _karr(k)
        sgn = np.where(karr.imag > 0, -1j, 1j)  # -ik for Im k > 0, +ik below
        out = -(np.log(sgn * karr) - np.log(2.0) + specfun.EULER_GAMMA) / (2.0 * np.pi)
        return _kret(out, k, scalar)


@dataclass(frozen=True)
class BallBackend(GeometryBackend):
    """Ball of radius R, Dirichlet boundary, junction at the centre."""

    kind = "ball"
    dimension = 3

    def f1(self, k):
        karr, scalar = _karr(k)
        self._check_pole_distance(karr)
        out = np.empty_like(karr)
        tiny = np.abs(karr) < 1e-8
        if np.any(tiny):
            # -(k/4pi) cot(kR) -> -1/(4 pi R) - k^2 R/(12 pi) + ...
            out[tiny] = (-1.0 / (4.0 * np.pi * self.size)
                         - karr[tiny] ** 2 * self.size / (12.0 * np.pi))
        if np.any(~tiny):
            kk = karr[~tiny]
            out[~tiny] = -(kk / (4.0 * np.pi)) * specfun.cot_c(kk * self.size)
        return _kret(out, k, scalar)

    def _positive_poles(self, radius):
        n_max = int(np.floor(radius * self.size / np.pi))
        n = np.arange(1, n_max + 1)
        pos = n * np.pi / self.size
        return pos[pos < radius]

    def asymptotic_leading(self, k):
        karr, scalar = _karr(k)
        sgn = np.where(karr.imag > 0, 1.0, -1.0)
        out = sgn * 1j * karr / (4.0 * np.pi)
        return _kret(out, k, scalar)


class CustomBackend(GeometryBackend):
    """User-supplied evaluator: F1(k), a pole list, optionally off-diagonal
    Green values for the multi-contact determinant condition."""

    kind = "custom"

    def __init__(self, f1_func, poles, dimension=2, size=1.0,
                 green_off_diagonal=None):
        object.__setattr__(self, "size", float(size))
        object.__setattr__(self, "_f1_func", f1_func)
        object.__setattr__(self, "_poles", np.sort(np.asarray(poles, float)))
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "_off", green_off_diagonal)
        if not self.size > 0:
            raise DomainError("geometry size must be positive")

    def f1(self, k):
        karr, scalar = _karr(k)
        out = np.asarray(self._f1_func(karr), dtype=complex)
        return _kret(np.atleast_1d(out), k, scalar)

    def _positive_poles(self, radius):
        pos = self._poles[self._poles > 0]
        return pos[pos < radius]

    def asymptotic_leading(self, k):
        raise NotSupportedError("custom backends carry no asymptotic model")

    def green_off_diagonal(self, x_i, x_j, k):
        if self._off is None:
            return super().green_off_diagonal(x_i, x_j, k)
        return self._off(x_i, x_j, k)


_BUILTINS = {"interval": IntervalBackend, "disc": DiscBackend, "ball": BallBackend}


def make_geometry(kind: str, size: float) -> GeometryBackend:
    """Construct a built-in backend by name."""
    try:
        cls = _BUILTINS[kind]
    except KeyError:
        raise DomainError(f"unknown geometry kind {kind!r}") from None
    return cls(size=float(size))


# -- functional wrappers (module-level operation surface) ----------------

def f1_eval(geometry: GeometryBackend, k):
    """Regularized Green's value F1(k) at the junction."""
    return geometry.f1(k)


def f1_series_eval(geometry, k, n_terms: int, tail_correction: bool = True):
    """Spectral-series evaluation of F1 (interval backend only)."""
    if not isinstance(geometry, IntervalBackend):
        raise NotSupportedError("f1_series_eval is defined for the interval backend")
    return geometry.f1_series(k, n_terms, tail_correction)


def f1_poles_in_disc(geometry: GeometryBackend, radius: float) -> np.ndarray:
    """Real poles of F1 with |k| < radius (both signs, ascending)."""
    if not radius > 0:
        raise DomainError("radius must be positive")
    return geometry.poles_in_disc(radius)
