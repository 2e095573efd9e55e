"""Disc-with-lead system threaded by a half-quantum magnetic flux line.

A halfline lead is attached at the centre of a disc of radius ``R`` carrying
an Aharonov-Bohm flux ``alpha`` (in flux quanta).  At ``alpha = 1/2`` the
coupled angular channel admits the elementary radial profile
``u(r) = r^{-1/2} c sin k(R - r)`` and the halfline profile
``f(x) = a sin kx + b cos kx``; the junction condition then forces
``a = c sqrt(pi) cos kR`` and ``b = c sqrt(pi) sin kR``, so the incoming
amplitude ``(b + ia)/2`` never vanishes for ``c != 0`` -- the system has no
true resonances.  This module solves that channel numerically and exposes the
scan demonstrating the claim, plus the embedded eigenvalues of the decoupled
higher angular channels.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, NotSupportedError, SingularMomentumError
from .model import CouplingMatrix

__all__ = [
    "ABSystem",
    "ChannelSolution",
    "ScanReport",
    "make_ab_system",
    "boundary_functionals",
    "coupling_residual",
    "outgoing_component",
    "solve_channel",
    "closed_form_incoming",
    "true_resonance_scan",
    "persistent_eigenvalues",
]

SQRT_PI = math.sqrt(math.pi)

#: Minimum distance of scan grids from the real axis.
AXIS_MARGIN = 1e-3


@dataclass(frozen=True)
class ABSystem:
    """Disc of radius ``R`` with a central halfline lead and flux ``alpha``.

    The junction couples the halfline value/derivative, the coupled angular
    channel of the disc, and a residual point-interaction channel through the
    fixed unitary that swaps the first two slots and multiplies the third by
    ``exp(i rho)``.
    """

    R: float
    alpha: float = 0.5
    rho: float = 0.0
    coupling: CouplingMatrix = dataclasses.field(init=False)

    def __post_init__(self) -> None:
        if not (self.R > 0.0 and np.isfinite(self.R)):
            raise ConfigError(f"disc radius must be positive, got {self.R!r}")
        if not (0.0 < self.alpha < 1.0):
            raise ConfigError(
                f"flux must lie strictly between 0 and 1, got {self.alpha!r}"
            )
        u = np.zeros((3, 3), dtype=complex)
        u[0, 1] = 1.0
        u[1, 0] = 1.0
        u[2, 2] = np.exp(1j * self.rho)
        object.__setattr__(self, "coupling", CouplingMatrix(u))

    def _require_half_flux(self) -> None:
        if self.alpha != 0.5:
            raise NotSupportedError(
                "the elementary radial profile sin k(R - r) is only valid at "
                "flux 1/2, where the centrifugal term vanishes; got "
                f"alpha={self.alpha}"
            )


@dataclass(frozen=True)
class ChannelSolution:
    """Amplitudes of one coupled-channel solution at momentum ``k``.

    ``f(x) = a sin kx + b cos kx`` on the lead,
    ``u(r) = r^{-1/2} c sin k(R - r)`` on the disc.
    """

    a: complex
    b: complex
    c: complex
    k: complex


@dataclass(frozen=True)
class ScanReport:
    """Result of a grid scan for vanishing incoming amplitude."""

    min_incoming_amp: float
    argmin_momentum: complex
    closed_form_deviation_max: float
    n_points: int
    trivial: bool


def make_ab_system(R: float, alpha: float = 0.5, rho: float = 0.0) -> ABSystem:
    return ABSystem(R=R, alpha=alpha, rho=rho)


def boundary_functionals(
    system: ABSystem, sol: ChannelSolution
) -> tuple[np.ndarray, np.ndarray]:
    """Boundary-value vectors (value-like, derivative-like) of the solution.

    The slots are (lead, coupled angular channel, point-interaction channel);
    the last slot is identically zero for this family of solutions.
    """
    k, R = sol.k, system.R
    phi1 = np.array([sol.b, sol.c * SQRT_PI * np.sin(k * R), 0.0], dtype=complex)
    phi2 = k * np.array(
        [sol.a, -sol.c * SQRT_PI * np.cos(k * R), 0.0], dtype=complex
    )
    return phi1, phi2


def coupling_residual(system: ABSystem, sol: ChannelSolution) -> np.ndarray:
    """Left-hand side of the junction condition (U - I)Phi1 + i(U + I)Phi2."""
    phi1, phi2 = boundary_functionals(system, sol)
    u = system.coupling.entries
    eye = np.eye(3)
    return (u - eye) @ phi1 + 1j * (u + eye) @ phi2


def outgoing_component(sol: ChannelSolution) -> tuple[complex, complex]:
    """Split the lead profile into (incoming, outgoing) exponential amplitudes.

    ``a sin kx + b cos kx = outgoing * e^{ikx} + incoming * e^{-ikx}`` with
    ``outgoing = (b - ia)/2`` and ``incoming = (b + ia)/2``.
    """
    incoming = (sol.b + 1j * sol.a) / 2.0
    outgoing = (sol.b - 1j * sol.a) / 2.0
    return incoming, outgoing


def solve_channel(system: ABSystem, k: complex, c: complex = 1.0) -> ChannelSolution:
    """Solve the junction condition for (a, b) at momentum ``k``, given ``c``.

    The condition is linear in (a, b); at ``k != 0`` it has the unique
    solution ``a = c sqrt(pi) cos kR``, ``b = c sqrt(pi) sin kR``, recovered
    here by solving the 2x2 system rather than assuming it.
    """
    system._require_half_flux()
    k = complex(k)
    if k == 0:
        raise SingularMomentumError("junction condition is degenerate at k = 0")
    # Rows 1 and 2 of the residual in the unknowns (a, b):
    #   [ ik  -1 ] [a]   [ c*sqrt(pi) (sin kR - ik cos kR) ]
    #   [ ik   1 ] [b] = [ c*sqrt(pi) (-sin kR - ik cos kR)] * (-1)
    mat = np.array([[1j * k, -1.0], [1j * k, 1.0]], dtype=complex)
    s, co = np.sin(k * system.R), np.cos(k * system.R)
    rhs = -np.array(
        [
            c * SQRT_PI * (s + 1j * k * (-co)),
            c * SQRT_PI * (-s + 1j * k * (-co)),
        ],
        dtype=complex,
    )
    a, b = np.linalg.solve(mat, rhs)
    return ChannelSolution(a=a, b=b, c=c, k=k)


def closed_form_incoming(system: ABSystem, k: complex, c: complex = 1.0) -> complex:
    """Incoming amplitude of the solved family: (c sqrt(pi)/2) i e^{-ikR}."""
    return (c * SQRT_PI / 2.0) * 1j * np.exp(-1j * complex(k) * system.R)


def lead_profile(sol: ChannelSolution, x: float) -> complex:
    """Lead wavefunction value f(x) = a sin kx + b cos kx."""
    return sol.a * np.sin(sol.k * x) + sol.b * np.cos(sol.k * x)


def true_resonance_scan(
    system: ABSystem,
    region: tuple[float, float, float, float],
    n_re: int = 100,
    n_im: int = 100,
    c: complex = 1.0,
) -> ScanReport:
    """Scan a lower-half-plane grid for momenta with vanishing incoming wave.

    A true resonance would be a purely outgoing solution, i.e. a grid point
    where the incoming amplitude of the solved channel vanishes with
    ``c != 0``.  The report carries the grid minimum of the incoming
    amplitude and the worst deviation from its closed form.
    """
    system._require_half_flux()
    re_lo, re_hi, im_lo, im_hi = map(float, region)
    if im_hi > -AXIS_MARGIN:
        raise DomainError(
            f"scan grid must stay below the real axis by {AXIS_MARGIN}; "
            f"got Im-top {im_hi}"
        )
    if c == 0:
        return ScanReport(
            min_incoming_amp=0.0,
            argmin_momentum=complex(re_lo, im_hi),
            closed_form_deviation_max=0.0,
            n_points=0,
            trivial=True,
        )
    res = np.linspace(re_lo, re_hi, n_re)
    ims = np.linspace(im_lo, im_hi, n_im)
    best = math.inf
    best_k = complex(res[0], ims[0])
    worst_dev = 0.0
    for im in ims:
        for re in res:
            k = complex(re, im)
            sol = solve_channel(system, k, c=c)
            incoming, _ = outgoing_component(sol)
            amp = abs(incoming)
            dev = abs(incoming - closed_form_incoming(system, k, c=c))
            if dev > worst_dev:
                worst_dev = dev
            if amp < best:
                best = amp
                best_k = k
    return ScanReport(
        min_incoming_amp=best,
        argmin_momentum=best_k,
        closed_form_deviation_max=worst_dev,
        n_points=n_re * n_im,
        trivial=False,
    )


def _spherical_jn(n: int, x: np.ndarray) -> np.ndarray:
    """Spherical Bessel function j_n via upward recurrence from j_0, j_1.

    Upward recurrence is stable here because zeros of j_n lie at arguments
    larger than n, where the recurrence is dominated by the growing solution.
    """
    x = np.asarray(x, dtype=float)
    j_prev = np.sin(x) / x
    if n == 0:
        return j_prev
    j_cur = np.sin(x) / x**2 - np.cos(x) / x
    for order in range(1, n):
        j_prev, j_cur = j_cur, (2 * order + 1) / x * j_cur - j_prev
    return j_cur


def persistent_eigenvalues(system: ABSystem, m: int, count: int) -> list[float]:
    """First ``count`` embedded-eigenvalue momenta of the decoupled channel ``m``.

    Channels with ``m`` not in {0, -1} decouple from the lead (their
    eigenfunctions vanish at the junction) and keep real eigenvalues
    ``k = x/R`` where ``x`` runs over the positive zeros of the half-integer
    Bessel function of order ``|m + 1/2|``.
    """
    if m in (0, -1):
        raise DomainError(
            f"channel m={m} couples to the lead; only decoupled channels "
            "carry persistent eigenvalues"
        )
    if count < 1:
        raise ConfigError(f"count must be positive, got {count}")
    n = round(abs(m + 0.5) - 0.5)  # |m + 1/2| = n + 1/2 with integer n >= 1
    zeros: list[float] = []
    step = 0.05
    x = max(step, 0.5 * n)
    f_prev = _spherical_jn(n, np.array([x]))[0]
    while len(zeros) < count:
        x_next = x + step
        f_next = _spherical_jn(n, np.array([x_next]))[0]
        if f_prev == 0.0:
            zeros.append(x)
        elif f_prev * f_next < 0.0:
            lo, hi, f_lo = x, x_next, f_prev
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                f_mid = _spherical_jn(n, np.array([mid]))[0]
                if f_mid == 0.0:
                    lo = hi = mid
                    break
                if f_lo * f_mid < 0.0:
                    hi = mid
                else:
                    lo, f_lo = mid, f_mid
            zeros.append(0.5 * (lo + hi))
        x, f_prev = x_next, f_next
    return [z / system.R for z in zeros[:count]]
