"""Hedgehog system model: junction coupling matrices and the effective
energy-dependent coupling obtained by eliminating the lead variables.

A single-junction system with M leads carries a (1 + M) x (1 + M) unitary
coupling matrix U, partitioned as

    U = [[u1, U2],
         [U3, U4]]

with scalar u1 (manifold contact), row U2, column U3 and M x M lead block
U4.  Eliminating the lead variables with a purely outgoing wave on every
lead yields the momentum-dependent scalar

    u_eff(k) = u1 - (1 - k) U2 [ (1 - k) U4 - (1 + k) I ]^{-1} U3 ,

a rational function of k whose denominator can vanish at no more than M
momenta.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConfigError,
    DecoupledError,
    NonUnitaryError,
    SingularMomentumError,
)

__all__ = [
    "UNITARITY_TOL",
    "CouplingMatrix",
    "HedgehogSystem",
    "validate_unitary",
    "preset_coupling",
    "effective_coupling",
    "effective_coupling_term",
    "effective_coupling_denominator_roots",
    "coupling_term_poles",
]

#: Max-norm threshold for U U* = I.
UNITARITY_TOL = 1e-12

#: Relative pivot threshold below which the lead-block solve is declared
#: singular (see effective_coupling).
SINGULAR_PIVOT_TOL = 1e-14


@dataclass(frozen=True)
class CouplingMatrix:
    """Unitary junction coupling of dimension n_contacts + M."""

    entries: np.ndarray
    n_contacts: int = 1

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ConfigError("coupling matrix must be square")
        if not 1 <= self.n_contacts < mat.shape[0]:
            raise ConfigError("n_contacts must satisfy 1 <= n_contacts < dim")
        object.__setattr__(self, "entries", mat)
        validate_unitary(mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def leads(self) -> int:
        return self.dim - self.n_contacts

    def blocks(self):
        """(U1, U2, U3, U4) partition at the contact index."""
        n = self.n_contacts
        u = self.entries
        return u[:n, :n], u[:n, n:], u[n:, :n], u[n:, n:]


def validate_unitary(matrix, tol: float = UNITARITY_TOL) -> None:
    """Raise NonUnitaryError unless max|U U* - I| <= tol."""
    mat = np.asarray(matrix, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise NonUnitaryError("matrix is not square", deviation=np.inf)
    dev = np.max(np.abs(mat @ mat.conj().T - np.eye(mat.shape[0])))
    if dev > tol:
        raise NonUnitaryError(
            f"matrix is not unitary: max|UU* - I| = {dev:.3e} > {tol:g}",
            deviation=float(dev),
        )


def preset_coupling(name: str, M: int, params=None) -> CouplingMatrix:
    """Named coupling families on a single junction with M leads.

    kirchhoff          2/(1+M) * (all ones) - I   (free coupling)
    decoupled          identity (leads detached)
    dirichlet_junction -I (forces all boundary values of the first kind to 0)
    custom             params["matrix"] after the unitarity check
    """
    if M < 1:
        raise ConfigError("lead count M must be >= 1")
    dim = 1 + M
    if name == "kirchhoff":
        mat = (2.0 / dim) * np.ones((dim, dim), dtype=complex) - np.eye(dim)
    elif name == "decoupled":
        mat = np.eye(dim, dtype=complex)
    elif name == "dirichlet_junction":
        mat = -np.eye(dim, dtype=complex)
    elif name == "custom":
        if not params or "matrix" not in params:
            raise ConfigError("custom coupling requires params['matrix']")
        mat = np.asarray(params["matrix"], dtype=complex)
        if mat.shape != (dim, dim):
            raise ConfigError(f"custom coupling must be {dim}x{dim}")
    else:
        raise ConfigError(f"unknown coupling preset {name!r}")
    return CouplingMatrix(mat)


def _lead_denominator(coupling: CouplingMatrix, k):
    """(1 - k) U4 - (1 + k) I, batched over the trailing k axis."""
    _, _, _, u4 = coupling.blocks()
    karr = np.atleast_1d(np.asarray(k, dtype=complex))
    one = np.eye(coupling.leads, dtype=complex)
    return ((1.0 - karr)[:, None, None] * u4[None, :, :]
            - (1.0 + karr)[:, None, None] * one[None, :, :])


def effective_coupling(coupling: CouplingMatrix, k):
    """Scalar (or, for n_contacts > 1, matrix) effective coupling at k.

    Scalar-or-array in k for the single-contact case.  Raises
    SingularMomentumError when the lead-block denominator is singular at
    some requested momentum (this can happen at no more than M momenta).
    """
    u1, u2, u3, u4 = coupling.blocks()
    scalar = np.isscalar(k) or np.ndim(k) == 0
    karr = np.atleast_1d(np.asarray(k, dtype=complex))
    den = _lead_denominator(coupling, karr)
    # partial-pivoted elimination; smallest/largest pivot ratio as the
    # singularity diagnostic
    sign_det = np.linalg.det(den)
    scale = (1.0 + np.abs(karr)) ** coupling.leads
    bad = np.abs(sign_det) < SINGULAR_PIVOT_TOL * scale
    if np.any(bad):
        kb = karr[bad][0]
        raise SingularMomentumError(
            f"effective coupling singular at k = {kb:.6g}")
    rhs = np.broadcast_to(u3, (karr.size,) + u3.shape)
    x = np.linalg.solve(den, rhs)
    corr = (1.0 - karr)[:, None, None] * (u2[None, :, :] @ x)
    out = u1[None, :, :] - corr
    if coupling.n_contacts == 1:
        out = out[:, 0, 0]
        return complex(out[0]) if scalar else out.reshape(np.shape(k))
    return out[0] if scalar else out


def effective_coupling_term(coupling: CouplingMatrix, k):
    """The lead-elimination term i (u_eff(k) + 1) / (u_eff(k) - 1).

    Single-contact only.  Raises DecoupledError when u_eff(k) = 1 (leads
    detached; the resonance function is undefined there).
    """
    if coupling.n_contacts != 1:
        raise ConfigError("effective_coupling_term requires a single contact")
    ueff = effective_coupling(coupling, k)
    denom = np.asarray(ueff) - 1.0
    if np.any(np.abs(denom) < 1e-14):
        raise DecoupledError(
            "effective coupling equals 1: leads are decoupled at this momentum")
    out = 1j * (np.asarray(ueff) + 1.0) / denom
    return complex(out) if np.ndim(out) == 0 else out


def effective_coupling_denominator_roots(coupling: CouplingMatrix) -> np.ndarray:
    """Momenta at which det[(1-k)U4 - (1+k)I] = 0 (at most M of them)."""
    M = coupling.leads
    # det is a polynomial of degree <= M in k; recover it from samples
    ks = np.exp(2j * np.pi * np.arange(M + 1) / (M + 1)) * 1.7  # generic circle
    dets = np.linalg.det(_lead_denominator(coupling, ks))
    coeffs = np.polynomial.polynomial.polyfit(ks, dets, M)
    return _nontrivial_roots(coeffs)


def coupling_term_poles(coupling: CouplingMatrix) -> np.ndarray:
    """Zeros of u_eff(k) - 1, i.e. poles of effective_coupling_term.

    Returned as momenta; the numerator (u_eff - 1) det[(1-k)U4 - (1+k)I]
    is a polynomial of degree <= M recovered by interpolation.
    """
    if coupling.n_contacts != 1:
        raise ConfigError("coupling_term_poles requires a single contact")
    M = coupling.leads
    ks = np.exp(2j * np.pi * np.arange(M + 2) / (M + 2)) * 1.3 + 0.11j
    dets = np.linalg.det(_lead_denominator(coupling, ks))
    ueff = np.empty(ks.size, dtype=complex)
    for i, kk in enumerate(ks):
        ueff[i] = effective_coupling(coupling, complex(kk))
    numer = (ueff - 1.0) * dets
    coeffs = np.polynomial.polynomial.polyfit(ks, numer, M)
    roots = _nontrivial_roots(coeffs)
    # keep only genuine poles of the term (not cancelled by the denominator)
    keep = []
    for r in roots:
        try:
            u = effective_coupling(coupling, complex(r) + 1e-7)
        except SingularMomentumError:
            continue
        if abs(u - 1.0) < 1e-4:
            keep.append(complex(r))
    return np.asarray(keep, dtype=complex)


def _nontrivial_roots(coeffs: np.ndarray) -> np.ndarray:
    """Roots of a low-degree polynomial given ascending coefficients,
    ignoring numerically-zero leading coefficients."""
    c = np.asarray(coeffs, dtype=complex)
    scale = np.max(np.abs(c))
    if scale == 0:
        return np.empty(0, dtype=complex)
    deg = c.size - 1
    while deg > 0 and abs(c[deg]) < 1e-10 * scale:
        deg -= 1
    if deg == 0:
        return np.empty(0, dtype=complex)
    return np.polynomial.polynomial.polyroots(c[: deg + 1])


@dataclass(frozen=True)
class HedgehogSystem:
    """A geometry backend with M leads attached at one junction."""

    geometry: object
    leads: int
    coupling: CouplingMatrix
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.leads < 1:
            raise ConfigError("leads must be >= 1")
        if self.coupling.dim != self.coupling.n_contacts + self.leads:
            raise ConfigError(
                f"coupling dimension {self.coupling.dim} does not match "
                f"{self.coupling.n_contacts} contact(s) + {self.leads} lead(s)")
