"""Matplotlib renderers for CLI reports.

Every function writes a PNG file and returns the path; nothing is shown
interactively.  The figures mirror the delimited outputs: phase fields as
cyclic-colormap images, resonance sets as scatter plots in the momentum
plane, counting tables as staircase plots, and incoming-amplitude scans as
heat maps.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .fields import PhaseField

__all__ = [
    "save_phase_png",
    "save_resonances_png",
    "save_counting_png",
    "save_scan_png",
    "save_smatrix_png",
]


def save_phase_png(field: PhaseField, path, title: str = "phase") -> str:
    fig, ax = plt.subplots(figsize=(7, 5))
    masked = np.ma.masked_invalid(field.phase)
    extent = (
        field.re_values[0],
        field.re_values[-1],
        field.im_values[0],
        field.im_values[-1],
    )
    im = ax.imshow(
        masked,
        origin="lower",
        extent=extent,
        cmap="twilight",
        vmin=-math.pi,
        vmax=math.pi,
        aspect="auto",
        interpolation="nearest",
    )
    fig.colorbar(im, ax=ax, label="arg f(k)")
    ax.set_xlabel("Re k")
    ax.set_ylabel("Im k")
    ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return str(path)


def save_resonances_png(resonances, path, title: str = "resonances") -> str:
    """Scatter plot of resonance locations; embedded eigenvalues marked apart."""
    fig, ax = plt.subplots(figsize=(7, 4))
    true_pts = [r for r in resonances if r.kind == "resonance"]
    emb_pts = [r for r in resonances if r.kind != "resonance"]
    if true_pts:
        ax.plot(
            [r.location.real for r in true_pts],
            [r.location.imag for r in true_pts],
            "o",
            color="tab:blue",
            label="true resonances",
        )
    if emb_pts:
        ax.plot(
            [r.location.real for r in emb_pts],
            [r.location.imag for r in emb_pts],
            "s",
            color="tab:red",
            label="embedded eigenvalues",
        )
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.set_xlabel("Re k")
    ax.set_ylabel("Im k")
    ax.set_title(title)
    if resonances:
        ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return str(path)


def save_counting_png(rows, path, title: str = "resonance counting") -> str:
    """Staircase plot of N(R) from counting-table rows {radius, count}."""
    fig, ax = plt.subplots(figsize=(6, 4))
    radii = [row["radius"] for row in rows]
    counts = [row["count"] for row in rows]
    ax.step(radii, counts, where="post", marker="o")
    ax.set_xlabel("R")
    ax.set_ylabel("N(R)")
    ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return str(path)


def save_scan_png(
    res: np.ndarray, ims: np.ndarray, amp: np.ndarray, path, title: str
) -> str:
    """Heat map of |incoming amplitude| over a momentum grid."""
    fig, ax = plt.subplots(figsize=(7, 4))
    im = ax.pcolormesh(res, ims, amp, shading="auto", cmap="viridis")
    fig.colorbar(im, ax=ax, label="|incoming amplitude|")
    ax.set_xlabel("Re k")
    ax.set_ylabel("Im k")
    ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return str(path)


def save_smatrix_png(momenta, deviations, path, title: str = "S-matrix checks") -> str:
    """Semilog plot of the identity-check deviations against momentum."""
    fig, ax = plt.subplots(figsize=(6, 4))
    inv = [d["inverse_deviation"] for d in deviations]
    conj = [d["conjugation_deviation"] for d in deviations]
    ks = [abs(k) for k in momenta]
    ax.semilogy(ks, np.maximum(inv, 1e-18), "o", label="||S(k)S(-k) - I||")
    ax.semilogy(ks, np.maximum(conj, 1e-18), "s", label="||S(-k) - conj S(conj k)||")
    ax.set_xlabel("|k|")
    ax.set_ylabel("deviation")
    ax.set_title(title)
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return str(path)
