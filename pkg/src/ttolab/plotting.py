"""Figure rendering for spectra and verification reports."""

from __future__ import annotations

import numpy as np
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def spectrum_figure(mu, phi_values, eigenvalues):
    """Clark atoms on the unit circle (sized by weight) plus the spectrum."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4.2))
    theta = np.linspace(0.0, 2.0 * np.pi, 400)
    ax1.plot(np.cos(theta), np.sin(theta), color="0.8", lw=1)
    sizes = 600.0 * np.asarray(mu.weights) / max(np.max(mu.weights), 1e-12)
    ax1.scatter(mu.atoms.real, mu.atoms.imag, s=sizes, c="C0", zorder=3)
    for z, w in zip(mu.atoms, mu.weights):
        ax1.annotate(f"{w:.3f}", (z.real, z.imag), fontsize=8,
                     textcoords="offset points", xytext=(5, 5))
    ax1.set_aspect("equal")
    ax1.set_title("Clark atoms (area ~ weight)")
    ev = np.asarray(eigenvalues, dtype=complex)
    pv = np.asarray(phi_values, dtype=complex)
    ax2.scatter(pv.real, pv.imag, marker="o", s=60, facecolors="none",
                edgecolors="C1", label="atom values")
    ax2.scatter(ev.real, ev.imag, marker="x", s=40, c="C3", label="eigenvalues")
    ax2.axhline(0.0, color="0.85", lw=0.8)
    ax2.axvline(0.0, color="0.85", lw=0.8)
    ax2.set_title("Spectrum")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    return fig


def residual_figure(reports):
    """Log-scale bar chart of all suite residuals against their tolerances."""
    labels, values, tols = [], [], []
    for rep in reports:
        for name, val in sorted(rep.residuals.items()):
            labels.append(f"{rep.suite}:{name}")
            values.append(max(val, 1e-18))
            tols.append(rep.tolerance)
    fig, ax = plt.subplots(figsize=(max(6, 0.45 * len(labels)), 4.5))
    x = np.arange(len(labels))
    colors = ["C0" if v < t else "C3" for v, t in zip(values, tols)]
    ax.bar(x, values, color=colors)
    ax.plot(x, tols, "k--", lw=1, label="tolerance")
    ax.set_yscale("log")
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_ylabel("residual")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig
