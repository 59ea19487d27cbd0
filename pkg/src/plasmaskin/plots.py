"""Matplotlib rendering for the preset bundles.

Import is deferred until a PNG is actually requested so that the numeric
paths stay usable on a headless box without matplotlib installed.
"""

from __future__ import annotations

import os
from typing import Any

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .spectrum import BoundaryPlane  # noqa: E402

__all__ = ["render_figure"]


def _render_boundary(fig_id: str, payload: Any, path: str) -> None:
    plane, cols = payload
    if plane is BoundaryPlane.ALPHA_OMEGA:
        xs, ys = cols["alpha"], cols["omega_big"]
        xlabel, ylabel = "alpha", "Omega"
    else:
        xs, ys = cols["omega1"], cols["nu1"]
        xlabel, ylabel = "omega1", "nu1"
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    ax.plot(xs, ys, "k.", ms=2.5)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title("four-zero / two-zero boundary")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _render_distribution(payload: Any, path: str) -> None:
    cols = payload
    fig, (ax_re, ax_im) = plt.subplots(1, 2, figsize=(9.0, 4.0))
    ax_re.plot(cols["mu"], cols["Re_h"], "k-")
    ax_re.set_xlabel("mu")
    ax_re.set_ylabel("Re h(0, mu)")
    ax_im.plot(cols["mu"], cols["Im_h"], "k-")
    ax_im.set_xlabel("mu")
    ax_im.set_ylabel("Im h(0, mu)")
    for ax in (ax_re, ax_im):
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _render_field_components(payload: Any, path: str) -> None:
    panels = (("Re_e_d", "Re e_d"), ("Re_e_c", "Re e_c"),
              ("Im_e_d", "Im e_d"), ("Im_e_c", "Im e_c"))
    fig, axes = plt.subplots(2, 2, figsize=(9.0, 7.0))
    for ax, (key, label) in zip(axes.ravel(), panels):
        for (alpha, omega_big), cols in payload:
            ax.plot(cols["x"], cols[key],
                    label=f"({alpha:g}, {omega_big:g})")
        ax.set_xlabel("x")
        ax.set_ylabel(label)
        ax.grid(True, alpha=0.3)
    axes[0, 0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _render_field_magnitude(payload: Any, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for (alpha, omega_big), cols in payload:
        x = cols["x"]
        # skip x=0 on a log axis
        ax.plot(x[1:], cols["abs_e"][1:], label=f"({alpha:g}, {omega_big:g})")
    ax.set_xscale("log")
    ax.set_xlabel("x")
    ax.set_ylabel("|e(x)|")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_figure(fig_id: str, payload: Any, out_dir: str) -> str:
    """Render one bundle to fig<id>.png; returns the file name."""
    name = f"fig{fig_id}.png"
    path = os.path.join(out_dir, name)
    if fig_id in ("1a", "1b"):
        _render_boundary(fig_id, payload, path)
    elif fig_id == "2":
        _render_distribution(payload, path)
    elif fig_id == "3":
        _render_field_components(payload, path)
    elif fig_id == "4":
        _render_field_magnitude(payload, path)
    else:
        raise ValueError(f"unknown figure id {fig_id!r}")
    return name
