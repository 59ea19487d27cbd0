"""Preset data bundles behind the published curves.

Each bundle identifier maps to fixed parameter sets and grids:

    1a  two-pair/one-pair domain boundary in the (alpha, omega_big) plane
    1b  the same boundary mapped to the (omega1, nu1) plane
    2   surface distribution h(0, mu), Re and Im, at (alpha=1, omega_big=333)
    3   field profile components for (900, 1000), (100, 333), (11, 111)
    4   |e(x)| for (5, 1666) and (100, 333)

Every curve is written as one CSV; a manifest records files, parameters,
and the quadrature tolerances in force.  A failure mid-bundle still writes
the manifest covering whatever completed, then propagates the error.
"""

from __future__ import annotations

import json
import os
from typing import Any, Iterable

import numpy as np

from ._version import __version__
from .output import render_csv, to_jsonable
from .params import PlasmaParams
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .solution import (coefficients, default_x_grid, distribution_boundary,
                       field_profile)
from .spectrum import BoundaryPlane, find_zeros, trace_domain_boundary

__all__ = ["FIGURE_IDS", "emit_figure_bundle", "emit_figures"]

FIGURE_IDS = ("1a", "1b", "2", "3", "4")

# parameter sets straight from the published curve labels
_FIG3_SETS = ((900.0, 1000.0), (100.0, 333.0), (11.0, 111.0))
_FIG4_SETS = ((5.0, 1666.0), (100.0, 333.0))
_FIG2_SET = (1.0, 333.0)


def _field_columns(p: PlasmaParams, config: QuadratureConfig) -> dict[str, Any]:
    spec = find_zeros(p)
    coeffs = coefficients(p, spec, config)
    prof = field_profile(p, spec, coeffs, default_x_grid(), config)
    return {
        "x": prof.x_grid,
        "Re_e_d": prof.e_discrete.real, "Im_e_d": prof.e_discrete.imag,
        "Re_e_c": prof.e_continuous.real, "Im_e_c": prof.e_continuous.imag,
        "Re_e": prof.e_total.real, "Im_e": prof.e_total.imag,
        "abs_e": np.abs(prof.e_total),
    }


def _write(out_dir: str, name: str, text: str) -> str:
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return name


def emit_figure_bundle(fig_id: str,
                       out_dir: str,
                       config: QuadratureConfig = DEFAULT_CONFIG,
                       render_png: bool = True) -> dict[str, Any]:
    """Write the CSVs (and a PNG rendering) for one bundle.

    Returns the manifest fragment describing what was written.
    """
    if fig_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure id {fig_id!r}; know {FIGURE_IDS}")
    os.makedirs(out_dir, exist_ok=True)
    files: list[str] = []
    curves: list[dict[str, Any]] = []
    plot_payload: Any = None

    if fig_id in ("1a", "1b"):
        plane = BoundaryPlane.ALPHA_OMEGA if fig_id == "1a" else BoundaryPlane.OMEGA1_NU1
        tr = trace_domain_boundary(plane, (-4.0, 4.0), 200)
        first = "alpha" if fig_id == "1a" else "omega1"
        second = "omega_big" if fig_id == "1a" else "nu1"
        cols = {
            "mu": list(tr.mu_values),
            first: [pt[0] for pt in tr.points],
            second: [pt[1] for pt in tr.points],
            "residual": list(tr.residuals),
        }
        name = f"fig{fig_id}_boundary.csv"
        files.append(_write(out_dir, name, render_csv(cols, {
            "figure": fig_id, "plane": plane.value, "points": len(tr.points)})))
        curves.append({"file": name, "plane": plane.value,
                       "mu_range": [-4.0, 4.0], "points": len(tr.points),
                       "skipped_mu": list(tr.skipped_mu)})
        plot_payload = (plane, cols)

    elif fig_id == "2":
        alpha, omega_big = _FIG2_SET
        p = PlasmaParams(alpha, omega_big)
        spec = find_zeros(p)
        coeffs = coefficients(p, spec, config)
        mu = np.linspace(-1.0, 1.0, 201)
        sl = distribution_boundary(p, spec, coeffs, mu, config)
        cols = {
            "mu": sl.mu_grid,
            "Re_h_d": sl.h_discrete.real, "Im_h_d": sl.h_discrete.imag,
            "Re_h_c": sl.h_continuous.real, "Im_h_c": sl.h_continuous.imag,
            "Re_h": sl.h_total.real, "Im_h": sl.h_total.imag,
        }
        name = "fig2_h_boundary.csv"
        files.append(_write(out_dir, name, render_csv(cols, {
            "figure": fig_id, "alpha": alpha, "omega_big": omega_big})))
        curves.append({"file": name, "alpha": alpha, "omega_big": omega_big,
                       "x": 0.0, "mu_range": [-1.0, 1.0], "points": mu.size})
        plot_payload = cols

    else:
        sets = _FIG3_SETS if fig_id == "3" else _FIG4_SETS
        plot_payload = []
        for k, (alpha, omega_big) in enumerate(sets, start=1):
            p = PlasmaParams(alpha, omega_big)
            cols = _field_columns(p, config)
            name = f"fig{fig_id}_curve{k}.csv"
            files.append(_write(out_dir, name, render_csv(cols, {
                "figure": fig_id, "curve": k,
                "alpha": alpha, "omega_big": omega_big})))
            curves.append({"file": name, "curve": k,
                           "alpha": alpha, "omega_big": omega_big})
            plot_payload.append(((alpha, omega_big), cols))

    if render_png:
        from .plots import render_figure
        png = render_figure(fig_id, plot_payload, out_dir)
        files.append(png)

    return {"files": files, "curves": curves}


def emit_figures(fig_ids: Iterable[str],
                 out_dir: str,
                 config: QuadratureConfig = DEFAULT_CONFIG,
                 render_png: bool = True) -> dict[str, Any]:
    """Emit several bundles plus manifest.json; partial manifest on failure."""
    os.makedirs(out_dir, exist_ok=True)
    manifest: dict[str, Any] = {
        "version": __version__,
        "quadrature": {
            "rel_tol": config.rel_tol, "abs_tol": config.abs_tol,
            "max_depth": config.max_depth, "tail_cut": config.tail_cut,
            "pv_excision": config.pv_excision,
        },
        "figures": {},
    }
    try:
        for fid in fig_ids:
            manifest["figures"][fid] = emit_figure_bundle(
                fid, out_dir, config, render_png)
    except Exception as exc:
        manifest["error"] = f"{type(exc).__name__}: {exc}"
        raise
    finally:
        path = os.path.join(out_dir, "manifest.json")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            json.dump(to_jsonable(manifest), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return manifest
