"""Command line front end.

Subcommands cover the library surface: dispersion samples, zero pairs,
the domain boundary, field and distribution profiles, impedance, a
classification sweep, and the preset figure bundles.  Parameters come as
either (alpha, Omega) or (omega1, nu1), never both.

Exit codes: 0 success, 1 usage or validation error, 2 numeric failure.
Output is byte-identical for identical flags: fixed grids, deterministic
summation, shortest round-trip float formatting.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from typing import Any, Callable, Mapping

import numpy as np

from ._version import __version__
from .dispersion import eval_boundary, eval_lambda_imag_axis
from .errors import (BranchError, ConvergenceError, DomainEvaluationError,
                     PlasmaSkinError, ValidationError)
from .figures import FIGURE_IDS, emit_figures
from .output import render_csv, render_json, to_jsonable
from .params import (FrequencyPair, PhysicalScales, PlasmaParams,
                     params_from_frequencies)
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .solution import (coefficients, default_x_grid, distribution_boundary,
                       distribution_profile, field_profile, impedance)
from .spectrum import BoundaryPlane, find_zeros, trace_domain_boundary

__all__ = ["run", "main"]

# keys accepted in a --config file, with their parsers; flags always win
_CONFIG_TYPES: dict[str, Callable[[str], Any]] = {
    "alpha": float, "omega": float, "omega1": float, "nu1": float,
    "rel_tol": float, "abs_tol": float, "tail_cut": float,
    "max_depth": int, "pv_excision": float,
    "x": float, "x_max": float, "x_points": int,
    "mu_min": float, "mu_max": float, "mu_points": int,
    "tau_min": float, "tau_max": float, "tau_points": int,
    "points": int, "plane": str, "on": str,
    "alpha_min": float, "alpha_max": float, "alpha_points": int,
    "omega_min": float, "omega_max": float, "omega_points": int,
    "nu": float, "ell": float, "c_light": float,
    "format": str, "output": str, "out_dir": str, "ids": str,
}


def _load_config(path: str) -> dict[str, str]:
    """Parse a key=value file; blank lines and # comments allowed."""
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    for ln, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{ln}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _CONFIG_TYPES:
            raise ValidationError(f"{path}:{ln}: unknown config key {key!r}")
        values[key] = value.strip()
    return values


class _Resolver:
    """Flag > config file > built-in default."""

    def __init__(self, args: argparse.Namespace, cfg: Mapping[str, str]):
        self._args = args
        self._cfg = cfg

    def get(self, key: str, default: Any = None) -> Any:
        flag = getattr(self._args, key, None)
        if flag is not None:
            return flag
        if key in self._cfg:
            try:
                return _CONFIG_TYPES[key](self._cfg[key])
            except ValueError as exc:
                raise ValidationError(
                    f"config value for {key!r} is malformed: {exc}") from exc
        return default


def _resolve_params(res: _Resolver) -> PlasmaParams:
    alpha, omega = res.get("alpha"), res.get("omega")
    omega1, nu1 = res.get("omega1"), res.get("nu1")
    dimensionless = alpha is not None or omega is not None
    frequencies = omega1 is not None or nu1 is not None
    if dimensionless and frequencies:
        raise ValidationError(
            "give either --alpha/--omega or --omega1/--nu1, not both")
    if dimensionless:
        if alpha is None or omega is None:
            raise ValidationError("--alpha and --omega are required together")
        return PlasmaParams(alpha, omega)
    if frequencies:
        if omega1 is None or nu1 is None:
            raise ValidationError("--omega1 and --nu1 are required together")
        return params_from_frequencies(FrequencyPair(omega1, nu1))
    raise ValidationError(
        "parameters required: --alpha/--omega or --omega1/--nu1")


def _resolve_quad(res: _Resolver) -> QuadratureConfig:
    return QuadratureConfig(
        rel_tol=res.get("rel_tol", DEFAULT_CONFIG.rel_tol),
        abs_tol=res.get("abs_tol", DEFAULT_CONFIG.abs_tol),
        max_depth=res.get("max_depth", DEFAULT_CONFIG.max_depth),
        tail_cut=res.get("tail_cut", DEFAULT_CONFIG.tail_cut),
        pv_excision=res.get("pv_excision", DEFAULT_CONFIG.pv_excision),
    )


def _write_output(path: str | None, text: str) -> None:
    """stdout for '-'/None, else an atomic tempfile-and-rename write."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(res: _Resolver, columns: Mapping[str, Any],
          meta: Mapping[str, Any], payload: Any) -> None:
    fmt = res.get("format", "csv")
    if fmt == "csv":
        text = render_csv(columns, meta)
    elif fmt == "json":
        text = render_json({"version": __version__, **to_jsonable(payload)})
    else:
        raise ValidationError(f"unknown format {fmt!r}")
    _write_output(res.get("output"), text)


def _param_meta(p: PlasmaParams) -> dict[str, Any]:
    return {"alpha": p.alpha, "omega_big": p.omega_big}


def _split(label: str, values: np.ndarray) -> dict[str, np.ndarray]:
    return {f"Re_{label}": values.real, f"Im_{label}": values.imag}


def _cmd_lambda(res: _Resolver) -> int:
    p = _resolve_params(res)
    mode = res.get("on", "imag-axis")
    if mode == "imag-axis":
        tau = np.linspace(res.get("tau_min", 0.0), res.get("tau_max", 6.0),
                          res.get("tau_points", 121))
        lam = eval_lambda_imag_axis(tau, p)
        columns: dict[str, Any] = {"tau": tau, **_split("lambda", lam)}
    elif mode == "boundary":
        mu = np.linspace(res.get("mu_min", -4.0), res.get("mu_max", 4.0),
                         res.get("mu_points", 201))
        bv = eval_boundary(mu, p)
        columns = {"mu": mu,
                   **_split("lambda_plus", bv["lambda_plus"]),
                   **_split("lambda_minus", bv["lambda_minus"]),
                   **_split("lambda_P", bv["lambda_principal"])}
    else:
        raise ValidationError("--on must be imag-axis or boundary")
    meta = {"command": "lambda", "on": mode, **_param_meta(p)}
    _emit(res, columns, meta, {"command": "lambda", "params": p,
                               "samples": columns})
    return 0


def _cmd_zeros(res: _Resolver) -> int:
    p = _resolve_params(res)
    spec = find_zeros(p)
    zeros = np.array(spec.zeros)
    columns = {
        "index": np.arange(zeros.size),
        **_split("eta", zeros),
        "residual": np.array(spec.residuals),
        **_split("lambda_prime", np.array(spec.lambda_prime_at_zero)),
    }
    meta = {"command": "zeros", **_param_meta(p),
            "classification": spec.classification.value,
            "winding": spec.winding}
    _emit(res, columns, meta, spec)
    return 0


def _cmd_domain(res: _Resolver) -> int:
    plane_name = res.get("plane", BoundaryPlane.ALPHA_OMEGA.value)
    try:
        plane = BoundaryPlane(plane_name)
    except ValueError:
        raise ValidationError(
            f"--plane must be one of {[b.value for b in BoundaryPlane]}")
    mu_lo, mu_hi = res.get("mu_min", -4.0), res.get("mu_max", 4.0)
    n = res.get("points", 200)
    tr = trace_domain_boundary(plane, (mu_lo, mu_hi), n)
    first, second = (("alpha", "omega_big")
                     if plane is BoundaryPlane.ALPHA_OMEGA
                     else ("omega1", "nu1"))
    columns = {
        "mu": np.array(tr.mu_values),
        first: np.array([pt[0] for pt in tr.points]),
        second: np.array([pt[1] for pt in tr.points]),
        "residual": np.array(tr.residuals),
    }
    meta = {"command": "domain", "plane": plane.value,
            "mu_min": mu_lo, "mu_max": mu_hi, "points": len(tr.points)}
    _emit(res, columns, meta, tr)
    return 0


def _cmd_field(res: _Resolver) -> int:
    p = _resolve_params(res)
    quad = _resolve_quad(res)
    x_grid = default_x_grid(res.get("x_max", 30.0), res.get("x_points", 200))
    spec = find_zeros(p)
    coeffs = coefficients(p, spec, quad)
    prof = field_profile(p, spec, coeffs, x_grid, quad)
    columns = {
        "x": prof.x_grid,
        **_split("e_d", prof.e_discrete),
        **_split("e_c", prof.e_continuous),
        **_split("e", prof.e_total),
        "abs_e": np.abs(prof.e_total),
    }
    meta = {"command": "field", **_param_meta(p),
            "x_max": res.get("x_max", 30.0)}
    if prof.flagged:
        meta["flagged_points"] = len(prof.flagged)
    _emit(res, columns, meta, {"command": "field", "params": p,
                               "profile": prof})
    return 0


def _cmd_distribution(res: _Resolver) -> int:
    p = _resolve_params(res)
    quad = _resolve_quad(res)
    x = res.get("x", 0.0)
    mu = np.linspace(res.get("mu_min", -1.0), res.get("mu_max", 1.0),
                     res.get("mu_points", 201))
    spec = find_zeros(p)
    coeffs = coefficients(p, spec, quad)
    if x == 0.0:
        sl = distribution_boundary(p, spec, coeffs, mu, quad)
    else:
        sl = distribution_profile(p, spec, coeffs, x, mu, quad)
    columns = {
        "mu": sl.mu_grid,
        **_split("h_d", sl.h_discrete),
        **_split("h_c", sl.h_continuous),
        **_split("h", sl.h_total),
    }
    meta = {"command": "distribution", **_param_meta(p), "x": x}
    _emit(res, columns, meta, {"command": "distribution", "params": p,
                               "slice": sl})
    return 0


def _cmd_impedance(res: _Resolver) -> int:
    p = _resolve_params(res)
    quad = _resolve_quad(res)
    nu, ell, c_light = res.get("nu"), res.get("ell"), res.get("c_light")
    scale_flags = [v is not None for v in (nu, ell, c_light)]
    scales = None
    if any(scale_flags):
        if not all(scale_flags):
            raise ValidationError(
                "--nu, --ell, and --c-light are required together")
        scales = PhysicalScales(nu=nu, ell=ell, c_light=c_light,
                                omega=p.omega_big * nu)
    result = impedance(p, quad, scales=scales)
    columns: dict[str, Any] = {
        **_split("e_prime_0", np.array([result.e_prime_at_0])),
        **_split("z_reduced", np.array([result.z_reduced])),
        **_split("I", np.array([result.I_norm])),
    }
    if result.z_physical is not None:
        columns.update(_split("z_physical", np.array([result.z_physical])))
    meta = {"command": "impedance", **_param_meta(p)}
    _emit(res, columns, meta, {"command": "impedance", "params": p,
                               "result": result})
    return 0


def _cmd_sweep(res: _Resolver) -> int:
    a_lo, a_hi = res.get("alpha_min", 0.1), res.get("alpha_max", 1000.0)
    o_lo, o_hi = res.get("omega_min", 0.1), res.get("omega_max", 2000.0)
    n_a, n_o = res.get("alpha_points", 5), res.get("omega_points", 5)
    if min(a_lo, a_hi, o_lo, o_hi) <= 0:
        raise ValidationError("sweep bounds must be positive (log spacing)")
    if n_a < 1 or n_o < 1:
        raise ValidationError("sweep point counts must be >= 1")
    alphas = np.geomspace(a_lo, a_hi, n_a)
    omegas = np.geomspace(o_lo, o_hi, n_o)
    rows: dict[str, list[Any]] = {
        k: [] for k in ("alpha", "omega_big", "pairs", "classification",
                        "Re_eta0", "Im_eta0", "residual0",
                        "Re_eta1", "Im_eta1", "residual1")}
    points: list[Any] = []
    for alpha in alphas:
        for omega_big in omegas:
            spec = find_zeros(PlasmaParams(float(alpha), float(omega_big)))
            rows["alpha"].append(float(alpha))
            rows["omega_big"].append(float(omega_big))
            rows["pairs"].append(len(spec.zeros))
            rows["classification"].append(spec.classification.value)
            for k in (0, 1):
                eta = spec.zeros[k] if k < len(spec.zeros) else complex("nan")
                r = spec.residuals[k] if k < len(spec.zeros) else float("nan")
                rows[f"Re_eta{k}"].append(eta.real)
                rows[f"Im_eta{k}"].append(eta.imag)
                rows[f"residual{k}"].append(r)
            points.append(spec)
    meta = {"command": "sweep",
            "alpha_min": a_lo, "alpha_max": a_hi,
            "omega_min": o_lo, "omega_max": o_hi,
            "points": int(n_a * n_o)}
    _emit(res, rows, meta, {"command": "sweep", "points": points})
    return 0


def _cmd_figures(res: _Resolver) -> int:
    raw = res.get("ids")
    ids = FIGURE_IDS if raw is None else tuple(
        s.strip() for s in raw.split(",") if s.strip())
    for fid in ids:
        if fid not in FIGURE_IDS:
            raise ValidationError(
                f"unknown figure id {fid!r}; know {FIGURE_IDS}")
    out_dir = res.get("out_dir", "figures")
    render_png = not bool(getattr(res._args, "no_png", False))
    emit_figures(ids, out_dir, _resolve_quad(res), render_png=render_png)
    sys.stdout.write(os.path.join(out_dir, "manifest.json") + "\n")
    return 0


_DISPATCH: dict[str, Callable[[_Resolver], int]] = {
    "lambda": _cmd_lambda,
    "zeros": _cmd_zeros,
    "domain": _cmd_domain,
    "field": _cmd_field,
    "distribution": _cmd_distribution,
    "impedance": _cmd_impedance,
    "sweep": _cmd_sweep,
    "figures": _cmd_figures,
}


def _add_param_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--alpha", type=float, help="anomaly parameter (> 0)")
    sp.add_argument("--omega", type=float,
                    help="dimensionless frequency Omega (with --alpha)")
    sp.add_argument("--omega1", type=float,
                    help="frequency in collision-rate units (with --nu1)")
    sp.add_argument("--nu1", type=float,
                    help="collision rate in plasma-frequency units")


def _add_common_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="key=value defaults file; flags win")
    sp.add_argument("--format", choices=("csv", "json"), default=None)
    sp.add_argument("--output", help="output path; '-' or omitted is stdout")
    sp.add_argument("--rel-tol", type=float, dest="rel_tol")
    sp.add_argument("--abs-tol", type=float, dest="abs_tol")
    sp.add_argument("--tail-cut", type=float, dest="tail_cut")
    sp.add_argument("--max-depth", type=int, dest="max_depth")
    sp.add_argument("--pv-excision", type=float, dest="pv_excision")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plasmaskin",
        description="Kinetic skin-effect solver for a Maxwellian half-space.")
    parser.add_argument("--version", action="version",
                        version=f"plasmaskin {__version__}")
    sub = parser.add_subparsers(dest="command")

    sp = sub.add_parser("lambda", help="sample the dispersion function")
    _add_param_flags(sp)
    sp.add_argument("--on", choices=("imag-axis", "boundary"), default=None)
    sp.add_argument("--tau-min", type=float, dest="tau_min")
    sp.add_argument("--tau-max", type=float, dest="tau_max")
    sp.add_argument("--tau-points", type=int, dest="tau_points")
    sp.add_argument("--mu-min", type=float, dest="mu_min")
    sp.add_argument("--mu-max", type=float, dest="mu_max")
    sp.add_argument("--mu-points", type=int, dest="mu_points")
    _add_common_flags(sp)

    sp = sub.add_parser("zeros", help="locate and classify the zero pairs")
    _add_param_flags(sp)
    _add_common_flags(sp)

    sp = sub.add_parser("domain", help="trace the two-pair domain boundary")
    sp.add_argument("--plane", choices=tuple(b.value for b in BoundaryPlane),
                    default=None)
    sp.add_argument("--mu-min", type=float, dest="mu_min")
    sp.add_argument("--mu-max", type=float, dest="mu_max")
    sp.add_argument("--points", type=int)
    _add_common_flags(sp)

    sp = sub.add_parser("field", help="electric field profile e(x)")
    _add_param_flags(sp)
    sp.add_argument("--x-max", type=float, dest="x_max")
    sp.add_argument("--x-points", type=int, dest="x_points")
    _add_common_flags(sp)

    sp = sub.add_parser("distribution",
                        help="distribution function h(x, mu) at one depth")
    _add_param_flags(sp)
    sp.add_argument("--x", type=float, help="depth (0 = surface)")
    sp.add_argument("--mu-min", type=float, dest="mu_min")
    sp.add_argument("--mu-max", type=float, dest="mu_max")
    sp.add_argument("--mu-points", type=int, dest="mu_points")
    _add_common_flags(sp)

    sp = sub.add_parser("impedance", help="surface impedance")
    _add_param_flags(sp)
    sp.add_argument("--nu", type=float, help="collision rate (physical)")
    sp.add_argument("--ell", type=float, help="mean free path (physical)")
    sp.add_argument("--c-light", type=float, dest="c_light")
    _add_common_flags(sp)

    sp = sub.add_parser("sweep",
                        help="classification over a log (alpha, Omega) grid")
    sp.add_argument("--alpha-min", type=float, dest="alpha_min")
    sp.add_argument("--alpha-max", type=float, dest="alpha_max")
    sp.add_argument("--alpha-points", type=int, dest="alpha_points")
    sp.add_argument("--omega-min", type=float, dest="omega_min")
    sp.add_argument("--omega-max", type=float, dest="omega_max")
    sp.add_argument("--omega-points", type=int, dest="omega_points")
    _add_common_flags(sp)

    sp = sub.add_parser("figures", help="emit the preset data bundles")
    sp.add_argument("--ids", help="comma list from: " + ", ".join(FIGURE_IDS))
    sp.add_argument("--out-dir", dest="out_dir")
    sp.add_argument("--no-png", action="store_true", dest="no_png",
                    help="CSV and manifest only")
    _add_common_flags(sp)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse argv, dispatch, and map failures onto the exit-code contract."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        cfg = _load_config(args.config) if getattr(args, "config", None) else {}
        return _DISPATCH[args.command](_Resolver(args, cfg))
    except ValidationError as exc:
        print(f"plasmaskin: error: {exc}", file=sys.stderr)
        return 1
    except (BranchError, ConvergenceError, DomainEvaluationError) as exc:
        print(f"plasmaskin: numeric failure: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 2
    except PlasmaSkinError as exc:
        print(f"plasmaskin: numeric failure: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"plasmaskin: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
