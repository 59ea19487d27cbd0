"""Multiplicative splitting of the dispersion function.

lambda factorizes through a nonvanishing function built from its boundary
ratio on the positive real axis,

    G(tau) = lambda_plus(tau) / lambda_minus(tau),
    V(z)   = (1/2 pi i) Integral_0^inf ln G(tau) / (tau - z) dtau,
    X(z)   = exp V(z),

with the identities (one zero pair / two zero pairs)

    lambda(z) = a (eta_0^2 - z^2) X(z) X(-z)
    lambda(z) = a (eta_0^2 - z^2)(eta_1^2 - z^2) X_1(z) X_1(-z),
    X_1(z) = X(z) / (z - 1).

Everything delicate here is branch bookkeeping for ln G.  The branch is
anchored by ln G(0) = 0 and continued along a clustered tau grid; its total
phase gain is 2 pi times an integer index equal to (pair count - 1), which
is cross-checked against the winding count.  For a two-pair point the
continuous branch ends at 2 pi i, not 0, so the Cauchy integral would pick
up a spurious logarithm; the index is therefore peeled off as a -2 pi i
correction on tau > 1 (the same normalization that turns X into X_1 at a
two-pair point).  After the peel |ln G| decays like exp(-tau^2) and the
tabulated branch ends below 1e-12 at the tail cut.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .dispersion import eval_boundary, eval_lambda
from .errors import BranchError, DomainEvaluationError, ValidationError
from .params import PlasmaParams
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate_adaptive
from .spectrum import SpectrumInfo, count_zero_pairs, find_zeros

__all__ = [
    "FactorizationContext",
    "build_factorization",
    "eval_G",
    "eval_V",
    "eval_X",
    "eval_X1",
    "check_factorization",
    "zero_from_factorization",
]

_TWO_PI = 2.0 * math.pi

# stabilization probes for the grid-doubling loop; off the cut, O(1) scale
_PROBES = (-1.0 + 0.0j, 0.5 + 2.0j)


@dataclass(frozen=True)
class FactorizationContext:
    """Tabulated branch of ln G plus the winding index it carries.

    tau_grid / log_g_samples hold the reduced branch (continuous except for
    the index peel at tau = 1, ending ~0 at the tail cut); phase_table holds
    the raw continuous phase used to re-anchor the branch at off-grid tau.
    branch_anchor records the normalization ln G(0) = 0.
    """

    params: PlasmaParams
    tau_grid: np.ndarray = field(repr=False)
    log_g_samples: np.ndarray = field(repr=False)
    phase_table: np.ndarray = field(repr=False)
    index: int
    tail_cut: float
    branch_anchor: complex = 0.0 + 0.0j


def eval_G(tau, p_or_ctx):
    """Boundary ratio G(tau) = lambda_plus/lambda_minus for tau >= 0."""
    p = p_or_ctx.params if isinstance(p_or_ctx, FactorizationContext) else p_or_ctx
    arr = np.asarray(tau, dtype=np.float64)
    if np.any(arr < 0.0):
        raise DomainEvaluationError("G(tau) is defined for tau >= 0")
    flat = np.atleast_1d(arr)
    bd = eval_boundary(flat, p)
    minus = bd["lambda_minus"]
    if np.any(np.abs(minus) < 1e-13):
        bad = flat[np.abs(minus) < 1e-13][0]
        raise BranchError(
            f"lambda_minus vanishes near tau={bad:.6g}: parameters sit on "
            "the domain boundary, the factorization ratio is singular")
    out = bd["lambda_plus"] / minus
    return complex(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def _branch_table(p: PlasmaParams, n: int, tail_cut: float):
    """(tau_grid, continuous phase, |G|) on a cosine-clustered grid."""
    j = np.arange(n, dtype=np.float64)
    grid = 0.5 * tail_cut * (1.0 - np.cos(math.pi * j / (n - 1)))
    g = eval_G(grid, p)
    phase = np.unwrap(np.angle(g))
    phase -= phase[0]  # anchor ln G(0) = 0
    steps = np.abs(np.diff(phase))
    if steps.max() > 0.5 * math.pi:
        raise BranchError(
            "ln G branch continuity broke: adjacent phase step "
            f"{steps.max():.3f} rad at tau~"
            f"{grid[int(steps.argmax())]:.4g}; refine the grid or move off "
            "the domain boundary")
    return grid, phase, np.abs(g)


def _context_from_table(p, grid, phase, mag, index, tail_cut):
    reduced = np.log(mag) + 1j * (phase - _TWO_PI * index * (grid > 1.0))
    return FactorizationContext(params=p, tau_grid=grid,
                                log_g_samples=reduced, phase_table=phase,
                                index=index, tail_cut=tail_cut)


def build_factorization(
    p: PlasmaParams,
    spec: SpectrumInfo | None = None,
    config: QuadratureConfig = DEFAULT_CONFIG,
    n_grid: int = 4096,
) -> FactorizationContext:
    """Tabulate the ln G branch and validate it.

    The phase winding of G must equal (pair count - 1); disagreement means
    the branch tracking failed and is raised, not papered over.  The grid is
    doubled until V at fixed probes moves by less than 1e-9.
    """
    expected = (len(spec.zeros) if spec is not None else count_zero_pairs(p)) - 1
    tail_cut = float(config.tail_cut)

    prev_ctx = None
    prev_probe = None
    n = int(n_grid)
    while True:
        grid, phase, mag = _branch_table(p, n, tail_cut)
        index = round(phase[-1] / _TWO_PI)
        if abs(phase[-1] - _TWO_PI * index) > 1e-6:
            raise BranchError(
                f"total phase of G ({phase[-1]:.3e} rad) is not a multiple "
                "of 2*pi; branch tracking failed")
        if index != expected:
            raise BranchError(
                f"G winds {index} time(s) but the spectrum has "
                f"{expected + 1} zero pair(s); factorization index mismatch")
        end = abs(math.log(mag[-1]) + 1j * (phase[-1] - _TWO_PI * index))
        if end > 1e-12:
            raise BranchError(
                f"|ln G| = {end:.3e} at the tail cut {tail_cut}; expected "
                "Gaussian decay below 1e-12")
        ctx = _context_from_table(p, grid, phase, mag, index, tail_cut)
        probe = np.array([eval_V(z, ctx, config) for z in _PROBES])
        if prev_probe is not None and np.max(np.abs(probe - prev_probe)) < 1e-9:
            return ctx
        if n >= 4 * n_grid:
            if prev_ctx is None:
                return ctx
            raise BranchError(
                "V did not stabilize under grid doubling; ln G appears "
                "under-resolved (parameters near the domain boundary?)")
        prev_ctx, prev_probe = ctx, probe
        n = 2 * n - 1  # doubling that preserves the existing nodes


def _log_g_reduced(tau: np.ndarray, ctx: FactorizationContext) -> np.ndarray:
    """Reduced ln G at arbitrary tau >= 0, re-anchored to the tabulated branch.

    The principal log is corrected by the 2*pi multiple that brings its
    imaginary part onto the interpolated continuous phase, then the index is
    peeled off for tau > 1.  Beyond the tail cut the table clamps to its end
    value and the correction collapses to zero, matching the decay of G - 1.
    """
    g = eval_G(tau, ctx.params)
    base = np.log(np.atleast_1d(np.asarray(g, dtype=np.complex128)))
    ref = np.interp(tau, ctx.tau_grid, ctx.phase_table)
    k = np.round((ref - base.imag) / _TWO_PI)
    phase = base.imag + _TWO_PI * (k - ctx.index * (tau > 1.0))
    return base.real + 1j * phase


def _require_off_cut(z: complex) -> complex:
    z = complex(z)
    dist = abs(z.imag) if z.real >= 0.0 else abs(z)
    if dist < 1e-8:
        raise DomainEvaluationError(
            f"z={z!r} is within 1e-8 of the branch cut [0, inf); V(z) is "
            "not evaluable there")
    return z


def eval_V(z: complex,
           ctx: FactorizationContext,
           config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Cauchy integral of the reduced ln G branch.

    Split at tau = 1 because the index peel makes the integrand jump there
    at a two-pair point (at a one-pair point the split is harmless).  The
    neglected tail beyond tail_cut carries |ln G| < 1e-12.
    """
    z = _require_off_cut(z)

    def integrand(t: np.ndarray) -> np.ndarray:
        return _log_g_reduced(t, ctx) / (t - z)

    head = integrate_adaptive(integrand, 0.0, 1.0, config).value
    tail = integrate_adaptive(integrand, 1.0, ctx.tail_cut, config).value
    return (head + tail) / (2j * math.pi)


def eval_X(z: complex,
           ctx: FactorizationContext,
           config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """X(z) = exp V(z); nonvanishing wherever defined."""
    return cmath.exp(eval_V(z, ctx, config))


def eval_X1(z: complex,
            ctx: FactorizationContext,
            config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """X1(z) = X(z)/(z - 1), the two-pair variant; simple pole at z = 1."""
    z = complex(z)
    if abs(z - 1.0) < 1e-12:
        raise DomainEvaluationError("X1 has a pole at z = 1")
    return eval_X(z, ctx, config) / (z - 1.0)


def check_factorization(z: complex,
                        ctx: FactorizationContext,
                        spec: SpectrumInfo | None = None,
                        config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Relative residual of the classification-appropriate splitting identity."""
    z = complex(z)
    if z.imag == 0.0:
        raise DomainEvaluationError(
            "the factorization identity is checked off the real axis")
    if spec is None:
        spec = find_zeros(ctx.params)
    lhs = eval_lambda(z, ctx.params)
    eta0 = spec.zeros[0]
    if len(spec.zeros) == 1:
        rhs = (ctx.params.a * (eta0**2 - z**2)
               * eval_X(z, ctx, config) * eval_X(-z, ctx, config))
    else:
        eta1 = spec.zeros[1]
        rhs = (ctx.params.a * (eta0**2 - z**2) * (eta1**2 - z**2)
               * eval_X1(z, ctx, config) * eval_X1(-z, ctx, config))
    return abs(lhs - rhs) / abs(lhs)


def zero_from_factorization(ctx: FactorizationContext,
                            z_ref: complex,
                            config: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Recover the zero pair directly from the splitting (one-pair case only).

    Rearranging lambda(z) = a (eta_0^2 - z^2) X(z) X(-z) at any regular
    reference point gives

        eta_0^2 = z_ref^2 + lambda(z_ref) / (a X(z_ref) X(-z_ref)),

    independent of z_ref.  The root is reported with Re eta_0 > 0.
    """
    if ctx.index != 0:
        raise ValidationError(
            "zero_from_factorization applies to the one-pair (two-zero) "
            "case; this context has a two-pair index")
    z_ref = complex(z_ref)
    if z_ref.imag == 0.0:
        raise DomainEvaluationError("z_ref must lie off the real axis")
    lam = eval_lambda(z_ref, ctx.params)
    xx = eval_X(z_ref, ctx, config) * eval_X(-z_ref, ctx, config)
    eta_sq = z_ref**2 + lam / (ctx.params.a * xx)
    eta = cmath.sqrt(eta_sq)
    if eta.real < 0.0 or (eta.real == 0.0 and eta.imag > 0.0):
        eta = -eta
    return eta
