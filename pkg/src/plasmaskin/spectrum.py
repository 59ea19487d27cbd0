"""Zeros of the dispersion function and the two-zero / four-zero geometry.

The physical zeros of lambda come in pairs +-eta_k, never on the real axis,
and each pair has exactly one member in the open upper half-plane where
lambda coincides with the entire function lambda_U.  So the pair count is
the number of zeros of lambda_U inside a closed upper-half-plane contour
(argument principle), and each stored zero is reported as the pair member
with positive real part.

Counting is done by tracking the phase of lambda_U along the contour with
adaptive densification, which makes the winding an exact integer up to
float rounding.  Zero LOCATION uses the same contour a second time: the
contour moments

    s_m = (1/2 pi i) closed-integral w^m lambda_U'(w)/lambda_U(w) dw

give the power sums of the enclosed zeros, so for one pair the seed is s_1
itself and for two pairs the seeds are the roots of the quadratic built
from s_1, s_2.  Newton then polishes to machine precision.  (A fixed small
search box cannot work here: the least-damped zero scales like
sqrt(1/|a|) and reaches |eta| ~ 10^4 for the frequency ranges of interest,
so the contour radius and all seeds scale with the parameters.)

The boundary between the one-pair and two-pair regions is where a zero
crosses the real axis, i.e. lambda_plus(mu) = 0 for some real mu.  At fixed
mu that condition is solvable in closed form: writing
lambda_plus = 1 + a (c_r + i c_i) with real c_r, c_i and
a = -i alpha / (1 - i Omega)^3, elimination of alpha leaves a real cubic
in Omega,

    c_i Omega^3 - 3 c_r Omega^2 - 3 c_i Omega + c_r = 0,

and alpha follows by back-substitution.  The trace walks a mu grid and
selects cubic roots by continuation from the |mu| -> infinity asymptote
(Omega -> 1/sqrt(3)).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import dawsn

from .dispersion import (_lambda_upper, _lambda_upper_prime, eval_boundary,
                         eval_lambda_prime)
from .errors import ConvergenceError, CountMismatchError, ValidationError
from .params import PlasmaParams, frequencies_from_params
from .quadrature import QuadratureConfig, integrate_adaptive

__all__ = [
    "Classification",
    "DomainKind",
    "BoundaryPlane",
    "SpectrumInfo",
    "DomainBoundary",
    "count_zero_pairs",
    "find_zeros",
    "classify_domain",
    "trace_domain_boundary",
]

_SQRT_PI = math.sqrt(math.pi)


class Classification(enum.Enum):
    TWO_ZEROS = "TwoZeros"
    FOUR_ZEROS = "FourZeros"


class DomainKind(enum.Enum):
    D_PLUS = "DPlus"
    D_MINUS = "DMinus"


class BoundaryPlane(enum.Enum):
    ALPHA_OMEGA = "alpha-omega"
    OMEGA1_NU1 = "omega1-nu1"


@dataclass(frozen=True)
class SpectrumInfo:
    """Pair count, refined zeros (Re eta_k > 0, descending |eta|), and the
    data the solution formulas need at each zero."""

    params: PlasmaParams
    classification: Classification
    zeros: tuple[complex, ...]
    residuals: tuple[float, ...]
    lambda_prime_at_zero: tuple[complex, ...]
    winding: int


@dataclass(frozen=True)
class DomainBoundary:
    """Traced boundary polyline in the requested parameter plane.

    points[i] is (alpha, omega_big) or (omega1, nu1) depending on plane;
    mu_values[i] is the real-axis crossing parameter that generated it;
    residuals[i] is |lambda_plus(mu)| at the solved parameters.  Grid points
    that produced no admissible solution are listed in skipped_mu.
    """

    plane: BoundaryPlane
    points: tuple[tuple[float, float], ...]
    mu_values: tuple[float, ...]
    residuals: tuple[float, ...]
    skipped_mu: tuple[float, ...]


def _contour_radius(p: PlasmaParams) -> float:
    # zeros sit near sqrt(1/a); keep them well inside the contour
    return max(8.0, 2.0 * math.sqrt(1.0 / abs(p.a)))


def _contour_point(t: np.ndarray, radius: float) -> np.ndarray:
    """Closed upper-half-plane contour, parameterized by t in [0, 2]:
    real segment -R..R on [0, 1), then the semicircular arc on [1, 2]."""
    t = np.asarray(t, dtype=np.float64)
    z = np.empty(t.shape, dtype=np.complex128)
    seg = t < 1.0
    z[seg] = -radius + 2.0 * radius * t[seg]
    z[~seg] = radius * np.exp(1j * np.pi * (t[~seg] - 1.0))
    return z


def count_zero_pairs(p: PlasmaParams) -> int:
    """Number of +-eta_k zero pairs of lambda (1 or 2), by winding number.

    Phase steps between consecutive contour samples are kept below ~0.8 rad
    by adaptive midpoint insertion, so each step's branch choice is
    unambiguous and the total is an exact multiple of 2 pi.
    """
    radius = _contour_radius(p)
    ts = np.linspace(0.0, 2.0, 4097)
    vals = _lambda_upper(_contour_point(ts, radius), p.a)
    for _ in range(48):
        lo = np.abs(vals)
        floor = 1e-12 * float(np.median(lo))
        if float(lo.min()) <= max(floor, 1e-300):
            k = int(lo.argmin())
            raise ConvergenceError(
                "winding contour passes through a zero of lambda near "
                f"z={_contour_point(np.array([ts[k]]), radius)[0]:.6g}; the "
                "parameters sit on (or numerically on) the domain boundary")
        steps = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(steps) > 0.8
        if not bad.any():
            break
        if ts.size > 3_000_000:
            raise ConvergenceError(
                "winding-number phase tracking did not stabilize; parameters "
                "are likely on the domain boundary")
        mids = 0.5 * (ts[:-1][bad] + ts[1:][bad])
        ts = np.sort(np.concatenate([ts, mids]), kind="stable")
        vals = _lambda_upper(_contour_point(ts, radius), p.a)
    else:
        raise ConvergenceError("winding-number refinement exhausted its depth")

    total = float(steps.sum()) / (2.0 * math.pi)
    winding = round(total)
    if abs(total - winding) > 1e-6:
        raise ConvergenceError(
            f"winding number {total!r} is not an integer within 1e-6; "
            "parameters are too close to the domain boundary")
    if winding not in (1, 2):
        raise CountMismatchError(
            f"expected 1 or 2 zero pairs, winding found {winding} "
            f"(alpha={p.alpha}, omega_big={p.omega_big})")
    return winding


def _contour_moments(p: PlasmaParams, radius: float, orders: Sequence[int]) -> dict[int, complex]:
    """Power sums of the upper-half-plane zeros via contour integration."""
    cfg = QuadratureConfig(rel_tol=1e-9, abs_tol=1e-12, max_depth=36)

    def logderiv(w: np.ndarray) -> np.ndarray:
        return _lambda_upper_prime(w, p.a) / _lambda_upper(w, p.a)

    out: dict[int, complex] = {}
    for m in orders:
        def seg_real(x, m=m):
            return x**m * logderiv(x.astype(np.complex128))

        def seg_arc(theta, m=m):
            w = radius * np.exp(1j * theta)
            return w**m * logderiv(w) * 1j * w

        total = (integrate_adaptive(seg_real, -radius, radius, cfg).value
                 + integrate_adaptive(seg_arc, 0.0, math.pi, cfg).value)
        out[m] = total / (2j * math.pi)
    return out


def _newton_polish(seed: complex, a: complex) -> complex | None:
    """Newton iteration on the entire upper-half-plane representation.

    Returns the converged upper-half-plane root, or None.
    """
    z = complex(seed)
    if z.imag <= 0.0:
        z = complex(z.real, abs(z.imag) + 1e-12)
    for _ in range(80):
        fp = _lambda_upper_prime(np.array([z]), a)[0]
        f = _lambda_upper(np.array([z]), a)[0]
        if fp == 0.0:
            return None
        step = f / fp
        z -= step
        if z.imag <= 0.0:
            # bounce off the axis; the true root is strictly interior
            z = complex(z.real, max(1e-300, -0.2 * z.imag))
        if abs(step) <= 5e-15 * max(1.0, abs(z)):
            return z
    return None


def _grid_seeds(a: complex, scale: float, n_re: int = 81, n_im: int = 41) -> list[complex]:
    """Coarse |lambda_U| minima over an upper-half-plane box of side ~2*scale."""
    re = np.linspace(-2.0 * scale, 2.0 * scale, n_re)
    im = np.geomspace(1e-3 * scale, 2.0 * scale, n_im)
    zz = re[None, :] + 1j * im[:, None]
    mag = np.abs(_lambda_upper(zz, a))
    interior = mag[1:-1, 1:-1]
    is_min = ((interior < mag[:-2, 1:-1]) & (interior < mag[2:, 1:-1])
              & (interior < mag[1:-1, :-2]) & (interior < mag[1:-1, 2:]))
    ii, jj = np.nonzero(is_min)
    order = np.argsort(interior[ii, jj], kind="stable")
    return [complex(zz[i + 1, j + 1]) for i, j in zip(ii[order], jj[order])][:8]


def _dedupe(roots: list[complex], scale: float) -> list[complex]:
    kept: list[complex] = []
    for r in roots:
        if all(abs(r - k) > 1e-6 * max(scale, abs(r), abs(k)) for k in kept):
            kept.append(r)
    return kept


def find_zeros(p: PlasmaParams) -> SpectrumInfo:
    """Locate and refine the zero pairs, cross-checked against the winding count.

    Seeding order: contour moments (exact power sums of the roots), then the
    large-zero asymptotic eta^2 ~ 1/a - 1/2, then a scaled coarse grid.  Any
    surviving mismatch with the winding count raises CountMismatchError.
    """
    n_pairs = count_zero_pairs(p)
    radius = _contour_radius(p)
    scale = math.sqrt(1.0 / abs(p.a))

    seeds: list[complex] = []
    try:
        if n_pairs == 1:
            seeds = [_contour_moments(p, radius, [1])[1]]
        else:
            s = _contour_moments(p, radius, [1, 2])
            prod = 0.5 * (s[1] * s[1] - s[2])
            disc = cmath.sqrt(s[1] * s[1] - 4.0 * prod)
            seeds = [0.5 * (s[1] + disc), 0.5 * (s[1] - disc)]
    except ConvergenceError:
        seeds = []

    # asymptotic seed for the dominant pair, mapped into the upper half-plane
    eta_asym = cmath.sqrt(1.0 / p.a - 0.5)
    seeds.append(eta_asym if eta_asym.imag > 0 else -eta_asym)

    roots: list[complex] = []
    for seed in seeds:
        r = _newton_polish(seed, p.a)
        if r is not None and r.imag > 0.0:
            roots.append(r)
        roots = _dedupe(roots, scale)
        if len(roots) == n_pairs and len(seeds) >= n_pairs:
            break

    if len(roots) < n_pairs:
        for seed in _grid_seeds(p.a, scale):
            r = _newton_polish(seed, p.a)
            if r is not None and r.imag > 0.0:
                roots.append(r)
            roots = _dedupe(roots, scale)
            if len(roots) == n_pairs:
                break

    roots = _dedupe(roots, scale)
    if len(roots) != n_pairs:
        raise CountMismatchError(
            f"winding count {n_pairs} but Newton refinement located "
            f"{len(roots)} distinct zero(s) at alpha={p.alpha}, "
            f"omega_big={p.omega_big}: {roots!r}")

    # report each pair by its member with positive real part
    etas: list[complex] = []
    for r in roots:
        if r.real > 0.0:
            etas.append(r)
        elif r.real < 0.0:
            etas.append(-r)
        else:
            raise ConvergenceError(
                f"zero {r!r} lies on the imaginary axis; the sign convention "
                "Re eta > 0 is undefined there (domain-boundary degeneracy)")
    etas.sort(key=lambda e: (-abs(e), e.real))

    residuals = tuple(
        float(abs(_lambda_upper(np.array([e if e.imag > 0 else -e]), p.a)[0]))
        for e in etas)
    primes = tuple(eval_lambda_prime(e, p) for e in etas)
    classification = (Classification.TWO_ZEROS if n_pairs == 1
                      else Classification.FOUR_ZEROS)
    return SpectrumInfo(params=p, classification=classification,
                        zeros=tuple(etas), residuals=residuals,
                        lambda_prime_at_zero=primes, winding=n_pairs)


def classify_domain(p: PlasmaParams) -> DomainKind:
    """DPlus iff lambda has two zero pairs at these parameters."""
    return DomainKind.D_PLUS if count_zero_pairs(p) == 2 else DomainKind.D_MINUS


def _boundary_candidates(mu: float) -> list[tuple[float, float]]:
    """All (alpha, omega_big) with lambda_plus(mu) = 0 at this real mu.

    From lambda_plus = 1 + a (c_r + i c_i) = 0 and a = -i alpha/(1-i Omega)^3:
    the real part of -i alpha (1 - i Omega)^-3 ... elimination gives the
    cubic in Omega quoted in the module docstring; alpha then follows from
    the remaining linear relation.  Roots are polished on the cubic itself.
    """
    c_r = -2.0 * mu**3 * float(dawsn(mu))
    c_i = _SQRT_PI * mu**3 * math.exp(-(mu**2))
    norm = c_r * c_r + c_i * c_i
    if norm == 0.0:
        return []

    if abs(c_i) < 1e-14 * abs(c_r):
        omegas = [1.0 / math.sqrt(3.0)]
    else:
        coeffs = np.array([c_i, -3.0 * c_r, -3.0 * c_i, c_r])
        rts = np.roots(coeffs)
        omegas = []
        for r in rts:
            if abs(r.imag) > 1e-9 * max(1.0, abs(r)):
                continue
            om = float(r.real)
            for _ in range(3):  # Newton polish on the exact cubic
                f = ((c_i * om - 3.0 * c_r) * om - 3.0 * c_i) * om + c_r
                fp = (3.0 * c_i * om - 6.0 * c_r) * om - 3.0 * c_i
                if fp == 0.0:
                    break
                om -= f / fp
            omegas.append(om)

    out: list[tuple[float, float]] = []
    for om in omegas:
        if not (math.isfinite(om) and om > 0.0):
            continue
        big_a = 1.0 - 3.0 * om * om
        big_b = om**3 - 3.0 * om
        alpha = (big_b * c_r - big_a * c_i) / norm
        if math.isfinite(alpha) and alpha > 0.0:
            out.append((alpha, om))
    return out


_OMEGA_ASYMPTOTE = 1.0 / math.sqrt(3.0)


def _trace_side(mus: Sequence[float], residual_tol: float):
    """Continuation along one sign of mu, anchored at the largest |mu|.

    mus must be ordered from the anchor inward.  Yields
    (mu, alpha, omega, residual) for converged points and (mu, None) rows
    for skipped ones.
    """
    prev: tuple[float, float] | None = None
    for mu in mus:
        cands = []
        for alpha, om in _boundary_candidates(mu):
            res = abs(eval_boundary(mu, PlasmaParams(alpha, om)).lambda_plus)
            if res < residual_tol:
                cands.append((alpha, om, res))
        if not cands:
            yield (mu, None)
            continue
        if prev is None:
            key = lambda c: abs(math.log(c[1] / _OMEGA_ASYMPTOTE))
        else:
            key = lambda c: math.hypot(math.log(c[0] / prev[0]),
                                       math.log(c[1] / prev[1]))
        alpha, om, res = min(cands, key=key)
        prev = (alpha, om)
        yield (mu, (alpha, om, res))


def trace_domain_boundary(
    plane: BoundaryPlane,
    mu_range: tuple[float, float] = (-4.0, 4.0),
    n_points: int = 200,
) -> DomainBoundary:
    """Trace the two-pair/one-pair boundary over a real mu grid.

    mu = 0 is degenerate (all coefficients vanish) and is skipped; each
    emitted point re-verifies |lambda_plus(mu)| < 1e-8 at the solved
    parameters.  Points where no admissible cubic root exists are skipped
    and recorded; fewer than 2 good points is an error.
    """
    if n_points < 2:
        raise ValidationError("n_points must be at least 2")
    lo, hi = float(mu_range[0]), float(mu_range[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValidationError(f"bad mu_range {mu_range!r}")
    grid = np.linspace(lo, hi, int(n_points))
    # mu=0 gives 0=0; its immediate neighborhood is numerically hollow too
    keep = np.abs(grid) > 1e-3
    residual_tol = 1e-8

    neg = [float(m) for m in grid[keep] if m < 0]
    pos = [float(m) for m in grid[keep] if m > 0]
    rows: dict[float, tuple[float, float, float] | None] = {}
    for mu, sol in _trace_side(neg, residual_tol):          # anchor at most negative
        rows[mu] = sol
    for mu, sol in _trace_side(list(reversed(pos)), residual_tol):  # anchor at most positive
        rows[mu] = sol

    mu_vals: list[float] = []
    pts: list[tuple[float, float]] = []
    resids: list[float] = []
    skipped: list[float] = [float(m) for m in grid[~keep]]
    for mu in sorted(rows):
        sol = rows[mu]
        if sol is None:
            skipped.append(mu)
            continue
        alpha, om, res = sol
        if plane is BoundaryPlane.ALPHA_OMEGA:
            pts.append((alpha, om))
        else:
            fp = frequencies_from_params(PlasmaParams(alpha, om))
            pts.append((fp.omega1, fp.nu1))
        mu_vals.append(mu)
        resids.append(res)

    if len(pts) < 2:
        raise ConvergenceError(
            "domain-boundary trace produced fewer than 2 points on "
            f"mu range {mu_range!r}")
    return DomainBoundary(plane=plane, points=tuple(pts),
                          mu_values=tuple(mu_vals), residuals=tuple(resids),
                          skipped_mu=tuple(sorted(skipped)))
