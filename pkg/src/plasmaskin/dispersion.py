"""The dispersion function lambda(z) of the half-space kinetic problem.

lambda is defined off the real axis by a Gaussian-weighted Cauchy integral

    lambda(z) = 1 + (a z^3 / sqrt(pi)) Integral exp(-mu^2)/(mu - z) dmu

and is even in z.  In the upper half-plane it coincides with the entire
function

    lambda_U(z) = 1 + i sqrt(pi) a z^3 w(z)

where w is the Faddeeva function, and in the lower half-plane with
lambda_U(-z).  lambda_U itself blows up like exp(-z^2) below the real axis,
so every evaluation is routed through a point with Im z >= 0; that routing
is the main correctness constraint in this module.  Reflection uses
evenness, not conjugation: a is complex, so Schwarz symmetry does not hold
in the parameters.

On the real axis lambda jumps.  The one-sided limits split into a principal
part (Dawson integral) plus/minus half the jump:

    lambda_pm(eta)      = lambda_P(eta) +- j(eta)
    lambda_P(eta)       = 1 - 2 a eta^3 D(eta)
    j(eta)              = i sqrt(pi) a eta^3 exp(-eta^2)

On the imaginary axis the kernel collapses to the scaled complementary
error function; that path gets a dedicated helper because every resonance
integral of the solution runs along it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import dawsn, erfcx, wofz

from .errors import DomainEvaluationError
from .params import PlasmaParams

__all__ = [
    "DispersionSample",
    "BoundaryValues",
    "eval_lambda",
    "eval_lambda_prime",
    "eval_lambda_imag_axis",
    "eval_boundary",
    "sample_dispersion",
]

_SQRT_PI = np.sqrt(np.pi)


def _lambda_upper(z: np.ndarray, a: complex) -> np.ndarray:
    # entire continuation of lambda from above; only trustworthy for Im z >= 0
    return 1.0 + 1.0j * _SQRT_PI * a * z**3 * wofz(z)


def _lambda_upper_prime(z: np.ndarray, a: complex) -> np.ndarray:
    # d/dz of _lambda_upper via w'(z) = -2 z w(z) + 2i/sqrt(pi)
    zf = 1.0j * _SQRT_PI * wofz(z)
    return a * z * z * ((3.0 - 2.0 * z * z) * zf - 2.0 * z)


def _boundary_parts(eta: np.ndarray, a: complex) -> tuple[np.ndarray, np.ndarray]:
    """(principal part, half-jump) of lambda on the real axis, vectorized."""
    principal = 1.0 - 2.0 * a * eta**3 * dawsn(eta)
    jump = 1.0j * _SQRT_PI * a * eta**3 * np.exp(-(eta**2))
    return principal, jump


def _route_even(z: np.ndarray) -> np.ndarray:
    """Reflect lower-half-plane points into the upper half-plane.

    lambda(z) = lambda_U(z or -z), whichever argument has Im >= 0.  Real
    points are rejected: the function jumps there and the caller must pick a
    side through eval_boundary.
    """
    if np.any(z.imag == 0.0):
        raise DomainEvaluationError(
            "lambda is discontinuous on the real axis; use eval_boundary "
            "for its one-sided limits")
    return np.where(z.imag > 0.0, z, -z)


def eval_lambda(z, p: PlasmaParams):
    """lambda(z) for z off the real axis.  Scalar in, scalar out; array in,
    array out."""
    arr = np.asarray(z, dtype=np.complex128)
    out = _lambda_upper(_route_even(np.atleast_1d(arr)), p.a)
    return complex(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def eval_lambda_prime(z, p: PlasmaParams):
    """lambda'(z) off the real axis.

    lambda is even, so the derivative is odd: for Im z < 0 the value is
    -lambda_U'(-z), computed at the reflected upper-half-plane point.
    """
    arr = np.asarray(z, dtype=np.complex128)
    flat = np.atleast_1d(arr)
    out = _lambda_upper_prime(_route_even(flat), p.a)
    out = np.where(flat.imag > 0.0, out, -out)
    return complex(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def eval_lambda_imag_axis(tau, p: PlasmaParams):
    """lambda(i tau) for real tau, through erfcx: no cancellation, no overflow.

    Even in tau; tau = 0 returns the exact limit 1.
    """
    arr = np.asarray(tau, dtype=np.float64)
    t = np.abs(np.atleast_1d(arr))
    out = 1.0 + _SQRT_PI * p.a * t**3 * erfcx(t)
    return complex(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


@dataclass(frozen=True)
class DispersionSample:
    """lambda and lambda' packaged for one off-axis point."""

    z: complex
    lambda_value: complex
    lambda_prime: complex


def sample_dispersion(z: complex, p: PlasmaParams) -> DispersionSample:
    return DispersionSample(z=complex(z),
                            lambda_value=eval_lambda(z, p),
                            lambda_prime=eval_lambda_prime(z, p))


@dataclass(frozen=True)
class BoundaryValues:
    """One-sided limits of lambda at a real point eta.

    lambda_principal is the mean of the two limits (the principal-value
    interpretation of lambda on the axis); product is lambda_plus times
    lambda_minus, computed as principal^2 - halfjump^2 to dodge cancellation
    when the two factors nearly coincide.
    """

    eta: float
    lambda_plus: complex
    lambda_minus: complex
    lambda_principal: complex
    product: complex

    @property
    def jump(self) -> complex:
        """Full Plemelj jump lambda_plus - lambda_minus."""
        return self.lambda_plus - self.lambda_minus


def eval_boundary(eta, p: PlasmaParams):
    """Boundary data of lambda on the real axis.

    Scalar eta returns a BoundaryValues; an array returns a dict of arrays
    keyed by the same field names (the form the quadrature loops consume).
    """
    arr = np.asarray(eta, dtype=np.float64)
    flat = np.atleast_1d(arr)
    principal, halfjump = _boundary_parts(flat, p.a)
    plus = principal + halfjump
    minus = principal - halfjump
    product = principal * principal - halfjump * halfjump
    if arr.ndim == 0:
        return BoundaryValues(
            eta=float(arr),
            lambda_plus=complex(plus[0]),
            lambda_minus=complex(minus[0]),
            lambda_principal=complex(principal[0]),
            product=complex(product[0]),
        )
    shape = arr.shape
    return {
        "eta": flat.reshape(shape),
        "lambda_plus": plus.reshape(shape),
        "lambda_minus": minus.reshape(shape),
        "lambda_principal": principal.reshape(shape),
        "product": product.reshape(shape),
    }
