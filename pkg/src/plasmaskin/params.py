"""Model parameters and the conversions between their two natural forms.

The half-space problem is controlled by two dimensionless numbers:

    alpha      field-penetration (anomaly) parameter, > 0
    omega_big  driving frequency in units of the collision rate, >= 0

Everything downstream hangs off two derived complex constants:

    z0 = 1 - 1j*omega_big      collisional frequency shift
    a  = -1j*alpha / z0**3     prefactor of the dispersion kernel

The same physics is often stated through the pair (omega1, nu1): field
frequency and collision rate separately scaled by a common plasma rate.
The maps between the two forms are

    alpha = omega1 / nu1**3,   omega_big = omega1 / nu1
    nu1 = sqrt(omega_big / alpha),   omega1 = omega_big * nu1

and both directions are provided here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ValidationError

__all__ = [
    "PlasmaParams",
    "FrequencyPair",
    "PhysicalScales",
    "params_from_alpha_omega",
    "params_from_frequencies",
    "frequencies_from_params",
]


@dataclass(frozen=True)
class PlasmaParams:
    """Dimensionless control parameters plus the derived complex constants.

    omega_big = 0 is legal (static screening limit); alpha must be positive.
    """

    alpha: float
    omega_big: float
    z0: complex = field(init=False, repr=False, compare=False)
    a: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        omega_big = float(self.omega_big)
        if not math.isfinite(alpha) or alpha <= 0.0:
            raise ValidationError(
                f"alpha must be a positive finite number, got {self.alpha!r}")
        if not math.isfinite(omega_big) or omega_big < 0.0:
            raise ValidationError(
                f"omega_big must be finite and >= 0, got {self.omega_big!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "omega_big", omega_big)
        z0 = 1.0 - 1.0j * omega_big
        object.__setattr__(self, "z0", z0)
        object.__setattr__(self, "a", -1.0j * alpha / z0**3)


@dataclass(frozen=True)
class FrequencyPair:
    """Alternative parameterization (omega1, nu1), both strictly positive."""

    omega1: float
    nu1: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.omega1) or self.omega1 <= 0.0:
            raise ValidationError(
                f"omega1 must be a positive finite number, got {self.omega1!r}")
        if not math.isfinite(self.nu1) or self.nu1 <= 0.0:
            raise ValidationError(
                f"nu1 must be a positive finite number, got {self.nu1!r}")


@dataclass(frozen=True)
class PhysicalScales:
    """Dimensional inputs that turn the reduced impedance into ohms (Gaussian units).

    nu       collision frequency [1/s]
    ell      mean free path [cm]
    c_light  speed of light [cm/s]
    omega    field angular frequency [1/s]; consistency omega = omega_big * nu
             is enforced where the scales meet a PlasmaParams
    """

    nu: float
    ell: float
    c_light: float
    omega: float

    def __post_init__(self) -> None:
        for name in ("nu", "ell", "c_light", "omega"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0.0):
                raise ValidationError(
                    f"{name} must be a positive finite number, got {v!r}")


def params_from_alpha_omega(alpha: float, omega_big: float) -> PlasmaParams:
    """Build PlasmaParams from (alpha, omega_big), validating both."""
    return PlasmaParams(alpha=alpha, omega_big=omega_big)


def params_from_frequencies(pair: FrequencyPair) -> PlasmaParams:
    """(omega1, nu1) -> (alpha, omega_big)."""
    return PlasmaParams(alpha=pair.omega1 / pair.nu1**3,
                        omega_big=pair.omega1 / pair.nu1)


def frequencies_from_params(params: PlasmaParams) -> FrequencyPair:
    """(alpha, omega_big) -> (omega1, nu1).  Needs omega_big > 0 to invert."""
    if params.omega_big <= 0.0:
        raise ValidationError("the frequency-pair form is undefined at omega_big = 0")
    nu1 = math.sqrt(params.omega_big / params.alpha)
    return FrequencyPair(omega1=params.omega_big * nu1, nu1=nu1)
