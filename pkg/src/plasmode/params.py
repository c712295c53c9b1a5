"""Model parameters of the driven single-mode Hamiltonian and derived scalars.

The mode Hamiltonian is

    H = (omega/2) (a^dag a + 1/2) + (omega1/2) a^dag^2 + (omega1*/2) a^2
        + omega2 a^dag + omega2* a

with omega real, omega1 and omega2 complex.  Everything downstream works in
the elliptic regime |omega1| < omega/2, where the quadratic part has a real
Bogoliubov frequency phi = sqrt(omega^2/4 - |omega1|^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class NonPositiveFrequency(ValueError):
    """omega must be strictly positive."""


class DegenerateSpectrum(ValueError):
    """|omega1| >= omega/2: phi^2 <= 0, the quadratic part loses its discrete ladder."""


class NonPositiveTemperature(ValueError):
    """Thermal quantities require theta = k_B T > 0."""


@dataclass(frozen=True)
class ModelParams:
    """Raw Hamiltonian coefficients plus the initial coherent amplitude.

    Attributes
    ----------
    omega : float
        Coefficient of (a^dag a + 1/2)/2, in energy units (hbar = 1).
    omega1 : complex
        Pair-creation coefficient (of a^dag^2 / 2).
    omega2 : complex
        Linear drive coefficient (of a^dag).
    lambda0 : complex
        Initial coherent amplitude for unitary-evolution runs.
    """

    omega: float
    omega1: complex
    omega2: complex
    lambda0: complex = 0j

    def to_json_dict(self) -> dict:
        """Canonical JSON form: complex numbers as [re, im] pairs."""
        return {
            "omega": float(self.omega),
            "omega1": [self.omega1.real, self.omega1.imag],
            "omega2": [self.omega2.real, self.omega2.imag],
            "lambda0": [self.lambda0.real, self.lambda0.imag],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ModelParams":
        def as_complex(value) -> complex:
            if isinstance(value, (list, tuple)):
                re, im = value
                return complex(float(re), float(im))
            return complex(float(value), 0.0)

        return cls(
            omega=float(data["omega"]),
            omega1=as_complex(data.get("omega1", 0.0)),
            omega2=as_complex(data.get("omega2", 0.0)),
            lambda0=as_complex(data.get("lambda0", 0.0)),
        )


@dataclass(frozen=True)
class ValidatedParams:
    """ModelParams that passed the regime guard; accepted by every operation."""

    omega: float
    omega1: complex
    omega2: complex
    lambda0: complex


def validate(params: ModelParams) -> ValidatedParams:
    """Regime guard: omega > 0 and |omega1| < omega/2.

    Raises
    ------
    NonPositiveFrequency
        If omega <= 0.
    DegenerateSpectrum
        If |omega1| >= omega/2.  At equality phi = 0 and the 2x2 coefficient
        matrix is singular; beyond it the dynamics turn hyperbolic.  Neither
        case is supported by the closed forms.
    """
    if not params.omega > 0.0:
        raise NonPositiveFrequency(f"omega must be > 0, got {params.omega}")
    if abs(params.omega1) >= params.omega / 2.0:
        raise DegenerateSpectrum(
            f"|omega1| = {abs(params.omega1):g} >= omega/2 = {params.omega / 2.0:g}"
        )
    return ValidatedParams(
        omega=float(params.omega),
        omega1=complex(params.omega1),
        omega2=complex(params.omega2),
        lambda0=complex(params.lambda0),
    )


@dataclass(frozen=True)
class DerivedParams:
    """Scalars fixed by the validated coefficients.

    phi    : Bogoliubov frequency sqrt(omega^2/4 - |omega1|^2) of the quadratic part.
    alpha  : displacement removing the linear drive, first component of A^-1 (omega2, omega2*)^T.
    c      : Hermitian form value (omega2, omega2*) A^-1 (omega2, omega2*)^T, real.
    tau    : period 2*pi/phi of the reduced evolution.

    The spectrum of H is phi*(n + 1/2) - c/2: completing the square in the
    displacement contributes half of the Hermitian form, exposed below as
    ``energy_shift``.
    """

    phi: float
    alpha: complex
    c: float
    tau: float

    @property
    def energy_shift(self) -> float:
        """Scalar s in H = D^dag(alpha) (P - s) D(alpha); equals c/2."""
        return 0.5 * self.c


def derive(vp: ValidatedParams) -> DerivedParams:
    """Closed-form derived scalars for validated parameters."""
    phi2 = vp.omega**2 / 4.0 - abs(vp.omega1) ** 2
    phi = math.sqrt(phi2)
    alpha = (0.5 * vp.omega * vp.omega2 - vp.omega1 * vp.omega2.conjugate()) / phi2
    c = (
        vp.omega * abs(vp.omega2) ** 2
        - 2.0 * (vp.omega1.conjugate() * vp.omega2**2).real
    ) / phi2
    return DerivedParams(phi=phi, alpha=alpha, c=c, tau=2.0 * math.pi / phi)
