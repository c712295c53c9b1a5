"""Transfer matrix of the quadratic generator and its ordered-exponential form.

The quadratic part P = omega*K3 + omega1*K+ + omega1**K- acts on (a, a^dag)
through a 2x2 matrix with unit determinant.  The same group element factors
as exp(beta*K+) exp(gamma*K3) exp(delta*K-); the coefficients below cover both
real time (unitary) and inverse temperature (thermal) arguments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .params import NonPositiveTemperature, ValidatedParams, derive

_SMALL_PHASE = 1e-4


@dataclass(frozen=True)
class EvolutionMatrix:
    """2x2 action of exp(-i P t) on (a, a^dag), with the (f, g) pair.

    f is the top-left entry, g the top-right; the bottom row is (g*, f*) and
    |f|^2 - |g|^2 = 1.
    """

    matrix: np.ndarray
    f: complex
    g: complex


@dataclass(frozen=True)
class DisentangledForm:
    """Coefficients of exp(beta*K+) exp(gamma*K3) exp(delta*K-).

    kind is "unitary" (argument = time t) or "thermal" (argument = theta).
    Thermal forms satisfy delta = beta* and Im(gamma) = 0.
    """

    beta: complex
    gamma: complex
    delta: complex
    kind: str
    argument: complex


def _sin_over_phi(phi: float, t: complex) -> complex:
    """sin(phi*t)/phi, with a series fallback for |phi*t| < 1e-4."""
    x = phi * t
    if abs(x) < _SMALL_PHASE:
        x2 = x * x
        return t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0)
    return cmath.sin(x) / phi


def evolution_matrix(vp: ValidatedParams, t: float) -> EvolutionMatrix:
    """Closed-form exp(-i*t*Ptilde) for the 2x2 generator of the mode map."""
    phi = derive(vp).phi
    s = _sin_over_phi(phi, t)
    cos = cmath.cos(phi * t)
    f = cos + 1j * (0.5 * vp.omega) * s
    fbar = cos - 1j * (0.5 * vp.omega) * s
    g = 1j * vp.omega1 * s
    gbar = -1j * vp.omega1.conjugate() * s
    matrix = np.array([[f, g], [gbar, fbar]], dtype=complex)
    return EvolutionMatrix(matrix=matrix, f=complex(f), g=complex(g))


def _winding_number(phi: float, t: float, f: complex) -> int:
    """Winding count of f(t) around the origin.

    The continuous argument of f stays within pi/2 of phi*t (both cross
    quarter-period marks together and the argument is monotone), so rounding
    recovers the integer number of turns exactly.
    """
    return int(round((phi * t - cmath.phase(f)) / (2.0 * math.pi)))


def disentangle_unitary(
    vp: ValidatedParams, t: complex, branch: str = "principal"
) -> DisentangledForm:
    """Wei-Norman coefficients of exp(-i P t).

    Parameters
    ----------
    vp : ValidatedParams
    t : real time (complex accepted, used by the thermal continuation checks)
    branch : "principal" or "continuous"
        gamma = -2 log f needs a log branch.  "principal" takes the principal
        log.  "continuous" unwraps the argument of f along real time so that
        gamma(t) is continuous with gamma(0) = 0, which keeps the recomposed
        ladder operator equal to exp(-i P t) across period boundaries (the
        two choices differ by a global sign per winding of f).
    """
    if branch not in ("principal", "continuous"):
        raise ValueError(f"unknown branch {branch!r}")
    phi = derive(vp).phi
    s = _sin_over_phi(phi, t)
    f = cmath.cos(phi * t) + 1j * (0.5 * vp.omega) * s
    beta = -1j * vp.omega1 * s / f
    delta = -1j * vp.omega1.conjugate() * s / f
    gamma = -2.0 * cmath.log(f)
    if branch == "continuous" and isinstance(t, (int, float)):
        gamma -= 4j * math.pi * _winding_number(phi, float(t), f)
    return DisentangledForm(
        beta=beta, gamma=gamma, delta=delta, kind="unitary", argument=t
    )


def disentangle_thermal(vp: ValidatedParams, theta: float) -> DisentangledForm:
    """Wei-Norman coefficients of exp(-P/theta), in overflow-safe form.

    Valid for every theta > 0: the hyperbolic functions are factored so that
    theta -> 0+ never overflows.
    """
    if not theta > 0.0:
        raise NonPositiveTemperature(f"theta must be > 0, got {theta}")
    phi = derive(vp).phi
    x = phi / theta
    # cosh(x) + (omega/2phi) sinh(x) = e^x * inner
    em = math.exp(-2.0 * x) if x < 350.0 else 0.0
    inner = 0.5 * (1.0 + em) + (0.5 * vp.omega / phi) * 0.5 * (1.0 - em)
    gamma = complex(-2.0 * (x + math.log(inner)))
    beta = -vp.omega1 / (phi / math.tanh(x) + 0.5 * vp.omega)
    return DisentangledForm(
        beta=beta, gamma=gamma, delta=beta.conjugate(), kind="thermal", argument=theta
    )
