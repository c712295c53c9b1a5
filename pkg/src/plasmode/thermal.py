"""The thermalized field: Gaussian classicality witness, critical temperatures,
sourced-partition-function cumulants, moment assembly, squeezing parameters and
photon statistics.

All temperature dependence enters through coth(phi/2/theta) and the
overflow-safe disentangled coefficients, so every function here is usable
arbitrarily close to theta = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import disentangle_thermal
from .params import NonPositiveTemperature, ValidatedParams, derive
from .squeezing import MomentSet, squeezing_report


def _check_theta(theta: float) -> None:
    if not theta > 0.0:
        raise NonPositiveTemperature(f"theta must be > 0, got {theta}")


def bisect_zero(fn, lo: float, hi: float, xtol: float = 1e-12, maxiter: int = 200) -> float:
    """Plain bisection for a sign change of fn on [lo, hi]."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if fmid == 0.0 or hi - lo < xtol:
            return mid
        if (fmid > 0.0) == (fhi > 0.0):
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class GaussianWitness:
    """Coefficient matrix of the quadratic form in <-z|rho|z> e^{|z|^2}.

    classical is det > 0 (the Gaussian transform converges); the boundary
    det = 0 is reported as classical with the flag below.
    """

    m: np.ndarray
    det: float
    trace: float
    classical: bool

    @property
    def boundary(self) -> bool:
        return self.det == 0.0


def witness_matrix(vp: ValidatedParams, theta: float) -> GaussianWitness:
    """Gaussian witness from the thermal disentangled coefficients."""
    _check_theta(theta)
    form = disentangle_thermal(vp, theta)
    egh = math.exp(0.5 * form.gamma.real)
    b1, b2 = form.beta.real, form.beta.imag
    m = np.array([[egh - b1, -b2], [-b2, egh + b1]])
    det = egh * egh - (b1 * b1 + b2 * b2)
    return GaussianWitness(m=m, det=det, trace=2.0 * egh, classical=det >= 0.0)


@dataclass(frozen=True)
class CriticalTemps:
    """Exact witness-sign crossing theta_star and its leading-log estimate."""

    theta_star: float | None
    theta_c: float | None
    defined: bool


def critical_temperatures(vp: ValidatedParams) -> CriticalTemps:
    """theta_star = phi/asinh(phi/|omega1|) and theta_c = omega/(2 ln(omega/|omega1|)).

    Undefined for omega1 = 0: the free thermal field stays classical at every
    temperature.
    """
    a1 = abs(vp.omega1)
    if a1 == 0.0:
        return CriticalTemps(theta_star=None, theta_c=None, defined=False)
    phi = derive(vp).phi
    theta_star = phi / math.asinh(phi / a1)
    theta_c = vp.omega / (2.0 * math.log(vp.omega / a1))
    return CriticalTemps(theta_star=theta_star, theta_c=theta_c, defined=True)


@dataclass(frozen=True)
class ThermalCumulants:
    """Log-derivatives of the sourced partition function at zero sources."""

    t_eta: complex
    t_eps: complex
    t_etaeta: complex
    t_epseps: complex
    t_epseta: float


def cumulants(vp: ValidatedParams, theta: float) -> ThermalCumulants:
    """The five nonvanishing cumulants of the sourced partition function."""
    _check_theta(theta)
    dp = derive(vp)
    coth = 1.0 / math.tanh(0.5 * dp.phi / theta)
    t_etaeta = -(vp.omega1 / (2.0 * dp.phi)) * coth
    t_epseta = 0.5 * (1.0 + (0.5 * vp.omega / dp.phi) * coth)
    return ThermalCumulants(
        t_eta=-dp.alpha,
        t_eps=-dp.alpha.conjugate(),
        t_etaeta=t_etaeta,
        t_epseps=t_etaeta.conjugate(),
        t_epseta=t_epseta,
    )


def moments_from_cumulants(c: ThermalCumulants) -> MomentSet:
    """Ordered moments of the thermal state, Gaussian-assembled from cumulants."""
    m1 = c.t_eta
    m1c = c.t_eps
    aa = c.t_etaeta + m1 * m1
    a_adag = c.t_epseta + m1c * m1
    a2ad2 = (
        c.t_etaeta * c.t_epseps
        + 2.0 * c.t_epseta**2
        + 4.0 * m1c * m1 * c.t_epseta
        + m1 * m1 * c.t_epseps
        + m1c * m1c * c.t_etaeta
        + m1 * m1 * m1c * m1c
    )
    a4 = m1**4 + 6.0 * m1 * m1 * c.t_etaeta + 3.0 * c.t_etaeta**2
    ordered = {
        (0, 0): 1.0 + 0j,
        (1, 0): m1,
        (0, 1): m1c,
        (2, 0): aa,
        (0, 2): aa.conjugate(),
        (1, 1): a_adag,
        (2, 2): a2ad2,
        (4, 0): a4,
        (0, 4): a4.conjugate(),
    }
    return MomentSet(ordered=ordered, source="closed-form-thermal")


@dataclass(frozen=True)
class ThermalSqueezing:
    """First- and second-order squeezing parameters of the thermal state."""

    d1: float
    d1_zhang: float
    d2: float
    d2_zhang: float


def thermal_squeezing(vp: ValidatedParams, theta: float) -> ThermalSqueezing:
    """d1 in closed form; d2 through the generic order-k machinery.

    d1 = (t_epseta - |t_etaeta| - 1)/2 and its Zhang variant replaces the
    modulus by the real part.  The order-2 values run the shared metric code
    on the assembled moments rather than re-deriving a dedicated formula.
    """
    _check_theta(theta)
    c = cumulants(vp, theta)
    d1 = 0.5 * (c.t_epseta - abs(c.t_etaeta) - 1.0) + 0.0
    d1_zhang = 0.5 * (c.t_epseta + c.t_etaeta.real - 1.0) + 0.0
    report = squeezing_report(moments_from_cumulants(c), k=2)
    return ThermalSqueezing(
        d1=d1, d1_zhang=d1_zhang, d2=report.dk, d2_zhang=report.dk_zhang
    )


def mean_photon_number(vp: ValidatedParams, theta: float) -> float:
    """<a^dag a> of the thermal state."""
    _check_theta(theta)
    c = cumulants(vp, theta)
    return c.t_epseta + abs(c.t_eta) ** 2 - 1.0


def mandel_excess(vp: ValidatedParams, theta: float) -> float:
    """(Delta n)^2 - <n> of the thermal state, from the moment pipeline.

    For real omega1 this equals the order-2 Zhang parameter; the identity is
    cross-checked on every call.
    """
    _check_theta(theta)
    moments = moments_from_cumulants(cumulants(vp, theta))
    n_mean = moments.normal_moment(1, 1).real
    n2 = moments.normal_moment(2, 2).real + n_mean
    excess = n2 - n_mean * n_mean - n_mean
    if vp.omega1.imag == 0.0:
        d2_zhang = squeezing_report(moments, k=2).dk_zhang
        if abs(excess - d2_zhang) > 1e-10 * max(1.0, abs(excess), abs(d2_zhang)):
            raise AssertionError(
                f"photon-variance excess {excess!r} != order-2 Zhang {d2_zhang!r}"
            )
    return excess
