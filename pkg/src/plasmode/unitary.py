"""Short-time unitary evolution of the initial coherent state.

Closed forms for the coherent-state matrix elements of U(t), the divergence
witness for the quasi-probability weight of the evolved state, and the
first-order squeezing trajectory.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .algebra import disentangle_unitary, evolution_matrix
from .params import ValidatedParams, derive
from .squeezing import MomentSet

_TOL_ZERO_BETA = 1e-12


@dataclass(frozen=True)
class KernelCoeffs:
    """Shift coefficients of the coherent-state kernel of U(t).

    p, q, r absorb the displacement; phase_rate is the real scalar whose
    e^{i*rate*t} multiplies the kernel (the displacement energy shift).
    """

    beta: complex
    gamma: complex
    delta: complex
    p: complex
    q: complex
    r: complex
    phase_rate: float
    t: float


def kernel_coefficients(
    vp: ValidatedParams, t: float, branch: str = "principal"
) -> KernelCoeffs:
    """Disentangled coefficients plus displacement shifts for the kernel."""
    form = disentangle_unitary(vp, t, branch=branch)
    dp = derive(vp)
    alpha = dp.alpha
    egh = cmath.exp(0.5 * form.gamma)
    p = 2.0 * (egh - 1.0) * alpha + 2.0 * form.beta * alpha.conjugate()
    q = 2.0 * (egh - 1.0) * alpha.conjugate() + 2.0 * form.delta * alpha
    r = (
        form.beta * alpha.conjugate() ** 2
        + form.delta * alpha**2
        + 2.0 * (egh - 1.0) * abs(alpha) ** 2
    )
    return KernelCoeffs(
        beta=form.beta,
        gamma=form.gamma,
        delta=form.delta,
        p=p,
        q=q,
        r=r,
        phase_rate=dp.energy_shift,
        t=t,
    )


def coherent_kernel(
    vp: ValidatedParams,
    chi: complex,
    zeta: complex,
    t: float,
    branch: str = "principal",
) -> complex:
    """<chi| U(t) |zeta> in closed form.

    Includes the e^{gamma/4} prefactor (principal branch by default; the
    "continuous" branch keeps the metaplectic sign right past half periods)
    and the global e^{i*shift*t} phase, so the value is directly comparable
    to ladder-assembled oracle amplitudes.
    """
    kc = kernel_coefficients(vp, t, branch=branch)
    egh = cmath.exp(0.5 * kc.gamma)
    exponent = (
        -0.5 * (abs(chi) ** 2 + abs(zeta) ** 2)
        + 0.5
        * (
            kc.beta * chi.conjugate() ** 2
            + kc.delta * zeta**2
            + 2.0 * egh * chi.conjugate() * zeta
            + kc.p * chi.conjugate()
            + kc.q * zeta
            + kc.r
        )
    )
    return cmath.exp(0.25 * kc.gamma) * cmath.exp(1j * kc.phase_rate * t) * cmath.exp(exponent)


@dataclass(frozen=True)
class PFunctionVerdict:
    """Existence verdict for the coherent-weight function of the evolved state.

    The weight is a delta function exactly when the pair coefficient beta(t)
    vanishes; any nonzero beta makes the defining Gaussian integral diverge
    (its quadratic form has eigenvalues +-|beta|).
    """

    beta_at_t: complex
    nonclassical: bool
    note: str  # "delta-function" or "divergent-gaussian"


def p_function_witness_unitary(vp: ValidatedParams, t: float) -> PFunctionVerdict:
    """Non-classicality verdict for the unitarily evolved coherent state."""
    beta = disentangle_unitary(vp, t).beta
    nonclassical = abs(beta) > _TOL_ZERO_BETA
    return PFunctionVerdict(
        beta_at_t=beta,
        nonclassical=nonclassical,
        note="divergent-gaussian" if nonclassical else "delta-function",
    )


def d1_unitary(vp: ValidatedParams, t: float) -> float:
    """First-order squeezing parameter |g|(|g| - |f|)/2; never positive."""
    ev = evolution_matrix(vp, t)
    ag = abs(ev.g)
    return 0.5 * ag * (ag - abs(ev.f)) + 0.0


def heisenberg_mean(vp: ValidatedParams, t: float) -> complex:
    """<a>(t) for the initial coherent state lambda0.

    U^dag a U = f* a - g a^dag + (f* - 1) alpha - g alpha*.
    """
    ev = evolution_matrix(vp, t)
    alpha = derive(vp).alpha
    lam = vp.lambda0
    fc = ev.f.conjugate()
    return fc * lam - ev.g * lam.conjugate() + (fc - 1.0) * alpha - ev.g * alpha.conjugate()


def unitary_moment_set(vp: ValidatedParams, t: float) -> MomentSet:
    """Ordered moments of the evolved coherent state up to second order.

    The evolved state is Gaussian with pair correlation -f* g and anti-normal
    spread 1 + |g|^2, which is everything order-1 squeezing needs.  Higher
    orders for the unitary case are available through the oracle only.
    """
    mean = heisenberg_mean(vp, t)
    ev = evolution_matrix(vp, t)
    pair = -ev.f.conjugate() * ev.g
    spread = 1.0 + abs(ev.g) ** 2
    ordered = {
        (0, 0): 1.0 + 0j,
        (1, 0): mean,
        (0, 1): mean.conjugate(),
        (2, 0): pair + mean * mean,
        (0, 2): (pair + mean * mean).conjugate(),
        (1, 1): spread + abs(mean) ** 2,
    }
    return MomentSet(ordered=ordered, source="closed-form-unitary")
