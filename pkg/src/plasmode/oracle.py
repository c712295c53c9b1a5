"""Dense truncated-Fock-space oracle.

Everything here is brute force on the first N number states: ladder matrices,
exact Hermitian eigendecompositions for propagators and Gibbs operators, and
ordered moments by direct trace.  Operators whose truncated version differs
from the true projection near the ladder edge (propagators, Gibbs factors,
matrix elements) are computed on an escalating working ladder until the
requested block stops changing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import DisentangledForm
from .params import NonPositiveTemperature, ValidatedParams, derive
from .squeezing import MomentSet


class TruncationNotConverged(RuntimeError):
    """Escalation hit the ladder cap with the requested quantity still moving."""


class OrderTooHighForTruncation(ValueError):
    """Moment order too close to the ladder size to be trustworthy."""


@dataclass(frozen=True)
class TruncationConfig:
    """Escalation policy: start size, hard cap, and convergence tolerance."""

    n_start: int = 32
    n_max: int = 512
    rel_tol: float = 1e-8

    def __post_init__(self) -> None:
        if not (4 <= self.n_start <= self.n_max):
            raise ValueError(
                f"need 4 <= n_start <= n_max, got {self.n_start}, {self.n_max}"
            )


DEFAULT_CONFIG = TruncationConfig()

# Probed ordered moments (n, m) for state-convergence checks, up to order 4.
_PROBE_ORDERS = ((1, 0), (2, 0), (1, 1), (2, 2), (4, 0))


@dataclass(frozen=True)
class TruncatedState:
    """Dense density matrix on a dim-level ladder; psi kept for pure states."""

    dim: int
    rho: np.ndarray
    kind: str  # "pure" or "mixed"
    psi: np.ndarray | None = None


def destroy(dim: int) -> np.ndarray:
    """Annihilation operator on the dim-level ladder."""
    return np.diag(np.sqrt(np.arange(1.0, dim)), k=1).astype(complex)


def build_hamiltonian(vp: ValidatedParams, dim: int) -> np.ndarray:
    """Full mode Hamiltonian on the ladder; Hermitian by construction."""
    if dim < 4:
        raise ValueError("dim must be >= 4")
    a = destroy(dim)
    ad = a.conj().T
    n_diag = np.diag(np.arange(dim, dtype=float) + 0.5).astype(complex)
    ad2 = ad @ ad
    return (
        0.5 * vp.omega * n_diag
        + 0.5 * vp.omega1 * ad2
        + 0.5 * vp.omega1.conjugate() * ad2.conj().T
        + vp.omega2 * ad
        + vp.omega2.conjugate() * a
    )


def build_quadratic_part(vp: ValidatedParams, dim: int) -> np.ndarray:
    """Drive-free generator P = omega*K3 + omega1*K+ + omega1* K-."""
    stripped = ValidatedParams(
        omega=vp.omega, omega1=vp.omega1, omega2=0j, lambda0=vp.lambda0
    )
    return build_hamiltonian(stripped, dim)


def coherent_vector(lam: complex, dim: int) -> np.ndarray:
    """Normalized coherent-state coefficients by ladder recursion."""
    v = np.zeros(dim, dtype=complex)
    v[0] = 1.0
    for n in range(1, dim):
        v[n] = v[n - 1] * lam / math.sqrt(n)
    v *= math.exp(-0.5 * abs(lam) ** 2)
    return v / np.linalg.norm(v)


def exp_banded_raise(coeff: complex, step: int, dim: int) -> np.ndarray:
    """exp(coeff * a^dag^step / step!), an exact finite series on the ladder.

    step = 1 gives exp(coeff * a^dag); step = 2 gives exp(coeff * K+) with
    K+ = a^dag^2 / 2.  The operator only raises, so each output entry receives
    exactly one series term and the fill is exact (no remainder).
    """
    out = np.eye(dim, dtype=complex)
    step_fact = float(math.factorial(step))
    for n in range(dim):
        val = 1.0 + 0j
        j = 0
        row = n
        while row + step < dim:
            j += 1
            row += step
            rung = 1.0
            for r in range(row - step + 1, row + 1):
                rung *= r
            val = val * coeff * math.sqrt(rung) / (j * step_fact)
            out[row, n] = val
    return out


def exp_k_plus(beta: complex, dim: int) -> np.ndarray:
    """exp(beta * K+) with K+ = a^dag^2 / 2, exact on the ladder."""
    return exp_banded_raise(beta, 2, dim)


def exp_k_minus(delta: complex, dim: int) -> np.ndarray:
    """exp(delta * K-) with K- = a^2 / 2, exact on the ladder."""
    return exp_banded_raise(delta, 2, dim).T.copy()


def exp_a_dag(coeff: complex, dim: int) -> np.ndarray:
    """exp(coeff * a^dag), exact on the ladder."""
    return exp_banded_raise(coeff, 1, dim)


def exp_a(coeff: complex, dim: int) -> np.ndarray:
    """exp(coeff * a), exact on the ladder."""
    return exp_banded_raise(coeff, 1, dim).T.copy()


def recompose_disentangled(form: DisentangledForm, dim: int) -> np.ndarray:
    """Product exp(beta*K+) exp(gamma*K3) exp(delta*K-) on the ladder.

    The raising/lowering factors populate each entry with a single series
    term and the K3 factor is diagonal, so the truncated product equals the
    exact projection of the infinite-ladder operator onto the first dim
    levels.
    """
    diag = np.exp(form.gamma * (2.0 * np.arange(dim) + 1.0) / 4.0)
    return (exp_k_plus(form.beta, dim) * diag[None, :]) @ exp_k_minus(form.delta, dim)


def _herm_function(matrix: np.ndarray, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    evals, vecs = np.linalg.eigh(matrix)
    return (vecs * fn(evals)[None, :]) @ vecs.conj().T


def _work_dims(dim: int, cfg: TruncationConfig) -> list[int]:
    dims = []
    d = max(dim, 4)
    while d < cfg.n_max:
        dims.append(d)
        d *= 2
    dims.append(cfg.n_max)
    return dims


def _escalate_block(
    build: Callable[[int], np.ndarray], dim: int, cfg: TruncationConfig, what: str
) -> np.ndarray:
    """Escalate the working ladder until the top-left dim x dim block settles."""
    prev: np.ndarray | None = None
    for work in _work_dims(dim, cfg):
        block = build(work)[:dim, :dim]
        if prev is not None:
            scale = max(np.abs(prev).max(), 1e-300)
            if np.abs(block - prev).max() / scale < cfg.rel_tol:
                return block
        prev = block
    raise TruncationNotConverged(f"{what}: block of size {dim} not converged by n_max={cfg.n_max}")


def unitary_operator(
    vp: ValidatedParams, t: float, dim: int, cfg: TruncationConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """Converged dim x dim block of exp(-i H t)."""
    return _escalate_block(
        lambda d: _herm_function(build_hamiltonian(vp, d), lambda e: np.exp(-1j * e * t)),
        dim,
        cfg,
        "exp(-iHt)",
    )


def quadratic_propagator(
    vp: ValidatedParams, t: float, dim: int, cfg: TruncationConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """Converged dim x dim block of exp(-i P t)."""
    return _escalate_block(
        lambda d: _herm_function(build_quadratic_part(vp, d), lambda e: np.exp(-1j * e * t)),
        dim,
        cfg,
        "exp(-iPt)",
    )


def quadratic_gibbs(
    vp: ValidatedParams, theta: float, dim: int, cfg: TruncationConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """Converged dim x dim block of exp(-P/theta)."""
    if not theta > 0.0:
        raise NonPositiveTemperature(f"theta must be > 0, got {theta}")

    def build(d: int) -> np.ndarray:
        p = build_quadratic_part(vp, d)
        evals, vecs = np.linalg.eigh(p)
        # spectrum of P is positive, so only harmless underflow can occur
        weights = np.exp(-evals / theta)
        return (vecs * weights[None, :]) @ vecs.conj().T

    return _escalate_block(build, dim, cfg, "exp(-P/theta)")


def _state_probes(psi_or_rho, a: np.ndarray, pure: bool) -> list[complex]:
    ad = a.conj().T
    values = []
    for n, m in _PROBE_ORDERS:
        left = np.linalg.matrix_power(ad, n)
        right = np.linalg.matrix_power(ad, m)
        if pure:
            values.append(complex(np.vdot(left @ psi_or_rho, right @ psi_or_rho)))
        else:
            an = np.linalg.matrix_power(a, n)
            values.append(complex(np.trace(psi_or_rho @ an @ right)))
    return values


def _probes_settled(prev: Sequence[complex], cur: Sequence[complex], rel_tol: float) -> bool:
    return all(
        abs(c - p) / max(1.0, abs(c), abs(p)) < rel_tol for p, c in zip(prev, cur)
    )


def evolve_coherent(
    vp: ValidatedParams, t: float, cfg: TruncationConfig = DEFAULT_CONFIG
) -> TruncatedState:
    """U(t) |lambda0> on an escalating ladder; pure by construction."""
    prev: list[complex] | None = None
    for dim in _work_dims(cfg.n_start, cfg):
        h = build_hamiltonian(vp, dim)
        evals, vecs = np.linalg.eigh(h)
        psi0 = coherent_vector(vp.lambda0, dim)
        psi = vecs @ (np.exp(-1j * evals * t) * (vecs.conj().T @ psi0))
        cur = _state_probes(psi, destroy(dim), pure=True)
        if prev is not None and _probes_settled(prev, cur, cfg.rel_tol):
            return TruncatedState(dim=dim, rho=np.outer(psi, psi.conj()), kind="pure", psi=psi)
        prev = cur
    raise TruncationNotConverged(f"evolve_coherent: moments still moving at n_max={cfg.n_max}")


def thermal_state(
    vp: ValidatedParams, theta: float, cfg: TruncationConfig = DEFAULT_CONFIG
) -> TruncatedState:
    """Normalized exp(-H/theta)/Z on an escalating ladder."""
    if not theta > 0.0:
        raise NonPositiveTemperature(f"theta must be > 0, got {theta}")
    prev: list[complex] | None = None
    for dim in _work_dims(cfg.n_start, cfg):
        h = build_hamiltonian(vp, dim)
        evals, vecs = np.linalg.eigh(h)
        weights = np.exp(-(evals - evals[0]) / theta)
        rho = (vecs * weights[None, :]) @ vecs.conj().T
        rho /= np.trace(rho).real
        cur = _state_probes(rho, destroy(dim), pure=False)
        if prev is not None and _probes_settled(prev, cur, cfg.rel_tol):
            return TruncatedState(dim=dim, rho=rho, kind="mixed")
        prev = cur
    raise TruncationNotConverged(f"thermal_state: moments still moving at n_max={cfg.n_max}")


def moment(state: TruncatedState, n: int, m: int) -> complex:
    """Ordered moment <a^n a^dag^m> by direct trace."""
    if n + m > state.dim // 4:
        raise OrderTooHighForTruncation(
            f"order {n + m} too high for a {state.dim}-level ladder"
        )
    a = destroy(state.dim)
    ad = a.conj().T
    if state.kind == "pure" and state.psi is not None:
        return complex(
            np.vdot(np.linalg.matrix_power(ad, n) @ state.psi,
                    np.linalg.matrix_power(ad, m) @ state.psi)
        )
    return complex(
        np.trace(state.rho @ np.linalg.matrix_power(a, n) @ np.linalg.matrix_power(ad, m))
    )


def normal_moment(state: TruncatedState, m: int, n: int) -> complex:
    """Normally ordered moment <a^dag^m a^n> by direct trace."""
    if n + m > state.dim // 4:
        raise OrderTooHighForTruncation(
            f"order {n + m} too high for a {state.dim}-level ladder"
        )
    a = destroy(state.dim)
    if state.kind == "pure" and state.psi is not None:
        return complex(
            np.vdot(np.linalg.matrix_power(a, m) @ state.psi,
                    np.linalg.matrix_power(a, n) @ state.psi)
        )
    ad = a.conj().T
    return complex(
        np.trace(state.rho @ np.linalg.matrix_power(ad, m) @ np.linalg.matrix_power(a, n))
    )


def moment_set(state: TruncatedState, k_max: int = 2) -> MomentSet:
    """All ordered moments with n + m <= 2*k_max, plus measured normal ones."""
    ordered = {}
    normal = {}
    for n in range(2 * k_max + 1):
        for m in range(2 * k_max + 1 - n):
            ordered[(n, m)] = moment(state, n, m)
            normal[(m, n)] = normal_moment(state, m, n)
    return MomentSet(ordered=ordered, source="oracle", normal_measured=normal)


def coherent_matrix_element(
    vp: ValidatedParams,
    chi: complex,
    zeta: complex,
    t: float,
    cfg: TruncationConfig = DEFAULT_CONFIG,
) -> complex:
    """<chi| exp(-i H t) |zeta> assembled from ladder amplitudes, escalated."""
    prev: complex | None = None
    for dim in _work_dims(cfg.n_start, cfg):
        h = build_hamiltonian(vp, dim)
        evals, vecs = np.linalg.eigh(h)
        zvec = coherent_vector(zeta, dim)
        cvec = coherent_vector(chi, dim)
        value = complex(np.vdot(cvec, vecs @ (np.exp(-1j * evals * t) * (vecs.conj().T @ zvec))))
        if prev is not None and abs(value - prev) / max(1.0, abs(value)) < cfg.rel_tol:
            return value
        prev = value
    raise TruncationNotConverged("coherent_matrix_element not converged")


def sourced_log_partition(
    vp: ValidatedParams,
    theta: float,
    eps: float,
    eta: float,
    cfg: TruncationConfig = DEFAULT_CONFIG,
) -> complex:
    """ln Z(eps, eta) with the sources inserted as disentangled factors.

    Z(eps, eta) = e^{s/theta} Tr[ e^{eps (a^dag - alpha*)} e^{-P/theta}
                                   e^{eta (a - alpha)} ]
    with s the displacement energy shift.  Scalar factors are pulled out
    analytically; the trace is evaluated on an escalating ladder.
    """
    if not theta > 0.0:
        raise NonPositiveTemperature(f"theta must be > 0, got {theta}")
    dp = derive(vp)
    prev: complex | None = None
    for dim in _work_dims(cfg.n_start, cfg):
        p = build_quadratic_part(vp, dim)
        evals, vecs = np.linalg.eigh(p)
        w = (vecs * np.exp(-(evals - evals[0]) / theta)[None, :]) @ vecs.conj().T
        trace = complex(np.trace(exp_a_dag(eps, dim) @ w @ exp_a(eta, dim)))
        value = (
            dp.energy_shift / theta
            - evals[0] / theta
            - eps * dp.alpha.conjugate()
            - eta * dp.alpha
            + np.log(trace)
        )
        if prev is not None and abs(value - prev) < cfg.rel_tol * max(1.0, abs(value)):
            return complex(value)
        prev = complex(value)
    raise TruncationNotConverged("sourced_log_partition not converged")


def interior(dim: int) -> slice:
    """First 3*dim/4 levels: the edge-effect-free comparison window."""
    return slice(0, (3 * dim) // 4)
