import numpy as np

from plasmode import ModelParams, validate


def random_validated(rng: np.random.Generator, max_coupling: float = 0.05):
    """Random parameters inside the weak-coupling regime."""
    omega = rng.uniform(0.5, 2.0)
    a1 = rng.uniform(0.002, max_coupling) * omega
    ph1 = rng.uniform(0.0, 2.0 * np.pi)
    a2 = rng.uniform(0.0, 0.2) * omega
    ph2 = rng.uniform(0.0, 2.0 * np.pi)
    lam = rng.uniform(0.0, 0.5) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    return validate(
        ModelParams(
            omega=omega,
            omega1=a1 * np.exp(1j * ph1),
            omega2=a2 * np.exp(1j * ph2),
            lambda0=complex(lam),
        )
    )
