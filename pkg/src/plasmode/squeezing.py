"""Order-k squeezing metrics as pure functions of a moment table.

The k-th order quadrature is X_k(theta) = (a^k e^{-i theta} + a^dag^k
e^{i theta})/2.  D_k minimizes its variance deficit over theta; the Zhang
variant pins theta = 0.  Moments arrive as a MomentSet, so the same metric
code runs on closed-form and oracle sources alike.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Mapping

_TOL_ZERO_COMMUTATOR = 1e-12


class MissingMoments(KeyError):
    """The MomentSet lacks an ordered moment required by the metric."""


class ZeroCommutatorExpectation(ValueError):
    """|<[a^k, a^dag^k]>| below 1e-12: the squeezing threshold is degenerate."""


@dataclass(frozen=True)
class MomentSet:
    """Ordered expectation values <a^n a^dag^m> keyed by (n, m).

    Attributes
    ----------
    ordered : mapping (n, m) -> complex
        <a^n a^dag^m> with all a's to the left.
    source : str
        One of "closed-form-thermal", "closed-form-unitary", "oracle".
    normal_measured : mapping (m, n) -> complex, optional
        Independently measured <a^dag^m a^n>, kept for cross-checks; the
        metrics always use values derived from ``ordered``.
    """

    ordered: Mapping[tuple[int, int], complex]
    source: str
    normal_measured: Mapping[tuple[int, int], complex] | None = None

    def ordered_moment(self, n: int, m: int) -> complex:
        if n == 0 and m == 0:
            return 1.0 + 0j
        try:
            return self.ordered[(n, m)]
        except KeyError as exc:
            raise MissingMoments(f"ordered moment ({n}, {m}) not available") from exc

    def normal_moment(self, m: int, n: int) -> complex:
        """<a^dag^m a^n>, reduced to ordered moments by ladder commutation.

        a^n a^dag^m = sum_j j! C(n,j) C(m,j) a^dag^(m-j) a^(n-j), inverted
        recursively.
        """
        value = self.ordered_moment(n, m)
        for j in range(1, min(n, m) + 1):
            value -= (
                math.factorial(j) * math.comb(n, j) * math.comb(m, j)
            ) * self.normal_moment(m - j, n - j)
        return value

    def max_order(self) -> int:
        return max((n + m for n, m in self.ordered), default=0)

    def validate(self, tol: float = 1e-9) -> None:
        """Conjugation symmetry, unit commutator and positivity spot-checks."""
        for (n, m), value in self.ordered.items():
            mirror = self.ordered.get((m, n))
            if mirror is not None and abs(value - mirror.conjugate()) > tol * max(
                1.0, abs(value)
            ):
                raise ValueError(f"moment ({n},{m}) breaks conjugation symmetry")
        if (1, 1) in self.ordered:
            n_mean = self.normal_moment(1, 1).real
            if n_mean < -tol:
                raise ValueError(f"<a^dag a> = {n_mean} is negative")
        if (2, 2) in self.ordered:
            if self.normal_moment(2, 2).real < -tol:
                raise ValueError("<a^dag^2 a^2> is negative")
        if self.normal_measured:
            for (m, n), value in self.normal_measured.items():
                derived = self.normal_moment(m, n)
                if abs(value - derived) > tol * max(1.0, abs(value)):
                    raise ValueError(
                        f"measured <a^dag^{m} a^{n}> disagrees with reordering"
                    )


@dataclass(frozen=True)
class SqueezingReport:
    """D_k, its Zhang variant, and the quadrature data behind them.

    base_level is the theta-independent part of the variance; pair_amplitude
    is the complex <a^2k> - <a^k>^2 driving the theta dependence.
    """

    k: int
    dk: float
    dk_zhang: float
    theta_min_phase: float
    commutator_expect: float
    base_level: float
    pair_amplitude: complex

    def variance_at(self, theta_phase: float) -> float:
        """(Delta X_k(theta))^2 from the stored quadrature data."""
        return self.base_level + 0.5 * (
            cmath.exp(-2j * theta_phase) * self.pair_amplitude
        ).real


def commutator_expectation(moments: MomentSet, k: int) -> float:
    """<[a^k, a^dag^k]>; real for any physical MomentSet."""
    value = moments.ordered_moment(k, k) - moments.normal_moment(k, k)
    if abs(value.imag) > 1e-9 * max(1.0, abs(value)):
        raise ValueError(f"commutator expectation not real: {value}")
    return value.real


def quadrature_variance(moments: MomentSet, k: int, theta_phase: float) -> float:
    """(Delta X_k(theta))^2 expanded over ordered moments."""
    anti = moments.ordered_moment(k, k)
    norm = moments.normal_moment(k, k)
    mean_k = moments.ordered_moment(k, 0)
    pair = moments.ordered_moment(2 * k, 0) - mean_k * mean_k
    base = 0.25 * (anti + norm).real - 0.5 * abs(mean_k) ** 2
    return base + 0.5 * (cmath.exp(-2j * theta_phase) * pair).real


def squeezing_report(moments: MomentSet, k: int) -> SqueezingReport:
    """D_k (phase-minimized) and D_k^Zhang (theta = 0) for order k.

    The two-branch definition switches on the sign of <[a^k, a^dag^k]> in the
    given state; both branches reduce to variance minus a quarter of the
    commutator magnitude.
    """
    comm = commutator_expectation(moments, k)
    if abs(comm) < _TOL_ZERO_COMMUTATOR:
        raise ZeroCommutatorExpectation(
            f"|<[a^{k}, a^dag^{k}]>| = {abs(comm):g} leaves no squeezing threshold"
        )
    mean_k = moments.ordered_moment(k, 0)
    pair = moments.ordered_moment(2 * k, 0) - mean_k * mean_k
    if comm > 0.0:
        level = moments.normal_moment(k, k).real
    else:
        level = moments.ordered_moment(k, k).real
    deficit = level - abs(mean_k) ** 2
    dk = 0.5 * (deficit - abs(pair)) + 0.0
    dk_zhang = 0.5 * (deficit + pair.real) + 0.0
    if abs(pair) == 0.0:
        theta_min = 0.0
    else:
        # cos 2(arg(pair)/2 - theta) = -1
        theta_min = 0.5 * cmath.phase(pair) + 0.5 * math.pi
    anti = moments.ordered_moment(k, k)
    norm = moments.normal_moment(k, k)
    base = 0.25 * (anti + norm).real - 0.5 * abs(mean_k) ** 2
    return SqueezingReport(
        k=k,
        dk=dk,
        dk_zhang=dk_zhang,
        theta_min_phase=theta_min,
        commutator_expect=comm,
        base_level=base,
        pair_amplitude=pair,
    )
