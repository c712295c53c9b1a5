import cmath
import math

import numpy as np
import pytest

from plasmode import (
    ModelParams,
    NonPositiveTemperature,
    derive,
    disentangle_thermal,
    disentangle_unitary,
    evolution_matrix,
    validate,
)
from plasmode import oracle
from helpers import random_validated


def expm_2x2(m: np.ndarray) -> np.ndarray:
    """Dense 2x2 matrix exponential via eigendecomposition."""
    evals, vecs = np.linalg.eig(m)
    return vecs @ np.diag(np.exp(evals)) @ np.linalg.inv(vecs)


def ptilde(vp) -> np.ndarray:
    return np.array(
        [[-0.5 * vp.omega, -vp.omega1], [vp.omega1.conjugate(), 0.5 * vp.omega]]
    )


class TestEvolutionMatrix:
    def test_identity_at_t0(self, vp_base):
        ev = evolution_matrix(vp_base, 0.0)
        assert np.allclose(ev.matrix, np.eye(2), atol=1e-15)

    def test_free_field_is_diagonal_rotation(self):
        vp = validate(ModelParams(omega=1.0, omega1=0j, omega2=0.3 + 0j))
        ev = evolution_matrix(vp, 2.0)
        expected = np.diag([np.exp(1j), np.exp(-1j)])
        assert np.abs(ev.matrix - expected).max() < 1e-14
        assert ev.g == 0

    def test_matches_dense_exponential(self, vp_base):
        ev = evolution_matrix(vp_base, 1.0)
        ref = expm_2x2(-1j * 1.0 * ptilde(vp_base))
        assert np.abs(ev.matrix - ref).max() < 1e-10

    def test_symplectic_invariants_across_periods(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            vp = random_validated(rng, max_coupling=0.3)
            tau = derive(vp).tau
            for t in np.linspace(0.0, 3.0 * tau, 13):
                ev = evolution_matrix(vp, float(t))
                assert abs(np.linalg.det(ev.matrix) - 1.0) < 1e-10
                assert abs(abs(ev.f) ** 2 - abs(ev.g) ** 2 - 1.0) < 1e-10

    def test_periodicity(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            vp = random_validated(rng, max_coupling=0.3)
            tau = derive(vp).tau
            for t in (0.3, 1.7, 4.1):
                a = evolution_matrix(vp, t).matrix
                b = evolution_matrix(vp, t + tau).matrix
                assert np.abs(a - b).max() < 1e-9

    def test_small_phase_series_branch(self, vp_base):
        # |phi*t| below the series threshold must still match the dense form
        t = 1e-5
        ev = evolution_matrix(vp_base, t)
        ref = expm_2x2(-1j * t * ptilde(vp_base))
        assert np.abs(ev.matrix - ref).max() < 1e-14


class TestDisentangleUnitary:
    def test_zero_at_t0(self, vp_base):
        form = disentangle_unitary(vp_base, 0.0)
        assert form.beta == 0 and form.delta == 0
        assert form.gamma == 0

    def test_quarter_period_real_coupling(self, vp_base):
        t = 0.5 * math.pi / derive(vp_base).phi
        form = disentangle_unitary(vp_base, t)
        assert abs(form.beta - (-0.2)) < 1e-12
        assert abs(form.delta - (-0.2)) < 1e-12

    def test_recomposition_matches_propagator(self, vp_base):
        form = disentangle_unitary(vp_base, 1.0, branch="continuous")
        rec = oracle.recompose_disentangled(form, 40)
        ref = oracle.quadratic_propagator(vp_base, 1.0, 40)
        win = oracle.interior(40)
        assert np.abs(rec[win, win] - ref[win, win]).max() < 1e-8

    def test_continuous_branch_survives_windings(self):
        rng = np.random.default_rng(3)
        vp = random_validated(rng)
        tau = derive(vp).tau
        for frac in (0.3, 0.6, 1.1, 1.7):
            t = frac * tau
            form = disentangle_unitary(vp, t, branch="continuous")
            rec = oracle.recompose_disentangled(form, 32)
            ref = oracle.quadratic_propagator(vp, t, 32)
            win = oracle.interior(32)
            assert np.abs(rec[win, win] - ref[win, win]).max() < 1e-8

    def test_branch_choice_only_flips_sign(self, vp_base):
        t = 0.6 * derive(vp_base).tau
        pri = disentangle_unitary(vp_base, t, branch="principal")
        con = disentangle_unitary(vp_base, t, branch="continuous")
        assert pri.beta == con.beta and pri.delta == con.delta
        assert abs(cmath.exp(pri.gamma) - cmath.exp(con.gamma)) < 1e-12
        # e^{gamma/4} prefactors differ by exactly -1 inside the second half period
        ratio = cmath.exp(0.25 * (pri.gamma - con.gamma))
        assert abs(ratio + 1.0) < 1e-12

    def test_physical_combinations_branch_insensitive(self):
        rng = np.random.default_rng(5)
        vp = random_validated(rng)
        tau = derive(vp).tau
        for t in np.linspace(0.05, 2.0, 9) * tau:
            pri = disentangle_unitary(vp, float(t), branch="principal")
            con = disentangle_unitary(vp, float(t), branch="continuous")
            assert abs(cmath.exp(pri.gamma) - cmath.exp(con.gamma)) < 1e-10
            assert abs(cmath.exp(0.5 * pri.gamma) - cmath.exp(0.5 * con.gamma)) < 1e-10


class TestDisentangleThermal:
    def test_free_field_limit(self):
        vp = validate(ModelParams(omega=1.0, omega1=0j, omega2=0j))
        form = disentangle_thermal(vp, 0.5)
        assert form.beta == 0 and form.delta == 0
        assert abs(form.gamma - (-2.0 + 0j)) < 1e-14  # -omega/theta

    def test_infinite_temperature_limit(self):
        vp = validate(ModelParams(omega=1.0, omega1=0.01, omega2=0j))
        form = disentangle_thermal(vp, 1e9)
        assert abs(form.beta) < 2e-9
        assert abs(form.gamma) < 2e-9
        assert abs(form.delta) < 2e-9

    def test_conjugacy(self):
        rng = np.random.default_rng(13)
        for _ in range(8):
            vp = random_validated(rng, max_coupling=0.3)
            for theta in (0.01, 0.2, 5.0):
                form = disentangle_thermal(vp, theta)
                assert form.delta == form.beta.conjugate()
                assert form.gamma.imag == 0.0

    def test_no_overflow_near_zero_temperature(self, vp_base):
        form = disentangle_thermal(vp_base, 1e-6)
        assert math.isfinite(form.gamma.real)
        assert abs(form.beta) < 1.0

    def test_recomposition_matches_gibbs(self, vp_weak):
        form = disentangle_thermal(vp_weak, 0.2)
        rec = oracle.recompose_disentangled(form, 60)
        ref = oracle.quadratic_gibbs(vp_weak, 0.2, 60)
        win = oracle.interior(60)
        dev = np.abs(rec[win, win] - ref[win, win]).max() / np.abs(ref[win, win]).max()
        assert dev < 1e-8

    def test_rejects_nonpositive_temperature(self, vp_base):
        with pytest.raises(NonPositiveTemperature):
            disentangle_thermal(vp_base, 0.0)

    def test_continuation_consistency(self):
        # thermal coefficients equal the unitary ones at imaginary time -i/theta
        rng = np.random.default_rng(17)
        for _ in range(5):
            vp = random_validated(rng, max_coupling=0.3)
            for theta in (0.5, 1.0, 2.0):
                th = disentangle_thermal(vp, theta)
                un = disentangle_unitary(vp, -1j / theta)
                assert abs(th.beta - un.beta) < 1e-10
                assert abs(th.gamma - un.gamma) < 1e-10
                assert abs(th.delta - un.delta) < 1e-10


class TestTransferConsistency:
    def test_unitary_ratio_identity(self):
        # e^gamma - beta*delta equals the bottom-right over top-left transfer entries
        rng = np.random.default_rng(19)
        for _ in range(6):
            vp = random_validated(rng, max_coupling=0.3)
            for t in (0.4, 1.3, 3.7):
                form = disentangle_unitary(vp, t)
                ev = evolution_matrix(vp, t)
                lhs = cmath.exp(form.gamma) - form.beta * form.delta
                rhs = ev.matrix[1, 1] / ev.matrix[0, 0]
                assert abs(lhs - rhs) < 1e-12

    def test_thermal_ratio_identity(self, vp_weak):
        phi = derive(vp_weak).phi
        for theta in (0.1, 0.4, 2.0):
            form = disentangle_thermal(vp_weak, theta)
            x = phi / theta
            em = math.exp(-2.0 * x)
            top = 0.5 * (1.0 + em) + (0.5 * vp_weak.omega / phi) * 0.5 * (1.0 - em)
            bot = 0.5 * (1.0 + em) - (0.5 * vp_weak.omega / phi) * 0.5 * (1.0 - em)
            lhs = cmath.exp(form.gamma) - form.beta * form.delta
            assert abs(lhs - bot / top) < 1e-12
