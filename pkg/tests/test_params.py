import math

import numpy as np
import pytest

from plasmode import (
    DegenerateSpectrum,
    ModelParams,
    NonPositiveFrequency,
    derive,
    validate,
)


def test_validate_accepts_regime_point():
    vp = validate(ModelParams(omega=1.0, omega1=0.1, omega2=0.05))
    assert vp.omega == 1.0


def test_validate_rejects_phi_zero_boundary():
    with pytest.raises(DegenerateSpectrum):
        validate(ModelParams(omega=1.0, omega1=0.5, omega2=0j))


def test_validate_rejects_hyperbolic_regime():
    with pytest.raises(DegenerateSpectrum):
        validate(ModelParams(omega=1.0, omega1=0.6 + 0j, omega2=0j))


def test_validate_rejects_nonpositive_frequency():
    with pytest.raises(NonPositiveFrequency):
        validate(ModelParams(omega=0.0, omega1=0j, omega2=0j))
    with pytest.raises(NonPositiveFrequency):
        validate(ModelParams(omega=-1.0, omega1=0j, omega2=0j))


def test_derive_drive_only():
    # omega1 = 0 gives alpha = omega2 / (omega/2)
    dp = derive(validate(ModelParams(omega=2.0, omega1=0j, omega2=1.0 + 0j)))
    assert dp.phi == pytest.approx(1.0, abs=1e-15)
    assert dp.alpha == pytest.approx(1.0 + 0j, abs=1e-15)
    assert dp.c == pytest.approx(2.0, abs=1e-15)


def test_derive_workhorse_values(vp_base):
    dp = derive(vp_base)
    assert dp.phi == pytest.approx(math.sqrt(0.24), abs=1e-15)
    assert dp.tau == pytest.approx(2.0 * math.pi / math.sqrt(0.24), rel=1e-12)
    assert dp.c == pytest.approx(0.002 / 0.24, rel=1e-12)
    assert dp.energy_shift == pytest.approx(0.5 * dp.c, abs=0.0)


def test_derived_alpha_solves_linear_system():
    vp = validate(ModelParams(omega=1.0, omega1=0.1j, omega2=0.2 + 0.1j))
    dp = derive(vp)
    a = np.array([[0.5 * vp.omega, vp.omega1], [vp.omega1.conjugate(), 0.5 * vp.omega]])
    rhs = np.array([vp.omega2, vp.omega2.conjugate()])
    sol = np.linalg.solve(a, rhs)
    assert abs(sol[0] - dp.alpha) < 1e-12
    assert abs(sol[1] - dp.alpha.conjugate()) < 1e-12
    # Hermitian-form value is real: cross-check c against the 2x2 solve
    c_solve = rhs.conjugate() @ sol
    assert abs(c_solve.imag) < 1e-12
    assert abs(c_solve.real - dp.c) < 1e-12


def test_json_roundtrip():
    params = ModelParams(omega=1.5, omega1=0.02 - 0.01j, omega2=0.3j, lambda0=0.4 + 0.2j)
    again = ModelParams.from_json_dict(params.to_json_dict())
    assert again == params


def test_json_accepts_bare_reals():
    params = ModelParams.from_json_dict({"omega": 1.0, "omega1": 0.1, "omega2": 0.05})
    assert params.omega1 == 0.1 + 0j
    assert params.lambda0 == 0j
