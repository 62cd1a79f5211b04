import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from hollowcore.constants import CODATA, dipole_from_ea0, dipole_to_ea0
from hollowcore.ddi import (
    DdiCoupling,
    Potential1D,
    RydbergState,
    potential_3d,
    rydberg_dipole,
    transverse_average_oracle,
)
from hollowcore.errors import InvalidQuantumNumbers, ZeroSeparation

SQRT2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)

PAPER_W = 2e-6 * 2e-6 / math.sqrt(8e-12)  # sqrt(2) um
COUPLING_315 = DdiCoupling.from_dipoles(dipole_from_ea0(315), dipole_from_ea0(315))


def paper_potential():
    return Potential1D(coupling=COUPLING_315, effective_width=PAPER_W)


# -- Rydberg dipoles ----------------------------------------------------------

def test_rydberg_dipole_paper_state():
    state = RydbergState(principal_n=15, parabolic_q=14)
    assert dipole_to_ea0(state.dipole_moment) == pytest.approx(315.0, rel=1e-12)


def test_rydberg_dipole_zero_q():
    assert RydbergState(principal_n=20, parabolic_q=0).dipole_moment == 0.0


def test_rydberg_dipole_hand_case():
    state = RydbergState(principal_n=10, parabolic_q=4)
    assert dipole_to_ea0(rydberg_dipole(state)) == pytest.approx(60.0, rel=1e-12)


@pytest.mark.parametrize("n,q,m", [
    (0, 0, 0),       # n < 1
    (5, 5, 0),       # q >= n
    (5, -1, 0),      # q < 0
    (5, 2, 5),       # |m| >= n
    (5, 2, -7),
])
def test_invalid_quantum_numbers(n, q, m):
    with pytest.raises(InvalidQuantumNumbers):
        RydbergState(principal_n=n, parabolic_q=q, magnetic_m=m)


def test_coupling_symmetric_and_formula():
    p1, p2 = dipole_from_ea0(50), dipole_from_ea0(450)
    c_ab = DdiCoupling.from_dipoles(p1, p2)
    c_ba = DdiCoupling.from_dipoles(p2, p1)
    assert c_ab.coefficient == c_ba.coefficient
    assert c_ab.coefficient == pytest.approx(
        p1 * p2 / (4 * math.pi * CODATA.epsilon0), rel=1e-15)
    assert c_ab.coefficient >= 0


# -- 3D potential -------------------------------------------------------------

def test_potential_3d_along_axis():
    c = COUPLING_315
    R = 1e-6
    val = potential_3d(c, (0.0, 0.0, R))
    assert val == pytest.approx(-2 * c.coefficient / (CODATA.hbar * R**3),
                                rel=1e-12)


def test_potential_3d_transverse():
    c = COUPLING_315
    R = 1e-6
    val = potential_3d(c, (R, 0.0, 0.0))
    assert val == pytest.approx(c.coefficient / (CODATA.hbar * R**3), rel=1e-12)


def test_potential_3d_magic_angle():
    c = COUPLING_315
    R = 1e-6
    cos_m = 1.0 / math.sqrt(3.0)
    sin_m = math.sqrt(1 - cos_m**2)
    val = potential_3d(c, (R * sin_m, 0.0, R * cos_m))
    scale = 2 * c.coefficient / (CODATA.hbar * R**3)
    assert abs(val) < 1e-12 * scale


def test_potential_3d_zero_separation():
    with pytest.raises(ZeroSeparation):
        potential_3d(COUPLING_315, (0.0, 0.0, 0.0))


# -- 1D potential -------------------------------------------------------------

def test_potential_1d_peak_value():
    pot = paper_potential()
    assert pot.value(0.0) == pytest.approx(-SQRT_PI * pot.reduced_scale,
                                           rel=1e-12)


def test_potential_1d_even():
    pot = paper_potential()
    z = np.linspace(0, 20e-6, 257)
    assert np.array_equal(pot.value(z), pot.value(-z))


def test_potential_1d_negative_and_monotone():
    pot = paper_potential()
    zeta = np.arange(0.0, 20.0001, 0.1)
    vals = pot.value_reduced(zeta)
    assert np.all(vals < 0)
    mags = np.abs(vals)
    assert np.all(np.diff(mags) < 0)


def test_potential_1d_fwhm():
    assert paper_potential().fwhm_zeta() == pytest.approx(0.65, abs=0.02)


def test_potential_1d_homogeneity_in_coupling():
    pot = paper_potential()
    scaled = Potential1D(
        coupling=DdiCoupling(coefficient=3.0 * COUPLING_315.coefficient,
                             dipoles=COUPLING_315.dipoles),
        effective_width=PAPER_W)
    z = np.linspace(-5e-6, 5e-6, 41)
    assert np.allclose(scaled.value(z), 3.0 * pot.value(z), rtol=1e-12)


def test_potential_1d_homogeneity_in_width():
    lam = 2.0
    pot = paper_potential()
    narrower = Potential1D(coupling=COUPLING_315,
                           effective_width=PAPER_W / lam)
    z = np.linspace(-5e-6, 5e-6, 41)
    # Delta_{w/lam}(z / lam) = lam^3 Delta_w(z)
    assert np.allclose(narrower.value(z / lam), lam**3 * pot.value(z),
                       rtol=1e-12)


def test_potential_1d_far_tail_matches_on_axis_3d():
    # after transverse averaging the tail recovers -2C/(hbar z^3)
    pot = paper_potential()
    for z in (50 * PAPER_W, 200 * PAPER_W):
        on_axis = -2 * COUPLING_315.coefficient / (CODATA.hbar * z**3)
        assert pot.value(z) == pytest.approx(on_axis, rel=5e-3)


def test_potential_1d_stable_at_huge_zeta():
    pot = paper_potential()
    got = float(pot.value_reduced(1e3))
    assert math.isfinite(got)
    r = 1e-6
    series = -(1e-9) * (1 - 3 * r + 11.25 * r**2)
    assert got == pytest.approx(series, rel=1e-8)


# -- integral identity --------------------------------------------------------

def test_integral_closed_form():
    pot = paper_potential()
    expected = -2 * COUPLING_315.coefficient / (CODATA.hbar * PAPER_W**2)
    assert pot.integral() == pytest.approx(expected, rel=1e-15)


def test_integral_zero_coupling():
    pot = Potential1D(coupling=DdiCoupling.from_dipoles(0.0, dipole_from_ea0(50)),
                      effective_width=PAPER_W)
    assert pot.integral() == 0.0
    assert pot.integral_numeric() == 0.0


def test_integral_width_scaling():
    pot = paper_potential()
    wider = Potential1D(coupling=COUPLING_315, effective_width=2 * PAPER_W)
    assert wider.integral() == pytest.approx(pot.integral() / 4.0, rel=1e-15)


def test_integral_numeric_matches_closed_form():
    pot = paper_potential()
    assert pot.integral_numeric() == pytest.approx(pot.integral(), rel=1e-6)


def test_window_integral_vs_antiderivative_identity():
    # the +-50 window integral equals (C/hbar w^2) * 2 G(50) and misses
    # ~2e-4 of the full-line value in the tails
    pot = paper_potential()
    window = pot.window_integral(-50 * SQRT2 * PAPER_W, 50 * SQRT2 * PAPER_W)
    import scipy.special
    G50 = -SQRT_PI * 50 * scipy.special.erfcx(50.0)
    expected = (COUPLING_315.coefficient / (CODATA.hbar * PAPER_W**2)) * 2 * G50
    assert window == pytest.approx(expected, rel=1e-9)
    tail_fraction = abs(window - pot.integral()) / abs(pot.integral())
    assert tail_fraction == pytest.approx(2.0e-4, rel=0.05)


# -- quadrature oracle --------------------------------------------------------

ORACLE_ZETAS = (0.0, 0.3, 0.65, 1.0, 2.0, 5.0, 10.0)


def test_oracle_equals_closed_form_on_grid():
    pot = paper_potential()
    for zeta in ORACLE_ZETAS:
        z = zeta * SQRT2 * PAPER_W
        oracle = transverse_average_oracle(COUPLING_315, PAPER_W, z, tol=1e-9)
        assert oracle == pytest.approx(float(pot.value(z)), rel=1e-6), \
            f"zeta={zeta}"


def test_oracle_validates_far_tail():
    # beyond the asymptotic-series switch of the closed-form evaluation
    pot = paper_potential()
    for zeta in (20.0, 100.0, 1000.0):
        z = zeta * SQRT2 * PAPER_W
        oracle = transverse_average_oracle(COUPLING_315, PAPER_W, z, tol=1e-10)
        assert oracle == pytest.approx(float(pot.value(z)), rel=1e-6)


def test_oracle_peak_closed_form():
    got = transverse_average_oracle(COUPLING_315, PAPER_W, 0.0, tol=1e-10)
    expected = -SQRT_PI * 2 * COUPLING_315.coefficient / (
        CODATA.hbar * (SQRT2 * PAPER_W) ** 3)
    assert got == pytest.approx(expected, rel=1e-9)


def test_oracle_tolerance_validation():
    with pytest.raises(ValueError):
        transverse_average_oracle(COUPLING_315, PAPER_W, 0.0, tol=1e-13)
    with pytest.raises(ValueError):
        transverse_average_oracle(COUPLING_315, PAPER_W, 0.0, tol=0.5)


def test_oracle_against_pre_ibp_form():
    """The integrated-by-parts radial integral must agree with the direct
    (s - 2 Z^2) form away from z = 0, where the latter is well defined.
    Dimensionless variables (sigma = beta s, x = beta Z^2):
    Delta = C/(2 hbar w^2) sqrt(beta) * Int e^-sigma (sigma - 2x)(sigma + x)^-5/2."""
    w = PAPER_W
    beta = 1.0 / (2 * w**2)
    for zeta in (1.0, 2.0):
        Z = zeta * SQRT2 * w
        x = beta * Z * Z
        direct, _ = quad(
            lambda s: math.exp(-s) * (s - 2 * x) / (s + x) ** 2.5,
            0.0, np.inf, epsabs=0.0, epsrel=1e-11, limit=400)
        delta_direct = (COUPLING_315.coefficient / (2 * CODATA.hbar * w**2)
                        * math.sqrt(beta) * direct)
        oracle = transverse_average_oracle(COUPLING_315, w, Z, tol=1e-10)
        assert oracle == pytest.approx(delta_direct, rel=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.floats(10.0, 700.0), st.floats(0.3, 3.0), st.floats(-30.0, 30.0))
def test_potential_scaling_properties(dipole_ea0, w_um, zeta):
    c = DdiCoupling.from_dipoles(dipole_from_ea0(dipole_ea0),
                                 dipole_from_ea0(dipole_ea0))
    pot = Potential1D(coupling=c, effective_width=w_um * 1e-6)
    z = zeta * SQRT2 * pot.effective_width
    val = float(pot.value(z))
    assert val < 0
    assert float(pot.value(-z)) == val
    assert val == pytest.approx(pot.reduced_scale
                                * float(pot.value_reduced(zeta)), rel=1e-12)
