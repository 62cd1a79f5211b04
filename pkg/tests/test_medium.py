import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hollowcore.constants import CODATA
from hollowcore.ddi import RydbergState
from hollowcore.errors import VelocityExceedsC
from hollowcore.medium import (
    AtomicEnsemble,
    ChannelPair,
    EitChannel,
    Transition,
    WaveguideGeometry,
    absorption_coefficient,
    check_mixing_angle_consistency,
    effective_density,
    eit_bandwidth,
    group_velocity,
    mixing_angle_sin2,
    mixing_angle_sin2_from_coupling,
)

PAPER_GEO = WaveguideGeometry(length=1e-2, field_width=2e-6, atom_width=2e-6)
PAPER_ENS = AtomicEnsemble(atom_count=5e4, geometry=PAPER_GEO)


def test_effective_width_formula():
    g = WaveguideGeometry(length=1.0, field_width=3e-6, atom_width=2e-6)
    expected = 2e-6 * 3e-6 / math.sqrt((2e-6) ** 2 + (3e-6) ** 2)
    assert g.effective_width == pytest.approx(expected, rel=1e-15)
    assert g.effective_width <= min(g.atom_width, g.field_width)


def test_geometry_validation():
    with pytest.raises(ValueError):
        WaveguideGeometry(length=-1.0, field_width=1e-6, atom_width=1e-6)
    with pytest.raises(ValueError):
        # atoms wider than the field mode
        WaveguideGeometry(length=1.0, field_width=1e-6, atom_width=2e-6)


def test_effective_density_paper_point():
    # N = 5e4, w_a = w_f = 2 um, L = 1 cm -> ~2e11 cm^-3
    rho = PAPER_ENS.effective_density
    assert rho == pytest.approx(2e17, rel=0.05)  # m^-3


def test_effective_density_linearity():
    doubled = AtomicEnsemble(atom_count=1e5, geometry=PAPER_GEO)
    assert doubled.effective_density == pytest.approx(
        2 * PAPER_ENS.effective_density, rel=1e-15)


def test_effective_density_hand_case():
    # N = 1, w_a = w_f = 1 m, L = 1/pi m -> 1/(pi * 2 * 1/pi) = 0.5 m^-3
    assert effective_density(1.0, 1.0, 1.0, 1.0 / math.pi) == pytest.approx(
        0.5, rel=1e-14)


def test_optical_depths_paper_point():
    rho = PAPER_ENS.effective_density
    assert absorption_coefficient(795e-9, rho) * 1e-2 == pytest.approx(600, rel=0.03)
    assert absorption_coefficient(780e-9, rho) * 1e-2 == pytest.approx(580, rel=0.03)


def test_absorption_zero_density():
    assert absorption_coefficient(795e-9, 0.0) == 0.0


def test_group_velocity_paper_points():
    rho = PAPER_ENS.effective_density
    k1 = absorption_coefficient(795e-9, rho)
    k2 = absorption_coefficient(780e-9, rho)
    assert group_velocity(7.35e6, k1, 1.8e7) == pytest.approx(100.0, rel=0.02)
    assert group_velocity(7.43e6, k2, 1.9e7) == pytest.approx(100.0, rel=0.02)


def test_group_velocity_quadratic_scaling():
    v = group_velocity(1e6, 1e4, 1e7)
    v2 = group_velocity(1e6 * math.sqrt(2.0), 1e4, 1e7)
    assert v2 == pytest.approx(2 * v, rel=1e-12)


def test_group_velocity_rejects_superluminal():
    with pytest.raises(VelocityExceedsC):
        group_velocity(1e12, 1e-6, 1.0)


def test_mixing_angle_cases():
    c = CODATA.c_light
    assert mixing_angle_sin2(c) == 0.0
    assert mixing_angle_sin2(c / 2) == pytest.approx(0.5, rel=1e-15)
    assert mixing_angle_sin2(100.0) == pytest.approx(1 - 100.0 / c, rel=1e-15)
    assert 1 - mixing_angle_sin2(100.0) == pytest.approx(3.336e-7, rel=1e-3)


def test_mixing_angle_consistency_routes():
    # pick g so the coupling route reproduces a target matter fraction
    sin2 = 1 - 100.0 / CODATA.c_light
    tan2 = sin2 / (1 - sin2)
    N, omega, w, wa = 5e4, 7.35e6, 1.414e-6, 2e-6
    g = math.sqrt(tan2 * omega**2 / N) * (wa / w)
    from_coupling = mixing_angle_sin2_from_coupling(g, N, omega, w, wa)
    assert check_mixing_angle_consistency(sin2, from_coupling)
    assert not check_mixing_angle_consistency(sin2, 0.5)


def test_eit_bandwidth_paper_point():
    assert eit_bandwidth(7.35e6, 1.8e7, 600.0) == pytest.approx(1.2e5, rel=0.05)


def test_eit_bandwidth_scalings():
    base = eit_bandwidth(1e6, 1e7, 100.0)
    assert eit_bandwidth(1e6, 1e7, 400.0) == pytest.approx(base / 2, rel=1e-12)
    assert eit_bandwidth(2e6, 1e7, 100.0) == pytest.approx(4 * base, rel=1e-12)


@given(st.floats(1e5, 1e8), st.floats(1e2, 1e6), st.floats(1e5, 1e9))
def test_velocity_kappa_gamma_round_trip(omega, kappa, gamma):
    # v * kappa * gamma = 2 Omega^2 identically
    try:
        v = group_velocity(omega, kappa, gamma)
    except VelocityExceedsC:
        return
    assert v * kappa * gamma == pytest.approx(2 * omega**2, rel=1e-12)


def _channel(label=1, wavelength=795e-9, gamma=1.8e7, omega=7.35e6,
             ensemble=PAPER_ENS, gamma_gd=None):
    return EitChannel(
        label=label,
        transition=Transition(wavelength=wavelength, gamma_ge=gamma),
        control_rabi=omega,
        rydberg_state=RydbergState(principal_n=15, parabolic_q=14),
        ensemble=ensemble,
        gamma_gd=gamma_gd)


def test_channel_derived_fields_are_pure():
    a = _channel()
    b = _channel()
    assert a.kappa == b.kappa
    assert a.group_velocity == b.group_velocity
    assert a.sin2_theta == b.sin2_theta
    assert a.eit_bandwidth == b.eit_bandwidth


def test_channel_sin2_plus_vc_is_one():
    ch = _channel()
    assert ch.sin2_theta + ch.group_velocity / CODATA.c_light == pytest.approx(
        1.0, abs=1e-15)


def test_optical_depth_monotone_in_atom_count():
    depths = []
    for n in (1e4, 3e4, 5e4, 8e4):
        ens = AtomicEnsemble(atom_count=n, geometry=PAPER_GEO)
        depths.append(_channel(ensemble=ens).optical_depth)
    assert all(a < b for a, b in zip(depths, depths[1:]))


def test_channel_pair_validation_and_derived(gate_pair):
    assert gate_pair.thetas_match()
    gate_pair.require_matched_thetas()
    v1 = gate_pair.channel1.group_velocity
    v2 = gate_pair.channel2.group_velocity
    assert gate_pair.mean_velocity == pytest.approx(0.5 * (v1 + v2))
    assert gate_pair.sin2_product == pytest.approx(
        gate_pair.channel1.sin2_theta * gate_pair.channel2.sin2_theta)


def test_channel_pair_rejects_wrong_labels():
    ch1 = _channel(label=1)
    with pytest.raises(ValueError):
        ChannelPair(channel1=ch1, channel2=ch1)


def test_channel_pair_mismatched_thetas_detected():
    ch1 = _channel(label=1)
    # slower channel 2: order-of-magnitude different matter fraction is
    # still tiny; force a mismatch through a huge velocity difference
    ch2 = _channel(label=2, wavelength=780e-9, gamma=1.9e7, omega=7.43e6)
    pair = ChannelPair(channel1=ch1, channel2=ch2, theta_match_rtol=1e-12)
    # 0.6% velocity difference maps to ~2e-9 relative sin2 difference
    assert not pair.thetas_match()
    with pytest.raises(ValueError):
        pair.require_matched_thetas()
