import numpy as np
import pytest

from ncrsim.channel import ChannelRealization, LinkProfile, PathComponent
from ncrsim.taps import (
    TapSet,
    build_tap_set,
    compute_direct_taps,
    compute_repeater_taps,
    effective_taps,
    select_reference_and_length,
)

F_C = 3e9
B = 15e6


def _profile(pairs, is_los=False):
    return LinkProfile(paths=[PathComponent(a, t) for a, t in pairs], is_los=is_los)


def _single_path_realization(tau):
    return ChannelRealization(direct=_profile([(1.0, tau)]), ue_to_rep=[], rep_to_bs=[])


def test_reference_single_path():
    eta, t = select_reference_and_length(_single_path_realization(1e-6), np.array([]), B, 20)
    assert eta == 1e-6
    assert t == 20


def test_reference_two_microsecond_span():
    real = ChannelRealization(
        direct=_profile([(0.5, 1e-6), (0.5, 3e-6)]), ue_to_rep=[], rep_to_bs=[]
    )
    eta, t = select_reference_and_length(real, np.array([]), B, 20)
    assert eta == 1e-6
    assert t == 50  # ceil(15e6 * 2e-6) = 30 plus the guard


def test_reference_zero_guard_single_tap():
    _, t = select_reference_and_length(_single_path_realization(2e-6), np.array([]), B, 0)
    assert t == 0


def test_reference_includes_repeater_composites():
    real = ChannelRealization(
        direct=_profile([(1.0, 2e-6)]),
        ue_to_rep=[_profile([(1.0, 0.4e-6)], True)],
        rep_to_bs=[_profile([(1.0, 0.6e-6)], True)],
    )
    eta, t = select_reference_and_length(real, np.array([10e-9]), B, 0)
    assert eta == pytest.approx(0.4e-6 + 0.6e-6 + 10e-9)
    assert t == int(np.ceil(B * (2e-6 - eta) - 1e-9))


def test_reference_precursor_shifts_eta_and_extends_t():
    eta, t = select_reference_and_length(
        _single_path_realization(1e-6), np.array([]), B, 20, precursor_taps=8
    )
    assert eta == pytest.approx(1e-6 - 8 / B)
    assert t == 28


def test_reference_precursor_clamped_by_max_tap_count():
    eta, t = select_reference_and_length(
        _single_path_realization(1e-6), np.array([]), B, 20,
        precursor_taps=32, max_tap_count=25,
    )
    assert t == 25
    assert eta == pytest.approx(1e-6 - 5 / B)


def test_reference_precursor_clamp_never_negative():
    eta, t = select_reference_and_length(
        _single_path_realization(1e-6), np.array([]), B, 20,
        precursor_taps=32, max_tap_count=10,
    )
    assert t == 20
    assert eta == 1e-6


def test_precursor_taps_extend_without_changing_overlap():
    # the precursor window prepends samples of the same continuous response
    profile = _profile([(0.6, 1.0e-6), (0.4, 1.13e-6)])
    real = ChannelRealization(direct=profile, ue_to_rep=[], rep_to_bs=[])
    eta0, t0 = select_reference_and_length(real, np.array([]), B, 10)
    eta8, t8 = select_reference_and_length(real, np.array([]), B, 10, precursor_taps=8)
    base = compute_direct_taps(profile, eta0, B, t0, F_C)
    wide = compute_direct_taps(profile, eta8, B, t8, F_C)
    phase = np.exp(-2j * np.pi * F_C * (8 / B))
    assert np.allclose(wide[8:], phase * base, rtol=1e-10, atol=1e-14)
    assert 0 < np.max(np.abs(wide[:8])) < np.max(np.abs(base))


def test_direct_taps_on_grid():
    eta = 1e-6
    taps = compute_direct_taps(_profile([(1.0, eta)]), eta, B, 5, F_C)
    assert taps[0] == pytest.approx(1.0)
    assert np.allclose(taps[1:], 0.0, atol=1e-15)


def test_direct_taps_integer_shift():
    eta = 1e-6
    taps = compute_direct_taps(_profile([(1.0, eta + 1 / B)]), eta, B, 5, F_C)
    assert taps[1] == pytest.approx(np.exp(-2j * np.pi * F_C / B))
    assert abs(taps[0]) < 1e-12
    assert np.allclose(taps[2:], 0.0, atol=1e-12)


def test_direct_taps_half_sample_offset():
    eta = 1e-6
    taps = compute_direct_taps(_profile([(1.0, eta + 1 / (2 * B))]), eta, B, 5, F_C)
    assert abs(taps[0]) == pytest.approx(2 / np.pi, rel=1e-12)
    assert abs(taps[1]) == pytest.approx(2 / np.pi, rel=1e-12)


def test_repeater_taps_collapse_to_direct_case():
    eta = 1e-6
    ue = _profile([(1.0, 0.4e-6)], True)
    bs = _profile([(1.0, 0.6e-6)], True)
    taps = compute_repeater_taps(ue, bs, 0.0, eta, B, 4, F_C)
    assert taps[0] == pytest.approx(1.0)
    assert np.allclose(taps[1:], 0.0, atol=1e-15)


def test_repeater_taps_amplitude_product():
    eta = 1e-6
    ue = _profile([(0.5, 0.4e-6)], True)
    bs = _profile([(0.5, 0.6e-6)], True)
    taps = compute_repeater_taps(ue, bs, 0.0, eta, B, 4, F_C)
    assert taps[0] == pytest.approx(0.25)


def test_repeater_taps_double_sum_linearity():
    eta = 0.9e-6
    rng = np.random.default_rng(0)
    ue_paths = [(0.3, 0.4e-6), (0.2, 0.45e-6)]
    bs_paths = [(0.4, 0.5e-6), (0.1, 0.62e-6)]
    full = compute_repeater_taps(
        _profile(ue_paths, True), _profile(bs_paths, True), 1e-8, eta, B, 10, F_C
    )
    acc = np.zeros(11, dtype=complex)
    for up in ue_paths:
        for bp in bs_paths:
            acc += compute_repeater_taps(
                _profile([up], True), _profile([bp], True), 1e-8, eta, B, 10, F_C
            )
    assert np.allclose(full, acc, rtol=1e-12)


def _toy_tapset(rng, n_rep=3, t=12):
    direct = rng.standard_normal(t + 1) + 1j * rng.standard_normal(t + 1)
    rep = rng.standard_normal((t + 1, n_rep)) + 1j * rng.standard_normal((t + 1, n_rep))
    return TapSet(
        eta=0.0,
        tap_count=t,
        direct_taps=direct,
        repeater_taps=rep,
        bandwidth_hz=B,
        repeater_delays=np.full(n_rep, 1e-8),
    )


def test_effective_taps_zero_alpha():
    ts = _toy_tapset(np.random.default_rng(1))
    assert np.array_equal(effective_taps(ts, np.zeros(3)), ts.direct_taps)


def test_effective_taps_scaling():
    ts = _toy_tapset(np.random.default_rng(2), n_rep=1)
    ts.direct_taps = np.zeros_like(ts.direct_taps)
    h = effective_taps(ts, np.array([2.0]))
    assert np.allclose(h, 2.0 * ts.repeater_taps[:, 0], rtol=1e-15)


def test_effective_taps_affine():
    ts = _toy_tapset(np.random.default_rng(3))
    rng = np.random.default_rng(4)
    for _ in range(5):
        a1, a2 = rng.uniform(0, 5, 3), rng.uniform(0, 5, 3)
        lhs = effective_taps(ts, a1 + a2)
        rhs = effective_taps(ts, a1) + effective_taps(ts, a2) - ts.direct_taps
        assert np.allclose(lhs, rhs, rtol=1e-12)


def test_effective_taps_length_mismatch():
    ts = _toy_tapset(np.random.default_rng(5))
    with pytest.raises(ValueError):
        effective_taps(ts, np.zeros(2))


def test_direct_tap_energy_bounded():
    # truncating the sampled pulse train can only lose energy relative to the
    # analytic Gram form sum_ij a_i a_j exp(-j2pi f_c (tau_i - tau_j)) sinc(B dtau)
    rng = np.random.default_rng(6)
    taus = 1e-6 + np.sort(rng.uniform(0, 2e-6, 8))
    amps = rng.uniform(0.05, 0.3, 8)
    profile = _profile(list(zip(amps, taus)))
    real = ChannelRealization(direct=profile, ue_to_rep=[], rep_to_bs=[])
    eta, t = select_reference_and_length(real, np.array([]), B, 20)
    taps = compute_direct_taps(profile, eta, B, t, F_C)
    dtau = taus[:, None] - taus[None, :]
    gram = np.outer(amps, amps) * np.exp(-2j * np.pi * F_C * dtau) * np.sinc(B * dtau)
    analytic_energy = gram.sum().real
    tap_energy = np.sum(np.abs(taps) ** 2)
    assert tap_energy <= analytic_energy + 1e-9
    assert tap_energy >= 0.5 * analytic_energy


def test_tap_shift_consistency():
    # moving the reference k samples earlier shifts the taps by k positions
    rng = np.random.default_rng(7)
    taus = 1e-6 + np.sort(rng.uniform(0, 1e-6, 5))
    amps = rng.uniform(0.1, 0.4, 5)
    profile = _profile(list(zip(amps, taus)))
    eta = taus.min()
    k = 3
    base = compute_direct_taps(profile, eta, B, 40, F_C)
    shifted = compute_direct_taps(profile, eta - k / B, B, 40 + k, F_C)
    # the common phase reference moves with eta
    phase = np.exp(-2j * np.pi * F_C * (k / B))
    assert np.allclose(shifted[k:], phase * base, rtol=1e-10, atol=1e-12)


def test_build_tap_set_shapes():
    from ncrsim.channel import generate_realization
    from ncrsim.geometry import Position3D, make_scenario

    sc = make_scenario()
    real = generate_realization(sc, Position3D(420, 610, 1.5), np.random.default_rng(8))
    ts = build_tap_set(real, B, F_C)
    assert ts.direct_taps.shape == (ts.tap_count + 1,)
    assert ts.repeater_taps.shape == (ts.tap_count + 1, 16)
    assert np.all(np.isfinite(ts.direct_taps.view(float)))
