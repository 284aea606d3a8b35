"""Tests for state preparation, stroboscopic evolution and power spectra."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinladder.dynamics import (
    MagnetizationTrace,
    all_up,
    evolve_stroboscopic,
    measure_magnetization,
    one_flip,
    power_spectrum,
    prepare_state,
    resolve_spec,
    scan_subharmonic,
    uniform_tilt,
)
from spinladder.floquet import DriveParams, NumericalToleranceError, build_floquet
from spinladder.lattice import make_lattice
from spinladder.pauli import PauliString


def tilt_operator(n_sites: int, axis: float) -> np.ndarray:
    """Dense sum_k [cos(axis) Z_k + sin(axis) Y_k]."""
    dim = 1 << n_sites
    total = np.zeros((dim, dim), dtype=complex)
    for k in range(n_sites):
        total += math.cos(axis) * PauliString.single(n_sites, k, "z").to_matrix()
        total += math.sin(axis) * PauliString.single(n_sites, k, "y").to_matrix()
    return total


def test_all_up_is_basis_index_zero():
    lat = make_lattice(2, 3)
    state = prepare_state(lat, all_up(6))
    expected = np.zeros(64)
    expected[0] = 1.0
    np.testing.assert_allclose(state, expected)


def test_one_flip_occupies_single_bit():
    lat = make_lattice(1, 4)
    state = prepare_state(lat, one_flip(4, position=2))
    expected = np.zeros(16)
    expected[1 << 2] = 1.0
    np.testing.assert_allclose(state, expected)


def test_one_flip_default_and_bounds():
    assert one_flip(4) == ("up", "down", "up", "up")
    with pytest.raises(ValueError):
        one_flip(4, position=4)
    with pytest.raises(ValueError):
        one_flip(4, position=-1)


def test_resolve_spec_shapes():
    lat = make_lattice(1, 3)
    assert resolve_spec(lat, "up") == ("up", "up", "up")
    assert resolve_spec(lat, 0.25) == (0.25, 0.25, 0.25)
    assert resolve_spec(lat, lambda l: one_flip(l.n_sites, 0)) == ("down", "up", "up")
    with pytest.raises(ValueError):
        resolve_spec(lat, ("up", "down"))
    with pytest.raises(ValueError):
        prepare_state(lat, ("up", "sideways", "up"))


@given(
    angles=st.lists(
        st.floats(-math.pi, math.pi, allow_nan=False), min_size=1, max_size=6
    )
)
@settings(max_examples=40, deadline=None)
def test_prepare_state_normalized(angles):
    lat = make_lattice(1, len(angles))
    state = prepare_state(lat, tuple(angles))
    assert np.linalg.norm(state) == pytest.approx(1.0, abs=1e-12)


def test_magnetization_simple_oracles():
    lat = make_lattice(2, 2)
    up = prepare_state(lat, all_up(4))
    assert measure_magnetization(up, 4) == pytest.approx(4.0, abs=1e-12)
    flipped = prepare_state(lat, one_flip(4))
    assert measure_magnetization(flipped, 4) == pytest.approx(2.0, abs=1e-12)


@given(theta=st.floats(-math.pi, math.pi, allow_nan=False))
@settings(max_examples=40, deadline=None)
def test_tilted_state_saturates_along_its_own_axis(theta):
    n = 3
    lat = make_lattice(1, n)
    state = prepare_state(lat, uniform_tilt(n, theta))
    along = measure_magnetization(state, n, axis=theta)
    assert along == pytest.approx(float(n), abs=1e-10)
    projected = measure_magnetization(state, n, axis=0.0)
    assert projected == pytest.approx(n * math.cos(theta), abs=1e-10)


@given(
    theta=st.floats(-2.0, 2.0, allow_nan=False),
    axis=st.floats(-2.0, 2.0, allow_nan=False),
)
@settings(max_examples=40, deadline=None)
def test_magnetization_matches_dense_operator(theta, axis):
    n = 3
    lat = make_lattice(1, n)
    state = prepare_state(lat, uniform_tilt(n, theta))
    dense = float(np.real(state.conj() @ tilt_operator(n, axis) @ state))
    assert measure_magnetization(state, n, axis) == pytest.approx(dense, abs=1e-10)


def test_trivial_drive_keeps_trace_constant():
    lat = make_lattice(1, 3)
    op = build_floquet(lat, DriveParams(j_x=0.0, j_y=0.0, h=0.0, period=2.0))
    trace = evolve_stroboscopic(op, prepare_state(lat, all_up(3)), periods=6)
    assert trace.n_periods == 6
    assert trace.values.shape == (7,)
    np.testing.assert_allclose(trace.values, 3.0, atol=1e-12)
    assert not trace.values.flags.writeable


def test_evolution_validates_inputs():
    lat = make_lattice(1, 2)
    op = build_floquet(lat, DriveParams(j_x=0.0, j_y=0.4, h=0.3, period=2.0))
    state = prepare_state(lat, all_up(2))
    with pytest.raises(ValueError):
        evolve_stroboscopic(op, state, periods=0)
    with pytest.raises(NumericalToleranceError):
        evolve_stroboscopic(op, 0.9 * state, periods=1)


def test_ideal_kick_alternates_exactly():
    """At kick angle pi/2 every period flips all spins, so the trace
    alternates between +N and -N and the spectrum is one clean bin."""
    n = 4
    lat = make_lattice(2, 2)
    op = build_floquet(lat, DriveParams(j_x=0.13, j_y=0.31, h=math.pi / 2, period=2.0))
    trace = evolve_stroboscopic(op, prepare_state(lat, all_up(n)), periods=20)
    signs = (-1.0) ** np.arange(21)
    np.testing.assert_allclose(trace.values, n * signs, atol=1e-10)

    spec = power_spectrum(trace)
    assert spec.subharmonic_amplitude == pytest.approx(float(n), abs=1e-10)
    assert spec.dominance_ratio > 1e12
    assert spec.subharmonic_power_fraction == pytest.approx(1.0, abs=1e-12)
    assert spec.frequencies[spec.n_samples // 2] == pytest.approx(
        math.pi / op.params.period, abs=1e-12
    )


def test_power_spectrum_rejects_short_or_odd_traces():
    def fake_trace(m):
        times = np.arange(m + 1)
        values = np.zeros(m + 1)
        return MagnetizationTrace(times=times, values=values, axis=0.0, period=2.0)

    with pytest.raises(ValueError):
        power_spectrum(fake_trace(1))
    with pytest.raises(ValueError):
        power_spectrum(fake_trace(7))


@given(
    values=st.lists(
        st.floats(-3.0, 3.0, allow_nan=False), min_size=4, max_size=24
    ).filter(lambda v: len(v) % 2 == 0)
)
@settings(max_examples=40, deadline=None)
def test_power_spectrum_parseval(values):
    samples = np.array(values)
    m = samples.size
    trace = MagnetizationTrace(
        times=np.arange(m + 1),
        values=np.concatenate([[0.0], samples]),
        axis=0.0,
        period=2.0,
    )
    spec = power_spectrum(trace)
    assert spec.n_samples == m
    # 1/M-normalized DFT turns Parseval into mean-square equality
    assert float(np.sum(spec.magnitudes**2)) == pytest.approx(
        float(np.mean(samples**2)), abs=1e-10
    )
    assert spec.frequencies[0] == 0.0
    np.testing.assert_allclose(np.diff(spec.frequencies), math.pi / m, atol=1e-12)


def test_scan_matches_direct_evolution():
    lat = make_lattice(1, 2)
    params = DriveParams(j_x=0.0, j_y=0.5, h=0.0, period=2.0)
    h_values = (0.7, 1.1)
    points = scan_subharmonic([lat], params, h_values, all_up(2), periods=40)
    assert [p.h for p in points] == list(h_values)
    for point in points:
        op = build_floquet(lat, DriveParams(j_x=0.0, j_y=0.5, h=point.h, period=2.0))
        trace = evolve_stroboscopic(op, prepare_state(lat, all_up(2)), periods=40)
        expected = power_spectrum(trace).subharmonic_amplitude
        assert point.peak == pytest.approx(expected, abs=1e-12)
        assert point.peak_per_site == pytest.approx(expected / 2.0, abs=1e-12)
        assert (point.n_x, point.n_y) == (1, 2)
