import cmath
import math

import numpy as np
import pytest

import photon_slh as ps


def test_two_level_parameters():
    p = ps.TwoLevelParams(1.0, 2.0)
    report = ps.validate_linear_response(ps.two_level_model(p))
    assert report.passed
    assert abs(report.params.a - complex(-0.5, -2.0)) < 1e-12
    assert report.params.h == -1.0
    assert [c.name for c in report.conditions][0] == "ground_energy"


def test_joint_memory_rejected():
    report = ps.validate_linear_response(ps.joint_memory_model(2, ps.TwoLevelParams(1.0, 0.0)))
    assert not report.passed
    assert report.first_failure() == "commutator_proportional"
    with pytest.raises(ps.ValidationFailed):
        ps.from_model(ps.joint_memory_model(2, ps.TwoLevelParams(1.0, 0.0)))


def test_response_matches_closed_form():
    p = ps.TwoLevelParams(0.7, -1.2)
    f = ps.from_model(ps.two_level_model(p))
    for w in np.linspace(-5, 5, 21):
        assert abs(f.response(w)[0, 0] - ps.two_level_G(p, w)) < 1e-14
    g = ps.cascade(f, f).response(1.0)[0, 0]
    assert abs(g - ps.memory_GN(2, p, 1.0)) < 1e-14


def test_two_channel_model_from_numpy():
    s = np.array([[0, 1], [1, 0]], dtype=complex)
    m = ps.SLHModel(s, np.array([1.0, 2.0 ** 0.5], dtype=complex), ps.sigma_minus(), ps.sigma_z())
    red = ps.feedback_reduction(m)
    assert abs(red.theta - (1 + math.sqrt(2))) < 1e-15
    assert red.model.channels == 1
    assert ps.validate_linear_response(red.model).passed


def test_singular_loop():
    with pytest.raises(ps.SingularLoopError):
        ps.feedback_reduce(ps.two_channel_model(1.0, 1.0, 0.0))


def test_shape_paths_agree():
    p = ps.TwoLevelParams(1.0, 2.0)
    grid = ps.TimeGrid.centered(48.0, 14)
    pulse = ps.Pulse.analytic(ps.Gaussian(0.0, 1.0, -2.0), grid)
    f = ps.from_model(ps.two_level_model(p))
    fft = ps.shape_fft(pulse, f)
    ode = ps.shape_ode(pulse, f)
    assert abs(fft.output_norm - 1.0) < 1e-6
    assert ps.l2_distance(fft.output, ode.output) < 1e-4
    assert fft.output.samples.shape == (grid.size, 1)


def test_inverting_pulse_absorbed():
    p = ps.TwoLevelParams(1.0, 2.0)
    grid = ps.TimeGrid.centered(48.0, 14)
    out = ps.shape_fft(ps.inverting_pulse(p, grid), ps.from_model(ps.two_level_model(p))).output
    assert out.energy_before(0.0) < 1e-6
    t = grid.times()
    want = np.where(t < 0, 0, np.sqrt(p.kappa) * np.exp(-(p.kappa / 2 + 1j * p.omega_c) * t))
    ref = ps.Pulse.sampled(grid, want.reshape(-1, 1))
    assert ps.l2_distance_up_to_phase(out, ref) < 1e-3


def test_grid_error():
    f = ps.from_model(ps.two_level_model(ps.TwoLevelParams(0.1, 0.0)))
    pulse = ps.Pulse.analytic(ps.Gaussian(), ps.TimeGrid.centered(10.0, 10))
    with pytest.raises(ps.GridError):
        ps.shape_fft(pulse, f)


def test_fourier_roundtrip():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(256, 2)) + 1j * rng.normal(size=(256, 2))
    p = ps.Pulse.sampled(ps.TimeGrid(-1.0, 0.01, 256), x)
    back = ps.inverse_fourier(ps.fourier(p))
    assert np.max(np.abs(back.samples - x)) < 1e-12


def test_json_roundtrip():
    m = ps.two_channel_model(0.5, 1.5, 0.2)
    back = ps.SLHModel.from_json(m.to_json())
    assert np.array_equal(back.theta, m.theta)
    with pytest.raises(ps.ParseError):
        ps.SLHModel.from_json("{")


def test_memory_kernel_single_atom():
    p = ps.TwoLevelParams(1.0, 2.0)
    for t in (0.0, 0.5, 3.0):
        want = -p.kappa * cmath.exp(-(p.kappa / 2 + 1j * p.omega_c) * t)
        assert abs(ps.memory_kernel_1f1(1, p, t) - want) < 1e-14
