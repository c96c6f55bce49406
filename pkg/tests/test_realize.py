import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from positivity import (DegenerateInput, GridMismatch, InputSpec, Signal, TransferFunction, impulse_response,
                        io_energy, matrix_exponential, simulate, to_state_space)
from positivity.realize import kernel_at, simulate_batch, zoh_matrices


def random_proper_tf(rng):
    n = int(rng.integers(1, 6))
    pairs = int(rng.integers(0, n // 2 + 1))
    poles = list(rng.uniform(-3, 0.5, size=n - 2 * pairs))
    for _ in range(pairs):
        z = complex(rng.uniform(-3, 0.5), rng.uniform(0.1, 3))
        poles += [z, z.conjugate()]
    den = np.real(np.poly(poles))
    return TransferFunction(rng.normal(size=int(rng.integers(1, den.size + 1))), den)


@pytest.mark.parametrize("seed", range(40))
def test_expm_matches_scipy(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    A = rng.normal(size=(n, n)) * 10 ** rng.uniform(-3, 1.5)
    ours, ref = matrix_exponential(A), scipy.linalg.expm(A)
    assert np.linalg.norm(ours - ref) <= 1e-10 * max(1.0, np.linalg.norm(ref))


def test_expm_special_cases():
    assert np.allclose(matrix_exponential(np.zeros((3, 3))), np.eye(3))
    J = np.array([[0.0, 1.0], [0.0, 0.0]])
    np.testing.assert_allclose(matrix_exponential(J, 2.5), [[1.0, 2.5], [0.0, 1.0]])
    R = np.array([[0.0, -1.0], [1.0, 0.0]])
    np.testing.assert_allclose(matrix_exponential(R, math.pi), -np.eye(2), atol=1e-14)


def test_canonical_realization_of_example():
    ss = to_state_space(TransferFunction([2.0, 1.0], [1.0, 1.0]))
    assert ss.D == 2.0
    assert ss.order == 1
    np.testing.assert_allclose(ss.A, [[-1.0]])
    np.testing.assert_allclose(ss.C @ ss.B, [[-1.0]])


def test_pure_gain_has_no_states():
    ss = to_state_space(TransferFunction([3.0], [1.0]))
    assert ss.order == 0 and ss.D == 3.0
    assert ss.evaluate(2.0 + 1j) == 3.0


def test_realization_fidelity():
    rng = np.random.default_rng(7)
    for _ in range(500):
        F = random_proper_tf(rng)
        ss = to_state_space(F)
        for s in (0.5 + 0.7j, -0.2 + 3j, 4.0):
            ref = F(s)
            assert abs(ss.evaluate(s) - ref) <= 1e-8 * (1 + abs(ref))


def test_zoh_is_exact_for_first_order():
    ss = to_state_space(TransferFunction([1.0], [1.0, 1.0]))
    h = 0.1
    y = simulate(ss, InputSpec("step").to_signal(h, 51))
    np.testing.assert_allclose(y.values, 1 - np.exp(-y.times), atol=1e-14)
    Ad, Bd = zoh_matrices(ss.A, ss.B, h)
    assert abs(Ad[0, 0] - math.exp(-h)) < 1e-15


def test_pulse_response_closed_form():
    """(2s+1)/(s+1) driven by u = 1 on [0, 1): y(t) = 1 + e^{-t} inside the pulse, y(1) = -(1 - e^{-1})."""
    ss = to_state_space(TransferFunction([2.0, 1.0], [1.0, 1.0]))
    h = 1e-3
    y = simulate(ss, InputSpec("pulse", (0.0, 1.0, 1.0)).to_signal(h, 2001))
    t = y.times[:1000]
    np.testing.assert_allclose(y.values[:1000], 1 + np.exp(-t), atol=1e-12)
    assert abs(y.at(1.0) + (1 - math.exp(-1))) < 1e-12
    np.testing.assert_allclose(y.values[1000:], -(1 - math.exp(-1)) * np.exp(-(y.times[1000:] - 1)), atol=1e-12)


def test_impulse_response_samples():
    ir = impulse_response(TransferFunction([2.0, 1.0], [1.0, 1.0]), 5.0, 501)
    assert ir.dirac_weight == 2.0
    np.testing.assert_allclose(ir.samples.values, -np.exp(-ir.samples.times), atol=1e-13)
    with pytest.raises(DegenerateInput):
        impulse_response(TransferFunction([1.0], [1.0, 1.0]), 0.0, 10)


def test_kernel_at_matches_closed_form():
    ss = to_state_space(TransferFunction([1.0], [1.0, 0.0, 1.0]))   # sin t
    for t in (0.0, 0.3, 2.0, 7.5):
        assert abs(kernel_at(ss, t) - math.sin(t)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1), st.floats(0.1, 3.0), st.floats(0.0, 2.0))
def test_linearity(seed, a, b):
    rng = np.random.default_rng(seed)
    ss = to_state_space(random_proper_tf(rng))
    h, n = 0.01, 400
    U = np.abs(rng.normal(size=(2, n)))
    Y = simulate_batch(ss, h, np.vstack([U, a * U[0] + b * U[1]]))
    np.testing.assert_allclose(Y[2], a * Y[0] + b * Y[1], atol=1e-9 * (1 + np.max(np.abs(Y))))


def test_batched_and_single_simulation_agree():
    rng = np.random.default_rng(1)
    ss = to_state_space(random_proper_tf(rng))
    u = Signal(0.01, np.abs(rng.normal(size=1000)))
    np.testing.assert_allclose(simulate(ss, u).values, simulate_batch(ss, 0.01, u.values[None])[0], atol=1e-12)


def test_narrow_pulses_converge_to_impulse_response():
    F = TransferFunction([1.0, 3.0], [1.0, 3.0, 2.0, 0.5])
    ss = to_state_space(F)
    t_probe, errors = 2.0, []
    for w in (0.1, 0.01, 0.001):
        h = w / 10
        k = int(round(t_probe / h))
        y = simulate(ss, InputSpec("pulse", (0.0, w, 1.0 / w)).to_signal(h, k + 1))
        errors.append(abs(y.values[k] - kernel_at(ss, t_probe)))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-3


def test_negative_inputs_rejected():
    with pytest.raises(DegenerateInput):
        InputSpec("pulse", (0.0, 1.0, -1.0))
    with pytest.raises(DegenerateInput):
        InputSpec("samples", samples=(1.0, -0.5), sample_step=0.1)
    with pytest.raises(DegenerateInput):
        InputSpec("ramp", (-2.0,))


def test_io_energy():
    u = Signal(0.5, np.array([1.0, 1.0, 1.0]))
    y = Signal(0.5, np.array([0.0, 2.0, 2.0]))
    np.testing.assert_allclose(io_energy(u, y).values, [0.0, 0.5, 1.5])
    with pytest.raises(GridMismatch):
        io_energy(u, Signal(0.25, np.zeros(3)))


def test_io_energy_examples():
    h = 1e-3
    one = Signal(h, np.ones(1001))
    assert abs(io_energy(one, one).at(1.0) - 1.0) < 1e-6
    assert abs(io_energy(one, one, 0.0).at(1.0) - 1.0) < 1e-6
    assert not np.any(io_energy(Signal(h, np.zeros(50)), Signal(h, np.ones(50))).values)


def test_held_input_energy_is_exact_across_jumps():
    # u = 1 on [0, 1) then 0 into (2s+1)/(s+1): J(1) = integral of (1 + e^-t) over [0, 1]
    ss = to_state_space(TransferFunction([2.0, 1.0], [1.0, 1.0]))
    h = 1e-3
    u = InputSpec("pulse", (0.0, 1.0, 1.0)).to_signal(h, 2001)
    y = simulate(ss, u)
    exact = 2 - math.exp(-1)
    assert abs(io_energy(u, y).at(1.0) - exact) < 1e-3
    assert abs(io_energy(u, y, ss.D).at(1.0) - exact) < 1e-6


def test_held_input_energy_nonnegative_for_lossless_system():
    ss = to_state_space(TransferFunction([3.0, 0.0], [1.0, 0.0, 3.3]))
    rng = np.random.default_rng(0)
    h, n = 1e-3, 10_001
    U = np.repeat(rng.uniform(0, 2, size=(50, 20)) * (rng.random((50, 20)) < 0.7), n // 20 + 1, axis=1)[:, :n]
    Y = simulate_batch(ss, h, U)
    worst = min(io_energy(Signal(h, u), Signal(h, y), ss.D).values.min() for u, y in zip(U, Y))
    assert worst >= -1e-9
