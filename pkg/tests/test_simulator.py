import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grover_lab.errors import DimensionCapError, InvalidArgumentError
from grover_lab.simulator import (
    OracleFunction,
    StateVector,
    apply_diffusion,
    apply_oracle,
    closed_form_marked_prob,
    grover_run,
    optimal_iterations,
    uniform_state,
)

from conftest import assert_close
from oracles import brute_force_probs


def random_state(rng, n):
    amps = np.array(
        [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(2**n)]
    )
    return StateVector(n, amps / np.linalg.norm(amps))


def test_uniform_state_amplitudes():
    assert_close(uniform_state(1).amplitudes, [1 / math.sqrt(2)] * 2)
    assert_close(uniform_state(2).amplitudes, [0.5] * 4)


def test_uniform_state_cap():
    with pytest.raises(DimensionCapError):
        uniform_state(25)
    with pytest.raises(InvalidArgumentError):
        uniform_state(0)


def test_oracle_function_invariants():
    with pytest.raises(InvalidArgumentError):
        OracleFunction(2, frozenset())
    with pytest.raises(InvalidArgumentError):
        OracleFunction(2, frozenset({4}))


def test_phase_oracle_on_uniform_state():
    s = apply_oracle(uniform_state(2), OracleFunction.single(2, 3))
    assert_close(s.amplitudes, [0.5, 0.5, 0.5, -0.5])


def test_oracle_fixes_states_with_no_marked_weight():
    amps = np.array([1.0, 0.0], dtype=complex)
    s = apply_oracle(StateVector(1, amps), OracleFunction.single(1, 1))
    assert_close(s.amplitudes, amps)


def test_oracle_does_not_mutate_input():
    state = uniform_state(2)
    before = state.amplitudes.copy()
    apply_oracle(state, OracleFunction.single(2, 0))
    apply_oracle(state, OracleFunction.single(2, 0), mode="ancilla")
    apply_diffusion(state)
    assert_close(state.amplitudes, before)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_phase_and_ancilla_modes_agree(n, seed):
    rng = random.Random(seed)
    state = random_state(rng, n)
    f = OracleFunction(n, frozenset(rng.sample(range(2**n), rng.randint(1, 2**n))))
    a = apply_oracle(state, f, mode="phase")
    b = apply_oracle(state, f, mode="ancilla")
    assert_close(a.amplitudes, b.amplitudes)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6))
def test_unitarity_on_random_states(n, seed):
    rng = random.Random(seed)
    state = random_state(rng, n)
    f = OracleFunction.single(n, rng.randrange(2**n))
    assert abs(apply_oracle(state, f).norm() - 1.0) < 1e-12
    assert abs(apply_oracle(state, f, mode="ancilla").norm() - 1.0) < 1e-12
    assert abs(apply_diffusion(state).norm() - 1.0) < 1e-12


def test_diffusion_fixes_uniform_state():
    s = uniform_state(3)
    assert_close(apply_diffusion(s).amplitudes, s.amplitudes)


def test_diffusion_after_oracle_n2():
    s = StateVector(2, np.array([0.5, 0.5, 0.5, -0.5], dtype=complex))
    assert_close(apply_diffusion(s).amplitudes, [0, 0, 0, 1])


def test_diffusion_on_basis_state_n1():
    s = StateVector(1, np.array([1.0, 0.0], dtype=complex))
    assert_close(apply_diffusion(s).amplitudes, [0, 1])


def test_grover_run_n2_one_iteration_is_exact():
    table = grover_run(2, OracleFunction.single(2, 3), 1)
    assert_close(table.probabilities, [0, 0, 0, 1], tol=1e-12)
    assert table.marked_probability == pytest.approx(1.0, abs=1e-12)


def test_grover_run_zero_iterations_is_uniform():
    table = grover_run(2, OracleFunction.single(2, 3), 0)
    assert_close(table.probabilities, [0.25] * 4)


def test_grover_run_matches_closed_form():
    table = grover_run(4, OracleFunction.single(4, 5), 3)
    want = math.sin(7 * math.asin(0.25)) ** 2
    assert table.probabilities[5] == pytest.approx(want, abs=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_grover_run_matches_brute_force(n):
    for x0 in range(2**n):
        for k in range(0, 6):
            table = grover_run(n, OracleFunction.single(n, x0), k)
            assert_close(table.probabilities, brute_force_probs(n, {x0}, k), tol=1e-12)


def test_marked_element_symmetry():
    base = grover_run(3, OracleFunction.single(3, 0), 2).probabilities
    for x0 in range(8):
        probs = grover_run(3, OracleFunction.single(3, x0), 2).probabilities
        perm = np.array(base)
        perm[[0, x0]] = perm[[x0, 0]]
        assert_close(probs, perm, tol=1e-12)


def test_ancilla_mode_full_run_matches_phase_mode():
    for k in range(4):
        a = grover_run(3, OracleFunction.single(3, 5), k, oracle_mode="phase")
        b = grover_run(3, OracleFunction.single(3, 5), k, oracle_mode="ancilla")
        assert_close(a.probabilities, b.probabilities)


def test_closed_form_values():
    assert closed_form_marked_prob(2, 1) == pytest.approx(1.0, abs=1e-12)
    assert closed_form_marked_prob(6, 0) == pytest.approx(2**-6, abs=1e-15)
    n4_best = closed_form_marked_prob(4, optimal_iterations(4).optimal_mode)
    assert n4_best > 0.9


def test_iteration_counts():
    assert optimal_iterations(4) == type(optimal_iterations(4))(4, 3)
    assert (optimal_iterations(2).paper_mode, optimal_iterations(2).optimal_mode) == (2, 1)
    assert (optimal_iterations(6).paper_mode, optimal_iterations(6).optimal_mode) == (8, 6)


def test_env_var_overrides_cap(monkeypatch):
    monkeypatch.setenv("GROVER_LAB_MAX_QUBITS", "3")
    with pytest.raises(DimensionCapError):
        uniform_state(4)
    uniform_state(3)
