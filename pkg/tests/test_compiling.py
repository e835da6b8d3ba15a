"""Clifford+T lowering and randomized compiling."""

import numpy as np
import pytest

from qnoisebench.benchmarks import build_random
from qnoisebench.circuits import (
    CLIFFORD_T,
    PARAM_ROTATIONS,
    Circuit,
    Cycle,
    circuit_unitary,
    identity_cycle,
    simulate,
)
from qnoisebench.compiling import (
    apply_pauli_frame,
    approx_rz,
    best_rz_error,
    euler_compose,
    euler_decompose,
    interleave_idle,
    is_easy_cycle,
    lower_controlled_rz,
    randomized_compile,
    rz_word_error,
    to_clifford_t,
)
from qnoisebench.errors import (
    DuplicateIndex,
    InvalidParams,
    NotInterleaved,
    NotUnitary,
    SearchExhausted,
)
from qnoisebench.gates import FIXED_MATRICES, Gate
from qnoisebench.linalg import equal_up_to_phase, kron_all, phase_aligned_distance
from qnoisebench.noise import PauliNoise
from qnoisebench.states import ket_to_density, random_product_state

rng = np.random.default_rng(55)

G = Gate


def random_unitary(dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


# ---------------------------------------------------------------------------
# Euler angles.


def test_euler_roundtrip_random_unitaries():
    for _ in range(30):
        u = random_unitary(2)
        beta, gamma, delta = euler_decompose(u)
        assert equal_up_to_phase(euler_compose(beta, gamma, delta), u, tol=1e-8)


def test_euler_handles_diagonal_and_antidiagonal():
    for u in (np.diag([1.0, np.exp(0.7j)]),
              np.array([[0, 1j], [1j, 0]], dtype=np.complex128)):
        beta, gamma, delta = euler_decompose(u)
        assert equal_up_to_phase(euler_compose(beta, gamma, delta), u, tol=1e-8)


def test_euler_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        euler_decompose(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(NotUnitary):
        euler_decompose(np.eye(4))


# ---------------------------------------------------------------------------
# Rz synthesis.


def test_approx_rz_exact_single_letters():
    assert approx_rz(np.pi / 4) == ["t"]
    assert approx_rz(np.pi / 2) == ["s"]
    assert approx_rz(-np.pi / 4) == ["tdg"]
    assert approx_rz(-np.pi / 2) == ["sdg"]
    assert approx_rz(0.0) == []


def test_approx_rz_exact_composite_angles():
    # Rz(pi) = Z = S S exactly; Rz(3 pi/4) = S T exactly.
    for theta in (np.pi, 3 * np.pi / 4):
        word = approx_rz(theta)
        assert len(word) == 2
        assert rz_word_error(word, theta) < 1e-12


def test_word_error_agrees_with_requested_eps():
    """Dual route: the synthesizer's claimed error is checked by direct
    matrix multiplication of the word."""
    for theta in (0.3, 1.1, 0.7, -0.8):
        word = approx_rz(theta, 0.05)
        assert rz_word_error(word, theta) <= 0.05 + 1e-12


def test_best_rz_error_monotone_in_depth():
    errs = [best_rz_error(0.3, d) for d in range(1, 9)]
    assert all(a >= b - 1e-15 for a, b in zip(errs, errs[1:]))


def test_approx_rz_rejects_tiny_eps():
    with pytest.raises(InvalidParams):
        approx_rz(0.3, 1e-9)


def test_approx_rz_exhausts_on_hard_angle():
    # pi/8 floors near 0.056 over this alphabet at the default depth budget.
    with pytest.raises(SearchExhausted):
        approx_rz(np.pi / 8, 0.05)


# ---------------------------------------------------------------------------
# Whole-circuit lowering.


def test_lower_controlled_rz_exact():
    theta = 0.9
    circ = lower_controlled_rz(theta, 0, 1)
    want = np.diag([1.0, 1.0, 1.0, np.exp(1j * theta)])
    assert phase_aligned_distance(circuit_unitary(circ), want) < 1e-12


def test_lower_controlled_rz_rejects_equal_indices():
    with pytest.raises(DuplicateIndex):
        lower_controlled_rz(0.5, 2, 2)


def test_to_clifford_t_expands_rotations_in_lockstep():
    circ = Circuit(2, (Cycle((G.rz(0, 3 * np.pi / 4), G.x(1))),), PARAM_ROTATIONS)
    low = to_clifford_t(circ)
    assert low.gate_set == CLIFFORD_T
    assert low.depth == 2  # two-letter word for 3 pi/4
    first = low.cycles[0]
    assert first.gate_on(1).name == "x"  # fixed gate fires in sub-cycle 0
    assert low.cycles[1].gate_on(1) is None  # idle afterwards
    assert phase_aligned_distance(
        circuit_unitary(low), circuit_unitary(circ)) < 1e-12


def test_to_clifford_t_accepts_near_miss_angles():
    # approx_rz(pi/8, 0.05) exhausts, but lowering accepts the table's best
    # word when it lands within 2x of the request.
    circ = Circuit(1, (Cycle((G.rz(0, np.pi / 8),)),), PARAM_ROTATIONS)
    low = to_clifford_t(circ, eps=0.05)
    d = phase_aligned_distance(circuit_unitary(low), circuit_unitary(circ))
    assert d <= 0.10


def test_to_clifford_t_rejects_embedded_toffoli():
    circ = Circuit(3, (Cycle((G.toffoli(0, 1, 2),)),))
    with pytest.raises(InvalidParams):
        to_clifford_t(circ)


# ---------------------------------------------------------------------------
# Idle interleaving.


def test_interleave_idle_separates_hard_cycles():
    circ = Circuit(2, (
        Cycle((G.h(0),)),
        Cycle((G.cnot(0, 1),)),
        Cycle((G.x(0),)),
        Cycle((G.t(1),)),
    ), CLIFFORD_T)
    out = interleave_idle(circ)
    assert out.depth == 5  # one idle between the two adjacent hard cycles
    hard = [not is_easy_cycle(c) for c in out.cycles]
    assert not any(a and b for a, b in zip(hard, hard[1:]))
    assert equal_up_to_phase(circuit_unitary(out), circuit_unitary(circ))


def test_interleave_idle_leaves_easy_circuits_alone():
    circ = Circuit(2, (Cycle((G.x(0),)), Cycle((G.z(1),))), CLIFFORD_T)
    assert interleave_idle(circ).depth == 2


# ---------------------------------------------------------------------------
# Randomized compiling.


def frame_unitary(frame):
    return kron_all([FIXED_MATRICES[p] for p in frame])


def test_rc_preserves_circuit_action():
    """Frame-corrected compiled unitary equals the original on 50 random
    Clifford+T circuits."""
    for k in range(50):
        circ = interleave_idle(build_random(3, 8, seed=1000 + k))
        compiled, frame = randomized_compile(circ, seed=k)
        assert compiled.depth == circ.depth
        dressed = frame_unitary(frame) @ circuit_unitary(compiled)
        assert equal_up_to_phase(dressed, circuit_unitary(circ), tol=1e-8)


def test_rc_noiseless_simulation_matches_reference():
    circ = interleave_idle(build_random(3, 10, seed=7))
    state = ket_to_density(random_product_state(3, seed=3))
    plain = simulate(circ, state)
    for seed in range(5):
        dressed = simulate(circ, state, rc=True, seed=seed)
        np.testing.assert_allclose(dressed.matrix, plain.matrix, atol=1e-10)


def test_rc_draws_vary_with_seed():
    circ = interleave_idle(build_random(3, 10, seed=7))
    a, _ = randomized_compile(circ, seed=0)
    b, _ = randomized_compile(circ, seed=1)
    assert a.cycles != b.cycles


def test_rc_twirl_before_t_stays_diagonal():
    # Only I and Z commute through a T gate without leaving the easy set.
    circ = Circuit(1, (identity_cycle(), Cycle((G.t(0),)), identity_cycle()),
                   CLIFFORD_T)
    for seed in range(50):
        compiled, _ = randomized_compile(circ, seed=seed)
        g = compiled.cycles[0].gate_on(0)
        assert g is None or g.name == "z"


def test_rc_frame_labels_are_paulis():
    circ = interleave_idle(build_random(4, 12, seed=2))
    _, frame = randomized_compile(circ, seed=9)
    assert len(frame) == 4
    assert set(frame) <= {"i", "x", "y", "z"}


def test_rc_rejects_rotations_and_adjacent_hard_cycles():
    rot = Circuit(1, (Cycle((G.rz(0, 0.3),)),), PARAM_ROTATIONS)
    with pytest.raises(InvalidParams):
        randomized_compile(rot)
    packed = Circuit(2, (Cycle((G.h(0),)), Cycle((G.cnot(0, 1),))), CLIFFORD_T)
    with pytest.raises(NotInterleaved):
        randomized_compile(packed)


def test_rc_all_hard_circuit_returns_identity_frame():
    circ = Circuit(2, (Cycle((G.cnot(0, 1),)),), CLIFFORD_T)
    compiled, frame = randomized_compile(circ, seed=0)
    assert compiled.cycles == circ.cycles
    assert frame == ("i", "i")


def test_rc_is_neutral_for_pauli_noise():
    """Single-qubit Pauli channels are invariant under Pauli-frame
    conjugation, so each compiled run reproduces the bare noisy output
    exactly, not just on average."""
    circ = interleave_idle(build_random(3, 10, seed=11))
    state = ket_to_density(random_product_state(3, seed=4))
    noise = PauliNoise.symmetric(0.03)
    bare = simulate(circ, state, noise=noise)
    for seed in range(5):
        dressed = simulate(circ, state, noise=noise, rc=True, seed=seed)
        np.testing.assert_allclose(dressed.matrix, bare.matrix, atol=1e-12)


def test_apply_pauli_frame():
    state = ket_to_density(random_product_state(2, seed=5))
    same = apply_pauli_frame(state, ("i", "i"))
    np.testing.assert_allclose(same.matrix, state.matrix)
    flipped = apply_pauli_frame(state, ("x", "i"))
    want = simulate(Circuit(2, (Cycle((G.x(0),)),)), state)
    np.testing.assert_allclose(flipped.matrix, want.matrix, atol=1e-14)
