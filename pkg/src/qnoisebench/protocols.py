"""Benchmarking protocols: tomography, randomized benchmarking, cross-entropy
scoring, heavy-output testing and quantum volume."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import curve_fit

from .circuits import PARAM_ROTATIONS, Circuit, Cycle, simulate
from .errors import FitDiverged, InvalidParams, ZeroIdealProbability
from .gates import FIXED_MATRICES, Gate, H, SDG
from .linalg import adjoint, equal_up_to_phase, phase_canonical_keys
from .noise import NoNoise, NoiseModel, apply_channel
from .states import DensityMatrix, measurement_distribution


# ---------------------------------------------------------------------------
# Single-qubit state tomography.


@dataclass(frozen=True)
class TomographyResult:
    s: tuple[float, float, float, float]
    raw: np.ndarray
    reconstructed: DensityMatrix


_SIGMA_X = FIXED_MATRICES["x"]
_SIGMA_Y = FIXED_MATRICES["y"]
_SIGMA_Z = FIXED_MATRICES["z"]


def _basis_probs(rho: np.ndarray, rotation: np.ndarray | None) -> np.ndarray:
    if rotation is not None:
        rho = rotation @ rho @ rotation.conj().T
    return np.clip(np.diag(rho).real, 0.0, 1.0)


def project_psd(rho: np.ndarray) -> np.ndarray:
    """Clip negative eigenvalues and renormalize the trace to 1."""
    vals, vecs = np.linalg.eigh(rho)
    vals = np.clip(vals, 0.0, None)
    total = vals.sum()
    if total <= 0.0:
        raise InvalidParams("reconstruction has no positive weight")
    vals /= total
    return (vecs * vals) @ vecs.conj().T


def state_tomography_1q(prepare: Callable[[], DensityMatrix],
                        shots_per_basis: int | None = None,
                        seed: int | None = None) -> TomographyResult:
    """Estimate S0..S3 from Z-, X- and Y-basis measurements and rebuild rho.

    X-basis measurement is H then Z-measure; Y-basis is Sdg, H, then
    Z-measure. shots_per_basis=None uses exact probabilities; otherwise each
    basis is sampled independently. Sampled reconstructions can be non-PSD:
    raw keeps the linear inversion, reconstructed is its PSD projection.
    """
    rng = np.random.default_rng(seed)
    expectations = []
    for rotation in (None, H, H @ SDG):
        rho = prepare().matrix
        probs = _basis_probs(rho, rotation)
        if shots_per_basis is not None:
            counts = rng.multinomial(shots_per_basis, probs / probs.sum())
            probs = counts / shots_per_basis
        expectations.append(float(probs[0] - probs[1]))
    s3, s1, s2 = expectations
    s = (1.0, s1, s2, s3)
    raw = 0.5 * (s[0] * np.eye(2) + s1 * _SIGMA_X + s2 * _SIGMA_Y
                 + s3 * _SIGMA_Z)
    return TomographyResult(s, raw, DensityMatrix(project_psd(raw)))


# ---------------------------------------------------------------------------
# The 24-element single-qubit Clifford group as words in {h, s}.

_CLIFFORDS: tuple[np.ndarray, ...] | None = None
_CLIFFORD_WORDS: tuple[str, ...] | None = None
_CLIFFORD_INVERSE: tuple[int, ...] | None = None


def _build_cliffords() -> None:
    global _CLIFFORDS, _CLIFFORD_WORDS, _CLIFFORD_INVERSE
    h, s = FIXED_MATRICES["h"], FIXED_MATRICES["s"]

    def key(u: np.ndarray) -> bytes:
        return phase_canonical_keys(u[None])[0]

    mats: list[np.ndarray] = [np.eye(2, dtype=np.complex128)]
    words: list[str] = [""]
    seen = {key(mats[0]): 0}
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            for letter, g in (("h", h), ("s", s)):
                u = g @ mats[idx]
                k = key(u)
                if k not in seen:
                    seen[k] = len(mats)
                    mats.append(u)
                    words.append(words[idx] + letter)
                    nxt.append(seen[k])
        frontier = nxt
    if len(mats) != 24:
        raise InvalidParams(f"clifford closure has {len(mats)} elements")
    inverse = []
    for u in mats:
        inv = seen.get(key(adjoint(u)))
        if inv is None or not equal_up_to_phase(mats[inv], adjoint(u)):
            raise InvalidParams("clifford inverse lookup failed")
        inverse.append(inv)
    _CLIFFORDS = tuple(mats)
    _CLIFFORD_WORDS = tuple(words)
    _CLIFFORD_INVERSE = tuple(inverse)


def clifford_group() -> tuple[tuple[np.ndarray, ...], tuple[str, ...]]:
    """The 24 single-qubit Cliffords and their {h, s} words."""
    if _CLIFFORDS is None:
        _build_cliffords()
    return _CLIFFORDS, _CLIFFORD_WORDS


def rb_sequence_indices(m: int, rng: np.random.Generator) -> list[int]:
    """m uniform Clifford indices plus the index inverting their product."""
    if _CLIFFORDS is None:
        _build_cliffords()
    picks = [int(i) for i in rng.integers(0, 24, size=m)]
    net = np.eye(2, dtype=np.complex128)
    for i in picks:
        net = _CLIFFORDS[i] @ net
    target = adjoint(net)
    for j in range(24):
        if equal_up_to_phase(_CLIFFORDS[j], target):
            picks.append(j)
            return picks
    raise InvalidParams("no inverting clifford found")


# ---------------------------------------------------------------------------
# Randomized benchmarking.


@dataclass(frozen=True)
class RBResult:
    lengths: tuple[int, ...]
    survivals: tuple[float, ...]
    a: float
    b: float
    r: float
    residual: float
    degenerate: bool = False


def rb_experiment(lengths: Sequence[int], sequences_per_length: int = 50,
                  noise: NoiseModel | None = None,
                  seed: int | None = None) -> np.ndarray:
    """Mean |0> survival per sequence length.

    Each sequence is m uniform Cliffords plus the group inverse of their
    product; the noise channel fires once after every Clifford.
    """
    if any(m < 1 for m in lengths):
        raise InvalidParams("sequence lengths must be >= 1")
    noise = noise if noise is not None else NoNoise()
    if _CLIFFORDS is None:
        _build_cliffords()
    rng = np.random.default_rng(seed)
    means = []
    for m in lengths:
        total = 0.0
        for _ in range(sequences_per_length):
            rho = np.zeros((2, 2), dtype=np.complex128)
            rho[0, 0] = 1.0
            for idx in rb_sequence_indices(m, rng):
                c = _CLIFFORDS[idx]
                rho = c @ rho @ c.conj().T
                rho = apply_channel(rho, noise, 0, 1)
            total += float(rho[0, 0].real)
        means.append(total / sequences_per_length)
    return np.asarray(means)


def rb_fit(lengths: Sequence[int], survivals: Sequence[float],
           max_residual: float = 0.05) -> RBResult:
    """Fit survival = A(1-2r)^m + B with A, B in [0,1] and r in [0, 0.5]."""
    lengths = tuple(int(m) for m in lengths)
    survivals = tuple(float(f) for f in survivals)
    if len(set(lengths)) < 3:
        raise InvalidParams("need at least 3 distinct sequence lengths")
    ms = np.asarray(lengths, dtype=np.float64)
    fs = np.asarray(survivals, dtype=np.float64)
    if np.ptp(fs) < 1e-9:
        return RBResult(lengths, survivals, 0.0, float(fs.mean()), 0.0, 0.0,
                        degenerate=True)

    def model(m, a, b, r):
        return a * (1.0 - 2.0 * r) ** m + b

    (a, b, r), _ = curve_fit(model, ms, fs, p0=(0.5, 0.5, 0.02),
                             bounds=([0.0, 0.0, 0.0], [1.0, 1.0, 0.5]),
                             maxfev=10000)
    residual = float(np.sum((model(ms, a, b, r) - fs) ** 2))
    if residual > max_residual:
        raise FitDiverged(f"rb fit residual {residual} exceeds {max_residual}")
    return RBResult(lengths, survivals, float(a), float(b), float(r), residual)


# ---------------------------------------------------------------------------
# Cross-entropy scoring.

EULER_GAMMA = float(np.euler_gamma)
PROB_FLOOR = 1e-300


@dataclass(frozen=True)
class XEBResult:
    h0: float
    cross_entropy: float
    delta_h: float
    alpha: float


def xeb_score(ideal_probs: np.ndarray,
              samples_or_dist: np.ndarray) -> XEBResult:
    """Cross-entropy difference of a test distribution (or samples) against
    ideal circuit probabilities, in nats.

    H0 = ln N + Euler gamma. A float array is a full distribution; an integer
    array is outcome samples scored with the alpha estimator.
    """
    p_u = np.asarray(ideal_probs, dtype=np.float64)
    n = p_u.size
    h0 = float(np.log(n) + EULER_GAMMA)
    arr = np.asarray(samples_or_dist)
    if np.issubdtype(arr.dtype, np.integer):
        picked = p_u[arr]
        if np.any(picked < PROB_FLOOR):
            raise ZeroIdealProbability("sampled outcome has zero ideal probability")
        cross = float(-np.mean(np.log(picked)))
    else:
        p_a = np.asarray(arr, dtype=np.float64)
        if p_a.shape != p_u.shape:
            raise ZeroIdealProbability(
                f"distribution length {p_a.size} does not match {n}")
        mask = p_a > 0.0
        if np.any(p_u[mask] < PROB_FLOOR):
            raise ZeroIdealProbability("test mass on zero ideal probability")
        cross = float(-np.sum(p_a[mask] * np.log(p_u[mask])))
    delta = h0 - cross
    return XEBResult(h0, cross, delta, delta)


# ---------------------------------------------------------------------------
# Heavy outputs and quantum volume.


@dataclass(frozen=True)
class HeavyOutputResult:
    heavy_set: tuple[int, ...]
    heavy_prob: float
    passed: bool


def heavy_output_test(ideal_probs: np.ndarray,
                      test: np.ndarray) -> HeavyOutputResult:
    """Mass of a test distribution (or samples) on outcomes strictly above
    the median ideal probability; passes above 2/3."""
    p_u = np.asarray(ideal_probs, dtype=np.float64)
    heavy = np.nonzero(p_u > np.median(p_u))[0]
    arr = np.asarray(test)
    if np.issubdtype(arr.dtype, np.integer):
        prob = float(np.isin(arr, heavy).mean()) if arr.size else 0.0
    else:
        prob = float(np.asarray(arr, dtype=np.float64)[heavy].sum())
    return HeavyOutputResult(tuple(int(i) for i in heavy), prob,
                             prob > 2.0 / 3.0)


def random_model_circuit(n_qubits: int, depth: int,
                         rng: np.random.Generator) -> Circuit:
    """Random scrambling circuit: each cycle pairs some qubits into CNOTs and
    gives every other qubit a uniform-angle rz or rx."""
    cycles = []
    for _ in range(depth):
        order = [int(q) for q in rng.permutation(n_qubits)]
        if n_qubits >= 4:
            npairs = n_qubits // 4
        else:
            npairs = 1 if (n_qubits >= 2 and rng.random() < 0.5) else 0
        gates = []
        for p in range(npairs):
            gates.append(Gate.cnot(order[2 * p], order[2 * p + 1]))
        for q in order[2 * npairs:]:
            angle = float(rng.uniform(0.0, 2.0 * np.pi))
            if rng.random() < 0.5:
                gates.append(Gate.rz(q, angle))
            else:
                gates.append(Gate.rx(q, angle))
        cycles.append(Cycle(tuple(gates)))
    return Circuit(n_qubits, tuple(cycles), PARAM_ROTATIONS)


def quantum_volume(noise: NoiseModel, max_m: int = 4,
                   circuits_per_size: int = 20,
                   seed: int | None = None) -> int:
    """Largest 2^m over square model circuits where the majority of circuits
    pass the heavy-output test under the given noise."""
    if max_m > 8:
        raise InvalidParams("max_m above 8 is outside desk scale")
    rng = np.random.default_rng(seed)
    best = 0
    for m in range(2, max_m + 1):
        passes = 0
        for _ in range(circuits_per_size):
            circ = random_model_circuit(m, m, rng)
            start = DensityMatrix.basis(m, 0)
            ideal = measurement_distribution(simulate(circ, start))
            noisy = measurement_distribution(simulate(circ, start, noise=noise))
            if heavy_output_test(ideal, noisy).passed:
                passes += 1
        if passes > circuits_per_size // 2:
            best = m
    return 2 ** best
