"""Single-qubit noise channels applied per cycle to every qubit.

All channels are exact maps on the density matrix, never Monte Carlo:

  Pauli          N(rho) = (1-e) rho + ex X rho X + ey Y rho Y + ez Z rho Z
  Coherent       N(rho) = e^{i theta P} rho e^{-i theta P},  P in {X, Z}
  Pauli+Coherent coherent X rotation followed by an X-flip channel
  AmplitudeDamping  Kraus K0 = [[1,0],[0,sqrt(1-g)]], K1 = [[0,sqrt(g)],[0,0]]
  PhaseDamping   Z flip with probability lambda

Pauli conjugations and the damping Kraus terms are realized as index/sign
manipulations on the reshaped state, which keeps the per-cycle cost linear in
the size of rho.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, UnknownLevel

_PROB_TOL = 1e-12


@dataclass(frozen=True)
class NoiseModel:
    """Base marker; `NoNoise()` is the explicit do-nothing model."""

    def validate(self) -> "NoiseModel":
        return self


@dataclass(frozen=True)
class NoNoise(NoiseModel):
    pass


@dataclass(frozen=True)
class PauliNoise(NoiseModel):
    ex: float
    ey: float
    ez: float

    def validate(self):
        probs = (self.ex, self.ey, self.ez)
        if any(p < -_PROB_TOL for p in probs) or sum(probs) > 1.0 + _PROB_TOL:
            raise InvalidParams(f"Pauli probabilities {probs} outside [0, 1]")
        return self

    @classmethod
    def symmetric(cls, total: float) -> "PauliNoise":
        return cls(total / 3.0, total / 3.0, total / 3.0).validate()


@dataclass(frozen=True)
class CoherentNoise(NoiseModel):
    axis: str  # "x" or "z"
    theta: float

    def validate(self):
        if self.axis not in ("x", "z"):
            raise InvalidParams(f"coherent axis must be x or z, got {self.axis!r}")
        if not np.isfinite(self.theta):
            raise InvalidParams("coherent angle must be finite")
        return self


@dataclass(frozen=True)
class PauliPlusCoherent(NoiseModel):
    """Static X rotation by theta followed by an X flip with probability ex."""

    ex: float
    theta: float

    def validate(self):
        if not 0.0 - _PROB_TOL <= self.ex <= 1.0 + _PROB_TOL:
            raise InvalidParams(f"flip probability {self.ex} outside [0, 1]")
        if not np.isfinite(self.theta):
            raise InvalidParams("rotation angle must be finite")
        return self


@dataclass(frozen=True)
class AmplitudeDamping(NoiseModel):
    gamma: float

    def validate(self):
        if not 0.0 - _PROB_TOL <= self.gamma <= 1.0 + _PROB_TOL:
            raise InvalidParams(f"gamma {self.gamma} outside [0, 1]")
        return self


@dataclass(frozen=True)
class PhaseDamping(NoiseModel):
    lam: float

    def validate(self):
        if not 0.0 - _PROB_TOL <= self.lam <= 1.0 + _PROB_TOL:
            raise InvalidParams(f"lambda {self.lam} outside [0, 1]")
        return self


# ---------------------------------------------------------------------------
# Fast single-qubit conjugations on the full register.


def _axis_views(rho: np.ndarray, q: int, n: int):
    """Reshape so the row and column factors of qubit q are separate axes."""
    left = 2 ** q
    mid = 2
    right = 2 ** (n - q - 1)
    return rho.reshape(left, mid, right, left, mid, right)


def conj_x(rho: np.ndarray, q: int, n: int) -> np.ndarray:
    t = _axis_views(rho, q, n)
    return t[:, ::-1, :, :, ::-1, :].reshape(rho.shape).copy()


def _z_signs(q: int, n: int) -> np.ndarray:
    idx = np.arange(2 ** n)
    bits = (idx >> (n - 1 - q)) & 1
    return 1.0 - 2.0 * bits


def conj_z(rho: np.ndarray, q: int, n: int) -> np.ndarray:
    s = _z_signs(q, n)
    return rho * np.outer(s, s)


def conj_y(rho: np.ndarray, q: int, n: int) -> np.ndarray:
    # Y = i X Z; the phases cancel in the conjugation.
    return conj_x(conj_z(rho, q, n), q, n)


def _phase_column(q: int, n: int, phase: complex) -> np.ndarray:
    """Per-index phases of diag applied at qubit q: 1 where bit is 0, phase where 1."""
    idx = np.arange(2 ** n)
    bits = (idx >> (n - 1 - q)) & 1
    return np.where(bits == 1, phase, 1.0 + 0j)


def _apply_2x2(rho: np.ndarray, k: np.ndarray, q: int, n: int) -> np.ndarray:
    """K rho K^dagger for an arbitrary single-qubit operator K."""
    t = _axis_views(rho, q, n)
    t = np.einsum("ab,xbyucv->xayucv", k, t)
    t = np.einsum("db,xayubv->xayudv", k.conj(), t)
    return t.reshape(rho.shape)


def apply_channel(rho: np.ndarray, model: NoiseModel, q: int, n: int) -> np.ndarray:
    """Apply one noise channel to qubit q of an n-qubit density matrix."""
    if isinstance(model, NoNoise):
        return rho

    if isinstance(model, PauliNoise):
        keep = 1.0 - (model.ex + model.ey + model.ez)
        out = keep * rho
        if model.ex:
            out = out + model.ex * conj_x(rho, q, n)
        if model.ey:
            out = out + model.ey * conj_y(rho, q, n)
        if model.ez:
            out = out + model.ez * conj_z(rho, q, n)
        return out

    if isinstance(model, CoherentNoise):
        if model.axis == "z":
            # e^{i theta Z} = diag(e^{i theta}, e^{-i theta})
            col = _phase_column(q, n, np.exp(-2j * model.theta)) * np.exp(1j * model.theta)
            return rho * np.outer(col, col.conj())
        c, s = np.cos(model.theta), 1j * np.sin(model.theta)
        u = np.array([[c, s], [s, c]], dtype=np.complex128)  # e^{i theta X}
        return _apply_2x2(rho, u, q, n)

    if isinstance(model, PauliPlusCoherent):
        rotated = apply_channel(rho, CoherentNoise("x", model.theta), q, n)
        if model.ex == 0.0:
            return rotated
        return (1.0 - model.ex) * rotated + model.ex * conj_x(rotated, q, n)

    if isinstance(model, AmplitudeDamping):
        g = model.gamma
        col = _phase_column(q, n, np.sqrt(1.0 - g))
        out = rho * np.outer(col, col.conj())
        if g:
            t = _axis_views(rho, q, n)
            out_t = _axis_views(out, q, n)
            out_t[:, 0, :, :, 0, :] += g * t[:, 1, :, :, 1, :]
        return out

    if isinstance(model, PhaseDamping):
        lam = model.lam
        if lam == 0.0:
            return rho.copy()
        return (1.0 - lam) * rho + lam * conj_z(rho, q, n)

    raise InvalidParams(f"unknown noise model {model!r}")


def apply_channel_all(rho: np.ndarray, model: NoiseModel, n: int) -> np.ndarray:
    """Apply the channel to every qubit, idle or not."""
    if isinstance(model, NoNoise):
        return rho
    for q in range(n):
        rho = apply_channel(rho, model, q, n)
    return rho


def kraus_operators(model: NoiseModel) -> list[np.ndarray]:
    """Kraus representation of the single-qubit channel (for verification)."""
    from .gates import I2, X, Y, Z, rx_matrix

    if isinstance(model, NoNoise):
        return [I2.copy()]
    if isinstance(model, PauliNoise):
        keep = 1.0 - (model.ex + model.ey + model.ez)
        ops = [np.sqrt(keep) * I2]
        for p, mat in ((model.ex, X), (model.ey, Y), (model.ez, Z)):
            if p:
                ops.append(np.sqrt(p) * mat)
        return ops
    if isinstance(model, CoherentNoise):
        if model.axis == "z":
            u = np.diag([np.exp(1j * model.theta), np.exp(-1j * model.theta)])
        else:
            u = rx_matrix(-2.0 * model.theta) * np.exp(1j * model.theta)
        return [u.astype(np.complex128)]
    if isinstance(model, PauliPlusCoherent):
        rot = kraus_operators(CoherentNoise("x", model.theta))[0]
        return [np.sqrt(1.0 - model.ex) * rot, np.sqrt(model.ex) * (X @ rot)]
    if isinstance(model, AmplitudeDamping):
        g = model.gamma
        k0 = np.array([[1, 0], [0, np.sqrt(1 - g)]], dtype=np.complex128)
        k1 = np.array([[0, np.sqrt(g)], [0, 0]], dtype=np.complex128)
        return [k0, k1]
    if isinstance(model, PhaseDamping):
        return [np.sqrt(1.0 - model.lam) * I2, np.sqrt(model.lam) * Z]
    raise InvalidParams(f"unknown noise model {model!r}")


# ---------------------------------------------------------------------------
# Calibrated strength ladder shared by the benchmarks.

NOISE_KINDS = ("pauli", "coherent", "pauli_coherent", "amplitude_damping")

_PAULI_TOTALS = (0.0, 0.01, 0.02, 0.03)
_COHERENT_ANGLES = (0.0, np.pi / 30, np.pi / 15, np.pi / 10)
_PC_PAIRS = ((0.0, 0.0), (0.01, np.pi / 30), (0.02, np.pi / 15), (0.03, np.pi / 10))
_AD_GAMMAS = (0.0, 0.01, 0.02, 0.03)


def noise_level_table(kind: str, level: int) -> NoiseModel:
    """Model for one of the four standard kinds at strength level 0..3.

    Level 0 is always noise-free in effect: zero probabilities / zero angle.
    """
    if kind not in NOISE_KINDS:
        raise UnknownLevel(f"unknown noise kind {kind!r}")
    if not 0 <= level <= 3:
        raise UnknownLevel(f"level {level} outside 0..3")
    if kind == "pauli":
        return PauliNoise.symmetric(_PAULI_TOTALS[level])
    if kind == "coherent":
        return CoherentNoise("z", _COHERENT_ANGLES[level])
    if kind == "pauli_coherent":
        ex, theta = _PC_PAIRS[level]
        return PauliPlusCoherent(ex, theta).validate()
    return AmplitudeDamping(_AD_GAMMAS[level]).validate()


def noise_model_for(kind: str, param: float) -> NoiseModel:
    """Model of the given kind at an arbitrary strength (fine-grained sweeps)."""
    if kind == "pauli":
        return PauliNoise.symmetric(param)
    if kind == "coherent":
        return CoherentNoise("z", param).validate()
    if kind == "pauli_coherent":
        # Strength pairs follow the table's ratio: eps = p, theta = p * (pi/10)/0.03.
        return PauliPlusCoherent(param, param * (np.pi / 10) / 0.03).validate()
    if kind == "amplitude_damping":
        return AmplitudeDamping(param).validate()
    if kind == "none":
        return NoNoise()
    raise UnknownLevel(f"unknown noise kind {kind!r}")
