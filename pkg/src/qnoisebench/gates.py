"""Gate alphabet, matrices, and operator embedding.

Qubit 0 is the most-significant bit of the computational basis index, so for
an n-qubit register the basis state |q0 q1 ... q_{n-1}> has index
sum(q_k * 2^(n-1-k)). All embeddings below follow that convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DuplicateIndex, InvalidParams
from .linalg import as_complex

SQ2 = 1.0 / np.sqrt(2.0)

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = SQ2 * np.array([[1, 1], [1, -1]], dtype=np.complex128)
S = np.array([[1, 0], [0, 1j]], dtype=np.complex128)
SDG = S.conj().T
T = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=np.complex128)
TDG = T.conj().T

PAULIS = {"i": I2, "x": X, "y": Y, "z": Z}

CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=np.complex128,
)

TOFFOLI = np.eye(8, dtype=np.complex128)
TOFFOLI[[6, 7], :] = TOFFOLI[[7, 6], :]


def rz_matrix(theta: float) -> np.ndarray:
    """Z rotation in the phase convention: diag(1, e^{i theta})."""
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=np.complex128)


def rx_matrix(theta: float) -> np.ndarray:
    """X rotation, H Rz(theta) H."""
    return H @ rz_matrix(theta) @ H


FIXED_MATRICES = {
    "i": I2, "x": X, "y": Y, "z": Z, "h": H,
    "s": S, "sdg": SDG, "t": T, "tdg": TDG,
    "cnot": CNOT, "toffoli": TOFFOLI,
}

GATE_ARITY = {
    "i": 1, "x": 1, "y": 1, "z": 1, "h": 1, "s": 1, "sdg": 1,
    "t": 1, "tdg": 1, "rz": 1, "rx": 1, "cnot": 2, "toffoli": 3,
}

CLIFFORD_T_NAMES = frozenset(
    ["i", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "cnot"]
)


@dataclass(frozen=True)
class Gate:
    """One gate application: a name, target qubits, and an optional angle."""

    name: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.name not in GATE_ARITY:
            raise InvalidParams(f"unknown gate {self.name!r}")
        if len(self.qubits) != GATE_ARITY[self.name]:
            raise InvalidParams(
                f"{self.name} takes {GATE_ARITY[self.name]} qubit(s), "
                f"got {self.qubits}"
            )
        if any(q < 0 for q in self.qubits):
            raise IndexError(f"negative qubit index in {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise DuplicateIndex(f"repeated qubit in {self.qubits}")
        if self.name in ("rz", "rx"):
            if self.angle is None or not np.isfinite(self.angle):
                raise InvalidParams(f"{self.name} requires a finite angle")
            # Plain float so serialized angles read back (repr of numpy
            # scalars does not).
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise InvalidParams(f"{self.name} takes no angle")

    # Constructors so circuits read like circuits.
    @classmethod
    def i(cls, q):       return cls("i", (q,))
    @classmethod
    def x(cls, q):       return cls("x", (q,))
    @classmethod
    def y(cls, q):       return cls("y", (q,))
    @classmethod
    def z(cls, q):       return cls("z", (q,))
    @classmethod
    def h(cls, q):       return cls("h", (q,))
    @classmethod
    def s(cls, q):       return cls("s", (q,))
    @classmethod
    def sdg(cls, q):     return cls("sdg", (q,))
    @classmethod
    def t(cls, q):       return cls("t", (q,))
    @classmethod
    def tdg(cls, q):     return cls("tdg", (q,))
    @classmethod
    def rz(cls, q, theta): return cls("rz", (q,), float(theta))
    @classmethod
    def rx(cls, q, theta): return cls("rx", (q,), float(theta))
    @classmethod
    def cnot(cls, control, target): return cls("cnot", (control, target))
    @classmethod
    def toffoli(cls, c1, c2, target): return cls("toffoli", (c1, c2, target))

    def matrix(self) -> np.ndarray:
        if self.name == "rz":
            return rz_matrix(self.angle)
        if self.name == "rx":
            return rx_matrix(self.angle)
        return FIXED_MATRICES[self.name]


def embed_unitary(u: np.ndarray, targets: tuple[int, ...], n: int) -> np.ndarray:
    """Embed a k-qubit operator acting on `targets` into the full 2^n space."""
    u = as_complex(u)
    k = len(targets)
    if u.shape != (2 ** k, 2 ** k):
        raise InvalidParams(f"operator shape {u.shape} does not match {k} targets")
    if len(set(targets)) != k:
        raise DuplicateIndex(f"repeated qubit in {targets}")
    if any(q < 0 or q >= n for q in targets):
        raise IndexError(f"targets {targets} out of range for {n} qubits")
    dim = 2 ** n
    shifts = [n - 1 - q for q in targets]  # bit position of each target
    full = np.zeros((dim, dim), dtype=np.complex128)
    target_mask = 0
    for sh in shifts:
        target_mask |= 1 << sh

    idx = np.arange(dim)
    sub = np.zeros(dim, dtype=np.int64)
    for pos, sh in enumerate(shifts):
        sub |= ((idx >> sh) & 1) << (k - 1 - pos)
    base = idx & ~target_mask

    # Group rows by their non-target bits; the operator acts within each group.
    for col_sub in range(2 ** k):
        col_bits = 0
        for pos, sh in enumerate(shifts):
            col_bits |= ((col_sub >> (k - 1 - pos)) & 1) << sh
        cols = base | col_bits
        full[idx, cols] = u[sub, col_sub]
    return full


def gate_matrix(gate: Gate, n: int) -> np.ndarray:
    """Full 2^n x 2^n unitary for one gate."""
    if any(q >= n for q in gate.qubits):
        raise IndexError(f"gate {gate.name} on {gate.qubits} exceeds width {n}")
    return embed_unitary(gate.matrix(), gate.qubits, n)


_AX = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def apply_local_unitary(rho: np.ndarray, u: np.ndarray,
                        targets: tuple[int, ...], n: int) -> np.ndarray:
    """Conjugate rho by a k-qubit unitary on `targets`: U rho U^dagger.

    Works on the tensor-reshaped state, so the cost is O(4^n * 2^k) instead of
    the O(8^n) of a dense conjugation.
    """
    k = len(targets)
    u = as_complex(u).reshape((2,) * (2 * k))
    t = rho.reshape((2,) * (2 * n))

    row_axes = list(targets)
    in_sub = list(_AX[: 2 * n])
    u_sub = list(_AX[2 * n: 2 * n + 2 * k])
    out_sub = in_sub.copy()
    for pos, ax in enumerate(row_axes):
        u_sub[k + pos] = in_sub[ax]
        out_sub[ax] = u_sub[pos]
    t = np.einsum("".join(u_sub) + "," + "".join(in_sub) + "->" + "".join(out_sub), u, t)

    col_axes = [n + q for q in targets]
    uc = u.conj()
    in_sub = list(_AX[: 2 * n])
    u_sub = list(_AX[2 * n: 2 * n + 2 * k])
    out_sub = in_sub.copy()
    for pos, ax in enumerate(col_axes):
        u_sub[k + pos] = in_sub[ax]
        out_sub[ax] = u_sub[pos]
    t = np.einsum("".join(u_sub) + "," + "".join(in_sub) + "->" + "".join(out_sub), uc, t)

    return t.reshape(2 ** n, 2 ** n)
