"""Dense statevector and density-matrix simulator for 1-4 qubit registers.

Qubit labels are 1-based and qubit 1 is the most-significant (leftmost) index:
the basis ket |q1 q2 q3> lives at integer index q1*4 + q2*2 + q3.  All values
are immutable; every operation returns a fresh object.
"""

from __future__ import annotations

import math
from enum import IntEnum

import numpy as np

MAX_QUBITS = 4

NORM_ATOL = 1e-12
HERMITIAN_ATOL = 1e-12
UNITARY_ATOL = 1e-10
PSD_ATOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class Gate(IntEnum):
    """Gate identifiers of the g x 3 genome encoding."""

    RX = 1
    RY = 2
    RZ = 3
    MS = 4


def _as_readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def _n_qubits_for(dim: int, what: str) -> int:
    n = int(round(math.log2(dim))) if dim > 0 else 0
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"{what} dimension {dim} is not a power of two")
    if n > MAX_QUBITS:
        raise ValueError(f"{what} spans {n} qubits; at most {MAX_QUBITS} supported")
    return n


class StateVector:
    """Normalized pure state of ``n_qubits`` qubits.

    Construction normalizes the amplitudes; a zero vector is rejected.
    """

    def __init__(self, amplitudes, *, norm_atol: float = NORM_ATOL):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        self.n_qubits = _n_qubits_for(amps.size, "state")
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if norm < norm_atol:
            raise ValueError("cannot normalize a zero state vector")
        self.amplitudes = _as_readonly(amps / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> "DensityMatrix":
        """Rank-one density matrix |psi><psi|."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"


class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    def __init__(self, entries, *, hermitian_atol: float = HERMITIAN_ATOL,
                 trace_atol: float = HERMITIAN_ATOL, psd_atol: float = PSD_ATOL):
        mat = np.asarray(entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("density matrix must be square")
        self.n_qubits = _n_qubits_for(mat.shape[0], "density matrix")
        if np.abs(mat - mat.conj().T).max() > hermitian_atol:
            raise ValueError("density matrix is not Hermitian")
        if abs(mat.trace() - 1.0) > trace_atol:
            raise ValueError(f"density matrix trace {mat.trace():.3g} is not 1")
        eigs = np.linalg.eigvalsh(mat)
        if eigs.min() < -psd_atol:
            raise ValueError(f"density matrix has negative eigenvalue {eigs.min():.3g}")
        self.entries = _as_readonly(mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __repr__(self):
        return f"DensityMatrix(n_qubits={self.n_qubits})"


class Unitary:
    """Square matrix with U^dag U = I within ``unitary_atol`` (max-entry norm)."""

    def __init__(self, entries, *, unitary_atol: float = UNITARY_ATOL):
        mat = np.asarray(entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("unitary must be square")
        _n_qubits_for(mat.shape[0], "unitary")
        defect = np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])).max()
        if defect > unitary_atol:
            raise ValueError(f"matrix is not unitary (defect {defect:.3g})")
        self.entries = _as_readonly(mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def dagger(self) -> "Unitary":
        return Unitary(self.entries.conj().T)

    def __matmul__(self, other: "Unitary") -> "Unitary":
        return Unitary(self.entries @ other.entries)

    def __repr__(self):
        return f"Unitary(dim={self.dim})"


class Observable:
    """Hermitian operator."""

    def __init__(self, entries, *, hermitian_atol: float = HERMITIAN_ATOL):
        mat = np.asarray(entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("observable must be square")
        _n_qubits_for(mat.shape[0], "observable")
        if np.abs(mat - mat.conj().T).max() > hermitian_atol:
            raise ValueError("observable is not Hermitian")
        self.entries = _as_readonly(mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def basis_state(bits: str) -> StateVector:
    """State |bits> for a bit string like \"010\" (qubit 1 leftmost)."""
    if not bits or any(b not in "01" for b in bits):
        raise ValueError(f"invalid bit string {bits!r}")
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[int(bits, 2)] = 1.0
    return StateVector(amps)


def single_qubit_state(theta: float) -> StateVector:
    """cos(theta)|0> + sin(theta)|1>."""
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    return StateVector([math.cos(theta), math.sin(theta)])


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product; qubit 1 of ``a`` stays the most-significant index."""
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def gate_matrix(gate_id: Gate | int, phase: float) -> Unitary:
    """Gate-set matrix for the given identifier.

    RX/RY/RZ return exp(-i*phase*sigma_a/2); MS returns the two-qubit
    exp(-i*phase*sigma_y x sigma_y/2).  Half-angle convention throughout.
    """
    if not math.isfinite(phase):
        raise ValueError("phase must be finite")
    try:
        gate = Gate(gate_id)
    except ValueError:
        raise ValueError(f"unknown gate id {gate_id!r}") from None
    if gate == Gate.MS:
        generator = np.kron(PAULI_Y, PAULI_Y)
    else:
        generator = {Gate.RX: PAULI_X, Gate.RY: PAULI_Y, Gate.RZ: PAULI_Z}[gate]
    # generator squares to I, so the exponential has this closed form
    mat = (math.cos(phase / 2) * np.eye(generator.shape[0])
           - 1j * math.sin(phase / 2) * generator)
    return Unitary(mat)


def _check_targets(targets, n_qubits: int, k: int):
    targets = tuple(int(t) for t in targets)
    if len(targets) != k:
        raise ValueError(f"gate acts on {k} qubits but {len(targets)} targets given")
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target qubits {targets}")
    for t in targets:
        if not 1 <= t <= n_qubits:
            raise ValueError(f"target qubit {t} outside register of {n_qubits}")
    return targets


def apply_gate(state: StateVector, gate: Unitary, targets) -> StateVector:
    """Apply ``gate`` on the (1-based, ordered) target qubits, identity elsewhere."""
    n = state.n_qubits
    k = _n_qubits_for(gate.dim, "gate")
    targets = _check_targets(targets, n, k)
    axes = [t - 1 for t in targets]
    rest = [a for a in range(n) if a not in axes]
    arr = state.amplitudes.reshape([2] * n).transpose(axes + rest).reshape(2**k, -1)
    arr = gate.entries @ arr
    arr = arr.reshape([2] * n).transpose(np.argsort(axes + rest))
    return StateVector(arr.reshape(-1))


def apply_unitary_full(state: StateVector, unitary: Unitary) -> StateVector:
    """Full-register matrix application U|psi>."""
    if unitary.dim != state.dim:
        raise ValueError(f"unitary dim {unitary.dim} != state dim {state.dim}")
    return StateVector(unitary.entries @ state.amplitudes)


def embedded_unitary(gate: Unitary, targets, n_qubits: int) -> Unitary:
    """Full 2^n x 2^n matrix of ``gate`` embedded on the target qubits."""
    k = _n_qubits_for(gate.dim, "gate")
    targets = _check_targets(targets, n_qubits, k)
    axes = [t - 1 for t in targets]
    rest = [a for a in range(n_qubits) if a not in axes]
    dim = 2**n_qubits
    # apply the gate to every column of the identity at once
    arr = np.eye(dim, dtype=complex).reshape([2] * n_qubits + [dim])
    arr = arr.transpose(axes + rest + [n_qubits]).reshape(2**k, -1)
    arr = gate.entries @ arr
    arr = arr.reshape([2] * n_qubits + [dim])
    arr = arr.transpose(list(np.argsort(axes + rest)) + [n_qubits])
    return Unitary(arr.reshape(dim, dim))


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the kept qubits, in ascending original index order."""
    keep = sorted(set(int(q) for q in keep))
    n = rho.n_qubits
    if not keep:
        raise ValueError("must keep at least one qubit")
    for q in keep:
        if not 1 <= q <= n:
            raise ValueError(f"kept qubit {q} outside register of {n}")
    keep_axes = [q - 1 for q in keep]
    trace_axes = [a for a in range(n) if a not in keep_axes]
    arr = rho.entries.reshape([2] * (2 * n))
    for a in sorted(trace_axes, reverse=True):
        arr = np.trace(arr, axis1=a, axis2=a + arr.ndim // 2)
    d = 2 ** len(keep)
    return DensityMatrix(arr.reshape(d, d))


def fidelity_pure_mixed(psi: StateVector, rho: DensityMatrix) -> float:
    """Overlap <psi|rho|psi>, clamped into [0, 1]."""
    if psi.dim != rho.dim:
        raise ValueError(f"state dim {psi.dim} != density matrix dim {rho.dim}")
    val = psi.amplitudes.conj() @ rho.entries @ psi.amplitudes
    return float(min(1.0, max(0.0, val.real)))


def expectation(obs: Observable, rho: DensityMatrix) -> float:
    """Tr(obs rho); the (numerically zero) imaginary part is discarded."""
    if obs.dim != rho.dim:
        raise ValueError(f"observable dim {obs.dim} != density matrix dim {rho.dim}")
    return float(np.trace(obs.entries @ rho.entries).real)


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """0.5 * trace norm of rho - sigma."""
    if rho.dim != sigma.dim:
        raise ValueError("dimension mismatch")
    eigs = np.linalg.eigvalsh(rho.entries - sigma.entries)
    return float(0.5 * np.abs(eigs).sum())
