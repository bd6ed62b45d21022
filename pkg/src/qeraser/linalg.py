"""Dense complex linear algebra and n-qubit state containers.

Conventions used throughout the package:

* Basis indexing is little-endian: qubit ``q`` occupies bit ``q`` of the
  basis index, so ``|b_{n-1} ... b_1 b_0>`` has index ``sum(b_q << q)``.
* Gate matrices are indexed with the *first listed target as the most
  significant bit* of the gate-local basis, matching the textbook form
  ``CNOT = [[I, 0], [0, X]]`` with the control listed first.
* Global phase is never normalized away.  Comparisons that must ignore it
  say so explicitly.

Everything here is a pure function from input state to output state;
states are value-like and safe to hand to concurrent workers as long as
each worker owns its own instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Default numeric tolerances: state-level quantities (norms, traces) get
# 1e-12, operator-level checks (unitarity, Kraus completeness) get 1e-10.
STATE_ATOL = 1e-12
OPERATOR_ATOL = 1e-10


def _as_complex_array(data, shape=None) -> np.ndarray:
    arr = np.asarray(data, dtype=np.complex128)
    if shape is not None and arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    return arr


def _check_finite(arr: np.ndarray, what: str) -> None:
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise ValueError(f"{what} contains non-finite entries")


def require_unitary(matrix: np.ndarray, atol: float = OPERATOR_ATOL) -> np.ndarray:
    """Validate that ``matrix`` is square, power-of-two sized and unitary."""
    m = _as_complex_array(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"unitary must be square, got shape {m.shape}")
    dim = m.shape[0]
    if dim < 2 or dim & (dim - 1):
        raise ValueError(f"unitary dimension must be a power of two, got {dim}")
    dev = np.max(np.abs(m @ m.conj().T - np.eye(dim)))
    if dev > atol:
        raise ValueError(f"matrix is not unitary: max |U U^dag - I| = {dev:.3e}")
    return m


@dataclass
class StateVector:
    """Pure n-qubit state as a dense complex amplitude array of length 2**n."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be >= 1")
        self.amplitudes = _as_complex_array(self.amplitudes, (2**self.num_qubits,))
        _check_finite(self.amplitudes, "state vector")

    @classmethod
    def zero(cls, num_qubits: int) -> StateVector:
        """The all-|0> computational basis state."""
        amps = np.zeros(2**num_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, num_qubits: int | None = None) -> StateVector:
        amps = _as_complex_array(amplitudes)
        n = num_qubits if num_qubits is not None else int(round(math.log2(amps.size)))
        return cls(n, amps)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def validate(self, atol: float = STATE_ATOL) -> None:
        if abs(self.norm_squared() - 1.0) > atol:
            raise ValueError(f"state norm deviates from 1 by {abs(self.norm_squared() - 1.0):.3e}")

    def to_density_matrix(self) -> DensityMatrix:
        return DensityMatrix(self.num_qubits, np.outer(self.amplitudes, self.amplitudes.conj()))

    def fidelity(self, other: StateVector) -> float:
        """|<self|other>|^2; insensitive to global phase by construction."""
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


@dataclass
class DensityMatrix:
    """Mixed n-qubit state as a dense 2**n x 2**n complex matrix."""

    num_qubits: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be >= 1")
        dim = 2**self.num_qubits
        self.entries = _as_complex_array(self.entries, (dim, dim))
        _check_finite(self.entries, "density matrix")

    @classmethod
    def zero(cls, num_qubits: int) -> DensityMatrix:
        rho = np.zeros((2**num_qubits, 2**num_qubits), dtype=np.complex128)
        rho[0, 0] = 1.0
        return cls(num_qubits, rho)

    @classmethod
    def from_statevector(cls, state: StateVector) -> DensityMatrix:
        return state.to_density_matrix()

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def purity(self) -> float:
        return float(np.trace(self.entries @ self.entries).real)

    def validate(self, atol: float = STATE_ATOL, eig_atol: float = 1e-10) -> None:
        """Check trace = 1, Hermiticity, and eigenvalues >= -eig_atol."""
        tr = np.trace(self.entries)
        if abs(tr - 1.0) > atol:
            raise ValueError(f"trace deviates from 1 by {abs(tr - 1.0):.3e}")
        herm_dev = np.max(np.abs(self.entries - self.entries.conj().T))
        if herm_dev > atol:
            raise ValueError(f"matrix is not Hermitian: max deviation {herm_dev:.3e}")
        eigs = np.linalg.eigvalsh(self.entries)
        if eigs.min() < -eig_atol:
            raise ValueError(f"negative eigenvalue {eigs.min():.3e}")


def _check_targets(targets, num_qubits: int) -> list[int]:
    targets = [int(t) for t in targets]
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target qubits: {targets}")
    for t in targets:
        if not 0 <= t < num_qubits:
            raise ValueError(f"target qubit {t} out of range for {num_qubits} qubits")
    return targets


def apply_matrix(amps: np.ndarray, u: np.ndarray, targets, num_qubits: int) -> np.ndarray:
    """Apply ``u`` on ``targets`` of an array whose last axis has length 2**n.

    Leading axes are treated as a batch.  The gate-local basis uses the
    first listed target as its most significant bit.
    """
    k = len(targets)
    if u.shape != (2**k, 2**k):
        raise ValueError(f"matrix of dim {u.shape[0]} does not act on {k} qubits")
    lead = amps.shape[:-1]
    if k == 1:
        # Fused hot path: no axis moves, two multiply-adds per output slice.
        q = targets[0]
        view = amps.reshape(lead + (2 ** (num_qubits - 1 - q), 2, 2**q))
        a0, a1 = view[..., 0, :], view[..., 1, :]
        out = np.empty_like(view)
        out[..., 0, :] = u[0, 0] * a0 + u[0, 1] * a1
        out[..., 1, :] = u[1, 0] * a0 + u[1, 1] * a1
        return out.reshape(amps.shape)
    nd = amps.reshape(lead + (2,) * num_qubits)
    nlead = len(lead)
    # qubit q lives on axis nlead + (num_qubits - 1 - q)
    src = [nlead + num_qubits - 1 - t for t in targets]
    dst = list(range(nlead, nlead + k))
    nd = np.moveaxis(nd, src, dst)
    moved_shape = nd.shape
    batch = int(np.prod(lead, dtype=np.int64)) if lead else 1
    mat = nd.reshape(batch, 2**k, -1)
    out = np.matmul(u, mat)
    out = np.moveaxis(out.reshape(moved_shape), dst, src)
    return np.ascontiguousarray(out.reshape(lead + (2**num_qubits,)))


def apply_unitary(state: StateVector, u: np.ndarray, targets) -> StateVector:
    """Evolve a pure state by ``u`` embedded on ``targets``, identity elsewhere."""
    targets = _check_targets(targets, state.num_qubits)
    u = _as_complex_array(u)
    if u.shape != (2 ** len(targets), 2 ** len(targets)):
        raise ValueError(
            f"matrix of dim {u.shape} does not match {len(targets)} target qubit(s)"
        )
    out = apply_matrix(state.amplitudes, u, targets, state.num_qubits)
    return StateVector(state.num_qubits, out)


def sandwich(mat: np.ndarray, k: np.ndarray, targets, num_qubits: int) -> np.ndarray:
    """K mat K^dag with ``k`` embedded on ``targets``.

    Uses ``mat K^dag = apply_matrix(mat, conj(K))`` (column action) followed
    by ``K A = apply_matrix(A.T, K).T`` (row action).
    """
    a = apply_matrix(mat, k.conj(), targets, num_qubits)
    return apply_matrix(a.T, k, targets, num_qubits).T


def apply_unitary_dm(rho: DensityMatrix, u: np.ndarray, targets) -> DensityMatrix:
    """rho -> U rho U^dag with ``u`` embedded on ``targets``."""
    targets = _check_targets(targets, rho.num_qubits)
    u = _as_complex_array(u)
    return DensityMatrix(rho.num_qubits, sandwich(rho.entries, u, targets, rho.num_qubits))


def apply_kraus(rho: DensityMatrix, kraus_set, targets, atol: float = OPERATOR_ATOL) -> DensityMatrix:
    """rho -> sum_i K_i rho K_i^dag; the set must satisfy sum K^dag K = I."""
    targets = _check_targets(targets, rho.num_qubits)
    dim = 2 ** len(targets)
    ops = [_as_complex_array(k, (dim, dim)) for k in kraus_set]
    if not ops:
        raise ValueError("empty Kraus set")
    completeness = sum(k.conj().T @ k for k in ops)
    dev = np.max(np.abs(completeness - np.eye(dim)))
    if dev > atol:
        raise ValueError(f"Kraus set is not trace-preserving: max |sum K^dag K - I| = {dev:.3e}")
    out = np.zeros_like(rho.entries)
    for k in ops:
        out += sandwich(rho.entries, k, targets, rho.num_qubits)
    return DensityMatrix(rho.num_qubits, out)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out everything except ``keep``; output qubit i corresponds to keep[i]."""
    keep = list(keep)
    if not keep:
        raise ValueError("keep set must be nonempty")
    keep = _check_targets(keep, rho.num_qubits)
    n = rho.num_qubits
    m = len(keep)
    t = rho.entries.reshape((2,) * (2 * n))
    # Axis j (< n) holds the row bit of qubit n-1-j; axis n+j the column bit.
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    row = {}
    col = {}
    next_letter = iter(letters)
    for q in range(n):
        if q in keep:
            row[q] = next(next_letter)
            col[q] = next(next_letter)
        else:
            shared = next(next_letter)
            row[q] = col[q] = shared
    in_sub = "".join(row[n - 1 - j] for j in range(n)) + "".join(col[n - 1 - j] for j in range(n))
    out_sub = "".join(row[keep[m - 1 - j]] for j in range(m)) + "".join(
        col[keep[m - 1 - j]] for j in range(m)
    )
    reduced = np.einsum(f"{in_sub}->{out_sub}", t).reshape(2**m, 2**m)
    return DensityMatrix(m, reduced)


def _outcome_mask(num_qubits: int, qubits: list[int], outcomes: list[int]) -> np.ndarray:
    idx = np.arange(2**num_qubits)
    mask = np.ones(2**num_qubits, dtype=bool)
    for q, o in zip(qubits, outcomes):
        mask &= ((idx >> q) & 1) == o
    return mask


def measure_probability(state: StateVector | DensityMatrix, qubit, outcome) -> float:
    """Born-rule probability of reading ``outcome`` on ``qubit``.

    Both arguments also accept sequences for joint outcomes, e.g.
    ``measure_probability(psi, (0, 1, 2), (0, 1, 1))``.
    """
    qubits = [qubit] if isinstance(qubit, (int, np.integer)) else list(qubit)
    outcomes = [outcome] if isinstance(outcome, (int, np.integer)) else list(outcome)
    if len(qubits) != len(outcomes):
        raise ValueError("qubit and outcome lists must have equal length")
    qubits = _check_targets(qubits, state.num_qubits)
    for o in outcomes:
        if o not in (0, 1):
            raise ValueError(f"outcome must be 0 or 1, got {o}")
    mask = _outcome_mask(state.num_qubits, qubits, outcomes)
    if isinstance(state, StateVector):
        p = float(np.sum(np.abs(state.amplitudes[mask]) ** 2))
    else:
        p = float(np.sum(np.diag(state.entries).real[mask]))
    return min(max(p, 0.0), 1.0)
