"""Shared independent oracles for the test suite.

These deliberately re-implement state/gate mechanics by explicit basis
enumeration (no tensor reshaping), so library results are checked against
a second, structurally different code path.
"""

from __future__ import annotations

import math

import numpy as np

RT2 = 1.0 / math.sqrt(2.0)


def kron_embed(u: np.ndarray, targets, num_qubits: int) -> np.ndarray:
    """Embed a gate into the full space by brute-force basis bookkeeping.

    Little-endian global indexing; the first listed target is the most
    significant bit of the gate-local index.
    """
    dim = 2**num_qubits
    k = len(targets)
    full = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        bits = [(col >> q) & 1 for q in range(num_qubits)]
        sub_in = 0
        for i, t in enumerate(targets):
            sub_in |= bits[t] << (k - 1 - i)
        for sub_out in range(2**k):
            amp = u[sub_out, sub_in]
            if amp == 0:
                continue
            nb = list(bits)
            for i, t in enumerate(targets):
                nb[t] = (sub_out >> (k - 1 - i)) & 1
            row = sum(b << q for q, b in enumerate(nb))
            full[row, col] += amp
    return full


def ket(num_qubits: int, amplitude_map: dict[tuple[int, ...], complex]) -> np.ndarray:
    """State vector from {(bit of qubit 0, bit of qubit 1, ...): amplitude}."""
    v = np.zeros(2**num_qubits, dtype=np.complex128)
    for bits, amp in amplitude_map.items():
        v[sum(b << q for q, b in enumerate(bits))] = amp
    return v


def slice_state_formulas(theta: float, phi: float) -> list[np.ndarray]:
    """The six closed-form slice states of the two-recorder circuit.

    Qubit order (s, x, y); amplitudes written out exactly as derived by
    hand from the circuit action, independent of any engine code.
    """
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    e = np.exp(1j * theta)
    return [
        ket(3, {(0, 0, 0): RT2, (1, 0, 0): RT2}),
        ket(3, {(0, 1, 0): RT2, (1, 0, 1): RT2}),
        ket(3, {(0, 1, 0): RT2, (1, 0, 1): RT2 * e}),
        ket(3, {(0, 1, 1): RT2, (1, 0, 1): RT2 * e}),
        ket(
            3,
            {
                (0, 0, 1): -RT2 * s,
                (0, 1, 1): RT2 * c,
                (1, 0, 1): RT2 * e * c,
                (1, 1, 1): RT2 * e * s,
            },
        ),
        ket(
            3,
            {
                (0, 1, 1): 0.5 * (c + e * s),
                (1, 1, 1): 0.5 * (c - e * s),
                (0, 0, 1): -0.5 * (s - e * c),
                (1, 0, 1): -0.5 * (s + e * c),
            },
        ),
    ]


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary via QR of a complex Gaussian matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def phase_aligned_max_norm(m1: np.ndarray, m2: np.ndarray) -> float:
    tr = np.trace(m2.conj().T @ m1)
    phase = tr / abs(tr) if abs(tr) > 1e-12 else 1.0
    return float(np.max(np.abs(m1 - phase * m2)))


def choi_matrix(kraus_ops, dim: int = 2) -> np.ndarray:
    """Choi matrix sum_k (K (x) I) |Omega><Omega| (K (x) I)^dag (unnormalized)."""
    omega = np.zeros(dim * dim, dtype=np.complex128)
    for i in range(dim):
        omega[i * dim + i] = 1.0
    out = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
    for k in kraus_ops:
        big = np.kron(k, np.eye(dim))
        v = big @ omega
        out += np.outer(v, v.conj())
    return out


def apply_channel_dense(rho: np.ndarray, kraus_ops) -> np.ndarray:
    return sum(k @ rho @ k.conj().T for k in kraus_ops)
