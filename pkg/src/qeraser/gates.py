"""Gate definitions and parametric constructors.

Matrix conventions:

* ``phase_gate(theta)`` is ``diag(1, e^{i theta}) = e^{i theta/2} Rz(theta)``.
* ``ry_gate(phi)`` is ``cos(phi/2) I - i sin(phi/2) Y``.
* ``sx_gate()`` is the principal square root of X (eigenphases 1 and i,
  determinant i), so ``SX @ SX == X`` exactly.
* ``ecr_gate()`` uses the convention ``ECR = (I (x) X - X (x) Y) / sqrt(2)``
  with the first listed wire as the left tensor factor.  The paper-facing
  contract is only CNOT-equivalence up to single-qubit rotations, which
  :func:`cnot_from_ecr` realizes exactly.
* Controlled gates put the control on the first listed wire (most
  significant bit of the gate-local basis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import OPERATOR_ATOL, require_unitary

_SQ2 = math.sqrt(2.0)

_I = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / _SQ2
_SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=np.complex128)


def _check_angle(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class GateSpec:
    """Immutable gate: symbolic name, parameters, arity and unitary matrix."""

    name: str
    params: tuple[float, ...]
    arity: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = require_unitary(self.matrix, OPERATOR_ATOL)
        if m.shape[0] != 2**self.arity:
            raise ValueError(f"gate {self.name}: matrix dim {m.shape[0]} != 2**{self.arity}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))


def identity_gate() -> GateSpec:
    return GateSpec("id", (), 1, _I)


def x_gate() -> GateSpec:
    return GateSpec("x", (), 1, _X)


def y_gate() -> GateSpec:
    return GateSpec("y", (), 1, _Y)


def z_gate() -> GateSpec:
    return GateSpec("z", (), 1, _Z)


def h_gate() -> GateSpec:
    return GateSpec("h", (), 1, _H)


def sx_gate() -> GateSpec:
    """Principal square root of X; SX @ SX == X, det(SX) = i."""
    return GateSpec("sx", (), 1, _SX)


def rz_gate(lam: float) -> GateSpec:
    lam = _check_angle(lam, "lambda")
    m = np.array([[np.exp(-0.5j * lam), 0], [0, np.exp(0.5j * lam)]])
    return GateSpec("rz", (lam,), 1, m)


def rx_gate(theta: float) -> GateSpec:
    theta = _check_angle(theta, "theta")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return GateSpec("rx", (theta,), 1, np.array([[c, -1j * s], [-1j * s, c]]))


def ry_gate(phi: float) -> GateSpec:
    """Rotation about Y: [[cos(phi/2), -sin(phi/2)], [sin(phi/2), cos(phi/2)]]."""
    phi = _check_angle(phi, "phi")
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    return GateSpec("ry", (phi,), 1, np.array([[c, -s], [s, c]], dtype=np.complex128))


def phase_gate(theta: float) -> GateSpec:
    """diag(1, e^{i theta}); equals e^{i theta/2} Rz(theta)."""
    theta = _check_angle(theta, "theta")
    return GateSpec("p", (theta,), 1, np.array([[1, 0], [0, np.exp(1j * theta)]]))


def cnot_gate() -> GateSpec:
    m = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128)
    return GateSpec("cx", (), 2, m)


def swap_gate() -> GateSpec:
    m = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128)
    return GateSpec("swap", (), 2, m)


def ecr_gate() -> GateSpec:
    """Echoed cross-resonance gate, (I (x) X - X (x) Y) / sqrt(2).

    Hermitian and self-inverse (ECR^2 = I).  Equivalent to CNOT up to the
    single-qubit rotations returned by :func:`cnot_from_ecr`.
    """
    m = (np.kron(_I, _X) - np.kron(_X, _Y)) / _SQ2
    return GateSpec("ecr", (), 2, m)


def controlled(gate: GateSpec) -> GateSpec:
    """Block-diagonal I (+) U with the control on the first listed wire."""
    if gate.arity != 1:
        raise ValueError(f"controlled() needs a 1-qubit gate, got arity {gate.arity}")
    m = np.zeros((4, 4), dtype=np.complex128)
    m[:2, :2] = _I
    m[2:, 2:] = gate.matrix
    return GateSpec("c" + gate.name, gate.params, 2, m)


def decompose_swap() -> list[tuple[GateSpec, tuple[int, int]]]:
    """SWAP(a, b) as three CNOTs: CX(a,b), CX(b,a), CX(a,b) on symbolic wires (0, 1)."""
    cx = cnot_gate()
    return [(cx, (0, 1)), (cx, (1, 0)), (cx, (0, 1))]


def cnot_from_ecr() -> tuple[list[tuple[GateSpec, int]], list[tuple[GateSpec, int]], complex]:
    """Single-qubit corrections realizing CNOT(a, b) through one ECR(a, b).

    Returns ``(pre, post, phase)`` with ``pre``/``post`` as lists of
    ``(gate, wire)`` pairs (wire 0 = control, 1 = target) such that, as
    matrices,

        CNOT = phase * (post products) @ ECR @ (pre products)

    The identity used is ``ECR = exp(i pi/4 X(x)Z) (I(x)X)`` together with
    ``CNOT = e^{i pi/4} (Rz(pi/2)(x)Rx(pi/2)) exp(i pi/4 Z(x)X)`` and a
    Hadamard change of axis on both wires.
    """
    pre = [(h_gate(), 0), (h_gate(), 1), (x_gate(), 1)]
    post = [(h_gate(), 0), (rz_gate(math.pi / 2), 0), (h_gate(), 1), (rx_gate(math.pi / 2), 1)]
    return pre, post, np.exp(0.25j * math.pi)


_FIXED_GATES = {
    "id": identity_gate,
    "x": x_gate,
    "y": y_gate,
    "z": z_gate,
    "h": h_gate,
    "sx": sx_gate,
    "cx": cnot_gate,
    "swap": swap_gate,
    "ecr": ecr_gate,
}

_PARAMETRIC_GATES = {
    "rz": rz_gate,
    "rx": rx_gate,
    "ry": ry_gate,
    "p": phase_gate,
}


def gate_from_name(name: str, params=()) -> GateSpec:
    """Reconstruct a gate from its symbolic name, e.g. when loading JSON."""
    params = tuple(params or ())
    if name in _FIXED_GATES:
        if params:
            raise ValueError(f"gate {name!r} takes no parameters")
        return _FIXED_GATES[name]()
    if name in _PARAMETRIC_GATES:
        if len(params) != 1:
            raise ValueError(f"gate {name!r} takes exactly one angle")
        return _PARAMETRIC_GATES[name](params[0])
    if name.startswith("c") and name[1:] in _PARAMETRIC_GATES | _FIXED_GATES:
        return controlled(gate_from_name(name[1:], params))
    raise ValueError(f"unknown gate name {name!r}")
