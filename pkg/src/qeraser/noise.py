"""Decoherence channels synthesized from T1/T2 and instruction durations.

The delay channel models the standard two-parameter relaxation picture:
amplitude damping with ``gamma = 1 - exp(-t/T1)`` composed with pure
dephasing chosen so the *total* off-diagonal decay factor is
``exp(-t/T2)``.  Since amplitude damping alone already shrinks coherences
by ``exp(-t/(2 T1))``, the extra dephasing rate is

    1/T_phi = 1/T2 - 1/(2 T1),

which requires the physicality constraint ``T2 <= 2 T1``.

Readout errors are a classical confusion channel: the ideal outcome is
flipped with an asymmetric probability pair.  This is also the mechanism
used to reproduce the classically forbidden "leakage" outcomes, which on
hardware show up in the recorder wires.

By default decoherence acts only during explicit delay instructions
(``apply_during_delays_only=True``); optionally it acts during every timed
instruction.  Idle windows can be exposed to the model by materializing
scheduling padding via ``Schedule.padded_circuit()``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

_I = np.eye(2, dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class QubitNoiseParams:
    """Per-qubit relaxation/dephasing times (seconds) and readout flips.

    ``readout_flip`` is the pair (p(read 1 | state 0), p(read 0 | state 1)).
    Infinite T1/T2 and zero flips describe an ideal qubit.
    """

    t1: float = math.inf
    t2: float = math.inf
    readout_flip: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if not self.t1 > 0:
            raise ValueError(f"t1 must be > 0 (seconds), got {self.t1}")
        if not self.t2 > 0:
            raise ValueError(f"t2 must be > 0 (seconds), got {self.t2}")
        if self.t2 > 2 * self.t1:
            raise ValueError(f"unphysical params: t2 = {self.t2} > 2*t1 = {2 * self.t1}")
        p01, p10 = self.readout_flip
        if not (0 <= p01 <= 1 and 0 <= p10 <= 1):
            raise ValueError(f"readout flip probabilities must be in [0, 1], got {self.readout_flip}")
        object.__setattr__(self, "readout_flip", (float(p01), float(p10)))

    @property
    def ideal(self) -> bool:
        return (
            math.isinf(self.t1)
            and math.isinf(self.t2)
            and self.readout_flip == (0.0, 0.0)
        )

    def flip_probability(self, ideal_outcome: int) -> float:
        return self.readout_flip[0] if ideal_outcome == 0 else self.readout_flip[1]


IDEAL_QUBIT = QubitNoiseParams()


@dataclass(frozen=True)
class NoiseModel:
    """Per-wire noise parameters for a circuit.

    Must cover every wire of the circuit it is attached to; construct with
    :meth:`uniform` or :meth:`from_dict` to fill unlisted wires with ideal
    parameters.
    """

    qubit_params: tuple[QubitNoiseParams, ...]
    apply_during_delays_only: bool = True

    @property
    def num_qubits(self) -> int:
        return len(self.qubit_params)

    @classmethod
    def uniform(cls, num_qubits: int, params: QubitNoiseParams, **kw) -> NoiseModel:
        return cls(tuple(params for _ in range(num_qubits)), **kw)

    @classmethod
    def from_dict(cls, per_wire: dict[int, QubitNoiseParams], num_qubits: int, **kw) -> NoiseModel:
        return cls(
            tuple(per_wire.get(q, IDEAL_QUBIT) for q in range(num_qubits)), **kw
        )

    def params_for(self, wire: int) -> QubitNoiseParams:
        return self.qubit_params[wire]

    def check_covers(self, num_qubits: int) -> None:
        if self.num_qubits < num_qubits:
            raise ValueError(
                f"noise model covers {self.num_qubits} wires, circuit has {num_qubits}"
            )

    def has_readout_error(self) -> bool:
        return any(p.readout_flip != (0.0, 0.0) for p in self.qubit_params)


def delay_channel(params: QubitNoiseParams, duration: float) -> list[np.ndarray]:
    """Kraus set for idling ``duration`` seconds under ``params``.

    Amplitude damping with gamma = 1 - exp(-t/T1) composed with pure
    dephasing so the total off-diagonal decay factor is exp(-t/T2).
    Trace-preserving for every valid parameter combination; duration 0 (or
    fully ideal params) yields the identity channel.
    """
    if duration < 0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    gamma = -math.expm1(-duration / params.t1)  # 1 - e^{-t/T1}, exact near 0
    rate_phi = 1.0 / params.t2 - 0.5 / params.t1
    f_extra = math.exp(-duration * rate_phi)  # extra dephasing beyond damping
    ad = [
        np.array([[1, 0], [0, math.sqrt(1 - gamma)]], dtype=np.complex128),
        np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=np.complex128),
    ]
    deph = [
        math.sqrt((1 + f_extra) / 2) * _I,
        math.sqrt((1 - f_extra) / 2) * _Z,
    ]
    ops = [d @ a for d in deph for a in ad]
    return [k for k in ops if np.max(np.abs(k)) > 1e-15]


def flip_outcome(ideal: int, flip_probability: float, u: float) -> int:
    """Deterministic flip rule shared by scalar and vectorized readout paths."""
    return ideal ^ int(u < flip_probability)


def readout_channel(params: QubitNoiseParams, ideal_outcome: int, rng) -> int:
    """Report ``ideal_outcome`` through the asymmetric readout confusion.

    ``rng`` needs a ``uniform()`` method returning floats in [0, 1); both
    ``numpy.random.Generator`` and :class:`qeraser.rng.DrawStream` qualify.
    """
    if ideal_outcome not in (0, 1):
        raise ValueError(f"ideal outcome must be 0 or 1, got {ideal_outcome}")
    return flip_outcome(ideal_outcome, params.flip_probability(ideal_outcome), rng.uniform())
