"""Circuit intermediate representation: timed operations over quantum wires.

A circuit is an ordered list of instructions (gates, delays, mid-circuit
measurements, barriers) over ``num_qubits`` wires and ``num_clbits``
classical bits.  Per-wire execution order is the list order.  Delays carry
a duration in ``dt`` units; all other durations come from a configurable
:class:`DurationTable` at scheduling time.

Circuits are mutable during construction (``append`` and the fluent
helpers) and should be treated as frozen afterwards; scheduling and
serialization are pure functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .gates import GateSpec, gate_from_name

# Cycle time in seconds per dt.  0.2222 ns reconciles the quoted ~0.22 ns
# cycle with 5000 dt ~ 1.11 us and 40000 dt ~ 8.89 us.
DEFAULT_DT = 0.2222e-9

KINDS = ("gate", "delay", "measure", "barrier")

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Instruction:
    """One timed operation.

    ``gate`` is set for kind "gate"; ``duration`` (in dt, >= 0) only for
    kind "delay"; ``clbit`` only for kind "measure".  ``condition`` is
    reserved for classical feed-forward and must stay ``None`` here: the
    random choice in the eraser circuits is made quantumly.
    """

    kind: str
    qubits: tuple[int, ...]
    gate: GateSpec | None = None
    clbit: int | None = None
    duration: int | None = None
    condition: object | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown instruction kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind == "gate":
            if self.gate is None:
                raise ValueError("gate instruction needs a GateSpec")
            if self.duration is not None:
                raise ValueError("gate instructions carry no duration")
            if len(self.qubits) != self.gate.arity:
                raise ValueError(
                    f"gate {self.gate.name} acts on {self.gate.arity} qubits, got {self.qubits}"
                )
        elif self.kind == "delay":
            if self.duration is None or self.duration < 0:
                raise ValueError("delay needs a duration >= 0 (in dt)")
            if len(self.qubits) != 1:
                raise ValueError("delay acts on exactly one wire")
            object.__setattr__(self, "duration", int(self.duration))
        elif self.kind == "measure":
            if self.clbit is None or len(self.qubits) != 1:
                raise ValueError("measure needs exactly one qubit and one clbit")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate wires in instruction: {self.qubits}")

    @property
    def name(self) -> str:
        return self.gate.name if self.kind == "gate" else self.kind


@dataclass
class Circuit:
    """Ordered, timed operations over quantum wires and classical bits."""

    num_qubits: int
    num_clbits: int = 0
    wire_labels: tuple[str, ...] | None = None
    clbit_labels: tuple[str, ...] | None = None
    dt: float = DEFAULT_DT
    instructions: list[Instruction] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be >= 1")
        if self.num_clbits < 0:
            raise ValueError("num_clbits must be >= 0")
        if self.dt <= 0:
            raise ValueError("dt must be > 0")
        if self.wire_labels is None:
            self.wire_labels = tuple(f"q{i}" for i in range(self.num_qubits))
        else:
            self.wire_labels = tuple(self.wire_labels)
        if len(self.wire_labels) != self.num_qubits:
            raise ValueError("wire_labels length must equal num_qubits")
        if self.clbit_labels is None:
            self.clbit_labels = tuple(f"c{i}" for i in range(self.num_clbits))
        else:
            self.clbit_labels = tuple(self.clbit_labels)
        if len(self.clbit_labels) != self.num_clbits:
            raise ValueError("clbit_labels length must equal num_clbits")
        for ins in self.instructions:
            self._validate(ins)

    def _validate(self, ins: Instruction) -> None:
        for q in ins.qubits:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"wire {q} out of range for {self.num_qubits}-qubit circuit")
        if ins.kind == "measure" and not 0 <= ins.clbit < self.num_clbits:
            raise ValueError(f"clbit {ins.clbit} out of range for {self.num_clbits} clbits")
        if ins.condition is not None:
            raise ValueError("classically conditioned instructions are not supported")

    def append(self, instruction: Instruction) -> Circuit:
        self._validate(instruction)
        self.instructions.append(instruction)
        return self

    # Fluent construction helpers.
    def gate(self, spec: GateSpec, *qubits: int) -> Circuit:
        return self.append(Instruction("gate", tuple(qubits), gate=spec))

    def delay(self, duration: int, qubit: int) -> Circuit:
        return self.append(Instruction("delay", (qubit,), duration=duration))

    def measure(self, qubit: int, clbit: int) -> Circuit:
        return self.append(Instruction("measure", (qubit,), clbit=clbit))

    def barrier(self, *qubits: int) -> Circuit:
        wires = tuple(qubits) if qubits else tuple(range(self.num_qubits))
        return self.append(Instruction("barrier", wires))

    def copy_empty(self) -> Circuit:
        return Circuit(
            self.num_qubits, self.num_clbits, self.wire_labels, self.clbit_labels, self.dt
        )

    def measured_clbits(self) -> set[int]:
        return {ins.clbit for ins in self.instructions if ins.kind == "measure"}

    def to_json_dict(self) -> dict:
        out = {
            "format_version": FORMAT_VERSION,
            "num_qubits": self.num_qubits,
            "num_clbits": self.num_clbits,
            "dt": self.dt,
            "wire_labels": list(self.wire_labels),
            "clbit_labels": list(self.clbit_labels),
            "instructions": [
                {
                    "kind": ins.kind,
                    "name": ins.gate.name if ins.kind == "gate" else None,
                    "params": list(ins.gate.params) if ins.kind == "gate" else None,
                    "qubits": list(ins.qubits),
                    "clbit": ins.clbit,
                    "duration": ins.duration,
                }
                for ins in self.instructions
            ],
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> Circuit:
        version = data.get("format_version")
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported circuit format_version {version!r}")
        circ = cls(
            num_qubits=int(data["num_qubits"]),
            num_clbits=int(data.get("num_clbits", 0)),
            wire_labels=data.get("wire_labels"),
            clbit_labels=data.get("clbit_labels"),
            dt=float(data.get("dt", DEFAULT_DT)),
        )
        for rec in data.get("instructions", []):
            kind = rec["kind"]
            if kind == "gate":
                spec = gate_from_name(rec["name"], rec.get("params") or ())
                circ.gate(spec, *rec["qubits"])
            elif kind == "delay":
                circ.delay(int(rec["duration"]), rec["qubits"][0])
            elif kind == "measure":
                circ.measure(rec["qubits"][0], int(rec["clbit"]))
            elif kind == "barrier":
                circ.barrier(*rec["qubits"])
            else:
                raise ValueError(f"unknown instruction kind {kind!r}")
        return circ

    @classmethod
    def from_json(cls, text: str) -> Circuit:
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class DurationTable:
    """Gate durations in dt.  The paper publishes schedules, not numbers;
    these defaults are realistic magnitudes and fully configurable."""

    one_qubit: int = 57
    two_qubit: int = 440
    measure: int = 1400
    zero_duration_names: frozenset[str] = frozenset({"rz"})
    overrides: dict[str, int] = field(default_factory=dict)

    def duration_of(self, ins: Instruction) -> int:
        if ins.kind == "delay":
            return ins.duration
        if ins.kind == "barrier":
            return 0
        if ins.kind == "measure":
            return self.measure
        name = ins.gate.name
        if name in self.overrides:
            return self.overrides[name]
        if name in self.zero_duration_names:
            return 0
        return self.one_qubit if ins.gate.arity == 1 else self.two_qubit


@dataclass(frozen=True)
class ScheduleEntry:
    start: int
    duration: int
    qubits: tuple[int, ...]
    kind: str
    name: str
    index: int | None  # instruction index in the source circuit; None for padding
    padding: bool = False

    @property
    def end(self) -> int:
        return self.start + self.duration


@dataclass
class Schedule:
    """ASAP schedule: per-instruction start times plus synchronization padding."""

    circuit: Circuit
    entries: list[ScheduleEntry]

    @property
    def total_duration(self) -> int:
        return max((e.end for e in self.entries), default=0)

    def start_times(self) -> list[int]:
        """Start time per source instruction, in instruction order."""
        starts = [0] * len(self.circuit.instructions)
        for e in self.entries:
            if e.index is not None:
                starts[e.index] = e.start
        return starts

    def stripped_circuit(self) -> Circuit:
        """The schedule with all padding removed: the source circuit itself."""
        out = self.circuit.copy_empty()
        for e in self.entries:
            if not e.padding:
                out.append(self.circuit.instructions[e.index])
        return out

    def padded_circuit(self) -> Circuit:
        """Materialize padding as explicit delay instructions.

        Useful to expose idle windows to a duration-based noise model: once
        materialized, the padding delays are ordinary delays and decoherence
        channels apply to them.
        """
        out = self.circuit.copy_empty()
        for e in self.entries:
            if e.padding:
                out.delay(e.duration, e.qubits[0])
            else:
                out.append(self.circuit.instructions[e.index])
        return out

    def format_table(self) -> str:
        """Human-readable listing: start/duration in dt per instruction per wire."""
        lines = [f"{'start':>8} {'dur':>8}  {'wires':<12} op"]
        for e in sorted(self.entries, key=lambda e: (e.start, e.index if e.index is not None else -1)):
            wires = ",".join(self.circuit.wire_labels[q] for q in e.qubits)
            tag = f"{e.name}{' (pad)' if e.padding else ''}"
            lines.append(f"{e.start:>8} {e.duration:>8}  {wires:<12} {tag}")
        lines.append(f"total duration: {self.total_duration} dt")
        return "\n".join(lines)


def schedule(circuit: Circuit, durations: DurationTable | None = None) -> Schedule:
    """ASAP-schedule a circuit, inserting padding delays for synchronization.

    Multi-wire instructions start simultaneously on all operand wires; a
    wire that is ready early receives an explicit padding delay covering
    the gap (the dashed delay boxes of a hardware schedule).
    """
    durations = durations or DurationTable()
    wire_time = [0] * circuit.num_qubits
    entries: list[ScheduleEntry] = []
    for idx, ins in enumerate(circuit.instructions):
        wires = ins.qubits if ins.qubits else tuple(range(circuit.num_qubits))
        start = max(wire_time[w] for w in wires)
        for w in wires:
            gap = start - wire_time[w]
            if gap > 0:
                entries.append(
                    ScheduleEntry(wire_time[w], gap, (w,), "delay", "delay", None, padding=True)
                )
        dur = durations.duration_of(ins)
        entries.append(ScheduleEntry(start, dur, wires, ins.kind, ins.name, idx))
        for w in wires:
            wire_time[w] = start + dur
    return Schedule(circuit, entries)


def total_duration(sched: Schedule) -> int:
    """Max over wires of the last end time, in dt."""
    return sched.total_duration
