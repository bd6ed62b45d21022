"""Circuit execution: exact density-matrix evolution and shot sampling.

Two engines cross-validate each other:

* :func:`run_exact` evolves a density matrix and treats measurements as
  classical-quantum branch bookkeeping, returning the exact joint
  distribution over classical bits (readout confusion included).
* :func:`run_shots` samples independent statevector trajectories with
  genuine mid-circuit Born-rule collapse; delay decoherence is realized by
  per-shot stochastic Kraus selection (quantum-trajectory unraveling).

Determinism contract: every random draw in :func:`run_shots` is a pure
function of ``(seed, shot_index, draw_index)``.  Draw indices are
allocated statically per instruction (gate: one slot per operand wire,
delay: one, measure: three), so results are bit-identical across reruns,
chunk sizes and worker counts.

Outcome strings are rendered in classical-bit order, one character per
clbit ('0', '1', or '-' for a clbit the circuit never measures).
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .circuit import Circuit, DurationTable, Instruction
from .linalg import STATE_ATOL, DensityMatrix, apply_matrix, sandwich
from .noise import NoiseModel, delay_channel

_NORM_ATOL = 1e-9
_PRUNE_TRACE = 1e-30


@dataclass(frozen=True)
class ShotRecord:
    """Classical outcome of one trajectory, e.g. rendered "s=0, x=1, y=1"."""

    values: tuple[int, ...]
    labels: tuple[str, ...]

    def __str__(self) -> str:
        return ", ".join(f"{l}={v}" for l, v in zip(self.labels, self.values))

    def bitstring(self) -> str:
        return "".join("-" if v < 0 else str(v) for v in self.values)


@dataclass
class CountsTable:
    """Aggregated outcome frequencies; counts always sum to total_shots."""

    counts: dict[str, int]
    total_shots: int
    clbit_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.total_shots:
            raise ValueError("counts do not sum to total shots")

    def probability(self, outcome: str) -> float:
        return self.counts.get(outcome, 0) / self.total_shots

    def merged(self, other: CountsTable) -> CountsTable:
        if other.clbit_labels != self.clbit_labels:
            raise ValueError("cannot merge counts with different clbit labels")
        out = dict(self.counts)
        for k, v in other.counts.items():
            out[k] = out.get(k, 0) + v
        return CountsTable(out, self.total_shots + other.total_shots, self.clbit_labels)

    def to_json_dict(self) -> dict:
        return {
            "clbit_labels": list(self.clbit_labels),
            "total_shots": self.total_shots,
            "counts": {k: self.counts[k] for k in sorted(self.counts)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> CountsTable:
        return cls(
            {str(k): int(v) for k, v in data["counts"].items()},
            int(data["total_shots"]),
            tuple(data["clbit_labels"]),
        )


@dataclass
class ExactResult:
    """Exact joint clbit distribution plus the final (averaged) state."""

    probabilities: dict[str, float]
    density_matrix: DensityMatrix
    clbit_labels: tuple[str, ...]

    def probability(self, outcome: str) -> float:
        return self.probabilities.get(outcome, 0.0)


@dataclass
class ShotResult:
    counts: CountsTable
    records_array: np.ndarray | None = None
    clbit_labels: tuple[str, ...] = ()

    def records(self):
        if self.records_array is None:
            raise ValueError("run_shots was called without return_records=True")
        for row in self.records_array:
            yield ShotRecord(tuple(int(v) for v in row), self.clbit_labels)


def _render_key(values) -> str:
    return "".join("-" if v is None or v < 0 else str(int(v)) for v in values)


def _tally(all_bits: np.ndarray, circuit: Circuit) -> dict[str, int]:
    """Histogram outcome rows by packing bits into integer codes."""
    measured = sorted(circuit.measured_clbits())
    if not measured:
        return {"": all_bits.shape[0]}
    code = np.zeros(all_bits.shape[0], dtype=np.int64)
    for pos, c in enumerate(measured):
        code |= (all_bits[:, c].astype(np.int64) & 1) << pos
    hist = np.bincount(code, minlength=2 ** len(measured))
    counts: dict[str, int] = {}
    template = [-1] * circuit.num_clbits
    for value, n in enumerate(hist):
        if n == 0:
            continue
        row = list(template)
        for pos, c in enumerate(measured):
            row[c] = (value >> pos) & 1
        counts[_render_key(row)] = int(n)
    return counts


def _draw_slots(circuit: Circuit) -> list[int]:
    """Static draw-index base per instruction (independent of the noise model)."""
    slots = []
    cursor = 0
    for ins in circuit.instructions:
        slots.append(cursor)
        if ins.kind == "gate":
            cursor += len(ins.qubits)
        elif ins.kind == "delay":
            cursor += 1
        elif ins.kind == "measure":
            cursor += 3
    return slots


def _delay_ops(noise: NoiseModel, wire: int, seconds: float) -> list[np.ndarray]:
    params = noise.params_for(wire)
    if seconds <= 0 or (params.t1 == np.inf and params.t2 == np.inf):
        return []
    ops = delay_channel(params, seconds)
    return ops if len(ops) > 1 else []


def _noise_events(circuit: Circuit, noise: NoiseModel | None, durations: DurationTable):
    """Per-instruction decoherence work items: list of (wire, seconds)."""
    events: list[list[tuple[int, float]]] = []
    for ins in circuit.instructions:
        here: list[tuple[int, float]] = []
        if noise is not None:
            if ins.kind == "delay":
                here.append((ins.qubits[0], ins.duration * circuit.dt))
            elif not noise.apply_during_delays_only and ins.kind in ("gate", "measure"):
                seconds = durations.duration_of(ins) * circuit.dt
                here.extend((q, seconds) for q in ins.qubits)
        events.append(here)
    return events


# ---------------------------------------------------------------------------
# Exact engine
# ---------------------------------------------------------------------------


def run_exact(
    circuit: Circuit,
    noise_model: NoiseModel | None = None,
    *,
    durations: DurationTable | None = None,
    atol: float = STATE_ATOL,
) -> ExactResult:
    """Evolve the density matrix exactly, branching on measurements.

    Measurement collapse follows the ideal outcome; readout confusion is
    applied classically on top, so the returned distribution is over
    *reported* bits.  The final density matrix is the branch-weighted
    average (trace 1).
    """
    if noise_model is not None:
        noise_model.check_covers(circuit.num_qubits)
    durations = durations or DurationTable()
    n = circuit.num_qubits
    dim = 2**n
    events = _noise_events(circuit, noise_model, durations)

    rho0 = np.zeros((dim, dim), dtype=np.complex128)
    rho0[0, 0] = 1.0
    branches: dict[tuple, np.ndarray] = {(None,) * circuit.num_clbits: rho0}

    idx = np.arange(dim)
    for ins, here in zip(circuit.instructions, events):
        if ins.kind == "gate":
            u = ins.gate.matrix
            branches = {k: sandwich(r, u, ins.qubits, n) for k, r in branches.items()}
        elif ins.kind == "measure":
            q, c = ins.qubits[0], ins.clbit
            bit = ((idx >> q) & 1).astype(np.float64)
            masks = (1.0 - bit, bit)
            flips = (0.0, 0.0)
            if noise_model is not None:
                p = noise_model.params_for(q)
                flips = (p.flip_probability(0), p.flip_probability(1))
            new: dict[tuple, np.ndarray] = {}
            for key, r in branches.items():
                for ideal in (0, 1):
                    m = masks[ideal]
                    sub = r * np.outer(m, m)
                    if float(np.trace(sub).real) < _PRUNE_TRACE:
                        continue
                    outcomes = {ideal: 1.0 - flips[ideal], 1 - ideal: flips[ideal]}
                    for reported, weight in outcomes.items():
                        if weight <= 0.0:
                            continue
                        nk = key[:c] + (reported,) + key[c + 1 :]
                        if nk in new:
                            new[nk] = new[nk] + weight * sub
                        else:
                            new[nk] = weight * sub
            branches = new
        # barrier and delay leave the state untouched except for decoherence
        for wire, seconds in here:
            ops = _delay_ops(noise_model, wire, seconds)
            if ops:
                branches = {
                    k: sum(sandwich(r, op, (wire,), n) for op in ops)
                    for k, r in branches.items()
                }

    probabilities = {}
    total = 0.0
    rho_final = np.zeros((dim, dim), dtype=np.complex128)
    for key, r in sorted(branches.items(), key=lambda kv: _render_key(kv[0])):
        p = float(np.trace(r).real)
        rho_final += r
        total += p
        probabilities[_render_key(key)] = p
    if abs(total - 1.0) > max(atol, 1e-10):
        raise RuntimeError(f"exact engine lost probability: total = {total!r}")
    return ExactResult(probabilities, DensityMatrix(n, rho_final), circuit.clbit_labels)


# ---------------------------------------------------------------------------
# Trajectory engine
# ---------------------------------------------------------------------------


def _kraus_select(
    amps: np.ndarray, ops: list[np.ndarray], wire: int, n: int, u: np.ndarray
) -> np.ndarray:
    """Per-shot stochastic Kraus selection on one wire (trajectory unraveling)."""
    cands = [apply_matrix(amps, k, (wire,), n) for k in ops]
    probs = np.stack([np.sum(np.abs(c) ** 2, axis=1) for c in cands], axis=1)
    cum = np.cumsum(probs, axis=1)
    cum[:, -1] = 1.0  # guard rounding at the top end
    sel = np.sum(u[:, None] >= cum, axis=1)
    sel = np.minimum(sel, len(ops) - 1)
    stacked = np.stack(cands, axis=0)
    picked = stacked[sel, np.arange(amps.shape[0])]
    norm = np.sqrt(probs[np.arange(amps.shape[0]), sel])
    return picked / norm[:, None]


def _run_chunk(
    circuit: Circuit,
    noise: NoiseModel | None,
    durations: DurationTable,
    seed: int,
    lo: int,
    hi: int,
    slots: list[int],
    events,
    check_norms: bool,
) -> np.ndarray:
    n = circuit.num_qubits
    dim = 2**n
    m = hi - lo
    amps = np.zeros((m, dim), dtype=np.complex128)
    amps[:, 0] = 1.0
    shots = np.arange(lo, hi, dtype=np.uint64)
    clbits = np.full((m, circuit.num_clbits), -1, dtype=np.int8)
    idx = np.arange(dim)

    for ins, slot, here in zip(circuit.instructions, slots, events):
        if ins.kind == "gate":
            amps = apply_matrix(amps, ins.gate.matrix, ins.qubits, n)
            if check_norms:
                dev = np.abs(np.sum(np.abs(amps) ** 2, axis=1) - 1.0).max()
                if dev > _NORM_ATOL:
                    raise RuntimeError(f"norm drift {dev:.3e} after gate {ins.gate.name}")
        elif ins.kind == "measure":
            q, c = ins.qubits[0], ins.clbit
            bit = (((idx >> q) & 1) == 1)
            p1 = np.sum(np.abs(amps[:, bit]) ** 2, axis=1)
            u = rng.uniforms(seed, shots, slot)
            outcome = (u < p1).astype(np.int8)
            keep = bit[None, :] == (outcome[:, None] == 1)
            np.multiply(amps, keep, out=amps)
            p_sel = np.where(outcome == 1, p1, 1.0 - p1)
            amps /= np.sqrt(p_sel)[:, None]
            reported = outcome
            if noise is not None:
                params = noise.params_for(q)
                if params.readout_flip != (0.0, 0.0):
                    u2 = rng.uniforms(seed, shots, slot + 1)
                    fp = np.where(outcome == 0, params.readout_flip[0], params.readout_flip[1])
                    reported = outcome ^ (u2 < fp).astype(np.int8)
            clbits[:, c] = reported
        for j, (wire, seconds) in enumerate(here):
            ops = _delay_ops(noise, wire, seconds)
            if ops:
                draw = slot + (j if ins.kind != "measure" else 2)
                u = rng.uniforms(seed, shots, draw)
                amps = _kraus_select(amps, ops, wire, n, u)
    return clbits


def run_shots(
    circuit: Circuit,
    noise_model: NoiseModel | None = None,
    num_shots: int = 1024,
    seed: int = 0,
    *,
    num_workers: int = 1,
    chunk_size: int = 65536,
    return_records: bool = False,
    durations: DurationTable | None = None,
    check_norms: bool = True,
) -> ShotResult:
    """Sample ``num_shots`` independent trajectories.

    Reproducible given ``(circuit, noise_model, seed, num_shots)``; the
    worker count and chunk size never change the result because shot ``i``
    always consumes the stream keyed by ``(seed, i, draw)``.
    """
    if num_shots < 1:
        raise ValueError("num_shots must be >= 1")
    if noise_model is not None:
        noise_model.check_covers(circuit.num_qubits)
    durations = durations or DurationTable()
    slots = _draw_slots(circuit)
    events = _noise_events(circuit, noise_model, durations)
    ranges = [
        (lo, min(lo + chunk_size, num_shots)) for lo in range(0, num_shots, chunk_size)
    ]

    def work(span):
        lo, hi = span
        return lo, _run_chunk(
            circuit, noise_model, durations, seed, lo, hi, slots, events, check_norms
        )

    all_bits = np.empty((num_shots, circuit.num_clbits), dtype=np.int8)
    if num_workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=num_workers) as pool:
            for lo, bits in pool.map(work, ranges):
                all_bits[lo : lo + bits.shape[0]] = bits
    else:
        for span in ranges:
            lo, bits = work(span)
            all_bits[lo : lo + bits.shape[0]] = bits

    counts = _tally(all_bits, circuit)
    table = CountsTable(counts, num_shots, circuit.clbit_labels)
    return ShotResult(
        table,
        all_bits if return_records else None,
        circuit.clbit_labels,
    )


# ---------------------------------------------------------------------------
# Deferred measurement
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeferredCheck:
    equivalent: bool
    tv_distance: float


def defer_measurements(circuit: Circuit) -> Circuit:
    """Commute all measurements to the end of the circuit.

    A measurement whose wire is untouched afterwards simply moves to the
    end.  One whose wire is reused is replaced by a CNOT onto a fresh
    ancilla which is measured at the end: the classical-quantum state this
    produces is identical, so the joint outcome distribution is preserved
    through any later gates or channels.
    """
    from .gates import cnot_gate

    for ins in circuit.instructions:
        if ins.condition is not None:
            raise ValueError("cannot defer measurements past classically conditioned gates")

    plans: dict[int, str] = {}
    n_anc = 0
    instructions = circuit.instructions
    for i, ins in enumerate(instructions):
        if ins.kind != "measure":
            continue
        wire = ins.qubits[0]
        touched = any(
            wire in later.qubits and later.kind in ("gate", "measure")
            for later in instructions[i + 1 :]
        )
        plans[i] = "ancilla" if touched else "move"
        n_anc += touched

    out = Circuit(
        circuit.num_qubits + n_anc,
        circuit.num_clbits,
        tuple(circuit.wire_labels) + tuple(f"anc{i}" for i in range(n_anc)),
        circuit.clbit_labels,
        circuit.dt,
    )
    cx = cnot_gate()
    tail: list[Instruction] = []
    next_anc = circuit.num_qubits
    for i, ins in enumerate(instructions):
        if ins.kind != "measure":
            out.append(ins)
            continue
        if plans[i] == "move":
            tail.append(ins)
        else:
            out.gate(cx, ins.qubits[0], next_anc)
            tail.append(Instruction("measure", (next_anc,), clbit=ins.clbit))
            next_anc += 1
    for ins in tail:
        out.append(ins)
    return out


def total_variation(p: dict[str, float], q: dict[str, float]) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def deferred_measurement_check(
    circuit: Circuit,
    noise_model: NoiseModel | None = None,
    *,
    atol: float = 1e-12,
) -> DeferredCheck:
    """Compare the circuit as-is against its end-measured variant.

    Returns the total-variation distance between the two exact joint clbit
    distributions; it must vanish by the deferred measurement principle.
    """
    as_is = run_exact(circuit, noise_model)
    deferred = run_exact(defer_measurements(circuit), noise_model)
    tv = total_variation(as_is.probabilities, deferred.probabilities)
    return DeferredCheck(tv < atol, tv)
