"""Lowering to the hardware-primitive basis {rz, sx, x, ecr} and routing.

Pipeline: :func:`route` first maps logical wires onto a coupling graph,
inserting SWAPs (emitted as three CNOTs) along shortest paths for
non-adjacent two-qubit gates; :func:`decompose_to_basis` then rewrites
every gate into the primitive set.  Single-qubit gates become
Rz-SX-Rz-SX-Rz sequences (exactly two SX, fewer when the middle Euler
angle vanishes); CNOT becomes one ECR with single-qubit pre/post
rotations; controlled-Ry opens into {Ry(phi/2), CX, Ry(-phi/2), CX}.
All rewrites preserve the unitary up to global phase, which
:func:`verify_equivalence` checks directly with the exact engine.
"""

from __future__ import annotations

import cmath
import json
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, DurationTable, Schedule, schedule
from .engine import run_exact, total_variation
from .gates import (
    GateSpec,
    cnot_from_ecr,
    cnot_gate,
    ecr_gate,
    gate_from_name,
    h_gate,
    ry_gate,
    rz_gate,
    sx_gate,
    x_gate,
)
from .linalg import apply_matrix

BASIS_GATES = frozenset({"rz", "sx", "x", "ecr"})
_ANGLE_EPS = 1e-12


@dataclass(frozen=True)
class CouplingGraph:
    """Undirected connectivity; optional native ECR directions per edge."""

    num_qubits: int
    edges: frozenset[frozenset[int]]
    directions: frozenset[tuple[int, int]] | None = None

    @classmethod
    def from_edges(cls, num_qubits: int, pairs, directions=None) -> CouplingGraph:
        edges = set()
        for a, b in pairs:
            a, b = int(a), int(b)
            if not (0 <= a < num_qubits and 0 <= b < num_qubits) or a == b:
                raise ValueError(f"invalid edge ({a}, {b}) for {num_qubits} qubits")
            edges.add(frozenset((a, b)))
        dirs = frozenset((int(a), int(b)) for a, b in directions) if directions else None
        return cls(num_qubits, frozenset(edges), dirs)

    @classmethod
    def all_to_all(cls, num_qubits: int) -> CouplingGraph:
        pairs = [(a, b) for a in range(num_qubits) for b in range(a + 1, num_qubits)]
        return cls.from_edges(num_qubits, pairs)

    @classmethod
    def from_json_dict(cls, data: dict) -> CouplingGraph:
        return cls.from_edges(int(data["num_qubits"]), data["edges"], data.get("directions"))

    def to_json_dict(self) -> dict:
        return {
            "num_qubits": self.num_qubits,
            "edges": sorted(sorted(e) for e in self.edges),
        }

    def adjacent(self, a: int, b: int) -> bool:
        return frozenset((a, b)) in self.edges

    def neighbors(self, q: int) -> list[int]:
        return sorted(b for e in self.edges for b in e if q in e and b != q)

    def shortest_path(self, a: int, b: int) -> list[int]:
        """Deterministic BFS path (sorted neighbor order breaks ties)."""
        if a == b:
            return [a]
        parent = {a: None}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            for v in self.neighbors(u):
                if v not in parent:
                    parent[v] = u
                    if v == b:
                        path = [b]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    queue.append(v)
        raise ValueError(f"qubits {a} and {b} are not connected in the coupling graph")


def paper_ibm_patch() -> CouplingGraph:
    """The 4-qubit star used by the two-option hardware layout.

    Physical indices 0..3 stand for the device qubits (40, 41, 42, 53);
    qubit 1 (device 41) is the hub.  With wires (s, x, y, a) placed at
    (1, 2, 3, 0), the recorder-merge CNOT needs exactly one SWAP.
    """
    return CouplingGraph.from_edges(4, [(0, 1), (1, 2), (1, 3)])


# ---------------------------------------------------------------------------
# Basis decomposition
# ---------------------------------------------------------------------------


def zyz_angles(u: np.ndarray) -> tuple[float, float, float, float]:
    """ZYZ Euler angles: u = e^{i alpha} Rz(phi) Ry(theta) Rz(lam)."""
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    alpha = 0.5 * cmath.phase(det)
    su = u * cmath.exp(-1j * alpha)  # special unitary
    theta = 2.0 * math.atan2(abs(su[1, 0]), abs(su[0, 0]))
    if abs(su[1, 0]) < _ANGLE_EPS:  # diagonal: only phi + lam is defined
        phi, lam = 0.0, 2.0 * cmath.phase(su[1, 1])
    elif abs(su[0, 0]) < _ANGLE_EPS:  # anti-diagonal: only phi - lam is defined
        phi, lam = 2.0 * cmath.phase(su[1, 0]), 0.0
    else:
        plus = 2.0 * cmath.phase(su[1, 1])
        minus = 2.0 * cmath.phase(su[1, 0])
        phi, lam = (plus + minus) / 2.0, (plus - minus) / 2.0
    return alpha, phi, theta, lam


def _one_qubit_sequence(u: np.ndarray) -> list[GateSpec]:
    """ZXZXZ lowering of a 1-qubit unitary (global phase dropped).

    Uses u ~ Rz(phi + pi) SX Rz(theta + pi) SX Rz(lam) from the ZYZ angles.
    When theta vanishes the whole gate is a single Rz (or nothing).
    """
    _, phi, theta, lam = zyz_angles(u)
    if abs(theta) < _ANGLE_EPS:
        angle = _wrap(phi + lam)
        return [] if abs(angle) < _ANGLE_EPS else [rz_gate(angle)]
    seq = [rz_gate(_wrap(lam)), sx_gate(), rz_gate(_wrap(theta + math.pi)), sx_gate(), rz_gate(_wrap(phi + math.pi))]
    return [g for g in seq if not (g.name == "rz" and abs(g.params[0]) < _ANGLE_EPS)]


def _wrap(angle: float) -> float:
    """Wrap to (-pi, pi] for tidy Rz parameters."""
    a = math.fmod(angle + math.pi, 2.0 * math.pi)
    if a <= 0:
        a += 2.0 * math.pi
    return a - math.pi


def _lower_cx(control: int, target: int) -> list[tuple[GateSpec, tuple[int, ...]]]:
    pre, post, _phase = cnot_from_ecr()
    wires = (control, target)
    out: list[tuple[GateSpec, tuple[int, ...]]] = []
    out.extend((g, (wires[w],)) for g, w in pre)
    out.append((ecr_gate(), wires))
    out.extend((g, (wires[w],)) for g, w in post)
    return out


def decompose_to_basis(circuit: Circuit, coupling: CouplingGraph | None = None) -> Circuit:
    """Rewrite every gate into {rz, sx, x, ecr}; other instruction kinds pass.

    With a direction-carrying ``coupling``, CNOTs against the native ECR
    direction are flipped by Hadamard conjugation before lowering.
    """
    out = circuit.copy_empty()
    h = h_gate()

    def emit_1q(u: np.ndarray, wire: int) -> None:
        for g in _one_qubit_sequence(u):
            out.gate(g, wire)

    def emit_cx(c: int, t: int) -> None:
        if (
            coupling is not None
            and coupling.directions is not None
            and (c, t) not in coupling.directions
            and (t, c) in coupling.directions
        ):
            for w in (c, t):
                emit_1q(h.matrix, w)
            emit_cx_native(t, c)
            for w in (c, t):
                emit_1q(h.matrix, w)
        else:
            emit_cx_native(c, t)

    def emit_cx_native(c: int, t: int) -> None:
        for g, wires in _lower_cx(c, t):
            if g.arity == 1:
                emit_1q(g.matrix, wires[0])
            else:
                out.gate(g, *wires)

    for ins in circuit.instructions:
        if ins.kind != "gate":
            out.append(ins)
            continue
        g = ins.gate
        if g.name in ("x", "rz", "sx", "ecr"):
            out.gate(g, *ins.qubits)
        elif g.arity == 1:
            emit_1q(g.matrix, ins.qubits[0])
        elif g.name == "cx":
            emit_cx(*ins.qubits)
        elif g.name == "swap":
            a, b = ins.qubits
            emit_cx(a, b)
            emit_cx(b, a)
            emit_cx(a, b)
        elif g.name == "cry":
            (phi,) = g.params
            c, t = ins.qubits
            emit_1q(ry_gate(phi / 2).matrix, t)
            emit_cx(c, t)
            emit_1q(ry_gate(-phi / 2).matrix, t)
            emit_cx(c, t)
        else:
            raise ValueError(f"no decomposition rule for gate {g.name!r}")
    return out


# ---------------------------------------------------------------------------
# Routing
# ---------------------------------------------------------------------------


@dataclass
class TranspiledCircuit:
    """Physical-wire circuit plus the (time-varying) logical-to-physical map."""

    circuit: Circuit
    initial_layout: dict[int, int]
    final_layout: dict[int, int]
    prefix_layout: dict[int, int]  # layout when the first measure executes
    swap_count: int
    schedule: Schedule | None = None


def _normalize_layout(initial_layout, num_logical: int, num_physical: int) -> dict[int, int]:
    if initial_layout is None:
        layout = {w: w for w in range(num_logical)}
    elif isinstance(initial_layout, dict):
        layout = {int(k): int(v) for k, v in initial_layout.items()}
    else:
        layout = {w: int(p) for w, p in enumerate(initial_layout)}
    if sorted(layout) != list(range(num_logical)):
        raise ValueError(f"layout must cover logical wires 0..{num_logical - 1}")
    phys = list(layout.values())
    if len(set(phys)) != len(phys):
        raise ValueError(f"layout is not injective: {layout}")
    for p in phys:
        if not 0 <= p < num_physical:
            raise ValueError(f"physical qubit {p} out of range")
    return layout


def route(
    circuit: Circuit,
    coupling: CouplingGraph,
    initial_layout=None,
    *,
    durations: DurationTable | None = None,
) -> TranspiledCircuit:
    """Map wires onto the coupling graph, inserting SWAPs as CNOT triples.

    Greedy: each non-adjacent 2-qubit gate walks its operands together
    along the deterministic BFS shortest path, updating the layout after
    every inserted SWAP.  Adequate at the 5-qubit scale of these circuits;
    no optimality is attempted.
    """
    if circuit.num_qubits > coupling.num_qubits:
        raise ValueError("circuit needs more wires than the coupling graph has")
    layout = _normalize_layout(initial_layout, circuit.num_qubits, coupling.num_qubits)
    out = Circuit(
        num_qubits=coupling.num_qubits,
        num_clbits=circuit.num_clbits,
        wire_labels=tuple(f"q{i}" for i in range(coupling.num_qubits)),
        clbit_labels=circuit.clbit_labels,
        dt=circuit.dt,
    )
    initial = dict(layout)
    prefix: dict[int, int] | None = None
    cx = cnot_gate()
    swaps = 0

    def emit_swap(pa: int, pb: int) -> None:
        nonlocal swaps
        out.gate(cx, pa, pb)
        out.gate(cx, pb, pa)
        out.gate(cx, pa, pb)
        swaps += 1
        inv = {p: w for w, p in layout.items()}
        wa, wb = inv.get(pa), inv.get(pb)
        if wa is not None:
            layout[wa] = pb
        if wb is not None:
            layout[wb] = pa

    for ins in circuit.instructions:
        if ins.kind == "gate" and len(ins.qubits) == 2:
            a, b = ins.qubits
            while not coupling.adjacent(layout[a], layout[b]):
                path = coupling.shortest_path(layout[a], layout[b])
                emit_swap(path[0], path[1])
            out.gate(ins.gate, layout[a], layout[b])
        elif ins.kind == "gate":
            out.gate(ins.gate, layout[ins.qubits[0]])
        elif ins.kind == "delay":
            out.delay(ins.duration, layout[ins.qubits[0]])
        elif ins.kind == "measure":
            if prefix is None:
                prefix = dict(layout)
            out.measure(layout[ins.qubits[0]], ins.clbit)
        elif ins.kind == "barrier":
            out.barrier(*(layout[q] for q in ins.qubits))
    sched = schedule(out, durations) if durations is not None else None
    return TranspiledCircuit(out, initial, dict(layout), prefix or dict(layout), swaps, sched)


def transpile(
    circuit: Circuit,
    coupling: CouplingGraph,
    initial_layout=None,
    durations: DurationTable | None = None,
) -> TranspiledCircuit:
    """route + decompose_to_basis + schedule, the full lowering pipeline."""
    routed = route(circuit, coupling, initial_layout)
    lowered = decompose_to_basis(routed.circuit, coupling)
    return TranspiledCircuit(
        lowered,
        routed.initial_layout,
        routed.final_layout,
        routed.prefix_layout,
        routed.swap_count,
        schedule(lowered, durations or DurationTable()),
    )


# ---------------------------------------------------------------------------
# Equivalence checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceReport:
    unitary_distance: float
    tv_distance: float


def circuit_unitary(circuit: Circuit, upto: int | None = None) -> np.ndarray:
    """Dense unitary of the measurement-free prefix (delays/barriers = identity)."""
    n = circuit.num_qubits
    if n > 10:
        raise ValueError("circuit_unitary supports at most 10 qubits")
    dim = 2**n
    u = np.eye(dim, dtype=np.complex128)
    instructions = circuit.instructions if upto is None else circuit.instructions[:upto]
    for ins in instructions:
        if ins.kind == "measure":
            raise ValueError("circuit_unitary needs a measurement-free (prefix of a) circuit")
        if ins.kind == "gate":
            u = apply_matrix(u.T, ins.gate.matrix, ins.qubits, n).T
    return u


def _embedding(layout: dict[int, int], num_logical: int, num_physical: int) -> np.ndarray:
    """Isometry placing wire w at physical layout[w], |0> on unused qubits."""
    dim_l, dim_p = 2**num_logical, 2**num_physical
    e = np.zeros((dim_p, dim_l))
    for col in range(dim_l):
        row = 0
        for w in range(num_logical):
            row |= ((col >> w) & 1) << layout[w]
        e[row, col] = 1.0
    return e


def _phase_aligned_distance(m1: np.ndarray, m2: np.ndarray) -> float:
    """max-norm distance up to global phase."""
    tr = np.trace(m2.conj().T @ m1)
    phase = tr / abs(tr) if abs(tr) > 1e-12 else 1.0
    return float(np.max(np.abs(m1 - phase * m2)))


def _measure_free_prefix_len(circuit: Circuit) -> int:
    for i, ins in enumerate(circuit.instructions):
        if ins.kind == "measure":
            return i
    return len(circuit.instructions)


def _measure_all(circuit: Circuit) -> Circuit:
    out = Circuit(
        circuit.num_qubits,
        circuit.num_qubits,
        circuit.wire_labels,
        tuple(circuit.wire_labels),
        circuit.dt,
        list(circuit.instructions),
    )
    for q in range(circuit.num_qubits):
        out.measure(q, q)
    return out


def _measure_all_physical(t: TranspiledCircuit, num_logical: int) -> Circuit:
    c = t.circuit
    out = Circuit(
        c.num_qubits,
        num_logical,
        c.wire_labels,
        tuple(f"w{i}" for i in range(num_logical)),
        c.dt,
        list(c.instructions),
    )
    for w in range(num_logical):
        out.measure(t.final_layout[w], w)
    return out


def verify_equivalence(original: Circuit, lowered: Circuit | TranspiledCircuit) -> EquivalenceReport:
    """Check a lowered/routed circuit against its source.

    Measurement-free prefixes are compared as unitaries up to global phase
    (max-norm, with the layout embeddings applied on the routed side);
    full circuits are compared through the exact engine's joint clbit
    distribution (total variation).  Limited to 10 qubits.
    """
    if isinstance(lowered, TranspiledCircuit):
        t = lowered
    else:
        ident = {w: w for w in range(original.num_qubits)}
        t = TranspiledCircuit(lowered, ident, ident, ident, 0)
    if max(original.num_qubits, t.circuit.num_qubits) > 10:
        raise ValueError("verify_equivalence supports at most 10 qubits")

    u_orig = circuit_unitary(original, _measure_free_prefix_len(original))
    u_low = circuit_unitary(t.circuit, _measure_free_prefix_len(t.circuit))
    e_in = _embedding(t.initial_layout, original.num_qubits, t.circuit.num_qubits)
    e_out = _embedding(t.prefix_layout, original.num_qubits, t.circuit.num_qubits)
    unitary_distance = _phase_aligned_distance(u_low @ e_in, e_out @ u_orig)

    if original.measured_clbits():
        left, right = original, t.circuit
    else:
        left, right = _measure_all(original), _measure_all_physical(t, original.num_qubits)
    tv = total_variation(run_exact(left).probabilities, run_exact(right).probabilities)
    return EquivalenceReport(unitary_distance, tv)


def coupling_from_json(text: str) -> CouplingGraph:
    return CouplingGraph.from_json_dict(json.loads(text))
