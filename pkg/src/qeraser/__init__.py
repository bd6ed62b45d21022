"""Desk-scale simulation of Scully-Druhl-type delayed-choice quantum erasers.

The package covers the full pipeline: dense state containers and channels
(:mod:`qeraser.linalg`, :mod:`qeraser.noise`), the gate set and circuit IR
(:mod:`qeraser.gates`, :mod:`qeraser.circuit`), exact and trajectory
execution engines (:mod:`qeraser.engine`), the eraser circuit builders
with their closed-form oracle (:mod:`qeraser.experiments`), statistics
and report assembly (:mod:`qeraser.analysis`), lowering to the
{rz, sx, x, ecr} hardware basis with routing (:mod:`qeraser.transpile`),
and a CLI reproducing the experiment protocol (:mod:`qeraser.cli`).
"""

from .circuit import Circuit, DurationTable, Instruction, Schedule, schedule, total_duration
from .engine import (
    CountsTable,
    ExactResult,
    ShotRecord,
    deferred_measurement_check,
    run_exact,
    run_shots,
)
from .experiments import (
    AnalyticPrediction,
    EraserConfig,
    analytic_prediction,
    build,
    build_four_option_eraser,
    build_random_choice_eraser,
    build_simple_eraser,
    build_two_recorder_eraser,
)
from .gates import (
    GateSpec,
    cnot_gate,
    controlled,
    decompose_swap,
    ecr_gate,
    h_gate,
    phase_gate,
    ry_gate,
    rz_gate,
    swap_gate,
    sx_gate,
    x_gate,
)
from .linalg import (
    DensityMatrix,
    StateVector,
    apply_kraus,
    apply_unitary,
    measure_probability,
    partial_trace,
)
from .noise import NoiseModel, QubitNoiseParams, delay_channel, readout_channel
from .transpile import (
    CouplingGraph,
    TranspiledCircuit,
    decompose_to_basis,
    route,
    transpile,
    verify_equivalence,
)

__version__ = "0.1.0"
