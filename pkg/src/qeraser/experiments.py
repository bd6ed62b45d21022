"""Builders for the delayed-choice eraser circuits and their analytic oracle.

Wire roles: ``s`` is the interfering signal qubit, ``x``/``y`` the two
spatially separated which-way recorders, ``a`` (or ``a1``/``a2``) the
random-choice ancillas.  State preparation marks the signal paths on the
recorders (path |0> flips x, path |1> flips y), an adjustable phase theta
sits on the signal, and the erasure strength is the recorder rotation
angle phi.  The open-circle (anti-)control is realized as an X-conjugated
control.

Layouts:

* ``abstract``   - the idealized wiring; all measurements at the end.
* ``ionq_mapped``- all-to-all wiring, no SWAPs, strictly simultaneous
  end-of-circuit measurement.
* ``ibm_mapped`` - the hardware-shaped variant: the signal is measured
  mid-circuit, an explicit delay of ``t_delay`` dt follows on every wire,
  and a SWAP exchanges the s/x wire roles before the eraser acts (plus an
  ancilla SWAP in the four-option circuit).  Clbits keep their logical
  meaning, so conditioning code never cares which physical wire was read.

Closed-form predictions for the noiseless circuit:

    p(0_s) = 1/2                      p(1_x 1_y) = p(0_x 1_y) = 1/2
    p(0_s | 1_x 1_y) = (1 + sin(phi) cos(theta)) / 2
    p(0_s | 0_x 1_y) = (1 - sin(phi) cos(theta)) / 2
    p_succ = (1 + cos(phi)) / 2       D = cos(phi)       V = |sin(phi)|

so the wave-particle duality bound V^2 + D^2 <= 1 is saturated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import DEFAULT_DT, Circuit
from .gates import cnot_gate, controlled, h_gate, phase_gate, ry_gate, swap_gate, x_gate

TWO_PI = 2.0 * math.pi

RANDOM_CHOICES = ("none", "two_option", "four_option")
LAYOUTS = ("abstract", "ibm_mapped", "ionq_mapped")

BUILDER_NAMES = ("simple", "two_recorder", "random2", "random4")


@dataclass(frozen=True)
class EraserConfig:
    """Parameters selecting one concrete eraser circuit.

    ``phi`` is a single angle, or a ``(phi1, phi2)`` pair when
    ``random_choice == "four_option"``.  ``t_delay`` is in dt cycles.
    ``closed_configuration`` toggles the final recombining Hadamard on the
    signal wire (True = fringes possible, False = which-way readout).
    """

    theta: float = 0.0
    phi: float | tuple[float, float] = math.pi / 2
    closed_configuration: bool = True
    random_choice: str = "none"
    t_delay: int = 0
    layout: str = "abstract"
    dt: float = DEFAULT_DT

    def __post_init__(self) -> None:
        theta = math.fmod(float(self.theta), TWO_PI)
        if theta < 0:
            theta += TWO_PI
        object.__setattr__(self, "theta", theta)
        if self.random_choice not in RANDOM_CHOICES:
            raise ValueError(f"random_choice must be one of {RANDOM_CHOICES}")
        if self.layout not in LAYOUTS:
            raise ValueError(f"layout must be one of {LAYOUTS}")
        if self.t_delay < 0:
            raise ValueError("t_delay must be >= 0")
        if self.random_choice == "four_option":
            if not (isinstance(self.phi, (tuple, list)) and len(self.phi) == 2):
                raise ValueError("four_option requires phi = (phi1, phi2)")
            object.__setattr__(self, "phi", (float(self.phi[0]), float(self.phi[1])))
        else:
            if isinstance(self.phi, (tuple, list)):
                raise ValueError(f"{self.random_choice} takes a single phi angle")
            object.__setattr__(self, "phi", float(self.phi))

    def phi_scalar(self) -> float:
        if isinstance(self.phi, tuple):
            raise ValueError("config carries a (phi1, phi2) pair, not a single angle")
        return self.phi


def _new_circuit(config: EraserConfig, wires: tuple[str, ...]) -> Circuit:
    return Circuit(
        num_qubits=len(wires),
        num_clbits=len(wires),
        wire_labels=wires,
        clbit_labels=wires,
        dt=config.dt,
    )


def _anti_cnot(circ: Circuit, control: int, target: int) -> None:
    # Open-circle control: X-conjugate the control wire around a CNOT.
    x = x_gate()
    circ.gate(x, control)
    circ.gate(cnot_gate(), control, target)
    circ.gate(x, control)


def build_simple_eraser(config: EraserConfig) -> Circuit:
    """Single-recorder eraser: H(s); CX(s,i); P(theta); [H(s)]; delay; Ry(phi) on i."""
    if config.random_choice != "none":
        raise ValueError("the simple eraser has no random-choice ancilla")
    circ = _new_circuit(config, ("s", "i"))
    s, i = 0, 1
    circ.gate(h_gate(), s)
    circ.gate(cnot_gate(), s, i)
    circ.gate(phase_gate(config.theta), s)
    if config.closed_configuration:
        circ.gate(h_gate(), s)
    if config.t_delay:
        circ.delay(config.t_delay, i)
    circ.gate(ry_gate(config.phi_scalar()), i)
    circ.measure(s, 0).measure(i, 1)
    return circ


def _two_recorder_body(circ: Circuit, config: EraserConfig) -> list[int]:
    """Shared marking/interference sequence; returns slice boundary lengths.

    Slices (equivalent-layout ordering): 1 after H(s); 2 after both marking
    CNOTs; 3 after P(theta); 4 after CX(x,y); 5 after Ry(phi) [appended by
    the caller]; 6 after the closing H(s).
    """
    s, x, y = 0, 1, 2
    marks: list[int] = []
    circ.gate(h_gate(), s)
    marks.append(len(circ.instructions))
    _anti_cnot(circ, s, x)
    circ.gate(cnot_gate(), s, y)
    marks.append(len(circ.instructions))
    circ.gate(phase_gate(config.theta), s)
    marks.append(len(circ.instructions))
    if config.t_delay:
        circ.delay(config.t_delay, x)
        circ.delay(config.t_delay, y)
    circ.gate(cnot_gate(), x, y)
    marks.append(len(circ.instructions))
    return marks


def build_two_recorder_eraser(config: EraserConfig) -> Circuit:
    """Two-recorder eraser without random choice (preset phi)."""
    if config.random_choice != "none":
        raise ValueError("use build_random_choice_eraser for ancilla variants")
    circ = _new_circuit(config, ("s", "x", "y"))
    s, x, y = 0, 1, 2
    _two_recorder_body(circ, config)
    circ.gate(ry_gate(config.phi_scalar()), x)
    if config.closed_configuration:
        circ.gate(h_gate(), s)
    circ.measure(s, 0).measure(x, 1).measure(y, 2)
    return circ


def two_recorder_slice_prefixes(config: EraserConfig) -> list[Circuit]:
    """The six measurement-free prefixes of the two-recorder circuit.

    Prefix k ends at slice k of the equivalent layout, enabling direct
    comparison of engine states against the closed-form slice states.
    """
    full = _new_circuit(config, ("s", "x", "y"))
    marks = _two_recorder_body(full, config)
    full.gate(ry_gate(config.phi_scalar()), 1)
    marks.append(len(full.instructions))
    full.gate(h_gate(), 0)
    marks.append(len(full.instructions))
    prefixes = []
    for upto in marks:
        circ = full.copy_empty()
        for ins in full.instructions[:upto]:
            circ.append(ins)
        prefixes.append(circ)
    return prefixes


def build_random_choice_eraser(config: EraserConfig) -> Circuit:
    """Two-option random choice: an ancilla coin controls the eraser rotation.

    D_a = 0 events amount to phi = 0 (no erasure), D_a = 1 to the configured
    phi.  The ibm_mapped layout measures the signal mid-circuit, pauses all
    wires for t_delay, then swaps the s/x wire roles before the eraser.
    """
    if config.random_choice != "two_option":
        raise ValueError("build_random_choice_eraser requires random_choice='two_option'")
    phi = config.phi_scalar()
    circ = _new_circuit(config, ("s", "x", "y", "a"))
    s, x, y, a = 0, 1, 2, 3
    cry = controlled(ry_gate(phi))
    if config.layout in ("abstract", "ionq_mapped"):
        _two_recorder_body(circ, config)
        circ.gate(h_gate(), a)
        circ.gate(cry, a, x)
        if config.closed_configuration:
            circ.gate(h_gate(), s)
        circ.measure(s, 0).measure(x, 1).measure(y, 2).measure(a, 3)
        return circ

    # ibm_mapped: mid-circuit D_s, explicit delays, SWAP(s, x) role exchange.
    circ.gate(h_gate(), s)
    circ.gate(cnot_gate(), s, y)
    _anti_cnot(circ, s, x)
    circ.gate(phase_gate(config.theta), s)
    if config.closed_configuration:
        circ.gate(h_gate(), s)
    circ.measure(s, 0)
    if config.t_delay:
        for w in (s, x, y, a):
            circ.delay(config.t_delay, w)
    circ.gate(swap_gate(), s, x)  # x's state now lives on wire 0; wire 1 is trash
    circ.gate(cnot_gate(), s, y)
    circ.gate(h_gate(), a)
    circ.gate(cry, a, s)
    circ.measure(s, 1).measure(y, 2).measure(a, 3)
    return circ


def build_four_option_eraser(config: EraserConfig) -> Circuit:
    """Four-option random choice over angles {0, phi1, phi2, phi1 + phi2}.

    Two Hadamard-prepared ancillas control Ry(phi1) and Ry(phi2); the
    ancilla readout pair (a1, a2) selects the effective angle with
    probability 1/4 each.  The ibm_mapped variant adds the ancilla SWAP
    (a2's wire ends up reporting D_a1 and vice versa) after the first
    controlled rotation.
    """
    if config.random_choice != "four_option":
        raise ValueError("build_four_option_eraser requires random_choice='four_option'")
    phi1, phi2 = config.phi  # type: ignore[misc]
    circ = _new_circuit(config, ("s", "x", "y", "a1", "a2"))
    s, x, y, a1, a2 = 0, 1, 2, 3, 4
    if config.layout in ("abstract", "ionq_mapped"):
        _two_recorder_body(circ, config)
        circ.gate(h_gate(), a1)
        circ.gate(h_gate(), a2)
        circ.gate(controlled(ry_gate(phi1)), a1, x)
        circ.gate(controlled(ry_gate(phi2)), a2, x)
        if config.closed_configuration:
            circ.gate(h_gate(), s)
        for wire, clbit in ((s, 0), (x, 1), (y, 2), (a1, 3), (a2, 4)):
            circ.measure(wire, clbit)
        return circ

    # ibm_mapped: mid-circuit D_s + SWAP(s, x), then the ancilla component
    # with its own SWAP: Ry(phi2) first (control a2), swap a2/a1 wires,
    # then Ry(phi1) controlled by the wire now holding a1's state.
    circ.gate(h_gate(), s)
    circ.gate(cnot_gate(), s, y)
    _anti_cnot(circ, s, x)
    circ.gate(phase_gate(config.theta), s)
    if config.closed_configuration:
        circ.gate(h_gate(), s)
    circ.measure(s, 0)
    if config.t_delay:
        for w in (s, x, y, a1, a2):
            circ.delay(config.t_delay, w)
    circ.gate(swap_gate(), s, x)  # x's role moves to wire 0
    circ.gate(cnot_gate(), s, y)
    circ.gate(h_gate(), a1)
    circ.gate(h_gate(), a2)
    circ.gate(controlled(ry_gate(phi2)), a2, s)
    circ.gate(swap_gate(), a2, a1)  # a1's state now on the a2 wire
    circ.gate(controlled(ry_gate(phi1)), a2, s)
    circ.measure(s, 1).measure(y, 2).measure(a2, 3).measure(a1, 4)
    return circ


def build(builder: str, config: EraserConfig) -> Circuit:
    """CLI-facing dispatcher; names: simple, two_recorder, random2, random4."""
    try:
        fn = {
            "simple": build_simple_eraser,
            "two_recorder": build_two_recorder_eraser,
            "random2": build_random_choice_eraser,
            "random4": build_four_option_eraser,
        }[builder]
    except KeyError:
        raise ValueError(f"unknown builder {builder!r}; choose from {BUILDER_NAMES}") from None
    return fn(config)


def effective_phis(config: EraserConfig) -> dict[str, float]:
    """Effective rotation angle per ancilla-outcome subensemble.

    Keys are the ancilla bits in clbit order ('' when there is no random
    choice, 'a' for two options, 'a1 a2' for four).
    """
    if config.random_choice == "none":
        return {"": config.phi_scalar()}
    if config.random_choice == "two_option":
        return {"0": 0.0, "1": config.phi_scalar()}
    phi1, phi2 = config.phi  # type: ignore[misc]
    return {"00": 0.0, "10": phi1, "01": phi2, "11": phi1 + phi2}


@dataclass(frozen=True)
class AnalyticPrediction:
    """Closed-form noiseless statistics of the two-recorder eraser."""

    p_0s: float
    p_1x1y: float
    p_0x1y: float
    p_0s_given_1x1y: float
    p_0s_given_0x1y: float
    p_succ: float
    distinguishability: float
    visibility: float

    def as_dict(self) -> dict[str, float]:
        return {
            "p_0s": self.p_0s,
            "p_1x1y": self.p_1x1y,
            "p_0x1y": self.p_0x1y,
            "p_0s_given_1x1y": self.p_0s_given_1x1y,
            "p_0s_given_0x1y": self.p_0s_given_0x1y,
            "p_succ": self.p_succ,
            "distinguishability": self.distinguishability,
            "visibility": self.visibility,
        }


def analytic_prediction_at(theta: float, phi: float) -> AnalyticPrediction:
    fringe = math.sin(phi) * math.cos(theta)
    return AnalyticPrediction(
        p_0s=0.5,
        p_1x1y=0.5,
        p_0x1y=0.5,
        p_0s_given_1x1y=0.5 * (1.0 + fringe),
        p_0s_given_0x1y=0.5 * (1.0 - fringe),
        p_succ=0.5 * (1.0 + math.cos(phi)),
        distinguishability=math.cos(phi),
        visibility=abs(math.sin(phi)),
    )


def analytic_prediction(config: EraserConfig) -> AnalyticPrediction:
    """Predicted statistics for the config's (theta, phi); noiseless contract.

    For random-choice configs this is the prediction *given* the erasure
    fired (two-option D_a = 1); per-subensemble angles come from
    :func:`effective_phis`.
    """
    return analytic_prediction_at(config.theta, config.phi_scalar())
