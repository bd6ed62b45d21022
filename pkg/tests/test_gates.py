import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import phase_aligned_max_norm
from qeraser.gates import (
    GateSpec,
    cnot_from_ecr,
    cnot_gate,
    controlled,
    decompose_swap,
    ecr_gate,
    gate_from_name,
    h_gate,
    identity_gate,
    phase_gate,
    rx_gate,
    ry_gate,
    rz_gate,
    swap_gate,
    sx_gate,
    x_gate,
    y_gate,
    z_gate,
)

RT2 = 1.0 / math.sqrt(2.0)


def test_phase_gate_values():
    np.testing.assert_allclose(phase_gate(0.0).matrix, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(phase_gate(math.pi).matrix, np.diag([1.0, -1.0]), atol=1e-15)
    np.testing.assert_allclose(phase_gate(math.pi / 2).matrix, np.diag([1.0, 1j]), atol=1e-15)


def test_phase_gate_is_phased_rz():
    for theta in (0.0, 0.3, math.pi, 4.5):
        want = np.exp(0.5j * theta) * rz_gate(theta).matrix
        np.testing.assert_allclose(phase_gate(theta).matrix, want, atol=1e-12)


def test_ry_gate_values():
    np.testing.assert_allclose(ry_gate(0.0).matrix, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(ry_gate(math.pi).matrix, [[0, -1], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(
        ry_gate(math.pi / 2).matrix, RT2 * np.array([[1, -1], [1, 1]]), atol=1e-15
    )


def test_angles_must_be_finite():
    for bad in (math.inf, math.nan):
        with pytest.raises(ValueError):
            phase_gate(bad)
        with pytest.raises(ValueError):
            ry_gate(bad)


def test_controlled_x_is_cnot():
    np.testing.assert_allclose(controlled(x_gate()).matrix, cnot_gate().matrix, atol=1e-15)


def test_controlled_identity_rotation():
    np.testing.assert_allclose(controlled(ry_gate(0.0)).matrix, np.eye(4), atol=1e-15)


def test_controlled_ry_action():
    # On (|0> + |1>)/sqrt2 (x) |0>, control first: amplitudes over the
    # (control, target) basis (00, 01, 10, 11) are (1/sqrt2, 0, 1/2, 1/2).
    # Oracle: brute 4x4 matrix-vector product with control as the MSB.
    cry = controlled(ry_gate(math.pi / 2)).matrix
    state = np.kron(np.array([RT2, RT2]), np.array([1.0, 0.0]))  # control is MSB here
    out = cry @ state
    np.testing.assert_allclose(out, [RT2, 0.0, 0.5, 0.5], atol=1e-15)


def test_controlled_rejects_two_qubit_gate():
    with pytest.raises(ValueError):
        controlled(cnot_gate())


def test_controlled_block_equals_gate():
    g = ry_gate(1.234)
    np.testing.assert_array_equal(controlled(g).matrix[2:, 2:], g.matrix)


def test_ecr_unitary_and_self_inverse():
    e = ecr_gate().matrix
    np.testing.assert_allclose(e @ e.conj().T, np.eye(4), atol=1e-14)
    # Its own inverse (here exactly, which implies "up to phase"): 4x4 product oracle.
    np.testing.assert_allclose(e @ e, np.eye(4), atol=1e-14)


def test_ecr_cnot_equivalence():
    # Single-qubit rotations A, B, C, D with (A(x)B) ECR (C(x)D) = CNOT up to phase.
    pre, post, phase = cnot_from_ecr()

    def product(pairs):
        mats = [np.eye(2, dtype=complex), np.eye(2, dtype=complex)]
        for g, wire in pairs:
            mats[wire] = g.matrix @ mats[wire]
        return mats

    c_mat, d_mat = product(pre)
    a_mat, b_mat = product(post)
    built = phase * np.kron(a_mat, b_mat) @ ecr_gate().matrix @ np.kron(c_mat, d_mat)
    assert np.max(np.abs(built - cnot_gate().matrix)) < 1e-12
    assert phase_aligned_max_norm(built, cnot_gate().matrix) < 1e-9


def test_decompose_swap_products():
    ops = decompose_swap()
    assert [(g.name, wires) for g, wires in ops] == [("cx", (0, 1)), ("cx", (1, 0)), ("cx", (0, 1))]
    full = np.eye(4, dtype=complex)
    for g, wires in ops:
        m = g.matrix if wires == (0, 1) else _flip_cx(g.matrix)
        full = m @ full
    np.testing.assert_allclose(full, swap_gate().matrix, atol=1e-15)
    # Actions: |01> -> |10>, |11> -> |11> (control-first MSB indexing).
    np.testing.assert_allclose(full @ _basis(1), _basis(2), atol=1e-15)
    np.testing.assert_allclose(full @ _basis(3), _basis(3), atol=1e-15)


def _basis(i):
    v = np.zeros(4, dtype=complex)
    v[i] = 1.0
    return v


def _flip_cx(m):
    # CX with control and target swapped, via conjugation with SWAP.
    s = swap_gate().matrix
    return s @ m @ s


def test_sx_is_principal_square_root():
    sx = sx_gate().matrix
    np.testing.assert_allclose(sx @ sx, x_gate().matrix, atol=1e-14)
    assert abs(np.linalg.det(sx) - 1j) < 1e-14


@settings(max_examples=40, deadline=None)
@given(
    st.floats(-10, 10, allow_nan=False),
    st.floats(-10, 10, allow_nan=False),
)
def test_ry_rotation_additivity(phi1, phi2):
    got = ry_gate(phi1).matrix @ ry_gate(phi2).matrix
    np.testing.assert_allclose(got, ry_gate(phi1 + phi2).matrix, atol=1e-12)


def test_every_named_gate_is_unitary():
    gates = [
        identity_gate(),
        x_gate(),
        y_gate(),
        z_gate(),
        h_gate(),
        sx_gate(),
        cnot_gate(),
        swap_gate(),
        ecr_gate(),
        rz_gate(0.7),
        rx_gate(-1.2),
        ry_gate(2.5),
        phase_gate(0.4),
        controlled(ry_gate(0.9)),
    ]
    for g in gates:
        dev = np.max(np.abs(g.matrix @ g.matrix.conj().T - np.eye(2**g.arity)))
        assert dev < 1e-10, g.name


def test_gate_from_name_roundtrip():
    for g in (h_gate(), ry_gate(0.25), controlled(ry_gate(0.25)), ecr_gate()):
        back = gate_from_name(g.name, g.params)
        np.testing.assert_allclose(back.matrix, g.matrix, atol=1e-15)
    with pytest.raises(ValueError):
        gate_from_name("nope")
    with pytest.raises(ValueError):
        gate_from_name("h", (0.1,))


def test_gatespec_rejects_non_unitary_matrix():
    with pytest.raises(ValueError):
        GateSpec("bad", (), 1, np.array([[1, 0], [0, 2]], dtype=complex))
