import math

import numpy as np
import pytest

from conftest import apply_channel_dense, choi_matrix
from qeraser import rng
from qeraser.noise import (
    IDEAL_QUBIT,
    NoiseModel,
    QubitNoiseParams,
    delay_channel,
    flip_outcome,
    readout_channel,
)


def test_params_validation():
    QubitNoiseParams(t1=1e-4, t2=2e-4)  # t2 = 2 t1 allowed
    with pytest.raises(ValueError):
        QubitNoiseParams(t1=1e-4, t2=3e-4)  # t2 > 2 t1
    with pytest.raises(ValueError):
        QubitNoiseParams(t1=0.0)
    with pytest.raises(ValueError):
        QubitNoiseParams(readout_flip=(1.5, 0.0))
    assert IDEAL_QUBIT.ideal


def test_zero_duration_is_identity_channel():
    ops = delay_channel(QubitNoiseParams(t1=1e-4, t2=1e-4), 0.0)
    assert len(ops) == 1
    np.testing.assert_allclose(ops[0], np.eye(2), atol=1e-15)


def test_pure_dephasing_decay_factor():
    # T1 = inf, T2 = 8.89 us, duration = T2: off-diagonal shrinks by e^{-1}.
    # Oracle: dense Kraus products on (|0>+|1>)(<0|+<1|)/2.
    t2 = 8.89e-6
    ops = delay_channel(QubitNoiseParams(t2=t2), t2)
    plus = np.full((2, 2), 0.5, dtype=complex)
    out = apply_channel_dense(plus, ops)
    assert abs(out[0, 1].real - 0.5 * math.exp(-1.0)) < 1e-12
    assert abs(out[0, 1].real - 0.18393972058572117) < 1e-12
    np.testing.assert_allclose(np.diag(out).real, [0.5, 0.5], atol=1e-14)


def test_amplitude_damping_population_decay():
    # T1 = 100 us, duration = T1: excited population falls to e^{-1}.
    t1 = 100e-6
    ops = delay_channel(QubitNoiseParams(t1=t1, t2=2 * t1), t1)
    rho1 = np.diag([0.0, 1.0]).astype(complex)
    out = apply_channel_dense(rho1, ops)
    assert abs(out[1, 1].real - math.exp(-1.0)) < 1e-12
    assert abs(out[1, 1].real - 0.36787944117144233) < 1e-12


def test_combined_t1_t2_off_diagonal():
    # Total coherence decay must be exactly e^{-t/T2} with T1 also finite.
    t1, t2, t = 80e-6, 50e-6, 30e-6
    ops = delay_channel(QubitNoiseParams(t1=t1, t2=t2), t)
    plus = np.full((2, 2), 0.5, dtype=complex)
    out = apply_channel_dense(plus, ops)
    assert abs(abs(out[0, 1]) - 0.5 * math.exp(-t / t2)) < 1e-12


@pytest.mark.parametrize(
    "t1,t2",
    [
        (math.inf, math.inf),
        (1e-4, 1e-4),
        (1e-4, 2e-4),
        (50e-6, 30e-6),
        (math.inf, 8e-6),
        (1e-3, 1e-9),
    ],
)
def test_channel_is_trace_preserving(t1, t2):
    for duration in (0.0, 1e-7, 5e-6, 1e-4):
        ops = delay_channel(QubitNoiseParams(t1=t1, t2=t2), duration)
        completeness = sum(k.conj().T @ k for k in ops)
        assert np.max(np.abs(completeness - np.eye(2))) < 1e-10


def test_semigroup_property_on_choi():
    # channel(t1) then channel(t2) equals channel(t1 + t2) as channels.
    params = QubitNoiseParams(t1=70e-6, t2=40e-6)
    ta, tb = 11e-6, 23e-6
    composed = [
        k2 @ k1 for k2 in delay_channel(params, tb) for k1 in delay_channel(params, ta)
    ]
    direct = delay_channel(params, ta + tb)
    np.testing.assert_allclose(choi_matrix(composed), choi_matrix(direct), atol=1e-10)


def test_off_diagonal_monotone_in_duration():
    params = QubitNoiseParams(t1=90e-6, t2=60e-6)
    plus = np.full((2, 2), 0.5, dtype=complex)
    last = 1.0
    for duration in np.linspace(0.0, 200e-6, 25):
        out = apply_channel_dense(plus, delay_channel(params, duration))
        mag = abs(out[0, 1])
        assert mag <= last + 1e-15
        last = mag


def test_readout_channel_deterministic_cases():
    stream = rng.DrawStream(1, 0)
    none = QubitNoiseParams()
    assert readout_channel(none, 0, stream) == 0
    assert readout_channel(none, 1, stream) == 1
    always = QubitNoiseParams(readout_flip=(1.0, 1.0))
    assert readout_channel(always, 0, stream) == 1
    assert readout_channel(always, 1, stream) == 0
    with pytest.raises(ValueError):
        readout_channel(none, 2, stream)


def test_readout_flip_statistics():
    # (0.01, 0.02) flips, 1e6 trials on ideal 0: reported-1 fraction within
    # 5 sigma_th of 0.01.  Oracle: binomial sampling via the shared flip rule.
    n = 10**6
    u = rng.uniforms(123, np.arange(n, dtype=np.uint64), 0)
    frac = np.mean(u < 0.01)
    sigma = math.sqrt(0.01 * 0.99 / n)
    assert abs(frac - 0.01) < 5 * sigma
    # Scalar channel agrees with the vectorized rule draw-for-draw.
    params = QubitNoiseParams(readout_flip=(0.01, 0.02))
    for shot in range(200):
        stream = rng.DrawStream(123, shot)
        got = readout_channel(params, 0, stream)
        assert got == flip_outcome(0, 0.01, rng.uniform(123, shot, 0))


def test_noise_model_coverage_and_lookup():
    params = QubitNoiseParams(t2=5e-6)
    model = NoiseModel.from_dict({1: params}, num_qubits=3)
    assert model.params_for(1) is params
    assert model.params_for(0).ideal
    model.check_covers(3)
    with pytest.raises(ValueError):
        model.check_covers(4)
    uniform = NoiseModel.uniform(2, params, apply_during_delays_only=False)
    assert not uniform.apply_during_delays_only
    assert NoiseModel.from_dict({0: QubitNoiseParams(readout_flip=(0.1, 0))}, 1).has_readout_error()
