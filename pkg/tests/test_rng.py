import numpy as np

from qeraser import rng


def test_pure_function_of_key():
    a = rng.uniform(42, 7, 3)
    b = rng.uniform(42, 7, 3)
    assert a == b
    assert rng.uniform(42, 7, 4) != a
    assert rng.uniform(42, 8, 3) != a
    assert rng.uniform(43, 7, 3) != a


def test_vectorized_matches_scalar():
    shots = np.arange(50, dtype=np.uint64)
    vec = rng.uniforms(9, shots, 2)
    for i in range(50):
        assert vec[i] == rng.uniform(9, i, 2)


def test_uniform_range_and_moments():
    u = rng.uniforms(2024, np.arange(10**5, dtype=np.uint64), 0)
    assert u.min() >= 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.005
    assert abs(u.var() - 1.0 / 12.0) < 0.002


def test_draw_stream_sequences_draw_index():
    stream = rng.DrawStream(5, shot_index=11)
    got = [stream.uniform() for _ in range(4)]
    want = [rng.uniform(5, 11, k) for k in range(4)]
    assert got == want


def test_negative_and_large_seeds_wrap():
    assert rng.uniform(-1, 0, 0) == rng.uniform(2**64 - 1, 0, 0)
    assert rng.uniform(2**64 + 5, 0, 0) == rng.uniform(5, 0, 0)


def test_derive_seed_is_stable_and_distinct():
    a = rng.derive_seed(77, 0)
    assert a == rng.derive_seed(77, 0)
    assert a != rng.derive_seed(77, 1)
    assert rng.derive_seed(77, 1, 2) != rng.derive_seed(77, 2, 1)


def test_cross_shot_independence_no_obvious_correlation():
    u0 = rng.uniforms(1, np.arange(2000, dtype=np.uint64), 0)
    u1 = rng.uniforms(1, np.arange(2000, dtype=np.uint64), 1)
    corr = np.corrcoef(u0, u1)[0, 1]
    assert abs(corr) < 0.08
