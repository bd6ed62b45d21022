"""Counter-based random numbers keyed by (seed, shot_index, draw_index).

Shot sampling must be reproducible and order-independent: merging shots
from any worker partition has to give bit-identical results.  Sequential
generators cannot offer that, so every uniform here is a pure function of
``(seed, shot_index, draw_index)`` built from two chained SplitMix64
steps: the first turns ``(seed, shot)`` into a per-shot key, the second
turns ``(key, draw)`` into the output word.  SplitMix64 is the standard
add-odd-constant / finalize construction and vectorizes cleanly over shot
arrays in uint64 arithmetic.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_DRAW_STEP = np.uint64(0xD1B54A32D192ED03)

_U64_MASK = (1 << 64) - 1
_INV_2_53 = float(2.0**-53)


def _finalize(z: np.ndarray) -> np.ndarray:
    """SplitMix64 output finalizer (xor-shift-multiply), vectorized."""
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _as_u64(value: int) -> np.uint64:
    return np.uint64(int(value) & _U64_MASK)


def raw_words(seed: int, shot_indices, draw_index: int) -> np.ndarray:
    """uint64 words for the given shots at one draw position."""
    shots = np.asarray(shot_indices, dtype=np.uint64)
    with np.errstate(over="ignore"):
        key = _finalize(_as_u64(seed) + (shots + np.uint64(1)) * _GOLDEN)
        word = _finalize(key + (_as_u64(draw_index) + np.uint64(1)) * _DRAW_STEP)
    return word


def uniforms(seed: int, shot_indices, draw_index: int) -> np.ndarray:
    """float64 uniforms in [0, 1), one per shot index, at one draw position."""
    return (raw_words(seed, shot_indices, draw_index) >> np.uint64(11)) * _INV_2_53


def uniform(seed: int, shot_index: int, draw_index: int) -> float:
    """Scalar convenience wrapper around :func:`uniforms`."""
    return float(uniforms(seed, np.asarray([shot_index], dtype=np.uint64), draw_index)[0])


def derive_seed(seed: int, *indices: int) -> int:
    """Derive an independent 64-bit sub-seed from a seed and index path.

    Used to decorrelate grid points of a sweep while keeping every stream a
    pure function of the master seed.
    """
    with np.errstate(over="ignore"):
        z = _as_u64(seed)
        for ix in indices:
            z = _finalize(z + (_as_u64(ix) + np.uint64(1)) * _GOLDEN)
    return int(z)


class DrawStream:
    """Sequential scalar view of one shot's draw sequence.

    Exposes ``uniform()`` so it can stand in for a numpy Generator in
    scalar code paths (e.g. :func:`qeraser.noise.readout_channel`).
    """

    def __init__(self, seed: int, shot_index: int = 0, start_draw: int = 0):
        self.seed = int(seed)
        self.shot_index = int(shot_index)
        self.draw_index = int(start_draw)

    def uniform(self) -> float:
        u = uniform(self.seed, self.shot_index, self.draw_index)
        self.draw_index += 1
        return u
