"""Counter-based uniform stream.

Sample ``i`` of stream ``s`` under seed ``k`` is a pure function of
``(k, s, i)``, so any chunking of the index range reproduces the same
values. The mixer is SplitMix64 evaluated at counter ``i``.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

# stream ids used across the package
THETA = 0
CLICK_X = 1
CLICK_Y = 2


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _stream_base(seed: int, stream: int) -> np.uint64:
    if not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    z = np.array([(seed + stream * 0xD1B54A32D192ED03) & _MASK64], dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix(z)[0]


def uniform(seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """Doubles in [0, 1) for counters ``start .. start+count-1``."""
    base = _stream_base(seed, stream)
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        bits = _mix(base + idx * _GOLDEN)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def uniform_phases(seed: int, start: int, count: int) -> np.ndarray:
    """Hidden phases uniform on [0, 2pi)."""
    return 2.0 * np.pi * uniform(seed, THETA, start, count)
