"""Deterministic seed derivation and counter-based dropout noise.

All stochastic inference in this package is reproduced from 64-bit seeds via
a splitmix-style finalizer.  The rules are deliberately simple so that an
independent reimplementation (e.g. a brute-force test oracle) can regenerate
the exact same dropout masks:

* ``mix(seed, index)`` derives the seed for sub-stream ``index`` of a parent
  ``seed``.  It is the splitmix64 output function evaluated at state
  ``seed + (index + 1) * GAMMA  (mod 2**64)``.
* The dropout uniform for (sample seed ``s``, forward pass ``t``, hidden
  layer ``l``, unit ``j``) is ``u64_to_unit(mix(mix(mix(s, t), l), j))``,
  a float in [0, 1) built from the top 53 bits.  Unit ``j`` is kept when
  its uniform is strictly below the keep probability.

Because every uniform is a pure function of its indices, batched mask
generation is bit-identical to generating masks row by row.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_C1 = 0xBF58476D1CE4E5B9
_C2 = 0x94D049BB133111EB


def mix(seed: int, index: int) -> int:
    """Derive the 64-bit seed of sub-stream ``index`` from ``seed``."""
    z = (seed + (index + 1) * GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * _C1) & _MASK64
    z = ((z ^ (z >> 27)) * _C2) & _MASK64
    return z ^ (z >> 31)


def _mix_u64(state: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 finalizer over a uint64 state array."""
    z = state
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_C1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_C2)
    return z ^ (z >> np.uint64(31))


def mix_array(seeds: np.ndarray, index: int) -> np.ndarray:
    """``mix`` applied elementwise to a uint64 array of seeds."""
    state = seeds + np.uint64((index + 1) * GAMMA & _MASK64)
    return _mix_u64(state)


def mix_many(seed: int, count: int) -> np.ndarray:
    """``[mix(seed, 0), ..., mix(seed, count-1)]`` as a uint64 array."""
    steps = np.arange(1, count + 1, dtype=np.uint64) * np.uint64(GAMMA)
    return _mix_u64(np.uint64(seed & _MASK64) + steps)


def u64_to_unit(z: np.ndarray) -> np.ndarray:
    """Map uint64 values to float64 in [0, 1) using the top 53 bits."""
    return (z >> np.uint64(11)) * np.float64(2.0 ** -53)


def dropout_uniforms(sample_seeds: np.ndarray, pass_index: int, layer: int,
                     n_units: int) -> np.ndarray:
    """Uniforms deciding which units drop, shape ``(len(sample_seeds), n_units)``.

    Row ``i`` depends only on ``sample_seeds[i]``, so a batch of rows yields
    exactly the uniforms each row would get on its own.
    """
    keys = mix_array(mix_array(sample_seeds, pass_index), layer)
    units = np.arange(1, n_units + 1, dtype=np.uint64) * np.uint64(GAMMA)
    return u64_to_unit(_mix_u64(keys[:, None] + units[None, :]))


def stable_seed(*parts) -> int:
    """A 64-bit seed derived from string/int parts, stable across processes.

    Used by the HTTP service to pin the stochastic seed of each resource to
    its request parameters, so repeated identical requests return identical
    bodies.
    """
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")
