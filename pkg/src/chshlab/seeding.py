"""Deterministic per-component random streams from one 64-bit seed.

Each consumer of randomness derives its own stream by mixing a stable
component label into the user seed, so adding a new subcommand or estimator
never perturbs the draws of an existing one. The label is hashed with CRC32
(stable across processes and platforms, unlike ``hash``) and fed to numpy's
SeedSequence as a spawn key.

Component labels currently in use:

    chsh/same-lambda     chsh/independent      chsh/quantum
    simulate/pairs       simulate/t-observable
    scan/restarts
"""

from __future__ import annotations

import zlib

import numpy as np


def component_stream(seed: int, component: str) -> np.random.Generator:
    """Generator for ``component``, deterministic in (seed, component)."""
    key = zlib.crc32(component.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(key,)))
