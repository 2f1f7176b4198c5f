"""Deterministic derivation of per-component random streams.

A single master seed fans out to independent streams keyed by
(component name, index); the derivation is a hash, so results do not
depend on the order in which streams are consumed.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(master: int, component: str, index: int = 0) -> int:
    payload = f"{master}:{component}:{index}".encode()
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big")


def derive_rng(master: int, component: str, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, component, index))
