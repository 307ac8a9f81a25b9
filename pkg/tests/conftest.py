"""Shared test helpers: seeded random states and measurement contexts."""

import numpy as np

from regradlab.quantum import DensityOperator, Effect, Povm, QubitPureState


def random_pure(rng) -> QubitPureState:
    v = rng.normal(size=3)
    return QubitPureState(bloch=v / np.linalg.norm(v))


def random_density(rng) -> DensityOperator:
    v = rng.normal(size=3)
    v = v / np.linalg.norm(v) * rng.uniform(0.0, 1.0)
    return DensityOperator.from_bloch(v)


def random_povm(rng) -> Povm:
    # k-1 small positive effects plus the closing complement; every draw
    # keeps e0 <= 1/(k-1), which forces the closer to stay positive
    k = int(rng.integers(2, 5))
    effects = []
    total_r0, total_r = 0.0, np.zeros(3)
    for _ in range(k - 1):
        e0 = rng.uniform(0.0, 1.0 / (k - 1))
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        r = direction * rng.uniform(0.0, e0)
        effects.append(Effect(r0=e0, r=r))
        total_r0 += e0
        total_r = total_r + r
    effects.append(Effect(r0=2.0 - total_r0, r=-total_r))
    return Povm(effects=tuple(effects))
