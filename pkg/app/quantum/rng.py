from __future__ import annotations

import numpy as np

SEED_BITS = 64


def fresh_seed() -> int:
    """Draw a 64-bit seed from OS entropy (echoed in reports for replays)."""

    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(seed)


def spawn_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent child stream addressed by ``(seed, *key)``.

    The stream depends only on the key, never on how many other streams were
    created before it, so results do not depend on evaluation order.
    """

    return np.random.default_rng(np.random.SeedSequence([seed, *key]))
