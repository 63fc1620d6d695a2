"""Weight bookkeeping shared by the quantum and classical Relief loops."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from app.config import SelectionPolicy
from app.quantum.rng import spawn_rng
from app.relief.dataset import Dataset, Sample

PICK_STREAM = 0


def diff(i: int, u: Sample, v: Sample) -> int:
    return 0 if u.features[i] == v.features[i] else 1


@dataclass(frozen=True)
class WeightVector:
    wt: tuple[float, ...]
    iterations_applied: int = 0

    @classmethod
    def zeros(cls, num_features: int) -> WeightVector:
        return cls(wt=(0.0,) * num_features)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.wt, dtype=float)


def update_weights(wt: WeightVector, u: Sample, near_hit: Sample, near_miss: Sample) -> WeightVector:
    """wt_i <- wt_i - diff(i, u, near_hit)^2 + diff(i, u, near_miss)^2 for every feature."""

    u_features = np.asarray(u.features)
    hit = (u_features != np.asarray(near_hit.features)).astype(float)
    miss = (u_features != np.asarray(near_miss.features)).astype(float)
    updated = wt.as_array() - hit**2 + miss**2
    return WeightVector(wt=tuple(float(value) for value in updated), iterations_applied=wt.iterations_applied + 1)


def select_features(wt: WeightVector, T: int, tau: float) -> tuple[tuple[float, ...], tuple[int, ...]]:
    """Mean weights and the indices whose mean reaches ``tau`` (inclusive)."""

    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    wt_mean = wt.as_array() / T
    selected = tuple(int(i) for i in np.flatnonzero(wt_mean >= tau))
    return tuple(float(value) for value in wt_mean), selected


def sample_picker(dataset: Dataset, policy: SelectionPolicy, seed: int | None) -> Callable[[int], Sample]:
    """Iteration ``t`` (1-based) -> sample u.

    Round-robin walks the dataset in order; random draws uniformly from a
    stream seeded by ``seed``.
    """

    samples: Sequence[Sample] = dataset.samples
    if policy == "round-robin":
        return lambda t: samples[(t - 1) % len(samples)]
    if seed is None:
        raise ValueError("random policy needs a seed")
    rng = spawn_rng(seed, PICK_STREAM)
    return lambda _t: samples[int(rng.integers(len(samples)))]


def argmax_by_position(
    candidates: Sequence[Sample],
    score: Callable[[Sample], float],
) -> Sample:
    """First candidate with the highest score; equal scores go to the earlier candidate."""

    best = candidates[0]
    best_score = score(best)
    for candidate in candidates[1:]:
        value = score(candidate)
        if value > best_score:
            best, best_score = candidate, value
    return best
