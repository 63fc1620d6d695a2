"""Quantum Relief: swap-test similarities pick Near-hit and Near-miss.

Similarity between u and v is estimated from the swap-test ancilla
probability p1 as (1 - 2 p1) N^2, which equals (u . v)^2 for binary samples.
Sampled and replayed probabilities may exceed 1/2, so those modes use
|1 - 2 p1| N^2.
"""

from __future__ import annotations

import logging
import math
import threading
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.config import SelectionPolicy, settings
from app.datasets.replay import ReplayIncompleteError, ReplayTable
from app.quantum.circuits import (
    EncodedSample,
    PrepMode,
    encode_sample,
    register_widths,
    swap_last_two,
    swap_test,
)
from app.quantum.rng import SEED_BITS, fresh_seed, spawn_rng
from app.quantum.state import SimulationConfigError
from app.relief.dataset import Dataset, DegenerateDatasetError, Sample
from app.relief.report import IterationRecord, Resources, RunReport
from app.relief.weights import (
    WeightVector,
    argmax_by_position,
    diff,
    sample_picker,
    select_features,
    update_weights,
)

__all__ = [
    "RunConfig",
    "SampleEncoder",
    "SimilarityEstimate",
    "diff",
    "find_near",
    "run",
    "select_features",
    "similarity",
    "update_weights",
]

logger = logging.getLogger("qrelief.quantum")

SimilarityMode = Literal["exact", "sampled", "replay"]

PREP_STREAM = 1
SHOT_STREAM = 2
SIMILARITY_DIGITS = 9


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    iterations: int | None = Field(default=None, ge=1)
    tau: float = 0.5
    mode: SimilarityMode = "exact"
    shots: int = Field(default=8192, ge=1)
    seed: int | None = Field(default=None, ge=0, lt=2**SEED_BITS)
    policy: SelectionPolicy = "round-robin"
    workers: int | None = Field(default=None, ge=1, le=64)

    @field_validator("tau")
    @classmethod
    def validate_tau(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("tau must be finite")
        return value


@dataclass(frozen=True)
class SimilarityEstimate:
    other_id: str
    p1: float
    similarity: float
    mode: SimilarityMode
    shots: int | None = None
    # swap and swap-test gates only; SampleEncoder.gate_count holds the encodings
    gate_count: int = 0
    num_qubits: int = 0


class SampleEncoder:
    """Caches encoded states; a sample's index register holds its list position."""

    def __init__(self, samples: Sequence[Sample], mode: PrepMode = "exact", seed: int | None = None) -> None:
        if mode == "sampled" and seed is None:
            raise SimulationConfigError("sampled preparation needs a seed")
        self.m, self.n = register_widths(len(samples), len(samples[0].features))
        self.mode = mode
        self.seed = seed
        self._positions = {sample.id: position for position, sample in enumerate(samples)}
        self._cache: dict[str, EncodedSample] = {}
        self._lock = threading.Lock()

    @property
    def encoded_width(self) -> int:
        return self.m + self.n + 2

    @property
    def gate_count(self) -> int:
        with self._lock:
            return sum(encoded.gate_count for encoded in self._cache.values())

    @property
    def prep_attempts(self) -> int:
        with self._lock:
            return sum(encoded.prep_attempts for encoded in self._cache.values())

    def encode(self, sample: Sample) -> EncodedSample:
        with self._lock:
            cached = self._cache.get(sample.id)
            if cached is not None:
                return cached
            position = self._positions[sample.id]
            rng = spawn_rng(self.seed, PREP_STREAM, position) if self.mode == "sampled" else None
            encoded = encode_sample(
                sample.features,
                position,
                self.m,
                self.n,
                mode=self.mode,
                rng=rng,
                retry_factor=settings.prep_retry_factor,
            )
            self._cache[sample.id] = encoded
            return encoded


def similarity(
    u: Sample,
    v: Sample,
    cfg: RunConfig,
    rng: np.random.Generator | None = None,
    replay: ReplayTable | None = None,
    *,
    iteration: int = 1,
    encoder: SampleEncoder | None = None,
) -> SimilarityEstimate:
    if u.id == v.id:
        raise ValueError(f"similarity needs two distinct samples, got {u.id!r} twice")
    scale = float(len(u.features)) ** 2

    if cfg.mode == "replay":
        if replay is None:
            raise ReplayIncompleteError("replay mode needs a replay table")
        p1 = replay.p1(iteration, u.id, v.id)
        return SimilarityEstimate(other_id=v.id, p1=p1, similarity=abs(1.0 - 2.0 * p1) * scale, mode="replay")

    encoder = encoder or SampleEncoder([u, v])
    encoded_u = encoder.encode(u)
    encoded_v = encoder.encode(v)
    varphi = swap_last_two(encoded_u)

    if cfg.mode == "exact":
        result = swap_test(varphi, encoded_v.state)
        # (u.v)^2 for binary samples, up to float noise
        value = round((1.0 - 2.0 * result.p1) * scale, SIMILARITY_DIGITS) + 0.0
    else:
        if rng is None:
            raise SimulationConfigError("sampled similarity needs an rng")
        result = swap_test(varphi, encoded_v.state, mode="sampled", shots=cfg.shots, rng=rng)
        value = abs(1.0 - 2.0 * result.p1) * scale

    return SimilarityEstimate(
        other_id=v.id,
        p1=result.p1,
        similarity=value,
        mode=cfg.mode,
        shots=result.shots,
        gate_count=1 + result.gate_count,
        num_qubits=result.num_qubits,
    )


def find_near(u: Sample, dataset: Dataset, sims: Mapping[str, float]) -> tuple[Sample, Sample]:
    """Most similar same-class sample (excluding u) and most similar other-class sample."""

    hits = [sample for sample in dataset.samples if sample.class_label == u.class_label and sample.id != u.id]
    misses = [sample for sample in dataset.samples if sample.class_label != u.class_label]
    if not hits:
        raise DegenerateDatasetError(f"class {u.class_label!r} has no sample besides {u.id!r}")
    if not misses:
        raise DegenerateDatasetError(f"no sample outside class {u.class_label!r}")

    def score(sample: Sample) -> float:
        return sims[sample.id]

    return (
        argmax_by_position(hits, score),
        argmax_by_position(misses, score),
    )


def run(dataset: Dataset, cfg: RunConfig, replay: ReplayTable | None = None) -> RunReport:
    dataset.ensure_two_classes()
    if cfg.mode == "replay" and replay is None:
        raise ReplayIncompleteError("replay mode needs a replay table")

    T = cfg.iterations or dataset.M
    seed = cfg.seed
    if seed is None and (cfg.mode == "sampled" or cfg.policy == "random"):
        seed = fresh_seed()

    m, n = register_widths(dataset.M, dataset.N)
    encoded_width = m + n + 2
    swap_test_width = 2 * encoded_width + 1
    encoder: SampleEncoder | None = None
    if cfg.mode != "replay":
        if swap_test_width > settings.max_qubits:
            raise SimulationConfigError(
                f"swap test needs {swap_test_width} qubits, limit is {settings.max_qubits}"
            )
        encoder = SampleEncoder(dataset.samples, mode="sampled" if cfg.mode == "sampled" else "exact", seed=seed)
        for sample in dataset.samples:
            encoder.encode(sample)

    pick = sample_picker(dataset, cfg.policy, seed)
    workers = cfg.workers or settings.similarity_workers
    logger.info(
        "Quantum Relief run: mode=%s policy=%s T=%d M=%d N=%d seed=%s",
        cfg.mode,
        cfg.policy,
        T,
        dataset.M,
        dataset.N,
        seed,
    )

    wt = WeightVector.zeros(dataset.N)
    records: list[IterationRecord] = []
    gates_applied = 0
    total_shots = 0
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="qrelief-sim") as pool:
        for t in range(1, T + 1):
            u = pick(t)
            others = [sample for sample in dataset.samples if sample.id != u.id]

            def evaluate(v: Sample, t: int = t, u: Sample = u) -> SimilarityEstimate:
                rng = spawn_rng(seed, SHOT_STREAM, t, dataset.position(v.id)) if cfg.mode == "sampled" else None
                return similarity(u, v, cfg, rng, replay, iteration=t, encoder=encoder)

            estimates = list(pool.map(evaluate, others))
            sims = {estimate.other_id: estimate.similarity for estimate in estimates}
            near_hit, near_miss = find_near(u, dataset, sims)
            wt = update_weights(wt, u, near_hit, near_miss)
            gates_applied += sum(estimate.gate_count for estimate in estimates)
            total_shots += sum(estimate.shots or 0 for estimate in estimates)
            logger.debug("t=%d u=%s near_hit=%s near_miss=%s wt=%s", t, u.id, near_hit.id, near_miss.id, wt.wt)

            records.append(
                IterationRecord(
                    t=t,
                    u_id=u.id,
                    similarities=sims,
                    probabilities={estimate.other_id: estimate.p1 for estimate in estimates},
                    near_hit_id=near_hit.id,
                    near_miss_id=near_miss.id,
                    wt=list(wt.wt),
                )
            )

    wt_mean, selected = select_features(wt, T, cfg.tau)
    logger.info("Quantum Relief selected %s", [dataset.feature_names[i] for i in selected])
    return RunReport(
        kind="quantum",
        mode=cfg.mode,
        policy=cfg.policy,
        seed=seed,
        shots=cfg.shots if cfg.mode == "sampled" else None,
        tau=cfg.tau,
        iterations=T,
        feature_names=list(dataset.feature_names),
        sample_ids=[sample.id for sample in dataset.samples],
        class_labels=list(dataset.class_labels),
        records=records,
        wt=list(wt.wt),
        wt_mean=list(wt_mean),
        selected=list(selected),
        selected_names=[dataset.feature_names[i] for i in selected],
        resources=Resources(
            qubits_used=swap_test_width,
            gates_applied=gates_applied + (encoder.gate_count if encoder else 0),
            total_shots=total_shots,
            prep_attempts=encoder.prep_attempts if encoder else 0,
            similarity_evaluations=T * (dataset.M - 1),
            storage_qubits=dataset.M * encoded_width,
            storage_bits=dataset.M * dataset.N,
        ),
    )
