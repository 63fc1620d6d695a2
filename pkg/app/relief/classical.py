"""Classical Relief: Euclidean nearest Near-hit / Near-miss, same weight update."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from app.config import SelectionPolicy
from app.quantum.rng import fresh_seed
from app.relief.dataset import Dataset, DegenerateDatasetError, Sample
from app.relief.report import IterationRecord, Resources, RunReport
from app.relief.weights import WeightVector, sample_picker, select_features, update_weights

logger = logging.getLogger("qrelief.classical")


def squared_distance(u: Sample, v: Sample) -> int:
    """Squared Euclidean distance; for binary samples this is the Hamming distance."""

    delta = np.asarray(u.features, dtype=np.int64) - np.asarray(v.features, dtype=np.int64)
    return int(np.dot(delta, delta))


@dataclass(frozen=True)
class DistanceTable:
    sample_ids: tuple[str, ...]
    distances: np.ndarray

    def __post_init__(self) -> None:
        self.distances.setflags(write=False)

    def get(self, first: str, second: str) -> int:
        return int(self.distances[self.sample_ids.index(first), self.sample_ids.index(second)])


def distance_table(dataset: Dataset) -> DistanceTable:
    features = np.asarray([sample.features for sample in dataset.samples], dtype=np.int64)
    delta = features[:, None, :] - features[None, :, :]
    return DistanceTable(
        sample_ids=tuple(sample.id for sample in dataset.samples),
        distances=np.einsum("ijk,ijk->ij", delta, delta),
    )


def nearest(u: Sample, pool: Sequence[Sample]) -> Sample:
    """Closest sample of ``pool`` to ``u``; ties go to the earlier pool entry.

    ``pool`` is expected in dataset order and without ``u``.
    """

    candidates = [sample for sample in pool if sample.id != u.id]
    if not candidates:
        raise DegenerateDatasetError(f"no candidate near {u.id!r}")
    return min(candidates, key=lambda sample: squared_distance(u, sample))


def relief_run(
    dataset: Dataset,
    T: int | None = None,
    tau: float = 0.5,
    policy: SelectionPolicy = "round-robin",
    seed: int | None = None,
) -> RunReport:
    dataset.ensure_two_classes()
    T = dataset.M if T is None else T
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    if seed is None and policy == "random":
        seed = fresh_seed()

    table = distance_table(dataset)
    pick = sample_picker(dataset, policy, seed)
    logger.info("Classical Relief run: policy=%s T=%d M=%d N=%d seed=%s", policy, T, dataset.M, dataset.N, seed)

    wt = WeightVector.zeros(dataset.N)
    records: list[IterationRecord] = []
    for t in range(1, T + 1):
        u = pick(t)
        hits = [sample for sample in dataset.samples if sample.class_label == u.class_label and sample.id != u.id]
        misses = [sample for sample in dataset.samples if sample.class_label != u.class_label]
        if not hits:
            raise DegenerateDatasetError(f"class {u.class_label!r} has no sample besides {u.id!r}")

        near_hit = nearest(u, hits)
        near_miss = nearest(u, misses)
        wt = update_weights(wt, u, near_hit, near_miss)
        logger.debug("t=%d u=%s near_hit=%s near_miss=%s wt=%s", t, u.id, near_hit.id, near_miss.id, wt.wt)

        records.append(
            IterationRecord(
                t=t,
                u_id=u.id,
                distances={sample.id: table.get(u.id, sample.id) for sample in dataset.samples if sample.id != u.id},
                near_hit_id=near_hit.id,
                near_miss_id=near_miss.id,
                wt=list(wt.wt),
            )
        )

    wt_mean, selected = select_features(wt, T, tau)
    return RunReport(
        kind="classical",
        mode="classical",
        policy=policy,
        seed=seed,
        tau=tau,
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
            distance_evaluations=T * (dataset.M - 1),
            storage_bits=dataset.M * dataset.N,
        ),
    )
