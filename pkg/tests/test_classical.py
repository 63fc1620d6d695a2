import numpy as np
import pytest

from app.datasets.synthetic import random_dataset
from app.relief.classical import distance_table, nearest, relief_run, squared_distance
from app.relief.dataset import Dataset, DegenerateDatasetError, Sample
from app.relief.weights import diff


@pytest.mark.parametrize("seed", range(5))
def test_squared_distance_equals_sum_of_squared_diffs(seed: int) -> None:
    dataset = random_dataset(8, 7, seed=seed)
    for u in dataset.samples:
        for v in dataset.samples:
            expected = sum(diff(i, u, v) ** 2 for i in range(dataset.N))
            assert squared_distance(u, v) == expected


def test_distance_table_is_symmetric_with_zero_diagonal(example_dataset) -> None:
    table = distance_table(example_dataset)

    assert np.array_equal(table.distances, table.distances.T)
    assert np.all(np.diag(table.distances) == 0)
    assert table.get("S0", "S3") == 3
    with pytest.raises(ValueError):
        table.distances[0, 0] = 1


def test_nearest_breaks_ties_by_position(example_dataset) -> None:
    s0, s1, s2, s3 = example_dataset.samples

    assert nearest(s0, [s2, s3]).id == "S2"
    assert nearest(s1, [s2, s3]).id == "S3"
    with pytest.raises(DegenerateDatasetError):
        nearest(s0, [s0])


def test_relief_run_records_distances_and_resources(example_dataset) -> None:
    report = relief_run(example_dataset)

    assert report.kind == "classical"
    assert report.iterations == 4
    assert report.records[0].distances == {"S1": 1, "S2": 2, "S3": 3}
    assert report.resources.distance_evaluations == 12
    assert report.resources.storage_bits == 16
    assert report.seed is None


def test_relief_run_tau_above_one_selects_nothing(example_dataset) -> None:
    report = relief_run(example_dataset, tau=1.01)

    assert report.selected == []


def test_relief_run_random_policy_draws_and_echoes_seed(example_dataset) -> None:
    report = relief_run(example_dataset, T=5, policy="random")

    assert report.seed is not None
    again = relief_run(example_dataset, T=5, policy="random", seed=report.seed)
    assert [record.u_id for record in again.records] == [record.u_id for record in report.records]


def test_relief_run_rejects_zero_iterations(example_dataset) -> None:
    with pytest.raises(ValueError):
        relief_run(example_dataset, T=0)


def test_relief_run_rejects_singleton_class() -> None:
    dataset = Dataset(
        feature_names=("F0",),
        samples=(
            Sample(id="a", features=(1,), class_label="A"),
            Sample(id="b", features=(0,), class_label="B"),
            Sample(id="c", features=(1,), class_label="B"),
        ),
    )

    with pytest.raises(DegenerateDatasetError):
        relief_run(dataset)


def test_relief_run_with_duplicate_same_class_samples() -> None:
    dataset = Dataset(
        feature_names=("F0", "F1", "F2"),
        samples=(
            Sample(id="T0", features=(1, 0, 1), class_label="A"),
            Sample(id="T1", features=(1, 0, 1), class_label="A"),
            Sample(id="O", features=(0, 1, 1), class_label="B"),
        ),
    )

    report = relief_run(dataset, T=1)

    assert report.records[0].near_hit_id == "T1"
    assert report.records[0].near_miss_id == "O"
    assert report.wt == [1, 1, 0]


@pytest.mark.parametrize("seed", range(3))
def test_relief_run_weights_bounded_and_round_robin_ignores_seed(seed: int) -> None:
    dataset = random_dataset(7, 5, seed=seed)

    report = relief_run(dataset, T=14, seed=seed)

    assert report.wt == relief_run(dataset, T=14, seed=seed + 100).wt
    for record in report.records:
        assert all(abs(value) <= record.t for value in record.wt)
