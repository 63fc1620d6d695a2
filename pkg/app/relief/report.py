from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from app.config import SelectionPolicy

RunKind = Literal["quantum", "classical"]
RunMode = Literal["exact", "sampled", "replay", "classical"]


class IterationRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    t: int = Field(ge=1)
    u_id: str
    similarities: dict[str, float] = Field(default_factory=dict)
    probabilities: dict[str, float] = Field(default_factory=dict)
    distances: dict[str, int] = Field(default_factory=dict)
    near_hit_id: str
    near_miss_id: str
    wt: list[float]


class Resources(BaseModel):
    model_config = ConfigDict(extra="forbid")

    qubits_used: int = 0
    gates_applied: int = 0
    total_shots: int = 0
    prep_attempts: int = 0
    similarity_evaluations: int = 0
    distance_evaluations: int = 0
    storage_qubits: int = 0
    storage_bits: int = 0


class RunReport(BaseModel):
    """Everything needed to audit and reproduce one Relief run."""

    model_config = ConfigDict(extra="forbid")

    kind: RunKind
    mode: RunMode
    policy: SelectionPolicy
    seed: int | None = None
    shots: int | None = None
    tau: float
    iterations: int = Field(ge=1)
    feature_names: list[str]
    sample_ids: list[str]
    class_labels: list[str]
    records: list[IterationRecord]
    wt: list[float]
    wt_mean: list[float]
    selected: list[int]
    selected_names: list[str]
    resources: Resources = Field(default_factory=Resources)


class ComparisonSummary(BaseModel):
    model_config = ConfigDict(extra="forbid")

    selected_equal: bool
    quantum_selected: list[str]
    classical_selected: list[str]
    wt_mean_delta: list[float]
    quantum: RunReport
    classical: RunReport


def compare_reports(quantum: RunReport, classical: RunReport) -> ComparisonSummary:
    """Agreement between a quantum and a classical run on the same dataset."""

    if quantum.feature_names != classical.feature_names:
        raise ValueError("reports cover different feature sets")
    return ComparisonSummary(
        selected_equal=set(quantum.selected) == set(classical.selected),
        quantum_selected=quantum.selected_names,
        classical_selected=classical.selected_names,
        wt_mean_delta=[q - c for q, c in zip(quantum.wt_mean, classical.wt_mean)],
        quantum=quantum,
        classical=classical,
    )
