from __future__ import annotations

import logging
from typing import Literal

from sqlalchemy.orm import Session

from app.datasets.replay import ReplayTable
from app.models import Run
from app.relief import quantum
from app.relief.classical import relief_run
from app.relief.dataset import Dataset
from app.relief.quantum import RunConfig
from app.relief.report import ComparisonSummary, RunReport, compare_reports
from app.services.history import HistoryService
from app.utils.preflight import log_preflight_warnings

RunKind = Literal["quantum", "classical", "compare"]

logger = logging.getLogger("qrelief.runner")


class RunService:
    """Runs the quantum and classical pipelines and optionally records them."""

    def __init__(self, history: HistoryService | None = None) -> None:
        self.history = history or HistoryService()

    def quantum(self, dataset: Dataset, cfg: RunConfig, replay: ReplayTable | None = None) -> RunReport:
        log_preflight_warnings(dataset=dataset, cfg=cfg)
        return quantum.run(dataset, cfg, replay)

    def classical(self, dataset: Dataset, cfg: RunConfig) -> RunReport:
        return relief_run(dataset, T=cfg.iterations, tau=cfg.tau, policy=cfg.policy, seed=cfg.seed)

    def compare(self, dataset: Dataset, cfg: RunConfig, replay: ReplayTable | None = None) -> ComparisonSummary:
        quantum_report = self.quantum(dataset, cfg, replay)
        # Random picks replay the quantum run's seed so both pipelines visit the same u sequence.
        classical_cfg = cfg.model_copy(update={"seed": quantum_report.seed})
        summary = compare_reports(quantum_report, self.classical(dataset, classical_cfg))
        logger.info(
            "Comparison: selected_equal=%s quantum=%s classical=%s",
            summary.selected_equal,
            summary.quantum_selected,
            summary.classical_selected,
        )
        return summary

    def execute(
        self,
        kind: RunKind,
        dataset: Dataset,
        cfg: RunConfig,
        replay: ReplayTable | None = None,
        *,
        db: Session | None = None,
        dataset_name: str = "dataset",
    ) -> tuple[RunReport | ComparisonSummary, Run | None]:
        try:
            if kind == "quantum":
                result: RunReport | ComparisonSummary = self.quantum(dataset, cfg, replay)
            elif kind == "classical":
                result = self.classical(dataset, cfg)
            else:
                result = self.compare(dataset, cfg, replay)
        except Exception as exc:
            if db is not None:
                self.history.record_failure(db, kind, cfg, dataset_name, exc)
            raise

        stored = self.history.record(db, kind, result, cfg, dataset_name) if db is not None else None
        return result, stored
