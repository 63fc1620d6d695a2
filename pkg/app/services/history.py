from __future__ import annotations

from sqlalchemy.orm import Session

from app.models import Run, utcnow_naive
from app.relief.quantum import RunConfig
from app.relief.report import ComparisonSummary, RunReport


class HistoryService:
    """Stores finished (or failed) runs in the history database."""

    def record(
        self,
        db: Session,
        kind: str,
        result: RunReport | ComparisonSummary,
        cfg: RunConfig,
        dataset_name: str,
    ) -> Run:
        report = result.quantum if isinstance(result, ComparisonSummary) else result
        run = Run(
            kind=kind,
            mode=report.mode,
            status="completed",
            dataset_name=dataset_name,
            seed=str(report.seed) if report.seed is not None else None,
            config=cfg.model_dump(mode="json"),
            report=result.model_dump(mode="json"),
            selected=list(report.selected_names),
            finished_at=utcnow_naive(),
        )
        db.add(run)
        db.commit()
        db.refresh(run)
        return run

    def record_failure(self, db: Session, kind: str, cfg: RunConfig, dataset_name: str, exc: BaseException) -> Run:
        db.rollback()
        run = Run(
            kind=kind,
            mode="classical" if kind == "classical" else cfg.mode,
            status="failed",
            dataset_name=dataset_name,
            seed=str(cfg.seed) if cfg.seed is not None else None,
            config=cfg.model_dump(mode="json"),
            error_message=f"{type(exc).__name__}: {exc}",
            finished_at=utcnow_naive(),
        )
        db.add(run)
        db.commit()
        db.refresh(run)
        return run

    def list_runs(self, db: Session, limit: int = 50) -> list[Run]:
        return db.query(Run).order_by(Run.created_at.desc(), Run.id.desc()).limit(limit).all()

    def get_run(self, db: Session, run_id: int) -> Run | None:
        return db.query(Run).filter(Run.id == run_id).first()
