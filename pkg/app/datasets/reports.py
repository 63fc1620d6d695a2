from __future__ import annotations

from pathlib import Path

from pydantic import BaseModel

from app.relief.report import RunReport


def save_report(report: BaseModel, path: str | Path) -> None:
    """Write a report document as indented JSON (floats keep full precision)."""

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(report.model_dump_json(indent=2), encoding="utf-8")


def load_report(path: str | Path) -> RunReport:
    return RunReport.model_validate_json(Path(path).read_text(encoding="utf-8"))
