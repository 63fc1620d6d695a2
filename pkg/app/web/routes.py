from __future__ import annotations

from typing import Literal

from fastapi import APIRouter, Depends, File, Form, HTTPException, Query, UploadFile
from pydantic import ValidationError
from sqlalchemy.orm import Session

from app.config import SelectionPolicy, settings
from app.datasets import EXAMPLE_DATASET, EXAMPLE_REPLAY
from app.datasets.parser import DatasetParseError, load_dataset, parse_dataset
from app.datasets.replay import ReplayIncompleteError, ReplayParseError, ReplayTable, load_replay, parse_replay
from app.db import get_db_session
from app.models import Run
from app.quantum.circuits import EncodingError, PreparationFailedError
from app.quantum.state import ImpossiblePostselectionError, SimulationConfigError
from app.relief.dataset import DegenerateDatasetError
from app.relief.quantum import RunConfig, SimilarityMode
from app.services.runner import RunKind, RunService

router = APIRouter()
run_service = RunService()

MAX_UPLOAD_BYTES = 1_000_000

DATA_ERRORS = (
    DatasetParseError,
    ReplayParseError,
    DegenerateDatasetError,
    EncodingError,
    SimulationConfigError,
    ValidationError,
)
RUNTIME_ERRORS = (ReplayIncompleteError, ImpossiblePostselectionError, PreparationFailedError)


def _serialize_run(run: Run, include_report: bool = False) -> dict[str, object]:
    payload: dict[str, object] = {
        "id": run.id,
        "kind": run.kind,
        "mode": run.mode,
        "status": run.status,
        "dataset_name": run.dataset_name,
        "seed": run.seed,
        "selected": run.selected,
        "error_message": run.error_message,
        "created_at": run.created_at.isoformat() if run.created_at else None,
        "finished_at": run.finished_at.isoformat() if run.finished_at else None,
    }
    if include_report:
        payload["config"] = run.config
        payload["report"] = run.report
    return payload


async def _read_upload(upload: UploadFile, label: str) -> str:
    payload = await upload.read()
    if len(payload) > MAX_UPLOAD_BYTES:
        raise HTTPException(status_code=413, detail=f"{label} file is too large (max {MAX_UPLOAD_BYTES} bytes)")
    try:
        return payload.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise HTTPException(status_code=422, detail=f"{label} file is not UTF-8") from exc


@router.post("/api/runs")
async def create_run(
    dataset_file: UploadFile = File(...),
    replay_file: UploadFile | None = File(default=None),
    kind: RunKind = Form(default="quantum"),
    mode: SimilarityMode = Form(default="exact"),
    tau: float = Form(default=settings.default_tau),
    iterations: int | None = Form(default=None),
    policy: SelectionPolicy = Form(default=settings.default_policy),
    shots: int = Form(default=settings.default_shots),
    seed: int | None = Form(default=None),
    db: Session = Depends(get_db_session),
):
    try:
        dataset = parse_dataset(await _read_upload(dataset_file, "Dataset"))
        replay: ReplayTable | None = None
        if replay_file is not None:
            replay = parse_replay(await _read_upload(replay_file, "Replay"))
        cfg = RunConfig(iterations=iterations, tau=tau, mode=mode, shots=shots, seed=seed, policy=policy)
    except DATA_ERRORS as exc:
        raise HTTPException(status_code=422, detail=f"Invalid input: {exc}") from exc

    try:
        _, run = run_service.execute(
            kind, dataset, cfg, replay, db=db, dataset_name=dataset_file.filename or "upload.csv"
        )
    except DATA_ERRORS as exc:
        raise HTTPException(status_code=422, detail=f"Invalid input: {exc}") from exc
    except RUNTIME_ERRORS as exc:
        raise HTTPException(status_code=409, detail=f"Run failed: {exc}") from exc

    return _serialize_run(run, include_report=True)


@router.get("/api/runs")
def list_runs(
    limit: int = Query(default=50, ge=1, le=500),
    db: Session = Depends(get_db_session),
):
    runs = run_service.history.list_runs(db, limit=limit)
    return {"items": [_serialize_run(run) for run in runs], "total": len(runs)}


@router.get("/api/runs/{run_id}")
def get_run(run_id: int, db: Session = Depends(get_db_session)):
    run = run_service.history.get_run(db, run_id)
    if run is None:
        raise HTTPException(status_code=404, detail="Run not found")
    return _serialize_run(run, include_report=True)


@router.get("/api/example")
def worked_example(kind: Literal["quantum", "compare"] = Query(default="quantum")):
    """Replays the bundled four-sample example with its recorded probabilities."""

    cfg = RunConfig(mode="replay", tau=0.5)
    result, _ = run_service.execute(kind, load_dataset(EXAMPLE_DATASET), cfg, load_replay(EXAMPLE_REPLAY))
    return result.model_dump(mode="json")
