"""Command line entry point: ``qrelief run|classical|compare|history|serve``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn

from pydantic import ValidationError

from app.config import settings
from app.datasets import EXAMPLE_DATASET, EXAMPLE_REPLAY
from app.datasets.parser import DatasetParseError, load_dataset
from app.datasets.replay import ReplayIncompleteError, ReplayParseError, ReplayTable, load_replay
from app.datasets.reports import save_report
from app.quantum.circuits import EncodingError, PreparationFailedError
from app.quantum.state import ImpossiblePostselectionError, SimulationConfigError
from app.relief.dataset import DegenerateDatasetError
from app.relief.quantum import RunConfig
from app.services.runner import RunKind, RunService
from app.utils.logging import configure_logging

logger = logging.getLogger("qrelief.cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3

DATA_ERRORS = (
    DatasetParseError,
    ReplayParseError,
    DegenerateDatasetError,
    EncodingError,
    SimulationConfigError,
    ValidationError,
    OSError,
)
RUNTIME_ERRORS = (ReplayIncompleteError, ImpossiblePostselectionError, PreparationFailedError)


class UsageError(Exception):
    """Unknown flag or missing required input on the command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _add_run_options(parser: argparse.ArgumentParser, *, quantum: bool) -> None:
    parser.add_argument("--dataset", type=Path, help="Dataset CSV: id,class,<features...>.")
    parser.add_argument("--example", action="store_true", help="Use the bundled four-sample example.")
    parser.add_argument("--tau", type=float, default=settings.default_tau, help="Relevance threshold.")
    parser.add_argument("--iterations", type=int, default=None, help="Iterations T (default: M).")
    parser.add_argument("--policy", choices=("round-robin", "random"), default=settings.default_policy)
    parser.add_argument("--seed", type=int, default=None, help="Seed for picks and shots (default: drawn).")
    parser.add_argument("--report", type=Path, default=None, help="Also write the JSON report here.")
    parser.add_argument("--save", action="store_true", help="Store the run in the history database.")
    if quantum:
        parser.add_argument("--mode", choices=("exact", "sampled", "replay"), default="exact")
        parser.add_argument("--replay", type=Path, default=None, help="Replay JSON with recorded p1 values.")
        parser.add_argument("--shots", type=int, default=settings.default_shots)
        parser.add_argument("--workers", type=int, default=None, help="Threads per iteration.")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qrelief", description="Relief feature selection with swap-test similarities.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log per-iteration choices.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_run_options(commands.add_parser("run", help="Quantum Relief."), quantum=True)
    _add_run_options(commands.add_parser("classical", help="Classical Relief baseline."), quantum=False)
    _add_run_options(commands.add_parser("compare", help="Run both and summarize agreement."), quantum=True)

    history = commands.add_parser("history", help="List stored runs.")
    history.add_argument("--limit", type=int, default=20)

    serve = commands.add_parser("serve", help="Start the HTTP API.")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _inputs(args: argparse.Namespace) -> tuple[Path, ReplayTable | None]:
    if args.example and args.dataset is not None:
        raise UsageError("--example and --dataset are mutually exclusive")
    if not args.example and args.dataset is None:
        raise UsageError("--dataset is required (or pass --example)")
    dataset_path = EXAMPLE_DATASET if args.example else args.dataset

    replay_path = getattr(args, "replay", None)
    if getattr(args, "mode", None) == "replay" and replay_path is None:
        if not args.example:
            raise UsageError("--mode replay needs --replay")
        replay_path = EXAMPLE_REPLAY
    return dataset_path, load_replay(replay_path) if replay_path is not None else None


def _run(kind: RunKind, args: argparse.Namespace) -> int:
    dataset_path, replay = _inputs(args)
    dataset = load_dataset(dataset_path)
    cfg = RunConfig(
        iterations=args.iterations,
        tau=args.tau,
        mode=getattr(args, "mode", "exact"),
        shots=getattr(args, "shots", settings.default_shots),
        seed=args.seed,
        policy=args.policy,
        workers=getattr(args, "workers", None),
    )

    service = RunService()
    if args.save or settings.history_enabled:
        from app.db import SessionLocal, init_db

        init_db()
        with SessionLocal() as db:
            result, stored = service.execute(kind, dataset, cfg, replay, db=db, dataset_name=dataset_path.name)
            logger.info("Stored run #%d", stored.id)
    else:
        result, _ = service.execute(kind, dataset, cfg, replay)

    if args.report is not None:
        save_report(result, args.report)
    print(result.model_dump_json(indent=2))
    return EXIT_OK


def _history(args: argparse.Namespace) -> int:
    from app.db import SessionLocal, init_db

    init_db()
    with SessionLocal() as db:
        runs = RunService().history.list_runs(db, limit=args.limit)
        for run in runs:
            print(
                json.dumps(
                    {
                        "id": run.id,
                        "kind": run.kind,
                        "mode": run.mode,
                        "status": run.status,
                        "dataset": run.dataset_name,
                        "seed": run.seed,
                        "selected": run.selected,
                        "created_at": run.created_at.isoformat(),
                    }
                )
            )
    return EXIT_OK


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("app.main:app", host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(settings.log_path, logging.DEBUG if args.verbose or settings.debug else logging.INFO)
    try:
        if args.command == "history":
            return _history(args)
        if args.command == "serve":
            return _serve(args)
        kind: RunKind = "quantum" if args.command == "run" else args.command
        return _run(kind, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except RUNTIME_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
