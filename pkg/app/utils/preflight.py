from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import TYPE_CHECKING

from app.config import settings
from app.quantum.circuits import register_widths

if TYPE_CHECKING:
    from app.relief.dataset import Dataset
    from app.relief.quantum import RunConfig

MIN_SAMPLED_SHOTS = 1024


def collect_preflight_warnings(dataset: Dataset | None = None, cfg: RunConfig | None = None) -> list[str]:
    warnings: list[str] = []

    if settings.history_enabled:
        db_path = Path(settings.sqlite_path)
        parent = db_path.parent if str(db_path.parent) else Path(".")
        if not parent.exists():
            warnings.append(f"History directory does not exist and will be created: {parent}")
        elif not os.access(parent, os.W_OK):
            warnings.append(f"History directory is not writable: {parent}")

    if dataset is not None:
        m, n = register_widths(dataset.M, dataset.N)
        width = 2 * (m + n + 2) + 1
        simulated = cfg is None or cfg.mode != "replay"
        if simulated and width > settings.max_qubits:
            warnings.append(
                f"Swap test needs {width} qubits, above QRELIEF_MAX_QUBITS={settings.max_qubits}"
            )
        if cfg is not None and cfg.iterations is not None and cfg.iterations < dataset.M:
            warnings.append(f"{cfg.iterations} iteration(s) visit fewer than all {dataset.M} samples")

    if cfg is not None and cfg.mode == "sampled" and cfg.shots < MIN_SAMPLED_SHOTS:
        warnings.append(f"Sampled mode with {cfg.shots} shots; estimates will be noisy")

    return warnings


def log_preflight_warnings(
    logger: logging.Logger | None = None,
    dataset: Dataset | None = None,
    cfg: RunConfig | None = None,
) -> None:
    active_logger = logger or logging.getLogger("qrelief.preflight")
    for warning in collect_preflight_warnings(dataset, cfg):
        active_logger.warning("Preflight: %s", warning)
