from __future__ import annotations

import os
from pathlib import Path

# Keep test database and log file isolated from the default runtime files.
os.environ.setdefault("QRELIEF_SQLITE_PATH", "./.pytest-qrelief.db")
os.environ.setdefault("QRELIEF_LOG_PATH", "./.pytest-qrelief.log")

import pytest  # noqa: E402

from app.datasets import EXAMPLE_DATASET, EXAMPLE_REPLAY  # noqa: E402
from app.datasets.parser import load_dataset  # noqa: E402
from app.datasets.replay import load_replay  # noqa: E402
from app.db import SessionLocal, init_db  # noqa: E402
from app.models import Run  # noqa: E402

_DB_PATH = Path(os.environ["QRELIEF_SQLITE_PATH"])
_LOG_PATH = Path(os.environ["QRELIEF_LOG_PATH"])


def pytest_sessionstart(session):
    init_db()


def pytest_sessionfinish(session, exitstatus):
    _DB_PATH.unlink(missing_ok=True)
    _LOG_PATH.unlink(missing_ok=True)


@pytest.fixture
def example_dataset():
    return load_dataset(EXAMPLE_DATASET)


@pytest.fixture
def example_replay():
    return load_replay(EXAMPLE_REPLAY)


@pytest.fixture
def clean_runs():
    session = SessionLocal()
    try:
        session.query(Run).delete()
        session.commit()
    finally:
        session.close()
    yield
