from __future__ import annotations

import logging

import pytest

from app.relief.quantum import RunConfig
from app.utils import preflight


def test_collect_preflight_warnings_for_missing_history_directory(monkeypatch: pytest.MonkeyPatch, tmp_path) -> None:
    monkeypatch.setattr(preflight.settings, "history_enabled", True)
    monkeypatch.setattr(preflight.settings, "sqlite_path", str(tmp_path / "missing" / "qrelief.db"))

    warnings = preflight.collect_preflight_warnings()

    assert any("does not exist" in warning for warning in warnings)


def test_history_directory_is_ignored_when_history_disabled(monkeypatch: pytest.MonkeyPatch, tmp_path) -> None:
    monkeypatch.setattr(preflight.settings, "history_enabled", False)
    monkeypatch.setattr(preflight.settings, "sqlite_path", str(tmp_path / "missing" / "qrelief.db"))

    assert preflight.collect_preflight_warnings() == []


def test_collect_preflight_warnings_for_run(monkeypatch: pytest.MonkeyPatch, example_dataset) -> None:
    monkeypatch.setattr(preflight.settings, "history_enabled", False)
    monkeypatch.setattr(preflight.settings, "max_qubits", 10)

    warnings = preflight.collect_preflight_warnings(
        example_dataset, RunConfig(mode="sampled", shots=100, iterations=2)
    )

    assert any("13 qubits" in warning for warning in warnings)
    assert any("100 shots" in warning for warning in warnings)
    assert any("fewer than all 4 samples" in warning for warning in warnings)


def test_replay_run_has_no_width_warning(monkeypatch: pytest.MonkeyPatch, example_dataset) -> None:
    monkeypatch.setattr(preflight.settings, "history_enabled", False)
    monkeypatch.setattr(preflight.settings, "max_qubits", 10)

    assert preflight.collect_preflight_warnings(example_dataset, RunConfig(mode="replay")) == []


def test_log_preflight_warnings(monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture) -> None:
    monkeypatch.setattr(preflight, "collect_preflight_warnings", lambda *_args: ["disk full"])

    with caplog.at_level(logging.WARNING, logger="qrelief.preflight"):
        preflight.log_preflight_warnings()

    assert "Preflight: disk full" in caplog.text


def test_configure_logging_sets_package_level_only(monkeypatch: pytest.MonkeyPatch, tmp_path) -> None:
    from app.utils.logging import PACKAGE_LOGGER, configure_logging

    root = logging.getLogger()
    monkeypatch.setattr(root, "handlers", [logging.NullHandler()])
    root_level = root.level
    package = logging.getLogger(PACKAGE_LOGGER)
    try:
        root.setLevel(logging.WARNING)
        configure_logging(str(tmp_path / "qrelief.log"), logging.DEBUG)

        assert package.level == logging.DEBUG
        assert root.level == logging.WARNING
        assert logging.getLogger("qrelief.quantum").isEnabledFor(logging.DEBUG)
    finally:
        package.setLevel(logging.NOTSET)
        root.setLevel(root_level)
