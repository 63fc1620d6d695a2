import json

import pytest

from app import cli
from app.datasets import EXAMPLE_DATASET, EXAMPLE_REPLAY
from app.datasets.reports import load_report


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_run_replay_prints_report(capsys, tmp_path) -> None:
    report_path = tmp_path / "report.json"

    code, out, _ = _run(
        capsys,
        "run",
        "--dataset",
        str(EXAMPLE_DATASET),
        "--mode",
        "replay",
        "--replay",
        str(EXAMPLE_REPLAY),
        "--iterations",
        "4",
        "--report",
        str(report_path),
    )

    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["selected_names"] == ["F0", "F1"]
    assert payload["mode"] == "replay"
    assert load_report(report_path).wt_mean == [1, 1, -0.5, 0]


def test_example_flag_uses_bundled_replay(capsys) -> None:
    code, out, _ = _run(capsys, "run", "--example", "--mode", "replay")

    assert code == cli.EXIT_OK
    assert json.loads(out)["wt"] == [4, 4, -2, 0]


def test_sampled_run_without_seed_echoes_seed(capsys) -> None:
    code, out, _ = _run(capsys, "run", "--example", "--mode", "sampled", "--shots", "128")

    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert isinstance(payload["seed"], int)
    assert payload["shots"] == 128


def test_classical_subcommand(capsys) -> None:
    code, out, _ = _run(capsys, "classical", "--example")

    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["kind"] == "classical"
    assert payload["wt_mean"] == [1, 1, -1, 0]


def test_compare_exact_agrees_on_selection(capsys) -> None:
    code, out, _ = _run(capsys, "compare", "--dataset", str(EXAMPLE_DATASET), "--mode", "exact")

    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["selected_equal"] is True
    assert payload["quantum_selected"] == payload["classical_selected"] == ["F0", "F1"]
    assert payload["wt_mean_delta"] == pytest.approx([0, 0, 0.5, 0])


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--example", "--bogus"],
        ["run"],
        ["run", "--dataset", str(EXAMPLE_DATASET), "--mode", "replay"],
        ["run", "--example", "--dataset", str(EXAMPLE_DATASET)],
        ["run", "--example", "--mode", "quantum"],
        [],
    ],
)
def test_usage_errors_exit_with_one(capsys, argv: list[str]) -> None:
    code, out, err = _run(capsys, *argv)

    assert code == cli.EXIT_USAGE
    assert out == ""
    assert err.startswith("error:")


def test_bad_dataset_exits_with_two(capsys, tmp_path) -> None:
    path = tmp_path / "bad.csv"
    path.write_text("id,class,F0\nS0,A,2\nS1,B,0\n", encoding="utf-8")

    code, _, err = _run(capsys, "run", "--dataset", str(path))

    assert code == cli.EXIT_DATA
    assert "row 2, column 3" in err


def test_missing_dataset_file_exits_with_two(capsys, tmp_path) -> None:
    code, _, _ = _run(capsys, "classical", "--dataset", str(tmp_path / "missing.csv"))

    assert code == cli.EXIT_DATA


def test_incomplete_replay_exits_with_three(capsys, tmp_path) -> None:
    empty = tmp_path / "empty.json"
    empty.write_text("", encoding="utf-8")

    code, _, err = _run(capsys, "run", "--example", "--mode", "replay", "--replay", str(empty))

    assert code == cli.EXIT_RUNTIME
    assert "replay" in err


def test_save_and_history(capsys, clean_runs) -> None:
    code, _, _ = _run(capsys, "classical", "--example", "--save")
    assert code == cli.EXIT_OK

    code, out, _ = _run(capsys, "history", "--limit", "5")

    assert code == cli.EXIT_OK
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[0]["kind"] == "classical"
    assert rows[0]["selected"] == ["F0", "F1"]


def test_dataset_with_nul_byte_exits_with_two(capsys, tmp_path) -> None:
    path = tmp_path / "nul.csv"
    path.write_bytes(b"id,class,F0\nS0,A,1\x00\nS1,B,0\n")

    code, out, err = _run(capsys, "classical", "--dataset", str(path))

    assert code == cli.EXIT_DATA
    assert out == ""
    assert "row 2" in err


def test_dataset_with_invalid_utf8_exits_with_two(capsys, tmp_path) -> None:
    path = tmp_path / "latin1.csv"
    path.write_bytes("id,class,F0\nSé,A,1\nS1,B,0\n".encode("latin-1"))

    code, _, err = _run(capsys, "run", "--dataset", str(path))

    assert code == cli.EXIT_DATA
    assert "UTF-8" in err


def test_replay_with_invalid_utf8_exits_with_two(capsys, tmp_path) -> None:
    path = tmp_path / "table.json"
    path.write_bytes(b'[{"u": "S\xe9"}]')

    code, _, err = _run(capsys, "run", "--example", "--mode", "replay", "--replay", str(path))

    assert code == cli.EXIT_DATA
    assert "UTF-8" in err
