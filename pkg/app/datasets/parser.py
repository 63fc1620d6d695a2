"""CSV datasets: header ``id,class,<feature names...>``, one row per sample, cells 0/1."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from pydantic import ValidationError

from app.relief.dataset import Dataset, Sample

_HEADER_PREFIX = ("id", "class")


class DatasetParseError(ValueError):
    """Raised when a dataset file cannot be parsed; names the row and column."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None) -> None:
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column}")
        super().__init__(f"{', '.join(location)}: {message}" if location else message)
        self.row = row
        self.column = column


def parse_dataset(text: str) -> Dataset:
    """Parse dataset CSV text; rows and columns in errors are 1-based, header is row 1."""

    reader = csv.reader(io.StringIO(text))
    rows: list[tuple[int, list[str]]] = []
    try:
        for number, row in enumerate(reader, start=1):
            if any(cell.strip() for cell in row):
                rows.append((number, [cell.strip() for cell in row]))
    except csv.Error as exc:
        raise DatasetParseError(str(exc), row=reader.line_num) from exc
    if not rows:
        raise DatasetParseError("dataset is empty")

    header_row, header = rows[0]
    if len(header) < 3 or tuple(cell.lower() for cell in header[:2]) != _HEADER_PREFIX:
        raise DatasetParseError("header must be id,class,<feature names...>", row=header_row)
    feature_names = header[2:]
    for column, name in enumerate(feature_names, start=3):
        if not name:
            raise DatasetParseError("feature name is empty", row=header_row, column=column)
    if len(set(feature_names)) != len(feature_names):
        raise DatasetParseError("feature names must be unique", row=header_row)

    samples: list[Sample] = []
    seen_ids: set[str] = set()
    labels: list[str] = []
    for number, cells in rows[1:]:
        if len(cells) != len(header):
            raise DatasetParseError(f"expected {len(header)} cells, got {len(cells)}", row=number)

        sample_id, label = cells[0], cells[1]
        if not sample_id:
            raise DatasetParseError("id is empty", row=number, column=1)
        if sample_id in seen_ids:
            raise DatasetParseError(f"duplicate id {sample_id!r}", row=number, column=1)
        if not label:
            raise DatasetParseError("class is empty", row=number, column=2)
        if label not in labels:
            if len(labels) == 2:
                raise DatasetParseError(f"third class label {label!r}; only two classes allowed", row=number, column=2)
            labels.append(label)

        features: list[int] = []
        for column, cell in enumerate(cells[2:], start=3):
            if cell not in ("0", "1"):
                raise DatasetParseError(
                    f"feature {feature_names[column - 3]!r} must be 0 or 1, got {cell!r}",
                    row=number,
                    column=column,
                )
            features.append(int(cell))

        seen_ids.add(sample_id)
        samples.append(Sample(id=sample_id, features=tuple(features), class_label=label))

    if not samples:
        raise DatasetParseError("dataset has no samples")

    try:
        dataset = Dataset(feature_names=tuple(feature_names), samples=tuple(samples))
    except ValidationError as exc:
        raise DatasetParseError(str(exc)) from exc

    dataset.ensure_two_classes()
    return dataset


def load_dataset(path: str | Path) -> Dataset:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise DatasetParseError(f"file is not valid UTF-8 (byte {exc.start})") from exc
    return parse_dataset(text)


def format_dataset(dataset: Dataset) -> str:
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["id", "class", *dataset.feature_names])
    for sample in dataset.samples:
        writer.writerow([sample.id, sample.class_label, *sample.features])
    return stream.getvalue()


def dump_dataset(dataset: Dataset, path: str | Path) -> None:
    Path(path).write_text(format_dataset(dataset), encoding="utf-8")
