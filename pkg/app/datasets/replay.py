"""Recorded ancilla probabilities keyed by (iteration, u, other).

Document shape::

    {"records": [{"iteration": 1, "u": "S0", "other": "S1", "p1": 0.49023438}, ...]}
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError, field_validator

ReplayKey = tuple[int, str, str]


class ReplayParseError(ValueError):
    """Raised when a replay document is malformed."""


class ReplayIncompleteError(LookupError):
    """Raised when a run needs a probability the replay table does not hold."""


class ReplayRecord(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    iteration: int = Field(ge=1)
    u: str = Field(min_length=1)
    other: str = Field(min_length=1)
    p1: float = Field(ge=0.0, le=1.0)

    @field_validator("p1")
    @classmethod
    def validate_p1(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("p1 must be finite")
        return value

    @property
    def key(self) -> ReplayKey:
        return (self.iteration, self.u, self.other)


class ReplayTable(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    records: tuple[ReplayRecord, ...] = ()

    _lookup: dict[ReplayKey, float] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context: object) -> None:
        self._lookup = {record.key: record.p1 for record in self.records}

    def __len__(self) -> int:
        return len(self.records)

    def p1(self, iteration: int, u: str, other: str) -> float:
        try:
            return self._lookup[(iteration, u, other)]
        except KeyError:
            raise ReplayIncompleteError(
                f"replay table has no p1 for iteration {iteration}, u={u}, other={other}"
            ) from None


def parse_replay(text: str) -> ReplayTable:
    """Parse a replay document; blank text yields an empty table."""

    if not text.strip():
        return ReplayTable()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReplayParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc

    raw_records = payload.get("records") if isinstance(payload, dict) else payload
    if not isinstance(raw_records, list):
        raise ReplayParseError("replay document must hold a list of records")

    records: list[ReplayRecord] = []
    seen: set[ReplayKey] = set()
    for position, raw in enumerate(raw_records, start=1):
        try:
            record = ReplayRecord.model_validate(raw)
        except ValidationError as exc:
            raise ReplayParseError(f"record {position}: {exc}") from exc
        if record.key in seen:
            raise ReplayParseError(f"record {position}: duplicate key {record.key}")
        seen.add(record.key)
        records.append(record)
    return ReplayTable(records=tuple(records))


def load_replay(path: str | Path) -> ReplayTable:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ReplayParseError(f"file is not valid UTF-8 (byte {exc.start})") from exc
    return parse_replay(text)


def dump_replay(table: ReplayTable, path: str | Path) -> None:
    Path(path).write_text(table.model_dump_json(indent=2), encoding="utf-8")
