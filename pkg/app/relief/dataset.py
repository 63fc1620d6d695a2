from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator


class DegenerateDatasetError(ValueError):
    """Raised when a dataset cannot supply a Near-hit or a Near-miss."""


class Sample(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str = Field(min_length=1)
    features: tuple[int, ...]
    class_label: str = Field(min_length=1)

    @field_validator("features")
    @classmethod
    def validate_features(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if not value:
            raise ValueError("features must not be empty")
        if any(bit not in (0, 1) for bit in value):
            raise ValueError("features must be 0 or 1")
        return value


class Dataset(BaseModel):
    """Binary samples in two classes; class A is the first label seen."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    feature_names: tuple[str, ...]
    samples: tuple[Sample, ...]

    _class_labels: tuple[str, ...] = PrivateAttr(default=())
    _positions: dict[str, int] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def validate_shape(self) -> Dataset:
        if not self.feature_names:
            raise ValueError("dataset needs at least one feature")
        if not self.samples:
            raise ValueError("dataset needs at least one sample")
        width = len(self.feature_names)
        for sample in self.samples:
            if len(sample.features) != width:
                raise ValueError(f"sample {sample.id!r} has {len(sample.features)} features, expected {width}")
        ids = [sample.id for sample in self.samples]
        if len(set(ids)) != len(ids):
            raise ValueError("sample ids must be unique")
        labels = tuple(dict.fromkeys(sample.class_label for sample in self.samples))
        if len(labels) > 2:
            raise ValueError("dataset must have at most two classes")
        return self

    def model_post_init(self, __context: object) -> None:
        self._class_labels = tuple(dict.fromkeys(sample.class_label for sample in self.samples))
        self._positions = {sample.id: position for position, sample in enumerate(self.samples)}

    @property
    def M(self) -> int:
        return len(self.samples)

    @property
    def N(self) -> int:
        return len(self.feature_names)

    @property
    def class_labels(self) -> tuple[str, ...]:
        return self._class_labels

    def position(self, sample_id: str) -> int:
        return self._positions[sample_id]

    def get(self, sample_id: str) -> Sample:
        return self.samples[self._positions[sample_id]]

    def class_name(self, sample: Sample) -> str:
        return "A" if sample.class_label == self._class_labels[0] else "B"

    def members(self, label: str) -> tuple[Sample, ...]:
        return tuple(sample for sample in self.samples if sample.class_label == label)

    def ensure_two_classes(self) -> None:
        if len(self._class_labels) != 2:
            raise DegenerateDatasetError(
                f"dataset needs two non-empty classes, found {len(self._class_labels)}"
            )

    def with_swapped_labels(self) -> Dataset:
        self.ensure_two_classes()
        first, second = self._class_labels
        relabeled = [
            {
                "id": sample.id,
                "features": sample.features,
                "class_label": second if sample.class_label == first else first,
            }
            for sample in self.samples
        ]
        return Dataset.model_validate({"feature_names": self.feature_names, "samples": relabeled})
