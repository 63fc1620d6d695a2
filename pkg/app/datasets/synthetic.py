from __future__ import annotations

from app.quantum.rng import make_rng
from app.relief.dataset import Dataset, Sample


def random_dataset(M: int, N: int, seed: int, labels: tuple[str, str] = ("A", "B")) -> Dataset:
    """Random binary dataset; the first ceil(M/2) samples form class A."""

    if M < 2 or N < 1:
        raise ValueError("random dataset needs M >= 2 and N >= 1")
    rng = make_rng(seed)
    bits = rng.integers(0, 2, size=(M, N))
    split = (M + 1) // 2
    samples = tuple(
        Sample(
            id=f"S{j}",
            features=tuple(int(bit) for bit in bits[j]),
            class_label=labels[0] if j < split else labels[1],
        )
        for j in range(M)
    )
    return Dataset(feature_names=tuple(f"F{i}" for i in range(N)), samples=samples)
