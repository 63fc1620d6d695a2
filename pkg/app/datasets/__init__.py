"""Dataset, replay and report file formats."""

from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
EXAMPLE_DATASET = DATA_DIR / "paper_example.csv"
EXAMPLE_REPLAY = DATA_DIR / "paper_table2.json"
