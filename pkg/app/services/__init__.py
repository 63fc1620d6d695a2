"""Run orchestration and history storage."""
