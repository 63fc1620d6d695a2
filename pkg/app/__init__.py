"""Quantum Relief feature selection: simulator, pipelines, CLI and HTTP API."""
