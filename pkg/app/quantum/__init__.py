"""Statevector simulation and circuit builders."""
