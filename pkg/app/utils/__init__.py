"""Shared utility helpers package."""
