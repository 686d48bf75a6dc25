"""Shared store for acceptance outcomes, printed at the end of the session."""

RESULTS: dict[int, tuple[bool, str]] = {}
