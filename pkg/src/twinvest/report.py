"""Deterministic text formatting shared by CSV emitters and the CLI.

All numeric output uses 12 significant digits so that printed values
re-parse to within 1e-9 of the in-memory ones, and identical runs produce
byte-identical files.
"""

from __future__ import annotations


def format_number(x: float) -> str:
    return f"{float(x):.12g}"


def format_optional(x: float | None) -> str:
    return "" if x is None else format_number(x)


def format_bool(x: bool) -> str:
    return "true" if x else "false"
