"""Bundled ward-shape tables.

These are synthetic placeholder shapes (see the file headers): they sketch
plausible ward profiles so the tooling can be exercised end to end, and are
not derived from clinical data.  Real deployments should load tables in the
same format built from their own records.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from pragen.distributions import EmpiricalTable, load_empirical_table, parse_empirical_table


def builtin_table_ids() -> list[str]:
    pkg = resources.files(__name__)
    return sorted(
        entry.name.removesuffix(".table")
        for entry in pkg.iterdir()
        if entry.name.endswith(".table")
    )


def load_builtin_table(table_id: str) -> EmpiricalTable:
    pkg = resources.files(__name__)
    entry = pkg.joinpath(f"{table_id}.table")
    if not entry.is_file():
        raise KeyError(f"unknown builtin table {table_id!r}")
    return parse_empirical_table(entry.read_text(encoding="utf-8"), label=table_id)


def resolve_table(ref: str, base_dir: str | Path | None = None) -> EmpiricalTable:
    """Resolve a table reference: builtin id first, then filesystem path
    (relative paths resolved against base_dir)."""
    if "/" not in ref and "\\" not in ref and not ref.endswith(".table"):
        try:
            return load_builtin_table(ref)
        except KeyError:
            pass
    path = Path(ref)
    if not path.is_absolute() and base_dir is not None:
        path = Path(base_dir) / path
    if not path.is_file():
        raise FileNotFoundError(f"table {ref!r} is neither a builtin id nor a readable file")
    return load_empirical_table(path)
