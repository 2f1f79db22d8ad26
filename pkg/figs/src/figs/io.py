"""Reader for the CSV/JSON tables the ergokit CLI emits.

This package deliberately re-parses the documented file format instead of
importing the simulation code: every plotted number must come from a file
cell (or the closed-form reference value derived from the file's metadata).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

METADATA_PREFIX = "# ergokit-metadata: "


@dataclass(frozen=True)
class Table:
    metadata: dict
    columns: list[str]
    rows: list[dict[str, float]]

    def column(self, name: str) -> list[float]:
        if name not in self.columns:
            raise ValueError(f"missing column {name!r}")
        return [row[name] for row in self.rows]

    @property
    def experiment(self) -> str:
        return str(self.metadata.get("experiment", ""))


def read_table(path: str) -> Table:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        metadata = payload.get("metadata", {})
        columns = list(metadata.get("columns", []))
        rows = [dict(r) for r in payload.get("records", [])]
        return Table(metadata=metadata, columns=columns, rows=rows)
    metadata: dict = {}
    columns: list[str] = []
    rows: list[dict[str, float]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.startswith(METADATA_PREFIX):
                metadata = json.loads(line[len(METADATA_PREFIX):])
            continue
        if not columns:
            columns = line.split(",")
            continue
        cells = line.split(",")
        rows.append({c: float(v) for c, v in zip(columns, cells)})
    return Table(metadata=metadata, columns=columns, rows=rows)


def require(table: Table, experiment: str, columns: tuple[str, ...], path: str) -> None:
    """Validate a table against the schema a figure expects."""
    if table.experiment != experiment:
        raise ValueError(
            f"{path}: expected a {experiment!r} table, found {table.experiment!r}"
        )
    for col in columns:
        if col not in table.columns:
            raise ValueError(f"{path}: missing column {col!r}")
    if not table.rows:
        raise ValueError(f"{path}: table has no data rows")
