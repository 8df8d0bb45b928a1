"""
Run reports: provenance metadata, check outcomes and result tables.

CSV output starts with `# key: value` provenance lines followed by a header
row and the data rows of the primary table; extra tables go to sibling files
named <stem>_<table>.csv. JSON output holds everything in one document.
Nothing time-dependent is written, so identical runs give identical files.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import mpmath
import numpy as np
import scipy

from . import __version__

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


def library_versions() -> dict:
    return {
        "package": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "mpmath": mpmath.__version__,
    }


def format_value(value: Any) -> str:
    """Round-trippable text for one cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (list, tuple)):
        return " ".join(format_value(v) for v in value)
    if value is None:
        return ""
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    return value


@dataclass
class Check:
    """One numerical check: |value − reference| against tolerance, or a bare value."""
    name: str
    value: float
    tolerance: float
    reference: Optional[float] = None
    relative: bool = False

    @property
    def error(self) -> float:
        if self.reference is None:
            return abs(self.value)
        error = abs(self.value - self.reference)
        if self.relative:
            error /= max(abs(self.reference), 1e-300)
        return error

    @property
    def passed(self) -> bool:
        return bool(self.error < self.tolerance)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "reference": self.reference,
            "tolerance": self.tolerance,
            "relative": self.relative,
            "passed": self.passed,
        }


@dataclass
class Report:
    """Everything one command emits."""
    command: str
    params: dict
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    extra_tables: dict = field(default_factory=dict)    # name -> (columns, rows)

    def add_check(self, name: str, value: float, tolerance: float,
                  reference: Optional[float] = None, relative: bool = False) -> Check:
        check = Check(name, float(value), tolerance, reference, relative)
        self.checks.append(check)
        logger.info(f"check {name}: {'ok' if check.passed else 'FAILED'} (error {check.error:.3e})")
        return check

    def add_table(self, name: str, columns: list[str], rows: list[dict]):
        self.extra_tables[name] = (list(columns), list(rows))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check_outcomes(self) -> dict:
        return {c.name: c.passed for c in self.checks}

    def metadata(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "tolerances": self.tolerances,
            "versions": library_versions(),
        }

    # ── CSV ──────────────────────────────────────────────────────────────

    def _header_lines(self) -> list[str]:
        lines = [f"# command: {self.command}"]
        for key in sorted(self.params):
            lines.append(f"# param.{key}: {format_value(self.params[key])}")
        for key in sorted(self.tolerances):
            lines.append(f"# tolerance.{key}: {format_value(self.tolerances[key])}")
        for key, value in library_versions().items():
            lines.append(f"# version.{key}: {value}")
        for check in self.checks:
            status = "pass" if check.passed else "FAIL"
            lines.append(
                f"# check.{check.name}: {status} value={format_value(check.value)} "
                f"reference={format_value(check.reference)} tolerance={format_value(check.tolerance)}"
            )
        return lines

    @staticmethod
    def _table_csv(columns: list[str], rows: list[dict]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(col)) for col in columns])
        return buffer.getvalue()

    def to_csv(self) -> str:
        return "\n".join(self._header_lines()) + "\n" + self._table_csv(self.columns, self.rows)

    def table_csv(self, name: str) -> str:
        columns, rows = self.extra_tables[name]
        return "\n".join(self._header_lines()) + "\n" + self._table_csv(columns, rows)

    # ── JSON ─────────────────────────────────────────────────────────────

    def to_json(self) -> str:
        document = {
            "metadata": self.metadata(),
            "checks": {c.name: c.to_dict() for c in self.checks},
            "rows": self.rows,
            "tables": {name: rows for name, (_, rows) in self.extra_tables.items()},
        }
        return json.dumps(_jsonable(document), sort_keys=True, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        if fmt not in FORMATS:
            raise ValueError(f"Unsupported format: {fmt}")
        return self.to_csv() if fmt == "csv" else self.to_json()

    def write(self, path: str, fmt: str = "csv") -> list[Path]:
        """Write the report; returns every file written."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(fmt))
        written = [path]
        if fmt == "csv":
            for name in self.extra_tables:
                sibling = path.with_name(f"{path.stem}_{name}{path.suffix or '.csv'}")
                sibling.write_text(self.table_csv(name))
                written.append(sibling)
        logger.info(f"Wrote {', '.join(str(p) for p in written)}")
        return written
