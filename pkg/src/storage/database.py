"""
Run ledger.

Uses SQLite for simple, file-based persistence of run outcomes and converged
Bethe roots. Output files never depend on what is stored here.
"""
from __future__ import annotations

import sqlite3
import json
from datetime import datetime
from pathlib import Path
from typing import Optional
import os

from ..bethe.state import BetheState
from .models import RunRecord, RootBaseline


class Database:
    """
    SQLite handler for the run ledger.

    Usage:
        db = Database("./data/lab.db")
        db.save_run(record)
        runs = db.get_recent_runs(10)
    """

    def __init__(self, db_path: str = None):
        if db_path is None:
            db_path = os.getenv("LAB_DB_PATH", "./data/lab.db")

        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)

        self.conn = sqlite3.connect(str(self.db_path))
        self.conn.row_factory = sqlite3.Row

        self._create_tables()

    def _create_tables(self):
        cursor = self.conn.cursor()

        cursor.execute("""
            CREATE TABLE IF NOT EXISTS runs (
                id TEXT PRIMARY KEY,
                command TEXT NOT NULL,
                params TEXT NOT NULL,
                checks TEXT NOT NULL,
                passed INTEGER DEFAULT 0,
                output_path TEXT,
                created_at TEXT NOT NULL
            )
        """)

        cursor.execute("""
            CREATE TABLE IF NOT EXISTS root_baselines (
                key TEXT PRIMARY KEY,
                state TEXT NOT NULL,
                gamma REAL NOT NULL,
                lambda0 TEXT NOT NULL,
                lambda1 TEXT NOT NULL,
                residual REAL,
                energy REAL NOT NULL
            )
        """)

        cursor.execute("CREATE INDEX IF NOT EXISTS idx_runs_command ON runs(command)")
        cursor.execute("CREATE INDEX IF NOT EXISTS idx_runs_created ON runs(created_at)")
        cursor.execute("CREATE INDEX IF NOT EXISTS idx_baselines_gamma ON root_baselines(gamma)")

        self.conn.commit()

    def close(self):
        self.conn.close()

    # =========================================
    # RUNS
    # =========================================

    def save_run(self, record: RunRecord):
        """Insert or replace a run; reruns with identical parameters share an id."""
        cursor = self.conn.cursor()
        cursor.execute("""
            INSERT OR REPLACE INTO runs
            (id, command, params, checks, passed, output_path, created_at)
            VALUES (?, ?, ?, ?, ?, ?, ?)
        """, (
            record.id,
            record.command,
            json.dumps(record.params, sort_keys=True, default=str),
            json.dumps(record.checks, sort_keys=True),
            1 if record.passed else 0,
            record.output_path,
            record.created_at.isoformat(),
        ))
        self.conn.commit()

    def get_run(self, run_id: str) -> Optional[RunRecord]:
        cursor = self.conn.cursor()
        cursor.execute("SELECT * FROM runs WHERE id = ?", (run_id,))
        row = cursor.fetchone()
        if row:
            return self._row_to_run(row)
        return None

    def get_recent_runs(self, limit: int = 20, command: str = None) -> list[RunRecord]:
        """Most recent runs first, optionally for one command."""
        cursor = self.conn.cursor()
        if command:
            cursor.execute("""
                SELECT * FROM runs WHERE command = ?
                ORDER BY created_at DESC LIMIT ?
            """, (command, limit))
        else:
            cursor.execute("SELECT * FROM runs ORDER BY created_at DESC LIMIT ?", (limit,))
        return [self._row_to_run(row) for row in cursor.fetchall()]

    def count_runs_by_outcome(self) -> dict:
        cursor = self.conn.cursor()
        cursor.execute("""
            SELECT passed, COUNT(*) as count
            FROM runs
            GROUP BY passed
        """)
        counts = {"passed": 0, "failed": 0}
        for row in cursor.fetchall():
            counts["passed" if row["passed"] else "failed"] = row["count"]
        return counts

    def _row_to_run(self, row) -> RunRecord:
        return RunRecord(
            id=row["id"],
            command=row["command"],
            params=json.loads(row["params"]),
            checks=json.loads(row["checks"]),
            passed=bool(row["passed"]),
            output_path=row["output_path"],
            created_at=datetime.fromisoformat(row["created_at"]),
        )

    # =========================================
    # ROOT BASELINES
    # =========================================

    def save_baseline(self, baseline: RootBaseline):
        cursor = self.conn.cursor()
        cursor.execute("""
            INSERT OR REPLACE INTO root_baselines
            (key, state, gamma, lambda0, lambda1, residual, energy)
            VALUES (?, ?, ?, ?, ?, ?, ?)
        """, (
            baseline.key,
            json.dumps(baseline.state.to_dict(), sort_keys=True),
            baseline.gamma,
            json.dumps(baseline.lambda0),
            json.dumps(baseline.lambda1),
            baseline.residual,
            baseline.energy,
        ))
        self.conn.commit()

    def get_baseline(self, state: BetheState, gamma: float) -> Optional[RootBaseline]:
        """Stored roots for (state, γ), if any."""
        cursor = self.conn.cursor()
        cursor.execute("SELECT * FROM root_baselines WHERE key = ?", (state.key(gamma),))
        row = cursor.fetchone()
        if row:
            return self._row_to_baseline(row)
        return None

    def _row_to_baseline(self, row) -> RootBaseline:
        return RootBaseline(
            key=row["key"],
            state=BetheState.from_dict(json.loads(row["state"])),
            gamma=row["gamma"],
            lambda0=json.loads(row["lambda0"]),
            lambda1=json.loads(row["lambda1"]),
            residual=row["residual"],
            energy=row["energy"],
        )
