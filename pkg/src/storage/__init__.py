"""
Run ledger: SQLite records of runs and converged Bethe roots.
"""

from .models import RunRecord, RootBaseline
from .database import Database

__all__ = [
    'RunRecord',
    'RootBaseline',
    'Database',
]
