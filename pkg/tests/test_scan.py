"""
Tests for grid evaluation on worker threads.
"""
from __future__ import annotations

import threading
import time

import pytest

from src.exceptions import ParameterError
from src.scan import run_grid


# ── Fixtures ──────────────────────────────────────────────────────────────────


def _slow_square(x: float) -> float:
    # later points finish first
    time.sleep(0.01 * (5 - x))
    return x * x


def _fails_at(bad: set):
    def func(x):
        if x in bad:
            raise ParameterError(f"bad point {x}")
        return x
    return func


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestRunGrid:
    """Ordering, concurrency and error propagation."""

    @pytest.mark.parametrize("workers", [1, 2, 4])
    def test_results_in_grid_order(self, workers):
        points = [0, 1, 2, 3, 4]
        assert run_grid(_slow_square, points, workers) == [0, 1, 4, 9, 16]

    def test_workers_match_serial(self):
        points = [0.1, 0.5, 2.0, 7.5]
        assert run_grid(lambda x: x ** 0.5, points, 3) == run_grid(lambda x: x ** 0.5, points, 1)

    def test_empty_grid(self):
        assert run_grid(_slow_square, [], 4) == []

    def test_serial_runs_on_calling_thread(self):
        caller = threading.get_ident()
        idents = run_grid(lambda _: threading.get_ident(), [1, 2, 3], 1)
        assert set(idents) == {caller}

    def test_lowest_failing_index_is_raised(self):
        with pytest.raises(ParameterError, match="bad point 1"):
            run_grid(_fails_at({3, 1}), [0, 1, 2, 3], 2)

    def test_serial_error_propagates(self):
        with pytest.raises(ParameterError, match="bad point 2"):
            run_grid(_fails_at({2}), [0, 1, 2], 1)

    def test_rejects_zero_workers(self):
        with pytest.raises(ValueError):
            run_grid(_slow_square, [1], 0)
