"""
Tests for the random corpus and the bench harness.
"""

import json

import numpy as np

from alp_feasibility.bench import BENCH_COLUMNS, random_system, run_bench, write_bench
from alp_feasibility.model import Relop


class TestRandomSystem:
    """Seeded generator."""

    def test_bounds(self, rng):
        """Test generator bounds."""
        for _ in range(50):
            system = random_system(rng, max_vars=4, max_le=3, max_lt=2, max_ne=3, coeff_bound=3)
            counts = system.counts
            assert 1 <= counts["N"] <= 4
            assert counts["P"] <= 3 and counts["Q"] <= 2 and counts["R"] <= 3
            assert counts["E"] == 0
            for c in system.constraints:
                assert all(abs(v) <= 3 for v in c.coeffs.values())
                assert abs(c.rhs) <= 3

    def test_forced_inequations(self, rng):
        """Test forcing the number of inequations."""
        system = random_system(rng, ne_count=5)
        assert len(system.ne_rows) == 5
        assert all(c.relop is Relop.NE for c in system.ne_rows)

    def test_same_seed_same_system(self):
        """Test that a seed fixes the system."""
        a = random_system(np.random.default_rng(3), max_eq=2)
        b = random_system(np.random.default_rng(3), max_eq=2)
        assert a == b


class TestRunBench:
    """Frame, summary and files."""

    def test_frame(self):
        """Test the bench frame and summary."""
        frame, summary = run_bench(seed=42, count=12)
        assert list(frame.columns) == BENCH_COLUMNS
        assert len(frame) == 12
        assert summary.agreement == f"{summary.agree}/12"
        assert summary.disagree == 0
        for _, row in frame.iterrows():
            r = row["R"]
            expected = 1 if r == 0 else 2 if r == 1 else 2 * r * (r - 1)
            assert row["alp_count"] == expected
            assert row["oracle_cases"] == 2 ** r

    def test_forced_r(self):
        """Test forced R values."""
        frame, _ = run_bench(seed=1, count=2, max_vars=2, r_values=[8, 5])
        first, second = frame.iloc[0], frame.iloc[1]
        assert (first["R"], first["alp_count"], first["oracle_cases"]) == (8, 112, 256)
        assert (second["R"], second["alp_count"], second["oracle_cases"]) == (5, 40, 32)

    def test_write(self, tmp_path):
        """Test the written files."""
        frame, summary = run_bench(seed=42, count=3)
        csv_path, summary_path = write_bench(frame, summary, tmp_path / "out")
        assert csv_path.read_text(encoding="utf-8").splitlines()[0] == ",".join(BENCH_COLUMNS)
        data = json.loads(summary_path.read_text(encoding="utf-8"))
        assert data["count"] == 3
        assert data["seed"] == 42
