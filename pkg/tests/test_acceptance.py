"""
Acceptance suite: worked-example shape, oracle equivalence on a seeded corpus,
gadget properties, witness soundness, steady state, non-triviality and
bench determinism.

ALPFEAS_ACCEPTANCE_COUNT sets the corpus size (default 500).
"""

import os
import time
from collections import Counter

import numpy as np
import pytest

from alp_feasibility.alp_solver import alp_feasible, fixed_k_feasible, steady_state_k0
from alp_feasibility.bench import random_system, run_bench
from alp_feasibility.model import CaseDescriptor, Sign, Status, satisfies
from alp_feasibility.oracle import oracle_feasible
from alp_feasibility.parser import parse_system, render_alp_row
from alp_feasibility.reduce import (
    augment_nontrivial,
    decide_feasibility,
    gadget_images,
    gadget_matrix_det,
    reduce,
)
from alp_feasibility.selftest import random_z

CORPUS_SIZE = int(os.getenv("ALPFEAS_ACCEPTANCE_COUNT", "500"))


@pytest.fixture(scope="module")
def corpus():
    rng = np.random.default_rng(42)
    return [
        random_system(rng, max_vars=4, max_le=3, max_lt=2, max_ne=3, coeff_bound=3)
        for _ in range(CORPUS_SIZE)
    ]


class TestWorkedExample:
    """Twelve problems; the (1,3,POS,POS) problem has the expected 25 rows."""

    def test_shape(self, worked_example):
        """Test the shape of the (1,3,POS,POS) problem."""
        start = time.perf_counter()
        bundle = reduce(worked_example)
        assert len(bundle.alps) == 12
        alp = next(a for a in bundle.alps if a.case == CaseDescriptor.of_pair(1, 3, Sign.POS, Sign.POS))
        rows = [render_alp_row(r) for r in alp.rows]
        assert len(rows) == 25

        kinds = Counter()
        for text in rows:
            if "_y" in text and "_z" in text:
                kinds["coupling"] += 1
            elif "_y" in text:
                kinds["sum"] += 1
            elif "_f" in text:
                kinds["value"] += 1
            elif text == "1 - K _e <= 0":
                kinds["shared"] += 1
            elif "_z" in text:
                kinds["case"] += 1
            elif "_e" in text:
                kinds["strict"] += 1
            else:
                kinds["le"] += 1
        assert kinds == Counter(le=2, strict=2, value=6, sum=6, coupling=6, case=2, shared=1)
        assert "_e - _z1 <= 0" in rows and "_e - _z3 <= 0" in rows
        assert time.perf_counter() - start < 1.0


class TestOracleEquivalence:
    """decide_feasibility agrees with the oracle, and every witness is sound."""

    def test_corpus(self, corpus):
        """Test agreement, witness soundness and runtime on the seeded corpus."""
        disagreements, unsound = [], []
        elapsed = 0.0
        for i, system in enumerate(corpus):
            start = time.perf_counter()
            verdict = decide_feasibility(system)
            truth = oracle_feasible(system)
            elapsed += time.perf_counter() - start
            if verdict.status is not truth.status:
                disagreements.append(i)
            if verdict.feasible and not satisfies(system, verdict.witness.point):
                unsound.append(i)
            if truth.feasible and not satisfies(system, truth.witness.point):
                unsound.append(i)
        assert disagreements == []
        assert unsound == []
        assert elapsed <= 120.0 * CORPUS_SIZE / 500

    def test_worked_example_witness(self, worked_example):
        """Test the worked example witness."""
        verdict = decide_feasibility(worked_example)
        assert verdict.feasible
        assert satisfies(worked_example, verdict.witness.point)


class TestGadgetProperties:
    """Determinants and images of the inequation gadget."""

    def test_determinants(self):
        """Test gadget determinants for N = 2..8."""
        for n in range(2, 9):
            det = gadget_matrix_det(n)
            assert det != 0
            assert det == (n - 1) * (-1) ** (n - 1)

    def test_images(self):
        """Test gadget images for N = 2..6."""
        rng = np.random.default_rng(7)
        start = time.perf_counter()
        for n in range(2, 7):
            for _ in range(200):
                z = random_z(rng, n)
                images = gadget_images(z)
                nonzero = [j for j, v in enumerate(z) if v != 0]
                vanishing = [i for i, y in enumerate(images) if y.is_zero]
                if len(nonzero) >= 2:
                    assert vanishing == []
                elif len(nonzero) == 1:
                    assert vanishing == nonzero
                    assert len(images) - len(vanishing) == n - 1
        assert time.perf_counter() - start < 10.0


class TestSteadyState:
    """Fixed-K checks beyond the threshold match the symbolic status."""

    def test_sampled_problems(self, corpus):
        """Test fixed-K status at k0, 2k0 and 4k0."""
        rng = np.random.default_rng(11)
        problems = [alp for system in corpus[:60] for alp in reduce(system).alps]
        picks = rng.choice(len(problems), size=min(50, len(problems)), replace=False)
        for i in sorted(int(p) for p in picks):
            alp = problems[i]
            status, k0 = steady_state_k0(alp)
            assert status is alp_feasible(alp)[0]
            for k in (k0, 2 * k0, 4 * k0):
                assert fixed_k_feasible(alp, k) is status


class TestNontriviality:
    """Forced-zero and free subset members."""

    def test_examples(self):
        """Test the forced-zero and free examples."""
        forced = augment_nontrivial(parse_system("x1 <= 0\n-x1 <= 0"), ["x1"])
        assert decide_feasibility(forced).status is Status.INFEASIBLE
        free = augment_nontrivial(parse_system("vars x1, x2\nx1 <= 0\n-x1 <= 0"), ["x2"])
        assert decide_feasibility(free).status is Status.FEASIBLE

    def test_four_members_add_five_rows(self):
        """Test that four members add five rows."""
        base = parse_system("vars x1, x2, x3, x4\nx1 + x2 + x3 + x4 <= 1")
        augmented = augment_nontrivial(base, ["x1", "x2", "x3", "x4"])
        assert len(augmented.constraints) - len(base.constraints) == 5


class TestDeterminism:
    """Bench frames do not depend on worker count."""

    def test_jobs(self):
        """Test bench CSV across worker counts."""
        one, _ = run_bench(seed=42, count=20, jobs=1)
        four, _ = run_bench(seed=42, count=20, jobs=4)
        assert one.to_csv(index=False) == four.to_csv(index=False)
