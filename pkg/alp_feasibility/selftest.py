"""
Embedded invariant suite run by ``selftest``.
"""
from fractions import Fraction
from typing import Callable, List, Tuple

import numpy as np

from .bench import random_system
from .config import BENCH_SEED
from .model import CaseDescriptor, Sign
from .numeric import KPoly, KRatFun
from .oracle import oracle_feasible
from .parser import parse_system
from .reduce import decide_feasibility, enumerate_cases, gadget_images, gadget_matrix_det, reduce
from .report import SelfTestItem, SelfTestReport

# P=2, Q=2, R=3 template
WORKED_EXAMPLE = """\
# two <=, two <, three != rows
vars x1, x2, x3
x1 + x2 <= 4
x2 - x3 <= 2
x1 - x3 < 1
x1 + x2 + x3 < 5
x1 != 0
x2 - x1 != 1
x3 != 2
"""


def random_kpoly(rng: np.random.Generator, max_degree: int = 2, bound: int = 5) -> KPoly:
    degree = int(rng.integers(0, max_degree + 1))
    return KPoly(tuple(Fraction(int(c)) for c in rng.integers(-bound, bound + 1, size=degree + 1)))


def random_ratfun(rng: np.random.Generator, max_degree: int = 2, bound: int = 5) -> KRatFun:
    den = random_kpoly(rng, max_degree, bound)
    if den.is_zero:
        den = KPoly.one()
    return KRatFun(random_kpoly(rng, max_degree, bound), den)


def random_z(rng: np.random.Generator, n: int) -> List[Fraction]:
    """Rational vector with many zeros, so the one-nonzero case is common."""
    z = []
    for _ in range(n):
        if rng.random() < 0.5:
            z.append(Fraction(0))
        else:
            num = int(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]))
            z.append(Fraction(num, int(rng.integers(1, 4))))
    return z


def check_images(z: List[Fraction]) -> bool:
    """(>= 2 nonzero z) iff no image vanishes; one nonzero z_m zeroes exactly y_m."""
    images = gadget_images(z)
    nonzero_z = [j for j, v in enumerate(z) if v != 0]
    vanishing = [i for i, y in enumerate(images) if y.is_zero]
    if len(nonzero_z) >= 2:
        return not vanishing
    if len(nonzero_z) == 1:
        return vanishing == nonzero_z
    return len(vanishing) == len(z)


def check_field_axioms(a: KRatFun, b: KRatFun, c: KRatFun) -> bool:
    zero = KRatFun(KPoly.zero())
    ok = (a + b) + c == a + (b + c)
    ok = ok and (a * b) * c == a * (b * c)
    ok = ok and a * (b + c) == a * b + a * c
    ok = ok and a - a == zero
    if not a.is_zero:
        ok = ok and a * (1 / a) == KRatFun(KPoly.one())
    return ok


def _determinants() -> Tuple[bool, str]:
    values = {n: gadget_matrix_det(n) for n in range(2, 9)}
    ok = all(v == (n - 1) * (-1) ** (n - 1) for n, v in values.items())
    return ok, " ".join(f"N={n}:{v}" for n, v in values.items())


def _case_counts() -> Tuple[bool, str]:
    counts = {r: len(enumerate_cases(r)) for r in range(0, 9)}
    expected = {r: (1 if r == 0 else 2 if r == 1 else 2 * r * (r - 1)) for r in counts}
    return counts == expected, " ".join(f"R={r}:{c}" for r, c in counts.items())


def _images(rng: np.random.Generator, trials: int) -> Tuple[bool, str]:
    failures = 0
    for n in range(2, 7):
        for _ in range(trials):
            failures += not check_images(random_z(rng, n))
    return failures == 0, f"N=2..6, {trials} vectors each, {failures} failures"


def _axioms(rng: np.random.Generator, trials: int) -> Tuple[bool, str]:
    failures = sum(
        not check_field_axioms(random_ratfun(rng), random_ratfun(rng), random_ratfun(rng))
        for _ in range(trials)
    )
    return failures == 0, f"{trials} triples, {failures} failures"


def _worked_example() -> Tuple[bool, str]:
    bundle = reduce(parse_system(WORKED_EXAMPLE))
    target = CaseDescriptor.of_pair(1, 3, Sign.POS, Sign.POS)
    alp = next(a for a in bundle.alps if a.case == target)
    ok = len(bundle.alps) == 12 and len(alp.rows) == 25
    return ok, f"{len(bundle.alps)} ALPs, case {alp.index} {target} has {len(alp.rows)} rows"


def _equivalence(rng: np.random.Generator, trials: int) -> Tuple[bool, str]:
    disagree = 0
    for _ in range(trials):
        system = random_system(rng)
        disagree += decide_feasibility(system).status is not oracle_feasible(system).status
    return disagree == 0, f"{trials} random systems, {disagree} disagreements"


def run_selftest(seed: int = BENCH_SEED, trials: int = 50) -> SelfTestReport:
    rng = np.random.default_rng(seed)
    checks: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
        ("gadget determinants", _determinants),
        ("case counts", _case_counts),
        ("gadget images", lambda: _images(rng, trials)),
        ("field axioms", lambda: _axioms(rng, trials)),
        ("worked example shape", _worked_example),
        ("oracle equivalence", lambda: _equivalence(rng, max(trials // 5, 1))),
    ]
    items = []
    for name, check in checks:
        try:
            passed, detail = check()
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        items.append(SelfTestItem(name=name, passed=bool(passed), detail=detail))
    return SelfTestReport(passed=all(i.passed for i in items), checks=items)
