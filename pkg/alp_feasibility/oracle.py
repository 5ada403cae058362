"""
Ground truth by sign enumeration: every != row becomes < or >, giving 2^R
ordinary strict LPs. Exponential, only meant for small R.
"""
from fractions import Fraction
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

from .config import ORACLE_MAX_NE
from .errors import OracleCapError, ValidationError, WitnessError
from .logger import logger
from .model import Constraint, LinearSystem, Relop, Status, Verdict, Witness, satisfies
from .pipeline import first_success
from .reduce import split_equality
from .simplex import solve_lp

SLACK = "_t"


def _variables(rows: Sequence[Constraint]) -> List[str]:
    seen: List[str] = []
    for c in rows:
        seen.extend(v for v in c.coeffs if v not in seen)
    return seen


def strict_lp_feasible(
    le_rows: Sequence[Constraint],
    lt_rows: Sequence[Constraint],
    variables: Optional[Sequence[str]] = None,
) -> Tuple[Status, Optional[Dict[str, Fraction]]]:
    """Feasibility of {le rows, lt rows} with an exact point.

    Strict rows are tightened by a slack t in [0, 1] that is maximized; the
    rows are strictly feasible iff the optimum is positive.
    """
    rows = list(le_rows) + list(lt_rows)
    if any(c.is_parametric for c in rows):
        raise ValidationError("the oracle needs K-free coefficients")
    variables = list(variables) if variables is not None else _variables(rows)

    lp_rows = [(dict(c.coeffs), c.rhs) for c in le_rows]
    if not lt_rows:
        result = solve_lp(variables, lp_rows)
        if not result.feasible:
            return Status.INFEASIBLE, None
        return Status.FEASIBLE, {v: result.values[v] for v in variables}

    for c in lt_rows:
        coeffs = dict(c.coeffs)
        coeffs[SLACK] = Fraction(1)
        lp_rows.append((coeffs, c.rhs))
    lp_rows.append(({SLACK: Fraction(1)}, Fraction(1)))
    result = solve_lp(
        variables + [SLACK], lp_rows, nonnegative=[SLACK], maximize={SLACK: Fraction(1)}
    )
    if not result.feasible or result.objective is None or not result.objective > 0:
        return Status.INFEASIBLE, None
    return Status.FEASIBLE, {v: result.values[v] for v in variables}


def sign_assignment_rows(system: LinearSystem, mask: int) -> List[Constraint]:
    """Bit i of mask set: != row i becomes '>' (written as '<' negated); clear: '<'."""
    rows = []
    for i, c in enumerate(system.ne_rows):
        if mask >> i & 1:
            rows.append(Constraint({v: -k for v, k in c.coeffs.items()}, Relop.LT, -c.rhs))
        else:
            rows.append(Constraint(dict(c.coeffs), Relop.LT, c.rhs))
    return rows


def oracle_feasible(system: LinearSystem, max_ne: int = ORACLE_MAX_NE, jobs: int = 1) -> Verdict:
    r = len(system.ne_rows)
    if r > max_ne:
        raise OracleCapError(f"{r} '!=' rows exceed the oracle cap of {max_ne}")
    if system.is_parametric:
        raise ValidationError("the oracle needs K-free coefficients")

    le_rows = list(system.le_rows)
    for c in system.eq_rows:
        le_rows.extend(split_equality(c))
    lt_rows = list(system.lt_rows)
    cases = 2 ** r
    logger.log_debug(f"oracle: {cases} sign assignments")

    tasks = [
        partial(strict_lp_feasible, le_rows, lt_rows + sign_assignment_rows(system, mask), system.variables)
        for mask in range(cases)
    ]
    hit = first_success(tasks, lambda res: res[0] is Status.FEASIBLE, jobs)
    if hit is None:
        return Verdict(Status.INFEASIBLE, alp_count=cases)

    mask, (_, point) = hit
    if not satisfies(system, point):
        raise WitnessError(f"oracle point for assignment {mask} violates the system")
    return Verdict(
        Status.FEASIBLE,
        case_index=mask + 1,
        witness=Witness({}, None, point),
        alp_count=cases,
    )
