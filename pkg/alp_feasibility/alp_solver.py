"""
Decides one asymptotic LP over the ordered field of rational functions of K,
and turns symbolic witnesses into exact rational points.
"""
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .config import WITNESS_MAX_EXPONENT
from .errors import NumericDomainError, ValidationError, WitnessError
from .logger import logger
from .model import AlpProblem, LinearSystem, Status, Witness, satisfies
from .numeric import KRatFun
from .simplex import SimplexTableau, solve_lp

SymbolicWitness = Dict[str, KRatFun]


def _rows(alp: AlpProblem):
    return [(dict(row.coeffs), row.rhs) for row in alp.rows]


def alp_tableau(alp: AlpProblem) -> SimplexTableau:
    """Phase-1 ready tableau with KRatFun entries (every variable free)."""
    return SimplexTableau(alp.variables, _rows(alp), lift=KRatFun.of)


def alp_feasible(alp: AlpProblem) -> Tuple[Status, Optional[SymbolicWitness]]:
    """FEASIBLE iff the rows hold for every sufficiently large K.

    The witness maps every ALP variable to a rational function of K read
    off the final basis.
    """
    tableau = alp_tableau(alp)
    feasible = tableau.phase_one()
    logger.log_debug(
        f"case {alp.index} {alp.case}: {'feasible' if feasible else 'infeasible'} after {tableau.pivots} pivots"
    )
    if not feasible:
        return Status.INFEASIBLE, None
    return Status.FEASIBLE, tableau.solution()


def _evaluate(symbolic: Mapping[str, KRatFun], variables, k: Fraction) -> Dict[str, Fraction]:
    point = {}
    for v in variables:
        f = symbolic.get(v)
        point[v] = f.evaluate(k) if f is not None else Fraction(0)
    return point


def concretize_witness(
    symbolic: Mapping[str, KRatFun],
    system: LinearSystem,
    max_exponent: int = WITNESS_MAX_EXPONENT,
) -> Witness:
    """First K = 2^t (t = 0..max_exponent) whose evaluation satisfies ``system`` exactly."""
    for t in range(max_exponent + 1):
        k = Fraction(2 ** t)
        try:
            point = _evaluate(symbolic, system.variables, k)
        except NumericDomainError:
            continue
        if satisfies(system, point, k):
            return Witness({v: symbolic[v] for v in system.variables if v in symbolic}, k, point)
    raise WitnessError(f"witness does not satisfy the system for any K = 2^t, t <= {max_exponent}")


def fixed_k_feasible(alp: AlpProblem, k: Fraction) -> Status:
    """Feasibility of the ALP with K substituted by the number k."""
    k = Fraction(k)
    if k <= 0:
        raise ValidationError(f"fixed-K check needs k > 0, got {k}")
    rows = []
    for row in alp.rows:
        coeffs, rhs = row.at(k)
        rows.append((coeffs, rhs))
    result = solve_lp(alp.variables, rows, lift=Fraction)
    return Status.FEASIBLE if result.feasible else Status.INFEASIBLE


def witness_satisfies_alp(alp: AlpProblem, symbolic: Mapping[str, KRatFun]) -> bool:
    """Every row holds in the ordered field under the symbolic assignment."""
    return all(row.symbolic_holds(symbolic) for row in alp.rows)


def _holds_at(alp: AlpProblem, symbolic: Mapping[str, KRatFun], k: Fraction) -> bool:
    try:
        point = _evaluate(symbolic, alp.variables, k)
    except NumericDomainError:
        return False
    for row in alp.rows:
        coeffs, rhs = row.at(k)
        if sum(c * point[v] for v, c in coeffs.items()) > rhs:
            return False
    return True


def feasible_threshold(
    alp: AlpProblem, symbolic: Mapping[str, KRatFun], max_exponent: int = WITNESS_MAX_EXPONENT
) -> Fraction:
    """Smallest K = 2^t at which the symbolic witness satisfies every ALP row numerically."""
    for t in range(max_exponent + 1):
        k = Fraction(2 ** t)
        if _holds_at(alp, symbolic, k):
            return k
    raise WitnessError(f"case {alp.index}: witness never holds for K <= 2^{max_exponent}")


def infeasible_threshold(alp: AlpProblem, max_exponent: int = 32) -> Fraction:
    """Smallest K = 2^t at which the ALP is infeasible as an ordinary LP."""
    for t in range(max_exponent + 1):
        k = Fraction(2 ** t)
        if fixed_k_feasible(alp, k) is Status.INFEASIBLE:
            return k
    raise WitnessError(f"case {alp.index}: still feasible at K = 2^{max_exponent}")


def steady_state_k0(alp: AlpProblem) -> Tuple[Status, Fraction]:
    """Symbolic status plus a K from which fixed-K checks are expected to agree."""
    status, symbolic = alp_feasible(alp)
    if status is Status.FEASIBLE:
        return status, feasible_threshold(alp, symbolic)
    return status, infeasible_threshold(alp)

