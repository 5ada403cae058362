"""
Exact dense-by-row tableau simplex, generic over an ordered field.

The same code runs over ``Fraction`` (fixed-K checks, the oracle) and over
``KRatFun`` (asymptotic problems). Field elements only need + - * /, truthiness
for zero tests and comparison against the integer 0.

Rows are ``sum(coeffs[v] * v) <= rhs``. Free variables are split into
(plus, minus) column pairs, every row gets a slack, and rows with a negative
right side get an artificial column for phase 1. Entering and leaving columns
follow Bland's rule.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Generic, Iterable, List, Mapping, Optional, Sequence, Tuple, TypeVar

from .config import pivot_limit as configured_pivot_limit
from .errors import SolverLimitError

F = TypeVar("F")

VAR, SLACK, ARTIFICIAL = "var", "slack", "artificial"


@dataclass(frozen=True)
class Column:
    kind: str
    name: str
    sign: int = 1


@dataclass
class LpResult(Generic[F]):
    feasible: bool
    values: Dict[str, F] = field(default_factory=dict)
    objective: Optional[F] = None
    unbounded: bool = False
    pivots: int = 0


class SimplexTableau(Generic[F]):
    def __init__(
        self,
        variables: Sequence[str],
        rows: Sequence[Tuple[Mapping[str, F], F]],
        lift: Callable[[object], F] = Fraction,
        nonnegative: Iterable[str] = (),
        pivot_limit: Optional[int] = None,
    ):
        self.lift = lift
        self.zero = lift(0)
        self.one = lift(1)
        self.variables = list(variables)
        nonnegative = set(nonnegative)

        self.columns: List[Column] = []
        var_cols: Dict[str, List[int]] = {}
        for v in self.variables:
            var_cols[v] = [len(self.columns)]
            self.columns.append(Column(VAR, v, 1))
            if v not in nonnegative:
                var_cols[v].append(len(self.columns))
                self.columns.append(Column(VAR, v, -1))

        self.rows: List[Dict[int, F]] = []
        self.rhs: List[F] = []
        self.basis: List[int] = []
        artificial_rows = []
        slack_base = len(self.columns)
        self.columns.extend(Column(SLACK, f"s{i + 1}") for i in range(len(rows)))
        for i, (coeffs, rhs) in enumerate(rows):
            rhs = lift(rhs)
            row: Dict[int, F] = {}
            for v, c in coeffs.items():
                c = lift(c)
                if not c:
                    continue
                cols = var_cols[v]
                row[cols[0]] = c
                if len(cols) > 1:
                    row[cols[1]] = -c
            row[slack_base + i] = self.one
            if rhs < 0:
                row = {c: -x for c, x in row.items()}
                rhs = -rhs
                artificial_rows.append(i)
            self.rows.append(row)
            self.rhs.append(rhs)
            self.basis.append(slack_base + i)

        self.artificial = set()
        for i in artificial_rows:
            col = len(self.columns)
            self.columns.append(Column(ARTIFICIAL, f"a{i + 1}"))
            self.rows[i][col] = self.one
            self.basis[i] = col
            self.artificial.add(col)

        self.cost: Dict[int, F] = {}
        self.cost_rhs: F = self.zero
        self.pivots = 0
        self.objective_trace: List[F] = []
        self.pivot_limit = pivot_limit or configured_pivot_limit(len(self.rows), len(self.columns))

    # ==========================================
    # PIVOTING
    # ==========================================

    @staticmethod
    def _eliminate(row: Dict[int, F], factor: F, pivot_row: Dict[int, F]):
        for c, v in pivot_row.items():
            current = row.get(c)
            new = -(factor * v) if current is None else current - factor * v
            if new:
                row[c] = new
            else:
                row.pop(c, None)

    def pivot(self, p: int, q: int):
        self.pivots += 1
        if self.pivots > self.pivot_limit:
            raise SolverLimitError(
                f"pivot limit {self.pivot_limit} exceeded ({len(self.rows)} rows x {len(self.columns)} columns)"
            )
        inv = self.one / self.rows[p][q]
        pivot_row = {c: v * inv for c, v in self.rows[p].items()}
        pivot_row[q] = self.one
        pivot_rhs = self.rhs[p] * inv
        self.rows[p], self.rhs[p] = pivot_row, pivot_rhs
        for i, row in enumerate(self.rows):
            if i == p:
                continue
            factor = row.get(q)
            if factor:
                self._eliminate(row, factor, pivot_row)
                self.rhs[i] = self.rhs[i] - factor * pivot_rhs
        factor = self.cost.get(q)
        if factor:
            self._eliminate(self.cost, factor, pivot_row)
            self.cost_rhs = self.cost_rhs - factor * pivot_rhs
        self.basis[p] = q

    def _entering(self, allowed: Callable[[int], bool]) -> Optional[int]:
        candidates = [c for c, d in self.cost.items() if d < 0 and allowed(c)]
        return min(candidates) if candidates else None

    def _leaving(self, q: int) -> Optional[int]:
        best, best_ratio = None, None
        for i, row in enumerate(self.rows):
            a = row.get(q)
            if not a or not a > 0:
                continue
            ratio = self.rhs[i] / a
            if best is None or ratio < best_ratio or (
                ratio == best_ratio and self.basis[i] < self.basis[best]
            ):
                best, best_ratio = i, ratio
        return best

    def _run(self, allowed: Callable[[int], bool], record: bool) -> bool:
        """Minimizes the current cost row. Returns False when unbounded."""
        while True:
            q = self._entering(allowed)
            if q is None:
                return True
            p = self._leaving(q)
            if p is None:
                return False
            self.pivot(p, q)
            if record:
                self.objective_trace.append(-self.cost_rhs)

    # ==========================================
    # PHASES
    # ==========================================

    def phase_one(self) -> bool:
        """Minimizes the artificial sum. True iff the rows are feasible.

        On success artificial columns are driven out of the basis (or their
        redundant rows dropped) and removed.
        """
        self.cost = {c: self.one for c in self.artificial}
        self.cost_rhs = self.zero
        for i, b in enumerate(self.basis):
            if b in self.artificial:
                self._eliminate(self.cost, self.one, self.rows[i])
                self.cost_rhs = self.cost_rhs - self.rhs[i]
        self.objective_trace = [-self.cost_rhs]
        self._run(lambda c: True, record=True)
        feasible = not self.cost_rhs
        if feasible:
            self._purge_artificials()
        self.cost, self.cost_rhs = {}, self.zero
        return feasible

    def _purge_artificials(self):
        redundant = []
        for i, b in enumerate(self.basis):
            if b not in self.artificial:
                continue
            replacement = min((c for c in self.rows[i] if c not in self.artificial), default=None)
            if replacement is None:
                redundant.append(i)
            else:
                self.pivot(i, replacement)
        for i in reversed(redundant):
            del self.rows[i], self.rhs[i], self.basis[i]
        for row in self.rows:
            for c in self.artificial:
                row.pop(c, None)
        self.artificial = set()

    def maximize(self, objective: Mapping[str, F]) -> bool:
        """Phase 2 from a feasible basis. False when the objective is unbounded."""
        weights = {v: self.lift(c) for v, c in objective.items()}
        self.cost = {}
        for j, col in enumerate(self.columns):
            if col.kind == VAR and weights.get(col.name):
                self.cost[j] = -(weights[col.name] * col.sign)
        self.cost_rhs = self.zero
        for i, b in enumerate(self.basis):
            cb = self.cost.get(b)
            if cb:
                self._eliminate(self.cost, cb, self.rows[i])
                self.cost_rhs = self.cost_rhs - cb * self.rhs[i]
        return self._run(lambda c: c not in self.artificial, record=False)

    @property
    def objective_value(self) -> F:
        """Maximum of the phase-2 objective (valid after maximize)."""
        return self.cost_rhs

    # ==========================================
    # READOUT
    # ==========================================

    def solution(self) -> Dict[str, F]:
        level = {b: self.rhs[i] for i, b in enumerate(self.basis)}
        values = {v: self.zero for v in self.variables}
        for j, col in enumerate(self.columns):
            if col.kind == VAR and j in level:
                x = level[j]
                values[col.name] = values[col.name] + (x if col.sign > 0 else -x)
        return values

    def basis_is_identity(self) -> bool:
        for i, b in enumerate(self.basis):
            for k, row in enumerate(self.rows):
                entry = row.get(b)
                if k == i:
                    if entry is None or entry - self.one:
                        return False
                elif entry:
                    return False
            if self.cost.get(b):
                return False
        return True

    def rhs_nonnegative(self) -> bool:
        return all(not r < 0 for r in self.rhs)


def solve_lp(
    variables: Sequence[str],
    rows: Sequence[Tuple[Mapping[str, F], F]],
    lift: Callable[[object], F] = Fraction,
    nonnegative: Iterable[str] = (),
    maximize: Optional[Mapping[str, F]] = None,
) -> LpResult:
    """Feasibility (and optionally a maximum) of ``rows`` in one call."""
    tableau = SimplexTableau(variables, rows, lift=lift, nonnegative=nonnegative)
    if not tableau.phase_one():
        return LpResult(False, pivots=tableau.pivots)
    if maximize is not None:
        if not tableau.maximize(maximize):
            return LpResult(True, tableau.solution(), None, unbounded=True, pivots=tableau.pivots)
        return LpResult(True, tableau.solution(), tableau.objective_value, pivots=tableau.pivots)
    return LpResult(True, tableau.solution(), pivots=tableau.pivots)
