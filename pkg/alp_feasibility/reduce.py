"""
Reduction of a linear system with <=, <, = and != rows to a family of
asymptotic LPs, and the decision loop over that family.

Auxiliary variables, in ALP column order after the user's variables:
    _e         shared strictness slack (1 - K _e <= 0 keeps it positive)
    _y1.._yR   gadget inputs, f_i = sum_{j != i} y_j
    _z1.._zR   scaled inputs, (K+i) y_i = z_i
    _f1.._fR   value of each != row, c_i x - f_i = r_i
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .config import DEFAULT_JOBS
from .constants import AUX_E, AUX_F, AUX_W, AUX_Y, AUX_Z
from .errors import GadgetError, ValidationError
from .logger import logger
from .model import (
    AlpConstraint,
    AlpProblem,
    CaseDescriptor,
    CaseKind,
    Constraint,
    LinearSystem,
    Relop,
    Sign,
    Status,
    Verdict,
    alp_row,
    validate,
)
from .numeric import KPoly, KRatFun

SIGN_ORDER: Tuple[Tuple[Sign, Sign], ...] = (
    (Sign.NEG, Sign.NEG),
    (Sign.NEG, Sign.POS),
    (Sign.POS, Sign.NEG),
    (Sign.POS, Sign.POS),
)


@dataclass(frozen=True)
class GadgetVars:
    """Fresh gadget identifiers. For R = 1 only ``f`` is populated (no gadget is built)."""
    f: Tuple[str, ...]
    y: Tuple[str, ...]
    z: Tuple[str, ...]
    e: str
    offsets: Tuple[KPoly, ...]

    @property
    def size(self) -> int:
        return len(self.f)

    def auxiliaries(self) -> Tuple[str, ...]:
        return (self.e,) + self.y + self.z + self.f


@dataclass(frozen=True)
class ReductionBundle:
    original: LinearSystem
    alps: Tuple[AlpProblem, ...]
    gadget: Optional[GadgetVars]
    base_rows: Tuple[AlpConstraint, ...]
    variables: Tuple[str, ...]


def _order(variables: Sequence[str]) -> Dict[str, int]:
    return {v: i for i, v in enumerate(variables)}


def _default_order(c: Constraint, *extra: str) -> Dict[str, int]:
    return _order(list(c.coeffs) + [v for v in extra if v not in c.coeffs])


def shared_row(e: str = AUX_E) -> AlpConstraint:
    """1 - K e <= 0."""
    return alp_row({e: -KPoly.k()}, -1, {e: 0})


def _le_row(c: Constraint, order: Mapping[str, int]) -> AlpConstraint:
    return alp_row(c.kpoly_coeffs(), c.rhs, order)


# ==========================================
# ROW TRANSFORMS
# ==========================================

def strictify(c: Constraint, e: str = AUX_E, order: Optional[Mapping[str, int]] = None) -> List[AlpConstraint]:
    """b x < q  ->  {b x + e <= q, 1 - K e <= 0}."""
    if c.relop is not Relop.LT:
        raise ValidationError(f"strictify expects a '<' row, got '{c.relop.value}'")
    order = order or _default_order(c, e)
    coeffs = c.kpoly_coeffs()
    coeffs[e] = KPoly.one()
    return [alp_row(coeffs, c.rhs, order), shared_row(e)]


def split_equality(c: Constraint) -> Tuple[Constraint, Constraint]:
    """a x = r  ->  {a x <= r, -a x <= -r}."""
    if c.relop is not Relop.EQ:
        raise ValidationError(f"split_equality expects a '=' row, got '{c.relop.value}'")
    return (
        Constraint(dict(c.coeffs), Relop.LE, c.rhs),
        Constraint({v: -k for v, k in c.coeffs.items()}, Relop.LE, -c.rhs),
    )


def _fresh(prefix: str, count: int, taken: Sequence[str]) -> Tuple[str, ...]:
    taken = set(taken)
    names, i = [], 1
    while len(names) < count:
        name = f"{prefix}{i}"
        if name not in taken:
            names.append(name)
        i += 1
    return tuple(names)


def _value_rows(ne_rows: Sequence[Constraint], f: Sequence[str]) -> List[Constraint]:
    """c_i x - f_i = r_i for every != row."""
    rows = []
    for c, fi in zip(ne_rows, f):
        coeffs = dict(c.coeffs)
        coeffs[fi] = Fraction(-1)
        rows.append(Constraint(coeffs, Relop.EQ, c.rhs))
    return rows


def build_inequation_gadget(
    ne_rows: Sequence[Constraint], taken: Sequence[str] = ()
) -> Tuple[GadgetVars, List[Constraint]]:
    """Gadget variables and its 3R equalities, in the order
    value rows, sum rows (sum_{j != i} y_j - f_i = 0), couplings ((K+i) y_i - z_i = 0)."""
    r = len(ne_rows)
    if r < 2:
        raise GadgetError(f"the inequation gadget needs at least 2 '!=' rows, got {r}")
    gadget = GadgetVars(
        f=_fresh(AUX_F, r, taken),
        y=_fresh(AUX_Y, r, taken),
        z=_fresh(AUX_Z, r, taken),
        e=AUX_E,
        offsets=tuple(KPoly.linear(1, i) for i in range(1, r + 1)),
    )
    rows = _value_rows(ne_rows, gadget.f)
    for i in range(r):
        coeffs: Dict[str, Fraction] = {gadget.y[j]: Fraction(1) for j in range(r) if j != i}
        coeffs[gadget.f[i]] = Fraction(-1)
        rows.append(Constraint(coeffs, Relop.EQ, 0))
    for i in range(r):
        rows.append(Constraint({gadget.y[i]: gadget.offsets[i], gadget.z[i]: Fraction(-1)}, Relop.EQ, 0))
    return gadget, rows


def enumerate_cases(r: int) -> List[CaseDescriptor]:
    if r < 0:
        raise ValueError("number of '!=' rows cannot be negative")
    if r == 0:
        return [CaseDescriptor.empty()]
    if r == 1:
        return [CaseDescriptor.single(Sign.NEG), CaseDescriptor.single(Sign.POS)]
    return [
        CaseDescriptor.of_pair(a, b, sa, sb)
        for a, b in combinations(range(1, r + 1), 2)
        for sa, sb in SIGN_ORDER
    ]


def sign_row(var: str, sign: Sign, e: str, order: Mapping[str, int]) -> AlpConstraint:
    """POS: e - var <= 0; NEG: var + e <= 0."""
    if sign is Sign.POS:
        return alp_row({e: 1, var: -1}, 0, order)
    return alp_row({var: 1, e: 1}, 0, order)


def case_rows(
    case: CaseDescriptor, gadget: Optional[GadgetVars], order: Optional[Mapping[str, int]] = None
) -> List[AlpConstraint]:
    if case.kind is CaseKind.EMPTY:
        return []
    if gadget is None:
        raise GadgetError(f"case {case} needs gadget variables")
    if case.kind is CaseKind.SINGLE:
        targets = [gadget.f[0]]
    elif case.kind is CaseKind.PAIR:
        if case.pair[1] > gadget.size:
            raise GadgetError(f"case {case} does not fit a gadget of size {gadget.size}")
        targets = [gadget.z[i - 1] for i in case.pair]
    else:
        raise GadgetError(f"{case.kind.value} cases are not gadget cases")
    order = order or _order(list(gadget.auxiliaries()))
    rows = [sign_row(t, s, gadget.e, order) for t, s in zip(targets, case.signs)]
    rows.append(shared_row(gadget.e))
    return rows


# ==========================================
# REDUCTION
# ==========================================

def _system_base_rows(system: LinearSystem, order: Mapping[str, int], e: str) -> List[AlpConstraint]:
    """LE rows, strictified LT rows (with the shared row once), split EQ rows."""
    rows = [_le_row(c, order) for c in system.le_rows]
    for c in system.lt_rows:
        rows.append(strictify(c, e, order)[0])
    if system.lt_rows:
        rows.append(shared_row(e))
    for c in system.eq_rows:
        rows.extend(_le_row(half, order) for half in split_equality(c))
    return rows


def reduce(system: LinearSystem) -> ReductionBundle:
    ne_rows = system.ne_rows
    r = len(ne_rows)
    taken = list(system.variables)
    if r >= 2:
        gadget, gadget_eqs = build_inequation_gadget(ne_rows, taken)
    elif r == 1:
        f = _fresh(AUX_F, 1, taken)
        gadget = GadgetVars(f=f, y=(), z=(), e=AUX_E, offsets=())
        gadget_eqs = _value_rows(ne_rows, f)
    else:
        gadget, gadget_eqs = None, []

    uses_e = bool(system.lt_rows) or r > 0
    variables = list(system.variables)
    if uses_e:
        variables.append(AUX_E)
    if gadget is not None:
        variables.extend(gadget.y + gadget.z + gadget.f)
    order = _order(variables)

    base = _system_base_rows(system, order, AUX_E)
    for c in gadget_eqs:
        base.extend(_le_row(half, order) for half in split_equality(c))

    alps = []
    for index, case in enumerate(enumerate_cases(r), 1):
        rows = base + case_rows(case, gadget, order)
        alps.append(AlpProblem.assemble(variables, rows, case, index))
    return ReductionBundle(system, tuple(alps), gadget, tuple(base), tuple(variables))


def per_inequation_alps(system: LinearSystem) -> List[AlpProblem]:
    """Two problems per != row i: the system's other rows with c_i x < r_i (NEG),
    resp. c_i x > r_i (POS). Index i is 1-based among the != rows."""
    variables = list(system.variables) + [AUX_E]
    order = _order(variables)
    base = _system_base_rows(system, order, AUX_E)
    alps = []
    for i, c in enumerate(system.ne_rows, 1):
        for sign in (Sign.NEG, Sign.POS):
            flip = 1 if sign is Sign.NEG else -1
            coeffs = {v: k.scale(flip) for v, k in c.kpoly_coeffs().items()}
            coeffs[AUX_E] = KPoly.one()
            rows = base + [alp_row(coeffs, c.rhs * flip, order), shared_row(AUX_E)]
            alps.append(AlpProblem.assemble(variables, rows, CaseDescriptor.inequation(i, sign), len(alps) + 1))
    return alps


# ==========================================
# DECISION
# ==========================================

def _ne_values(system: LinearSystem, assignment: Mapping[str, KRatFun]) -> List[KRatFun]:
    return [c.symbolic_value(assignment) - c.rhs for c in system.ne_rows]


def _blend(points: Sequence[Mapping[str, KRatFun]], m: int, variables: Sequence[str]) -> Dict[str, KRatFun]:
    weights = [Fraction(m) ** k for k in range(len(points))]
    total = sum(weights)
    zero = KRatFun(KPoly.zero())
    blended = {}
    for v in variables:
        acc = zero
        for w, p in zip(weights, points):
            x = p.get(v)
            if x is not None and not x.is_zero:
                acc = acc + x * (w / total)
        blended[v] = acc
    return blended


def repair_witness(
    system: LinearSystem, assignment: Mapping[str, KRatFun]
) -> Tuple[Optional[Dict[str, KRatFun]], Tuple[int, ...]]:
    """Makes every != row a nonzero function of K.

    Rows that vanish under ``assignment`` are solved separately with their
    per-row problems; the points are then blended with convex weights
    m^k / sum m^k until no != row vanishes. Returns (None, rows) when some
    row admits neither sign, i.e. the system is infeasible.
    """
    from .alp_solver import alp_feasible

    values = _ne_values(system, assignment)
    vanishing = [i for i, v in enumerate(values, 1) if v.is_zero]
    if not vanishing:
        return dict(assignment), ()

    logger.log_debug(f"Repairing '!=' rows {vanishing}")
    by_row: Dict[int, List[AlpProblem]] = {}
    for alp in per_inequation_alps(system):
        by_row.setdefault(alp.case.pair[0], []).append(alp)

    points = [assignment]
    for i in vanishing:
        found = None
        for alp in by_row[i]:
            status, witness = alp_feasible(alp)
            if status is Status.FEASIBLE:
                found = witness
                break
        if found is None:
            logger.log_debug(f"'!=' row {i} admits neither sign")
            return None, tuple(vanishing)
        points.append(found)

    r = len(values)
    for m in range(1, r * (r + 1) + 2):
        blended = _blend(points, m, system.variables)
        if not any(v.is_zero for v in _ne_values(system, blended)):
            return blended, tuple(vanishing)
    raise GadgetError("no blending weight separates every '!=' row from zero")


def decide_feasibility(system: LinearSystem, jobs: Optional[int] = None, bundle: Optional[ReductionBundle] = None) -> Verdict:
    """Decides the system through its reduction.

    Cases are evaluated in enumeration order (in waves of ``jobs``); the
    lowest-index feasible case is reported and its witness concretized.
    """
    from .alp_solver import concretize_witness
    from .pipeline import first_feasible

    jobs = jobs or DEFAULT_JOBS
    bundle = bundle or reduce(system)
    count = len(bundle.alps)
    logger.log_debug(f"{count} case problems, {len(bundle.variables)} columns")

    hit = first_feasible(bundle.alps, jobs)
    if hit is None:
        return Verdict(Status.INFEASIBLE, alp_count=count)

    alp, symbolic = hit
    assignment = {v: symbolic.get(v, KRatFun(KPoly.zero())) for v in system.variables}
    repaired, rows = repair_witness(system, assignment)
    if repaired is None:
        return Verdict(Status.INFEASIBLE, repaired_rows=rows, alp_count=count)

    witness = concretize_witness(repaired, system)
    return Verdict(
        Status.FEASIBLE,
        feasible_case=alp.case,
        case_index=alp.index,
        witness=witness,
        repaired_rows=rows,
        alp_count=count,
    )


# ==========================================
# NON-TRIVIALITY
# ==========================================

def augment_nontrivial(system: LinearSystem, subset: Sequence[str]) -> LinearSystem:
    """Adds w_j with sum(w) != 0 and x_{subset[j]} = (K+j) w_j, so a solution
    exists iff the system has one with some subset variable nonzero."""
    if not subset:
        raise ValidationError("the non-triviality subset is empty")
    seen = set()
    for v in subset:
        if v not in system.variables:
            raise ValidationError(f"unknown variable '{v}'")
        if v in seen:
            raise ValidationError(f"duplicate subset member '{v}'")
        seen.add(v)

    w = _fresh(AUX_W, len(subset), system.variables)
    added = [Constraint({wj: Fraction(1) for wj in w}, Relop.NE, 0)]
    for j, (x, wj) in enumerate(zip(subset, w), 1):
        added.append(Constraint({x: Fraction(1), wj: -KPoly.linear(1, j)}, Relop.EQ, 0))
    return validate(
        list(system.constraints) + added,
        list(system.variables) + list(w),
        allow_aux=True,
    )


# ==========================================
# GADGET MATRIX
# ==========================================

def gadget_matrix(n: int) -> List[List[int]]:
    """n x n, zero diagonal, ones elsewhere."""
    return [[0 if i == j else 1 for j in range(n)] for i in range(n)]


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> Fraction:
    """Fraction-free elimination with row swaps on zero pivots."""
    m = [list(map(Fraction, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def gadget_matrix_det(n: int) -> Fraction:
    if n < 2:
        raise GadgetError(f"gadget matrix needs N >= 2, got {n}")
    det = bareiss_determinant(gadget_matrix(n))
    if det == 0:
        raise GadgetError(f"gadget matrix of size {n} is singular")
    return det


def gadget_images(z: Sequence[Fraction]) -> List[KRatFun]:
    """y_i(K) = sum_{j != i} z_j / (K + j), 1-based j."""
    n = len(z)
    terms = [KRatFun(KPoly.const(Fraction(zj)), KPoly.linear(1, j)) for j, zj in enumerate(z, 1)]
    zero = KRatFun(KPoly.zero())
    images = []
    for i in range(n):
        acc = zero
        for j in range(n):
            if j != i:
                acc = acc + terms[j]
        images.append(acc)
    return images
