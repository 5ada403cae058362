"""
Data model: input linear systems, generated ALPs, case descriptors, verdicts and witnesses.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .constants import AUX_PREFIX, K_SYMBOL
from .errors import ValidationError
from .numeric import (
    KPoly,
    KRatFun,
    format_rational,
    gcd_of_numerators,
    lcm_of_denominators,
)

Coefficient = Union[Fraction, KPoly]


class Relop(Enum):
    """Relational operators of a validated system (>= and > are normalized away)."""
    LE = "<="
    LT = "<"
    EQ = "="
    NE = "!="


class Comparison(Enum):
    """Operators as written in a source text, before normalization."""
    LE = "<="
    LT = "<"
    EQ = "="
    NE = "!="
    GE = ">="
    GT = ">"


def _clean_coefficient(value: Union[Coefficient, int]) -> Optional[Coefficient]:
    """Fraction for constants, KPoly only when it really depends on K; None for zero."""
    if isinstance(value, KPoly):
        if value.is_zero:
            return None
        if value.is_constant:
            return value.constant_value()
        return value
    value = Fraction(value)
    return value if value != 0 else None


def _as_kpoly(value: Coefficient) -> KPoly:
    return value if isinstance(value, KPoly) else KPoly.const(value)


def _relop_holds(value, relop: Relop, rhs) -> bool:
    # works for Fraction and for KRatFun (ordered at +infinity) alike
    if relop is Relop.LE:
        return value <= rhs
    if relop is Relop.LT:
        return value < rhs
    if relop is Relop.EQ:
        return value == rhs
    return value != rhs


# ==========================================
# INPUT SYSTEMS
# ==========================================

@dataclass(frozen=True)
class Constraint:
    """sum(coeffs[v] * v) relop rhs. Absent variables have coefficient zero."""
    coeffs: Dict[str, Coefficient]
    relop: Relop
    rhs: Fraction = Fraction(0)

    def __post_init__(self):
        cleaned = {}
        for var, c in self.coeffs.items():
            c = _clean_coefficient(c)
            if c is not None:
                cleaned[var] = c
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @property
    def is_parametric(self) -> bool:
        return any(isinstance(c, KPoly) for c in self.coeffs.values())

    def at(self, k: Fraction) -> "Constraint":
        """Substitutes K = k into parametric coefficients."""
        if not self.is_parametric:
            return self
        return Constraint(
            {v: (c.evaluate(k) if isinstance(c, KPoly) else c) for v, c in self.coeffs.items()},
            self.relop,
            self.rhs,
        )

    def value(self, point: Mapping[str, Fraction], k: Optional[Fraction] = None) -> Fraction:
        total = Fraction(0)
        for var, c in self.coeffs.items():
            if isinstance(c, KPoly):
                if k is None:
                    raise ValidationError("parametric constraint evaluated without a value for K")
                c = c.evaluate(k)
            total += c * Fraction(point.get(var, 0))
        return total

    def holds(self, point: Mapping[str, Fraction], k: Optional[Fraction] = None) -> bool:
        return _relop_holds(self.value(point, k), self.relop, self.rhs)

    def symbolic_value(self, assignment: Mapping[str, KRatFun]) -> KRatFun:
        total = KRatFun(KPoly.zero())
        for var, c in self.coeffs.items():
            x = assignment.get(var)
            if x is None or x.is_zero:
                continue
            total = total + KRatFun.of(c) * x
        return total

    def symbolic_holds(self, assignment: Mapping[str, KRatFun]) -> bool:
        return _relop_holds(self.symbolic_value(assignment), self.relop, KRatFun.of(self.rhs))

    def kpoly_coeffs(self) -> Dict[str, KPoly]:
        return {v: _as_kpoly(c) for v, c in self.coeffs.items()}

    def scaled(self, factor: int) -> "Constraint":
        """Multiplies both sides by a positive integer."""
        if factor <= 0:
            raise ValueError("scaling factor must be positive")
        return Constraint(
            {v: (c * factor) for v, c in self.coeffs.items()}, self.relop, self.rhs * factor
        )


@dataclass(frozen=True)
class LinearSystem:
    variables: Tuple[str, ...]
    constraints: Tuple[Constraint, ...]

    def rows(self, relop: Relop) -> List[Constraint]:
        return [c for c in self.constraints if c.relop is relop]

    @property
    def le_rows(self) -> List[Constraint]:
        return self.rows(Relop.LE)

    @property
    def lt_rows(self) -> List[Constraint]:
        return self.rows(Relop.LT)

    @property
    def eq_rows(self) -> List[Constraint]:
        return self.rows(Relop.EQ)

    @property
    def ne_rows(self) -> List[Constraint]:
        return self.rows(Relop.NE)

    @property
    def counts(self) -> Dict[str, int]:
        return {
            "N": len(self.variables),
            "P": len(self.le_rows),
            "Q": len(self.lt_rows),
            "R": len(self.ne_rows),
            "E": len(self.eq_rows),
        }

    @property
    def is_parametric(self) -> bool:
        return any(c.is_parametric for c in self.constraints)


def normalize(
    lhs: Mapping[str, Union[Coefficient, int]],
    op: Comparison,
    rhs: Mapping[str, Union[Coefficient, int]] = None,
    lhs_const: Union[Fraction, int] = 0,
    rhs_const: Union[Fraction, int] = 0,
) -> Constraint:
    """Moves variable terms left and constants right; >= and > flip into <= and <.

    For = and != rows the orientation makes the first coefficient positive,
    so "3 = x" becomes "x = 3".
    """
    rhs = rhs or {}
    coeffs: Dict[str, KPoly] = {}
    for var, c in lhs.items():
        coeffs[var] = coeffs.get(var, KPoly.zero()) + _as_kpoly(Fraction(c) if not isinstance(c, KPoly) else c)
    for var, c in rhs.items():
        coeffs[var] = coeffs.get(var, KPoly.zero()) - _as_kpoly(Fraction(c) if not isinstance(c, KPoly) else c)
    constant = Fraction(rhs_const) - Fraction(lhs_const)
    coeffs = {v: c for v, c in coeffs.items() if not c.is_zero}

    if op in (Comparison.GE, Comparison.GT):
        coeffs = {v: -c for v, c in coeffs.items()}
        constant = -constant
        relop = Relop.LE if op is Comparison.GE else Relop.LT
    else:
        relop = Relop(op.value)
        if relop in (Relop.EQ, Relop.NE):
            first = next(iter(coeffs.values()), None)
            if first is not None and first.leading < 0:
                coeffs = {v: -c for v, c in coeffs.items()}
                constant = -constant
    return Constraint(dict(coeffs), relop, constant)


def _check_name(name: str, allow_aux: bool):
    if not name or name == K_SYMBOL:
        raise ValidationError(f"'{name}' is reserved for the time parameter")
    if name.startswith(AUX_PREFIX) and not allow_aux:
        raise ValidationError(f"variable '{name}' uses the reserved prefix '{AUX_PREFIX}'")


def validate(
    constraints: Iterable[Constraint],
    variables: Optional[Sequence[str]] = None,
    allow_aux: bool = False,
) -> LinearSystem:
    """Builds a validated LinearSystem.

    With declared variables every referenced variable must be declared; without,
    variables are collected in order of first appearance. Constant rows such as
    "0 <= -1" are legal and simply unsatisfiable.
    """
    constraints = list(constraints)
    if variables is not None:
        seen = set()
        for v in variables:
            if v in seen:
                raise ValidationError(f"duplicate variable declaration '{v}'")
            seen.add(v)
            _check_name(v, allow_aux)
        order = list(variables)
        for i, c in enumerate(constraints, 1):
            for v in c.coeffs:
                if v not in seen:
                    raise ValidationError(f"constraint {i} references undeclared variable '{v}'")
    else:
        order = []
        for c in constraints:
            for v in c.coeffs:
                if v not in order:
                    _check_name(v, allow_aux)
                    order.append(v)

    position = {v: i for i, v in enumerate(order)}
    canonical = []
    for i, c in enumerate(constraints, 1):
        for v, coeff in c.coeffs.items():
            if isinstance(coeff, KPoly) and coeff.degree > 1:
                raise ValidationError(f"constraint {i}: coefficient of '{v}' has degree > 1 in K")
        ordered = dict(sorted(c.coeffs.items(), key=lambda kv: position[kv[0]]))
        rhs = c.rhs
        if c.relop in (Relop.EQ, Relop.NE) and ordered:
            first = _as_kpoly(next(iter(ordered.values())))
            if first.leading < 0:
                ordered = {v: -coeff for v, coeff in ordered.items()}
                rhs = -rhs
        canonical.append(Constraint(ordered, c.relop, rhs))
    return LinearSystem(tuple(order), tuple(canonical))


# ==========================================
# CHECKERS
# ==========================================

def violations(system: LinearSystem, point: Mapping[str, Fraction], k: Optional[Fraction] = None) -> List[int]:
    """0-based indices of rows the exact point fails (each relop with its own semantics)."""
    return [i for i, c in enumerate(system.constraints) if not c.holds(point, k)]


def satisfies(system: LinearSystem, point: Mapping[str, Fraction], k: Optional[Fraction] = None) -> bool:
    return not violations(system, point, k)


def symbolic_violations(system: LinearSystem, assignment: Mapping[str, KRatFun]) -> List[int]:
    """Rows failing in the ordered field: strict rows must hold strictly at +infinity,
    != rows must not vanish identically."""
    return [i for i, c in enumerate(system.constraints) if not c.symbolic_holds(assignment)]


# ==========================================
# GENERATED ALPS
# ==========================================

@dataclass(frozen=True)
class AlpConstraint:
    """sum(coeffs * var) <= rhs, coefficients polynomial in K."""
    coeffs: Tuple[Tuple[str, KPoly], ...]
    rhs: KPoly = KPoly.zero()

    @property
    def max_degree(self) -> int:
        return max([c.degree for _, c in self.coeffs] + [self.rhs.degree])

    def at(self, k: Fraction) -> Tuple[Dict[str, Fraction], Fraction]:
        return {v: c.evaluate(k) for v, c in self.coeffs}, self.rhs.evaluate(k)

    def symbolic_holds(self, assignment: Mapping[str, KRatFun]) -> bool:
        total = KRatFun(KPoly.zero())
        for v, c in self.coeffs:
            x = assignment.get(v)
            if x is not None and not x.is_zero:
                total = total + KRatFun(c) * x
        return total <= KRatFun(self.rhs)


def alp_row(
    coeffs: Mapping[str, Union[KPoly, Fraction, int]],
    rhs: Union[KPoly, Fraction, int],
    order: Mapping[str, int],
) -> AlpConstraint:
    """Canonical row: zero terms dropped, terms sorted by variable order, and the
    whole row scaled by a positive factor to integer coefficients with content 1."""
    polys = {v: KPoly.coerce(c) for v, c in coeffs.items()}
    polys = {v: p for v, p in polys.items() if not p.is_zero}
    rhs = KPoly.coerce(rhs)
    every = [x for p in list(polys.values()) + [rhs] for x in p.coeffs]
    if every:
        scale = Fraction(lcm_of_denominators(every), 1)
        content = gcd_of_numerators(x * scale for x in every)
        if content:
            scale /= content
        polys = {v: p.scale(scale) for v, p in polys.items()}
        rhs = rhs.scale(scale)
    terms = tuple(sorted(polys.items(), key=lambda kv: order.get(kv[0], len(order))))
    return AlpConstraint(terms, rhs)


class Sign(Enum):
    NEG = "NEG"
    POS = "POS"


class CaseKind(Enum):
    EMPTY = "EMPTY"          # R = 0
    SINGLE = "SINGLE"        # R = 1, sign applied to f1
    PAIR = "PAIR"            # R >= 2, pair (a, b) of z indices
    INEQUATION = "INEQUATION"  # repair ALP: sign applied to one != row


@dataclass(frozen=True)
class CaseDescriptor:
    kind: CaseKind
    pair: Tuple[int, ...] = ()
    signs: Tuple[Sign, ...] = ()

    @classmethod
    def empty(cls) -> "CaseDescriptor":
        return cls(CaseKind.EMPTY)

    @classmethod
    def single(cls, sign: Sign) -> "CaseDescriptor":
        return cls(CaseKind.SINGLE, (1,), (sign,))

    @classmethod
    def of_pair(cls, a: int, b: int, sign_a: Sign, sign_b: Sign) -> "CaseDescriptor":
        if not 1 <= a < b:
            raise ValueError(f"case pair must satisfy 1 <= a < b, got ({a}, {b})")
        return cls(CaseKind.PAIR, (a, b), (sign_a, sign_b))

    @classmethod
    def inequation(cls, row: int, sign: Sign) -> "CaseDescriptor":
        return cls(CaseKind.INEQUATION, (row,), (sign,))

    def __str__(self) -> str:
        if self.kind is CaseKind.EMPTY:
            return "EMPTY"
        signs = ",".join(s.value for s in self.signs)
        if self.kind is CaseKind.SINGLE:
            return f"SINGLE({signs})"
        if self.kind is CaseKind.INEQUATION:
            return f"INEQUATION({self.pair[0]},{signs})"
        return f"PAIR({self.pair[0]},{self.pair[1]},{signs})"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "pair": list(self.pair) or None,
            "signs": [s.value for s in self.signs] or None,
        }


@dataclass(frozen=True)
class AlpProblem:
    variables: Tuple[str, ...]
    rows: Tuple[AlpConstraint, ...]
    case: CaseDescriptor
    index: int = 0

    @classmethod
    def assemble(
        cls,
        variables: Sequence[str],
        rows: Iterable[AlpConstraint],
        case: CaseDescriptor,
        index: int = 0,
    ) -> "AlpProblem":
        """Keeps the first occurrence of every canonical row."""
        seen = set()
        unique = []
        for row in rows:
            if row in seen:
                continue
            seen.add(row)
            unique.append(row)
        return cls(tuple(variables), tuple(unique), case, index)


# ==========================================
# VERDICTS
# ==========================================

class Status(Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Witness:
    """symbolic: variable -> rational function of K; k0: the concrete K at which
    ``point`` (exact rationals for the system's variables) satisfies the system.
    Oracle witnesses carry no K (k0 is None, symbolic empty)."""
    symbolic: Dict[str, KRatFun]
    k0: Optional[Fraction]
    point: Dict[str, Fraction]

    def point_strings(self) -> Dict[str, str]:
        return {v: format_rational(q) for v, q in self.point.items()}


@dataclass(frozen=True)
class Verdict:
    status: Status
    feasible_case: Optional[CaseDescriptor] = None
    case_index: Optional[int] = None
    witness: Optional[Witness] = None
    repaired_rows: Tuple[int, ...] = field(default_factory=tuple)
    alp_count: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE
