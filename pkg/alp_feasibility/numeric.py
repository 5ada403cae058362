"""
Exact arithmetic for the engine.

- Rational: ``fractions.Fraction`` (canonical p/q, q > 0).
- KPoly: polynomial in the time parameter K with rational coefficients.
- KRatFun: quotient of two KPoly, kept reduced with a monic denominator.
  The field is ordered by the eventual sign as K -> +infinity, which makes
  ``a < b`` mean "a(K) < b(K) for every sufficiently large K".

All values are immutable; operations never mutate their operands.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Tuple, Union

from .errors import NumericDomainError

Rational = Fraction
Scalar = Union[int, Fraction]


class ArithOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


# ==========================================
# RATIONALS
# ==========================================

def rat_arith(a: Fraction, b: Fraction, op: ArithOp) -> Fraction:
    """Exact rational arithmetic; dividing by zero raises NumericDomainError."""
    a, b = Fraction(a), Fraction(b)
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.SUB:
        return a - b
    if op is ArithOp.MUL:
        return a * b
    if b == 0:
        raise NumericDomainError(f"division of {format_rational(a)} by zero")
    return a / b


def format_rational(q: Scalar) -> str:
    """Canonical text: "p/q", or "p" when q = 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of format_rational (also accepts plain integers)."""
    return Fraction(text.strip())


def _sign(q: Scalar) -> int:
    return (q > 0) - (q < 0)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    result = 1
    for v in values:
        d = Fraction(v).denominator
        result = result * d // gcd(result, d)
    return result


def gcd_of_numerators(values: Iterable[Fraction]) -> int:
    return reduce(gcd, (abs(Fraction(v).numerator) for v in values), 0)


# ==========================================
# POLYNOMIALS IN K
# ==========================================

def _trim(coeffs: Iterable[Scalar]) -> Tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class KPoly:
    """Polynomial in K; ``coeffs[d]`` multiplies K^d. Trailing zeros are stripped,
    so the zero polynomial is the empty tuple."""
    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    # ---- constructors ----
    @classmethod
    def zero(cls) -> "KPoly":
        return cls(())

    @classmethod
    def one(cls) -> "KPoly":
        return cls((Fraction(1),))

    @classmethod
    def const(cls, c: Scalar) -> "KPoly":
        return cls((Fraction(c),))

    @classmethod
    def k(cls) -> "KPoly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def linear(cls, slope: Scalar, intercept: Scalar) -> "KPoly":
        """slope*K + intercept."""
        return cls((Fraction(intercept), Fraction(slope)))

    @classmethod
    def coerce(cls, value: Union["KPoly", Scalar]) -> "KPoly":
        if isinstance(value, KPoly):
            return value
        return cls.const(value)

    # ---- structure ----
    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial."""
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # ---- arithmetic ----
    def __add__(self, other) -> "KPoly":
        if not isinstance(other, (KPoly, int, Fraction)):
            return NotImplemented
        other = KPoly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, v in enumerate(b):
            res[i] += v
        return KPoly(tuple(res))

    __radd__ = __add__

    def __neg__(self) -> "KPoly":
        return KPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "KPoly":
        if not isinstance(other, (KPoly, int, Fraction)):
            return NotImplemented
        return self + (-KPoly.coerce(other))

    def __rsub__(self, other) -> "KPoly":
        return KPoly.coerce(other) - self

    def __mul__(self, other) -> "KPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, KPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return KPoly.zero()
        res = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                res[i + j] += a * b
        return KPoly(tuple(res))

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "KPoly":
        c = Fraction(c)
        if c == 0:
            return KPoly.zero()
        return KPoly(tuple(x * c for x in self.coeffs))

    def divmod(self, other: "KPoly") -> Tuple["KPoly", "KPoly"]:
        """Polynomial long division over Q."""
        if other.is_zero:
            raise NumericDomainError("polynomial division by the zero polynomial")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        dd = other.degree
        while len(rem) - 1 >= dd and rem:
            shift = len(rem) - 1 - dd
            factor = rem[-1] / lead
            quot[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= factor * c
            rem = list(_trim(rem))
        return KPoly(tuple(quot)), KPoly(tuple(rem))

    def exquo(self, other: "KPoly") -> "KPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "KPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    @staticmethod
    def gcd(a: "KPoly", b: "KPoly") -> "KPoly":
        """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    # ---- evaluation & content ----
    def evaluate(self, k: Scalar) -> Fraction:
        k = Fraction(k)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def sign_at_infinity(self) -> int:
        return _sign(self.leading)

    def __str__(self) -> str:
        return format_kpoly(self)


def format_kpoly(p: KPoly) -> str:
    """Sum of c*K^d terms in decreasing degree, e.g. "K+2", "3*K^2-1/2*K", "0"."""
    if p.is_zero:
        return "0"
    parts = []
    for d in range(p.degree, -1, -1):
        c = p.coeffs[d]
        if c == 0:
            continue
        mag = abs(c)
        if d == 0:
            body = format_rational(mag)
        else:
            mono = "K" if d == 1 else f"K^{d}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"-{body}" if c < 0 else f"+{body}")
    return "".join(parts)


# ==========================================
# RATIONAL FUNCTIONS ORDERED AT +INFINITY
# ==========================================

def _coerce_ratfun(value) -> "KRatFun":
    if isinstance(value, KRatFun):
        return value
    if isinstance(value, KPoly):
        return KRatFun(value)
    if isinstance(value, (int, Fraction)):
        return KRatFun(KPoly.const(value))
    raise TypeError(f"cannot use {type(value).__name__} as a rational function of K")


@dataclass(frozen=True, eq=False)
class KRatFun:
    """num/den in reduced form with a monic denominator."""
    num: KPoly
    den: KPoly = KPoly.one()

    def __post_init__(self):
        num, den = self.num, self.den
        if den.is_zero:
            raise NumericDomainError("rational function with zero denominator")
        if num.is_zero:
            num, den = KPoly.zero(), KPoly.one()
        elif den.is_constant:
            num, den = num.scale(1 / den.leading), KPoly.one()
        else:
            g = KPoly.gcd(num, den)
            if g.degree > 0:
                num, den = num.exquo(g), den.exquo(g)
            lead = den.leading
            if lead != 1:
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _trusted(cls, num: KPoly, den: KPoly) -> "KRatFun":
        """Builds from parts already in canonical form (skips the gcd)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def of(cls, value) -> "KRatFun":
        return _coerce_ratfun(value)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # ---- arithmetic ----
    def __add__(self, other) -> "KRatFun":
        try:
            other = _coerce_ratfun(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.den.is_constant and other.den.is_constant:
            return KRatFun._trusted(self.num + other.num, self.den)
        if self.den == other.den:
            return KRatFun(self.num + other.num, self.den)
        return KRatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "KRatFun":
        return KRatFun._trusted(-self.num, self.den)

    def __sub__(self, other) -> "KRatFun":
        try:
            other = _coerce_ratfun(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "KRatFun":
        return _coerce_ratfun(other) - self

    def __mul__(self, other) -> "KRatFun":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return KRatFun(KPoly.zero())
            return KRatFun._trusted(self.num.scale(other), self.den)
        try:
            other = _coerce_ratfun(other)
        except TypeError:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return KRatFun(KPoly.zero())
        if self.den.is_constant and other.den.is_constant:
            return KRatFun._trusted(self.num * other.num, self.den)
        return KRatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "KRatFun":
        try:
            other = _coerce_ratfun(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            raise NumericDomainError("division by the zero rational function")
        if other.num.is_constant and other.den.is_constant:
            return KRatFun._trusted(self.num.scale(1 / other.num.leading), self.den)
        return KRatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "KRatFun":
        return _coerce_ratfun(other) / self

    # ---- order ----
    def sign(self) -> int:
        # den is monic, so the sign is the sign of num's leading coefficient
        return self.num.sign_at_infinity()

    def _diff_sign(self, other) -> int:
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.sign()
        other = _coerce_ratfun(other)
        if self.den.is_constant and other.den.is_constant:
            return (self.num - other.num).sign_at_infinity()
        # both denominators are monic, hence positive for large K
        return (self.num * other.den - other.num * self.den).sign_at_infinity()

    def __eq__(self, other) -> bool:
        try:
            other = _coerce_ratfun(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __lt__(self, other) -> bool:
        return self._diff_sign(other) < 0

    def __le__(self, other) -> bool:
        return self._diff_sign(other) <= 0

    def __gt__(self, other) -> bool:
        return self._diff_sign(other) > 0

    def __ge__(self, other) -> bool:
        return self._diff_sign(other) >= 0

    def evaluate(self, k: Scalar) -> Fraction:
        d = self.den.evaluate(k)
        if d == 0:
            raise NumericDomainError(f"pole of {self} at K = {format_rational(k)}")
        return self.num.evaluate(k) / d

    def __str__(self) -> str:
        return format_ratfun(self)


def format_ratfun(f: KRatFun) -> str:
    if f.is_polynomial:
        return format_kpoly(f.num)
    return f"({format_kpoly(f.num)})/({format_kpoly(f.den)})"


# ==========================================
# OPERATIONS
# ==========================================

def ratfun_arith(a: KRatFun, b: KRatFun, op: ArithOp) -> KRatFun:
    """Exact field arithmetic on rational functions of K (always reduced)."""
    a, b = _coerce_ratfun(a), _coerce_ratfun(b)
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.SUB:
        return a - b
    if op is ArithOp.MUL:
        return a * b
    return a / b


def sign_at_infinity(f: KRatFun) -> int:
    """Constant sign of f(K) for all sufficiently large K."""
    return _coerce_ratfun(f).sign()


def ratfun_compare(a: KRatFun, b: KRatFun) -> Ordering:
    s = sign_at_infinity(_coerce_ratfun(a) - _coerce_ratfun(b))
    return Ordering(s)


def eval_at(f: KRatFun, k: Scalar) -> Fraction:
    """Exact value f(k); a pole raises NumericDomainError."""
    return _coerce_ratfun(f).evaluate(k)
