"""
Text formats.

``.lsys`` (linear systems)::

    # comment
    vars x1, x2, x3
    2 x1 + 3 x2 - x3 <= 5
    x1 != 0
    1/2 x2 >= x3 + 1

``.alp`` (generated problems) use the same term grammar; a coefficient may be a
K-polynomial factor such as ``(K+2)``, ``K`` or ``3*K^2``. Headers record the case.
"""
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .constants import K_SYMBOL, UNICODE_OPERATORS
from .errors import ParseError, SourceSpan
from .model import (
    AlpConstraint,
    AlpProblem,
    CaseDescriptor,
    Comparison,
    Constraint,
    LinearSystem,
    Sign,
    alp_row,
    normalize,
    validate,
)
from .numeric import KPoly, format_kpoly, format_rational

__all__ = [
    "SourceSpan",
    "parse_system",
    "render_system",
    "parse_alp",
    "render_alp",
    "render_manifest",
]

# ==========================================
# TOKENIZER
# ==========================================

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<num>\d+(?:\.\d+|/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|>=|!=|<|>|=|≤|≥|≠)
  | (?P<punct>[-+*^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(line: str, lineno: int) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if not m:
            raise ParseError(f"unexpected character {line[pos]!r}", SourceSpan(lineno, pos + 1, pos + 2))
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            if kind == "op":
                text = UNICODE_OPERATORS.get(text, text)
            elif kind == "punct":
                kind = text
            tokens.append(Token(kind, text, SourceSpan(lineno, m.start() + 1, m.end() + 1)))
        pos = m.end()
    return tokens


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


# ==========================================
# TERM PARSER
# ==========================================

class _LinearExpr:
    """Accumulates variable terms (KPoly coefficients) and a constant."""

    def __init__(self):
        self.terms: Dict[str, KPoly] = {}
        self.constant = KPoly.zero()

    def add(self, var: Optional[str], coeff: KPoly):
        if var is None:
            self.constant = self.constant + coeff
        else:
            self.terms[var] = self.terms.get(var, KPoly.zero()) + coeff


class _TermParser:
    """Recursive descent over one line's tokens.

    sum     := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (['*'] factor)*
    factor  := NUMBER | K ['^' NUMBER] | IDENT | '(' sum-without-variables ')'
    """

    def __init__(self, tokens: List[Token], lineno: int, line_len: int):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno
        self.line_len = line_len

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of line", self._eol())
        self.pos += 1
        return tok

    def _eol(self) -> SourceSpan:
        return SourceSpan(self.lineno, self.line_len + 1, self.line_len + 2)

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def parse_sum(self, allow_vars: bool = True) -> _LinearExpr:
        expr = _LinearExpr()
        sign = 1
        tok = self.peek()
        if tok is not None and tok.kind in ("+", "-"):
            sign = -1 if tok.kind == "-" else 1
            self.pos += 1
        while True:
            var, coeff = self.parse_term(allow_vars)
            expr.add(var, coeff.scale(sign))
            tok = self.peek()
            if tok is None or tok.kind not in ("+", "-"):
                return expr
            sign = -1 if tok.kind == "-" else 1
            self.pos += 1

    def parse_term(self, allow_vars: bool) -> Tuple[Optional[str], KPoly]:
        coeff = KPoly.one()
        var: Optional[str] = None
        var_span: Optional[SourceSpan] = None
        factors = 0
        while True:
            tok = self.peek()
            if tok is None or tok.kind in ("+", "-", "op", ")", ","):
                if factors == 0:
                    raise ParseError("expected a term", tok.span if tok else self._eol())
                return var, coeff
            if tok.kind == "*":
                if factors == 0:
                    raise ParseError("'*' without a left factor", tok.span)
                self.pos += 1
                tok = self.peek()
                if tok is None or tok.kind in ("+", "-", "op", ")", ",", "*"):
                    raise ParseError("'*' without a right factor", tok.span if tok else self._eol())
            self.pos += 1
            if tok.kind == "num":
                try:
                    value = Fraction(tok.text)
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"invalid number '{tok.text}'", tok.span) from None
                coeff = coeff.scale(value)
            elif tok.kind == "ident" and tok.text == K_SYMBOL:
                power = 1
                if self.peek() is not None and self.peek().kind == "^":
                    self.pos += 1
                    exp_tok = self.next()
                    if exp_tok.kind != "num" or not exp_tok.text.isdigit():
                        raise ParseError("exponent of K must be a non-negative integer", exp_tok.span)
                    power = int(exp_tok.text)
                coeff = coeff * KPoly(tuple([Fraction(0)] * power + [Fraction(1)]))
            elif tok.kind == "ident":
                if not allow_vars:
                    raise ParseError(f"variable '{tok.text}' inside a K-polynomial factor", tok.span)
                if var is not None:
                    raise ParseError(
                        f"nonlinear term: '{var}' multiplied by '{tok.text}'",
                        SourceSpan(self.lineno, var_span.col_start, tok.span.col_end),
                    )
                var, var_span = tok.text, tok.span
            elif tok.kind == "(":
                inner = self.parse_sum(allow_vars=False)
                close = self.next()
                if close.kind != ")":
                    raise ParseError("expected ')'", close.span)
                coeff = coeff * inner.constant
            else:
                raise ParseError(f"unexpected token {tok.text!r}", tok.span)
            factors += 1


def _parse_comparison(tokens: List[Token], lineno: int, line_len: int) -> Tuple[_LinearExpr, str, _LinearExpr, SourceSpan]:
    parser = _TermParser(tokens, lineno, line_len)
    lhs = parser.parse_sum()
    op_tok = parser.next()
    if op_tok.kind != "op":
        raise ParseError(f"expected a relational operator, got {op_tok.text!r}", op_tok.span)
    rhs = parser.parse_sum()
    if not parser.at_end():
        extra = parser.peek()
        raise ParseError(f"unexpected token {extra.text!r} after the right side", extra.span)
    return lhs, op_tok.text, rhs, op_tok.span


def _parse_vars(tokens: List[Token]) -> List[str]:
    names = []
    for tok in tokens[1:]:
        if tok.kind == ",":
            continue
        if tok.kind != "ident":
            raise ParseError(f"expected a variable name, got {tok.text!r}", tok.span)
        names.append(tok.text)
    return names


def _constant_of(expr: _LinearExpr, span: SourceSpan) -> Fraction:
    if not expr.constant.is_constant:
        raise ParseError(f"{K_SYMBOL} may only multiply a variable in a linear system", span)
    return expr.constant.constant_value()


# ==========================================
# SYSTEMS
# ==========================================

def parse_system(text: str, allow_aux: bool = False) -> LinearSystem:
    """Parses a .lsys text into a validated LinearSystem.

    ``allow_aux`` admits reserved ``_``-prefixed names (augmented systems).
    """
    declared: Optional[List[str]] = None
    constraints: List[Constraint] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        tokens = _tokenize(line, lineno)
        if not tokens:
            continue
        if tokens[0].kind == "ident" and tokens[0].text == "vars" and not any(t.kind == "op" for t in tokens):
            if declared is not None:
                raise ParseError("second 'vars' declaration", tokens[0].span)
            if constraints:
                raise ParseError("'vars' must precede the constraints", tokens[0].span)
            declared = _parse_vars(tokens)
            continue
        lhs, op, rhs, op_span = _parse_comparison(tokens, lineno, len(line))
        full = SourceSpan(lineno, tokens[0].span.col_start, tokens[-1].span.col_end)
        constraints.append(
            normalize(
                lhs.terms,
                Comparison(op),
                rhs.terms,
                lhs_const=_constant_of(lhs, full),
                rhs_const=_constant_of(rhs, full),
            )
        )
    return validate(constraints, declared, allow_aux=allow_aux)


def _format_coefficient(c: KPoly) -> Tuple[int, str]:
    """Sign and magnitude text of a term coefficient ("" for 1)."""
    sign = c.sign_at_infinity()
    mag = c.scale(sign)
    if mag.is_constant:
        value = mag.constant_value()
        return sign, "" if value == 1 else format_rational(value)
    monomial = sum(1 for x in mag.coeffs if x != 0) == 1
    text = format_kpoly(mag)
    return sign, text if monomial else f"({text})"


def _render_terms(terms: Sequence[Tuple[Optional[str], KPoly]]) -> str:
    parts = []
    for var, coeff in terms:
        sign, mag = _format_coefficient(coeff)
        if var is None:
            body = mag or "1"
        else:
            body = f"{mag} {var}" if mag else var
        if not parts:
            parts.append(f"-{body}" if sign < 0 else body)
        else:
            parts.append(f"- {body}" if sign < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


def render_constraint(c: Constraint) -> str:
    lhs = _render_terms([(v, KPoly.coerce(k)) for v, k in c.coeffs.items()])
    return f"{lhs} {c.relop.value} {format_rational(c.rhs)}"


def render_system(system: LinearSystem) -> str:
    """Canonical text, a fixed point of parse_system."""
    n = system.counts
    lines = [f"# linear system: N={n['N']} P={n['P']} Q={n['Q']} E={n['E']} R={n['R']}"]
    if system.variables:
        lines.append("vars " + ", ".join(system.variables))
    lines.extend(render_constraint(c) for c in system.constraints)
    return "\n".join(lines) + "\n"


# ==========================================
# ALPS
# ==========================================

_CASE_RE = re.compile(
    r"^#\s*case\s+(?P<index>\d+):\s*(?P<desc>EMPTY|SINGLE\((?P<s1>NEG|POS)\)"
    r"|PAIR\((?P<a>\d+),(?P<b>\d+),(?P<sa>NEG|POS),(?P<sb>NEG|POS)\)"
    r"|INEQUATION\((?P<row>\d+),(?P<sr>NEG|POS)\))\s*$"
)


def render_alp_row(row: AlpConstraint) -> str:
    terms: List[Tuple[Optional[str], KPoly]] = []
    rhs = row.rhs
    if rhs.is_constant and rhs.constant_value() < 0:
        terms.append((None, -rhs))
        rhs = KPoly.zero()
    terms.extend(row.coeffs)
    return f"{_render_terms(terms)} <= {format_kpoly(rhs)}"


def render_alp(alp: AlpProblem) -> str:
    lines = [
        f"# case {alp.index}: {alp.case}",
        f"# rows: {len(alp.rows)}",
        "vars " + ", ".join(alp.variables),
    ]
    lines.extend(render_alp_row(r) for r in alp.rows)
    return "\n".join(lines) + "\n"


def _parse_case(line: str, lineno: int) -> Tuple[int, CaseDescriptor]:
    m = _CASE_RE.match(line.strip())
    if not m:
        raise ParseError("malformed case header", SourceSpan(lineno, 1, len(line) + 1))
    index = int(m.group("index"))
    if m.group("desc") == "EMPTY":
        return index, CaseDescriptor.empty()
    if m.group("s1"):
        return index, CaseDescriptor.single(Sign(m.group("s1")))
    if m.group("row"):
        return index, CaseDescriptor.inequation(int(m.group("row")), Sign(m.group("sr")))
    return index, CaseDescriptor.of_pair(
        int(m.group("a")), int(m.group("b")), Sign(m.group("sa")), Sign(m.group("sb"))
    )


def parse_alp(text: str) -> AlpProblem:
    """Reads render_alp output back (header case, vars line, <= rows)."""
    index, case = 0, None
    declared: Optional[List[str]] = None
    pending: List[Tuple[Dict[str, KPoly], KPoly, SourceSpan]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.lstrip().startswith("# case"):
            index, case = _parse_case(raw, lineno)
            continue
        line = _strip_comment(raw)
        tokens = _tokenize(line, lineno)
        if not tokens:
            continue
        if tokens[0].kind == "ident" and tokens[0].text == "vars" and not any(t.kind == "op" for t in tokens):
            declared = _parse_vars(tokens)
            continue
        lhs, op, rhs, op_span = _parse_comparison(tokens, lineno, len(line))
        if op != "<=":
            raise ParseError(f"ALP rows must use '<=', got {op!r}", op_span)
        coeffs = dict(lhs.terms)
        for v, c in rhs.terms.items():
            coeffs[v] = coeffs.get(v, KPoly.zero()) - c
        pending.append((coeffs, rhs.constant - lhs.constant, SourceSpan(lineno, 1, len(line) + 1)))

    if declared is None:
        declared = []
        for coeffs, _, _ in pending:
            declared.extend(v for v in coeffs if v not in declared)
    order = {v: i for i, v in enumerate(declared)}
    rows = []
    for coeffs, rhs, span in pending:
        unknown = [v for v in coeffs if v not in order]
        if unknown:
            raise ParseError(f"undeclared variable '{unknown[0]}'", span)
        rows.append(alp_row(coeffs, rhs, order))
    return AlpProblem.assemble(declared, rows, case or CaseDescriptor.empty(), index)


def render_manifest(bundle, file_names: Sequence[str]) -> str:
    """Manifest JSON for an emitted reduction bundle."""
    from .report import ReduceManifest

    manifest = ReduceManifest.from_bundle(bundle, file_names)
    return json.dumps(manifest.model_dump(), indent=2) + "\n"
