"""Expression language: lexer, recursive-descent parser, lowering, and
canonical printers.

Grammar (whitespace insensitive, '*' mandatory, no juxtaposition):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' NAT)? ('/' NAT)?
    atom   := NAT ('/' NAT)? | 'i' | 'hbar' | VAR | '(' expr ')' | '-' atom

Integers and '/' are separate tokens; the atom rule assembles "3/4" into
one rational, while "q^2/2" keeps the '/' as the factor-level scalar
division.  Unary minus is an atom form, so it binds tighter than '^':
"-q^2" is (-q)^2.  The printers below never rely on that corner - a
leading negative term whose first factor carries an exponent is emitted
parenthesized.

Three modes share the grammar and differ in the variable set: operator
mode admits Q and P, symbol mode q and p, univariate mode x (and no
hbar).  Every error carries the byte offset of the offending character.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from phaseqm.algebra import GaussianRational, HbarCoeff, PhasePoly
from phaseqm.errors import ExprError
from phaseqm.moyal import UnivariatePoly
from phaseqm.operators import OpPoly

OPERATOR = "operator"
SYMBOL = "symbol"
UNIVARIATE = "univariate"

_MODE_VARS = {OPERATOR: ("Q", "P"), SYMBOL: ("q", "p"), UNIVARIATE: ("x",)}


# -- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class HbarSymbol:
    pass


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class Sum:
    left: "ExprAst"
    right: "ExprAst"
    subtract: bool


@dataclass(frozen=True)
class Product:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Power:
    base: "ExprAst"
    exponent: int


@dataclass(frozen=True)
class ScalarDiv:
    operand: "ExprAst"
    divisor: int


ExprAst = Union[
    RationalLit, ImaginaryUnit, HbarSymbol, Variable, Neg, Sum, Product, Power, ScalarDiv
]


# -- lexer ---------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # INT NAME PUNCT EOF
    text: str
    offset: int


_PUNCT = set("+-*/^()")


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(_Token("INT", text[start:i], start))
            continue
        if ch.isalpha():
            start = i
            while i < n and text[i].isalpha():
                i += 1
            tokens.append(_Token("NAME", text[start:i], start))
            continue
        if ch in _PUNCT:
            tokens.append(_Token("PUNCT", ch, i))
            i += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("EOF", "", n))
    return tokens


# -- parser --------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token], mode: str):
        self.tokens = tokens
        self.pos = 0
        self.mode = mode
        self.variables = _MODE_VARS[mode]

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.current
        self.pos += 1
        return tok

    def at_punct(self, ch: str) -> bool:
        return self.current.kind == "PUNCT" and self.current.text == ch

    def expect_nat(self, role: str) -> int:
        tok = self.current
        if tok.kind != "INT":
            raise ExprError(f"expected integer {role}", tok.offset)
        self.advance()
        return int(tok.text)

    def parse_expr(self) -> ExprAst:
        node = self.parse_term()
        while self.at_punct("+") or self.at_punct("-"):
            op = self.advance().text
            right = self.parse_term()
            node = Sum(node, right, subtract=(op == "-"))
        return node

    def parse_term(self) -> ExprAst:
        node = self.parse_factor()
        while self.at_punct("*"):
            self.advance()
            node = Product(node, self.parse_factor())
        return node

    def parse_factor(self) -> ExprAst:
        node = self.parse_atom()
        if self.at_punct("^"):
            self.advance()
            node = Power(node, self.expect_nat("exponent"))
        if self.at_punct("/"):
            offset = self.current.offset
            self.advance()
            divisor = self.expect_nat("divisor")
            if divisor == 0:
                raise ExprError("division by zero", offset)
            node = ScalarDiv(node, divisor)
        return node

    def parse_atom(self) -> ExprAst:
        tok = self.current
        if tok.kind == "INT":
            self.advance()
            numerator = int(tok.text)
            # "3/4" is one rational atom when an integer follows directly;
            # otherwise the '/' is left for the factor rule.
            if self.at_punct("/") and self.tokens[self.pos + 1].kind == "INT":
                slash = self.advance()
                denominator = int(self.advance().text)
                if denominator == 0:
                    raise ExprError("division by zero", slash.offset)
                return RationalLit(Fraction(numerator, denominator))
            return RationalLit(Fraction(numerator))
        if tok.kind == "NAME":
            self.advance()
            if tok.text == "i":
                return ImaginaryUnit()
            if tok.text == "hbar":
                if self.mode == UNIVARIATE:
                    raise ExprError("hbar is not allowed here", tok.offset)
                return HbarSymbol()
            if tok.text in self.variables:
                return Variable(tok.text)
            for vars_ in _MODE_VARS.values():
                if tok.text in vars_:
                    raise ExprError(
                        f"variable {tok.text!r} is not allowed in {self.mode} mode",
                        tok.offset,
                    )
            raise ExprError(f"unknown name {tok.text!r}", tok.offset)
        if self.at_punct("("):
            self.advance()
            node = self.parse_expr()
            if not self.at_punct(")"):
                raise ExprError("expected ')'", self.current.offset)
            self.advance()
            return node
        if self.at_punct("-"):
            self.advance()
            return Neg(self.parse_atom())
        raise ExprError("expected a value", tok.offset)


def parse(text: str, mode: str) -> ExprAst:
    """Parse source text in the given mode ('operator', 'symbol', or
    'univariate'), reporting errors with byte offsets."""
    if mode not in _MODE_VARS:
        raise ValueError(f"unknown mode {mode!r}")
    if not text.strip():
        raise ExprError("empty expression", 0)
    parser = _Parser(_lex(text), mode)
    node = parser.parse_expr()
    if parser.current.kind != "EOF":
        raise ExprError("unexpected trailing input", parser.current.offset)
    return node


# -- lowering ------------------------------------------------------------


def _lower_into(node: ExprAst, alg: dict):
    if isinstance(node, RationalLit):
        return alg["constant"](node.value)
    if isinstance(node, ImaginaryUnit):
        return alg["constant"](GaussianRational(0, 1))
    if isinstance(node, HbarSymbol):
        return alg["hbar"]()
    if isinstance(node, Variable):
        return alg["var"](node.name)
    if isinstance(node, Neg):
        return -_lower_into(node.operand, alg)
    if isinstance(node, Sum):
        left = _lower_into(node.left, alg)
        right = _lower_into(node.right, alg)
        return left - right if node.subtract else left + right
    if isinstance(node, Product):
        return _lower_into(node.left, alg) * _lower_into(node.right, alg)
    if isinstance(node, Power):
        return _lower_into(node.base, alg) ** node.exponent
    if isinstance(node, ScalarDiv):
        return _lower_into(node.operand, alg) * Fraction(1, node.divisor)
    raise TypeError(f"unknown AST node {node!r}")


_ALGEBRAS = {
    OPERATOR: {
        "constant": OpPoly.constant,
        "hbar": lambda: OpPoly.constant(HbarCoeff.hbar(1)),
        "var": lambda name: OpPoly.q() if name == "Q" else OpPoly.p(),
    },
    SYMBOL: {
        "constant": PhasePoly.constant,
        "hbar": lambda: PhasePoly.constant(HbarCoeff.hbar(1)),
        "var": lambda name: PhasePoly.q() if name == "q" else PhasePoly.p(),
    },
    UNIVARIATE: {
        "constant": lambda v: UnivariatePoly.constant(v),
        "hbar": None,
        "var": lambda name: UnivariatePoly.x(),
    },
}


def lower(ast: ExprAst, mode: str):
    """Evaluate an AST in the exact algebra of its mode.  Operator-mode
    products go through normal ordering, so order matters there."""
    return _lower_into(ast, _ALGEBRAS[mode])


def parse_operator(text: str) -> OpPoly:
    return lower(parse(text, OPERATOR), OPERATOR)


def parse_symbol(text: str) -> PhasePoly:
    return lower(parse(text, SYMBOL), SYMBOL)


def parse_univariate(text: str) -> UnivariatePoly:
    return lower(parse(text, UNIVARIATE), UNIVARIATE)


# -- canonical printers --------------------------------------------------


def _rat_str(x: Fraction) -> str:
    return str(x) if x.denominator == 1 else f"({x})"


def _imag_part_str(im: Fraction) -> str:
    mag = abs(im)
    return "i" if mag == 1 else f"{mag}*i"


def _coeff_factors(c: GaussianRational) -> tuple[int | None, list[str]]:
    """Sign (+1/-1, or None when the sign lives inside a complex pair)
    and the leading factor strings for a scalar coefficient."""
    if not c.is_real and not c.is_imaginary:
        sign = "+" if c.im > 0 else "-"
        return None, [f"({c.re}{sign}{_imag_part_str(c.im)})"]
    if c.is_imaginary:
        mag = abs(c.im)
        factors = [] if mag == 1 else [_rat_str(mag)]
        factors.append("i")
        return (1 if c.im > 0 else -1), factors
    mag = abs(c.re)
    factors = [] if mag == 1 else [_rat_str(mag)]
    return (1 if c.re > 0 else -1), factors


def _power_str(name: str, degree: int) -> str:
    return name if degree == 1 else f"{name}^{degree}"


def _join_terms(terms: list[tuple[int | None, list[str]]]) -> str:
    """Assemble signed factor lists into one expression that reparses to
    the same value."""
    if not terms:
        return "0"
    pieces: list[str] = []
    for index, (sign, factors) in enumerate(terms):
        magnitude = "*".join(factors) if factors else "1"
        if sign is None or sign > 0:
            pieces.append(magnitude if index == 0 else f" + {magnitude}")
        elif index > 0:
            pieces.append(f" - {magnitude}")
        else:
            # Leading minus is unary and binds tighter than '^', so it is
            # only safe before a digit, a parenthesis, or an unexponented
            # first factor.
            first = factors[0] if factors else "1"
            safe = first[0].isdigit() or first[0] == "(" or "^" not in first
            pieces.append(f"-{magnitude}" if safe else f"-({magnitude})")
    return "".join(pieces)


def _graded_terms(
    entries: list[tuple[tuple[int, int], HbarCoeff]], names: tuple[str, str]
) -> str:
    terms = []
    for (a, b), coeff in entries:
        for grade, scalar in coeff.items():
            sign, factors = _coeff_factors(scalar)
            if grade > 0:
                factors.append(_power_str("hbar", grade))
            if a > 0:
                factors.append(_power_str(names[0], a))
            if b > 0:
                factors.append(_power_str(names[1], b))
            terms.append(((-(a + b), -a, grade), sign, factors))
    terms.sort(key=lambda t: t[0])
    return _join_terms([(sign, factors) for _key, sign, factors in terms])


def format_symbol(f: PhasePoly) -> str:
    """Canonical text: monomials by total degree then q-degree descending,
    hbar grades ascending inside a monomial."""
    return _graded_terms(f.monomials(), ("q", "p"))


def format_operator(A: OpPoly) -> str:
    """Canonical text of the normal form, Q powers before P powers."""
    return _graded_terms(A.words(), ("Q", "P"))


def format_univariate(f: UnivariatePoly) -> str:
    """Canonical text, powers of x descending."""
    terms = []
    for power, scalar in f.terms():
        sign, factors = _coeff_factors(scalar)
        if power > 0:
            factors.append(_power_str("x", power))
        terms.append((sign, factors))
    return _join_terms(terms)
