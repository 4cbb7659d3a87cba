"""Three-valued first-order logic over punched meadows.

Atoms are equations between terms evaluated in a punched model, so a
side of an equation may fail to denote.  Three equality modes decide
what a non-denoting side means (undefined / equal-iff-both-undefined /
never equal), four connective suites extend the classical connectives
(Bochvar's strict ones, McCarthy's left-sequential ones and their
right-sequential mirror, Kleene's monotone ones), and two quantifier
suites fold instances over an explicit finite domain (Bochvar: any
undefined instance poisons the quantifier; Kleene: a witness decides).

The combination weak equality + McCarthy connectives + Bochvar
quantifiers is the configuration that tracks everyday mathematical
usage most closely, available as the lpmd preset.

Formula grammar: atoms `t = u` and `t != u` over the term grammar,
`~` (not), `&`, `|`, `->`, `forall x. phi`, `exists x. phi`; negation
binds tightest, then conjunction, disjunction, implication (right
associative), and quantifiers reach as far right as possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .parsing import ParseError, Token, parse_term_prefix, tokenize
from .partial import Defined, PunchVariant, UNDEFINED, punch_eval
from .semantics import Assignment, FiniteMeadow, Value
from .terms import Signature, Term, free_vars

__all__ = [
    "TruthValue3", "Formula", "Eq", "Neq", "Not", "And", "Or", "Implies",
    "Forall", "Exists",
    "Equality", "Connectives", "Quantifiers", "LogicConfig", "lpmd",
    "eval_formula", "formula_free_vars",
    "ConventionReport", "two_valued_convention_check",
    "parse_formula",
]


class TruthValue3(Enum):
    T = "T"
    F = "F"
    U = "U"

    def __str__(self):
        return self.value


T, F, U = TruthValue3.T, TruthValue3.F, TruthValue3.U


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Eq(Formula):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


def Neq(lhs: Term, rhs: Term) -> Formula:
    """Disequations are sugar for negated equations."""
    return Not(Eq(lhs, rhs))


class Equality(Enum):
    WEAK = "weak"            # a non-denoting side makes the atom U
    STRONG = "strong"        # equal iff both sides denote the same or neither denotes
    EXISTENTIAL = "exist"    # a non-denoting side makes the atom F


class Connectives(Enum):
    BOCHVAR = "bochvar"            # strict: any U operand gives U
    MCCARTHY = "mccarthy"          # left-sequential
    MCCARTHY_REV = "mccarthy-rev"  # right-sequential
    KLEENE = "kleene"              # strong monotone


class Quantifiers(Enum):
    BOCHVAR = "bochvar"
    KLEENE = "kleene"


@dataclass(frozen=True)
class LogicConfig:
    equality: Equality
    connectives: Connectives
    quantifiers: Quantifiers
    domain: tuple[Value, ...]

    def __post_init__(self):
        if not self.domain:
            raise ValueError("quantifier domain must be nonempty")


def lpmd(domain: Sequence[Value] = (0, 1, 2)) -> LogicConfig:
    """Weak equality, McCarthy's connectives, Bochvar's quantifiers."""
    return LogicConfig(
        Equality.WEAK, Connectives.MCCARTHY, Quantifiers.BOCHVAR, tuple(domain)
    )


def _not3(v: TruthValue3) -> TruthValue3:
    if v is T:
        return F
    if v is F:
        return T
    return U


def _and3(suite: Connectives, a: TruthValue3, b: TruthValue3) -> TruthValue3:
    if suite is Connectives.BOCHVAR:
        if a is U or b is U:
            return U
        return T if (a is T and b is T) else F
    if suite is Connectives.MCCARTHY:
        if a is F:
            return F
        if a is U:
            return U
        return b
    if suite is Connectives.MCCARTHY_REV:
        if b is F:
            return F
        if b is U:
            return U
        return a
    # Kleene: false dominates, truth requires both.
    if a is F or b is F:
        return F
    if a is T and b is T:
        return T
    return U


def _or3(suite: Connectives, a: TruthValue3, b: TruthValue3) -> TruthValue3:
    if suite is Connectives.BOCHVAR:
        if a is U or b is U:
            return U
        return T if (a is T or b is T) else F
    if suite is Connectives.MCCARTHY:
        if a is T:
            return T
        if a is U:
            return U
        return b
    if suite is Connectives.MCCARTHY_REV:
        if b is T:
            return T
        if b is U:
            return U
        return a
    if a is T or b is T:
        return T
    if a is F and b is F:
        return F
    return U


def _fold_forall(suite: Quantifiers, values: list[TruthValue3]) -> TruthValue3:
    if suite is Quantifiers.BOCHVAR:
        if U in values:
            return U
        return T if all(v is T for v in values) else F
    if F in values:
        return F
    return T if all(v is T for v in values) else U


def _fold_exists(suite: Quantifiers, values: list[TruthValue3]) -> TruthValue3:
    if suite is Quantifiers.BOCHVAR:
        if U in values:
            return U
        return T if any(v is T for v in values) else F
    if T in values:
        return T
    return F if all(v is F for v in values) else U


def _atom(
    lhs: Term, rhs: Term, cfg: LogicConfig, variant: PunchVariant,
    model: FiniteMeadow | None, a: Assignment,
) -> TruthValue3:
    left = punch_eval(lhs, variant, model, a)
    right = punch_eval(rhs, variant, model, a)
    if isinstance(left, Defined) and isinstance(right, Defined):
        return T if left.value == right.value else F
    if cfg.equality is Equality.WEAK:
        return U
    if cfg.equality is Equality.STRONG:
        return T if (left is UNDEFINED and right is UNDEFINED) else F
    return F


def eval_formula(
    f: Formula,
    cfg: LogicConfig,
    variant: PunchVariant,
    model: FiniteMeadow | None = None,
    a: Assignment | None = None,
) -> TruthValue3:
    """Evaluate a formula to T, F, or U.

    Terms evaluate through the punched model; quantifiers range over
    cfg.domain, with bound variables shadowing the assignment.  The
    implication a -> b is ~a | b in the active connective suite.
    """
    a = dict(a or {})
    return _eval(f, cfg, variant, model, a)


def _eval(f, cfg, variant, model, a) -> TruthValue3:
    if isinstance(f, Eq):
        return _atom(f.lhs, f.rhs, cfg, variant, model, a)
    if isinstance(f, Not):
        return _not3(_eval(f.body, cfg, variant, model, a))
    if isinstance(f, And):
        return _and3(
            cfg.connectives,
            _eval(f.left, cfg, variant, model, a),
            _eval(f.right, cfg, variant, model, a),
        )
    if isinstance(f, Or):
        return _or3(
            cfg.connectives,
            _eval(f.left, cfg, variant, model, a),
            _eval(f.right, cfg, variant, model, a),
        )
    if isinstance(f, Implies):
        return _or3(
            cfg.connectives,
            _not3(_eval(f.left, cfg, variant, model, a)),
            _eval(f.right, cfg, variant, model, a),
        )
    values = []
    for d in cfg.domain:
        inner = dict(a)
        inner[f.var] = d
        values.append(_eval(f.body, cfg, variant, model, inner))
    if isinstance(f, Forall):
        return _fold_forall(cfg.quantifiers, values)
    assert isinstance(f, Exists)
    return _fold_exists(cfg.quantifiers, values)


def formula_free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Eq):
        return free_vars(f.lhs) | free_vars(f.rhs)
    if isinstance(f, Not):
        return formula_free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return formula_free_vars(f.left) | formula_free_vars(f.right)
    assert isinstance(f, (Forall, Exists))
    return formula_free_vars(f.body) - {f.var}


@dataclass(frozen=True)
class ConventionReport:
    """Whether a sentence's truth value is usable under two-valued logic."""

    compliant: bool
    value: TruthValue3

    def __str__(self):
        status = "Compliant" if self.compliant else "Violation"
        return f"{status} (value {self.value})"


def two_valued_convention_check(
    f: Formula,
    cfg: LogicConfig,
    variant: PunchVariant,
    model: FiniteMeadow | None = None,
) -> ConventionReport:
    """A sentence complies with the two-valued logic convention iff it is T or F."""
    if formula_free_vars(f):
        raise ValueError(f"formula is not a sentence: free {sorted(formula_free_vars(f))}")
    value = eval_formula(f, cfg, variant, model)
    return ConventionReport(value is not U, value)


# Formula parsing.  Terms are parsed by the term parser starting at the
# current token; a '(' may open either a term or a formula, so the atom
# rule tries the term reading first and backtracks on failure.

class _FormulaParser:
    def __init__(self, tokens: list[Token], sig: Signature):
        self.tokens = tokens
        self.sig = sig
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def at_op(self, op: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text == op

    def expect_op(self, op: str) -> None:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}, found {tok.text or 'end of input'!r}", tok.pos)
        self.i += 1

    def formula(self) -> Formula:
        tok = self.peek()
        if tok.kind == "ident" and tok.text in ("forall", "exists"):
            self.i += 1
            var = self.peek()
            if var.kind != "ident":
                raise ParseError("expected a variable after quantifier", var.pos)
            self.i += 1
            self.expect_op(".")
            body = self.formula()
            return Forall(var.text, body) if tok.text == "forall" else Exists(var.text, body)
        return self.implication()

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at_op("->"):
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at_op("|"):
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at_op("&"):
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.at_op("~"):
            self.i += 1
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        start = self.i
        try:
            lhs, self.i = parse_term_prefix(self.tokens, self.i, self.sig)
        except ParseError:
            self.i = start
            if self.at_op("("):
                self.i += 1
                f = self.formula()
                self.expect_op(")")
                return f
            raise
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("=", "!="):
            self.i += 1
            rhs, self.i = parse_term_prefix(self.tokens, self.i, self.sig)
            return Eq(lhs, rhs) if tok.text == "=" else Neq(lhs, rhs)
        # A bare term is not a formula; maybe the '(' opened a formula.
        if self.tokens[start].kind == "op" and self.tokens[start].text == "(":
            self.i = start + 1
            f = self.formula()
            self.expect_op(")")
            return f
        raise ParseError("expected '=' or '!=' after term", tok.pos)


def parse_formula(text: str, sig: Signature) -> Formula:
    """Parse a formula whose terms conform to sig."""
    tokens = tokenize(text, formula_ops=True)
    parser = _FormulaParser(tokens, sig)
    f = parser.formula()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(f"unexpected {tail.text!r} after formula", tail.pos)
    return f
