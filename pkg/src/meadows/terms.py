"""Term syntax for meadows.

A meadow term is a finite tree over the constants 0 and 1, variables,
addition, multiplication, additive inverse, and either a unary
multiplicative inverse (inversive notation) or a binary division
(divisive notation).  Binary subtraction is surface syntax everywhere
except in the reduced divisive signature, where it is a primitive
constructor of its own.

Terms are immutable values: structural equality and hashing come from
the frozen dataclasses, and that structural equality is the one meant
whenever two terms are called "syntactically equal".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Term", "Zero", "One", "Var", "Add", "Mul", "Neg", "Inv", "Div", "Sub",
    "ZERO", "ONE", "Signature", "SignatureError",
    "numeral", "power", "conforms", "check_conforms", "subst", "free_vars",
]

_IDENT_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class SignatureError(ValueError):
    """A term uses a symbol outside the signature it is checked against."""

    def __init__(self, symbol: str, sig: "Signature"):
        self.symbol = symbol
        self.sig = sig
        super().__init__(f"{symbol} not in signature {sig.value}")


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __post_init__(self):
        if not _IDENT_RE.match(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class Inv(Term):
    arg: Term


@dataclass(frozen=True)
class Div(Term):
    num: Term
    den: Term


@dataclass(frozen=True)
class Sub(Term):
    """Binary subtraction, primitive only in the reduced divisive signature."""

    left: Term
    right: Term


ZERO = Zero()
ONE = One()


class Signature(Enum):
    """The eight symbol sets terms are checked against."""

    CR = "cr"          # 0 1 + * -(unary)
    IMD = "imd"        # CR plus ^-1
    DMD = "dmd"        # CR plus /
    IAMD = "iamd"      # 1 + * ^-1
    DAMD = "damd"      # 1 + * /
    IAMDZ = "iamdz"    # 0 1 + * ^-1
    DAMDZ = "damdz"    # 0 1 + * /
    RD = "rd"          # 1 -(binary) /


_CR_NODES = frozenset({Zero, One, Var, Add, Mul, Neg})

_ALLOWED: dict[Signature, frozenset[type]] = {
    Signature.CR: _CR_NODES,
    Signature.IMD: _CR_NODES | {Inv},
    Signature.DMD: _CR_NODES | {Div},
    Signature.IAMDZ: frozenset({Zero, One, Var, Add, Mul, Inv}),
    Signature.DAMDZ: frozenset({Zero, One, Var, Add, Mul, Div}),
    Signature.IAMD: frozenset({One, Var, Add, Mul, Inv}),
    Signature.DAMD: frozenset({One, Var, Add, Mul, Div}),
    Signature.RD: frozenset({One, Var, Sub, Div}),
}

# Display names used in error messages, one per constructor.
_SYMBOL_NAME: dict[type, str] = {
    Zero: "0",
    One: "1",
    Add: "+",
    Mul: "*",
    Neg: "- (unary)",
    Inv: "^-1",
    Div: "/",
    Sub: "- (binary)",
}


def _children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (Add, Mul, Sub)):
        return (t.left, t.right)
    if isinstance(t, Div):
        return (t.num, t.den)
    if isinstance(t, (Neg, Inv)):
        return (t.arg,)
    return ()


def numeral(n: int) -> Term:
    """The canonical term for the natural number n: 0, 1, 1+1, (1+1)+1, ..."""
    if n < 0:
        raise ValueError("numerals are defined for naturals only")
    if n == 0:
        return ZERO
    t: Term = ONE
    for _ in range(n - 1):
        t = Add(t, ONE)
    return t


def power(t: Term, n: int) -> Term:
    """Exponentiation by a natural number: t^0 = 1 and t^(n+1) = t^n * t."""
    if n < 0:
        raise ValueError("exponents are naturals only")
    out: Term = ONE
    for _ in range(n):
        out = Mul(out, t)
    return out


def conforms(t: Term, sig: Signature) -> bool:
    """True iff every constructor occurring in t belongs to sig's symbol set."""
    allowed = _ALLOWED[sig]
    stack = [t]
    while stack:
        node = stack.pop()
        if type(node) not in allowed:
            return False
        stack.extend(_children(node))
    return True


def check_conforms(t: Term, sig: Signature) -> None:
    """Like conforms, but raises SignatureError naming the offending symbol."""
    allowed = _ALLOWED[sig]
    stack = [t]
    while stack:
        node = stack.pop()
        if type(node) not in allowed:
            raise SignatureError(_SYMBOL_NAME[type(node)], sig)
        stack.extend(_children(node))


def subst(t: Term, v: str, replacement: Term) -> Term:
    """Replace every occurrence of the variable v in t by replacement."""
    if isinstance(t, Var):
        return replacement if t.name == v else t
    if isinstance(t, Add):
        return Add(subst(t.left, v, replacement), subst(t.right, v, replacement))
    if isinstance(t, Mul):
        return Mul(subst(t.left, v, replacement), subst(t.right, v, replacement))
    if isinstance(t, Sub):
        return Sub(subst(t.left, v, replacement), subst(t.right, v, replacement))
    if isinstance(t, Neg):
        return Neg(subst(t.arg, v, replacement))
    if isinstance(t, Inv):
        return Inv(subst(t.arg, v, replacement))
    if isinstance(t, Div):
        return Div(subst(t.num, v, replacement), subst(t.den, v, replacement))
    return t


def free_vars(t: Term) -> frozenset[str]:
    """The set of variable names occurring in t."""
    names: set[str] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            names.add(node.name)
        else:
            stack.extend(_children(node))
    return frozenset(names)
