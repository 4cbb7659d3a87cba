"""Shared test utilities: generators and independent oracles.

The evaluator here is deliberately a second implementation (structural
pattern matching over the node classes) so that value comparisons in
the tests are a genuine dual route, not the library checking itself.
"""

from __future__ import annotations

import random
from fractions import Fraction

from meadows.terms import (
    Add, Div, Inv, Mul, Neg, One, Sub, Term, Var, Zero,
    Signature,
)

VARS = ("x", "y", "z")


def oracle_eval(t: Term, a: dict | None = None) -> Fraction:
    """Independent zero-totalized rational evaluation."""
    a = a or {}
    match t:
        case Zero():
            return Fraction(0)
        case One():
            return Fraction(1)
        case Var(name=name):
            return Fraction(a[name])
        case Add(left=l, right=r):
            return oracle_eval(l, a) + oracle_eval(r, a)
        case Mul(left=l, right=r):
            return oracle_eval(l, a) * oracle_eval(r, a)
        case Sub(left=l, right=r):
            return oracle_eval(l, a) - oracle_eval(r, a)
        case Neg(arg=arg):
            return -oracle_eval(arg, a)
        case Inv(arg=arg):
            v = oracle_eval(arg, a)
            return Fraction(0) if v == 0 else Fraction(1) / v
        case Div(num=num, den=den):
            d = oracle_eval(den, a)
            return Fraction(0) if d == 0 else oracle_eval(num, a) / d
    raise TypeError(f"unknown node {t!r}")


def random_rational(rng: random.Random, nonneg: bool = False) -> Fraction:
    """Random rational with the singular points 0, 1, -1 at probability 1/8 each."""
    roll = rng.random()
    if roll < 1 / 8:
        return Fraction(0)
    if roll < 2 / 8:
        return Fraction(1)
    if roll < 3 / 8:
        return Fraction(1) if nonneg else Fraction(-1)
    num = rng.randint(1 if nonneg else -24, 24)
    return Fraction(num, rng.randint(1, 12))


def random_assignment(
    rng: random.Random, names, nonneg: bool = False
) -> dict[str, Fraction]:
    return {name: random_rational(rng, nonneg) for name in names}


def positive_assignment(rng: random.Random, names) -> dict[str, Fraction]:
    return {
        name: Fraction(rng.randint(1, 24), rng.randint(1, 12)) for name in names
    }


_LEAVES = {
    Signature.CR: ("zero", "one", "var"),
    Signature.IMD: ("zero", "one", "var"),
    Signature.DMD: ("zero", "one", "var"),
    Signature.IAMD: ("one", "var"),
    Signature.DAMD: ("one", "var"),
    Signature.IAMDZ: ("zero", "one", "var"),
    Signature.DAMDZ: ("zero", "one", "var"),
    Signature.RD: ("one", "var"),
}

_BRANCHES = {
    Signature.CR: ("add", "mul", "neg"),
    Signature.IMD: ("add", "mul", "neg", "inv"),
    Signature.DMD: ("add", "mul", "neg", "div"),
    Signature.IAMD: ("add", "mul", "inv"),
    Signature.DAMD: ("add", "mul", "div"),
    Signature.IAMDZ: ("add", "mul", "inv"),
    Signature.DAMDZ: ("add", "mul", "div"),
    Signature.RD: ("sub", "div"),
}


def random_term(
    rng: random.Random,
    sig: Signature,
    max_depth: int = 5,
    variables=VARS,
    leaf_bias: float = 0.3,
) -> Term:
    """Random term conforming to sig, at most max_depth constructors deep."""
    leaves = _LEAVES[sig] if variables else tuple(
        k for k in _LEAVES[sig] if k != "var"
    )
    if max_depth <= 0 or rng.random() < leaf_bias:
        kind = rng.choice(leaves)
        if kind == "zero":
            return Zero()
        if kind == "one":
            return One()
        return Var(rng.choice(variables))
    kind = rng.choice(_BRANCHES[sig])
    sub = lambda: random_term(rng, sig, max_depth - 1, variables, leaf_bias)
    if kind == "add":
        return Add(sub(), sub())
    if kind == "mul":
        return Mul(sub(), sub())
    if kind == "sub":
        return Sub(sub(), sub())
    if kind == "neg":
        return Neg(sub())
    if kind == "inv":
        return Inv(sub())
    return Div(sub(), sub())


def equivalent_variant(rng: random.Random, t: Term, moves: int = 4) -> Term:
    """Rewrite t by equalities valid in the arithmetical meadows.

    Commutes, reassociates, distributes, cancels double inverses, and
    multiplies by x * x^-1; the result is provably equal to t, which a
    sound decision procedure must confirm.
    """
    for _ in range(moves):
        t = _rewrite(rng, t)
    return t


def _rewrite(rng: random.Random, t: Term) -> Term:
    choice = rng.random()
    if isinstance(t, (Add, Mul)):
        kind = type(t)
        if choice < 0.25:
            return kind(t.right, t.left)
        if choice < 0.4 and isinstance(t.left, kind):
            return kind(t.left.left, kind(t.left.right, t.right))
        if choice < 0.55 and isinstance(t.right, kind):
            return kind(kind(t.left, t.right.left), t.right.right)
        if (
            choice < 0.65
            and isinstance(t, Mul)
            and isinstance(t.right, Add)
        ):
            return Add(Mul(t.left, t.right.left), Mul(t.left, t.right.right))
        return kind(_rewrite(rng, t.left), _rewrite(rng, t.right))
    if isinstance(t, Inv):
        if choice < 0.2:
            return Inv(Inv(Inv(t.arg)))
        return Inv(_rewrite(rng, t.arg))
    if choice < 0.15:
        v = Var(rng.choice(VARS))
        return Mul(t, Mul(v, Inv(v)))
    if choice < 0.25:
        return Inv(Inv(t))
    return t
