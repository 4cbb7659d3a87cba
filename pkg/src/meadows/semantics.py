"""Exact and finite-model semantics for meadow terms.

Two families of models are provided.  The zero-totalized rationals
evaluate terms exactly with arbitrary-precision rationals, where the
multiplicative inverse of zero is zero and division by zero yields
zero.  Finite meadows carry explicit operation tables over a carrier
0..n-1; the prime ones are the zero-totalized prime fields Z_p, and
commutative von Neumann regular rings (for example Z_n with n
squarefree) expand uniquely to meadows by a pointwise search for
weak inverses.

Also here: exhaustive axiom checking of a presentation against a
finite model, and the two number-theoretic witness searches (every
residue mod p is a sum of two squares; some w*p equals u^2 + v^2 + 1)
that underpin the initial-algebra characterization of the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence, Union

from .terms import (
    Add, Div, Inv, Mul, Neg, One, Sub, Term, Var, Zero,
    free_vars,
)

__all__ = [
    "Q0", "Value", "Assignment", "MissingAssignment",
    "q0_inv", "q0_div", "eval_q0",
    "FiniteMeadow", "NotRegular", "NotUnique",
    "zp_meadow", "zn_ring", "zn_meadow", "eval_model",
    "eval_with_ops", "eval_with_partial_ops",
    "AxiomFailure", "check_axioms", "is_prime",
    "two_squares", "corollary_witness",
]

Value = Union[Fraction, int]
Assignment = Mapping[str, Value]

#: Marker for the zero-totalized rationals when an API accepts a model choice.
Q0 = None


class MissingAssignment(ValueError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no value assigned to variable {name!r}")


def q0_inv(x: Fraction) -> Fraction:
    """Total multiplicative inverse on the rationals: the inverse of 0 is 0."""
    return Fraction(0) if x == 0 else 1 / x


def q0_div(x: Fraction, y: Fraction) -> Fraction:
    """Total division on the rationals: x / 0 = 0."""
    return Fraction(0) if y == 0 else x / y


def eval_q0(t: Term, a: Assignment | None = None) -> Fraction:
    """Evaluate t in the zero-totalized rationals under assignment a.

    Subtraction nodes (reduced divisive terms) evaluate by the derived
    reading x - y; division and inverse are total per q0_div and q0_inv.
    """
    a = a or {}
    if isinstance(t, Zero):
        return Fraction(0)
    if isinstance(t, One):
        return Fraction(1)
    if isinstance(t, Var):
        if t.name not in a:
            raise MissingAssignment(t.name)
        return Fraction(a[t.name])
    if isinstance(t, Add):
        return eval_q0(t.left, a) + eval_q0(t.right, a)
    if isinstance(t, Mul):
        return eval_q0(t.left, a) * eval_q0(t.right, a)
    if isinstance(t, Sub):
        return eval_q0(t.left, a) - eval_q0(t.right, a)
    if isinstance(t, Neg):
        return -eval_q0(t.arg, a)
    if isinstance(t, Inv):
        return q0_inv(eval_q0(t.arg, a))
    assert isinstance(t, Div)
    return q0_div(eval_q0(t.num, a), eval_q0(t.den, a))


class NotRegular(ValueError):
    """Some element has no weak inverse, so no meadow expansion exists."""

    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no weak inverse; ring is not regular")


class NotUnique(RuntimeError):
    """Two distinct weak inverses found; impossible over a commutative ring."""

    def __init__(self, element: int, candidates: Sequence[int]):
        self.element = element
        self.candidates = tuple(candidates)
        super().__init__(
            f"element {element} has multiple weak inverses {self.candidates}; "
            "the input does not satisfy the commutative ring axioms"
        )


@dataclass(frozen=True)
class FiniteMeadow:
    """A finite carrier 0..size-1 with explicit operation tables.

    The inverse table may be None, in which case the structure is a bare
    commutative ring awaiting expansion.  Division and subtraction are
    derived: x / y = x * inv(y) and x - y = x + neg(y).
    """

    size: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    inv: tuple[int, ...] | None
    zero: int = 0
    one: int = 1

    @property
    def carrier(self) -> range:
        return range(self.size)

    def div(self, x: int, y: int) -> int:
        if self.inv is None:
            raise ValueError("no inverse table; expand the ring first")
        return self.mul[x][self.inv[y]]

    def ops(self) -> dict[str, object]:
        """Operation tables keyed by symbol, with derived division/subtraction."""
        table: dict[str, object] = {
            "zero": self.zero,
            "one": self.one,
            "add": self.add,
            "mul": self.mul,
            "neg": self.neg,
            "sub": tuple(
                tuple(self.add[x][self.neg[y]] for y in self.carrier)
                for x in self.carrier
            ),
        }
        if self.inv is not None:
            table["inv"] = self.inv
            table["div"] = tuple(
                tuple(self.mul[x][self.inv[y]] for y in self.carrier)
                for x in self.carrier
            )
        return table


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def zn_ring(n: int) -> FiniteMeadow:
    """The commutative ring Z_n with no inverse table."""
    if n < 1:
        raise ValueError("modulus must be positive")
    rng = range(n)
    return FiniteMeadow(
        size=n,
        add=tuple(tuple((x + y) % n for y in rng) for x in rng),
        mul=tuple(tuple((x * y) % n for y in rng) for x in rng),
        neg=tuple((-x) % n for x in rng),
        inv=None,
        zero=0,
        one=1 % n,
    )


def zp_meadow(p: int) -> FiniteMeadow:
    """The zero-totalized prime field Z_p: inv(0) = 0, inv(x) = x^(p-2) otherwise."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    ring = zn_ring(p)
    inv = tuple(0 if x == 0 else pow(x, -1, p) for x in range(p))
    return FiniteMeadow(ring.size, ring.add, ring.mul, ring.neg, inv, 0, 1)


def expand_regular_ring(ring: FiniteMeadow) -> FiniteMeadow:
    """Expand a commutative von Neumann regular ring to a meadow.

    For each element x the unique y with x*y*x = x and y*x*y = y is found
    by exhaustive search and becomes inv(x).  Raises NotRegular when some
    element admits no such y and NotUnique when two are found (which
    cannot happen if the input really satisfies the ring axioms).
    """
    mul = ring.mul
    inv = []
    for x in ring.carrier:
        candidates = [
            y for y in ring.carrier
            if mul[x][mul[x][y]] == x and mul[y][mul[y][x]] == y
        ]
        if not candidates:
            raise NotRegular(x)
        if len(candidates) > 1:
            raise NotUnique(x, candidates)
        inv.append(candidates[0])
    return FiniteMeadow(
        ring.size, ring.add, ring.mul, ring.neg, tuple(inv), ring.zero, ring.one
    )


def zn_meadow(n: int) -> FiniteMeadow:
    """The meadow expansion of Z_n; defined exactly when n is squarefree."""
    return expand_regular_ring(zn_ring(n))


def eval_with_ops(t: Term, ops: Mapping[str, object], a: Assignment) -> int:
    """Table-driven evaluation of t with operations drawn from ops."""
    if isinstance(t, Zero):
        return _op(ops, "zero")  # type: ignore[return-value]
    if isinstance(t, One):
        return _op(ops, "one")  # type: ignore[return-value]
    if isinstance(t, Var):
        if t.name not in a:
            raise MissingAssignment(t.name)
        return a[t.name]  # type: ignore[return-value]
    if isinstance(t, Add):
        return _op(ops, "add")[eval_with_ops(t.left, ops, a)][eval_with_ops(t.right, ops, a)]
    if isinstance(t, Mul):
        return _op(ops, "mul")[eval_with_ops(t.left, ops, a)][eval_with_ops(t.right, ops, a)]
    if isinstance(t, Sub):
        return _op(ops, "sub")[eval_with_ops(t.left, ops, a)][eval_with_ops(t.right, ops, a)]
    if isinstance(t, Neg):
        return _op(ops, "neg")[eval_with_ops(t.arg, ops, a)]
    if isinstance(t, Inv):
        return _op(ops, "inv")[eval_with_ops(t.arg, ops, a)]
    assert isinstance(t, Div)
    return _op(ops, "div")[eval_with_ops(t.num, ops, a)][eval_with_ops(t.den, ops, a)]


def _op(ops: Mapping[str, object], key: str):
    try:
        return ops[key]
    except KeyError:
        raise ValueError(f"model provides no interpretation for {key!r}") from None


def eval_with_partial_ops(t: Term, ops: Mapping[str, object], a: Assignment) -> int | None:
    """Like eval_with_ops, but None (an undecided table entry) propagates."""
    if isinstance(t, Zero):
        return _op(ops, "zero")  # type: ignore[return-value]
    if isinstance(t, One):
        return _op(ops, "one")  # type: ignore[return-value]
    if isinstance(t, Var):
        if t.name not in a:
            raise MissingAssignment(t.name)
        return a[t.name]  # type: ignore[return-value]
    if isinstance(t, (Add, Mul, Sub)):
        key = {Add: "add", Mul: "mul", Sub: "sub"}[type(t)]
        x = eval_with_partial_ops(t.left, ops, a)
        y = eval_with_partial_ops(t.right, ops, a)
        if x is None or y is None:
            return None
        return _op(ops, key)[x][y]
    if isinstance(t, (Neg, Inv)):
        key = "neg" if isinstance(t, Neg) else "inv"
        x = eval_with_partial_ops(t.arg, ops, a)
        if x is None:
            return None
        return _op(ops, key)[x]
    assert isinstance(t, Div)
    x = eval_with_partial_ops(t.num, ops, a)
    y = eval_with_partial_ops(t.den, ops, a)
    if x is None or y is None:
        return None
    return _op(ops, "div")[x][y]


def eval_model(t: Term, m: FiniteMeadow, a: Assignment | None = None) -> int:
    """Evaluate t in the finite meadow m under assignment a."""
    return eval_with_ops(t, m.ops(), a or {})


@dataclass(frozen=True)
class AxiomFailure:
    """First failing assignment for one axiom, plus how many assignments fail."""

    axiom: str
    witness: tuple[tuple[str, int], ...]
    lhs_value: int
    rhs_value: int
    failing_assignments: int

    def __str__(self):
        binding = ", ".join(f"{v}={x}" for v, x in self.witness)
        return (
            f"{self.axiom} fails at {binding or '(closed)'}: "
            f"{self.lhs_value} != {self.rhs_value} "
            f"({self.failing_assignments} failing assignment(s))"
        )


def check_axioms(m: FiniteMeadow, axioms) -> list[AxiomFailure]:
    """Exhaustively check every equation of a presentation against m.

    axioms is a Presentation or a builtin presentation name.  Every
    equation is evaluated at every assignment of carrier values to its
    variables; an empty report means m is a model of the axioms.
    Failures are deterministic: axioms in presentation order, witnesses
    in row-major assignment order.
    """
    if isinstance(axioms, str):
        from .presentations import builtin

        axioms = builtin(axioms)
    ops = m.ops()
    failures = []
    for eq in axioms.axioms:
        names = sorted(free_vars(eq.lhs) | free_vars(eq.rhs))
        first = None
        count = 0
        for values in product(m.carrier, repeat=len(names)):
            a = dict(zip(names, values))
            lhs = eval_with_ops(eq.lhs, ops, a)
            rhs = eval_with_ops(eq.rhs, ops, a)
            if lhs != rhs:
                count += 1
                if first is None:
                    first = (tuple(zip(names, values)), lhs, rhs)
        if first is not None:
            failures.append(AxiomFailure(eq.name, first[0], first[1], first[2], count))
    return failures


def _sqrt_table(p: int) -> dict[int, int]:
    """Map each square mod p to its smallest square root."""
    table: dict[int, int] = {}
    for w in range(p - 1, -1, -1):
        table[w * w % p] = w
    return table


def two_squares(p: int, u: int) -> tuple[int, int]:
    """Find (v, w) with v^2 + w^2 = u in Z_p, smallest v first.

    Such a pair exists for every residue u of every prime p.  The search
    is equivalent to scanning pairs (v, w) in row-major order.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 0 <= u < p:
        raise ValueError(f"{u} is not a residue mod {p}")
    roots = _sqrt_table(p)
    for v in range(p):
        w = roots.get((u - v * v) % p)
        if w is not None:
            return v, w
    raise AssertionError(f"no two-square decomposition of {u} mod {p}")


def corollary_witness(p: int) -> tuple[int, int, int]:
    """Find naturals (u, v, w) with u, v < p and u^2 + v^2 + 1 = w * p.

    Exists for every prime p because -1 is a sum of two squares mod p.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    roots = _sqrt_table(p)
    for u in range(p):
        v = roots.get((-1 - u * u) % p)
        if v is not None:
            total = u * u + v * v + 1
            return u, v, total // p
    raise AssertionError(f"no witness for prime {p}")
