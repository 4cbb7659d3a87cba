"""Normal forms and decision procedures for arithmetical meadows.

Every arithmetical term (built from 1, variables, +, *, and inverse)
is equal to a quotient of two inverse-free terms, and inverse-free
terms expand to multivariate polynomials with positive integer
coefficients.  Two terms are provably equal exactly when their
cross-multiplied polynomial expansions coincide, which makes equality
decidable by comparing canonical forms.

With zero in the signature, zero elimination rewrites every term to 0
or to a zero-free term, closed terms normalize to 0 or to a coprime
fraction of numerals, and equality under the general inverse law
(x != 0 implies x * x^-1 = 1) is decided by recursion on the variable
count: substitute 0 for each variable in turn, plus one zero-free
comparison.

Divisive counterparts are decided through the projection into the
inversive notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union

from .projection import Projection, project
from .semantics import eval_q0
from .terms import (
    Add, Inv, Mul, One, Term, Var, Zero,
    Signature, SignatureError, check_conforms, free_vars, subst,
    ZERO,
)

__all__ = [
    "Monomial", "Polynomial", "PolyFrac",
    "ZeroNF", "Frac", "ZERO_NF", "NormalForm",
    "to_polyfrac", "expand_poly", "decide_iamd",
    "normal_form_closed", "zero_eliminate", "decide_iamdz_gil",
    "decide_divisive", "UnsupportedTheory", "decide_by_theory",
]


@dataclass(frozen=True)
class Monomial:
    """A product of variables with positive exponents; () is the unit."""

    exponents: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        names = [v for v, _ in self.exponents]
        if names != sorted(names) or len(set(names)) != len(names):
            raise ValueError("monomial variables must be sorted and distinct")
        if any(e < 1 for _, e in self.exponents):
            raise ValueError("monomial exponents must be positive")

    @staticmethod
    def variable(name: str) -> "Monomial":
        return Monomial(((name, 1),))

    def __mul__(self, other: "Monomial") -> "Monomial":
        exps = dict(self.exponents)
        for v, e in other.exponents:
            exps[v] = exps.get(v, 0) + e
        return Monomial(tuple(sorted(exps.items())))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    def sort_key(self):
        # Degree first, then variables alphabetically; total and canonical.
        return (self.degree, self.exponents)

    def __str__(self):
        if not self.exponents:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.exponents)


UNIT_MONOMIAL = Monomial()


@dataclass(frozen=True)
class Polynomial:
    """Sum of monomials with positive integer coefficients, canonically ordered."""

    terms: tuple[tuple[Monomial, int], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("polynomials here have at least one term")
        if any(c < 1 for _, c in self.terms):
            raise ValueError("coefficients must be positive integers")
        keys = [m.sort_key() for m, _ in self.terms]
        if keys != sorted(keys, reverse=True):
            raise ValueError("polynomial terms must be in canonical order")

    @staticmethod
    def constant(k: int) -> "Polynomial":
        return Polynomial(((UNIT_MONOMIAL, k),))

    @staticmethod
    def variable(name: str) -> "Polynomial":
        return Polynomial(((Monomial.variable(name), 1),))

    @staticmethod
    def _from_dict(coeffs: dict[Monomial, int]) -> "Polynomial":
        ordered = sorted(coeffs.items(), key=lambda mc: mc[0].sort_key(), reverse=True)
        return Polynomial(tuple(ordered))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        coeffs = dict(self.terms)
        for m, c in other.terms:
            coeffs[m] = coeffs.get(m, 0) + c
        return Polynomial._from_dict(coeffs)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        coeffs: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1 * m2
                coeffs[m] = coeffs.get(m, 0) + c1 * c2
        return Polynomial._from_dict(coeffs)

    def degree_in(self, name: str) -> int:
        best = 0
        for m, _ in self.terms:
            for v, e in m.exponents:
                if v == name:
                    best = max(best, e)
        return best

    def __str__(self):
        parts = []
        for m, c in self.terms:
            if m == UNIT_MONOMIAL:
                parts.append(str(c))
            elif c == 1:
                parts.append(str(m))
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts)


ONE_POLY = Polynomial.constant(1)


@dataclass(frozen=True)
class PolyFrac:
    """A term presented as numerator * denominator^-1, both inverse-free."""

    num: Polynomial
    den: Polynomial

    def __str__(self):
        return f"({self.num}) / ({self.den})"


def to_polyfrac(t: Term) -> PolyFrac:
    """Rewrite an arithmetical term as a quotient of two polynomials.

    Inverses distribute over products and cancel pairwise, so the
    recursion pushes every inverse to the top: a quotient is inverted by
    swapping its components, and sums and products combine component-wise.
    """
    check_conforms(t, Signature.IAMD)
    return _polyfrac(t)


def _polyfrac(t: Term) -> PolyFrac:
    if isinstance(t, One):
        return PolyFrac(ONE_POLY, ONE_POLY)
    if isinstance(t, Var):
        return PolyFrac(Polynomial.variable(t.name), ONE_POLY)
    if isinstance(t, Add):
        l, r = _polyfrac(t.left), _polyfrac(t.right)
        return PolyFrac(l.num * r.den + r.num * l.den, l.den * r.den)
    if isinstance(t, Mul):
        l, r = _polyfrac(t.left), _polyfrac(t.right)
        return PolyFrac(l.num * r.num, l.den * r.den)
    assert isinstance(t, Inv)
    inner = _polyfrac(t.arg)
    return PolyFrac(inner.den, inner.num)


def expand_poly(t: Term) -> Polynomial:
    """Fully expand an inverse-free arithmetical term to a canonical polynomial."""
    check_conforms(t, Signature.IAMD)
    return _expand(t)


def _expand(t: Term) -> Polynomial:
    if isinstance(t, One):
        return ONE_POLY
    if isinstance(t, Var):
        return Polynomial.variable(t.name)
    if isinstance(t, Add):
        return _expand(t.left) + _expand(t.right)
    if isinstance(t, Mul):
        return _expand(t.left) * _expand(t.right)
    raise SignatureError("^-1", Signature.IAMD)


def decide_iamd(t: Term, u: Term) -> bool:
    """Equality of arithmetical terms: cross-multiplied expansions must match."""
    tf, uf = to_polyfrac(t), to_polyfrac(u)
    return tf.num * uf.den == uf.num * tf.den


@dataclass(frozen=True)
class ZeroNF:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Frac:
    """A positive rational in lowest terms, the normal form n * m^-1."""

    num: int
    den: int

    def __post_init__(self):
        if self.num < 1 or self.den < 1:
            raise ValueError("normal-form components are positive")
        if gcd(self.num, self.den) != 1:
            raise ValueError("normal-form components are coprime")

    def __str__(self):
        return f"{self.num}/{self.den}" if self.den != 1 else str(self.num)


ZERO_NF = ZeroNF()
NormalForm = Union[ZeroNF, Frac]


def normal_form_closed(t: Term, sig: Signature) -> NormalForm:
    """Normalize a closed arithmetical term to 0 or a coprime fraction.

    Exact evaluation in the zero-totalized rationals realizes the normal
    form directly: without zero in the signature the value is a positive
    rational n/m, and with zero it may also be 0.
    """
    if sig not in (Signature.IAMD, Signature.IAMDZ):
        raise ValueError("normal forms are defined for iamd/iamdz terms")
    if free_vars(t):
        raise ValueError(f"term is not closed: {sorted(free_vars(t))}")
    check_conforms(t, sig)
    value = eval_q0(t, {})
    if value == 0:
        assert sig is Signature.IAMDZ, "zero is unreachable without 0 in the signature"
        return ZERO_NF
    return Frac(value.numerator, value.denominator)


def zero_eliminate(t: Term) -> Union[ZeroNF, Term]:
    """Rewrite an arithmetical-with-zero term to a zero-free term or to 0.

    Applies 0*x = 0, x+0 = x (in both argument orders), and 0^-1 = 0
    bottom-up to a fixed point; the rules only erase subterms, so the
    result does not depend on application order.
    """
    check_conforms(t, Signature.IAMDZ)
    return _zero_eliminate(t)


def _zero_eliminate(t: Term) -> Union[ZeroNF, Term]:
    if isinstance(t, Zero):
        return ZERO_NF
    if isinstance(t, (One, Var)):
        return t
    if isinstance(t, Add):
        left = _zero_eliminate(t.left)
        right = _zero_eliminate(t.right)
        if isinstance(left, ZeroNF):
            return right
        if isinstance(right, ZeroNF):
            return left
        return Add(left, right)
    if isinstance(t, Mul):
        left = _zero_eliminate(t.left)
        right = _zero_eliminate(t.right)
        if isinstance(left, ZeroNF) or isinstance(right, ZeroNF):
            return ZERO_NF
        return Mul(left, right)
    assert isinstance(t, Inv)
    inner = _zero_eliminate(t.arg)
    if isinstance(inner, ZeroNF):
        return ZERO_NF
    return Inv(inner)


def decide_iamdz_gil(t: Term, u: Term) -> bool:
    """Equality of arithmetical-with-zero terms under the general inverse law.

    Recursion on the variable count: closed equations compare normal
    forms; otherwise both sides are zero-eliminated, a lone zero decides,
    and zero-free sides must agree both as arithmetical terms and after
    substituting 0 for each variable in turn.
    """
    check_conforms(t, Signature.IAMDZ)
    check_conforms(u, Signature.IAMDZ)
    return _gil(t, u)


def _gil(t: Term, u: Term) -> bool:
    if not free_vars(t) and not free_vars(u):
        return normal_form_closed(t, Signature.IAMDZ) == normal_form_closed(
            u, Signature.IAMDZ
        )
    s = _zero_eliminate(t)
    s2 = _zero_eliminate(u)
    if isinstance(s, ZeroNF) or isinstance(s2, ZeroNF):
        return isinstance(s, ZeroNF) and isinstance(s2, ZeroNF)
    if not decide_iamd(s, s2):
        return False
    return all(
        _gil(subst(s, v, ZERO), subst(s2, v, ZERO))
        for v in sorted(free_vars(s) | free_vars(s2))
    )


def decide_divisive(t: Term, u: Term, theory: str) -> bool:
    """Divisive counterparts of the two decision procedures.

    theory is "damd" or "damdz-gil"; both sides are translated into the
    inversive notation and decided there.
    """
    if theory == "damd":
        check_conforms(t, Signature.DAMD)
        check_conforms(u, Signature.DAMD)
        return decide_iamd(
            project(t, Projection.DMN_TO_IMN), project(u, Projection.DMN_TO_IMN)
        )
    if theory == "damdz-gil":
        check_conforms(t, Signature.DAMDZ)
        check_conforms(u, Signature.DAMDZ)
        return decide_iamdz_gil(
            project(t, Projection.DMN_TO_IMN), project(u, Projection.DMN_TO_IMN)
        )
    raise ValueError(f"unknown divisive theory {theory!r}")


class UnsupportedTheory(ValueError):
    pass


def decide_by_theory(theory: str, t: Term, u: Term) -> bool:
    """Dispatch an equality decision by theory name.

    Supported: iamd, iamdz-gil, damd, damdz-gil.  Plain iamdz/damdz
    (without the general inverse law) are refused: whether equality under
    those axioms alone is decidable is an open problem.
    """
    if theory == "iamd":
        check_conforms(t, Signature.IAMD)
        check_conforms(u, Signature.IAMD)
        return decide_iamd(t, u)
    if theory == "iamdz-gil":
        return decide_iamdz_gil(t, u)
    if theory in ("damd", "damdz-gil"):
        return decide_divisive(t, u, theory)
    if theory in ("iamdz", "damdz"):
        raise UnsupportedTheory(
            f"equality under {theory} without the general inverse law is an "
            "open problem; use iamdz-gil or damdz-gil"
        )
    raise ValueError(f"unknown theory {theory!r}")
