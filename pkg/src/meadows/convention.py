"""Usage conventions for total meadows, and a syntactic definedness check.

An imperative meadow is a total meadow together with the convention
that inverses or divisions of zero are simply never written: q^-1 not
used with q = 0 (relevant inversive convention), p/q not used with
q = 0 (relevant division convention), or p/q not used with q = 0
unless p = 0 too (the liberal variant).  For closed terms compliance
is decided exactly by evaluating every inverse and division argument.
For open terms it is undecidable in general, but over the non-negative
arithmetical fragment there is a sound syntactic criterion: the
inductively defined sets Nz (certainly nonzero) and Def (certainly
defined) classify terms bottom-up.

The literal Nz rules place x + y in Nz as soon as one operand is,
which over-approximates when the other operand is itself undefined
(1 + 0^-1 would count as nonzero).  Strict mode therefore also
requires the unconstrained operand to be in Def; it is the default and
the mode that is sound against punched evaluation.  Neither mode puts
bare variables in Def; vars_defined=True adds them, for readings where
variables range over defined values only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .semantics import eval_q0
from .terms import (
    Add, Div, Inv, Mul, One, Term, Var, Zero,
    Signature, check_conforms, free_vars,
)

__all__ = [
    "DefNzClass", "ConventionId",
    "classify", "Violation", "COMPLIANT", "closed_compliance",
    "open_compliance_sufficient", "Sufficiency",
]


class DefNzClass(Enum):
    IN_NZ = "InNz"        # provably defined and nonzero
    IN_DEF = "InDef"      # provably defined
    NEITHER = "Neither"

    def __str__(self):
        return self.value


class ConventionId(Enum):
    RELEVANT_INVERSIVE = "inv0"
    RELEVANT_DIVISION = "div0"
    LIBERAL_RELEVANT_DIVISION = "div0lib"


_CONVENTION_SIG = {
    ConventionId.RELEVANT_INVERSIVE: Signature.IMD,
    ConventionId.RELEVANT_DIVISION: Signature.DMD,
    ConventionId.LIBERAL_RELEVANT_DIVISION: Signature.DMD,
}


def _classify(t: Term, strict: bool, vars_defined: bool) -> tuple[bool, bool]:
    """Return (in Nz, in Def) for t, bottom-up."""
    if isinstance(t, Zero):
        return False, True
    if isinstance(t, One):
        return True, True
    if isinstance(t, Var):
        return False, vars_defined
    if isinstance(t, Add):
        lnz, ldef = _classify(t.left, strict, vars_defined)
        rnz, rdef = _classify(t.right, strict, vars_defined)
        nz = (lnz and (rdef or not strict)) or (rnz and (ldef or not strict))
        return nz, nz or (ldef and rdef)
    if isinstance(t, Mul):
        lnz, ldef = _classify(t.left, strict, vars_defined)
        rnz, rdef = _classify(t.right, strict, vars_defined)
        nz = lnz and rnz
        return nz, nz or (ldef and rdef)
    assert isinstance(t, Inv)
    nz, _ = _classify(t.arg, strict, vars_defined)
    return nz, nz


def classify(t: Term, mode: str = "strict", vars_defined: bool = False) -> DefNzClass:
    """Classify an arithmetical-with-zero term into Nz, Def, or neither.

    The strongest class wins (Nz implies Def).  mode is "strict" or
    "literal"; see the module docstring for the difference.
    """
    if mode not in ("strict", "literal"):
        raise ValueError(f"unknown classifier mode {mode!r}")
    check_conforms(t, Signature.IAMDZ)
    nz, defined = _classify(t, mode == "strict", vars_defined)
    if nz:
        return DefNzClass.IN_NZ
    if defined:
        return DefNzClass.IN_DEF
    return DefNzClass.NEITHER


@dataclass(frozen=True)
class Violation:
    subterm: Term
    detail: str

    def __str__(self):
        from .parsing import render

        return f"Violation at {render(self.subterm)}: {self.detail}"


class _Compliant:
    __slots__ = ()

    def __repr__(self):
        return "Compliant"


COMPLIANT = _Compliant()


def closed_compliance(t: Term, c: ConventionId) -> Union[_Compliant, Violation]:
    """Decide exactly whether a closed term complies with a usage convention.

    Every inverse and division argument is evaluated in the zero-totalized
    rationals; the first offending subterm in leftmost-innermost order is
    reported.
    """
    if free_vars(t):
        raise ValueError(
            "compliance of open terms is undecidable; "
            "use open_compliance_sufficient for the sound syntactic check"
        )
    check_conforms(t, _CONVENTION_SIG[c])
    return _scan(t, c) or COMPLIANT


def _scan(t: Term, c: ConventionId) -> Violation | None:
    if isinstance(t, (Zero, One, Var)):
        return None
    if isinstance(t, (Add, Mul)):
        return _scan(t.left, c) or _scan(t.right, c)
    if isinstance(t, Inv):
        inner = _scan(t.arg, c)
        if inner:
            return inner
        if c is ConventionId.RELEVANT_INVERSIVE and eval_q0(t.arg) == 0:
            return Violation(t, "inverse of 0")
        return None
    if isinstance(t, Div):
        inner = _scan(t.num, c) or _scan(t.den, c)
        if inner:
            return inner
        if eval_q0(t.den) == 0:
            if c is ConventionId.LIBERAL_RELEVANT_DIVISION and eval_q0(t.num) == 0:
                return None
            return Violation(t, "denominator 0")
        return None
    # Unary minus: nothing to check below beyond its argument.
    return _scan(t.arg, c)


class Sufficiency(Enum):
    CERTIFIED_COMPLIANT = "CertifiedCompliant"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


def open_compliance_sufficient(
    t: Term, mode: str = "strict", vars_defined: bool = False
) -> Sufficiency:
    """Sound (not complete) compliance check for possibly open terms.

    Certifies compliance with the relevant inversive convention over
    non-negative values when every inverse argument classifies as
    certainly nonzero; anything else is Unknown, never "violating".
    """
    check_conforms(t, Signature.IAMDZ)
    if _all_inv_args_nz(t, mode, vars_defined):
        return Sufficiency.CERTIFIED_COMPLIANT
    return Sufficiency.UNKNOWN


def _all_inv_args_nz(t: Term, mode: str, vars_defined: bool) -> bool:
    if isinstance(t, (Zero, One, Var)):
        return True
    if isinstance(t, (Add, Mul)):
        return _all_inv_args_nz(t.left, mode, vars_defined) and _all_inv_args_nz(
            t.right, mode, vars_defined
        )
    assert isinstance(t, Inv)
    return (
        classify(t.arg, mode, vars_defined) is DefNzClass.IN_NZ
        and _all_inv_args_nz(t.arg, mode, vars_defined)
    )
