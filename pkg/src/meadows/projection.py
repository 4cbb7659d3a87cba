"""Translations between the meadow notations.

Each projection interprets the terms of one notation inside another:
divisive terms inside the inversive notation (division becomes
multiplication by an inverse), inversive terms inside the divisive
notation (inverse becomes one-over), and inversive terms inside the
reduced divisive notation, whose only symbols are 1, binary
subtraction, and division.
"""

from __future__ import annotations

from enum import Enum

from .terms import (
    Add, Div, Inv, Mul, Neg, Sub, Term, Var, Zero, One, ONE,
    Signature, check_conforms,
)

__all__ = ["Projection", "project"]


class Projection(Enum):
    DMN_TO_IMN = "imn"     # divisive terms read in the inversive notation
    IMN_TO_DMN = "dmn"     # inversive terms read in the divisive notation
    IMN_TO_RDMN = "rdmn"   # inversive terms read in the reduced divisive notation


_SOURCE = {
    Projection.DMN_TO_IMN: Signature.DMD,
    Projection.IMN_TO_DMN: Signature.IMD,
    Projection.IMN_TO_RDMN: Signature.IMD,
}

_TARGET = {
    Projection.DMN_TO_IMN: Signature.IMD,
    Projection.IMN_TO_DMN: Signature.DMD,
    Projection.IMN_TO_RDMN: Signature.RD,
}


def _dmn_to_imn(t: Term) -> Term:
    if isinstance(t, Add):
        return Add(_dmn_to_imn(t.left), _dmn_to_imn(t.right))
    if isinstance(t, Mul):
        return Mul(_dmn_to_imn(t.left), _dmn_to_imn(t.right))
    if isinstance(t, Neg):
        return Neg(_dmn_to_imn(t.arg))
    if isinstance(t, Div):
        return Mul(_dmn_to_imn(t.num), Inv(_dmn_to_imn(t.den)))
    return t  # 0, 1, variables


def _imn_to_dmn(t: Term) -> Term:
    if isinstance(t, Add):
        return Add(_imn_to_dmn(t.left), _imn_to_dmn(t.right))
    if isinstance(t, Mul):
        return Mul(_imn_to_dmn(t.left), _imn_to_dmn(t.right))
    if isinstance(t, Neg):
        return Neg(_imn_to_dmn(t.arg))
    if isinstance(t, Inv):
        return Div(ONE, _imn_to_dmn(t.arg))
    return t


def _rd_zero() -> Term:
    return Sub(ONE, ONE)


def _imn_to_rdmn(t: Term) -> Term:
    if isinstance(t, Zero):
        return _rd_zero()
    if isinstance(t, (One, Var)):
        return t
    if isinstance(t, Add):
        # p + q  becomes  p - ((1 - 1) - q)
        return Sub(_imn_to_rdmn(t.left), Sub(_rd_zero(), _imn_to_rdmn(t.right)))
    if isinstance(t, Mul):
        # p * q  becomes  p / (1 / q)
        return Div(_imn_to_rdmn(t.left), Div(ONE, _imn_to_rdmn(t.right)))
    if isinstance(t, Neg):
        return Sub(_rd_zero(), _imn_to_rdmn(t.arg))
    assert isinstance(t, Inv)
    return Div(ONE, _imn_to_rdmn(t.arg))


def project(t: Term, which: Projection) -> Term:
    """Apply one of the three notation projections to t.

    The input must conform to the projection's source signature; the
    output conforms to its target signature by construction.
    """
    check_conforms(t, _SOURCE[which])
    if which is Projection.DMN_TO_IMN:
        return _dmn_to_imn(t)
    if which is Projection.IMN_TO_DMN:
        return _imn_to_dmn(t)
    return _imn_to_rdmn(t)
