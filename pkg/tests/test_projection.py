import random
from itertools import product

import pytest

from meadows.projection import Projection, project
from meadows.semantics import eval_model, eval_q0, zp_meadow
from meadows.presentations import builtin
from meadows.terms import (
    Add, Div, Inv, Mul, Neg, Sub, Var, Zero, ONE,
    Signature, SignatureError, conforms, free_vars,
)

from .helpers import random_assignment, random_term


def test_projection_clauses():
    x, y = Var("x"), Var("y")
    assert project(Div(x, y), Projection.DMN_TO_IMN) == Mul(x, Inv(y))
    assert project(Inv(x), Projection.IMN_TO_DMN) == Div(ONE, x)
    rd_zero = Sub(ONE, ONE)
    assert project(Add(x, y), Projection.IMN_TO_RDMN) == Sub(x, Sub(rd_zero, y))
    assert project(Zero(), Projection.IMN_TO_RDMN) == rd_zero
    assert project(Mul(x, y), Projection.IMN_TO_RDMN) == Div(x, Div(ONE, y))
    assert project(Neg(x), Projection.IMN_TO_RDMN) == Sub(rd_zero, x)
    assert project(Inv(x), Projection.IMN_TO_RDMN) == Div(ONE, x)


def test_projection_targets_conform():
    rng = random.Random(7)
    for _ in range(200):
        t = random_term(rng, Signature.DMD, 5)
        assert conforms(project(t, Projection.DMN_TO_IMN), Signature.IMD)
        u = random_term(rng, Signature.IMD, 5)
        assert conforms(project(u, Projection.IMN_TO_DMN), Signature.DMD)
        assert conforms(project(u, Projection.IMN_TO_RDMN), Signature.RD)


def test_projection_rejects_wrong_source():
    with pytest.raises(SignatureError):
        project(Inv(Var("x")), Projection.DMN_TO_IMN)
    with pytest.raises(SignatureError):
        project(Div(Var("x"), Var("y")), Projection.IMN_TO_DMN)


@pytest.mark.parametrize(
    "which,source",
    [
        (Projection.DMN_TO_IMN, Signature.DMD),
        (Projection.IMN_TO_DMN, Signature.IMD),
        (Projection.IMN_TO_RDMN, Signature.IMD),
    ],
)
def test_semantic_commutation_sampled(which, source):
    rng = random.Random(hash(which.value) & 0xFFFF)
    for _ in range(500):
        t = random_term(rng, source, 5)
        image = project(t, which)
        a = random_assignment(rng, free_vars(t))
        assert eval_q0(t, a) == eval_q0(image, a)


def test_round_trip_semantic_not_syntactic():
    t = Div(Var("x"), Var("y"))
    back = project(project(t, Projection.DMN_TO_IMN), Projection.IMN_TO_DMN)
    assert back != t  # x * (1 / y)
    rng = random.Random(3)
    for _ in range(200):
        a = random_assignment(rng, {"x", "y"})
        assert eval_q0(t, a) == eval_q0(back, a)


def test_dmd_axioms_interpret_in_zp_models():
    # Image of each divisive axiom holds in zero-totalized Z_p, exhaustively.
    dmd = builtin("dmd")
    for p in (2, 3, 5, 7, 11, 13):
        model = zp_meadow(p)
        for eq in dmd.axioms:
            lhs = project(eq.lhs, Projection.DMN_TO_IMN)
            rhs = project(eq.rhs, Projection.DMN_TO_IMN)
            names = sorted(free_vars(lhs) | free_vars(rhs))
            for values in product(model.carrier, repeat=len(names)):
                a = dict(zip(names, values))
                assert eval_model(lhs, model, a) == eval_model(rhs, model, a), (
                    p, eq.name, a,
                )
