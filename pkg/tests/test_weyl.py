import random

import pytest

from bconstell.coeffring import Coeff, ONE_PLUS_B
from bconstell.ppoly import PPoly
from bconstell.weyl import DegreeBudgetError, WeylOp

from randops import random_op, random_homogeneous_op, random_ppoly

D = 8
p1, p2, p3 = PPoly.gen(1), PPoly.gen(2), PPoly.gen(3)


def test_apply_examples():
    assert WeylOp.p_star(1, D).apply(p1 * p1) == p1 * 2
    assert WeylOp.p_star(2, D).apply(p2) == PPoly.one() * 2
    op = WeylOp({(((3, 1),), ((1, 1),)): Coeff.one()}, D)
    assert op.apply(p1 * p2) == p2 * p3


def test_apply_budget_error():
    with pytest.raises(DegreeBudgetError):
        WeylOp.p_star(1, 2).apply(p1 * p2)


def test_compose_examples():
    got = WeylOp.p_star(1, D).compose(WeylOp.p(1, D))
    want = WeylOp({(((1, 1),), ((1, 1),)): Coeff.one(), ((), ()): Coeff.one()}, D - 1)
    assert got.equal_up_to(want, got.working_degree)

    got = WeylOp.p_star(2, D).compose(WeylOp.p(2, D))
    want = WeylOp(
        {(((2, 1),), ((2, 1),)): Coeff.one(), ((), ()): Coeff.from_rational(2)}, D - 2
    )
    assert got.equal_up_to(want, got.working_degree)


def test_compose_double_derivative():
    # second derivative against a creation, checked against direct application
    dd = WeylOp({((), ((1, 2),)): Coeff.one()}, D)
    creation = WeylOp.p(1, D)
    got = dd.compose(creation)
    want = WeylOp(
        {(((1, 1),), ((1, 2),)): Coeff.one(), ((), ((1, 1),)): Coeff.from_rational(2)},
        D - 1,
    )
    assert got.equal_up_to(want, got.working_degree)
    for f in (p1 * p1, p1 * p1 * p1):
        assert got.apply(f) == dd.apply(creation.apply(f))


def test_commutator_examples():
    assert WeylOp.p_star(1, D).commutator(WeylOp.p(1, D)).equal_up_to(
        WeylOp.identity(D), D - 1
    )
    assert WeylOp.p(2, D).commutator(WeylOp.p(3, D)).is_zero()
    for i in range(1, 4):
        for j in range(1, 4):
            comm = WeylOp.p_star(i, D).commutator(WeylOp.p_star(j, D))
            assert comm.is_zero()


def test_equal_examples():
    op = WeylOp({(((1, 1),), ((1, 1),)): Coeff.one()}, D)
    assert op.equal_up_to(op, D)
    got = WeylOp.p_star(1, D).compose(WeylOp.p(1, D))
    want = op + WeylOp.identity(D)
    assert got.equal_up_to(want, D - 1)
    assert WeylOp.p_star(5, 4).equal_up_to(WeylOp.zero(4), 4)


def test_equal_budget_error():
    with pytest.raises(DegreeBudgetError):
        WeylOp.p_star(1, 3).equal_up_to(WeylOp.p_star(1, 8), 5)


def test_truncation_drops_deep_annihilation():
    op = WeylOp({((), ((5, 1),)): Coeff.one()}, 4)
    assert op.is_zero()


def test_jacobi_antisymmetry_small():
    rng = random.Random(101)
    for _ in range(40):
        a = random_op(rng, 12)
        b = random_op(rng, 12)
        c = random_op(rng, 12)
        ab = a.commutator(b)
        ba = b.commutator(a)
        assert ab.equal_up_to(-ba, ab.working_degree)
        jac = ab.commutator(c) + b.commutator(c).commutator(a) + c.commutator(a).commutator(b)
        d = jac.working_degree
        if d >= 0:
            assert jac.equal_up_to(WeylOp.zero(d), d)


def test_compose_apply_coherence_small():
    rng = random.Random(55)
    for _ in range(60):
        a = random_op(rng, 12)
        b = random_op(rng, 12)
        comp = a.compose(b)
        f = random_ppoly(rng, comp.working_degree)
        assert comp.apply(f) == a.apply(b.apply(f))


def test_homogeneity_propagation_small():
    rng = random.Random(77)
    for _ in range(40):
        g1, g2 = rng.randrange(-2, 3), rng.randrange(-2, 3)
        a = random_homogeneous_op(rng, 12, g1)
        b = random_homogeneous_op(rng, 12, g2)
        comp = a.compose(b)
        if not comp.is_zero():
            assert comp.homogeneous_degree() == g1 + g2


def test_json_round_trip():
    rng = random.Random(9)
    for _ in range(20):
        op = random_op(rng, 7)
        assert WeylOp.from_json_obj(op.to_json_obj()).equal_up_to(op, 7)
