import random

from bconstell.coeffring import Coeff, B, U
from bconstell.ppoly import PPoly

from randops import random_ppoly


def test_mul_add_examples():
    p1, p2, p3 = PPoly.gen(1), PPoly.gen(2), PPoly.gen(3)
    assert p1 * p1 == PPoly.monomial(((1, 2),))
    assert (p2 + p1 * p1) + (-(p1 * p1)) == p2
    prod = p2 * p3
    assert prod.degree() == 5
    assert prod == PPoly.monomial(((2, 1), (3, 1)))


def test_degree_slice_examples():
    p1, p3 = PPoly.gen(1), PPoly.gen(3)
    f = p1 * p1 + p3
    assert f.degree_slice(2) == p1 * p1
    assert f.degree_slice(3) == p3
    assert PPoly.one().degree_slice(0) == PPoly.one()
    assert f.degree_slice(7) == PPoly.zero()


def test_partition_monomial_degree():
    for lam in [(3, 1), (2, 2, 1), (5,), (1, 1, 1, 1)]:
        mono = {}
        for part in lam:
            mono[part] = mono.get(part, 0) + 1
        assert PPoly.monomial(tuple(mono.items())).degree() == sum(lam)


def test_no_p0_or_negative():
    assert PPoly.gen(0) == PPoly.zero()
    assert PPoly.gen(-2) == PPoly.zero()


def test_mul_commutative_associative_random():
    rng = random.Random(7)
    for _ in range(60):
        a = random_ppoly(rng, 5)
        b = random_ppoly(rng, 5)
        c = random_ppoly(rng, 4)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_homogeneous_product_degree():
    rng = random.Random(11)
    for _ in range(40):
        d1, d2 = rng.randrange(0, 4), rng.randrange(0, 4)
        a = random_ppoly(rng, 6).degree_slice(d1)
        b = random_ppoly(rng, 6).degree_slice(d2)
        if a and b:
            assert (a * b).is_homogeneous(d1 + d2)


def test_derivative():
    p1, p2 = PPoly.gen(1), PPoly.gen(2)
    f = p1 * p1 * p2
    assert f.dp(1) == p1 * p2 * 2
    assert f.dp(2) == p1 * p1
    assert f.dp(3) == PPoly.zero()


def test_json_round_trip():
    rng = random.Random(3)
    for _ in range(25):
        f = random_ppoly(rng, 6)
        assert PPoly.from_json_obj(f.to_json_obj()) == f
    f = PPoly.gen(1, coeff=U[1]) + PPoly.gen(2, coeff=B)
    obj = f.to_json_obj()
    assert obj == [
        {"monomial": [[1, 1]], "coeff": "u1"},
        {"monomial": [[2, 1]], "coeff": "b"},
    ]
