import random

import pytest

from algebra.errors import DimensionMismatchError, IncompatibleCoefficientsError, InvalidInputError, ScriptSyntaxError
from algebra.exact import (
    CoefficientField,
    MonomialOrder,
    OrderKind,
    Ordering,
    compare_monomials,
    format_coefficient,
    format_polynomial,
    leading_term,
    make_monic,
    parse_coefficient,
    parse_polynomial,
    poly_add,
    poly_mul,
    polynomial_ring,
    solve_linear_dependency,
)

QQ_FIELD = CoefficientField.rationals()


def test_fields():
    assert str(QQ_FIELD) == "QQ"
    assert str(CoefficientField.prime_field(7)) == "Fp(7)"
    with pytest.raises(InvalidInputError):
        CoefficientField.prime_field(4)
    with pytest.raises(InvalidInputError):
        CoefficientField.prime_field(2**64 + 13)


def test_grevlex_and_lex():
    grevlex = MonomialOrder.default(3)
    assert compare_monomials(grevlex, (2, 0, 0), (1, 1, 0)) == Ordering.greater
    assert compare_monomials(grevlex, (1, 0, 1), (0, 2, 0)) == Ordering.less
    assert compare_monomials(grevlex, (0, 0, 3), (1, 1, 0)) == Ordering.greater
    lex = MonomialOrder.default(3, OrderKind.lex)
    assert compare_monomials(lex, (1, 0, 0), (0, 5, 5)) == Ordering.greater
    assert compare_monomials(lex, (1, 1, 0), (1, 1, 0)) == Ordering.equal
    with pytest.raises(DimensionMismatchError):
        compare_monomials(grevlex, (1, 0), (0, 1))


def test_priority_permutes_variables():
    order = MonomialOrder(OrderKind.lex, (1, 0))
    assert compare_monomials(order, (0, 1), (5, 0)) == Ordering.greater


def test_format_and_parse():
    R = polynomial_ring(QQ_FIELD, ("x", "y"))
    order = MonomialOrder.default(2)
    p = parse_polynomial("2*x^2 - x*y + 1/2", R)
    assert format_polynomial(p, order) == "2*x^2 - x*y + 1/2"
    assert format_polynomial(parse_polynomial("(x + y)^2", R), order) == "x^2 + 2*x*y + y^2"
    assert format_polynomial(parse_polynomial("3x - -y", R), order) == "3*x + y"
    assert format_polynomial(R.zero, order) == "0"
    q = parse_polynomial(format_polynomial(p, order), R)
    assert q == p


def test_parse_errors_carry_column():
    R = polynomial_ring(QQ_FIELD, ("x", "y"))
    with pytest.raises(ScriptSyntaxError) as error:
        parse_polynomial("x + * y", R)
    assert error.value.column == 5
    with pytest.raises(ScriptSyntaxError) as error:
        parse_polynomial("x + z", R)
    assert error.value.column == 5
    with pytest.raises(ScriptSyntaxError):
        parse_polynomial("(x + y", R)
    with pytest.raises(ScriptSyntaxError):
        parse_polynomial("x / y", R)


def test_prime_field_arithmetic():
    F = CoefficientField.prime_field(5)
    R = polynomial_ring(F, ("x",))
    order = MonomialOrder.default(1)
    p = parse_polynomial("3*x + 4", R) * parse_polynomial("2", R)
    assert format_polynomial(p, order) == "x + 3"
    assert format_polynomial(make_monic(parse_polynomial("2*x + 1", R), order), order) == "x + 3"


def test_coefficients():
    from sympy.polys.domains import QQ

    assert format_coefficient(parse_coefficient("6/4", QQ), QQ) == "3/2"
    assert format_coefficient(parse_coefficient("-10/4", QQ), QQ) == "-5/2"
    with pytest.raises(InvalidInputError):
        parse_coefficient("1/0", QQ)


def test_incompatible_rings():
    R = polynomial_ring(QQ_FIELD, ("x",))
    S = polynomial_ring(CoefficientField.prime_field(3), ("x",))
    T = polynomial_ring(QQ_FIELD, ("x", "y"))
    with pytest.raises(IncompatibleCoefficientsError):
        poly_add(R.gens[0], S.gens[0])
    with pytest.raises(DimensionMismatchError):
        poly_add(R.gens[0], T.gens[0])


def test_leading_term():
    R = polynomial_ring(QQ_FIELD, ("x", "y"))
    order = MonomialOrder.default(2)
    assert leading_term(parse_polynomial("y^3 + x^2", R), order) == ((0, 3), 1)
    assert leading_term(R.zero, order) is None


def test_linear_dependency():
    from sympy.polys.domains import QQ

    one, two = QQ(1), QQ(2)
    vectors = [[one, QQ(0)], [QQ(0), one], [two, two]]
    assert solve_linear_dependency(vectors, QQ) == [QQ(-2), QQ(-2), one]
    assert solve_linear_dependency([[one, QQ(0)], [QQ(0), one]], QQ) is None


SEEDS = range(8)
XYZ = ("x", "y", "z")


def random_polynomial(rng: random.Random, ring, terms: int = 4, degree: int = 3):
    coefficients = {
        tuple(rng.randint(0, degree) for _ in range(ring.ngens)): ring.domain.convert(rng.randint(-5, 5))
        for _ in range(terms)
    }
    return ring.from_dict(coefficients)


def random_monomial(rng: random.Random, n: int = 3, degree: int = 4):
    return tuple(rng.randint(0, degree) for _ in range(n))


@pytest.mark.parametrize("field", [QQ_FIELD, CoefficientField.prime_field(7)], ids=["QQ", "Fp7"])
@pytest.mark.parametrize("seed", SEEDS)
def test_ring_axioms(field, seed):
    rng = random.Random(seed)
    ring = polynomial_ring(field, XYZ)
    p, q, r = (random_polynomial(rng, ring) for _ in range(3))
    assert poly_add(p, q) == poly_add(q, p)
    assert poly_mul(p, q) == poly_mul(q, p)
    assert poly_add(poly_add(p, q), r) == poly_add(p, poly_add(q, r))
    assert poly_mul(poly_mul(p, q), r) == poly_mul(p, poly_mul(q, r))
    assert poly_mul(p, poly_add(q, r)) == poly_add(poly_mul(p, q), poly_mul(p, r))
    assert poly_add(p, ring.zero) == p
    assert poly_mul(p, ring.one) == p
    assert not poly_add(p, -p)


@pytest.mark.parametrize("kind", [OrderKind.lex, OrderKind.grevlex])
@pytest.mark.parametrize("seed", SEEDS)
def test_monomial_order_is_a_term_order(kind, seed):
    rng = random.Random(seed)
    order = MonomialOrder(kind, tuple(rng.sample(range(3), 3)))
    one = (0, 0, 0)
    for _ in range(25):
        a, b, c = (random_monomial(rng) for _ in range(3))
        ab = compare_monomials(order, a, b)
        assert (ab == Ordering.equal) == (a == b)
        assert {ab, compare_monomials(order, b, a)} in ({Ordering.equal}, {Ordering.less, Ordering.greater})
        if ab == Ordering.less and compare_monomials(order, b, c) == Ordering.less:
            assert compare_monomials(order, a, c) == Ordering.less
        shifted = compare_monomials(order, tuple(map(sum, zip(a, c))), tuple(map(sum, zip(b, c))))
        assert shifted == ab
        assert compare_monomials(order, one, a) != Ordering.greater
