import random

import pytest

from algebra.buchberger import GroebnerBudget, TermOrder, budget_scope, current_budget, groebner
from algebra.errors import BudgetExceededError, InvalidInputError, RingMismatchError
from algebra.exact import CoefficientField, MonomialOrder, format_polynomial, leading_term, polynomial_ring
from algebra.groebner import (
    MaximalityVerdict,
    groebner_basis,
    ideal,
    ideal_contains,
    ideal_membership,
    ideal_power,
    ideal_product,
    is_unit_ideal,
    krull_dimension,
    normal_form,
    quotient_ring,
    standard_monomials,
    verify_maximal,
)


def test_reduced_basis(make_ring, make_ideal):
    R = make_ring("x,y")
    G = groebner_basis(make_ideal(R, "x^2 + y", "x*y"))
    assert G.describe() == ["x^2 + y", "x*y", "y^2"]
    assert groebner_basis(make_ideal(R, "x^2", "x*y")).describe() == ["x^2", "x*y"]


def test_basis_is_independent_of_generator_order(make_ring, make_ideal):
    R = make_ring("x,y,z")
    gens = ["x*y - z", "y*z - x", "x*z - y"]
    G1 = groebner_basis(make_ideal(R, *gens))
    G2 = groebner_basis(make_ideal(R, *reversed(gens)))
    assert G1.elements == G2.elements


def test_membership_and_normal_form(make_ring, make_ideal):
    R = make_ring("x,y")
    I = make_ideal(R, "x^2", "x*y")
    assert ideal_membership(R.poly("x^3 + x*y"), I)
    assert not ideal_membership(R.poly("y"), I)
    assert R.format(normal_form(R.poly("x^2 + y^2"), groebner_basis(I))) == "y^2"


def test_quotient_ring_arithmetic(make_ring):
    R = make_ring("x,y", "x^2 - y")
    assert R.format(R.reduce(R.poly("x^3"))) == "x*y"
    assert R.describe() == "QQ[x, y] / (x^2 - y)"


def test_improper_and_invalid_presentations(make_ring):
    with pytest.raises(InvalidInputError):
        make_ring("x", "x", "x - 1")
    with pytest.raises(InvalidInputError):
        make_ring("x,x")


def test_ideal_operations(make_ring, make_ideal):
    R = make_ring("x,y")
    m = make_ideal(R, "x", "y")
    assert is_unit_ideal(make_ideal(R, "x", "x + 1"))
    assert not is_unit_ideal(m)
    assert ideal_contains(m, make_ideal(R, "x^2", "x*y"))
    assert not ideal_contains(make_ideal(R, "x^2", "x*y"), m)
    assert len(ideal_power(m, 2).generators) == 3
    assert is_unit_ideal(ideal_power(m, 0))
    assert ideal_product(m, make_ideal(R, "x")).describe() == "(x^2, x*y)"
    with pytest.raises(InvalidInputError):
        ideal_power(m, -1)


def test_ring_mismatch(make_ring, make_ideal):
    R, S = make_ring("x,y"), make_ring("x,y", "x*y")
    with pytest.raises(RingMismatchError):
        ideal_contains(make_ideal(R, "x"), make_ideal(S, "x"))
    with pytest.raises(RingMismatchError):
        S.coerce(R.poly("x"))


def test_elements_stay_in_their_presentation(make_ring, make_ideal):
    R, S = make_ring("x,y"), make_ring("x,y", "x*y")
    I = make_ideal(S, "x")
    with pytest.raises(RingMismatchError):
        ideal_membership(R.poly("x*y"), I)
    with pytest.raises(RingMismatchError):
        normal_form(R.poly("x"), groebner_basis(I))
    with pytest.raises(RingMismatchError):
        S.reduce(R.poly("x*y"))
    with pytest.raises(RingMismatchError):
        ideal(S, [R.poly("y")])
    assert S.format(S.reduce(S.adopt(R.poly("x*y + y")))) == "y"
    with pytest.raises(RingMismatchError):
        S.adopt(make_ring("x,z").poly("z"))


def test_same_variables_do_not_share_a_ring(make_ring):
    R, S = make_ring("x,y"), make_ring("x,y")
    assert R.poly_ring is not S.poly_ring
    with pytest.raises(RingMismatchError):
        R.coerce(S.poly("x"))
    Q = quotient_ring(ideal(R, ["x"]))
    assert Q.format(Q.reduce(Q.poly("x + y"))) == "y"


def test_ideal_drops_zero_and_repeated_generators(make_ring):
    R = make_ring("x,y", "x^2")
    I = ideal(R, ["x^2", "y", "y", "0", "x^3 + y"])
    assert I.describe() == "(y)"


def test_krull_dimension(make_ring):
    assert krull_dimension(make_ring("x,y")) == 2
    assert krull_dimension(make_ring("x,y", "x^2", "x*y")) == 1
    assert krull_dimension(make_ring("x,y", "x*y")) == 1
    assert krull_dimension(make_ring("x,y,z", "x", "y", "z")) == 0
    assert krull_dimension(make_ring("")) == 0
    assert krull_dimension(make_ring("x", field=CoefficientField.prime_field(7))) == 1


def test_quotient_ring_by_ideal(make_ring, make_ideal):
    R = make_ring("x,y")
    Q = quotient_ring(make_ideal(R, "x"))
    assert krull_dimension(Q) == 1


def test_standard_monomials(make_ring, make_ideal):
    R = make_ring("x,y")
    assert standard_monomials(groebner_basis(make_ideal(R, "x^2", "y"))) == [(0, 0), (1, 0)]
    assert standard_monomials(groebner_basis(make_ideal(R, "x"))) is None
    with pytest.raises(BudgetExceededError):
        standard_monomials(groebner_basis(make_ideal(R, "x^30", "y^30")), limit=100)


def test_verify_maximal(make_ring, make_ideal):
    R = make_ring("x,y")
    assert verify_maximal(make_ideal(R, "x", "y"), 50, 0) == MaximalityVerdict.verified_maximal
    assert verify_maximal(make_ideal(R, "x^2", "y"), 50, 0) == MaximalityVerdict.not_maximal
    assert verify_maximal(make_ideal(R, "x^2 - 2", "y"), 50, 0) == MaximalityVerdict.verified_maximal
    assert verify_maximal(make_ideal(R, "x"), 50, 0) == MaximalityVerdict.not_maximal
    assert verify_maximal(make_ideal(R, "x", "x + 1"), 50, 0) == MaximalityVerdict.not_maximal


@pytest.mark.parametrize("p, expected", [(3, MaximalityVerdict.verified_maximal), (5, MaximalityVerdict.not_maximal)])
def test_verify_maximal_over_prime_fields(make_ring, make_ideal, p, expected):
    R = make_ring("x", field=CoefficientField.prime_field(p))
    assert verify_maximal(make_ideal(R, "x^2 + 1"), 50, 0) == expected


def test_zero_ideal_of_a_field_is_maximal(make_ring, make_ideal):
    K = make_ring("")
    assert verify_maximal(make_ideal(K), 10, 0) == MaximalityVerdict.verified_maximal


def test_budget_scope(make_ring, make_ideal):
    R = make_ring("x,y")
    I = make_ideal(R, "x^2", "x*y", "y^3")
    with budget_scope(GroebnerBudget(max_basis=1)):
        with pytest.raises(BudgetExceededError) as error:
            groebner_basis(I)
    assert error.value.diagnostic["basis"] == 2
    assert current_budget() == GroebnerBudget()
    assert len(groebner_basis(I).elements) == 3


def test_module_groebner_position_over_term(make_ring):
    R = make_ring("x,y")
    x, y = R.gens
    key = TermOrder(MonomialOrder.default(2))
    basis = groebner([(x, y), (y, R.poly_ring.zero)], key)
    # (x, y) y (y, 0): la sizigia y*(x, y) - x*(y, 0) = (0, y^2)
    assert (R.poly_ring.zero, y**2) in basis
    assert len(basis) == 3


SEEDS = range(6)
QQ_FIELD = CoefficientField.rationals()


def random_polynomial(rng: random.Random, ring, terms: int = 3, degree: int = 2):
    """Polinomio sin término constante, para que los ideales que generan sean propios."""
    coefficients = {}
    for _ in range(terms):
        monomial = tuple(rng.randint(0, degree) for _ in range(ring.ngens))
        if any(monomial):
            coefficients[monomial] = ring.domain.convert(rng.randint(-3, 3))
    return ring.from_dict(coefficients)


def s_polynomial(f, g, order):
    (mf, cf), (mg, cg) = leading_term(f, order), leading_term(g, order)
    lcm = tuple(max(a, b) for a, b in zip(mf, mg))
    ring = f.ring
    left = ring.from_dict({tuple(a - b for a, b in zip(lcm, mf)): ring.domain.quo(ring.domain.one, cf)})
    right = ring.from_dict({tuple(a - b for a, b in zip(lcm, mg)): ring.domain.quo(ring.domain.one, cg)})
    return left * f - right * g


@pytest.mark.parametrize("relations", [(), ("x^2 - y",)], ids=["free", "quotient"])
@pytest.mark.parametrize("seed", SEEDS)
def test_every_s_pair_reduces_to_zero(make_ring, seed, relations):
    rng = random.Random(seed)
    R = make_ring("x,y,z", *relations)
    I = ideal(R, [random_polynomial(rng, R.poly_ring) for _ in range(2)])
    G = groebner_basis(I)
    for i, f in enumerate(G.elements):
        for g in G.elements[i + 1 :]:
            assert not normal_form(s_polynomial(f, g, R.order), G)
    for f in I.generators:
        assert not normal_form(f, G)


@pytest.mark.parametrize("relations", [(), ("x*y",)], ids=["free", "quotient"])
@pytest.mark.parametrize("seed", SEEDS)
def test_ideals_absorb_products(make_ring, seed, relations):
    rng = random.Random(seed)
    R = make_ring("x,y,z", *relations)
    gens = [random_polynomial(rng, R.poly_ring) for _ in range(2)]
    I = ideal(R, gens)
    p = sum((random_polynomial(rng, R.poly_ring) * g for g in gens), R.poly_ring.zero)
    q = random_polynomial(rng, R.poly_ring) + R.poly_ring.one
    assert ideal_membership(p, I)
    assert ideal_membership(p * q, I)
    assert ideal_membership(q * p, I)


@pytest.mark.parametrize("seed", SEEDS)
def test_krull_dimension_ignores_the_choice_of_generators(make_ring, seed):
    rng = random.Random(seed)
    scratch = polynomial_ring(QQ_FIELD, ("x", "y", "z"))
    order = MonomialOrder.default(3)
    f, g = (random_polynomial(rng, scratch) for _ in range(2))
    a, b = (random_polynomial(rng, scratch) + scratch.one for _ in range(2))
    presentations = [(f, g), (g, f), (f, g + a * f), (f, g, a * f + b * g)]
    dims = {krull_dimension(make_ring("x,y,z", *(format_polynomial(p, order) for p in rels))) for rels in presentations}
    assert len(dims) == 1


@pytest.mark.parametrize("n, d", [(n, d) for n in range(1, 6) for d in range(1, n + 1)])
def test_dimension_drops_by_the_number_of_variables_killed(make_ring, make_ideal, n, d):
    names = [f"x{i}" for i in range(1, n + 1)]
    killed = names[:d]
    assert krull_dimension(make_ring(",".join(names), *killed)) == n - d
    assert krull_dimension(quotient_ring(make_ideal(make_ring(",".join(names)), *killed))) == n - d
