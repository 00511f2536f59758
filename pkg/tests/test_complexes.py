import random
from math import comb

import pytest

from algebra.complexes import (
    FreeComplex,
    KoszulBasisIndex,
    cohomology_vanishes,
    complex_to_dict,
    koszul_basis,
    koszul_chain,
    koszul_cochain,
    koszul_complex,
)
from algebra.errors import IndexOutOfRangeError, InvalidInputError, PreconditionViolationError
from algebra.fpmodules import ModulePresentation, PolyMatrix, annihilator_submodule, cyclic_module, module_is_zero
from algebra.groebner import ideal


def _random_sequence(R, rng, n):
    monomials = ["1", "x", "y", "z", "x*y", "y*z", "x^2", "z^2"]
    seq = []
    for _ in range(n):
        terms = [f"{rng.randint(-2, 2)}*{rng.choice(monomials)}" for _ in range(rng.randint(1, 3))]
        seq.append(R.poly(" + ".join(terms)))
    return seq


def test_koszul_basis():
    assert [b.subset for b in koszul_basis(3, 2)] == [(0, 1), (0, 2), (1, 2)]
    assert koszul_basis(3, 0)[0].degree == 0
    with pytest.raises(InvalidInputError):
        KoszulBasisIndex((2, 1))


def test_koszul_complex_of_two_elements(make_ring):
    R = make_ring("x,y")
    x, y = R.gens
    K = koszul_complex([x, y], R)
    assert K.ranks == [1, 2, 1]
    assert K.differential(1).rows() == [(x, y)]
    assert K.differential(2).rows() == [(-y,), (x,)]
    assert complex_to_dict(K) == {
        "ranks": [1, 2, 1],
        "differentials": [
            {"degree": 1, "rows": [["x", "y"]]},
            {"degree": 2, "rows": [["-y"], ["x"]]},
        ],
    }
    with pytest.raises(InvalidInputError):
        koszul_complex([], R)


@pytest.mark.parametrize("seed", range(5))
def test_koszul_structure_on_random_sequences(make_ring, seed):
    R = make_ring("x,y,z")
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    K = koszul_complex(_random_sequence(R, rng, n), R)
    assert K.ranks == [comb(n, p) for p in range(n + 1)]
    for p in range(1, n):
        assert K.differential(p).compose(R, K.differential(p + 1)).is_zero(R)


def test_free_complex_rejects_non_complexes(make_ring):
    R = make_ring("x")
    one = R.poly_ring.one
    d1 = PolyMatrix(1, ((one,),))
    with pytest.raises(PreconditionViolationError):
        FreeComplex(R, [1, 1, 1], [d1, d1])
    with pytest.raises(InvalidInputError):
        FreeComplex(R, [1, 2], [d1])


def test_h0_of_cochain_is_annihilator(make_ring, free):
    R = make_ring("x,y", "x^2", "x*y")
    I = ideal(R, ["x", "y"])
    C = koszul_cochain(I.generators, free(R))
    verdict = cohomology_vanishes(C, 0)
    assert not verdict.vanishes
    assert annihilator_submodule(I, free(R)).contains(verdict.witness)


def test_h0_of_chain_is_quotient(make_ring, free):
    R = make_ring("x,y")
    C = koszul_chain(list(R.gens), free(R))
    assert not cohomology_vanishes(C, 0).vanishes
    assert cohomology_vanishes(C, 1).vanishes
    assert cohomology_vanishes(C, 2).vanishes


def test_regular_sequence_cohomology(make_ring, free):
    R = make_ring("x,y,z")
    C = koszul_cochain(list(R.gens), free(R))
    assert [cohomology_vanishes(C, p).vanishes for p in range(4)] == [True, True, True, False]
    with pytest.raises(IndexOutOfRangeError):
        cohomology_vanishes(C, 4)


@pytest.mark.parametrize("order", [(0, 1), (1, 0)])
def test_verdicts_do_not_depend_on_order(make_ring, free, order):
    R = make_ring("x,y", "x*y")
    gens = [R.poly("x"), R.poly("x + y")]
    C = koszul_cochain([gens[i] for i in order], free(R))
    assert [cohomology_vanishes(C, p).vanishes for p in range(3)] == [True, False, False]


def test_unit_element_makes_complex_exact(make_ring):
    R = make_ring("x,y")
    M = cyclic_module(ideal(R, ["x*y"]))
    assert not module_is_zero(M)
    C = koszul_cochain([R.poly("1"), R.poly("x")], M)
    assert all(cohomology_vanishes(C, p).vanishes for p in range(3))


def test_cochain_with_module_coefficients(make_ring):
    R = make_ring("x,y")
    M = ModulePresentation(R, 2, [(R.poly("x"), R.poly("0"))])
    C = koszul_cochain([R.poly("x")], M)
    assert C.terms[1].rank == 2
    verdict = cohomology_vanishes(C, 0)
    assert not verdict.vanishes
    assert complex_to_dict(C)["variance"] == "cochain"
