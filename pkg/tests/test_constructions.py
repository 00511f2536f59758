import pytest

from algebra.constructions import (
    ConstructionKind,
    RingHom,
    amalgamation,
    fresh_name,
    nilpotency_check,
    polynomial_extension,
    transport_ideal,
    trivial_extension,
)
from algebra.errors import InvalidInputError, PreconditionViolationError, RingMismatchError
from algebra.fpmodules import ModulePresentation, cyclic_module
from algebra.groebner import krull_dimension


def test_fresh_name():
    assert fresh_name("z", {"x", "y"}) == "z"
    assert fresh_name("z", {"z", "z_1"}) == "z_2"


def test_polynomial_extension(make_ring, make_ideal):
    R = make_ring("y", "y^2")
    C = polynomial_extension(R, "t")
    assert C.kind == ConstructionKind.polyext
    assert C.ring.describe() == "QQ[y, t] / (y^2)"
    assert transport_ideal(C, make_ideal(R, "y")).describe() == "(y, t)"
    assert krull_dimension(C.ring) == 1
    with pytest.raises(InvalidInputError):
        polynomial_extension(R, "y")


def test_trivial_extension_by_the_ring(make_ring, free):
    R = make_ring("x,y")
    C = trivial_extension(R, free(R))
    assert C.ring.describe() == "QQ[x, y, z] / (z^2)"
    assert C.nilpotency == 2
    assert C.transport_table() == {"kind": "trivext", "variables": {"x": "x", "y": "y"}, "adjoined": ["z"]}


def test_trivial_extension_by_a_cyclic_module(make_ring, make_ideal):
    R = make_ring("x,y")
    C = trivial_extension(R, cyclic_module(make_ideal(R, "x", "y")))
    assert set(C.ring.describe().split(" / ")[1].strip("()").split(", ")) == {"z^2", "x*z", "y*z"}


def test_trivial_extension_of_rank_two(make_ring):
    R = make_ring("x")
    C = trivial_extension(R, ModulePresentation.free(R, 2))
    assert C.ring.variables == ("x", "z1", "z2")
    assert len(C.ring.relations) == 3


def test_trivial_extension_needs_the_same_ring(make_ring, free):
    R, S = make_ring("x"), make_ring("x", "x^2")
    with pytest.raises(RingMismatchError):
        trivial_extension(R, free(S))


def test_ring_hom_checks_relations(make_ring):
    A, B = make_ring("u", "u^2"), make_ring("u")
    with pytest.raises(InvalidInputError):
        RingHom(A, B, [B.poly("u")])
    f = RingHom(B, A, [A.poly("u")])
    assert A.format(f.apply(B.poly("u^3 + u"))) == "u"


def test_nilpotency(make_ring, make_ideal):
    B = make_ring("u,e", "e^3")
    assert nilpotency_check(make_ideal(B, "e"), 16) == 3
    assert nilpotency_check(make_ideal(B, "u"), 4) is None


def _square_zero(make_ring, degree):
    A = make_ring("u")
    B = make_ring("u,e", f"e^{degree}")
    f = RingHom(A, B, [B.poly("u")])
    return A, B, f


def test_amalgamation_along_a_square_zero_ideal(make_ring, make_ideal):
    A, B, f = _square_zero(make_ring, 2)
    C = amalgamation(A, B, f, make_ideal(B, "e"), [B.poly("1"), B.poly("e")])
    assert C.kind == ConstructionKind.amalg
    assert C.ring.describe() == "QQ[u, z] / (z^2)"
    assert C.module.rank == 1
    assert C.nilpotency == 2
    assert transport_ideal(C, make_ideal(A, "u")).describe() == "(u, z)"


def test_amalgamation_with_nilpotency_three(make_ring, make_ideal):
    A, B, f = _square_zero(make_ring, 3)
    C = amalgamation(A, B, f, make_ideal(B, "e"), [B.poly("1"), B.poly("e"), B.poly("e^2")])
    assert C.ring.variables == ("u", "z1", "z2")
    assert C.module.rank == 2
    assert C.nilpotency == 3
    assert krull_dimension(C.ring) == 1
    assert "z1^2 - z2" in [C.ring.format(r) for r in C.ring.relations]


def test_amalgamation_along_the_zero_ideal(make_ring, make_ideal):
    A, B, f = _square_zero(make_ring, 2)
    C = amalgamation(A, B, f, make_ideal(B), [B.poly("1"), B.poly("e")])
    assert C.ring.variables == ("u",)
    assert C.module.rank == 0


def test_amalgamation_preconditions(make_ring, make_ideal):
    A, B, f = _square_zero(make_ring, 2)
    with pytest.raises(PreconditionViolationError):
        amalgamation(A, B, f, make_ideal(B, "u"), [B.poly("1"), B.poly("e")])
    with pytest.raises(PreconditionViolationError):
        amalgamation(A, B, f, make_ideal(B, "e"), [B.poly("1")])
    with pytest.raises(RingMismatchError):
        amalgamation(B, B, f, make_ideal(B, "e"), [B.poly("1")])
