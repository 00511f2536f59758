import pytest

from algebra.exact import CoefficientField
from algebra.fpmodules import ModulePresentation
from algebra.groebner import RingPresentation, ideal

QQ_FIELD = CoefficientField.rationals()


@pytest.fixture
def make_ring():
    """Fábrica de anillos: make_ring("x,y", "x^2", "x*y") es Q[x, y]/(x^2, x*y)."""

    def factory(variables: str, *relations: str, field: CoefficientField = QQ_FIELD) -> RingPresentation:
        names = [v.strip() for v in variables.split(",") if v.strip()]
        return RingPresentation(field, names, list(relations))

    return factory


@pytest.fixture
def make_ideal():
    def factory(R: RingPresentation, *generators: str):
        return ideal(R, list(generators))

    return factory


@pytest.fixture
def free():
    def factory(R: RingPresentation, rank: int = 1) -> ModulePresentation:
        return ModulePresentation.free(R, rank)

    return factory
