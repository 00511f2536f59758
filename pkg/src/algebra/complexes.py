"""Complejo de Koszul, sus variantes con coeficientes en un módulo y la anulación de (co)homología."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb
from typing import List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from algebra.buchberger import Vector
from algebra.errors import IndexOutOfRangeError, InvalidInputError, PreconditionViolationError, RingMismatchError
from algebra.fpmodules import ModuleMap, ModulePresentation, PolyMatrix, subquotient_witness, zero_vector
from algebra.groebner import RingPresentation

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class KoszulBasisIndex:
    """Subconjunto i_1 < ... < i_p (base 0) que indexa e_{i_1} ∧ ... ∧ e_{i_p}."""

    subset: Tuple[int, ...]

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.subset, self.subset[1:])):
            raise InvalidInputError(f"el subconjunto {self.subset} no es estrictamente creciente")

    @property
    def degree(self) -> int:
        return len(self.subset)


def koszul_basis(n: int, p: int) -> List[KoszulBasisIndex]:
    """Base de grado p en orden lexicográfico."""
    return [KoszulBasisIndex(s) for s in combinations(range(n), p)]


class FreeComplex:
    """Complejo de módulos libres; `differentials[p - 1]` es d_p: grado p -> grado p-1."""

    def __init__(self, ring: RingPresentation, ranks: Sequence[int], differentials: Sequence[PolyMatrix]):
        if len(differentials) != len(ranks) - 1:
            raise InvalidInputError("la cantidad de diferenciales no corresponde con los rangos")
        for p, d in enumerate(differentials, start=1):
            if d.nrows != ranks[p - 1] or d.ncols != ranks[p]:
                raise InvalidInputError(f"la diferencial d_{p} no tiene la forma {ranks[p - 1]}x{ranks[p]}")
        for p in range(1, len(differentials)):
            if not differentials[p - 1].compose(ring, differentials[p]).is_zero(ring):
                raise PreconditionViolationError(f"d_{p} ∘ d_{p + 1} no es cero")
        self.ring = ring
        self.ranks = list(ranks)
        self.differentials = list(differentials)

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def differential(self, p: int) -> PolyMatrix:
        return self.differentials[p - 1]


def koszul_complex(x: Sequence[PolyElement], R: RingPresentation) -> FreeComplex:
    """K(x) con d_p(e_α) = Σ_j (-1)^(j+1) x_{i_j} e_{α - i_j}."""
    if not x:
        raise InvalidInputError("el complejo de Koszul necesita una sucesión no vacía")
    x = [R.reduce(R.coerce(a)) for a in x]
    n = len(x)
    ranks = [comb(n, p) for p in range(n + 1)]
    differentials = []
    for p in range(1, n + 1):
        lower = {b.subset: i for i, b in enumerate(koszul_basis(n, p - 1))}
        columns = []
        for alpha in koszul_basis(n, p):
            col = list(zero_vector(R, ranks[p - 1]))
            for j, i in enumerate(alpha.subset):
                face = alpha.subset[:j] + alpha.subset[j + 1 :]
                term = x[i] if j % 2 == 0 else -x[i]
                col[lower[face]] = col[lower[face]] + term
            columns.append(tuple(col))
        differentials.append(PolyMatrix(ranks[p - 1], tuple(columns)))
    return FreeComplex(R, ranks, differentials)


class Variance(str, Enum):
    cochain = "cochain"
    chain = "chain"


@dataclass
class ComplexWithCoefficients:
    """K(x) ⊗ M (cadena) o Hom(K(x), M) (cocadena). El término de grado p es M^(rango p)."""

    base: FreeComplex
    module: ModulePresentation
    variance: Variance
    terms: List[ModulePresentation] = field(init=False)

    def __post_init__(self):
        self.terms = [self.module.direct_power(r) for r in self.base.ranks]

    @property
    def length(self) -> int:
        return self.base.length

    def outgoing(self, p: int) -> Optional[ModuleMap]:
        R, r = self.base.ring, self.module.rank
        if self.variance == Variance.chain:
            if p == 0:
                return None
            matrix = self.base.differential(p).kron_identity(R, r)
            return ModuleMap(self.terms[p], self.terms[p - 1], matrix, check=False)
        if p == self.length:
            return None
        matrix = self.base.differential(p + 1).transpose(R).kron_identity(R, r)
        return ModuleMap(self.terms[p], self.terms[p + 1], matrix, check=False)

    def incoming(self, p: int) -> Optional[ModuleMap]:
        if self.variance == Variance.chain:
            return self.outgoing(p + 1) if p < self.length else None
        return self.outgoing(p - 1) if p > 0 else None


def _with_coefficients(x: Sequence[PolyElement], M: ModulePresentation, variance: Variance) -> ComplexWithCoefficients:
    for a in x:
        if isinstance(a, PolyElement) and a.ring is not M.ring.poly_ring:
            raise RingMismatchError("la sucesión y el módulo pertenecen a anillos distintos")
    return ComplexWithCoefficients(koszul_complex(x, M.ring), M, variance)


def koszul_cochain(x: Sequence[PolyElement], M: ModulePresentation) -> ComplexWithCoefficients:
    return _with_coefficients(x, M, Variance.cochain)


def koszul_chain(x: Sequence[PolyElement], M: ModulePresentation) -> ComplexWithCoefficients:
    return _with_coefficients(x, M, Variance.chain)


@dataclass(frozen=True)
class HomologyVerdict:
    vanishes: bool
    witness: Optional[Vector] = None


def cohomology_vanishes(C: ComplexWithCoefficients, p: int) -> HomologyVerdict:
    """Decide si H^p (o H_p para cadenas) es cero; si no lo es, da un elemento del núcleo fuera de la imagen."""
    if p < 0 or p > C.length:
        raise IndexOutOfRangeError(f"el grado {p} está fuera de 0..{C.length}")
    witness = subquotient_witness(C.incoming(p), C.outgoing(p), C.terms[p])
    LOGGER.debug("Homología (%s) en grado %d: %s", C.variance.value, p, "cero" if witness is None else "no nula")
    return HomologyVerdict(witness is None, witness)


def complex_to_dict(C) -> dict:
    """JSON de un complejo: rangos y matrices por filas con los polinomios en texto canónico."""
    base = C.base if isinstance(C, ComplexWithCoefficients) else C
    R = base.ring
    result = {
        "ranks": list(base.ranks),
        "differentials": [
            {"degree": p, "rows": [[R.format(a) for a in row] for row in d.rows()]}
            for p, d in enumerate(base.differentials, start=1)
        ],
    }
    if isinstance(C, ComplexWithCoefficients):
        result["variance"] = C.variance.value
        result["module"] = C.module.describe()
    return result


def witness_text(R: RingPresentation, witness: Optional[Vector]) -> Optional[List[str]]:
    if witness is None:
        return None
    return [R.format(a) for a in witness]

