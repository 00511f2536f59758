"""Presentaciones de anillos R = k[x1..xn]/K, ideales y bases de Gröbner.

La aritmética del cociente se hace en el anillo ambiente: a cada ideal se le añaden las relaciones
de K antes de calcular su base, y no hay un tipo aparte para los elementos del cociente.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from sympy import Poly, Symbol
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

from algebra.buchberger import TermOrder, basis_rows, groebner, reduce_vector
from algebra.errors import BudgetExceededError, InvalidInputError, RingMismatchError
from algebra.exact import (
    CoefficientField,
    Monomial,
    MonomialOrder,
    format_polynomial,
    leading_term,
    make_monic,
    parse_polynomial,
    presentation_ring,
    solve_linear_dependency,
)

LOGGER = logging.getLogger(__name__)

# Tamaño máximo de un cociente de dimensión cero que se enumera por monomios estándar
MAX_QUOTIENT_DIMENSION = 512


class RingPresentation:
    """Un anillo k[x1..xn]/K dado por sus relaciones.

    La base de Gröbner de K se calcula la primera vez que se necesita y después no cambia;
    si dos hilos la calculan a la vez se queda la primera que se escribe.
    """

    def __init__(
        self,
        coefficient_field: CoefficientField,
        variables: Sequence[str],
        relations: Sequence[PolyElement] = (),
        order: Optional[MonomialOrder] = None,
        name: Optional[str] = None,
    ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InvalidInputError(f"variables repetidas: {', '.join(variables)}")
        self.field = coefficient_field
        self.variables = variables
        self.order = order or MonomialOrder.default(len(variables))
        if len(self.order.priority) != len(variables):
            raise InvalidInputError("el orden monomial no corresponde con las variables")
        self.poly_ring: PolyRing = presentation_ring(coefficient_field, variables)
        self.name = name
        self._basis: Optional[List[PolyElement]] = None

        normalized = []
        for r in relations:
            r = self.adopt(r)
            if r:
                r = make_monic(r, self.order)
                if r not in normalized:
                    normalized.append(r)
        self.relations: Tuple[PolyElement, ...] = tuple(normalized)

        if self.relations_basis() == [self.poly_ring.one]:
            raise InvalidInputError(
                "la presentación no es propia: 1 pertenece al ideal de relaciones"
            )

    def __repr__(self) -> str:
        return f"RingPresentation({self.describe()})"

    def describe(self) -> str:
        rels = ", ".join(self.format(r) for r in self.relations)
        return f"{self.field}[{', '.join(self.variables)}] / ({rels})"

    @property
    def gens(self) -> Tuple[PolyElement, ...]:
        return tuple(self.poly_ring.gens)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def term_order(self) -> TermOrder:
        return TermOrder(self.order)

    def coerce(self, p) -> PolyElement:
        if isinstance(p, str):
            return parse_polynomial(p, self.poly_ring)
        if isinstance(p, PolyElement):
            if p.ring is not self.poly_ring:
                raise RingMismatchError(
                    f"el polinomio pertenece a otro anillo ({', '.join(map(str, p.ring.symbols))})"
                )
            return p
        return self.poly_ring.ground_new(self.poly_ring.domain.convert(p))

    def adopt(self, p) -> PolyElement:
        """Copia en este anillo un polinomio de otro anillo con las mismas variables y el mismo cuerpo."""
        if not isinstance(p, PolyElement) or p.ring is self.poly_ring:
            return self.coerce(p)
        if p.ring != self.poly_ring:
            raise RingMismatchError(
                f"el polinomio pertenece a otro anillo ({', '.join(map(str, p.ring.symbols))})"
            )
        return self.poly_ring.from_dict(dict(p)) if p else self.poly_ring.zero

    def poly(self, text: str) -> PolyElement:
        return parse_polynomial(text, self.poly_ring)

    def format(self, p: PolyElement) -> str:
        return format_polynomial(p, self.order)

    def relations_basis(self) -> List[PolyElement]:
        if self._basis is None:
            basis = [v[0] for v in groebner([(r,) for r in self.relations], self.term_order)]
            if self._basis is None:
                self._basis = basis
        return self._basis

    def reduce(self, p: PolyElement) -> PolyElement:
        """Forma normal módulo las relaciones del anillo."""
        rows = basis_rows([(g,) for g in self.relations_basis()], self.term_order)
        return reduce_vector((self.coerce(p),), rows, self.term_order)[0]


@dataclass(frozen=True)
class IdealSpec:
    ring: RingPresentation
    generators: Tuple[PolyElement, ...]
    note: Optional[str] = None

    def describe(self) -> str:
        return "(" + ", ".join(self.ring.format(g) for g in self.generators) + ")"


def ideal(ring: RingPresentation, generators: Sequence, note: Optional[str] = None) -> IdealSpec:
    """Ideal con los generadores en forma normal módulo las relaciones, sin ceros ni repetidos."""
    gens = []
    for g in generators:
        g = ring.reduce(ring.coerce(g))
        if g and g not in gens:
            gens.append(g)
    return IdealSpec(ring, tuple(gens), note)


@dataclass(frozen=True)
class GroebnerBasis:
    ring: RingPresentation
    elements: Tuple[PolyElement, ...]
    reduced: bool = True

    def describe(self) -> List[str]:
        return [self.ring.format(g) for g in self.elements]


def _check_same_ring(a: RingPresentation, b: RingPresentation) -> None:
    if a is not b:
        raise RingMismatchError("los objetos pertenecen a anillos distintos")


def groebner_basis(I: IdealSpec) -> GroebnerBasis:
    R = I.ring
    vectors = [(g,) for g in I.generators] + [(r,) for r in R.relations_basis()]
    elements = tuple(v[0] for v in groebner(vectors, R.term_order))
    return GroebnerBasis(R, elements, True)


def normal_form(p: PolyElement, G: GroebnerBasis) -> PolyElement:
    p = G.ring.coerce(p)
    rows = basis_rows([(g,) for g in G.elements], G.ring.term_order)
    return reduce_vector((p,), rows, G.ring.term_order)[0]


def ideal_membership(p: PolyElement, I: IdealSpec) -> bool:
    return not normal_form(p, groebner_basis(I))


def is_unit_ideal(I: IdealSpec) -> bool:
    return groebner_basis(I).elements == (I.ring.poly_ring.one,)


def ideal_contains(I: IdealSpec, J: IdealSpec) -> bool:
    """J ⊆ I."""
    _check_same_ring(I.ring, J.ring)
    G = groebner_basis(I)
    return all(not normal_form(g, G) for g in J.generators)


def ideal_product(I: IdealSpec, J: IdealSpec) -> IdealSpec:
    _check_same_ring(I.ring, J.ring)
    return ideal(I.ring, [a * b for a in I.generators for b in J.generators])


def ideal_power(I: IdealSpec, t: int) -> IdealSpec:
    if t < 0:
        raise InvalidInputError("la potencia de un ideal tiene que ser un natural")
    if t == 0:
        return ideal(I.ring, [1], note="potencia cero: ideal unidad por convenio")
    result = I
    for _ in range(t - 1):
        result = ideal_product(result, I)
    return result


def quotient_ring(I: IdealSpec, name: Optional[str] = None) -> RingPresentation:
    R = I.ring
    return RingPresentation(
        R.field, R.variables, list(R.relations) + list(I.generators), R.order, name
    )


def _independent(subset: Tuple[int, ...], leading: List[Monomial]) -> bool:
    s = set(subset)
    return not any(all(i in s for i, e in enumerate(m) if e) for m in leading)


def krull_dimension(R: RingPresentation) -> int:
    """Tamaño máximo de un conjunto independiente de variables módulo el ideal inicial de K."""
    leading = [leading_term(g, R.order)[0] for g in R.relations_basis()]
    for size in range(R.nvars, -1, -1):
        for subset in combinations(range(R.nvars), size):
            if _independent(subset, leading):
                return size
    return 0


def standard_monomials(G: GroebnerBasis, limit: int = MAX_QUOTIENT_DIMENSION) -> Optional[List[Monomial]]:
    """Base monomial del cociente por G si es de dimensión cero; None si no lo es."""
    R = G.ring
    leading = [leading_term(g, R.order)[0] for g in G.elements]
    n = R.nvars
    for i in range(n):
        if not any(m[i] > 0 and sum(m) == m[i] for m in leading):
            return None

    def is_standard(m: Monomial) -> bool:
        return not any(all(a >= b for a, b in zip(m, lm)) for lm in leading)

    zero = (0,) * n
    if not is_standard(zero):
        return []
    found = [zero]
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                m2 = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if m2 not in seen and is_standard(m2):
                    seen.add(m2)
                    found.append(m2)
                    nxt.append(m2)
                    if len(found) > limit:
                        raise BudgetExceededError(
                            "el cociente tiene dimensión mayor que el límite permitido",
                            {"quotient_dimension": len(found), "limit": limit},
                        )
        frontier = nxt
    found.sort(key=R.order.key)
    return found


class MaximalityVerdict(str, Enum):
    verified_maximal = "verified-maximal"
    unconfirmed = "proper-zero-dimensional-unconfirmed"
    not_maximal = "not-maximal"


def sample_coefficient(rng: random.Random, domain):
    """Uniforme en {-2..2} sobre QQ y en todo el cuerpo sobre Fp."""
    if domain == QQ:
        return domain.convert(rng.randint(-2, 2))
    return domain.convert(rng.randrange(domain.characteristic()))


def _is_irreducible(coeffs: List[object], domain) -> bool:
    """Irreducibilidad del polinomio de coeficientes coeffs (de mayor a menor grado)."""
    t = Symbol("t")
    if domain == QQ:
        return Poly([domain.to_sympy(c) for c in coeffs], t, domain="QQ").is_irreducible
    p = domain.characteristic()
    return Poly([int(domain.to_int(c)) % p for c in coeffs], t, modulus=p).is_irreducible


def minimal_polynomial(a: PolyElement, G: GroebnerBasis, basis: List[Monomial]) -> List[object]:
    """Coeficientes (de menor a mayor grado, mónico) del polinomio mínimo de a en k[x]/⟨G⟩."""
    R = G.ring
    domain = R.poly_ring.domain
    index = {m: i for i, m in enumerate(basis)}
    vectors = []
    power = R.poly_ring.one
    for _ in range(len(basis) + 1):
        nf = normal_form(power, G)
        coords = [domain.zero] * len(basis)
        for m, c in nf.items():
            coords[index[m]] = c
        vectors.append(coords)
        power = normal_form(power * a, G)
    dependency = solve_linear_dependency(vectors, domain)
    return dependency


def verify_maximal(m: IdealSpec, trials: int, seed: int) -> MaximalityVerdict:
    """Veredicto en tres valores sobre la maximalidad de m.

    En un cuerpo el polinomio mínimo de cualquier elemento es irreducible, así que un polinomio
    mínimo reducible prueba que m no es maximal; uno irreducible de grado dim_k(R/m) prueba que
    R/m es un cuerpo.
    """
    G = groebner_basis(m)
    R = m.ring
    if G.elements == (R.poly_ring.one,):
        return MaximalityVerdict.not_maximal
    basis = standard_monomials(G)
    if basis is None:
        return MaximalityVerdict.not_maximal
    d = len(basis)
    if d == 1:
        return MaximalityVerdict.verified_maximal

    domain = R.poly_ring.domain
    rng = random.Random(seed)
    for _ in range(trials):
        a = R.poly_ring.zero
        for mono in basis:
            a += R.poly_ring.term_new(mono, sample_coefficient(rng, domain))
        if not a:
            continue
        coeffs = minimal_polynomial(a, G, basis)
        irreducible = _is_irreducible(list(reversed(coeffs)), domain)
        if not irreducible:
            return MaximalityVerdict.not_maximal
        if len(coeffs) - 1 == d:
            return MaximalityVerdict.verified_maximal
    LOGGER.debug("No se pudo confirmar la maximalidad de %s en %d intentos", m.describe(), trials)
    return MaximalityVerdict.unconfirmed
