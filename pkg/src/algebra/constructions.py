"""Construcciones de anillos: extensión polinomial R[x], extensión trivial R(+)M y amalgamación A⋈^f J.

Cada construcción devuelve el anillo presentado, la inclusión desde la base y la regla con la que
se transportan los ideales maximales de la base.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement, PolyRing

from algebra.buchberger import TermOrder, basis_rows, groebner, reduce_vector, vector_leading_term
from algebra.errors import IncompatibleCoefficientsError, InvalidInputError, PreconditionViolationError, RingMismatchError
from algebra.exact import MonomialOrder, polynomial_ring
from algebra.fpmodules import ModulePresentation
from algebra.groebner import IdealSpec, RingPresentation, ideal, ideal_power

LOGGER = logging.getLogger(__name__)

# Potencia máxima que se prueba al comprobar que J es nilpotente
NILPOTENCY_CAP = 16


def fresh_name(name: str, taken) -> str:
    """`name` si está libre; si no, `name_1`, `name_2`, ..."""
    if name not in taken:
        return name
    k = 1
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def transfer(p: PolyElement, target: PolyRing, positions: Sequence[Optional[int]]) -> PolyElement:
    """Copia p en otro anillo con el mismo cuerpo; la variable i pasa a la posición positions[i]."""
    if p.ring.domain != target.domain:
        raise IncompatibleCoefficientsError(f"coeficientes incompatibles: {p.ring.domain} y {target.domain}")
    terms = {}
    for monom, coeff in p.items():
        new = [0] * target.ngens
        for i, e in enumerate(monom):
            if e:
                if positions[i] is None:
                    raise InvalidInputError("el polinomio usa una variable que no existe en el anillo destino")
                new[positions[i]] += e
        terms[tuple(new)] = coeff
    return target.from_dict(terms) if terms else target.zero


class RingHom:
    """Homomorfismo de k-álgebras dado por la imagen de cada variable del origen."""

    def __init__(self, source: RingPresentation, target: RingPresentation, images: Sequence):
        if source.field != target.field:
            raise IncompatibleCoefficientsError("el origen y el destino tienen cuerpos distintos")
        if len(images) != source.nvars:
            raise InvalidInputError(
                f"se esperaban {source.nvars} imágenes y hay {len(images)}"
            )
        self.source = source
        self.target = target
        self.images: Tuple[PolyElement, ...] = tuple(target.reduce(target.coerce(p)) for p in images)
        for r in source.relations:
            if self.apply(r):
                raise InvalidInputError(
                    f"la relación {source.format(r)} no va a cero en el destino"
                )

    def apply(self, p: PolyElement) -> PolyElement:
        p = self.source.coerce(p)
        T = self.target.poly_ring
        result = T.zero
        for monom, coeff in p.items():
            term = T.ground_new(coeff)
            for image, e in zip(self.images, monom):
                if e:
                    term = term * image**e
            result += term
        return self.target.reduce(result)

    def describe(self) -> Dict[str, str]:
        return {v: self.target.format(p) for v, p in zip(self.source.variables, self.images)}


class ConstructionKind(str, Enum):
    polyext = "polyext"
    trivext = "trivext"
    amalg = "amalg"


@dataclass
class ConstructionResult:
    kind: ConstructionKind
    base: RingPresentation
    ring: RingPresentation
    embedding: RingHom
    adjoined: Tuple[PolyElement, ...]
    module: Optional[ModulePresentation] = None
    nilpotency: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    def transport_table(self) -> dict:
        return {
            "kind": self.kind.value,
            "variables": self.embedding.describe(),
            "adjoined": [self.ring.format(z) for z in self.adjoined],
        }


def polynomial_extension(R: RingPresentation, var: str, name: Optional[str] = None) -> ConstructionResult:
    """R[var] con las mismas relaciones; m se transporta a m + (var)."""
    if var in R.variables:
        raise InvalidInputError(f"la variable {var} ya existe en el anillo")
    variables = R.variables + (var,)
    target = polynomial_ring(R.field, variables)
    positions = list(range(R.nvars))
    relations = [transfer(r, target, positions) for r in R.relations]
    S = RingPresentation(R.field, variables, relations, R.order.extended(1), name)
    embedding = RingHom(R, S, S.gens[: R.nvars])
    return ConstructionResult(ConstructionKind.polyext, R, S, embedding, (S.gens[-1],))


def _fresh_generators(count: int, taken) -> List[str]:
    if count == 1:
        return [fresh_name("z", taken)]
    names = []
    for i in range(1, count + 1):
        n = fresh_name(f"z{i}", set(taken) | set(names))
        names.append(n)
    return names


def trivial_extension(R: RingPresentation, M: ModulePresentation, name: Optional[str] = None) -> ConstructionResult:
    """R(+)M = R[z_1..z_s] / (K, z_i z_j, Σ_i a_ik z_i)."""
    if M.ring is not R:
        raise RingMismatchError("el módulo no está definido sobre el anillo de la extensión")
    s = M.rank
    znames = _fresh_generators(s, R.variables) if s else []
    variables = R.variables + tuple(znames)
    target = polynomial_ring(R.field, variables)
    base_positions = list(range(R.nvars))
    zs = target.gens[R.nvars :]
    relations = [transfer(r, target, base_positions) for r in R.relations]
    for i in range(s):
        for j in range(i, s):
            relations.append(zs[i] * zs[j])
    for col in M.relations:
        rel = target.zero
        for a, z in zip(col, zs):
            rel += transfer(a, target, base_positions) * z
        relations.append(rel)
    S = RingPresentation(R.field, variables, relations, R.order.extended(s), name)
    embedding = RingHom(R, S, S.gens[: R.nvars])
    return ConstructionResult(
        ConstructionKind.trivext, R, S, embedding, tuple(S.gens[R.nvars :]), module=M, nilpotency=2 if s else 1
    )


def nilpotency_check(J: IdealSpec, cap: int) -> Optional[int]:
    """Menor t ≤ cap con J^t = 0, o None si no se alcanza."""
    if cap < 1:
        raise InvalidInputError("el límite de nilpotencia tiene que ser al menos 1")
    for t in range(1, cap + 1):
        if not ideal_power(J, t).generators:
            return t
    return None


class _EliminationSpace:
    """B como álgebra sobre A mediante f, dentro de S = k[variables de B, copias de las variables de A].

    El orden elimina las variables de B: en S^(1+m) la componente 0 domina, después los términos
    con variables de B y por último el resto. Los vectores sin componente 0 ni variables de B son
    combinaciones con coeficientes en A.
    """

    def __init__(self, f: RingHom):
        A, B = f.source, f.target
        taken = set(B.variables)
        a_names = []
        for v in A.variables:
            n = fresh_name(f"{v}_A", taken)
            taken.add(n)
            a_names.append(n)
        self.A, self.B = A, B
        self.nB = B.nvars
        self.ring = polynomial_ring(A.field, B.variables + tuple(a_names))
        self.key = TermOrder(MonomialOrder.default(B.nvars + A.nvars), eliminate=B.nvars)
        self.b_positions = list(range(B.nvars))
        self.a_positions = [B.nvars + i for i in range(A.nvars)]
        a_vars = self.ring.gens[B.nvars :]
        self.ideal = (
            [transfer(r, self.ring, self.b_positions) for r in B.relations_basis()]
            + [transfer(r, self.ring, self.a_positions) for r in A.relations]
            + [a - transfer(img, self.ring, self.b_positions) for a, img in zip(a_vars, f.images)]
        )

    def from_B(self, p: PolyElement) -> PolyElement:
        return transfer(p, self.ring, self.b_positions)

    def to_A(self, p: PolyElement) -> PolyElement:
        positions = [None] * self.nB + list(range(self.A.nvars))
        return self.A.reduce(transfer(p, self.A.poly_ring, positions))

    def is_bottom(self, v) -> bool:
        lt = vector_leading_term(v, self.key)
        return lt is None or (lt[0] > 0 and not any(lt[1][: self.nB]))

    def span(self, generators: Sequence[PolyElement]) -> "_ASpan":
        return _ASpan(self, list(generators))


class _ASpan:
    """El A-módulo generado por `generators` ⊆ B."""

    def __init__(self, space: _EliminationSpace, generators: List[PolyElement]):
        self.space = space
        self.generators = generators
        m = len(generators)
        S = space.ring
        vectors = []
        for i, u in enumerate(generators):
            v = [S.zero] * (m + 1)
            v[0] = space.from_B(u)
            v[i + 1] = -S.one
            vectors.append(tuple(v))
        for g in space.ideal:
            vectors.append((g,) + (S.zero,) * m)
        self.basis = groebner(vectors, space.key)
        self.rows = basis_rows(self.basis, space.key)

    def express(self, b: PolyElement) -> Optional[List[PolyElement]]:
        """Coeficientes α en A con b = Σ α_i u_i, o None si b no está en el A-span."""
        S = self.space.ring
        v = (self.space.from_B(b),) + (S.zero,) * len(self.generators)
        r = reduce_vector(v, self.rows, self.space.key)
        if not self.space.is_bottom(r):
            return None
        return [self.space.to_A(c) for c in r[1:]]

    def syzygies(self) -> List[Tuple[PolyElement, ...]]:
        """Generadores de las relaciones Σ α_i u_i = 0 con α en A."""
        found = []
        for v in self.basis:
            if self.space.is_bottom(v):
                col = tuple(self.space.to_A(c) for c in v[1:])
                if any(col) and col not in found:
                    found.append(col)
        return found


def amalgamation(
    A: RingPresentation,
    B: RingPresentation,
    f: RingHom,
    J: IdealSpec,
    module_generators: Sequence,
    name: Optional[str] = None,
) -> ConstructionResult:
    """A⋈^f J como la A-subálgebra A ⊕ J de A × B, con J ⊆ Nil(B) y B finito sobre A."""
    if f.source is not A or f.target is not B or J.ring is not B:
        raise RingMismatchError("el homomorfismo y el ideal no corresponden con A y B")
    nilpotency = nilpotency_check(J, NILPOTENCY_CAP)
    if nilpotency is None:
        raise PreconditionViolationError(
            f"el ideal {J.describe()} no es nilpotente (comprobado hasta la potencia {NILPOTENCY_CAP})"
        )
    space = _EliminationSpace(f)
    us = [B.reduce(B.coerce(u)) for u in module_generators]
    base_span = space.span(us)
    checks = [B.poly_ring.one] + list(B.gens) + [a * b for i, a in enumerate(us) for b in us[i:]]
    for b in checks:
        if base_span.express(B.reduce(b)) is None:
            raise PreconditionViolationError(
                f"B no es finito sobre A con los generadores dados: {B.format(B.reduce(b))} no está en su A-span"
            )

    candidates = []
    for u in us:
        for j in J.generators:
            z = B.reduce(u * j)
            if z and z not in candidates:
                candidates.append(z)
    zs: List[PolyElement] = []
    for z in candidates:
        if not zs or space.span(zs).express(z) is None:
            zs.append(z)
    LOGGER.debug("Generadores de J como A-módulo: %s", [B.format(z) for z in zs])

    s = len(zs)
    znames = _fresh_generators(s, A.variables) if s else []
    variables = A.variables + tuple(znames)
    target = polynomial_ring(A.field, variables)
    base_positions = list(range(A.nvars))
    zvars = target.gens[A.nvars :]

    def in_target(alpha: Sequence[PolyElement]) -> PolyElement:
        return sum((transfer(a, target, base_positions) * z for a, z in zip(alpha, zvars)), target.zero)

    relations = [transfer(r, target, base_positions) for r in A.relations]
    module_relations = []
    if s:
        z_span = space.span(zs)
        module_relations = z_span.syzygies()
        relations += [in_target(col) for col in module_relations]
        for i in range(s):
            for j in range(i, s):
                alpha = z_span.express(B.reduce(zs[i] * zs[j]))
                if alpha is None:
                    raise PreconditionViolationError("el producto de dos generadores de J no está en J")
                relations.append(zvars[i] * zvars[j] - in_target(alpha))

    S = RingPresentation(A.field, variables, relations, A.order.extended(s), name)
    embedding = RingHom(A, S, S.gens[: A.nvars])
    J_module = ModulePresentation(A, s, module_relations)
    result = ConstructionResult(
        ConstructionKind.amalg, A, S, embedding, tuple(S.gens[A.nvars :]), module=J_module, nilpotency=nilpotency
    )
    result.notes.append("generadores: " + ", ".join(f"{n} -> {B.format(z)}" for n, z in zip(znames, zs)))
    return result


def transport_ideal(C: ConstructionResult, m: IdealSpec) -> IdealSpec:
    """Imagen de m en el anillo construido más los generadores añadidos."""
    if m.ring is not C.base:
        raise RingMismatchError("el ideal no pertenece a la base de la construcción")
    images = [C.embedding.apply(g) for g in m.generators]
    return ideal(C.ring, images + list(C.adjoined))
