"""Motor de Buchberger para submódulos de R^n (los ideales son el caso n = 1).

Un vector es una tupla de polinomios de un mismo anillo de sympy. Los términos de un vector son
pares (componente, monomio) y se comparan con un `TermOrder`.

La selección de pares sigue la estrategia del azúcar y los pares se filtran con los criterios de
Buchberger en la forma de Gebauer y Möller. El criterio del producto solo es válido para ideales,
así que solo se aplica en rango 1.
"""

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy.polys.monomials import monomial_div, monomial_lcm, monomial_mul
from sympy.polys.rings import PolyElement

from algebra.errors import BudgetExceededError
from algebra.exact import Monomial, MonomialOrder

LOGGER = logging.getLogger(__name__)

Vector = Tuple[PolyElement, ...]


@dataclass(frozen=True)
class GroebnerBudget:
    max_basis: int = 5000
    max_pairs: int = 200_000


_BUDGET: ContextVar[GroebnerBudget] = ContextVar("groebner_budget", default=GroebnerBudget())


def current_budget() -> GroebnerBudget:
    return _BUDGET.get()


@contextmanager
def budget_scope(budget: GroebnerBudget) -> Iterator[GroebnerBudget]:
    """Aplica un presupuesto a todos los cálculos de bases de Gröbner dentro del bloque."""
    token = _BUDGET.set(budget)
    try:
        yield budget
    finally:
        _BUDGET.reset(token)


@dataclass(frozen=True)
class TermOrder:
    """Orden de términos (componente, monomio).

    - `pot`: posición sobre término, la componente 0 es la de mayor prioridad.
    - `eliminate`: cantidad de variables iniciales a eliminar. Las comparaciones son primero por
      la componente 0, después por la parte de esas variables y por último posición sobre término
      en el resto; los elementos de la base cuyo término principal no está en la componente 0 ni
      tiene esas variables, no las tienen en ningún término.
    """

    order: MonomialOrder
    eliminate: int = 0

    def __call__(self, comp: int, monomial: Monomial):
        if not self.eliminate:
            return (-comp, self.order.key(monomial))
        k = self.eliminate
        head = self.order.key(monomial[:k] + (0,) * (len(monomial) - k))
        tail = self.order.key((0,) * k + monomial[k:])
        return (comp == 0, head, -comp, tail)


@dataclass
class _Row:
    vector: Vector
    comp: int
    monom: Monomial
    sugar: int


def vector_leading_term(vector: Sequence[PolyElement], key: TermOrder):
    best = None
    best_key = None
    for comp, poly in enumerate(vector):
        for monom, coeff in poly.items():
            k = key(comp, monom)
            if best_key is None or k > best_key:
                best, best_key = (comp, monom, coeff), k
    return best


def _degree(vector: Sequence[PolyElement]) -> int:
    return max((sum(m) for p in vector for m in p.keys()), default=0)


def _sub_multiple(p: List[PolyElement], g: Vector, monom: Monomial, coeff) -> List[PolyElement]:
    return [pi - gi.mul_term((monom, coeff)) if gi else pi for pi, gi in zip(p, g)]


def reduce_vector(vector: Sequence[PolyElement], rows: Sequence[_Row], key: TermOrder) -> Vector:
    """Resto de la división multivariable. Los divisores se prueban en el orden de la lista."""
    p = list(vector)
    if not p:
        return tuple()
    ring = p[0].ring
    remainder = [ring.zero] * len(p)
    while True:
        lt = vector_leading_term(p, key)
        if lt is None:
            return tuple(remainder)
        comp, monom, coeff = lt
        for row in rows:
            if row.comp != comp:
                continue
            q = monomial_div(monom, row.monom)
            if q is not None:
                p = _sub_multiple(p, row.vector, q, coeff)
                break
        else:
            term = ring.term_new(monom, coeff)
            remainder[comp] = remainder[comp] + term
            p[comp] = p[comp] - term


def _normalize(vector: Sequence[PolyElement], key: TermOrder, sugar: int) -> Optional[_Row]:
    lt = vector_leading_term(vector, key)
    if lt is None:
        return None
    comp, monom, coeff = lt
    domain = vector[comp].ring.domain
    inv = domain.quo(domain.one, coeff)
    monic = tuple(p.mul_ground(inv) if p else p for p in vector)
    return _Row(monic, comp, monom, sugar)


def groebner(vectors: Sequence[Sequence[PolyElement]], key: TermOrder) -> List[Vector]:
    """Base de Gröbner reducida del submódulo generado por `vectors`.

    Los elementos son mónicos y se devuelven ordenados por su término principal, de mayor a menor.
    """
    budget = current_budget()
    rows: List[_Row] = []
    basis: List[int] = []
    pairs = set()
    product_criterion = bool(vectors) and len(vectors[0]) == 1

    def coprime(a: Monomial, b: Monomial) -> bool:
        return product_criterion and monomial_mul(a, b) == monomial_lcm(a, b)

    def update(ih: int) -> None:
        nonlocal basis, pairs
        h = rows[ih]
        mh = h.monom
        candidates = [ig for ig in basis if rows[ig].comp == h.comp]
        kept = []
        while candidates:
            ig = candidates.pop()
            lcm_hg = monomial_lcm(mh, rows[ig].monom)

            def lcm_divides(ip: int) -> bool:
                return monomial_div(lcm_hg, monomial_lcm(mh, rows[ip].monom)) is not None

            if coprime(mh, rows[ig].monom) or (
                not any(lcm_divides(ip) for ip in candidates)
                and not any(lcm_divides(ip) for _, ip in kept)
            ):
                kept.append((ih, ig))
        new_pairs = {pair for pair in kept if not coprime(mh, rows[pair[1]].monom)}

        old_pairs = set()
        for i, j in pairs:
            if rows[i].comp != h.comp:
                old_pairs.add((i, j))
                continue
            lcm_ij = monomial_lcm(rows[i].monom, rows[j].monom)
            if (
                monomial_div(lcm_ij, mh) is None
                or monomial_lcm(rows[i].monom, mh) == lcm_ij
                or monomial_lcm(rows[j].monom, mh) == lcm_ij
            ):
                old_pairs.add((i, j))
        pairs = old_pairs | new_pairs

        basis = [
            ig
            for ig in basis
            if rows[ig].comp != h.comp or monomial_div(rows[ig].monom, mh) is None
        ]
        basis.append(ih)

        if len(basis) > budget.max_basis or len(pairs) > budget.max_pairs:
            raise BudgetExceededError(
                "se superó el presupuesto de la base de Gröbner",
                {"basis": len(basis), "pairs": len(pairs), "rows": len(rows)},
            )

    def current_rows() -> List[_Row]:
        return [rows[i] for i in basis]

    # Los generadores se incorporan de menor a mayor término principal
    initial = []
    for v in vectors:
        lt = vector_leading_term(v, key)
        if lt is not None:
            initial.append((key(lt[0], lt[1]), tuple(v)))
    initial.sort(key=lambda t: t[0])

    for _, v in initial:
        r = reduce_vector(v, current_rows(), key)
        row = _normalize(r, key, _degree(v))
        if row is not None:
            rows.append(row)
            update(len(rows) - 1)

    processed = 0
    while pairs:

        def pair_key(pair):
            i, j = pair
            lcm = monomial_lcm(rows[i].monom, rows[j].monom)
            return (_pair_sugar(rows[i], rows[j], lcm), key(rows[i].comp, lcm), pair)

        pair = min(pairs, key=pair_key)
        pairs.discard(pair)
        i, j = pair
        fi, fj = rows[i], rows[j]
        lcm = monomial_lcm(fi.monom, fj.monom)
        ui = monomial_div(lcm, fi.monom)
        uj = monomial_div(lcm, fj.monom)
        domain = fi.vector[fi.comp].ring.domain
        s = [
            a.mul_term((ui, domain.one)) - b.mul_term((uj, domain.one))
            for a, b in zip(fi.vector, fj.vector)
        ]
        processed += 1
        r = reduce_vector(s, current_rows(), key)
        row = _normalize(r, key, _pair_sugar(fi, fj, lcm))
        if row is not None:
            rows.append(row)
            update(len(rows) - 1)

    reduced = _interreduce(current_rows(), key)
    LOGGER.debug(
        "Base de Gröbner: %d elementos, %d pares procesados, %d filas",
        len(reduced),
        processed,
        len(rows),
    )
    return reduced


def _pair_sugar(fi: _Row, fj: _Row, lcm: Monomial) -> int:
    d = sum(lcm)
    return max(fi.sugar + d - sum(fi.monom), fj.sugar + d - sum(fj.monom))


def _interreduce(rows: List[_Row], key: TermOrder) -> List[Vector]:
    rows = sorted(rows, key=lambda r: key(r.comp, r.monom))
    result = []
    for i, row in enumerate(rows):
        others = rows[:i] + rows[i + 1 :]
        lead = row.vector[row.comp].ring.term_new(row.monom, row.vector[row.comp][row.monom])
        tail = list(row.vector)
        tail[row.comp] = tail[row.comp] - lead
        reduced_tail = reduce_vector(tail, others, key)
        v = list(reduced_tail)
        v[row.comp] = v[row.comp] + lead
        result.append((key(row.comp, row.monom), tuple(v)))
    result.sort(key=lambda t: t[0], reverse=True)
    return [v for _, v in result]


def basis_rows(basis: Sequence[Vector], key: TermOrder) -> List[_Row]:
    """Filas listas para `reduce_vector` a partir de una base ya calculada."""
    rows = []
    for v in basis:
        lt = vector_leading_term(v, key)
        if lt is not None:
            rows.append(_Row(tuple(v), lt[0], lt[1], _degree(v)))
    return rows
