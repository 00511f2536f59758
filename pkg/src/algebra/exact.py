"""Aritmética exacta: cuerpos de coeficientes, órdenes monomiales y polinomios dispersos.

Los polinomios son elementos de los anillos de polinomios de sympy (`PolyElement`), que guardan
los términos de forma dispersa (monomio -> coeficiente) sobre los dominios exactos QQ y GF(p).
El orden monomial no se delega en sympy: todos los módulos del núcleo usan `MonomialOrder.key`.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import count
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from algebra.errors import (
    DimensionMismatchError,
    IncompatibleCoefficientsError,
    InvalidInputError,
    ScriptSyntaxError,
)

Monomial = Tuple[int, ...]

# Los primos de los cuerpos finitos tienen que caber en una palabra de máquina
MAX_PRIME = 2**63 - 1


class FieldKind(str, Enum):
    rationals = "rationals"
    prime_field = "prime-field"


@dataclass(frozen=True)
class CoefficientField:
    kind: FieldKind
    characteristic: int = 0

    @staticmethod
    def rationals() -> "CoefficientField":
        return CoefficientField(FieldKind.rationals, 0)

    @staticmethod
    def prime_field(p: int) -> "CoefficientField":
        if p > MAX_PRIME or not isprime(p):
            raise InvalidInputError(
                f"la característica {p} no es un primo que quepa en una palabra de máquina"
            )
        return CoefficientField(FieldKind.prime_field, p)

    @property
    def domain(self):
        return field_domain(self)

    def __str__(self) -> str:
        if self.kind == FieldKind.rationals:
            return "QQ"
        return f"Fp({self.characteristic})"


@lru_cache(maxsize=None)
def field_domain(coefficient_field: CoefficientField):
    """Dominio de sympy que implementa el cuerpo. GF(p) se representa con restos en 0..p-1."""
    if coefficient_field.kind == FieldKind.rationals:
        return QQ
    return GF(coefficient_field.characteristic, symmetric=False)


class OrderKind(str, Enum):
    lex = "lex"
    grevlex = "grevlex"


class Ordering(str, Enum):
    less = "less"
    equal = "equal"
    greater = "greater"


@dataclass(frozen=True)
class MonomialOrder:
    """Orden monomial sobre vectores de exponentes.

    `priority` es una permutación de las variables: priority[0] es la variable de mayor peso.
    """

    kind: OrderKind = OrderKind.grevlex
    priority: Tuple[int, ...] = field(default_factory=tuple)

    @staticmethod
    def default(nvars: int, kind: OrderKind = OrderKind.grevlex) -> "MonomialOrder":
        return MonomialOrder(kind, tuple(range(nvars)))

    def extended(self, extra: int) -> "MonomialOrder":
        """El mismo orden con `extra` variables nuevas de menor prioridad."""
        n = len(self.priority)
        return MonomialOrder(self.kind, self.priority + tuple(range(n, n + extra)))

    def key(self, monomial: Monomial):
        permuted = tuple(monomial[i] for i in self.priority)
        if self.kind == OrderKind.lex:
            return lex(permuted)
        return grevlex(permuted)


def compare_monomials(order: MonomialOrder, a: Monomial, b: Monomial) -> Ordering:
    if len(a) != len(b) or len(a) != len(order.priority):
        raise DimensionMismatchError(
            f"los monomios {a} y {b} no tienen la misma cantidad de variables que el orden"
        )
    ka, kb = order.key(a), order.key(b)
    if ka < kb:
        return Ordering.less
    if ka > kb:
        return Ordering.greater
    return Ordering.equal


@lru_cache(maxsize=None)
def polynomial_ring(coefficient_field: CoefficientField, variables: Tuple[str, ...]) -> PolyRing:
    return PolyRing(list(variables), coefficient_field.domain, "grevlex")


_RING_SERIAL = count()


def presentation_ring(coefficient_field: CoefficientField, variables: Tuple[str, ...]) -> PolyRing:
    """Un PolyRing que no comparte ninguna otra presentación.

    sympy identifica los anillos por sus variables y su dominio (y en algunas versiones los guarda
    en una caché por nombre de clase), así que cada presentación usa su propia subclase.
    """
    cls = type(f"PresentationRing{next(_RING_SERIAL)}", (PolyRing,), {})
    return cls(list(variables), coefficient_field.domain, "grevlex")


def _check_compatible(p: PolyElement, q: PolyElement) -> None:
    if p.ring.domain != q.ring.domain:
        raise IncompatibleCoefficientsError(
            f"coeficientes incompatibles: {p.ring.domain} y {q.ring.domain}"
        )
    if p.ring.ngens != q.ring.ngens:
        raise DimensionMismatchError(
            f"cantidad de variables distinta: {p.ring.ngens} y {q.ring.ngens}"
        )


def poly_add(p: PolyElement, q: PolyElement) -> PolyElement:
    _check_compatible(p, q)
    return p + q


def poly_mul(p: PolyElement, q: PolyElement) -> PolyElement:
    _check_compatible(p, q)
    return p * q


def sorted_terms(p: PolyElement, order: MonomialOrder) -> List[Tuple[Monomial, object]]:
    """Términos del polinomio en orden descendente."""
    return sorted(p.items(), key=lambda t: order.key(t[0]), reverse=True)


def leading_term(p: PolyElement, order: MonomialOrder) -> Optional[Tuple[Monomial, object]]:
    if not p:
        return None
    return max(p.items(), key=lambda t: order.key(t[0]))


def make_monic(p: PolyElement, order: MonomialOrder) -> PolyElement:
    lt = leading_term(p, order)
    if lt is None:
        return p
    domain = p.ring.domain
    return p.mul_ground(domain.quo(domain.one, lt[1]))


def total_degree(p: PolyElement) -> int:
    return max((sum(m) for m in p.keys()), default=0)


# Texto canónico de coeficientes y polinomios


def format_coefficient(c, domain) -> str:
    if domain == QQ:
        n, d = int(QQ.numer(c)), int(QQ.denom(c))
        return str(n) if d == 1 else f"{n}/{d}"
    return str(int(domain.to_int(c)) % domain.characteristic())


def parse_coefficient(text: str, domain):
    m = re.fullmatch(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*", text)
    if m is None:
        raise InvalidInputError(f"coeficiente no válido: {text!r}")
    n = int(m.group(1))
    d = int(m.group(2)) if m.group(2) else 1
    if d == 0:
        raise InvalidInputError(f"denominador cero en {text!r}")
    return domain.quo(domain.convert(n), domain.convert(d))


def _format_monomial(monomial: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, monomial):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_polynomial(p: PolyElement, order: MonomialOrder) -> str:
    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    domain = p.ring.domain
    pieces = []
    for monomial, c in sorted_terms(p, order):
        coeff = format_coefficient(c, domain)
        mono = _format_monomial(monomial, names)
        if not mono:
            term = coeff
        elif coeff == "1":
            term = mono
        elif coeff == "-1":
            term = f"-{mono}"
        else:
            term = f"{coeff}*{mono}"
        if not pieces:
            pieces.append(term)
        elif term.startswith("-"):
            pieces.append(f" - {term[1:]}")
        else:
            pieces.append(f" + {term}")
    return "".join(pieces)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            if m.group(3) not in "+-*/^()":
                raise ScriptSyntaxError(f"carácter inesperado {m.group(3)!r}", 1, m.start(3) + 1)
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _PolynomialParser:
    """Descenso recursivo sobre la gramática:

    expr := term (('+'|'-') term)*
    term := unary (('*'|'/')? unary)*
    unary := ('-'|'+') unary | power
    power := atom ('^' INT)?
    atom := INT | NAME | '(' expr ')'
    """

    def __init__(self, text: str, ring: PolyRing):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.names: Dict[str, PolyElement] = {
            str(s): g for s, g in zip(ring.symbols, ring.gens)
        }

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise ScriptSyntaxError(message, 1, tok[2] + 1)

    def parse(self) -> PolyElement:
        if self.peek()[0] == "end":
            self.fail("se esperaba un polinomio")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"símbolo inesperado {self.peek()[1]!r}")
        return p

    def expr(self) -> PolyElement:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def starts_atom(self, tok) -> bool:
        return tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "(")

    def term(self) -> PolyElement:
        p = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.unary()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                q = self.unary()
                if not q or not q.is_ground:
                    self.fail("solo se puede dividir entre constantes no nulas", tok)
                domain = self.ring.domain
                c = q[self.ring.zero_monom]
                p = p.mul_ground(domain.quo(domain.one, c))
            elif self.starts_atom(tok):
                p = p * self.unary()
            else:
                return p

    def unary(self) -> PolyElement:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> PolyElement:
        p = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("el exponente tiene que ser un entero no negativo", tok)
            p = p ** int(tok[1])
        return p

    def atom(self) -> PolyElement:
        tok = self.take()
        if tok[0] == "int":
            return self.ring.ground_new(self.ring.domain.convert(int(tok[1])))
        if tok[0] == "name":
            if tok[1] not in self.names:
                self.fail(f"variable desconocida {tok[1]!r}", tok)
            return self.names[tok[1]]
        if tok[0] == "op" and tok[1] == "(":
            p = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.fail("falta ')'", close)
            return p
        self.fail(f"símbolo inesperado {tok[1]!r}", tok)


def parse_polynomial(text: str, ring: PolyRing) -> PolyElement:
    return _PolynomialParser(text, ring).parse()


def solve_linear_dependency(vectors: Sequence[Sequence[object]], domain) -> Optional[List[object]]:
    """Busca la primera dependencia lineal entre los vectores, en orden.

    Devuelve los coeficientes c_0..c_k (con c_k = 1) tales que sum(c_i v_i) = 0 para el menor k posible,
    o None si los vectores son linealmente independientes.
    """
    echelon = []  # (pivote, fila, combinación)
    for k, vector in enumerate(vectors):
        row = list(vector)
        combo = {k: domain.one}
        for pivot, brow, bcombo in echelon:
            c = row[pivot]
            if c:
                row = [a - c * b for a, b in zip(row, brow)]
                for j, v in bcombo.items():
                    combo[j] = combo.get(j, domain.zero) - c * v
        pivot = next((i for i, a in enumerate(row) if a), None)
        if pivot is None:
            return [combo.get(j, domain.zero) for j in range(k + 1)]
        inv = domain.quo(domain.one, row[pivot])
        echelon.append(
            (pivot, [a * inv for a in row], {j: v * inv for j, v in combo.items()})
        )
    return None
