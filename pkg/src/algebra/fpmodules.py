"""Módulos finitamente presentados sobre un anillo R = k[x]/K.

Un módulo M se representa como el conúcleo de su matriz de relaciones: M = R^r / im(A). Todos los
cálculos se hacen en el módulo libre ambiente S^r sobre el anillo de polinomios S, añadiendo K en
cada coordenada. Núcleos, preimágenes y pertenencia se resuelven con bases de Gröbner de módulos en
orden posición sobre término.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from algebra.buchberger import Vector, basis_rows, groebner, reduce_vector, vector_leading_term
from algebra.errors import DimensionMismatchError, InvalidInputError, RingMismatchError
from algebra.groebner import IdealSpec, RingPresentation, ideal_power

LOGGER = logging.getLogger(__name__)


def _check_ring(a: RingPresentation, b: RingPresentation) -> None:
    if a is not b:
        raise RingMismatchError("los objetos pertenecen a anillos distintos")


def zero_vector(R: RingPresentation, n: int) -> Vector:
    return (R.poly_ring.zero,) * n


def unit_vector(R: RingPresentation, n: int, i: int) -> Vector:
    v = list(zero_vector(R, n))
    v[i] = R.poly_ring.one
    return tuple(v)


def is_zero_vector(v: Sequence[PolyElement]) -> bool:
    return not any(v)


def format_vector(R: RingPresentation, v: Sequence[PolyElement]) -> str:
    return "(" + ", ".join(R.format(p) for p in v) + ")"


def _relation_vectors(R: RingPresentation, rank: int) -> List[Vector]:
    """K·e_i para cada coordenada."""
    vectors = []
    for g in R.relations_basis():
        for i in range(rank):
            v = list(zero_vector(R, rank))
            v[i] = g
            vectors.append(tuple(v))
    return vectors


def submodule_basis(R: RingPresentation, rank: int, generators: Sequence[Vector]) -> List[Vector]:
    """Base de Gröbner reducida de la preimagen en S^rank del submódulo generado (con K incluido)."""
    vectors = [tuple(g) for g in generators if not is_zero_vector(g)]
    vectors += _relation_vectors(R, rank)
    if not vectors:
        return []
    return groebner(vectors, R.term_order)


def reduce_modulo(R: RingPresentation, v: Sequence[PolyElement], basis: Sequence[Vector]) -> Vector:
    if not basis:
        return tuple(v)
    return reduce_vector(tuple(v), basis_rows(basis, R.term_order), R.term_order)


def in_submodule(R: RingPresentation, v: Sequence[PolyElement], basis: Sequence[Vector]) -> bool:
    return is_zero_vector(reduce_modulo(R, v, basis))


@dataclass(frozen=True)
class PolyMatrix:
    """Matriz de polinomios guardada por columnas."""

    nrows: int
    columns: Tuple[Vector, ...]

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @staticmethod
    def from_rows(R: RingPresentation, rows: Sequence[Sequence], ncols: int) -> "PolyMatrix":
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatchError(
                    f"la fila tiene {len(row)} entradas y se esperaban {ncols}"
                )
        columns = tuple(
            tuple(R.reduce(R.coerce(rows[i][j])) for i in range(len(rows))) for j in range(ncols)
        )
        return PolyMatrix(len(rows), columns)

    def rows(self) -> List[Tuple[PolyElement, ...]]:
        return [tuple(col[i] for col in self.columns) for i in range(self.nrows)]

    def entry(self, i: int, j: int) -> PolyElement:
        return self.columns[j][i]

    def apply(self, R: RingPresentation, v: Sequence[PolyElement]) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatchError(
                f"el vector tiene {len(v)} componentes y la matriz {self.ncols} columnas"
            )
        result = list(zero_vector(R, self.nrows))
        for c, col in zip(v, self.columns):
            if c:
                for i, a in enumerate(col):
                    if a:
                        result[i] = result[i] + c * a
        return tuple(result)

    def compose(self, R: RingPresentation, other: "PolyMatrix") -> "PolyMatrix":
        """self ∘ other."""
        return PolyMatrix(self.nrows, tuple(self.apply(R, col) for col in other.columns))

    def transpose(self, R: RingPresentation) -> "PolyMatrix":
        rows = self.rows()
        if self.nrows == 0:
            return PolyMatrix(self.ncols, ())
        return PolyMatrix(self.ncols, tuple(tuple(row) for row in rows))

    def kron_identity(self, R: RingPresentation, r: int) -> "PolyMatrix":
        """self ⊗ I_r: la matriz de self aplicada a r copias de un mismo módulo."""
        columns = []
        for col in self.columns:
            for k in range(r):
                v = list(zero_vector(R, self.nrows * r))
                for i, a in enumerate(col):
                    v[i * r + k] = a
                columns.append(tuple(v))
        return PolyMatrix(self.nrows * r, tuple(columns))

    def is_zero(self, R: RingPresentation) -> bool:
        basis = _relation_vectors(R, self.nrows)
        basis = groebner(basis, R.term_order) if basis else []
        return all(in_submodule(R, col, basis) for col in self.columns)


class ModulePresentation:
    """Conúcleo de la matriz de relaciones `relations` (rank filas, una columna por relación)."""

    def __init__(self, ring: RingPresentation, rank: int, relations: Sequence[Sequence] = (), name: Optional[str] = None):
        if rank < 0:
            raise InvalidInputError("el rango de un módulo no puede ser negativo")
        self.ring = ring
        self.rank = rank
        self.name = name
        columns = []
        for col in relations:
            if len(col) != rank:
                raise DimensionMismatchError(
                    f"la relación tiene {len(col)} componentes y el módulo rango {rank}"
                )
            col = tuple(ring.reduce(ring.coerce(a)) for a in col)
            if not is_zero_vector(col) and col not in columns:
                columns.append(col)
        self.relations: Tuple[Vector, ...] = tuple(columns)
        self._basis: Optional[List[Vector]] = None

    def __repr__(self) -> str:
        return f"ModulePresentation(rank={self.rank}, relations={len(self.relations)})"

    @staticmethod
    def free(ring: RingPresentation, rank: int) -> "ModulePresentation":
        return ModulePresentation(ring, rank, ())

    @property
    def matrix(self) -> PolyMatrix:
        return PolyMatrix(self.rank, self.relations)

    def relation_basis(self) -> List[Vector]:
        if self._basis is None:
            basis = submodule_basis(self.ring, self.rank, self.relations)
            if self._basis is None:
                self._basis = basis
        return self._basis

    def is_free(self) -> bool:
        return not self.relations

    def reduce(self, v: Sequence[PolyElement]) -> Vector:
        return reduce_modulo(self.ring, v, self.relation_basis())

    def is_zero_element(self, v: Sequence[PolyElement]) -> bool:
        return is_zero_vector(self.reduce(v))

    def direct_power(self, n: int) -> "ModulePresentation":
        """M^n con las relaciones en bloques diagonales."""
        R, r = self.ring, self.rank
        columns = []
        for block in range(n):
            for col in self.relations:
                v = list(zero_vector(R, n * r))
                v[block * r : (block + 1) * r] = col
                columns.append(tuple(v))
        return ModulePresentation(R, n * r, columns)

    def describe(self) -> dict:
        return {
            "rank": self.rank,
            "relations": [[self.ring.format(a) for a in col] for col in self.relations],
        }


def module_is_zero(M: ModulePresentation) -> bool:
    return all(M.is_zero_element(unit_vector(M.ring, M.rank, i)) for i in range(M.rank))


def cyclic_module(I: IdealSpec) -> ModulePresentation:
    """R/I como módulo de rango 1."""
    return ModulePresentation(I.ring, 1, [(g,) for g in I.generators])


class ModuleMap:
    """Homomorfismo source -> target dado por la imagen de cada generador (columnas de `matrix`)."""

    def __init__(self, source: ModulePresentation, target: ModulePresentation, matrix: PolyMatrix, check: bool = True):
        _check_ring(source.ring, target.ring)
        if matrix.nrows != target.rank or matrix.ncols != source.rank:
            raise DimensionMismatchError(
                f"la matriz es {matrix.nrows}x{matrix.ncols} y se esperaba {target.rank}x{source.rank}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            R = source.ring
            for col in source.relations:
                if not target.is_zero_element(matrix.apply(R, col)):
                    raise InvalidInputError(
                        "la aplicación no está bien definida: una relación del origen no va a cero"
                    )

    @property
    def ring(self) -> RingPresentation:
        return self.source.ring


def _canonical_key(R: RingPresentation, v: Vector) -> str:
    return format_vector(R, v)


def _prune(R: RingPresentation, rank: int, vectors: Sequence[Vector], base: Sequence[Vector]) -> List[Vector]:
    """Quita generadores nulos o redundantes módulo `base`; el resultado está en forma normal."""
    base_gb = submodule_basis(R, rank, base)
    candidates = []
    for v in vectors:
        v = reduce_modulo(R, v, base_gb)
        if not is_zero_vector(v) and v not in candidates:
            candidates.append(v)
    if len(candidates) <= 1:
        return candidates

    key = R.term_order
    candidates.sort(key=lambda v: (key(*vector_leading_term(v, key)[:2]), _canonical_key(R, v)))
    kept: List[Vector] = []
    for v in candidates:
        span = submodule_basis(R, rank, list(base) + kept)
        if not in_submodule(R, v, span):
            kept.append(v)
    return kept


def preimage(
    R: RingPresentation,
    matrix: PolyMatrix,
    target_generators: Sequence[Vector],
    base: Sequence[Vector] = (),
) -> List[Vector]:
    """Generadores de {v ∈ R^s : matrix·v ∈ ⟨target_generators⟩} módulo `base`.

    Se calcula la base de Gröbner del módulo gráfico en S^(t+s) con las columnas (F e_j, e_j), los
    vectores (n, 0) y K en las primeras t coordenadas; con posición sobre término los elementos con
    las t primeras componentes nulas generan la preimagen.
    """
    t, s = matrix.nrows, matrix.ncols
    if s == 0:
        return []
    vectors = []
    for j, col in enumerate(matrix.columns):
        vectors.append(tuple(col) + unit_vector(R, s, j))
    for n in target_generators:
        if not is_zero_vector(n):
            vectors.append(tuple(n) + zero_vector(R, s))
    for v in _relation_vectors(R, t):
        vectors.append(v + zero_vector(R, s))
    key = R.term_order
    basis = groebner(vectors, key)
    found = []
    for v in basis:
        comp = vector_leading_term(v, key)[0]
        if comp >= t:
            found.append(tuple(v[t:]))
    result = _prune(R, s, found, base)
    LOGGER.debug("Preimagen: %d generadores (de %d en la base del gráfico)", len(result), len(basis))
    return result


class EmbeddedSubmodule:
    """Submódulo de `ambient` generado por las clases de `generators` (vectores de R^rank)."""

    def __init__(self, ambient: ModulePresentation, generators: Sequence[Vector]):
        self.ambient = ambient
        self.generators: Tuple[Vector, ...] = tuple(tuple(g) for g in generators)
        self._basis: Optional[List[Vector]] = None

    @property
    def ring(self) -> RingPresentation:
        return self.ambient.ring

    def basis(self) -> List[Vector]:
        """Base de Gröbner de la preimagen del submódulo en el módulo libre que cubre al ambiente."""
        if self._basis is None:
            M = self.ambient
            self._basis = submodule_basis(M.ring, M.rank, list(self.generators) + list(M.relations))
        return self._basis

    def contains(self, v: Sequence[PolyElement]) -> bool:
        return in_submodule(self.ring, v, self.basis())

    def is_zero(self) -> bool:
        return all(self.ambient.is_zero_element(g) for g in self.generators)

    def is_everything(self) -> bool:
        return all(self.contains(unit_vector(self.ring, self.ambient.rank, i)) for i in range(self.ambient.rank))

    def same_as(self, other: "EmbeddedSubmodule") -> bool:
        return self.ambient is other.ambient and self.basis() == other.basis()

    def presentation(self) -> ModulePresentation:
        """Presentación del submódulo: R^m -> M con las sizigias de los generadores como relaciones."""
        M = self.ambient
        m = len(self.generators)
        cover = PolyMatrix(M.rank, self.generators)
        relations = preimage(M.ring, cover, M.relations)
        return ModulePresentation(M.ring, m, relations)

    def describe(self) -> List[str]:
        return sorted(format_vector(self.ring, g) for g in self.generators)


def kernel_map(f: ModuleMap) -> EmbeddedSubmodule:
    """ker f como submódulo del origen.

    Para módulos libres es el módulo de sizigias de las columnas; en general se calcula la
    preimagen de las relaciones del destino y se reduce módulo las relaciones del origen.
    """
    R = f.ring
    gens = preimage(R, f.matrix, f.target.relations, f.source.relations)
    return EmbeddedSubmodule(f.source, gens)


def subquotient_witness(
    incoming: Optional[ModuleMap],
    outgoing: Optional[ModuleMap],
    middle: ModulePresentation,
) -> Optional[Vector]:
    """Un generador de ker(outgoing) que no está en im(incoming), o None si el cociente es cero.

    Si hay varios se devuelve el menor según su texto canónico. El generador se devuelve tal cual,
    sin reducir módulo la imagen.
    """
    R = middle.ring
    if outgoing is None:
        kernel = [unit_vector(R, middle.rank, i) for i in range(middle.rank)]
    else:
        kernel = list(kernel_map(outgoing).generators)
    image = list(incoming.matrix.columns) if incoming is not None else []
    image_basis = submodule_basis(R, middle.rank, image + list(middle.relations))
    candidates = [v for v in kernel if not in_submodule(R, v, image_basis)]
    if not candidates:
        return None
    return min(candidates, key=lambda v: format_vector(R, v))


@dataclass
class FreeResolutionPrefix:
    """Prefijo F_n -> ... -> F_1 -> F_0 -> M -> 0; `differentials[i]` es d_{i+1}: F_{i+1} -> F_i."""

    module: ModulePresentation
    differentials: List[ModuleMap]

    @property
    def length(self) -> int:
        return len(self.differentials)

    @property
    def ranks(self) -> List[int]:
        if not self.differentials:
            return [self.module.rank]
        return [self.differentials[0].target.rank] + [d.source.rank for d in self.differentials]


def _free_step(R: RingPresentation, previous: ModuleMap) -> ModuleMap:
    kernel = kernel_map(previous)
    source = ModulePresentation.free(R, len(kernel.generators))
    return ModuleMap(source, previous.source, PolyMatrix(previous.source.rank, kernel.generators), check=False)


def extend_resolution(F: FreeResolutionPrefix, length: int) -> FreeResolutionPrefix:
    R = F.module.ring
    differentials = list(F.differentials)
    if not differentials and length > 0:
        M = F.module
        F0 = ModulePresentation.free(R, M.rank)
        F1 = ModulePresentation.free(R, len(M.relations))
        differentials.append(ModuleMap(F1, F0, M.matrix, check=False))
    while len(differentials) < length:
        differentials.append(_free_step(R, differentials[-1]))
    resolution = FreeResolutionPrefix(F.module, differentials)
    LOGGER.debug("Resolución libre de rangos %s", resolution.ranks)
    return resolution


def free_resolution(M: ModulePresentation, length: int) -> FreeResolutionPrefix:
    if length < 0:
        raise InvalidInputError("la longitud de la resolución no puede ser negativa")
    return extend_resolution(FreeResolutionPrefix(M, []), length)


def verify_resolution(F: FreeResolutionPrefix) -> bool:
    """Comprueba d_i ∘ d_{i+1} = 0 y ker d_i ⊆ im d_{i+1} en cada paso interior."""
    R = F.module.ring
    ds = F.differentials
    for lower, upper in zip(ds, ds[1:]):
        if not lower.matrix.compose(R, upper.matrix).is_zero(R):
            return False
        image_basis = submodule_basis(R, lower.source.rank, upper.matrix.columns)
        for v in kernel_map(lower).generators:
            if not in_submodule(R, v, image_basis):
                return False
    return True


def _hom_cochain_map(R: RingPresentation, d: ModuleMap, M: ModulePresentation) -> ModuleMap:
    """Hom(d, M): M^{rank target} -> M^{rank source}, con matriz d^T ⊗ I_r."""
    matrix = d.matrix.transpose(R).kron_identity(R, M.rank)
    source = M.direct_power(d.target.rank)
    target = M.direct_power(d.source.rank)
    return ModuleMap(source, target, matrix, check=False)


def ext_witness(
    p: int, I: IdealSpec, M: ModulePresentation, resolution: Optional[FreeResolutionPrefix] = None
) -> Optional[Vector]:
    """Un cociclo de Hom(F_p, M) que representa una clase no nula de Ext^p(R/I, M), o None.

    `resolution` es una resolución ya calculada de R/I; se extiende si hace falta.
    """
    _check_ring(I.ring, M.ring)
    if p < 0:
        raise InvalidInputError("el grado de Ext tiene que ser un natural")
    F = extend_resolution(resolution or FreeResolutionPrefix(cyclic_module(I), []), p + 1)
    R = I.ring
    outgoing = _hom_cochain_map(R, F.differentials[p], M)
    incoming = _hom_cochain_map(R, F.differentials[p - 1], M) if p > 0 else None
    return subquotient_witness(incoming, outgoing, outgoing.source)


def ext_vanishes(p: int, I: IdealSpec, M: ModulePresentation) -> bool:
    return ext_witness(p, I, M) is None


def multiplication_map(M: ModulePresentation, elements: Sequence[PolyElement]) -> ModuleMap:
    """M -> M^s, m -> (g_1 m, ..., g_s m)."""
    R = M.ring
    s, r = len(elements), M.rank
    columns = []
    for j in range(r):
        v = list(zero_vector(R, s * r))
        for i, g in enumerate(elements):
            v[i * r + j] = R.coerce(g)
        columns.append(tuple(v))
    return ModuleMap(M, M.direct_power(s), PolyMatrix(s * r, tuple(columns)), check=False)


def annihilator_submodule(I: IdealSpec, M: ModulePresentation) -> EmbeddedSubmodule:
    """0 :_M I. Con la lista de generadores vacía es todo M."""
    _check_ring(I.ring, M.ring)
    if not I.generators:
        return EmbeddedSubmodule(M, [unit_vector(M.ring, M.rank, i) for i in range(M.rank)])
    return kernel_map(multiplication_map(M, I.generators))


@dataclass
class GammaResult:
    submodule: EmbeddedSubmodule
    stabilized: bool
    power: int
    trace: List[int]


def gamma_submodule(I: IdealSpec, M: ModulePresentation, cap: int) -> GammaResult:
    """Γ_I(M) como la cadena 0:_M I^n hasta que dos términos consecutivos coinciden o n = cap."""
    if cap < 1:
        raise InvalidInputError("el límite de potencias tiene que ser al menos 1")
    current = annihilator_submodule(I, M)
    trace = [len(current.generators)]
    if current.is_zero() or current.is_everything():
        return GammaResult(current, True, 1, trace)
    for n in range(2, cap + 1):
        following = annihilator_submodule(ideal_power(I, n), M)
        trace.append(len(following.generators))
        if following.same_as(current):
            LOGGER.debug("Γ_I(M) se estabiliza en la potencia %d", n - 1)
            return GammaResult(current, True, n - 1, trace)
        current = following
        if current.is_everything():
            return GammaResult(current, True, n, trace)
    LOGGER.warning("Γ_I(M) no se estabilizó antes de la potencia %d", cap)
    return GammaResult(current, False, cap, trace)


def quotient_by_sequence(M: ModulePresentation, ys: Sequence[PolyElement]) -> ModulePresentation:
    """M / (y_1..y_t)M añadiendo las columnas y_i·e_j."""
    R = M.ring
    columns = list(M.relations)
    for y in ys:
        y = R.coerce(y)
        for j in range(M.rank):
            v = list(zero_vector(R, M.rank))
            v[j] = y
            columns.append(tuple(v))
    return ModulePresentation(R, M.rank, columns)


def is_regular_element(a: PolyElement, M: ModulePresentation) -> bool:
    """a es regular sobre M: la multiplicación por a es inyectiva y aM ≠ M."""
    a = M.ring.coerce(a)
    if module_is_zero(quotient_by_sequence(M, [a])):
        return False
    kernel = kernel_map(multiplication_map(M, [a]))
    return kernel.is_zero()
