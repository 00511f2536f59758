"""Grados de un ideal sobre un módulo: Koszul, Ext, Čech, cohomología local y el oráculo de sucesiones regulares.

Todas las funciones devuelven un `GradeReport` con un testigo que se puede volver a comprobar con
`revalidate_report`.
"""

import logging
import random
from typing import List, Optional, Sequence

from sympy.polys.rings import PolyElement

from algebra.complexes import cohomology_vanishes, koszul_cochain, witness_text
from algebra.errors import InvalidInputError
from algebra.fpmodules import (
    FreeResolutionPrefix,
    ModulePresentation,
    annihilator_submodule,
    cyclic_module,
    ext_witness,
    extend_resolution,
    is_regular_element,
    module_is_zero,
    quotient_by_sequence,
    unit_vector,
)
from algebra.groebner import IdealSpec, ideal, ideal_power, is_unit_ideal, sample_coefficient
from algebra.reports import GradeKind, GradeReport, GradeWitness, StabilizationStep, WitnessKind

LOGGER = logging.getLogger(__name__)


def _check_proper(I: IdealSpec) -> None:
    if is_unit_ideal(I):
        raise InvalidInputError(f"el ideal {I.describe()} es el ideal unidad")


def _first_nonzero_generator(M: ModulePresentation) -> Optional[List[str]]:
    for i in range(M.rank):
        e = unit_vector(M.ring, M.rank, i)
        if not M.is_zero_element(e):
            return witness_text(M.ring, e)
    return None


def _infinite(kind: GradeKind, bound: int, reached: int, **extra) -> GradeReport:
    return GradeReport(kind=kind, value=None, infinite_up_to=reached, searched_range=[0, bound], **extra)


def koszul_grade(I: IdealSpec, M: ModulePresentation, bound: int) -> GradeReport:
    """Menor p con H^p(x, M) ≠ 0 en la cocadena de Koszul de los generadores de I."""
    _check_proper(I)
    gens = I.generators
    notes = []
    if not gens:
        witness = _first_nonzero_generator(M)
        if witness is None:
            return _infinite(GradeKind.koszul, bound, 0)
        return GradeReport(
            kind=GradeKind.koszul,
            value=0,
            searched_range=[0, bound],
            witness=GradeWitness(kind=WitnessKind.cocycle, degree=0, element=witness),
            notes=["ideal sin generadores: el complejo se reduce a M"],
        )
    top = len(gens)
    if bound < top:
        notes.append(f"la cota {bound} es menor que la longitud del complejo ({top})")
    C = koszul_cochain(gens, M)
    for p in range(min(top, bound) + 1):
        verdict = cohomology_vanishes(C, p)
        if not verdict.vanishes:
            return GradeReport(
                kind=GradeKind.koszul,
                value=p,
                searched_range=[0, bound],
                witness=GradeWitness(
                    kind=WitnessKind.cocycle, degree=p, element=witness_text(M.ring, verdict.witness)
                ),
                notes=notes,
            )
    return _infinite(GradeKind.koszul, bound, min(top, bound), notes=notes)


def ext_grade(I: IdealSpec, M: ModulePresentation, bound: int) -> GradeReport:
    """Menor p ≤ bound con Ext^p(R/I, M) ≠ 0."""
    _check_proper(I)
    if module_is_zero(M):
        return _infinite(GradeKind.ext, bound, bound, notes=["el módulo es cero"])
    F = FreeResolutionPrefix(cyclic_module(I), [])
    for p in range(bound + 1):
        F = extend_resolution(F, p + 1)
        witness = ext_witness(p, I, M, F)
        if witness is not None:
            return GradeReport(
                kind=GradeKind.ext,
                value=p,
                searched_range=[0, bound],
                witness=GradeWitness(
                    kind=WitnessKind.ext_index, degree=p, element=witness_text(M.ring, witness)
                ),
            )
        if F.differentials[p].source.rank == 0:
            LOGGER.debug("La resolución de R/I termina en el paso %d", p + 1)
            return _infinite(
                GradeKind.ext, bound, bound, notes=[f"resolución finita de longitud {p + 1}: Ext se anula en adelante"]
            )
    return _infinite(GradeKind.ext, bound, bound)


def _step(power: int, report: GradeReport) -> StabilizationStep:
    return StabilizationStep(power=power, value=report.value, infinite_up_to=report.infinite_up_to)


def _stabilized_report(kind: GradeKind, reports: List[GradeReport], bound: int) -> GradeReport:
    trace = [_step(t, r) for t, r in enumerate(reports, start=1)]
    last = reports[-1]
    stabilized = len(reports) == 1 or reports[-1].magnitude == reports[-2].magnitude
    if not stabilized:
        LOGGER.warning("El grado %s no se estabilizó en la potencia %d", kind.value, len(reports))
    witness = None
    if last.witness is not None:
        witness = last.witness.model_copy(update={"power": len(reports)})
    return GradeReport(
        kind=kind,
        value=last.value,
        infinite_up_to=last.infinite_up_to,
        searched_range=[0, bound],
        witness=witness,
        stabilization=trace,
        stabilized=stabilized,
        notes=list(last.notes),
    )


def generator_powers(I: IdealSpec, t: int) -> IdealSpec:
    """(x_1^t, ..., x_n^t) sobre los generadores guardados de I."""
    return ideal(I.ring, [g**t for g in I.generators])


def cech_grade(I: IdealSpec, M: ModulePresentation, bound: int, power_cap: int) -> GradeReport:
    """Grado de Koszul de las potencias de los generadores para t = 1..power_cap."""
    _check_proper(I)
    if power_cap < 1:
        raise InvalidInputError("el límite de potencias tiene que ser al menos 1")
    reports = [koszul_grade(generator_powers(I, t), M, bound) for t in range(1, power_cap + 1)]
    return _stabilized_report(GradeKind.cech, reports, bound)


def local_grade(I: IdealSpec, M: ModulePresentation, bound: int, power_cap: int) -> GradeReport:
    """Grado de Ext contra las potencias I^t para t = 1..power_cap."""
    _check_proper(I)
    if power_cap < 1:
        raise InvalidInputError("el límite de potencias tiene que ser al menos 1")
    reports = [ext_grade(ideal_power(I, t), M, bound) for t in range(1, power_cap + 1)]
    return _stabilized_report(GradeKind.local, reports, bound)


def regular_sequence_grade(I: IdealSpec, M: ModulePresentation, trials: int, seed: int) -> GradeReport:
    """Extiende de forma voraz una sucesión regular con combinaciones aleatorias de los generadores."""
    _check_proper(I)
    R = I.ring
    domain = R.poly_ring.domain
    rng = random.Random(seed)
    gens = I.generators
    sequence: List[PolyElement] = []
    current = M
    notes = []
    while len(sequence) < len(gens):
        if not annihilator_submodule(I, current).is_zero():
            notes.append("0 :_M I ≠ 0 en el cociente actual")
            break
        if module_is_zero(quotient_by_sequence(current, gens)):
            notes.append("IM = M en el cociente actual")
            break
        found = None
        for trial in range(trials):
            a = R.poly_ring.zero
            for g in gens:
                a += g.mul_ground(sample_coefficient(rng, domain))
            a = R.reduce(a)
            if a and is_regular_element(a, current):
                LOGGER.debug("Elemento regular %s aceptado en el intento %d", R.format(a), trial + 1)
                found = a
                break
        if found is None:
            notes.append(f"ningún elemento regular en {trials} intentos")
            break
        sequence.append(found)
        current = quotient_by_sequence(current, [found])
    return GradeReport(
        kind=GradeKind.regseq,
        value=len(sequence),
        searched_range=[0, len(gens)],
        witness=GradeWitness(kind=WitnessKind.sequence, sequence=[R.format(a) for a in sequence]),
        seed=seed,
        notes=notes,
    )


def _parse_vector(M: ModulePresentation, element: Sequence[str]):
    return tuple(M.ring.poly(s) for s in element)


def revalidate_report(report: GradeReport, I: IdealSpec, M: ModulePresentation) -> bool:
    """Vuelve a comprobar el testigo de un informe a partir de su forma serializada."""
    witness = report.witness
    if witness is None:
        return report.value is None
    target = I
    if witness.power is not None:
        target = ideal_power(I, witness.power) if report.kind == GradeKind.local else generator_powers(I, witness.power)

    if witness.kind == WitnessKind.sequence:
        current = M
        for text in witness.sequence or []:
            a = M.ring.poly(text)
            if not is_regular_element(a, current):
                return False
            current = quotient_by_sequence(current, [a])
        return len(witness.sequence or []) == report.value

    if witness.kind == WitnessKind.ext_index:
        return report.value == witness.degree and ext_witness(witness.degree, target, M) is not None

    p = witness.degree
    if report.value != p:
        return False
    element = _parse_vector(M, witness.element or [])
    if not target.generators:
        return p == 0 and not M.is_zero_element(element)
    C = koszul_cochain(target.generators, M)
    outgoing, incoming = C.outgoing(p), C.incoming(p)
    if outgoing is not None and not outgoing.target.is_zero_element(outgoing.matrix.apply(M.ring, element)):
        return False
    image = list(incoming.matrix.columns) if incoming is not None else []
    cokernel = ModulePresentation(M.ring, C.terms[p].rank, list(C.terms[p].relations) + image)
    return not cokernel.is_zero_element(element)
