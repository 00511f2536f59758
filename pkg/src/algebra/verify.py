"""Estimación de fPD sobre una lista de ideales maximales y verificación de los teoremas como
igualdades o desigualdades entre grados calculados.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from algebra.constructions import ConstructionKind, ConstructionResult, polynomial_extension, transport_ideal
from algebra.errors import BudgetExceededError, InvalidInputError, PreconditionViolationError, RingMismatchError
from algebra.fpmodules import ModulePresentation, quotient_by_sequence
from algebra.grades import cech_grade, ext_grade, koszul_grade, local_grade, regular_sequence_grade
from algebra.groebner import (
    IdealSpec,
    MaximalityVerdict,
    RingPresentation,
    ideal,
    ideal_contains,
    krull_dimension,
    quotient_ring,
    verify_maximal,
)
from algebra.reports import Comparison, FpdEstimate, GradeReport, IdealGrade, TheoremId, Verdict, VerificationReport

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerifyOptions:
    bound: int = 12
    power_cap: int = 8
    trials: int = 200
    seed: int = 0
    assume_maximal: bool = False
    equidimensional: bool = False
    exhaustive: bool = False


@dataclass
class MaximalIdealList:
    ring: RingPresentation
    ideals: List[IdealSpec]
    certification: List[str]


def certify_maximal_ideals(
    R: RingPresentation,
    ideals: Sequence[IdealSpec],
    trials: int,
    seed: int,
    assume_maximal: bool = False,
) -> MaximalIdealList:
    """Certifica cada ideal con verify_maximal; los no confirmados solo se aceptan con assume_maximal."""
    certification = []
    for m in ideals:
        if m.ring is not R:
            raise RingMismatchError(f"el ideal {m.describe()} no pertenece al anillo")
        verdict = verify_maximal(m, trials, seed)
        if verdict == MaximalityVerdict.not_maximal:
            raise PreconditionViolationError(f"el ideal {m.describe()} no es maximal")
        if verdict == MaximalityVerdict.unconfirmed:
            if not assume_maximal:
                raise PreconditionViolationError(
                    f"no se pudo confirmar que {m.describe()} sea maximal (use --assume-maximal)"
                )
            LOGGER.warning("Se asume que %s es maximal sin confirmarlo", m.describe())
            certification.append("assumed")
        else:
            certification.append(verdict.value)
    return MaximalIdealList(R, list(ideals), certification)


def ring_module(R: RingPresentation) -> ModulePresentation:
    return ModulePresentation.free(R, 1)


def fpd_estimate(R: RingPresentation, mx: MaximalIdealList, bound: int, exhaustive: bool = False) -> FpdEstimate:
    """Máximo de K.grade(m, R) sobre los ideales dados; es una cota inferior de fPD(R)."""
    if not mx.ideals:
        raise InvalidInputError("la lista de ideales maximales está vacía")
    breakdown = []
    for m, cert in zip(mx.ideals, mx.certification):
        breakdown.append(IdealGrade(ideal=m.describe(), certification=cert, grade=koszul_grade(m, ring_module(R), bound)))
    magnitude = max(item.grade.magnitude for item in breakdown)
    value = None if math.isinf(magnitude) else int(magnitude)
    return FpdEstimate(value=value, lower_bound=not exhaustive, breakdown=breakdown)


def _value(x: float) -> Optional[int]:
    return None if math.isinf(x) else int(x)


def _compare(name: str, relation: str, lhs: float, rhs: float, lhs_reports=(), rhs_reports=()) -> Comparison:
    holds = lhs == rhs if relation == "=" else lhs <= rhs
    return Comparison(
        name=name,
        relation=relation,
        lhs=list(lhs_reports),
        rhs=list(rhs_reports),
        lhs_value=_value(lhs),
        rhs_value=_value(rhs),
        holds=holds,
    )


def _report(theorem_id: TheoremId, instance: dict, comparisons: List[Comparison], options: VerifyOptions, reason: str = "") -> VerificationReport:
    lhs = [r for c in comparisons for r in c.lhs]
    rhs = [r for c in comparisons for r in c.rhs]
    verdict = Verdict.verified if all(c.holds for c in comparisons) else Verdict.violated
    if verdict == Verdict.violated:
        failed = ", ".join(c.name for c in comparisons if not c.holds)
        reason = f"{reason} no se cumple: {failed}".strip()
    return VerificationReport(
        theorem_id=theorem_id,
        instance=instance,
        lhs=lhs,
        rhs=rhs,
        comparisons=comparisons,
        verdict=verdict,
        reason=reason,
        seed=options.seed,
    )


def check_dim_bound(R: RingPresentation, mx: MaximalIdealList, bound: int, options: Optional[VerifyOptions] = None) -> VerificationReport:
    """K.grade(m, R) ≤ dim(R) para cada ideal de la lista."""
    options = options or VerifyOptions(bound=bound)
    if not mx.ideals:
        raise InvalidInputError("la lista de ideales maximales está vacía")
    d = krull_dimension(R)
    comparisons = []
    for m in mx.ideals:
        g = koszul_grade(m, ring_module(R), bound)
        comparisons.append(_compare(f"K.grade{m.describe()} <= dim", "<=", g.magnitude, d, [g]))
    instance = {"ring": R.describe(), "ideals": [m.describe() for m in mx.ideals], "dimension": d}
    return _report(TheoremId.thm_dim, instance, comparisons, options)


@dataclass
class TheoremInstance:
    """Datos de una instancia; cada teorema usa solo los campos que necesita."""

    ring: Optional[RingPresentation] = None
    variable: Optional[str] = None
    ideals: List[IdealSpec] = field(default_factory=list)
    polynomial: Optional[str] = None
    construction: Optional[ConstructionResult] = None
    module: Optional[ModulePresentation] = None
    within: Optional[IdealSpec] = None


def _require(value, what: str):
    if value is None:
        raise InvalidInputError(f"falta {what} en la instancia")
    return value


def _verify_prop_geq(inst: TheoremInstance, options: VerifyOptions) -> VerificationReport:
    R = _require(inst.ring, "el anillo")
    var = _require(inst.variable, "la variable")
    mx = certify_maximal_ideals(R, inst.ideals, options.trials, options.seed, options.assume_maximal)
    C = polynomial_extension(R, var)
    comparisons = []
    for m in mx.ideals:
        base = koszul_grade(m, ring_module(R), options.bound)
        lifted = transport_ideal(C, m)
        top = koszul_grade(lifted, ring_module(C.ring), options.bound)
        comparisons.append(
            _compare(f"K.grade{lifted.describe()} = K.grade{m.describe()} + 1", "=", top.magnitude, base.magnitude + 1, [top], [base])
        )
    instance = {"ring": R.describe(), "variable": var, "ideals": [m.describe() for m in mx.ideals]}
    return _report(TheoremId.prop_geq, instance, comparisons, options)


def _monic_in_last_variable(f, S: RingPresentation) -> bool:
    degree = max((m[-1] for m in f.keys()), default=0)
    if degree == 0:
        return False
    top = [(m, c) for m, c in f.items() if m[-1] == degree]
    return len(top) == 1 and not any(top[0][0][:-1]) and top[0][1] == S.poly_ring.domain.one


def _polynomial_instance(inst: TheoremInstance, options: VerifyOptions):
    R = _require(inst.ring, "el anillo")
    var = _require(inst.variable, "la variable")
    text = _require(inst.polynomial, "el polinomio f")
    if len(inst.ideals) != 1:
        raise InvalidInputError("se espera exactamente un ideal maximal m de la base")
    mx = certify_maximal_ideals(R, inst.ideals, options.trials, options.seed, options.assume_maximal)
    m = mx.ideals[0]
    C = polynomial_extension(R, var)
    S = C.ring
    f = S.reduce(S.poly(text))
    if not _monic_in_last_variable(f, S):
        raise PreconditionViolationError(f"f = {S.format(f)} no es mónico en {var}")
    m_ext = ideal(S, [C.embedding.apply(g) for g in m.generators])
    big = ideal(S, list(m_ext.generators) + [f])
    certify_maximal_ideals(S, [big], options.trials, options.seed, options.assume_maximal)
    return R, var, m, C, S, f, m_ext, big


def _verify_thm_poly(inst: TheoremInstance, options: VerifyOptions) -> VerificationReport:
    R, var, m, C, S, f, m_ext, big = _polynomial_instance(inst, options)
    base = koszul_grade(m, ring_module(R), options.bound)
    top = koszul_grade(big, ring_module(S), options.bound)
    comparisons = [
        _compare(f"K.grade{big.describe()} <= K.grade{m.describe()} + 1", "<=", top.magnitude, base.magnitude + 1, [top], [base])
    ]
    instance = {"ring": R.describe(), "variable": var, "ideal": m.describe(), "f": S.format(f), "maximal": big.describe()}
    return _report(TheoremId.thm_poly, instance, comparisons, options)


def _height(R: RingPresentation, p: IdealSpec) -> int:
    return krull_dimension(R) - krull_dimension(quotient_ring(p))


def _verify_thm_scr(inst: TheoremInstance, options: VerifyOptions) -> VerificationReport:
    R, var, m, C, S, f, m_ext, big = _polynomial_instance(inst, options)
    base = koszul_grade(m, ring_module(R), options.bound)
    top = koszul_grade(big, ring_module(S), options.bound)
    comparisons = [
        _compare(f"K.grade{big.describe()} <= K.grade{m.describe()} + 1", "<=", top.magnitude, base.magnitude + 1, [top], [base])
    ]
    reason = ""
    if options.equidimensional:
        middle = koszul_grade(m_ext, ring_module(S), options.bound)
        comparisons.append(_compare(f"K.grade{m_ext.describe()} = K.grade{m.describe()}", "=", middle.magnitude, base.magnitude, [middle], [base]))
        comparisons.append(_compare("ht(M) = ht(m[x]) + 1", "=", _height(S, big), _height(S, m_ext) + 1))
        comparisons.append(
            _compare(f"K.grade{big.describe()} <= K.grade{m_ext.describe()} + 1", "<=", top.magnitude, middle.magnitude + 1, [top], [middle])
        )
    else:
        reason = "ruta de alturas omitida (requiere --equidimensional)"
    instance = {"ring": R.describe(), "variable": var, "ideal": m.describe(), "f": S.format(f), "maximal": big.describe()}
    return _report(TheoremId.thm_scr, instance, comparisons, options, reason)


def _verify_lemma_depthht(inst: TheoremInstance, options: VerifyOptions) -> VerificationReport:
    R = _require(inst.ring, "el anillo")
    if len(inst.ideals) != 2:
        raise InvalidInputError("se esperan dos primos p ⊂ q")
    p, q = inst.ideals
    if not options.equidimensional:
        raise PreconditionViolationError("las alturas se calculan como dim(R) - dim(R/p) y requieren --equidimensional")
    if not ideal_contains(q, p):
        raise PreconditionViolationError(f"{p.describe()} no está contenido en {q.describe()}")
    hp, hq = _height(R, p), _height(R, q)
    if hq != hp + 1:
        raise PreconditionViolationError(f"ht(q) = {hq} no es ht(p) + 1 = {hp + 1}")
    gp = koszul_grade(p, ring_module(R), options.bound)
    gq = koszul_grade(q, ring_module(R), options.bound)
    comparisons = [_compare(f"K.grade{q.describe()} <= K.grade{p.describe()} + 1", "<=", gq.magnitude, gp.magnitude + 1, [gq], [gp])]
    instance = {"ring": R.describe(), "p": p.describe(), "q": q.describe(), "heights": [hp, hq]}
    return _report(TheoremId.lemma_depthht, instance, comparisons, options, "se asume que p y q son primos")


def _verify_min_formula(theorem_id: TheoremId, kind: ConstructionKind, inst: TheoremInstance, options: VerifyOptions) -> VerificationReport:
    C = _require(inst.construction, "la construcción")
    if C.kind != kind:
        raise InvalidInputError(f"{theorem_id.value} necesita una construcción de tipo {kind.value}")
    R = C.base
    mx = certify_maximal_ideals(R, inst.ideals, options.trials, options.seed, options.assume_maximal)
    comparisons = []
    for m in mx.ideals:
        on_ring = koszul_grade(m, ring_module(R), options.bound)
        on_module = koszul_grade(m, C.module, options.bound)
        lifted = transport_ideal(C, m)
        top = koszul_grade(lifted, ring_module(C.ring), options.bound)
        comparisons.append(
            _compare(
                f"K.grade{lifted.describe()} = min(K.grade(m, R), K.grade(m, M)) para m = {m.describe()}",
                "=",
                top.magnitude,
                min(on_ring.magnitude, on_module.magnitude),
                [top],
                [on_ring, on_module],
            )
        )
    instance = {
        "base": R.describe(),
        "ring": C.ring.describe(),
        "module": C.module.describe(),
        "transport": C.transport_table(),
        "ideals": [m.describe() for m in mx.ideals],
    }
    return _report(theorem_id, instance, comparisons, options)


def _verify_thm_dim(inst: TheoremInstance, options: VerifyOptions) -> VerificationReport:
    R = _require(inst.ring, "el anillo")
    mx = certify_maximal_ideals(R, inst.ideals, options.trials, options.seed, options.assume_maximal)
    return check_dim_bound(R, mx, options.bound, options)


def _constant(report: GradeReport) -> bool:
    values = {(s.value, s.infinite_up_to) for s in report.stabilization or []}
    return len(values) <= 1


def _verify_prop_items(inst: TheoremInstance, options: VerifyOptions) -> VerificationReport:
    if len(inst.ideals) != 1:
        raise InvalidInputError("se espera exactamente un ideal")
    I = inst.ideals[0]
    M = inst.module or ring_module(I.ring)
    if M.ring is not I.ring:
        raise RingMismatchError("el ideal y el módulo pertenecen a anillos distintos")
    bound = options.bound
    kg = koszul_grade(I, M, bound)
    eg = ext_grade(I, M, bound)
    comparisons = [_compare("K.grade = E.grade", "=", kg.magnitude, eg.magnitude, [kg], [eg])]

    rs = regular_sequence_grade(I, M, options.trials, options.seed)
    comparisons.append(_compare("longitud de la sucesión regular <= K.grade", "<=", rs.magnitude, kg.magnitude, [rs], [kg]))
    if rs.value:
        ys = [I.ring.poly(t) for t in rs.witness.sequence]
        rest = koszul_grade(I, quotient_by_sequence(M, ys), bound)
        comparisons.append(_compare("K.grade(I, M) = t + K.grade(I, M/yM)", "=", kg.magnitude, rs.value + rest.magnitude, [kg], [rs, rest]))

    if inst.within is not None:
        J = inst.within
        if not ideal_contains(J, I):
            raise PreconditionViolationError(f"{I.describe()} no está contenido en {J.describe()}")
        jg = koszul_grade(J, M, bound)
        comparisons.append(_compare("K.grade(I, M) <= K.grade(J, M)", "<=", kg.magnitude, jg.magnitude, [kg], [jg]))

    cg = cech_grade(I, M, bound, options.power_cap)
    comparisons.append(_compare("Č.grade = K.grade", "=", cg.magnitude, kg.magnitude, [cg], [kg]))
    comparisons.append(_compare("traza de Č.grade constante", "=", int(_constant(cg)), 1, [cg]))
    lg = local_grade(I, M, bound, options.power_cap)
    comparisons.append(_compare("H.grade = E.grade", "=", lg.magnitude, eg.magnitude, [lg], [eg]))
    comparisons.append(_compare("traza de H.grade constante", "=", int(_constant(lg)), 1, [lg]))

    instance = {"ideal": I.describe(), "module": M.describe(), "ring": I.ring.describe()}
    if inst.within is not None:
        instance["within"] = inst.within.describe()
    return _report(TheoremId.prop_items, instance, comparisons, options)


VERIFIERS: Dict[TheoremId, Callable[[TheoremInstance, VerifyOptions], VerificationReport]] = {
    TheoremId.prop_geq: _verify_prop_geq,
    TheoremId.thm_poly: _verify_thm_poly,
    TheoremId.thm_scr: _verify_thm_scr,
    TheoremId.lemma_depthht: _verify_lemma_depthht,
    TheoremId.thm_trivext: lambda inst, opts: _verify_min_formula(TheoremId.thm_trivext, ConstructionKind.trivext, inst, opts),
    TheoremId.thm_amg: lambda inst, opts: _verify_min_formula(TheoremId.thm_amg, ConstructionKind.amalg, inst, opts),
    TheoremId.thm_dim: _verify_thm_dim,
    TheoremId.prop_items: _verify_prop_items,
}


def verify_theorem(theorem_id: TheoremId, instance: TheoremInstance, options: VerifyOptions) -> VerificationReport:
    """Calcula ambos lados de la relación del teorema y los compara.

    Si una hipótesis no se cumple o se agota el presupuesto, el veredicto es `inconclusive`.
    """
    theorem_id = TheoremId(theorem_id)
    try:
        return VERIFIERS[theorem_id](instance, options)
    except (PreconditionViolationError, BudgetExceededError) as e:
        LOGGER.info("Verificación %s no concluyente: %s", theorem_id.value, e)
        return VerificationReport(
            theorem_id=theorem_id,
            verdict=Verdict.inconclusive,
            reason=f"{e.kind}: {e}",
            seed=options.seed,
        )
