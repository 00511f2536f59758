"""Ejecuta un script ya analizado y junta los resultados de las consultas en un `ReportBundle`.

Las declaraciones y las consultas se ejecutan en orden. Un error en una consulta queda registrado en
su resultado y la ejecución continúa; un error en una declaración deja el nombre sin asignar.
"""

import logging
import time
from typing import Any, Dict, List, Optional

from _version import __version__
from algebra.buchberger import budget_scope
from algebra.constructions import ConstructionResult, RingHom, amalgamation, polynomial_extension, trivial_extension
from algebra.errors import DimensionMismatchError, FpdlabError, InvalidInputError, RingMismatchError, ScriptSyntaxError, UnboundNameError
from algebra.exact import CoefficientField
from algebra.fpmodules import ModulePresentation, PolyMatrix, cyclic_module
from algebra.grades import cech_grade, ext_grade, koszul_grade, local_grade, regular_sequence_grade
from algebra.groebner import IdealSpec, RingPresentation, groebner_basis, ideal, krull_dimension
from algebra.reports import GradeKind
from algebra.verify import TheoremInstance, certify_maximal_ideals, fpd_estimate, ring_module, verify_theorem
from utils.bundle import BindingSummary, ErrorEntry, QueryResult, ReportBundle, ResultStatus, RunConfig
from utils.script import Script, Span, Statement

LOGGER = logging.getLogger(__name__)


def parse_span(R: RingPresentation, span: Span):
    """Analiza un polinomio del script; los errores se sitúan en la línea y columna del script."""
    try:
        return R.poly(span.text)
    except ScriptSyntaxError as e:
        raise ScriptSyntaxError(e.detail, span.line, span.column + e.column - 1) from None


class Environment:
    def __init__(self):
        self.bindings: Dict[str, Any] = {}

    def lookup(self, name: str):
        if name not in self.bindings:
            raise UnboundNameError(f"el nombre {name!r} no tiene valor (su declaración falló)")
        return self.bindings[name]

    def field(self, st: Statement) -> CoefficientField:
        if st.args.get("field") == "QQ":
            return CoefficientField.rationals()
        if st.args.get("field") == "Fp":
            return CoefficientField.prime_field(st.args["characteristic"])
        value = self.lookup(st.args["field_name"])
        if not isinstance(value, CoefficientField):
            raise InvalidInputError(f"{st.args['field_name']!r} no es un cuerpo")
        return value

    def ring(self, name: str) -> RingPresentation:
        value = self.lookup(name)
        if isinstance(value, ConstructionResult):
            return value.ring
        if not isinstance(value, RingPresentation):
            raise InvalidInputError(f"{name!r} no es un anillo")
        return value

    def ideal(self, name: str) -> IdealSpec:
        value = self.lookup(name)
        if not isinstance(value, IdealSpec):
            raise InvalidInputError(f"{name!r} no es un ideal")
        return value

    def module(self, name: str) -> ModulePresentation:
        """Un módulo declarado o, si el nombre es un anillo R, el módulo libre R^1."""
        value = self.lookup(name)
        if isinstance(value, ModulePresentation):
            return value
        return ring_module(self.ring(name))

    def hom(self, name: str) -> RingHom:
        value = self.lookup(name)
        if not isinstance(value, RingHom):
            raise InvalidInputError(f"{name!r} no es un homomorfismo")
        return value

    def construction(self, name: str) -> ConstructionResult:
        value = self.lookup(name)
        if not isinstance(value, ConstructionResult):
            raise InvalidInputError(f"{name!r} no es una construcción")
        return value


def _declare_ring(env: Environment, st: Statement) -> RingPresentation:
    F = env.field(st)
    base = RingPresentation(F, st.args["variables"])
    relations = [parse_span(base, s) for s in st.args["relations"]]
    return RingPresentation(F, st.args["variables"], relations, name=st.name)


def _declare_module(env: Environment, st: Statement) -> ModulePresentation:
    form = st.args["form"]
    if form == "quotient":
        return cyclic_module(env.ideal(st.args["ideal"]))
    R = env.ring(st.args["ring"])
    if form == "free":
        if st.args["rank"] < 0:
            raise InvalidInputError("el rango no puede ser negativo")
        return ModulePresentation.free(R, st.args["rank"])
    r, c, entries = st.args["rows"], st.args["cols"], st.args["entries"]
    if r < 0 or c < 0:
        raise InvalidInputError("las dimensiones de la matriz no pueden ser negativas")
    if len(entries) != r * c:
        raise DimensionMismatchError(f"la matriz {r}x{c} necesita {r * c} entradas y tiene {len(entries)}")
    values = [parse_span(R, s) for s in entries]
    rows = [values[i * c : (i + 1) * c] for i in range(r)]
    columns = PolyMatrix.from_rows(R, rows, c).columns if r else ()
    return ModulePresentation(R, r, columns, name=st.name)


def _declare_hom(env: Environment, st: Statement) -> RingHom:
    source, target = env.ring(st.args["source"]), env.ring(st.args["target"])
    images = {}
    for var, span in st.args["images"]:
        if var not in source.variables:
            raise InvalidInputError(f"{var!r} no es una variable de {st.args['source']}")
        if var in images:
            raise InvalidInputError(f"la variable {var!r} tiene dos imágenes")
        images[var] = parse_span(target, span)
    missing = [v for v in source.variables if v not in images]
    if missing:
        raise InvalidInputError(f"faltan las imágenes de {', '.join(missing)}")
    return RingHom(source, target, [images[v] for v in source.variables])


def _declare_amalg(env: Environment, st: Statement) -> ConstructionResult:
    A, B = env.ring(st.args["A"]), env.ring(st.args["B"])
    f = env.hom(st.args["hom"])
    J = env.ideal(st.args["ideal"])
    generators = [parse_span(B, s) for s in st.args["modgens"]]
    return amalgamation(A, B, f, J, generators, name=st.name)


def declare(env: Environment, st: Statement):
    kind = st.kind
    if kind == "field":
        return env.field(st)
    if kind == "ring":
        return _declare_ring(env, st)
    if kind == "ideal":
        R = env.ring(st.args["ring"])
        return ideal(R, [parse_span(R, s) for s in st.args["generators"]], note=st.name)
    if kind == "module":
        return _declare_module(env, st)
    if kind == "hom":
        return _declare_hom(env, st)
    if kind == "polyext":
        return polynomial_extension(env.ring(st.args["ring"]), st.args["variable"], name=st.name)
    if kind == "trivext":
        R = env.ring(st.args["ring"])
        return trivial_extension(R, env.module(st.args["module"]), name=st.name)
    return _declare_amalg(env, st)


def describe_binding(value) -> Any:
    if isinstance(value, CoefficientField):
        return str(value)
    if isinstance(value, RingPresentation):
        return value.describe()
    if isinstance(value, IdealSpec):
        return f"{value.describe()} en {value.ring.describe()}"
    if isinstance(value, ModulePresentation):
        return value.describe()
    if isinstance(value, RingHom):
        return value.describe()
    return {
        "ring": value.ring.describe(),
        "transport": value.transport_table(),
        "nilpotency": value.nilpotency,
        "notes": list(value.notes),
    }


def _same_ring(I: IdealSpec, M: ModulePresentation) -> None:
    if I.ring is not M.ring:
        raise RingMismatchError("el ideal y el módulo pertenecen a anillos distintos")


def _grade(env: Environment, st: Statement, config: RunConfig):
    I = env.ideal(st.args["ideal"])
    M = env.module(st.args["target"])
    _same_ring(I, M)
    kind = st.args["grade"]
    if kind == GradeKind.koszul:
        return koszul_grade(I, M, config.grade_bound)
    if kind == GradeKind.ext:
        return ext_grade(I, M, config.grade_bound)
    if kind == GradeKind.cech:
        return cech_grade(I, M, config.grade_bound, config.power_cap)
    if kind == GradeKind.local:
        return local_grade(I, M, config.grade_bound, config.power_cap)
    return regular_sequence_grade(I, M, config.trials, config.seed)


def _theorem_instance(env: Environment, st: Statement) -> TheoremInstance:
    args = st.args
    inst = TheoremInstance(ideals=[env.ideal(n) for n in args.get("ideals", [])])
    if "ring" in args:
        inst.ring = env.ring(args["ring"])
    if "variable" in args:
        inst.variable = args["variable"]
    if "polynomial" in args:
        inst.polynomial = args["polynomial"].text
    if "construction" in args:
        inst.construction = env.construction(args["construction"])
    if "target" in args:
        inst.module = env.module(args["target"])
    if "within" in args:
        inst.within = env.ideal(args["within"])
    return inst


def _verify(env: Environment, st: Statement, config: RunConfig):
    inst = _theorem_instance(env, st)
    try:
        return verify_theorem(st.args["theorem"], inst, config.verify_options())
    except ScriptSyntaxError as e:
        span: Optional[Span] = st.args.get("polynomial")
        if span is None:
            raise
        raise ScriptSyntaxError(e.detail, span.line, span.column + e.column - 1) from None


def run_query(env: Environment, st: Statement, config: RunConfig, index: int) -> QueryResult:
    query = st.args["query"]
    result = QueryResult(
        index=index, line=st.line, query=query, statement=st.source, status=ResultStatus.ok, config=config
    )
    start = time.perf_counter()
    try:
        if query == "gb":
            result.groebner_basis = groebner_basis(env.ideal(st.args["ideal"])).describe()
        elif query == "dim":
            result.dimension = krull_dimension(env.ring(st.args["ring"]))
        elif query == "grade":
            result.grade = _grade(env, st, config)
        elif query == "fpd":
            R = env.ring(st.args["ring"])
            ideals = [env.ideal(n) for n in st.args["ideals"]]
            mx = certify_maximal_ideals(R, ideals, config.trials, config.seed, config.assume_maximal)
            result.fpd = fpd_estimate(R, mx, config.grade_bound, config.exhaustive)
        else:
            result.verification = _verify(env, st, config)
    except FpdlabError as e:
        LOGGER.info("La consulta de la línea %d falló: %s", st.line, e)
        result.status = ResultStatus.error
        result.error = ErrorEntry.from_exception(e, st.line)
    if config.timings:
        elapsed = int((time.perf_counter() - start) * 1000)
        result.timings = {"ms": elapsed}
        if result.verification is not None:
            result.verification.timings = {"ms": elapsed}
    return result


def execute(script: Script, config: RunConfig, script_name: str = "-") -> ReportBundle:
    """Ejecuta todas las sentencias del script con el presupuesto de la configuración."""
    env = Environment()
    bindings: List[BindingSummary] = []
    results: List[QueryResult] = []
    errors: List[ErrorEntry] = []
    with budget_scope(config.groebner_budget()):
        for st in script.statements:
            if st.kind == "query":
                LOGGER.debug("Consulta en la línea %d: %s", st.line, st.source)
                results.append(run_query(env, st, config, len(results)))
                continue
            try:
                value = declare(env, st)
            except FpdlabError as e:
                LOGGER.info("La declaración de %s en la línea %d falló: %s", st.name, st.line, e)
                errors.append(ErrorEntry.from_exception(e, st.line))
                continue
            env.bindings[st.name] = value
            bindings.append(BindingSummary(name=st.name, kind=st.kind, line=st.line, description=describe_binding(value)))
    bundle = ReportBundle(
        version=__version__, script=script_name, config=config, bindings=bindings, results=results, errors=errors
    )
    bundle.exit_code = bundle.compute_exit_code()
    return bundle
