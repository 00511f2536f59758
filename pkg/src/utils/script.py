"""Analizador del lenguaje de scripts de fpdlab.

El lenguaje es orientado a líneas y `#` inicia un comentario. Cada línea es una declaración
(`field`, `ring`, `ideal`, `module`, `hom`, `polyext`, `trivext`, `amalg`) o una consulta (`query`).
Los polinomios se guardan como texto con su posición y se analizan al ejecutar, cuando ya se
conocen las variables del anillo.
"""

import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set, Tuple

from algebra.errors import RebindingError, ScriptSyntaxError, UnboundNameError
from algebra.reports import GradeKind, TheoremId

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
THEOREM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
INT_RE = re.compile(r"-?\d+")

DECLARATIONS = ("field", "ring", "ideal", "module", "hom", "polyext", "trivext", "amalg")
QUERIES = ("gb", "dim", "grade", "fpd", "verify")


@dataclass(frozen=True)
class Span:
    """Texto de un polinomio con la posición (línea, columna) donde empieza."""

    text: str
    line: int
    column: int


@dataclass
class Statement:
    kind: str
    line: int
    source: str
    name: Optional[str] = None
    args: Dict[str, Any] = field(default_factory=dict)
    references: List[Tuple[str, int]] = field(default_factory=list)


@dataclass
class Script:
    statements: List[Statement]

    @property
    def queries(self) -> List[Statement]:
        return [s for s in self.statements if s.kind == "query"]


class _Cursor:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0
        self.references: List[Tuple[str, int]] = []

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def fail(self, message: str, pos: Optional[int] = None):
        raise ScriptSyntaxError(message, self.line, (self.pos if pos is None else pos) + 1)

    def match(self, regex: re.Pattern) -> Optional[str]:
        self.skip_ws()
        m = regex.match(self.text, self.pos)
        if m is None:
            return None
        self.pos = m.end()
        return m.group(0)

    def word(self, what: str = "un nombre") -> str:
        w = self.match(NAME_RE)
        if w is None:
            self.fail(f"se esperaba {what}")
        return w

    def reference(self, what: str = "un nombre") -> str:
        self.skip_ws()
        column = self.pos
        name = self.word(what)
        self.references.append((name, column + 1))
        return name

    def keyword(self, kw: str) -> None:
        self.skip_ws()
        start = self.pos
        w = self.match(NAME_RE)
        if w != kw:
            self.fail(f"se esperaba '{kw}'", start)

    def try_keyword(self, kw: str) -> bool:
        self.skip_ws()
        m = NAME_RE.match(self.text, self.pos)
        if m is not None and m.group(0) == kw:
            self.pos = m.end()
            return True
        return False

    def symbol(self, s: str) -> None:
        if not self.try_symbol(s):
            self.fail(f"se esperaba '{s}'")

    def try_symbol(self, s: str) -> bool:
        self.skip_ws()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def integer(self, what: str = "un entero") -> int:
        value = self.match(INT_RE)
        if value is None:
            self.fail(f"se esperaba {what}")
        return int(value)

    def group(self, open_: str, close: str) -> Span:
        """Contenido entre `open_` y su `close` correspondiente."""
        self.symbol(open_)
        start = self.pos
        depth = 1
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == open_ and open_ != close:
                depth += 1
            elif c == close:
                depth -= 1
                if depth == 0:
                    inner = self.text[start : self.pos]
                    self.pos += 1
                    return Span(inner, self.line, start + 1)
            self.pos += 1
        self.fail(f"falta '{close}'", start - 1)

    def rest(self) -> Span:
        self.skip_ws()
        start = self.pos
        self.pos = len(self.text)
        text = self.text[start:].rstrip()
        if not text:
            self.fail("se esperaba un polinomio", start)
        return Span(text, self.line, start + 1)

    def name_list(self, what: str) -> List[str]:
        names = [self.reference(what)]
        while self.try_symbol(","):
            names.append(self.reference(what))
        return names

    def end(self) -> None:
        if not self.at_end():
            self.fail(f"símbolo inesperado {self.text[self.pos]!r}")


def split_list(span: Span) -> List[Span]:
    """Divide una lista separada por comas (fuera de paréntesis) conservando las columnas."""
    if not span.text.strip():
        return []
    items = []
    depth = 0
    start = 0
    for i, c in enumerate(span.text + ","):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "," and depth == 0:
            piece = span.text[start:i]
            stripped = piece.lstrip()
            if not stripped.strip():
                raise ScriptSyntaxError("elemento vacío en la lista", span.line, span.column + i)
            offset = start + (len(piece) - len(stripped))
            items.append(Span(stripped.rstrip(), span.line, span.column + offset))
            start = i + 1
    return items


def _field_literal(cur: _Cursor) -> Dict[str, Any]:
    cur.skip_ws()
    column = cur.pos
    name = cur.word("un cuerpo")
    if name == "QQ":
        return {"field": "QQ"}
    if name == "Fp" and cur.try_symbol("("):
        p = cur.integer("un primo")
        cur.symbol(")")
        return {"field": "Fp", "characteristic": p}
    cur.references.append((name, column + 1))
    return {"field_name": name}


def _parse_field(cur: _Cursor, st: Statement) -> None:
    cur.symbol("=")
    literal = _field_literal(cur)
    if "field_name" in literal:
        cur.fail("se esperaba QQ o Fp(<primo>)")
    st.args.update(literal)


def _parse_ring(cur: _Cursor, st: Statement) -> None:
    cur.symbol("=")
    st.args.update(_field_literal(cur))
    variables = cur.group("[", "]")
    names = [s.text for s in split_list(variables)]
    for s in split_list(variables):
        if not NAME_RE.fullmatch(s.text):
            raise ScriptSyntaxError(f"nombre de variable no válido {s.text!r}", s.line, s.column)
    st.args["variables"] = names
    st.args["relations"] = []
    if cur.try_symbol("/"):
        st.args["relations"] = split_list(cur.group("(", ")"))


def _parse_ideal(cur: _Cursor, st: Statement) -> None:
    cur.symbol("=")
    st.args["generators"] = split_list(cur.group("(", ")"))
    cur.keyword("in")
    st.args["ring"] = cur.reference("un anillo")


def _parse_module(cur: _Cursor, st: Statement) -> None:
    cur.symbol("=")
    cur.skip_ws()
    start = cur.pos
    form = cur.word("coker, free o quotient")
    st.args["form"] = form
    if form == "coker":
        st.args["ring"] = cur.reference("un anillo")
        cur.keyword("matrix")
        st.args["rows"] = cur.integer("la cantidad de filas")
        st.args["cols"] = cur.integer("la cantidad de columnas")
        st.args["entries"] = split_list(cur.group("[", "]"))
    elif form == "free":
        st.args["ring"] = cur.reference("un anillo")
        st.args["rank"] = cur.integer("el rango")
    elif form == "quotient":
        st.args["ideal"] = cur.reference("un ideal")
    else:
        cur.fail("se esperaba coker, free o quotient", start)


def _parse_hom(cur: _Cursor, st: Statement) -> None:
    cur.symbol(":")
    st.args["source"] = cur.reference("el anillo de origen")
    cur.symbol("->")
    st.args["target"] = cur.reference("el anillo de destino")
    images = []
    for item in split_list(cur.group("(", ")")):
        var, arrow, image = item.text.partition("->")
        if not arrow or not NAME_RE.fullmatch(var.strip()):
            raise ScriptSyntaxError("se esperaba <variable> -> <polinomio>", item.line, item.column)
        offset = len(var) + 2 + (len(image) - len(image.lstrip()))
        images.append((var.strip(), Span(image.strip(), item.line, item.column + offset)))
    st.args["images"] = images


def _parse_polyext(cur: _Cursor, st: Statement) -> None:
    cur.symbol("=")
    st.args["ring"] = cur.reference("un anillo")
    cur.keyword("adjoin")
    st.args["variable"] = cur.word("una variable")


def _parse_trivext(cur: _Cursor, st: Statement) -> None:
    cur.symbol("=")
    st.args["ring"] = cur.reference("un anillo")
    cur.symbol("(+)")
    st.args["module"] = cur.reference("un módulo")


def _parse_amalg(cur: _Cursor, st: Statement) -> None:
    cur.symbol("=")
    st.args["A"] = cur.reference("el anillo A")
    cur.keyword("join")
    st.args["B"] = cur.reference("el anillo B")
    cur.keyword("via")
    st.args["hom"] = cur.reference("un homomorfismo")
    cur.keyword("along")
    st.args["ideal"] = cur.reference("un ideal")
    cur.keyword("modgens")
    st.args["modgens"] = split_list(cur.group("[", "]"))


def _parse_verify(cur: _Cursor, st: Statement) -> None:
    cur.skip_ws()
    start = cur.pos
    word = cur.match(THEOREM_RE)
    try:
        theorem = TheoremId(word)
    except ValueError:
        cur.fail(f"teorema desconocido {word!r}", start)
    st.args["theorem"] = theorem
    if theorem in (TheoremId.prop_geq, TheoremId.thm_poly, TheoremId.thm_scr):
        st.args["ring"] = cur.reference("un anillo")
        cur.keyword("adjoin")
        st.args["variable"] = cur.word("una variable")
        cur.keyword("at")
        st.args["ideals"] = cur.name_list("un ideal")
        if theorem != TheoremId.prop_geq:
            cur.keyword("with")
            st.args["polynomial"] = cur.rest()
    elif theorem == TheoremId.lemma_depthht:
        st.args["ring"] = cur.reference("un anillo")
        cur.keyword("primes")
        st.args["ideals"] = cur.name_list("un ideal")
    elif theorem in (TheoremId.thm_trivext, TheoremId.thm_amg):
        st.args["construction"] = cur.reference("una construcción")
        cur.keyword("at")
        st.args["ideals"] = cur.name_list("un ideal")
    elif theorem == TheoremId.thm_dim:
        st.args["ring"] = cur.reference("un anillo")
        cur.keyword("using")
        st.args["ideals"] = cur.name_list("un ideal")
    else:
        st.args["ideals"] = [cur.reference("un ideal")]
        cur.keyword("on")
        st.args["target"] = cur.reference("un módulo o un anillo")
        if cur.try_keyword("within"):
            st.args["within"] = cur.reference("un ideal")


def _parse_query(cur: _Cursor, st: Statement) -> None:
    cur.skip_ws()
    start = cur.pos
    query = cur.word("el tipo de consulta")
    if query not in QUERIES:
        cur.fail(f"consulta desconocida {query!r}", start)
    st.args["query"] = query
    if query == "gb":
        st.args["ideal"] = cur.reference("un ideal")
    elif query == "dim":
        st.args["ring"] = cur.reference("un anillo")
    elif query == "grade":
        cur.skip_ws()
        kind_start = cur.pos
        kind = cur.word("el tipo de grado")
        try:
            st.args["grade"] = GradeKind(kind)
        except ValueError:
            cur.fail(f"tipo de grado desconocido {kind!r}", kind_start)
        st.args["ideal"] = cur.reference("un ideal")
        cur.keyword("on")
        st.args["target"] = cur.reference("un módulo o un anillo")
    elif query == "fpd":
        st.args["ring"] = cur.reference("un anillo")
        cur.keyword("using")
        st.args["ideals"] = cur.name_list("un ideal")
    else:
        _parse_verify(cur, st)


_PARSERS = {
    "field": _parse_field,
    "ring": _parse_ring,
    "ideal": _parse_ideal,
    "module": _parse_module,
    "hom": _parse_hom,
    "polyext": _parse_polyext,
    "trivext": _parse_trivext,
    "amalg": _parse_amalg,
}


def _strip_comment(text: str) -> str:
    i = text.find("#")
    return text if i < 0 else text[:i]


def parse_statement(text: str, line: int) -> Optional[Statement]:
    cur = _Cursor(_strip_comment(text), line)
    if cur.at_end():
        return None
    start = cur.pos
    keyword = cur.word("una declaración o una consulta")
    st = Statement(kind=keyword, line=line, source=cur.text.strip())
    if keyword == "query":
        _parse_query(cur, st)
    elif keyword in _PARSERS:
        st.name = cur.word("el nombre a declarar")
        _PARSERS[keyword](cur, st)
    else:
        cur.fail(f"declaración desconocida {keyword!r}", start)
    cur.end()
    st.references = cur.references
    return st


def parse_script(text: str) -> Script:
    """Analiza el script completo y comprueba que cada nombre se declara una vez y antes de usarse."""
    statements = []
    bound: Set[str] = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        st = parse_statement(raw, number)
        if st is None:
            continue
        for name, column in st.references:
            if name not in bound:
                raise UnboundNameError(f"línea {number}, columna {column}: el nombre {name!r} no está declarado")
        if st.name is not None:
            if st.name in bound:
                raise RebindingError(f"línea {number}: el nombre {st.name!r} ya está declarado")
            bound.add(st.name)
        statements.append(st)
    return Script(statements)
