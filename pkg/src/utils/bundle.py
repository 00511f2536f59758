"""Configuración de una ejecución y documento JSON con los resultados de un script."""

import json
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt

from algebra.buchberger import GroebnerBudget
from algebra.errors import FpdlabError
from algebra.reports import FpdEstimate, GradeReport, Verdict, VerificationReport
from algebra.verify import VerifyOptions


class RunConfig(BaseModel):
    """Parámetros de una ejecución. Se copian en el documento y en cada resultado."""

    model_config = ConfigDict(frozen=True)

    power_cap: PositiveInt = Field(8, description="Potencia máxima para los grados de Čech y de cohomología local")
    grade_bound: PositiveInt = Field(12, description="Cota superior de los grados explorados")
    trials: PositiveInt = Field(200, description="Intentos por paso en el oráculo de sucesiones regulares")
    seed: int = Field(0, description="Semilla de todas las elecciones aleatorias")
    budget: PositiveInt = Field(5000, description="Tamaño máximo de una base de Gröbner")
    pair_budget: PositiveInt = Field(200_000, description="Cantidad máxima de pares S procesados")
    assume_maximal: bool = False
    equidimensional: bool = False
    exhaustive: bool = False
    timings: bool = False
    output: Optional[str] = Field(None, exclude=True)

    def verify_options(self) -> VerifyOptions:
        return VerifyOptions(
            bound=self.grade_bound,
            power_cap=self.power_cap,
            trials=self.trials,
            seed=self.seed,
            assume_maximal=self.assume_maximal,
            equidimensional=self.equidimensional,
            exhaustive=self.exhaustive,
        )

    def groebner_budget(self) -> GroebnerBudget:
        return GroebnerBudget(max_basis=self.budget, max_pairs=self.pair_budget)


class ErrorEntry(BaseModel):
    kind: str
    message: str
    line: Optional[int] = None
    column: Optional[int] = None
    diagnostic: Optional[Dict[str, int]] = None

    @staticmethod
    def from_exception(e: FpdlabError, line: Optional[int] = None) -> "ErrorEntry":
        d = e.to_dict()
        return ErrorEntry(
            kind=d["kind"],
            message=d["message"],
            line=d.get("line", line),
            column=d.get("column"),
            diagnostic=d.get("diagnostic"),
        )


class ResultStatus(str, Enum):
    ok = "ok"
    error = "error"


class BindingSummary(BaseModel):
    """Un nombre declarado en el script y lo que representa."""

    name: str
    kind: str
    line: int
    description: Union[str, Dict[str, Any]]


class QueryResult(BaseModel):
    index: int
    line: int
    query: str
    statement: str
    status: ResultStatus
    config: RunConfig
    groebner_basis: Optional[List[str]] = None
    dimension: Optional[int] = None
    grade: Optional[GradeReport] = None
    fpd: Optional[FpdEstimate] = None
    verification: Optional[VerificationReport] = None
    error: Optional[ErrorEntry] = None
    timings: Optional[Dict[str, int]] = Field(None, description="Milisegundos; solo con --timings")

    @property
    def verdict(self) -> Optional[Verdict]:
        return self.verification.verdict if self.verification is not None else None


class ReportBundle(BaseModel):
    version: str
    script: str
    config: RunConfig
    bindings: List[BindingSummary] = Field(default_factory=list)
    results: List[QueryResult] = Field(default_factory=list)
    errors: List[ErrorEntry] = Field(default_factory=list, description="Errores al ejecutar declaraciones")
    exit_code: int = 0

    def compute_exit_code(self) -> int:
        """2 si alguna verificación es `violated`; si no, 1 si hubo errores; si no, 0."""
        if any(r.verdict == Verdict.violated for r in self.results):
            return 2
        if self.errors or any(r.status == ResultStatus.error for r in self.results):
            return 1
        return 0


def bundle_to_json(bundle: ReportBundle) -> str:
    return json.dumps(bundle.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_report(bundle: ReportBundle, path: Optional[Union[str, Path]]) -> None:
    """Escribe el documento en el fichero indicado o en la salida estándar si la ruta es `-`."""
    text = bundle_to_json(bundle)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(path).write_text(text, encoding="utf-8")
