"""Modelos de los informes que produce el núcleo (grados, verificaciones y estimaciones de fPD)."""

import math
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field


class GradeKind(str, Enum):
    koszul = "koszul"
    ext = "ext"
    cech = "cech"
    local = "local"
    regseq = "regseq"


class WitnessKind(str, Enum):
    cocycle = "cocycle"
    ext_index = "ext-index"
    sequence = "sequence"


class GradeWitness(BaseModel):
    """Testigo que permite revalidar un grado de forma independiente."""

    kind: WitnessKind
    degree: Optional[int] = Field(None, description="Grado de la (co)homología o índice de Ext no nulo")
    element: Optional[List[str]] = Field(None, description="Cociclo: elemento del núcleo fuera de la imagen")
    sequence: Optional[List[str]] = Field(None, description="Sucesión regular encontrada")
    power: Optional[int] = Field(None, description="Potencia del ideal en la que se obtuvo el testigo")


class StabilizationStep(BaseModel):
    power: int
    value: Optional[int] = None
    infinite_up_to: Optional[int] = None


class GradeReport(BaseModel):
    kind: GradeKind
    value: Optional[int] = Field(None, description="Grado; nulo si es infinito hasta la cota")
    infinite_up_to: Optional[int] = Field(None, description="Cota hasta la que se comprobó la anulación")
    searched_range: List[int] = Field(..., description="Intervalo [0, cota] explorado")
    witness: Optional[GradeWitness] = None
    stabilization: Optional[List[StabilizationStep]] = None
    stabilized: Optional[bool] = None
    seed: Optional[int] = None
    notes: List[str] = Field(default_factory=list)

    @property
    def infinite(self) -> bool:
        return self.value is None

    @property
    def magnitude(self) -> float:
        """Valor comparable: infinito queda por encima de cualquier natural."""
        return math.inf if self.value is None else self.value

    def label(self) -> str:
        if self.value is None:
            return f"∞ (≤{self.infinite_up_to})"
        return str(self.value)


class Verdict(str, Enum):
    verified = "verified"
    violated = "violated"
    inconclusive = "inconclusive"


class TheoremId(str, Enum):
    prop_geq = "prop-geq"
    thm_poly = "thm-poly"
    thm_scr = "thm-scr"
    lemma_depthht = "lemma-depthht"
    thm_trivext = "thm-trivext"
    thm_amg = "thm-amg"
    thm_dim = "thm-dim"
    prop_items = "prop-items"


class Comparison(BaseModel):
    """Una relación comprobada entre valores calculados."""

    name: str
    relation: str = Field(..., description="'=' o '<='")
    lhs: List[GradeReport] = Field(default_factory=list)
    rhs: List[GradeReport] = Field(default_factory=list)
    lhs_value: Optional[int] = Field(None, description="Valor entero del lado izquierdo; nulo si es infinito")
    rhs_value: Optional[int] = Field(None, description="Valor entero del lado derecho; nulo si es infinito")
    holds: bool


class VerificationReport(BaseModel):
    theorem_id: TheoremId
    instance: dict = Field(default_factory=dict)
    lhs: List[GradeReport] = Field(default_factory=list)
    rhs: List[GradeReport] = Field(default_factory=list)
    comparisons: List[Comparison] = Field(default_factory=list)
    verdict: Verdict
    reason: str = ""
    seed: Optional[int] = None
    timings: Optional[dict] = None


class IdealGrade(BaseModel):
    ideal: str
    certification: str
    grade: GradeReport


class FpdEstimate(BaseModel):
    value: Optional[int] = Field(None, description="Máximo de los grados; nulo si alguno es infinito")
    lower_bound: bool = Field(True, description="Falso solo si se afirmó que la lista es exhaustiva")
    breakdown: List[IdealGrade] = Field(default_factory=list)
