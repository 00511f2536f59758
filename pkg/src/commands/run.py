import sys
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return str(self.value).__format__(format_spec)
from pathlib import Path

import typer
from pydantic import ValidationError
from typing_extensions import Annotated

from algebra.errors import FpdlabError
from utils.bundle import RunConfig, emit_report
from utils.console import print_error, setup_logging
from utils.dataframe_utils import (
    bundle_to_dataframe,
    print_summary_table,
    save_summary_csv,
    save_summary_parquet,
)
from utils.executor import execute
from utils.script import parse_script
from utils.script_utils import read_script


class SummaryFileFormat(StrEnum):
    csv = "csv"
    parquet = "parquet"


def run_command(
    file_script: Annotated[
        Path,
        typer.Argument(
            help="Ruta a un fichero con el script de declaraciones y consultas.",
            show_default=False,
            exists=True,
            file_okay=True,
            dir_okay=False,
            writable=False,
            readable=True,
            resolve_path=True,
        ),
    ],
    output_file_path: Annotated[
        str,
        typer.Option(
            "--out",
            "-o",
            help="Ruta del fichero JSON con los resultados. Con '-' se escribe en la salida estándar. Por defecto es el nombre del script con extensión .json.",
            show_default=False,
        ),
    ] = None,
    power_cap: Annotated[
        int,
        typer.Option("--power-cap", help="Potencia máxima para los grados de Čech y de cohomología local.", min=1),
    ] = 8,
    grade_bound: Annotated[
        int,
        typer.Option("--grade-bound", help="Cota superior de los grados que se exploran.", min=1),
    ] = 12,
    trials: Annotated[
        int,
        typer.Option("--trials", help="Intentos por paso al buscar elementos regulares.", min=1),
    ] = 200,
    seed: Annotated[
        int,
        typer.Option("--seed", help="Semilla de todas las elecciones aleatorias."),
    ] = 0,
    budget: Annotated[
        int,
        typer.Option(
            "--budget",
            help="Tamaño máximo de una base de Gröbner.",
            envvar="FPDLAB_BUDGET",
            min=1,
        ),
    ] = 5000,
    pair_budget: Annotated[
        int,
        typer.Option("--pair-budget", help="Cantidad máxima de pares S procesados en una base de Gröbner.", min=1),
    ] = 200_000,
    assume_maximal: Annotated[
        bool,
        typer.Option("--assume-maximal", help="Acepta como maximales los ideales que no se pueden confirmar."),
    ] = False,
    equidimensional: Annotated[
        bool,
        typer.Option("--equidimensional", help="Permite calcular alturas como dim(R) - dim(R/p)."),
    ] = False,
    exhaustive: Annotated[
        bool,
        typer.Option("--exhaustive", help="Indica que la lista de ideales maximales de fpd es completa."),
    ] = False,
    timings: Annotated[
        bool,
        typer.Option("--timings", help="Incluye los tiempos en milisegundos en el informe."),
    ] = False,
    print_summary: Annotated[
        bool,
        typer.Option(
            "--print",
            "-p",
            help="Imprime un resumen con una fila por consulta. Si son más de 10 consultas sólo imprime las 5 primeras y las 5 últimas.",
        ),
    ] = False,
    summary_file_path: Annotated[
        Path,
        typer.Option(
            "--summary",
            help="Ruta a un fichero para guardar el resumen de las consultas.",
            show_default=False,
            dir_okay=False,
            resolve_path=True,
        ),
    ] = None,
    summary_file_format: Annotated[
        SummaryFileFormat,
        typer.Option(
            "--summaryformat",
            help="Formato del fichero del resumen.",
            case_sensitive=False,
        ),
    ] = SummaryFileFormat.csv,
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-V", help="Muestra los mensajes de depuración del cálculo."),
    ] = False,
):
    """Ejecuta un script de fpdlab y guarda los resultados de sus consultas en un documento JSON.

    El código de salida es 0 si todo fue bien, 1 si alguna consulta falló y 2 si alguna verificación resultó 'violated'.
    """
    setup_logging(verbose)

    if output_file_path is None:
        # El nombre del fichero de salida por defecto es el nombre del script
        output_file_path = f"{file_script.stem}.json"

    try:
        config = RunConfig(
            power_cap=power_cap,
            grade_bound=grade_bound,
            trials=trials,
            seed=seed,
            budget=budget,
            pair_budget=pair_budget,
            assume_maximal=assume_maximal,
            equidimensional=equidimensional,
            exhaustive=exhaustive,
            timings=timings,
            output=output_file_path,
        )
    except ValidationError as e:
        print_error(f"Configuración no válida:\n{e}")
        sys.exit(1)

    try:
        script = parse_script(read_script(file_script))
    except OSError as e:
        print_error(f"No se pudo leer el script {file_script}: {e}")
        sys.exit(1)
    except FpdlabError as e:
        print_error(f"{file_script.name}: {e}")
        sys.exit(1)

    bundle = execute(script, config, file_script.name)

    try:
        emit_report(bundle, output_file_path)
    except OSError as e:
        print_error(f"No se pudo escribir el fichero {output_file_path}: {e}")
        sys.exit(1)

    if print_summary or summary_file_path is not None:
        df = bundle_to_dataframe(bundle)
        if print_summary:
            print_summary_table(df, title=file_script.name)
        if summary_file_path is not None:
            if summary_file_format == SummaryFileFormat.csv:
                save_summary_csv(df, summary_file_path)
            elif summary_file_format == SummaryFileFormat.parquet:
                save_summary_parquet(df, summary_file_path)

    if bundle.exit_code:
        sys.exit(bundle.exit_code)
