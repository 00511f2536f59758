import json
import sys
from pathlib import Path

import typer
from typing_extensions import Annotated

from utils.bundle import ReportBundle
from utils.console import print_error


def bundle_schema_json() -> str:
    return json.dumps(ReportBundle.model_json_schema(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def schema_command(
    output_file_path: Annotated[
        Path,
        typer.Option(
            "--out",
            "-o",
            help="Ruta a un fichero para guardar el esquema. Si no se indica, se imprime.",
            show_default=False,
            dir_okay=False,
            resolve_path=True,
        ),
    ] = None,
):
    """Imprime el esquema JSON del documento que genera el comando run."""
    text = bundle_schema_json()
    if output_file_path is None:
        sys.stdout.write(text)
        return
    try:
        output_file_path.write_text(text, encoding="utf-8")
    except OSError as e:
        print_error(f"No se pudo escribir el fichero {output_file_path}: {e}")
        sys.exit(1)
