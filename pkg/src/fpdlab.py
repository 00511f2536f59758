"""fpdlab: Una herramienta de línea de comando para calcular grados y comprobar cotas de la dimensión finitista pequeña.

Lee scripts con declaraciones de cuerpos, anillos, ideales, módulos y construcciones (R[x], R(+)M y la
amalgamación A⋈^f J) y con consultas de bases de Gröbner, dimensión de Krull, grados (Koszul, Ext,
Čech, cohomología local y sucesiones regulares), estimaciones de fPD y verificaciones de teoremas.
Cada verificación calcula los dos lados de la relación sobre una instancia concreta y devuelve
'verified', 'violated' o 'inconclusive'.

Ejecutando el script sin parámetros, muestra la ayuda con los comandos disponibles.

Los comandos están definidos en ficheros separados en la subcarpeta commands.

No se implementa el caso de las series formales R[[x]] (fPD(R[[x]]) = fPD(R) + 1 y la versión de la
fórmula de la amalgamación con series): R[[x]] no es una k-álgebra finitamente presentada y no se
puede representar con bases de Gröbner.
"""

from _version import __version__

import typer
from typing_extensions import Annotated

import commands.run as run
import commands.schema as schema

app = typer.Typer(add_completion=False)


@app.callback(invoke_without_command=True)
def callback(
    ctx: typer.Context,
    version: Annotated[
        bool, typer.Option("--version", "-v", help="Imprime la versión.")
    ] = False,
    help: Annotated[
        bool, typer.Option("--help", "-h", help="Imprime este mensaje de ayuda.")
    ] = False,
):
    """Una herramienta de línea de comando para calcular grados y comprobar cotas de fPD.

    Para ver la ayuda de un comando: fpdlab <comando> --help
    """

    # Si se está ejecutando un comando, no ejecutar esta función
    if ctx.invoked_subcommand is not None:
        return

    if version:
        print(f"fpdlab {__version__}")
        return

    # Mostrar la ayuda si no se pasa ningún parámetro
    print(ctx.get_help())


app.command(name="run")(run.run_command)
app.command(name="schema")(schema.schema_command)


if __name__ == "__main__":
    app()
