import logging

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel


def print_error(error_message: str) -> None:
    Console(stderr=True).print(Panel(error_message, title="Error", title_align="left", border_style="red"))


def setup_logging(verbose: bool = False) -> None:
    """Envía los logs del núcleo a la salida de errores con Rich.
    La salida estándar queda libre para el informe JSON.
    """
    level = logging.DEBUG if verbose else logging.WARNING
    handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)
    logging.basicConfig(level=level, format="%(message)s", datefmt="[%X]", handlers=[handler], force=True)
