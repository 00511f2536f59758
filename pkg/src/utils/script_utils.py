from pathlib import Path


def read_script(file_script: Path) -> str:
    """Lee un script desde un fichero.
    Primero se asume que el fichero está codificado en UTF-8 y, si se recibe un error al decodificar,
    se lee de nuevo con la codificación por defecto del Sistema Operativo.
    """
    try:
        return file_script.read_text(encoding="utf-8")
    except UnicodeDecodeError:
        return file_script.read_text()
