import pandas as pd
from rich.table import Table
from rich.console import Console
from typing import Optional

from utils.bundle import QueryResult, ReportBundle, ResultStatus

SUMMARY_COLUMNS = ["línea", "consulta", "objetivo", "valor", "veredicto"]

VERDICT_STYLES = {"verified": "green", "violated": "red", "inconclusive": "yellow", "error": "red"}

# Consultas que se muestran al principio y al final de un resumen largo
SUMMARY_EDGE_ROWS = 5


def add_summary_rows_to_table(table: Table, df: pd.DataFrame) -> None:
    """Añade las consultas del resumen a la tabla, con el veredicto coloreado."""
    for _, row in df.iterrows():
        cells = list(row)
        style = VERDICT_STYLES.get(row["veredicto"])
        if style is not None:
            cells[-1] = f"[{style}]{row['veredicto']}[/{style}]"
        table.add_row(*cells)


def print_summary_table(df: pd.DataFrame, title: Optional[str] = None) -> None:
    """Imprime el resumen de consultas en la consola con Rich.

    En scripts con muchas consultas se muestran las primeras y las últimas SUMMARY_EDGE_ROWS y una
    fila que indica cuántas se omiten. Los veredictos se colorean según VERDICT_STYLES.
    """
    table = Table(title=title, show_header=True, header_style="bold")
    df_print = df.astype("str")
    for column_name in df_print.columns:
        table.add_column(column_name)

    hidden = df_print.shape[0] - 2 * SUMMARY_EDGE_ROWS
    if hidden <= 0:
        add_summary_rows_to_table(table, df_print)
    else:
        add_summary_rows_to_table(table, df_print.head(SUMMARY_EDGE_ROWS))
        table.add_row("...", f"{hidden} consultas más", *[""] * (df_print.shape[1] - 2))
        add_summary_rows_to_table(table, df_print.tail(SUMMARY_EDGE_ROWS))

    # La salida estándar puede estar ocupada por el informe JSON
    console = Console(stderr=True)
    console.print(table)


def _target(result: QueryResult) -> str:
    # La sentencia sin "query <tipo>"
    parts = result.statement.split(None, 2)
    return parts[2] if len(parts) == 3 else ""


def _value(result: QueryResult) -> str:
    if result.status == ResultStatus.error:
        return result.error.kind
    if result.groebner_basis is not None:
        return f"{len(result.groebner_basis)} elementos"
    if result.dimension is not None:
        return str(result.dimension)
    if result.grade is not None:
        return result.grade.label()
    if result.fpd is not None:
        value = "∞" if result.fpd.value is None else str(result.fpd.value)
        return f"≥ {value}" if result.fpd.lower_bound else value
    return result.verification.theorem_id.value


def _verdict(result: QueryResult) -> str:
    if result.status == ResultStatus.error:
        return "error"
    if result.verification is not None:
        return result.verification.verdict.value
    return "ok"


def bundle_to_dataframe(bundle: ReportBundle) -> pd.DataFrame:
    """Una fila por consulta del script."""
    rows = [[r.line, r.query, _target(r), _value(r), _verdict(r)] for r in bundle.results]
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def _summary_types(df: pd.DataFrame) -> pd.DataFrame:
    """La línea como entero y el resto como texto, también en un resumen sin consultas."""
    return df.astype({"línea": "int64", **{c: "string" for c in SUMMARY_COLUMNS[1:]}})


def save_summary_csv(df: pd.DataFrame, file_path: str) -> None:
    """Guarda el resumen de consultas en CSV separado por punto y coma."""
    _summary_types(df).to_csv(file_path, index=False, sep=";", encoding="utf-8")


def save_summary_parquet(df: pd.DataFrame, file_path: str) -> None:
    """Guarda el resumen de consultas en Parquet con pyarrow y un esquema fijo de columnas."""
    _summary_types(df).to_parquet(file_path, index=False, engine="pyarrow")
