"""Versión de fpdlab; se copia en cada informe JSON."""

__version__ = "0.1.0"
