from .families import FAMILIES, PretzelFamily, TorusFamily, TwistFamily
from .io import default_table, dumps, load, loads, open_table
from .records import KnotRecord, connected_sum, mirror, validate
from .table import KnotTable

__all__ = [
    "FAMILIES",
    "KnotRecord",
    "KnotTable",
    "PretzelFamily",
    "TorusFamily",
    "TwistFamily",
    "connected_sum",
    "default_table",
    "dumps",
    "load",
    "loads",
    "mirror",
    "open_table",
    "validate",
]
