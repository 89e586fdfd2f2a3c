"""Dimensions of framed instanton homology of Dehn surgeries over F2 and C.

Closed-form dimension counts from two knot invariants per field, exact
triangle consistency checks, Froyshov's q3 on surgeries, L-space and
SU(2)-abelian obstructions, bound propagation over knot relations, and the
F2[x]-module algebra underlying the dimension counts.
"""

from .dims import dim_c, dim_f2, t2, torsion_summands, triangle_check, triangle_scan
from .froyshov import q3_branch, q3_surgery
from .knotdb import KnotRecord, KnotTable, default_table
from .obstruct import lspace_slopes, su2_abelian_obstruction, torsion_free
from .slope import INFINITY, BundleClass, Slope, farey_triple

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "BundleClass",
    "KnotRecord",
    "KnotTable",
    "Slope",
    "default_table",
    "dim_c",
    "dim_f2",
    "farey_triple",
    "lspace_slopes",
    "q3_branch",
    "q3_surgery",
    "su2_abelian_obstruction",
    "t2",
    "torsion_free",
    "torsion_summands",
    "triangle_check",
    "triangle_scan",
]
