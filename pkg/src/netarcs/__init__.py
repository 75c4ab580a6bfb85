"""Exact tools for ovals and hyperovals of Desarguesian nets over finite fields."""

from .constructions import REGISTRY, Construction, ConstructionError, build, constructions_for
from .geometry import AffinePoint, Collineation, Slope, equivalent, point, slope_of
from .gf import FieldElement, FieldSpec, field_make, field_of_order, frobenius, parse_field
from .nets import ArcReport, NetSpec, PointSet, find_quads, is_arc, secant_count_check
from .search import (
    SearchResult,
    SearchTask,
    count_orbits,
    exists_arc,
    resolve_open_cell,
    table_H_d,
    table_O_d,
    verify_nonexistence_suite,
)

__version__ = "0.1.0"
