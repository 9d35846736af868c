"""Connected components of spaces of surface group representations into compact Lie groups."""

__version__ = "0.1.0"

from .abelian import FgAbelianGroup, IsoType, doubling_subgroup, iso_type, quotient_by
from .components import (
    ComponentReport,
    Status,
    SurfaceSpec,
    applicability,
    check_nonempty,
    component_group,
    flat_bundle_report,
)
from .conjugacy import KacPoint, MarkingSpec, act_center, compute_J, preimage_components, stabilizer
from .groups import CenterElement, CompactGroupSpec, build_model, named_group
from .rootdata import CartanType, cartan_matrix, center_group, extended_diagram

__all__ = [
    "CartanType", "CenterElement", "CompactGroupSpec", "ComponentReport", "FgAbelianGroup",
    "IsoType", "KacPoint", "MarkingSpec", "Status", "SurfaceSpec", "act_center",
    "applicability", "build_model", "cartan_matrix", "center_group", "check_nonempty",
    "component_group", "compute_J", "doubling_subgroup", "extended_diagram",
    "flat_bundle_report", "iso_type", "named_group", "preimage_components", "quotient_by",
    "stabilizer",
]
