"""Finite cyclic actions on closed orientable surfaces.

Data sets, compatibility moves, necklace decompositions, Fix-locus
bookkeeping, hyperbolic polygon realizations and fat-graph automorphisms.
"""

from surface_cyclic.errors import SurfaceCyclicError
from surface_cyclic.dataset import (
    ConePair,
    DataSet,
    InvalidDataSet,
    canonicalize,
    classify,
    enumerate_datasets,
    fix_dimension_harvey,
    genus,
    is_irreducible,
    orbit_structure,
    reduction_orbit_counts,
    validate,
)
from surface_cyclic.compatibility import (
    CompatSite,
    CompositionResult,
    compose_full,
    compose_pair,
    compose_self,
    toral_add,
    toral_subtract,
)
from surface_cyclic.necklace import (
    FixDescriptor,
    LinearChain,
    Necklace,
    decompose,
    fix_descriptor,
    fix_dimension_necklace,
    max_reduction_system_size,
    realize,
)
from surface_cyclic.hyperbolic import pairing_word, polygon_spec, quotient_check, render_svg, solve_metrics
from surface_cyclic.fatgraph import FatGraph, automorphisms, induced_signature, orbit_feasibility

__version__ = "0.1.0"

__all__ = [
    "SurfaceCyclicError",
    "ConePair",
    "DataSet",
    "InvalidDataSet",
    "canonicalize",
    "classify",
    "enumerate_datasets",
    "fix_dimension_harvey",
    "genus",
    "is_irreducible",
    "orbit_structure",
    "reduction_orbit_counts",
    "validate",
    "CompatSite",
    "CompositionResult",
    "compose_full",
    "compose_pair",
    "compose_self",
    "toral_add",
    "toral_subtract",
    "FixDescriptor",
    "LinearChain",
    "Necklace",
    "decompose",
    "fix_descriptor",
    "fix_dimension_necklace",
    "max_reduction_system_size",
    "realize",
    "pairing_word",
    "polygon_spec",
    "quotient_check",
    "render_svg",
    "solve_metrics",
    "FatGraph",
    "automorphisms",
    "induced_signature",
    "orbit_feasibility",
]
