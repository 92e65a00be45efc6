"""Legendrian ribbons and Bennequin surfaces in open books given by Morse diagrams."""
from .arc import ArcDiagram, Arc, Wire, to_cusped, validate_arc_diagram, validate_cusped
from .exceptions import (EpsilonTooLarge, InvalidDiagram, MalformedGeometry,
                         NonGenericSlice, OpenBookError, ParseError, PreconditionViolation,
                         UnknownName)
from .front import (FrontStrand, FrontVertex, GraphFront, abstract_graph, builtin_front,
                    chains, random_graph_front, resolve_crossings, validate_front)
from .morse import (MorseDiagram, MorseVertex, TEdge, builtin_diagram, page_invariants,
                    validate_morse_diagram)
from .position import slanted_rectangular_approximation, to_arc_position
from .satellite import (PatternBraid, SurfaceSummary, cable, plumb, quasipositive_annulus,
                        satellite, summarize, torus_pattern)
from .surface import (Band, BennequinSurface, bennequin_from_bands, boundary_components,
                      destabilize, euler_characteristic, invariant_report,
                      positive_markov_stabilization, ribbon_front, ribbon_to_bennequin,
                      self_linking)

__version__ = "0.1.0"

__all__ = [
    "ArcDiagram",
    "Arc",
    "Wire",
    "to_cusped",
    "validate_arc_diagram",
    "validate_cusped",
    "EpsilonTooLarge",
    "InvalidDiagram",
    "MalformedGeometry",
    "NonGenericSlice",
    "OpenBookError",
    "ParseError",
    "PreconditionViolation",
    "UnknownName",
    "FrontStrand",
    "FrontVertex",
    "GraphFront",
    "abstract_graph",
    "builtin_front",
    "chains",
    "random_graph_front",
    "resolve_crossings",
    "validate_front",
    "MorseDiagram",
    "MorseVertex",
    "TEdge",
    "builtin_diagram",
    "page_invariants",
    "validate_morse_diagram",
    "slanted_rectangular_approximation",
    "to_arc_position",
    "PatternBraid",
    "SurfaceSummary",
    "cable",
    "plumb",
    "quasipositive_annulus",
    "satellite",
    "summarize",
    "torus_pattern",
    "Band",
    "BennequinSurface",
    "bennequin_from_bands",
    "boundary_components",
    "destabilize",
    "euler_characteristic",
    "invariant_report",
    "positive_markov_stabilization",
    "ribbon_front",
    "ribbon_to_bennequin",
    "self_linking",
]
