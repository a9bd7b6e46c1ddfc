"""Finite fuzzy soft topological spaces with exact rational grades."""

from .algebra import (
    FuzzySoftError,
    FuzzySoftPoint,
    FuzzySoftSet,
    SpaceSignature,
    complement,
    decompose_points,
    intersect,
    intersect_all,
    point_in,
    subset_leq,
    union,
    union_all,
)
from .semi import (
    classify,
    equivalence_report,
    fsscl,
    fssint,
    is_semiclosed_def,
    is_semiclosed_char,
    is_semiopen_def,
    is_semiopen_char,
    property_suite,
)
from .topology import FuzzySoftTopology, ValidationReport, generate_from_subbasis, validate

__version__ = "0.1.0"
