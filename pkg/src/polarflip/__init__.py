"""Exact discrete Morse data for complexified real hyperplane arrangements."""

from .arrangement import AffineSubspace, Arrangement, Hyperplane, restrict
from .faces import FacePoset, enumerate_faces
from .flag import Flag, build_flag, flag_2d, verify_flag
from .followup import decide_followup_2d, followup_order, is_followup, ssfol_flag, ssfol_order, \
    supersolvable_filtration
from .lattice import intersection_lattice
from .morse import SalvettiComplex, minimality_report, polar_matching
from .polar import PolarOrder, build_polar_order
from .sweep import default_orderings, enumerate_special_orderings, validate_special_ordering

__all__ = [
    "AffineSubspace", "Arrangement", "Hyperplane", "restrict", "FacePoset", "enumerate_faces",
    "Flag", "build_flag", "flag_2d", "verify_flag", "decide_followup_2d", "followup_order",
    "is_followup", "ssfol_flag", "ssfol_order", "supersolvable_filtration", "intersection_lattice",
    "SalvettiComplex", "minimality_report", "polar_matching", "PolarOrder", "build_polar_order",
    "default_orderings", "enumerate_special_orderings", "validate_special_ordering",
]
