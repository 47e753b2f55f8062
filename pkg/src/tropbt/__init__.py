"""Tropical bitangent classes of smooth plane quartics.

The pipeline runs from a coefficient table over a valued field to the dual
subdivision and the tropical curve, the seven bitangent classes, their shapes
up to the S3 symmetry of the plane, complex lifting multiplicities, real lifts
from coefficient signs, and a cross-check of the classes against the
effective theta characteristics of the skeleton.
"""

from .catalog import canonicalize, load_catalog, signature, weights
from .classes import enumerate_classes
from .newton import dual_curve, regular_subdivision, skeleton
from .pipeline import analyze
from .quartic import QuarticSpec, parse_spec
from .reality import extract_sign_params, real_condition, real_count
from .theta import class_theta_bijection, cycle_classes, linearly_equivalent, zharkov_theta

__version__ = "0.1.0"

__all__ = [
    "QuarticSpec", "analyze", "canonicalize", "class_theta_bijection", "cycle_classes", "dual_curve",
    "enumerate_classes", "extract_sign_params", "linearly_equivalent", "load_catalog", "parse_spec",
    "real_condition", "real_count", "regular_subdivision", "signature", "skeleton", "weights",
    "zharkov_theta",
]
