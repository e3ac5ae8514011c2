"""Exact arithmetic for deciding when iterates of a rational map over a
number field are defined over Q."""

from .errors import *  # noqa: F401,F403
from .numfield import (
    QQ,
    Embedding,
    NFElem,
    NumberField,
    Subfield,
    adjoin_quadratic_root,
    cyclotomic_field,
    minimal_polynomial,
    nf_create,
    radical_field,
    rational_subfield,
    roots_in_field,
    subfield_contains,
    subfield_generated,
    subfield_intersect,
)
from .polyrat import (
    INF,
    Mobius,
    Poly,
    ProjPoint,
    RatFunc,
    compose,
    conjugate,
    evaluate,
    iterate,
    mobius_from_pair,
    poly_gcd,
    ratfunc_canonicalize,
)
from .classify import (
    ClassificationReport,
    PeriodicData,
    ShapeWitness,
    classify_B,
    field_of_definition,
    field_of_iterates,
    min_n_divisibility,
    poly_classify_A,
    poly_classify_An,
    ratfunc_in_An_direct,
    rational_periodic_points,
    report,
    shape_detect,
    sn,
)
from .families import (
    Curve,
    CurvePoint,
    RotationSpec,
    chebyshev,
    counterexample_map,
    lattes_phi,
    lattes_translated,
    rotation_map,
    rotation_with_rational_iterate,
    translate_by_2torsion,
)
from .pgl2 import (
    Mat2,
    eigen_data,
    pgl2_nth_root,
    power_class,
    proj_rational,
    ratio_power_degree,
    root_decompose,
)

__version__ = "0.1.0"
