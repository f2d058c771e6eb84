"""Cell structure and decategorified 2-representations of projective bimodule 2-categories."""

from cellcalc.algebra import (
    Algebra,
    BasisElement,
    NakayamaPartial,
    Quiver,
    Relation,
    build_path_algebra,
    corner_algebra,
    enumerate_cores,
    is_core,
    nakayama_partial,
    proj_inj_match,
    socle_dimvec,
)
from cellcalc.bimodcat import (
    ID,
    ZERO,
    Absent,
    MorLabel,
    Subcat,
    F,
    closure,
    compose,
    is_weakly_fiat,
    mu,
    product_subcat,
)
from cellcalc.families import an_linear, star, two_vertex_ab, zigzag

__all__ = [
    "Absent",
    "Algebra",
    "BasisElement",
    "F",
    "ID",
    "MorLabel",
    "NakayamaPartial",
    "Quiver",
    "Relation",
    "Subcat",
    "ZERO",
    "an_linear",
    "build_path_algebra",
    "closure",
    "compose",
    "corner_algebra",
    "enumerate_cores",
    "is_core",
    "is_weakly_fiat",
    "mu",
    "nakayama_partial",
    "product_subcat",
    "proj_inj_match",
    "socle_dimvec",
    "star",
    "two_vertex_ab",
    "zigzag",
]
