"""Complexes of words: exact combinatorial topology of subword identifications.

Build the complex whose simplices are the distinct subwords of a word,
compute its exact integral homology, run the collapsing matchings that
certify its homotopy type, and sweep every small word to cross-check the
classification (contractible or an odd-dimensional sphere).
"""

from .complexes import (
    DeltaComplex,
    barycentric_subdivide,
    build,
    elementary_collapse,
    free_pairs,
    incidence,
    is_isomorphic,
    is_pseudomanifold,
    is_simplicial,
    join,
)
from .homology import HomologyProfile, boundary_matrix, reduced_homology, smith_normal_form
from .morse import (
    Matching,
    alternating_collapse,
    full_matching,
    mu,
    reduce_step,
    reduce_to_core,
    validate_collapsing_order,
)
from .verify import check_tables, sweep
from .words import (
    HomotopyType,
    ReducedForm,
    Word,
    WordClassification,
    arrow,
    arrow_chain,
    canonicalize,
    classify,
    distinct_subwords,
    enumerate_canonical_words,
    euler_direct,
    euler_recursive,
    exp_presentations,
    format_word,
    fundamental_subword,
    height,
    is_decomposable,
    left_shifted,
    p_shifted,
    parse_word,
    predict_homotopy,
    reduced_form,
    right_shifted,
    xi,
)

__version__ = "0.1.0"

__all__ = [
    "DeltaComplex",
    "HomologyProfile",
    "HomotopyType",
    "Matching",
    "ReducedForm",
    "Word",
    "WordClassification",
    "alternating_collapse",
    "arrow",
    "arrow_chain",
    "barycentric_subdivide",
    "boundary_matrix",
    "build",
    "canonicalize",
    "check_tables",
    "classify",
    "distinct_subwords",
    "elementary_collapse",
    "enumerate_canonical_words",
    "euler_direct",
    "euler_recursive",
    "exp_presentations",
    "format_word",
    "free_pairs",
    "full_matching",
    "fundamental_subword",
    "height",
    "incidence",
    "is_decomposable",
    "is_isomorphic",
    "is_pseudomanifold",
    "is_simplicial",
    "join",
    "left_shifted",
    "mu",
    "p_shifted",
    "parse_word",
    "predict_homotopy",
    "reduce_step",
    "reduce_to_core",
    "reduced_form",
    "reduced_homology",
    "right_shifted",
    "smith_normal_form",
    "sweep",
    "validate_collapsing_order",
    "xi",
]
