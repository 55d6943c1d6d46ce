"""Strongly regular graphs, the 4-vertex condition and switching in polar spaces."""

from .field import GF, FieldElement, FieldMismatchError
from .geometry import FormedSpace, Subspace, projective_points
from .graph import (FourVCReport, Graph, NotStronglyRegular, SrgParams, abc_params,
                    check_srg, decode_graph6, encode_graph6, four_vertex_check,
                    lambda_mu_graph, local_params, subconstituent)
from .symmetry import (GroupDescription, automorphism_group, canonical_form,
                       canonical_labeling, is_isomorphic, orbit_lengths, rank_of)
from .switching import (SwitchingContext, SwitchingPlan, SymmetricDesign,
                        build_gamma_phi, count_double_cosets, emptying_analysis,
                        enumerate_double_coset_reps, pgl_on_hyperplanes, wqh_swap)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FieldElement",
    "FieldMismatchError",
    "FormedSpace",
    "Subspace",
    "projective_points",
    "FourVCReport",
    "Graph",
    "NotStronglyRegular",
    "SrgParams",
    "abc_params",
    "check_srg",
    "decode_graph6",
    "encode_graph6",
    "four_vertex_check",
    "lambda_mu_graph",
    "local_params",
    "subconstituent",
    "GroupDescription",
    "automorphism_group",
    "canonical_form",
    "canonical_labeling",
    "is_isomorphic",
    "orbit_lengths",
    "rank_of",
    "SwitchingContext",
    "SwitchingPlan",
    "SymmetricDesign",
    "build_gamma_phi",
    "count_double_cosets",
    "emptying_analysis",
    "enumerate_double_coset_reps",
    "pgl_on_hyperplanes",
    "wqh_swap",
]
