"""Exact verification of Koszulity for graded path categories of graphs.

Build the quotient path category of a finite simple connected graph over
an exact field, work with its graded modules and resolutions, and check
that every Ext class between simples sits on the Koszul diagonal.

>>> from pathkoszul import Graph, build_category, field_from_name
>>> from pathkoszul import koszulity_verdict
>>> cat = build_category(Graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)]),
...                      field_from_name("fp:32003"))
>>> koszulity_verdict(cat, 6)["verdict"]
'pass'
"""

from .errors import (EdgeAbsent, HypothesisViolation, NotComposable,
                     NotNeighbors, NotProjective, ParseError,
                     PathKoszulError, Truncated, UnknownVertex,
                     ValidationError, VerificationError, ZeroModule)
from .linalg import (Mat, PrimeField, RationalField, backend_name,
                     compiled_available, field_from_name,
                     force_pure_backend)
from .graphs import (Graph, bridges, cycle_vertices, extendable,
                     has_infinite_walk, load_graph, load_graph_file, pick_extension)
from .category import (BasisElement, PathCategory, build_category, op_dual,
                       relation_instances, verify_category)
from .modules import (FreeModule, GradedModule, ModuleHom, check_module,
                      cokernel, direct_sum, dualize, free_module,
                      hom_from_generators, hom_space, identity_hom, image,
                      invert_iso, iso_as_standard_mw, ker_im_coker, kernel,
                      projective, projective_cover, shift_module, simple,
                      standard_mw, top_socle, zero_hom, zero_module)
from .complexes import (ChainMap, Complex, cone, direct_sum_complexes,
                        homology, is_exact_resolution, lift_to_chain_map,
                        linear_up_to, linearity_profile, minimal_resolution)
from .koszul import (ResolutionEngine, ResolutionReport, SesTriple, build_A,
                     build_B, build_C, ext_table, ext_via_hom_complex,
                     get_engine, koszulity_verdict, mcor_isomorphism,
                     ses_alpha, ses_beta, ses_gamma, summand_table)

__version__ = "0.1.0"

__all__ = [
    "EdgeAbsent", "HypothesisViolation", "NotComposable", "NotNeighbors",
    "NotProjective", "ParseError", "PathKoszulError", "Truncated",
    "UnknownVertex", "ValidationError", "VerificationError", "ZeroModule",
    "Mat", "PrimeField", "RationalField", "backend_name",
    "compiled_available", "field_from_name", "force_pure_backend",
    "Graph", "bridges", "cycle_vertices", "extendable", "has_infinite_walk",
    "load_graph", "load_graph_file", "pick_extension",
    "BasisElement", "PathCategory", "build_category", "op_dual",
    "relation_instances", "verify_category",
    "FreeModule", "GradedModule", "ModuleHom", "check_module", "cokernel",
    "direct_sum", "dualize", "free_module", "hom_from_generators",
    "hom_space", "identity_hom", "image", "invert_iso",
    "iso_as_standard_mw", "ker_im_coker", "kernel", "projective",
    "projective_cover", "shift_module", "simple", "standard_mw",
    "top_socle", "zero_hom", "zero_module",
    "ChainMap", "Complex", "cone", "direct_sum_complexes", "homology",
    "is_exact_resolution", "lift_to_chain_map", "linear_up_to",
    "linearity_profile", "minimal_resolution",
    "ResolutionEngine", "ResolutionReport", "SesTriple", "build_A",
    "build_B", "build_C", "ext_table", "ext_via_hom_complex", "get_engine",
    "koszulity_verdict", "mcor_isomorphism", "ses_alpha", "ses_beta",
    "ses_gamma", "summand_table",
    "__version__",
]
