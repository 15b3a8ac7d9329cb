from .annealer import SearchConfig, SearchResult, run, run_many
from .canonical import canonical_complex, canonicalize, digest
from .complex import (Complex, ValidationReport, barycentric_subdivide,
                      boundary_simplex, build_complex, cyclic_bundle,
                      disjoint_union, stacked_sphere, validate)
from .enumerator import (CensusRecord, EnumerationTask, census_summary,
                         enumerate, enumerate_parallel, filter_missing_facets,
                         g2_minimal_candidates, split_task)
from .facevec import (FaceVector, GVector, HVector, admissible_pairs,
                      f_from_pair, g_vector, g2_lower_bound, h_vector,
                      heawood_min_vertices, min_vertices, mu_statistic,
                      predict_surgery, tight_neighborly_rows)
from .gamma import (GammaEntry, Ledger, certify, find_neighborly_path,
                    gamma_lower, gamma_star_upper_direct,
                    gamma_star_upper_via_path, hamiltonian_cycle_in_link,
                    is_neighborly)
from .homology import (HomologyProfile, betti_mod_p, boundary_matrix,
                       integral_homology, orientable, smith_normal_form)
from .link_types import LinkType, classify_reduced_link, load_catalog
from .moves import (FlipState, MoveDescriptor, apply, legal_moves, make_rng,
                    weighted_random_move)
from .stats import TriangulationStats
from .surgery import (FacetMatching, add_handle, connected_sum,
                      missing_facets, split_along_missing_facet, subdivide)
from .utils import read_complex, write_complex

__all__ = [
    "Complex",
    "ValidationReport",
    "build_complex",
    "validate",
    "barycentric_subdivide",
    "disjoint_union",
    "boundary_simplex",
    "stacked_sphere",
    "cyclic_bundle",
    "read_complex",
    "write_complex",
    "canonicalize",
    "canonical_complex",
    "digest",
    "FaceVector",
    "HVector",
    "GVector",
    "f_from_pair",
    "h_vector",
    "g_vector",
    "predict_surgery",
    "g2_lower_bound",
    "min_vertices",
    "heawood_min_vertices",
    "tight_neighborly_rows",
    "mu_statistic",
    "admissible_pairs",
    "MoveDescriptor",
    "FlipState",
    "legal_moves",
    "apply",
    "weighted_random_move",
    "make_rng",
    "FacetMatching",
    "subdivide",
    "connected_sum",
    "add_handle",
    "missing_facets",
    "split_along_missing_facet",
    "HomologyProfile",
    "boundary_matrix",
    "smith_normal_form",
    "integral_homology",
    "betti_mod_p",
    "orientable",
    "LinkType",
    "load_catalog",
    "classify_reduced_link",
    "EnumerationTask",
    "CensusRecord",
    "enumerate",
    "enumerate_parallel",
    "split_task",
    "census_summary",
    "filter_missing_facets",
    "g2_minimal_candidates",
    "SearchConfig",
    "SearchResult",
    "run",
    "run_many",
    "is_neighborly",
    "hamiltonian_cycle_in_link",
    "gamma_star_upper_direct",
    "gamma_star_upper_via_path",
    "gamma_lower",
    "find_neighborly_path",
    "certify",
    "GammaEntry",
    "Ledger",
    "TriangulationStats",
]
