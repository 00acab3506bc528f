"""Cohen-Macaulay style classification of finite simplicial complexes, in exact arithmetic."""
from .complex import SimplicialComplex, VoidComplexError, from_facets, join, mask_of, vertices_of
from .linalg import GF2, QQ, ExactMatrix, FieldSpec, kernel_basis, rank
from .homology import (BettiVector, boundary_matrix, homology_basis, inclusion_induced_map,
                       reduced_betti, reduced_cobetti)
from .enriched import (SizeCapError, SquarefreeTable, enriched_cohomology, enriched_homology,
                       girth, h_minus_one_is_k)
from .classify import (ClassificationReport, RouteDisagreement, Verdict, classify,
                       conjecture_scan, is_ab_design, is_bicm, is_buchsbaum, is_cm,
                       is_gorenstein_star, is_lcm, is_lcm_design, is_orientable_homology_manifold,
                       lcm_level, submaximal_d_checks)
from .designs import (NonIntegralError, bicm_f_polynomial, block_design_check, f_sharp,
                      f_shriek, lcm_design_lambda, link_fvector_prediction)
from . import generators

__all__ = [name for name in dir() if not name.startswith("_")]
