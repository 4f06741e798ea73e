"""Exact ampleness certification and polarization degree enumeration."""

from .lattice import (IntegralityGenerators, KummerClass, default_generators,
                      is_integral, is_primitive, pair, selfint)
from .ampleness import (CurveClassCandidate, NSData, SearchBounds,
                        check_proof_chain, find_orthogonal_violator,
                        ns_product, ns_rank_one, pair_with_candidate,
                        sufficient_ample, sufficient_ample_generic_picard)
from .representations import (Problem, RepresentationWitness, dominant_squares,
                              dominant_triangular, fifteen_bounded_squares,
                              fifteen_bounded_triangular, five_positive_squares,
                              solve, three_triangular, verify_range)
from .degrees import (DegreeRecord, Method, coverage_gaps, degrees_half8,
                      degrees_half16, degrees_integer, degrees_trope,
                      rational_family_degrees, sporadic_degrees,
                      theorem_main_set)
from .mukai import (DEFAULT_TWISTED_PARAMS, MukaiVector, NumericalSurfaceData,
                    SurfaceKind, WallBounds, WallSearchResult, dinfty_ample,
                    ell_delta, hilb_polarization, k3_ample_bound_check,
                    kummer_ample_bound, kummer_polarization, mukai_pair,
                    mukai_generalized_degree, twisted_k3_batch,
                    twisted_k3_degree, vector_from_cs, wall_search)

__version__ = "0.1.0"
