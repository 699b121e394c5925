"""Virtual n-strings: chord diagrams, based matrices, homotopy invariants."""

from .diagram import (DiagramMove, End, GenusReport, MoveError, Multistring,
                      ParseError, apply_move, canonical_surface_genus,
                      enumerate_applicable_moves, fixture_sigma, fixture_tau,
                      gen_alpha, gen_beta, induced_string, inverse_move,
                      parse_multistring, random_multistring,
                      reverse_all_arrows, reverse_circle, serialize, validate)
from .pairing import (BasedMatrix, WovenBasedMatrix, based_matrix, dot,
                      format_matrix, integer_rank, linking, matrix_to_json,
                      multistring_based_matrix, n_of, validate_woven)
from .homology import (MatrixMove, MatrixMoveError, MoveCertificate,
                       ReductionUndetermined, apply_matrix_move, classify,
                       enumerate_intersection_moves, intersection_orbit,
                       is_primitive, normalize_move_sequence,
                       reduce_to_primitive, replay_certificate)
from .invariants import (InvariantReport, LaurentPoly, genus_lower_bound,
                         invariant_report, rho_family, u_components,
                         u_invariant, u_poly_1string, u_sum)
from .iso import (DistinguishVerdict, WovenIsomorphism, distinguish,
                  homologous_primitive_equiv, verify_iso, woven_iso)

__version__ = "0.1.0"
