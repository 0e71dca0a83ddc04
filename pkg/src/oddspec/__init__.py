"""Spectral conditions for odd cycles: eigensolver, deletion procedure,
exact cycle search, extremal constructions and inequality checkers."""

__version__ = "0.1.0"

from .graph import (Graph, GraphError, build, delete_vertex, induced_subgraph, is_bipartite,
                    min_degree, neighborhood_edge_count, parse_edge_list, read_edge_list,
                    to_edge_list, triangle_count, triangles_at_vertex, write_edge_list)
from .spectral import (ConvergenceError, NotApplicable, SpectralResult, lemma1_bound, lemma1_check,
                       lemma2_check, lemma2_rhs, rayleigh_quotient, spectral_radius)
from .constructions import (FamilySpec, fixtures, gnp, join_clique_empty, paper_join, turan_t2)
from .cycles import (CycleReport, CycleStatus, cycle_spectrum, erdos_gallai_guarantee,
                     has_cycle_of_length, theorem1_check)
from .extremal import (ProcedureParams, ProcedureTrace, check_theorem3_conclusion, premise_check,
                       run_procedure_p, validate_params)
from .verify import (CheckReport, StabilityCertificate, fact1_observation, fact2_check,
                     greedy_bipartite_extract, join_threshold_sweep, run_suite,
                     theorem2_certificate_check, triangle_threshold_search)
