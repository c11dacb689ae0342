"""Locally decodable index codes for unicast problems on small graphs.

Constructions (fractional coloring, scalar minrank, acyclic-subset covers,
cyclic balancing, separation via covering codes, covering ILP/LP), exact
verification against algebraic and exhaustive oracles, and the achievable
locality/rate trade-off curve.
"""

from .coloring import (ABColoring, fractional_chromatic, fractional_coloring_code,
                       maximal_independent_sets, min_colors_fixed_b)
from .codes import (CodeMetrics, Decoder, LinearIndexCode, VerifyResult, assemble_code,
                    code_from_json, code_metrics, code_to_json, scalar_code,
                    time_share, verify_code)
from .covering import (Catalog, ComponentCode, CoverSolution, build_catalog,
                       covering_ilp, covering_lp, cycle_component,
                       exhaustive_partition_oracle, materialize_cover,
                       mds_parity_encoder, merged_catalog, minrank_component,
                       partial_clique_component, vectorize_component)
from .errors import (BudgetError, CodeFormatError, GraphFormatError, InfeasibleError,
                     SchemeError, ToolkitError)
from .fieldmath import (FieldSpec, GFMatrix, column_space_contains, min_weight_solution,
                        nullspace, rank, solve)
from .graphs import (SideInfoGraph, UndirectedGraph, girth_directed,
                     has_cyclic_automorphism, induced_subgraph, interference_graph,
                     is_directed_cycle, mais_size, parse_graph, serialize_graph,
                     topological_order)
from .minrank import FittingMatrix, minrank, optimal_scalar_encoder
from .schemes import (AISCover, ais_cover_code, cyclic_balanced_code,
                      find_covering_code, reorder_for_subset, separation_code,
                      t_subset_cover)
from .tradeoff import (LowerBoundCurve, TradeoffPoint, UpperEnvelope, achievable_points,
                       lower_bound_curve, three_cycle_beta, tradeoff_csv, upper_envelope)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
