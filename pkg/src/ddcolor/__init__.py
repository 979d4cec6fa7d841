"""Dynamic decentralized coloring of complex networks."""

__version__ = "0.1.0"

from .graph import (ComponentLabeling, Graph, GraphValidationError, build_graph,
                    connected_components, largest_connected_component)
from .generators import (ER, SF, File, GenerationError, TwoCommunity, gen_er,
                         gen_powerlaw_config, gen_two_community, realize)
from .coloring import (Coloring, DdcConfig, DdcResult, Termination, WeightScheme,
                       best_colors, candidate_lci, ddc_step, has_defect, lci,
                       random_coloring, run_ddc)
from .metrics import (MetricsRecord, defective_subgraph, fraction_defective,
                      max_defective_degree, measure, r_max)
from .experiments import (BetaSearchResult, SweepRow, SweepSpec, convergence_profile,
                          find_optimal_beta, run_sweep, summarize)
