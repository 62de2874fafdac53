"""Monotone bargaining games, tight game forms and their simple Nash equilibria."""

from .effectivity import blocking_strategy, greedy_effective, hypergraph_effective
from .errors import (AmbiguousCellError, BargainError, BoundExceededError, EmptyCellError,
                     InvalidDealSetError, NonTightError, ParseError, RealizationError, ValidationError)
from .hypergraph import (Hypergraph, check_dual, check_self_dual, dualize, gen_fano, gen_symmetric,
                         gen_wheel, induced_correspondence, is_transversal, merge_outcomes,
                         row_column_hypergraphs, seymour_join, sperner_reduce)
from .jordan import PlanarMap, jordan_correspondence, minimal_connectors
from .monotone import (Correspondence, MonotoneMap, build_correspondence, count_strategies, deals,
                       enumerate_monotone_maps, punishing_strategy, realize_deals)
from .multiplayer import build3, certify_no_ne, certify_not_tight, coalition_hypergraphs, deals3
from .solver import (SimpleEquilibrium, UtilityProfile, brute_force_equilibria, check_pm1_solvability,
                     enumerate_game_forms, solve_bargaining, solve_correspondence, solve_tight,
                     verify_equilibrium)

__version__ = "0.1.0"
