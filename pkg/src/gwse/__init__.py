"""Synthesis of secure specification profiles for multi-player parity games."""
from .game import (Game, GameError, GameGraph, Lasso, ParseError, ValidationError,
                   buchi, co_buchi, game_from_dict, game_to_dict, induced_subgraph,
                   load_game, parse_game, serialize_game, trivial_spec, validate_game)
from .solver import (SolveResult, TwoPlayerView, attractor, cooperative_region,
                     edge_can_recur, recurrent_vertices, solve_zielonka)
from .templates import (AggregateUca, AssumptionProfile, SpecProfile, UcaTemplate,
                        assumption_of_others, conjoin, lasso_satisfies_uca,
                        template_from_dict, template_to_dict, to_ltl_string, uca_equal)
from .strategy import FiniteMemoryStrategy, memoryless
from .assumptions import approx_apa, build_assumption_arena, compute_uca
from .engine import (SynthesisTrace, build_win_arena, coalition_game, compute_win,
                     extract_strategy, o_compute_ge, with_environment)
from .oracle import (GwseReport, OracleRefusal, check_wse, enumerate_recurrences,
                     language_equivalent, preference_less, strategy_wins, verify_gwse)

__version__ = "0.1.0"
