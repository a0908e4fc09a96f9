"""Compositional on-the-fly synthesis for LTL over finite traces."""

from .formula import Formula, canonicalize, decompose, xnf
from .parser import ParseError, parse_formula, to_nnf
from .semantics import evaluate, evaluate_batch
from .spec import SynthesisSpec, load_spec
from .otf import OtfState, expand_full, initial_state, is_accepting, successor
from .dfa import (ExplicitDfa, accepts, minimize_hopcroft, minimize_moore, product,
                  trim_reachable)
from .game import (GameResult, WinningRegion, build_awr, check_realizable_otf,
                   ewin_agent_choices, get_awr_otf, solve_backward)
from .strategy import MooreStrategy, build_strategy, play_step, verify_strategy
from .compose import Verdict, compose_incremental, compose_individual, synthesize
from .limits import ResourceLimitError

__version__ = "0.1.0"
