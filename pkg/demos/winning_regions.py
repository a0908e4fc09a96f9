"""
Games on automata
=================

Treat the DFA of a formula as a game: the agent picks outputs first, the
environment answers with inputs, and the agent wins once the trace read so
far is accepted.
"""

import numpy as np

from ltlfsynth import SynthesisSpec
from ltlfsynth.game import (ewin_agent_choices, get_awr_otf, solve_backward, solve_explicit)
from ltlfsynth.otf import expand_full

spec = SynthesisSpec.parse("G(x -> N y) && F(y && X y)", inputs=["x"], outputs=["y"])
g = expand_full(spec.phi, spec.alphabet)
result = solve_backward(g, spec.n_inputs)
print("winning states:", np.flatnonzero(result.awin).tolist())
print("ranks:", result.rank.tolist())
print("rank of the initial state:", result.rank_of(g.init))

# The same region, found by exploring only what is reachable.
w = get_awr_otf(spec)
print(w)
print("identical to the explicit pipeline:", w.same_structure(solve_explicit(spec)))

# Outputs that let the environment push the play into the losing sink.
for s in w.winning_states:
    print(f"state {s}: avoid outputs {sorted(ewin_agent_choices(w, s))}")

# A spec the agent cannot win: the environment controls x.
print("F x realizable:", get_awr_otf(SynthesisSpec.parse("F x", ["x"], ["y"])) is not None)
