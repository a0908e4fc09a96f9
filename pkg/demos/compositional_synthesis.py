"""
Synthesis one conjunct at a time
================================

A conjunction is solved by folding its conjuncts into a winning region.
Each verdict also says where unrealizability was detected.
"""

from ltlfsynth import SynthesisSpec, synthesize
from ltlfsynth.compose import compose_incremental
from ltlfsynth.game import get_awr_otf
from ltlfsynth.strategy import induced_outputs, to_text

specs = {
    "arbiter": "G(r1 -> N g1) && G(r2 -> N g2) && G(!g1 || !g2) && F(g1 || g2)",
    "conflict": "F g1 && G !g1 && G(r1 -> N g2)",
    "hopeless": "F r1 && G(g1 || g2)",
}
for name, text in specs.items():
    spec = SynthesisSpec.parse(text, inputs=["r1", "r2"], outputs=["g1", "g2"])
    for mode in ("incremental", "individual", "monolithic"):
        v = synthesize(spec, mode)
        print(f"{name:9s} {mode:12s} realizable={v.realizable!s:5s} provenance={v.provenance}")

# The strategy for the arbiter, as text and along one input sequence.
spec = SynthesisSpec.parse(specs["arbiter"], inputs=["r1", "r2"], outputs=["g1", "g2"])
v = synthesize(spec)
print(to_text(v.strategy))
print("outputs when both request:", induced_outputs(v.strategy, [3, 3]))

# Skipping outputs that are already known to lose keeps the search small.
base = SynthesisSpec.parse("G g1", ["r1"], ["g1", "g2", "g3"])
nxt = base.with_formula(SynthesisSpec.parse("F(g2 && X g3)", ["r1"], ["g1", "g2", "g3"]).phi)
w1 = get_awr_otf(base)
for prune in (True, False):
    stats = {}
    compose_incremental(w1, nxt, prune=prune, stats=stats)
    print(f"prune={prune}: {stats['expansions']} pair states expanded")
