"""
From formulas to automata
=========================

Parse a formula, look at its negation normal form, and turn it into an
explicit DFA over every letter of its alphabet.
"""

from ltlfsynth import parse_formula
from ltlfsynth.dfa import accepts, minimize_hopcroft, to_dot
from ltlfsynth.otf import expand_full, initial_state, successor
from ltlfsynth.semantics import evaluate, trace

props = {}
phi = parse_formula("G(req -> F grant)", props)
print("normal form:", phi)
print("propositions:", props)

# Stepping by hand: each state is a residual obligation plus an acceptance bit.
s = initial_state(phi)
for letter in [{"req"}, set(), {"grant"}]:
    sigma = sum(1 << props[p] for p in letter)
    s = successor(s, sigma)
    print(f"after {sorted(letter) or '{}'}: {s}")

# The full automaton, then its minimal form.
alphabet = tuple(sorted(props, key=props.get))
g = expand_full(phi, alphabet)
m = minimize_hopcroft(g)
print(f"{g.n_states} states, {m.n_states} after minimization")

# Automaton and evaluator agree on any trace.
rho = trace([{"req"}, {"req"}, {"grant"}], props)
print("accepted:", accepts(m, rho), "satisfied:", evaluate(rho, phi))

with open("request_grant.dot", "w") as fh:
    fh.write(to_dot(m, name="request_grant"))
