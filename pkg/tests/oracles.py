"""Brute-force reference procedures.  Nothing here touches automata."""
from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from ltlfsynth.dfa import ExplicitDfa, accepts_batch
from ltlfsynth.semantics import all_traces, evaluate, evaluate_batch
from ltlfsynth.spec import SynthesisSpec
from ltlfsynth.random_specs import random_formula


def props3():
    return {"a": 0, "b": 1, "c": 2}


def formula_corpus(n, seed=0, max_size=8, props=None, **kw):
    rng = random.Random(seed)
    props = props or props3()
    return [random_formula(rng, props, max_size, **kw) for _ in range(n)]


def language_matches_formula(g: ExplicitDfa, phi, max_len: int) -> bool:
    for length in range(1, max_len + 1):
        traces = all_traces(g.n_props, length)
        if not np.array_equal(accepts_batch(g, traces), evaluate_batch(traces, phi)):
            return False
    return True


def same_bounded_language(g1: ExplicitDfa, g2: ExplicitDfa, max_len: int) -> bool:
    for length in range(1, max_len + 1):
        traces = all_traces(g1.n_props, length)
        if not np.array_equal(accepts_batch(g1, traces), accepts_batch(g2, traces)):
            return False
    return True


def agent_wins_within(spec: SynthesisSpec, depth: int) -> bool:
    """Exhaustive game tree: can the agent force a satisfying prefix within ``depth`` rounds?"""
    nx, ny = spec.n_inputs, spec.n_outputs
    phi = spec.phi

    @lru_cache(maxsize=None)
    def wins(prefix: tuple, left: int) -> bool:
        if left == 0:
            return False
        for y in range(1 << ny):
            if all(_round_ok(prefix + (x | y << nx,), left) for x in range(1 << nx)):
                return True
        return False

    def _round_ok(rho, left):
        return evaluate(rho, phi) or wins(rho, left - 1)

    return wins((), depth)
