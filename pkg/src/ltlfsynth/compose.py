"""Compositional synthesis for conjunctive LTLf specifications.

The driver first checks every conjunct on its own (one unrealizable
conjunct makes the whole specification unrealizable), then folds the
conjuncts into a running winning region, starting from the region of
``true``.  Each fold step returns the winning region of the conjunction
so far, or ``None`` as soon as that conjunction is unrealizable.

Two fold steps are provided: :func:`compose_individual` builds the new
conjunct's region separately and intersects, while :func:`compose_incremental`
searches the product of the running region with the new conjunct's
on-the-fly DFA, skipping agent outputs the running region already knows
to be losing.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import dfa as dfa_mod
from .formula import closure, decompose
from .game import (ForwardSearch, WinningRegion, build_awr, check_realizable_otf,
                   ewin_agent_choices, get_awr_otf, solve_backward)
from .limits import DEFAULT_MAX_STATES
from .otf import OtfDfa
from .spec import SynthesisSpec
from .strategy import MooreStrategy, build_strategy, find_counterexample

MODES = ("incremental", "individual", "monolithic")
ORDERS = ("given", "size-asc")


@dataclass(frozen=True)
class Provenance:
    """How a verdict was reached.

    ``conjunct``: conjunct ``index`` alone is unrealizable (no composition ran);
    ``composed``: the first ``index`` conjuncts composed are unrealizable;
    ``full``: the whole conjunction was composed.
    """
    kind: str
    index: int | None = None

    def __str__(self):
        return self.kind if self.index is None else f"{self.kind}:{self.index}"


def unrealizable_conjunct(i: int) -> Provenance:
    return Provenance("conjunct", i)


def unrealizable_after_composing(i: int) -> Provenance:
    return Provenance("composed", i)


FULL_COMPOSITION = Provenance("full")


@dataclass
class Verdict:
    realizable: bool
    provenance: Provenance
    strategy: MooreStrategy | None = None
    region: WinningRegion | None = None
    verified: bool | None = None
    counterexample: list[int] | None = None
    stats: dict = field(default_factory=dict)

    def stats_line(self) -> str:
        parts = [f"realizable={int(self.realizable)}", f"provenance={self.provenance}"]
        for k, v in self.stats.items():
            if isinstance(v, float):
                v = f"{v:.6f}"
            elif isinstance(v, (list, tuple)):
                v = ",".join(map(str, v)) or "-"
            parts.append(f"{k}={v}")
        return " ".join(parts)


def tt_region(alphabet, n_inputs: int) -> WinningRegion:
    """Region of ``true``: rejecting init and an accepting universal loop."""
    return WinningRegion(dfa_mod.universal_nonempty(alphabet), None, n_inputs)


def compose_individual(w1: WinningRegion, spec2: SynthesisSpec, *,
                       max_states: int = DEFAULT_MAX_STATES, minimize: bool = True,
                       stats: dict | None = None) -> WinningRegion | None:
    """Region of ``psi1 & psi2`` from the region of ``psi1``, or ``None``."""
    if w1.alphabet != spec2.alphabet:
        raise dfa_mod.AlphabetMismatch(f"{w1.alphabet} != {spec2.alphabet}")
    w2 = get_awr_otf(spec2, max_states=max_states, minimize=minimize)
    if w2 is None:
        return None
    arena = dfa_mod.product(w1.dfa, w2.dfa)
    if stats is not None:
        stats["region2_states"] = w2.dfa.n_states
        stats["product_states"] = arena.n_states
    result = solve_backward(arena, spec2.n_inputs)
    if not result.awin[arena.init]:
        return None
    return build_awr(arena, result, minimize)


def compose_incremental(w1: WinningRegion, spec2: SynthesisSpec, *,
                        max_states: int = DEFAULT_MAX_STATES, minimize: bool = True,
                        prune: bool = True, stats: dict | None = None) -> WinningRegion | None:
    """Region of ``psi1 & psi2`` by on-the-fly search over ``w1 x DFA(psi2)``.

    ``prune=False`` disables skipping the outputs in
    :func:`~ltlfsynth.game.ewin_agent_choices`; it exists for ablation only.
    """
    if w1.alphabet != spec2.alphabet:
        raise dfa_mod.AlphabetMismatch(f"{w1.alphabet} != {spec2.alphabet}")
    table = w1.dfa.trans.tolist()
    acc1 = w1.dfa.accepting.tolist()
    oracle = OtfDfa(spec2.phi, spec2.alphabet)
    n_ys = 1 << spec2.n_outputs
    allowed = []
    for s1 in range(w1.dfa.n_states):
        losing = ewin_agent_choices(w1, s1)
        allowed.append([y for y in range(n_ys) if y not in losing])

    def successor(state, letter):
        s1, s2 = state
        return table[s1][letter], oracle.successor(s2, letter)

    def accepting(state):
        return acc1[state[0]] and state[1].accepting

    search = ForwardSearch((w1.dfa.init, oracle.init), successor, accepting,
                           spec2.n_inputs, spec2.n_outputs, full=True,
                           allowed_outputs=(lambda st: allowed[st[0]]) if prune else None,
                           max_states=max_states)
    won = search.run()
    if stats is not None:
        stats["expansions"] = search.expansions
        stats["ew_pairs"] = sum(1 for s1, _ in search.order if s1 == w1.ew)
        stats["init_outputs"] = sorted(search.moves[search.init])
    if not won:
        return None
    return search.region(spec2.alphabet, minimize, label=lambda st: f"({st[0]}, {st[1]})")


_COMPOSERS: dict[str, Callable] = {
    "individual": compose_individual,
    "incremental": compose_incremental,
}


def order_conjuncts(conjuncts, order: str = "given") -> list[int]:
    """Processing order as indices into ``conjuncts``."""
    idx = list(range(len(conjuncts)))
    if order == "size-asc":
        idx.sort(key=lambda i: len(closure(conjuncts[i])))
    elif order != "given":
        raise ValueError(f"unknown order {order!r}; expected one of {ORDERS}")
    return idx


def synthesize(spec: SynthesisSpec, mode: str = "incremental", order: str = "given", *,
               precheck: bool = True, minimize: bool = True, verify: bool = True,
               max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """Decide realizability of ``spec`` and extract a strategy when it is realizable.

    Provenance indices for ``conjunct:i`` are 1-based positions in
    ``decompose(spec.phi)``; for ``composed:i`` they count fold steps.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    stats: dict = {"mode": mode}
    t0 = time.perf_counter()

    if mode == "monolithic":
        region = get_awr_otf(spec, max_states=max_states, minimize=minimize)
        stats["solve_time"] = time.perf_counter() - t0
        if region is None:
            return Verdict(False, unrealizable_conjunct(1), stats=stats)
        stats["region_states"] = [region.dfa.n_states]
        return _realizable(spec, region, verify, stats)

    conjuncts = decompose(spec.phi)
    sequence = order_conjuncts(conjuncts, order)
    stats["conjuncts"] = len(conjuncts)

    if precheck:
        for i in sequence:
            if not check_realizable_otf(spec.with_formula(conjuncts[i]), max_states=max_states):
                stats["phase1_time"] = time.perf_counter() - t0
                return Verdict(False, unrealizable_conjunct(i + 1), stats=stats)
    t1 = time.perf_counter()
    stats["phase1_time"] = t1 - t0

    compose = _COMPOSERS[mode]
    region = tt_region(spec.alphabet, spec.n_inputs)
    sizes = []
    for step, i in enumerate(sequence, 1):
        region = compose(region, spec.with_formula(conjuncts[i]),
                         max_states=max_states, minimize=minimize)
        if region is None:
            stats["phase2_time"] = time.perf_counter() - t1
            stats["region_states"] = sizes
            prov = unrealizable_conjunct(i + 1) if step == 1 else unrealizable_after_composing(step)
            return Verdict(False, prov, stats=stats)
        sizes.append(region.dfa.n_states)
    stats["phase2_time"] = time.perf_counter() - t1
    stats["region_states"] = sizes
    return _realizable(spec, region, verify, stats)


def _realizable(spec: SynthesisSpec, region: WinningRegion, verify: bool, stats: dict) -> Verdict:
    result = solve_backward(region.dfa, region.n_inputs)
    strategy = build_strategy(region, result)
    depth = strategy.rank[strategy.init]
    stats["rank"] = depth
    verdict = Verdict(True, FULL_COMPOSITION, strategy, region, stats=stats)
    if verify:
        cex = find_counterexample(strategy, spec.phi, depth)
        verdict.verified = cex is None
        verdict.counterexample = cex
    return verdict
