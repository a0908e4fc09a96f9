"""DFA reachability games where the agent (outputs ``Y``) moves first.

Two engines decide the same games:

* :func:`solve_backward` is the classic attractor fixpoint on an explicit
  arena and also yields ranks for strategy extraction;
* :class:`ForwardSearch` is a depth-first on-the-fly search that classifies
  states as agent-winning, environment-winning or undetermined, and settles
  undetermined states whenever Tarjan's algorithm closes a strongly
  connected component.

Letters are laid out with input bits low: ``letter = x | y << n_inputs``,
so a transition row reshaped to ``(2**|Y|, 2**|X|)`` is indexed ``[y, x]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

import numpy as np

from . import dfa as dfa_mod
from .dfa import ExplicitDfa
from .limits import DEFAULT_MAX_STATES, ResourceLimitError
from .otf import OtfDfa
from .spec import SynthesisSpec

UNDETERMINED, AWIN, EWIN = 0, 1, 2

NO_RANK = -1


@dataclass(eq=False)
class GameResult:
    """Agent-winning states of an explicit arena with their ranks.

    ``rank[s]`` is the number of rounds within which the agent can force an
    accepting state, ``-1`` when it cannot.  ``chosen_output[s]`` is the
    lowest rank-minimizing ``Y`` bitmask for non-accepting winning states.
    """
    awin: np.ndarray
    rank: np.ndarray
    chosen_output: np.ndarray
    n_inputs: int

    def is_winning(self, s: int) -> bool:
        return bool(self.awin[s])

    def rank_of(self, s: int) -> float:
        r = int(self.rank[s])
        return math.inf if r == NO_RANK else r


def _split(g: ExplicitDfa, n_inputs: int) -> np.ndarray:
    n_outputs = g.n_props - n_inputs
    if n_outputs < 0:
        raise ValueError("more inputs than propositions")
    return g.trans.reshape(g.n_states, 1 << n_outputs, 1 << n_inputs)


def solve_backward(g: ExplicitDfa, n_inputs: int) -> GameResult:
    """Least fixpoint ``W_{k+1} = W_k | {s : exists Y forall X. delta(s, XY) in W_k}``."""
    table = _split(g, n_inputs)
    win = g.accepting.copy()
    rank = np.where(win, 0, NO_RANK)
    chosen = np.full(g.n_states, -1, dtype=np.int64)
    k = 0
    while True:
        safe = win[table].all(axis=2)
        fresh = safe.any(axis=1) & ~win
        if not fresh.any():
            break
        k += 1
        rank[fresh] = k
        chosen[fresh] = safe[fresh].argmax(axis=1)
        win |= fresh
    return GameResult(win, rank, chosen, n_inputs)


@dataclass(eq=False)
class WinningRegion:
    """Agent-winning region: winning states plus one sink ``ew``.

    ``ew`` is ``None`` when the sink is unreachable and was trimmed away.
    """
    dfa: ExplicitDfa
    ew: int | None
    n_inputs: int

    @property
    def n_outputs(self) -> int:
        return self.dfa.n_props - self.n_inputs

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.dfa.alphabet

    @property
    def winning_states(self) -> list[int]:
        return [s for s in range(self.dfa.n_states) if s != self.ew]

    def canonical_key(self) -> tuple:
        return self.dfa.canonical_key() + (self.ew, self.n_inputs)

    def same_structure(self, other: "WinningRegion") -> bool:
        return self.canonical_key() == other.canonical_key()

    def table(self) -> np.ndarray:
        return _split(self.dfa, self.n_inputs)

    def __repr__(self):
        return f"WinningRegion(states={self.dfa.n_states}, ew={self.ew}, inputs={self.n_inputs})"


def find_sink(g: ExplicitDfa) -> int | None:
    """Index of the non-accepting state looping on every letter, if any."""
    loops = (g.trans == np.arange(g.n_states)[:, None]).all(axis=1) & ~g.accepting
    hits = np.flatnonzero(loops)
    return int(hits[0]) if len(hits) else None


def _finish_region(g: ExplicitDfa, n_inputs: int, minimize: bool) -> WinningRegion:
    g = dfa_mod.minimize(g) if minimize else dfa_mod.trim_reachable(g)
    ew = find_sink(g)
    if ew is not None and g.labels is not None:
        g.labels[ew] = "ew"
    return WinningRegion(g, ew, n_inputs)


def build_awr(g: ExplicitDfa, result: GameResult, minimize: bool = True) -> WinningRegion:
    """Restrict ``g`` to its agent-winning states, redirecting unsafe moves to ``ew``.

    A move ``X|Y`` from ``s`` keeps its target only if every ``X'`` with the
    same ``Y`` stays winning; otherwise it goes to ``ew``.
    """
    if not result.awin[g.init]:
        raise AssertionError("build_awr needs an agent-winning initial state")
    table = _split(g, result.n_inputs)
    keep = np.flatnonzero(result.awin)
    ew = len(keep)
    index = np.full(g.n_states, ew, dtype=np.int64)
    index[keep] = np.arange(len(keep))
    safe = result.awin[table[keep]].all(axis=2)
    rows = np.where(safe[:, :, None], index[table[keep]], ew).reshape(len(keep), -1)
    trans = np.vstack([rows, np.full((1, g.n_letters), ew, dtype=np.int64)])
    acc = np.append(g.accepting[keep], False)
    labels = None
    if g.labels is not None:
        labels = [g.labels[s] for s in keep] + ["ew"]
    region = ExplicitDfa(g.alphabet, int(index[g.init]), trans, acc, labels)
    return _finish_region(region, result.n_inputs, minimize)


def ewin_agent_choices(w: WinningRegion, s: int) -> frozenset[int]:
    """Outputs ``Y`` from ``s`` for which some input leads into ``ew``."""
    n_ys = 1 << w.n_outputs
    if w.ew is None:
        return frozenset()
    if s == w.ew:
        return frozenset(range(n_ys))
    row = w.table()[s]
    return frozenset(np.flatnonzero((row == w.ew).any(axis=1)).tolist())


class ForwardSearch:
    """Depth-first on-the-fly game solving over hashable states.

    ``full=True`` keeps exploring every output after a state is known to be
    winning, so that all agent-winning states and their safe moves are
    recorded (needed to build a region).  ``full=False`` stops at the first
    winning output per state and only answers realizability.

    ``allowed_outputs(s)`` may restrict which outputs are tried from ``s``;
    outputs it omits count as losing.
    """

    def __init__(self, init: Hashable, successor: Callable, accepting: Callable,
                 n_inputs: int, n_outputs: int, *, full: bool = True,
                 allowed_outputs: Callable[[Hashable], Iterable[int]] | None = None,
                 reverse: bool = False, max_states: int = DEFAULT_MAX_STATES):
        self.init = init
        self.successor = successor
        self.accepting = accepting
        self.n_inputs = n_inputs
        self.n_outputs = n_outputs
        self.full = full
        self.allowed_outputs = allowed_outputs
        # ascending bitmask order by default; reverse only changes cost, never verdicts
        self.reverse = reverse
        self.max_states = max_states
        self.status: dict[Hashable, int] = {}
        # moves[s][y] = ([(x, successor), ...], complete?)
        self.moves: dict[Hashable, dict[int, tuple[list, bool]]] = {}
        self.order: list[Hashable] = []
        self.scc_count = 0
        self._index: dict[Hashable, int] = {}
        self._low: dict[Hashable, int] = {}
        self._stack: list[Hashable] = []
        self._on_stack: set[Hashable] = set()
        self._done = False

    @property
    def expansions(self) -> int:
        """Number of distinct states the search entered."""
        return len(self.order)

    def run(self) -> bool:
        if not self._done:
            frames = [self._visit(self.init)]
            while frames:
                try:
                    child = frames[-1].send(None)
                except StopIteration:
                    frames.pop()
                    continue
                frames.append(self._visit(child))
            self._done = True
        return self.status[self.init] == AWIN

    def _visit(self, s):
        if len(self.order) >= self.max_states:
            raise ResourceLimitError("state", self.max_states)
        status, low = self.status, self._low
        self._index[s] = low[s] = len(self.order)
        self.order.append(s)
        self._stack.append(s)
        self._on_stack.add(s)
        status[s] = AWIN if self.accepting(s) else UNDETERMINED
        moves = self.moves[s] = {}

        explore = self.full or status[s] != AWIN
        xs = range(1 << self.n_inputs)
        ys = range(1 << self.n_outputs) if self.allowed_outputs is None else self.allowed_outputs(s)
        if self.reverse:
            xs, ys = xs[::-1], list(ys)[::-1]
        ewin_for_all_y = True
        for y in ys if explore else ():
            ewin_for_some_x = undetermined_for_some_x = False
            succs = []
            for x in xs:
                t = self.successor(s, x | y << self.n_inputs)
                succs.append((x, t))
                if t not in self._index:
                    yield t
                    low[s] = min(low[s], low[t])
                elif t in self._on_stack:
                    low[s] = min(low[s], self._index[t])
                st = status[t]
                if st == EWIN:
                    ewin_for_some_x = True
                    break
                if st == UNDETERMINED:
                    undetermined_for_some_x = True
            moves[y] = (succs, not ewin_for_some_x)
            if not ewin_for_some_x:
                ewin_for_all_y = False
                if not undetermined_for_some_x:
                    status[s] = AWIN
                    if not self.full:
                        break
        if ewin_for_all_y and status[s] != AWIN:
            status[s] = EWIN

        if low[s] == self._index[s]:
            scc = []
            while True:
                t = self._stack.pop()
                self._on_stack.discard(t)
                scc.append(t)
                if t == s:
                    break
            self.scc_count += 1
            self._settle(scc)

    def _settle(self, scc: list) -> None:
        """Resolve undetermined states of a closed component by a local fixpoint."""
        status = self.status
        pending = [t for t in scc if status[t] == UNDETERMINED]
        changed = True
        while pending and changed:
            changed = False
            rest = []
            for t in pending:
                if any(done and all(status[u] == AWIN for _, u in succs)
                       for succs, done in self.moves[t].values()):
                    status[t] = AWIN
                    changed = True
                else:
                    rest.append(t)
            pending = rest
        # everything left can only reach other losers inside the closed component
        for t in pending:
            status[t] = EWIN

    def winning_states(self) -> list:
        return [s for s in self.order if self.status[s] == AWIN]

    def region(self, alphabet, minimize: bool = True, label=str) -> WinningRegion:
        """Winning region over every agent-winning state the search found."""
        if not self.full:
            raise RuntimeError("region extraction needs a full search")
        if self.status.get(self.init) != AWIN:
            raise AssertionError("initial state is not agent-winning")
        keep = self.winning_states()
        ew = len(keep)
        index = {s: i for i, s in enumerate(keep)}
        n_xs = 1 << self.n_inputs
        rows = []
        for s in keep:
            row = [ew] * (n_xs << self.n_outputs)
            for y, (succs, complete) in self.moves[s].items():
                if complete and all(self.status[t] == AWIN for _, t in succs):
                    base = y << self.n_inputs
                    for x, t in succs:
                        row[base | x] = index[t]
            rows.append(row)
        rows.append([ew] * (n_xs << self.n_outputs))
        acc = [bool(self.accepting(s)) for s in keep] + [False]
        labels = [label(s) for s in keep] + ["ew"]
        g = ExplicitDfa(tuple(alphabet), index[self.init], rows, acc, labels)
        return _finish_region(g, self.n_inputs, minimize)


def get_awr_otf(spec: SynthesisSpec, max_states: int = DEFAULT_MAX_STATES,
                minimize: bool = True, reverse: bool = False) -> WinningRegion | None:
    """Winning region of ``spec`` by full on-the-fly search, or ``None`` if unrealizable."""
    oracle = OtfDfa(spec.phi, spec.alphabet)
    search = ForwardSearch(oracle.init, oracle.successor, oracle.is_accepting,
                           spec.n_inputs, spec.n_outputs, full=True, reverse=reverse,
                           max_states=max_states)
    if not search.run():
        return None
    return search.region(spec.alphabet, minimize)


def check_realizable_otf(spec: SynthesisSpec, max_states: int = DEFAULT_MAX_STATES,
                         reverse: bool = False) -> bool:
    """Realizability only: stops exploring a state at its first winning output."""
    oracle = OtfDfa(spec.phi, spec.alphabet)
    search = ForwardSearch(oracle.init, oracle.successor, oracle.is_accepting,
                           spec.n_inputs, spec.n_outputs, full=False, reverse=reverse,
                           max_states=max_states)
    return search.run()


def solve_explicit(spec: SynthesisSpec, max_states: int = DEFAULT_MAX_STATES,
                   minimize: bool = True) -> WinningRegion | None:
    """Reference pipeline: full DFA, backward fixpoint, region."""
    from .otf import expand_full
    g = expand_full(spec.phi, spec.alphabet, max_states=max_states)
    result = solve_backward(g, spec.n_inputs)
    if not result.awin[g.init]:
        return None
    return build_awr(g, result, minimize)
