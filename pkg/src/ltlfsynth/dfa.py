"""Explicit complete DFAs over bitmask letters.

The transition table is a dense ``(n_states, 2**n_props)`` integer array;
letter ``a`` is the bitmask of propositions that hold.  Every constructor in
this module returns DFAs in canonical numbering: states are numbered in BFS
discovery order from ``init`` (which is therefore 0), exploring letters in
ascending order.  Two minimal DFAs of the same language are then equal
array-for-array, see :meth:`ExplicitDfa.canonical_key`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np


class AlphabetMismatch(ValueError):
    pass


@dataclass(eq=False)
class ExplicitDfa:
    alphabet: tuple[str, ...]
    init: int
    trans: np.ndarray
    accepting: np.ndarray
    labels: list[Any] | None = field(default=None)

    def __post_init__(self):
        self.alphabet = tuple(self.alphabet)
        self.trans = np.asarray(self.trans, dtype=np.int64)
        self.accepting = np.asarray(self.accepting, dtype=bool)
        n = self.trans.shape[0]
        if self.trans.ndim != 2 or self.trans.shape[1] != 1 << len(self.alphabet):
            raise ValueError(f"transition table must be (n, {1 << len(self.alphabet)}), got {self.trans.shape}")
        if self.accepting.shape != (n,):
            raise ValueError("accepting mask must have one entry per state")
        if not 0 <= self.init < n:
            raise ValueError(f"init {self.init} out of range for {n} states")
        if n and (self.trans.min() < 0 or self.trans.max() >= n):
            raise ValueError("transition table has holes or out-of-range targets")

    @property
    def n_states(self) -> int:
        return self.trans.shape[0]

    @property
    def n_letters(self) -> int:
        return self.trans.shape[1]

    @property
    def n_props(self) -> int:
        return len(self.alphabet)

    def step(self, state: int, letter: int) -> int:
        return int(self.trans[state, letter])

    def run(self, rho: Sequence[int]) -> int:
        s = self.init
        for a in rho:
            s = self.trans[s, a]
        return int(s)

    def canonical_key(self) -> tuple:
        """Hashable structure; equal keys mean identical DFAs (labels ignored)."""
        return (self.alphabet, self.init, self.trans.shape,
                self.trans.tobytes(), self.accepting.tobytes())

    def same_structure(self, other: "ExplicitDfa") -> bool:
        return self.canonical_key() == other.canonical_key()

    def __repr__(self):
        return (f"ExplicitDfa(states={self.n_states}, props={list(self.alphabet)}, "
                f"accepting={np.flatnonzero(self.accepting).tolist()})")


def accepts(g: ExplicitDfa, rho: Sequence[int]) -> bool:
    if len(rho) == 0:
        raise ValueError("traces must be non-empty")
    return bool(g.accepting[g.run(rho)])


def accepts_batch(g: ExplicitDfa, letters: np.ndarray) -> np.ndarray:
    """Acceptance for an ``(N, L)`` array of traces."""
    letters = np.asarray(letters)
    states = np.full(letters.shape[0], g.init, dtype=np.int64)
    for i in range(letters.shape[1]):
        states = g.trans[states, letters[:, i]]
    return g.accepting[states]


def _relabel(g: ExplicitDfa, order: list[int]) -> ExplicitDfa:
    index = np.full(g.n_states, -1, dtype=np.int64)
    index[order] = np.arange(len(order))
    trans = index[g.trans[order]]
    labels = [g.labels[s] for s in order] if g.labels is not None else None
    return ExplicitDfa(g.alphabet, 0, trans, g.accepting[order], labels)


def bfs_order(g: ExplicitDfa) -> list[int]:
    seen = np.zeros(g.n_states, dtype=bool)
    seen[g.init] = True
    order = [g.init]
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for t in g.trans[s]:
            if not seen[t]:
                seen[t] = True
                order.append(int(t))
                queue.append(int(t))
    return order


def trim_reachable(g: ExplicitDfa) -> ExplicitDfa:
    """Drop unreachable states and renumber canonically."""
    return _relabel(g, bfs_order(g))


def product(g1: ExplicitDfa, g2: ExplicitDfa) -> ExplicitDfa:
    """Reachable part of the synchronous product; accepting iff both accept."""
    if g1.alphabet != g2.alphabet:
        raise AlphabetMismatch(f"{g1.alphabet} != {g2.alphabet}")
    index = {(g1.init, g2.init): 0}
    pairs = [(g1.init, g2.init)]
    rows = []
    i = 0
    while i < len(pairs):
        s1, s2 = pairs[i]
        row = []
        for t in zip(g1.trans[s1].tolist(), g2.trans[s2].tolist()):
            j = index.get(t)
            if j is None:
                j = index[t] = len(pairs)
                pairs.append(t)
            row.append(j)
        rows.append(row)
        i += 1
    acc = [bool(g1.accepting[a] and g2.accepting[b]) for a, b in pairs]
    return ExplicitDfa(g1.alphabet, 0, np.array(rows, dtype=np.int64), acc, pairs)


def _quotient(g: ExplicitDfa, block: np.ndarray) -> ExplicitDfa:
    n_blocks = int(block.max()) + 1
    rep = np.zeros(n_blocks, dtype=np.int64)
    # first member of each block (lowest state index) is the representative
    rep[block[::-1]] = np.arange(g.n_states)[::-1]
    trans = block[g.trans[rep]]
    labels = [g.labels[r] for r in rep] if g.labels is not None else None
    q = ExplicitDfa(g.alphabet, int(block[g.init]), trans, g.accepting[rep], labels)
    return trim_reachable(q)


def minimize_hopcroft(g: ExplicitDfa) -> ExplicitDfa:
    """Minimal equivalent DFA by Hopcroft partition refinement."""
    g = trim_reachable(g)
    n, m = g.n_states, g.n_letters
    # predecessor lists per letter: preds[a][t] = states s with trans[s, a] == t
    preds = []
    for a in range(m):
        col = g.trans[:, a]
        order = np.argsort(col, kind="stable")
        bounds = np.searchsorted(col[order], np.arange(n + 1))
        preds.append((order, bounds))

    acc = set(np.flatnonzero(g.accepting).tolist())
    rej = set(range(n)) - acc
    blocks: list[set[int]] = [b for b in (acc, rej) if b]
    block_of = np.zeros(n, dtype=np.int64)
    for i, b in enumerate(blocks):
        block_of[list(b)] = i
    work: set[tuple[int, int]] = set()
    if len(blocks) == 2:
        small = 0 if len(blocks[0]) <= len(blocks[1]) else 1
        work = {(small, a) for a in range(m)}

    while work:
        b, a = work.pop()
        order, bounds = preds[a]
        splitter: set[int] = set()
        for t in blocks[b]:
            splitter.update(order[bounds[t]:bounds[t + 1]].tolist())
        touched: dict[int, set[int]] = {}
        for s in splitter:
            touched.setdefault(int(block_of[s]), set()).add(s)
        for y, inside in touched.items():
            if len(inside) == len(blocks[y]):
                continue
            outside = blocks[y] - inside
            blocks[y] = inside
            new = len(blocks)
            blocks.append(outside)
            block_of[list(outside)] = new
            for c in range(m):
                if (y, c) in work:
                    work.add((new, c))
                else:
                    work.add((y if len(inside) <= len(outside) else new, c))
    return _quotient(g, block_of)


def minimize_moore(g: ExplicitDfa) -> ExplicitDfa:
    """Minimal equivalent DFA by Moore's iterated signature refinement."""
    g = trim_reachable(g)
    cls = g.accepting.astype(np.int64)
    count = len(np.unique(cls))
    while True:
        sig = np.column_stack([cls, cls[g.trans]])
        _, cls = np.unique(sig, axis=0, return_inverse=True)
        cls = cls.reshape(-1)
        new_count = int(cls.max()) + 1
        if new_count == count:
            break
        count = new_count
    return _quotient(g, cls)


minimize = minimize_hopcroft


def empty_language(alphabet: Sequence[str]) -> ExplicitDfa:
    """Single non-accepting state looping on every letter."""
    return ExplicitDfa(tuple(alphabet), 0, np.zeros((1, 1 << len(alphabet)), dtype=np.int64), [False])


def universal_nonempty(alphabet: Sequence[str]) -> ExplicitDfa:
    """DFA of ``true`` over non-empty traces: rejecting init, accepting loop."""
    m = 1 << len(alphabet)
    trans = np.array([[1] * m, [1] * m], dtype=np.int64)
    return ExplicitDfa(tuple(alphabet), 0, trans, [False, True], ["init", "tt"])


# -- exchange formats -------------------------------------------------------

def letter_literals(letter: int, names: Sequence[str]) -> str:
    return " ".join(n if letter >> i & 1 else "!" + n for i, n in enumerate(names))


def to_dot(g: ExplicitDfa, name: str = "dfa", ew: int | None = None) -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for s in range(g.n_states):
        shape = "doublecircle" if g.accepting[s] else "circle"
        text = str(s)
        if s == ew:
            text += "\\new"
        elif g.labels is not None and g.labels[s] is not None:
            text += "\\n" + str(g.labels[s]).replace('"', '\\"')
        lines.append(f'  {s} [shape={shape}, label="{text}"];')
    lines.append(f"  __start -> {g.init};")
    for s in range(g.n_states):
        for a in range(g.n_letters):
            lines.append(f'  {s} -> {g.trans[s, a]} [label="{letter_literals(a, g.alphabet)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump(g: ExplicitDfa) -> str:
    out = [f"dfa {g.n_states} {g.init} {g.n_props}"]
    out += [f"state {s} {int(g.accepting[s])}" for s in range(g.n_states)]
    out += [f"t {s} {a} {g.trans[s, a]}"
            for s in range(g.n_states) for a in range(g.n_letters)]
    return "\n".join(out) + "\n"


def load(text: str, alphabet: Sequence[str] | None = None) -> ExplicitDfa:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0][0] != "dfa" or len(lines[0]) != 4:
        raise ValueError("dump must start with 'dfa <nstates> <init> <nprops>'")
    n, init, k = map(int, lines[0][1:])
    if alphabet is None:
        alphabet = tuple(f"p{i}" for i in range(k))
    elif len(alphabet) != k:
        raise AlphabetMismatch(f"dump has {k} propositions, alphabet has {len(alphabet)}")
    trans = np.full((n, 1 << k), -1, dtype=np.int64)
    acc = np.zeros(n, dtype=bool)
    for parts in lines[1:]:
        if parts[0] == "state":
            acc[int(parts[1])] = parts[2] == "1"
        elif parts[0] == "t":
            trans[int(parts[1]), int(parts[2])] = int(parts[3])
        else:
            raise ValueError(f"unknown dump line {' '.join(parts)!r}")
    return ExplicitDfa(tuple(alphabet), init, trans, acc)
