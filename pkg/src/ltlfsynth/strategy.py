"""Moore-machine strategies extracted from winning regions."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .dfa import letter_literals
from .formula import Formula
from .game import GameResult, WinningRegion, solve_backward
from .semantics import evaluate


class PlayError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MooreStrategy:
    """Positional strategy over the states of a winning region.

    The agent emits ``output[s]`` in state ``s`` before the environment
    moves; the play stops in a halting (accepting) state.
    """
    region: WinningRegion
    init: int
    output: dict[int, int]
    halting: frozenset[int]
    rank: dict[int, int] = field(default_factory=dict)

    @property
    def n_inputs(self) -> int:
        return self.region.n_inputs

    @property
    def inputs(self) -> tuple[str, ...]:
        return self.region.alphabet[:self.n_inputs]

    @property
    def outputs(self) -> tuple[str, ...]:
        return self.region.alphabet[self.n_inputs:]

    @property
    def states(self) -> list[int]:
        return self.region.winning_states

    def letter(self, s: int, x: int) -> int:
        return x | self.output[s] << self.n_inputs

    def next_state(self, s: int, x: int) -> int:
        return self.region.dfa.step(s, self.letter(s, x))

    def with_output(self, s: int, y: int) -> "MooreStrategy":
        out = dict(self.output)
        out[s] = y
        return replace(self, output=out)


def build_strategy(w: WinningRegion, result: GameResult | None = None) -> MooreStrategy:
    """Rank-decreasing strategy: every move strictly lowers the rank until halting."""
    if result is None:
        result = solve_backward(w.dfa, w.n_inputs)
    if not result.awin[w.dfa.init]:
        raise AssertionError("cannot build a strategy from a losing initial state")
    acc = w.dfa.accepting
    output, rank = {}, {}
    for s in w.winning_states:
        if not result.awin[s]:
            continue
        rank[s] = int(result.rank[s])
        if not acc[s]:
            output[s] = int(result.chosen_output[s])
    halting = frozenset(int(s) for s in np.flatnonzero(acc))
    return MooreStrategy(w, w.dfa.init, output, halting, rank)


def find_counterexample(m: MooreStrategy, phi: Formula, depth_bound: int) -> list[int] | None:
    """First environment input sequence on which ``m`` fails, or ``None``.

    A play fails if it does not halt within ``depth_bound`` rounds, leaves the
    strategy's states, or halts on a trace that does not satisfy ``phi``.
    """
    n_xs = 1 << m.n_inputs
    if m.init in m.halting:
        return []
    # (state, letters so far, inputs so far)
    stack: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = [(m.init, (), ())]
    while stack:
        s, rho, xs = stack.pop()
        if len(rho) >= depth_bound or s not in m.output:
            return list(xs)
        for x in reversed(range(n_xs)):
            a = m.letter(s, x)
            t = m.region.dfa.step(s, a)
            if t in m.halting:
                if not evaluate(rho + (a,), phi):
                    return list(xs + (x,))
            else:
                stack.append((t, rho + (a,), xs + (x,)))
    return None


def verify_strategy(m: MooreStrategy, phi: Formula, depth_bound: int) -> bool:
    return find_counterexample(m, phi, depth_bound) is None


def _env_letter(m: MooreStrategy, env_move) -> int:
    if isinstance(env_move, (int, np.integer)):
        if not 0 <= env_move < 1 << m.n_inputs:
            raise PlayError(f"input bitmask {env_move} out of range")
        return int(env_move)
    x = 0
    for name in env_move:
        if name not in m.inputs:
            raise PlayError(f"unknown input proposition {name!r}")
        x |= 1 << m.inputs.index(name)
    return x


def play_step(m: MooreStrategy, current: int, env_move: int | Iterable[str]) -> tuple[int, int | None, bool]:
    """Advance one round from ``current``.

    The agent's output for this round is ``m.output[current]`` (already
    shown to the environment).  Returns the next state, the agent's output
    there (``None`` if the play halted) and whether it halted.
    """
    if current in m.halting:
        raise PlayError("the play has already halted")
    if current not in m.output:
        raise PlayError(f"state {current} is not a strategy state")
    x = _env_letter(m, env_move)
    nxt = m.next_state(current, x)
    halted = nxt in m.halting
    return nxt, (None if halted else m.output.get(nxt)), halted


def induced_outputs(m: MooreStrategy, inputs: Sequence[int]) -> list[int]:
    """Outputs of the history-based strategy induced by ``m`` along ``inputs``.

    Element ``i`` is the agent's choice after seeing ``inputs[:i]``.
    """
    dfa = m.region.dfa
    outs = []
    s = m.init
    for i in range(len(inputs) + 1):
        if s in m.halting:
            break
        y = m.output[s]
        outs.append(y)
        if i < len(inputs):
            s = dfa.step(s, inputs[i] | y << m.n_inputs)
    return outs


# -- exports ----------------------------------------------------------------

def _lits(bits: int, names: Sequence[str]) -> str:
    return letter_literals(bits, names) or "-"


def to_text(m: MooreStrategy) -> str:
    lines = [f"init {m.init}"]
    for s in m.states:
        halt = s in m.halting
        out = "-" if halt else _lits(m.output[s], m.outputs)
        lines.append(f"state {s} out={out} halt={int(halt)}")
        if not halt:
            for x in range(1 << m.n_inputs):
                lines.append(f"on {_lits(x, m.inputs)} -> {m.next_state(s, x)}")
    return "\n".join(lines) + "\n"


def to_dot(m: MooreStrategy, name: str = "strategy") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for s in m.states:
        shape = "doublecircle" if s in m.halting else "circle"
        out = "" if s in m.halting else "\\n" + _lits(m.output[s], m.outputs)
        lines.append(f'  {s} [shape={shape}, label="{s}{out}"];')
    lines.append(f"  __start -> {m.init};")
    for s in m.states:
        if s in m.halting:
            continue
        for x in range(1 << m.n_inputs):
            lines.append(f'  {s} -> {m.next_state(s, x)} [label="{_lits(x, m.inputs)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
