"""On-the-fly DFAs for LTLf formulas.

A state is a pair ``(residual, accepting)``.  The residual is the obligation
left for the rest of the trace; the bit says whether the trace read so far
is accepted.  The bit is needed because the residual alone is ambiguous at
the end of a trace: ``X !p`` and ``N !p`` both leave ``!p`` behind, but only
the weak version accepts if the trace stops there.

To step a state on letter ``sigma``: unfold the residual into next normal
form, replace each literal by its value under ``sigma``, then read the bit
with strong nexts false and weak nexts true, and the next residual by
dropping the next operators.  Residuals are kept as absorbed DNF over
temporal atoms, which bounds the number of distinct states.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import NamedTuple, Sequence

from . import formula as fm
from .dfa import ExplicitDfa
from .formula import Formula, xnf
from .limits import DEFAULT_MAX_PROPS, DEFAULT_MAX_STATES, ResourceLimitError, check_props


class OtfState(NamedTuple):
    residual: Formula
    accepting: bool

    def __str__(self):
        return f"{self.residual}{' *' if self.accepting else ''}"


def initial_state(phi: Formula) -> OtfState:
    # traces are non-empty, so nothing is accepted before the first letter
    return OtfState(phi, False)


def is_accepting(s: OtfState) -> bool:
    return s.accepting


def _assign(f: Formula, sigma: int) -> Formula:
    """Evaluate the literals of an XNF formula under ``sigma``."""
    k = f.kind
    if k == fm.PROP:
        return fm.true() if sigma >> f.index & 1 else fm.false()
    if k == fm.NOTPROP:
        return fm.false() if sigma >> f.index & 1 else fm.true()
    if k == fm.AND:
        out = []
        for c in f.children:
            c = _assign(c, sigma)
            if c.kind == fm.FALSE:
                return c
            out.append(c)
        return fm.and_(*out)
    if k == fm.OR:
        out = []
        for c in f.children:
            c = _assign(c, sigma)
            if c.kind == fm.TRUE:
                return c
            out.append(c)
        return fm.or_(*out)
    return f


def _end_value(f: Formula) -> bool:
    k = f.kind
    if k == fm.AND:
        return all(_end_value(c) for c in f.children)
    if k == fm.OR:
        return any(_end_value(c) for c in f.children)
    return k == fm.TRUE or k == fm.WNEXT


def _dnf(f: Formula) -> frozenset[frozenset[Formula]]:
    k = f.kind
    if k == fm.TRUE:
        return frozenset([frozenset()])
    if k == fm.FALSE:
        return frozenset()
    if k == fm.OR:
        return _absorb(frozenset().union(*(_dnf(c) for c in f.children)))
    if k == fm.AND:
        acc = frozenset([frozenset()])
        for c in f.children:
            acc = _absorb(frozenset(a | b for a in acc for b in _dnf(c)))
            if not acc:
                break
        return acc
    # NEXT/WNEXT atoms are stripped by _strip before we get here
    return frozenset([frozenset([f])])


def _contradictory(clause: frozenset[Formula]) -> bool:
    pos = {a.index for a in clause if a.kind == fm.PROP}
    return any(a.kind == fm.NOTPROP and a.index in pos for a in clause)


def _absorb(clauses) -> frozenset[frozenset[Formula]]:
    kept: list[frozenset[Formula]] = []
    for c in sorted((c for c in clauses if not _contradictory(c)), key=len):
        if not any(k <= c for k in kept):
            kept.append(c)
    return frozenset(kept)


def _strip(f: Formula) -> Formula:
    k = f.kind
    if k == fm.AND:
        return fm.and_(*(_strip(c) for c in f.children))
    if k == fm.OR:
        return fm.or_(*(_strip(c) for c in f.children))
    if k == fm.NEXT or k == fm.WNEXT:
        return f.children[0]
    return f


@lru_cache(maxsize=1 << 16)
def normalize_residual(f: Formula) -> Formula:
    """Absorbed DNF of ``f`` treating non-Boolean nodes as atoms."""
    clauses = _dnf(f)
    return fm.or_(*(fm.and_(*c) for c in clauses))


def successor(s: OtfState, sigma: int) -> OtfState:
    """Deterministic, total transition function."""
    stepped = _assign(xnf(s.residual), sigma)
    return OtfState(normalize_residual(_strip(stepped)), _end_value(stepped))


class OtfDfa:
    """Memoizing successor oracle for one formula over a fixed alphabet.

    Owned by a single solver; not shared across threads.
    """

    def __init__(self, phi: Formula, alphabet: Sequence[str]):
        self.phi = phi
        self.alphabet = tuple(alphabet)
        self.init = initial_state(phi)
        self._cache: dict[tuple[OtfState, int], OtfState] = {}
        self.calls = 0

    def successor(self, s: OtfState, sigma: int) -> OtfState:
        key = (s, sigma)
        out = self._cache.get(key)
        if out is None:
            self.calls += 1
            out = self._cache[key] = successor(s, sigma)
        return out

    @staticmethod
    def is_accepting(s: OtfState) -> bool:
        return s.accepting


def expand_full(phi: Formula, alphabet: Sequence[str], max_states: int = DEFAULT_MAX_STATES,
                max_props: int = DEFAULT_MAX_PROPS) -> ExplicitDfa:
    """Breadth-first closure of the on-the-fly DFA over every letter.

    ``alphabet`` may be a :class:`~ltlfsynth.spec.SynthesisSpec`, in which case
    its ``X`` then ``Y`` ordering is used.
    """
    alphabet = tuple(getattr(alphabet, "alphabet", alphabet))
    check_props(len(alphabet), max_props)
    for name, idx in fm.propositions(phi).items():
        if idx >= len(alphabet) or alphabet[idx] != name:
            raise ValueError(f"proposition {name!r} (index {idx}) is not in alphabet {alphabet}")
    oracle = OtfDfa(phi, alphabet)
    n_letters = 1 << len(alphabet)
    index = {oracle.init: 0}
    states = [oracle.init]
    rows = []
    queue = deque([oracle.init])
    while queue:
        s = queue.popleft()
        row = []
        for sigma in range(n_letters):
            t = oracle.successor(s, sigma)
            j = index.get(t)
            if j is None:
                if len(states) >= max_states:
                    raise ResourceLimitError("state", max_states)
                j = index[t] = len(states)
                states.append(t)
                queue.append(t)
            row.append(j)
        rows.append(row)
    return ExplicitDfa(alphabet, 0, rows, [s.accepting for s in states], states)
