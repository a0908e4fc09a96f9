"""Finite-trace semantics: the ground-truth evaluators.

A trace is a non-empty sequence of letters; a letter is an int bitmask in
which bit ``i`` is the truth value of the proposition with index ``i``.

Three evaluators live here and none of them uses progression or automata:

* :func:`evaluate` walks the satisfaction relation on one trace,
* :func:`evaluate_batch` runs the same clauses vectorized over many
  equal-length traces,
* :func:`evaluate_raw` handles parser trees with general negation and sugar.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import formula as fm
from .formula import Formula
from .parser import Raw

Trace = Sequence[int]


class EmptyTraceError(ValueError):
    pass


def _check(rho: Trace) -> None:
    if len(rho) == 0:
        raise EmptyTraceError("LTLf traces must be non-empty")


def letter(true_props: Iterable[str], props: Mapping[str, int]) -> int:
    """Bitmask for the set of propositions that hold."""
    out = 0
    for name in true_props:
        out |= 1 << props[name]
    return out


def trace(sets: Iterable[Iterable[str]], props: Mapping[str, int]) -> tuple[int, ...]:
    return tuple(letter(s, props) for s in sets)


def evaluate(rho: Trace, f: Formula) -> bool:
    """Does the trace satisfy ``f``?"""
    _check(rho)
    n = len(rho)
    memo: dict[tuple[int, int], bool] = {}

    def sat(g: Formula, i: int) -> bool:
        k = g.kind
        if k == fm.TRUE:
            return True
        if k == fm.FALSE:
            return False
        if k == fm.PROP:
            return bool(rho[i] >> g.index & 1)
        if k == fm.NOTPROP:
            return not rho[i] >> g.index & 1
        key = (g.id, i)
        if key in memo:
            return memo[key]
        if k == fm.AND:
            out = all(sat(c, i) for c in g.children)
        elif k == fm.OR:
            out = any(sat(c, i) for c in g.children)
        elif k == fm.NEXT:
            out = i + 1 < n and sat(g.children[0], i + 1)
        elif k == fm.WNEXT:
            out = i + 1 >= n or sat(g.children[0], i + 1)
        elif k == fm.UNTIL:
            out = False
            for j in range(i, n):
                if sat(g.right, j):
                    out = True
                    break
                if not sat(g.left, j):
                    break
        else:  # RELEASE: right holds up to and including the first left, or forever
            out = True
            for j in range(i, n):
                if not sat(g.right, j):
                    out = False
                    break
                if sat(g.left, j):
                    break
        memo[key] = out
        return out

    return sat(f, 0)


def evaluate_raw(rho: Trace, tree: Raw, props: Mapping[str, int]) -> bool:
    """Reference evaluator for parser trees, with general negation."""
    _check(rho)
    n = len(rho)

    def sat(t: Raw, i: int) -> bool:
        op, a = t.op, t.args
        if op == "true":
            return True
        if op == "false":
            return False
        if op == "prop":
            return bool(rho[i] >> props[a[0]] & 1)
        if op == "not":
            return not sat(a[0], i)
        if op == "and":
            return sat(a[0], i) and sat(a[1], i)
        if op == "or":
            return sat(a[0], i) or sat(a[1], i)
        if op == "implies":
            return not sat(a[0], i) or sat(a[1], i)
        if op == "iff":
            return sat(a[0], i) == sat(a[1], i)
        if op == "next":
            return i + 1 < n and sat(a[0], i + 1)
        if op == "wnext":
            return not (i + 1 < n and not sat(a[0], i + 1))
        if op == "eventually":
            return any(sat(a[0], j) for j in range(i, n))
        if op == "always":
            return all(sat(a[0], j) for j in range(i, n))
        if op == "until":
            return any(sat(a[1], j) and all(sat(a[0], k) for k in range(i, j))
                       for j in range(i, n))
        if op == "release":
            # dual of until: !(!l U !r)
            return not any(not sat(a[1], j) and all(not sat(a[0], k) for k in range(i, j))
                           for j in range(i, n))
        raise ValueError(f"unknown raw operator {op!r}")

    return sat(tree, 0)


def evaluate_batch(letters: np.ndarray, f: Formula) -> np.ndarray:
    """Vectorized :func:`evaluate` over an ``(N, L)`` array of equal-length traces."""
    letters = np.asarray(letters)
    if letters.ndim != 2 or letters.shape[1] == 0:
        raise EmptyTraceError("expected an (N, L) letter array with L >= 1")
    n, length = letters.shape
    cache: dict[Formula, np.ndarray] = {}

    def val(g: Formula) -> np.ndarray:
        # val(g)[t, i] == suffix i of trace t satisfies g
        if g in cache:
            return cache[g]
        k = g.kind
        if k == fm.TRUE:
            out = np.ones((n, length), dtype=bool)
        elif k == fm.FALSE:
            out = np.zeros((n, length), dtype=bool)
        elif k == fm.PROP:
            out = (letters >> g.index & 1).astype(bool)
        elif k == fm.NOTPROP:
            out = ~(letters >> g.index & 1).astype(bool)
        elif k == fm.AND:
            out = np.logical_and.reduce([val(c) for c in g.children])
        elif k == fm.OR:
            out = np.logical_or.reduce([val(c) for c in g.children])
        elif k in (fm.NEXT, fm.WNEXT):
            inner = val(g.children[0])
            out = np.empty((n, length), dtype=bool)
            out[:, :-1] = inner[:, 1:]
            out[:, -1] = k == fm.WNEXT
        else:
            lv, rv = val(g.left), val(g.right)
            out = np.empty((n, length), dtype=bool)
            out[:, -1] = rv[:, -1]
            for i in range(length - 2, -1, -1):
                if k == fm.UNTIL:
                    out[:, i] = rv[:, i] | (lv[:, i] & out[:, i + 1])
                else:
                    out[:, i] = rv[:, i] & (lv[:, i] | out[:, i + 1])
        cache[g] = out
        return out

    return val(f)[:, 0].copy()


def all_traces(n_props: int, length: int) -> np.ndarray:
    """Every trace of exactly ``length`` letters over ``n_props`` propositions."""
    alphabet = 1 << n_props
    grid = np.indices((alphabet,) * length).reshape(length, -1).T
    return grid.astype(np.int64)


def bounded_traces(n_props: int, max_length: int) -> Iterable[tuple[int, ...]]:
    """Lazily enumerate all traces up to ``max_length`` (shortest first)."""
    alphabet = range(1 << n_props)
    for length in range(1, max_length + 1):
        yield from itertools.product(alphabet, repeat=length)
