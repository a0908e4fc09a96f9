"""Seeded random formulas and specifications for testing and benchmarking."""
from __future__ import annotations

import random
from typing import Sequence

from .formula import Formula, and_, propositions
from .parser import Raw, to_nnf
from .spec import SynthesisSpec, format_partition

_UNARY = ("not", "next", "wnext", "eventually", "always")
_BINARY = ("and", "or", "until", "release", "implies", "iff")
_NNF_UNARY = ("next", "wnext", "eventually", "always")
_NNF_BINARY = ("and", "or", "until", "release")


def random_raw(rng: random.Random, names: Sequence[str], size: int, *,
               negation: bool = True, const_prob: float = 0.1) -> Raw:
    """Random syntax tree with exactly ``size`` nodes.

    With ``negation=False`` only NNF-shaped operators are drawn and negation
    appears on propositions only.
    """
    if size <= 1:
        if rng.random() < const_prob:
            return Raw(rng.choice(("true", "false")))
        atom = Raw("prop", (rng.choice(names),))
        if not negation and rng.random() < 0.3:
            return Raw("not", (atom,))
        return atom
    unary = _UNARY if negation else _NNF_UNARY
    binary = _BINARY if negation else _NNF_BINARY
    if size == 2 or rng.random() < 0.4:
        return Raw(rng.choice(unary), (random_raw(rng, names, size - 1, negation=negation,
                                                  const_prob=const_prob),))
    left = rng.randint(1, size - 2)
    return Raw(rng.choice(binary), (
        random_raw(rng, names, left, negation=negation, const_prob=const_prob),
        random_raw(rng, names, size - 1 - left, negation=negation, const_prob=const_prob)))


def random_formula(rng: random.Random, props: dict[str, int], max_size: int, **kw) -> Formula:
    size = rng.randint(1, max_size)
    return to_nnf(random_raw(rng, list(props), size, **kw), dict(props))


def random_spec(rng: random.Random, n_conjuncts: int, max_size: int,
                n_inputs: int, n_outputs: int) -> SynthesisSpec:
    """Conjunction of random formulas, each mentioning at least one output."""
    if n_conjuncts < 1 or max_size < 1 or n_inputs < 0 or n_outputs < 1:
        raise ValueError("need n_conjuncts >= 1, max_size >= 1, n_inputs >= 0, n_outputs >= 1")
    inputs = tuple(f"i{k}" for k in range(n_inputs))
    outputs = tuple(f"o{k}" for k in range(n_outputs))
    props = {name: k for k, name in enumerate(inputs + outputs)}
    conjuncts = []
    while len(conjuncts) < n_conjuncts:
        f = random_formula(rng, props, max_size, negation=False)
        if any(name in outputs for name in propositions(f)):
            conjuncts.append(f)
    return SynthesisSpec(and_(*conjuncts), inputs, outputs)


def gen_random(seed: int, n_conjuncts: int, size: int, n_inputs: int,
               n_outputs: int) -> tuple[str, str]:
    """Formula text and partition text for a seeded random specification."""
    spec = random_spec(random.Random(seed), n_conjuncts, size, n_inputs, n_outputs)
    return str(spec.phi) + "\n", format_partition(spec.inputs, spec.outputs)
