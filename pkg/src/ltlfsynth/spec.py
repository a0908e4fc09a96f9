"""Synthesis specifications ``(phi, X, Y)`` and the ``.part`` file format."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .formula import Formula, propositions
from .parser import parse_formula

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_PART_LINE = re.compile(r"(\.inputs|\.outputs)\b\s*:?\s*(.*)\Z")


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class SynthesisSpec:
    """A formula with its environment inputs ``X`` and agent outputs ``Y``.

    Proposition indices are positional: inputs take ``0..|X|-1`` and outputs
    follow, so a letter is ``x_bits | y_bits << |X|``.
    """
    phi: Formula
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    props: dict[str, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        names = self.inputs + self.outputs
        for name in names:
            if not _IDENT.match(name):
                raise SpecError(f"invalid proposition name {name!r}")
        if len(set(names)) != len(names):
            overlap = set(self.inputs) & set(self.outputs)
            raise SpecError(f"inputs and outputs must be disjoint and unique: {sorted(overlap) or names}")
        props = {name: i for i, name in enumerate(names)}
        for name, idx in propositions(self.phi).items():
            if props.get(name) != idx:
                raise SpecError(f"proposition {name!r} is not declared as an input or output")
        object.__setattr__(self, "props", props)

    @classmethod
    def parse(cls, text: str, inputs, outputs) -> "SynthesisSpec":
        inputs, outputs = tuple(inputs), tuple(outputs)
        props = {name: i for i, name in enumerate(inputs + outputs)}
        known = dict(props)
        phi = parse_formula(text, props)
        extra = sorted(set(props) - set(known))
        if extra:
            raise SpecError(f"undeclared propositions: {', '.join(extra)}")
        return cls(phi, inputs, outputs)

    def with_formula(self, phi: Formula) -> "SynthesisSpec":
        return SynthesisSpec(phi, self.inputs, self.outputs)

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.inputs + self.outputs

    def letter(self, x: int, y: int) -> int:
        return x | y << len(self.inputs)


def parse_partition(text: str) -> tuple[list[str], list[str]]:
    """Read ``.inputs: a b`` / ``.outputs: c d`` lines (colon optional)."""
    inputs = outputs = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        m = _PART_LINE.match(line)
        if m is None:
            raise SpecError(f"partition line {lineno}: expected .inputs or .outputs, got {line!r}")
        if m.group(1) == ".inputs":
            inputs = m.group(2).split()
        else:
            outputs = m.group(2).split()
    if inputs is None or outputs is None:
        raise SpecError("partition needs both .inputs and .outputs lines")
    return inputs, outputs


def format_partition(inputs, outputs) -> str:
    return f".inputs: {' '.join(inputs)}\n.outputs: {' '.join(outputs)}\n"


def load_spec(formula_path, partition_path) -> SynthesisSpec:
    text = Path(formula_path).read_text()
    inputs, outputs = parse_partition(Path(partition_path).read_text())
    return SynthesisSpec.parse(text, inputs, outputs)
