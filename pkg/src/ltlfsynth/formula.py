"""Hash-consed LTLf formulas in negation normal form.

Every formula is built through the constructors in this module, which
intern nodes in a global table.  Two structurally equal formulas are the
same Python object, so ``is``/``==`` and hashing are O(1).  And/Or nodes
are flattened, deduplicated, constant-folded and sorted on construction,
which means every interned formula is already canonical.
"""
from __future__ import annotations

import threading
from typing import Iterable, Iterator

TRUE, FALSE, PROP, NOTPROP, AND, OR, NEXT, WNEXT, UNTIL, RELEASE = range(10)

KIND_NAMES = ("True", "False", "Prop", "NotProp", "And", "Or",
              "StrongNext", "WeakNext", "Until", "Release")

_BINARY_SYMBOL = {AND: "&&", OR: "||", UNTIL: "U", RELEASE: "R"}


class Formula:
    """An interned NNF node.  Do not instantiate directly."""

    __slots__ = ("kind", "children", "name", "index", "id", "key", "_text", "_xnf", "_size")

    def __init__(self, kind: int, children: tuple, name: str | None, index: int | None, uid: int):
        self.kind = kind
        self.children = children
        self.name = name
        self.index = index
        self.id = uid
        self._text = _render(kind, children, name)
        # total order used for And/Or children; independent of interning history
        self.key = (kind, self._text, -1 if index is None else index)
        self._xnf = None
        self._size = None

    def __repr__(self) -> str:
        return f"Formula({self._text})"

    def __str__(self) -> str:
        return self._text

    def __lt__(self, other: "Formula") -> bool:
        return self.key < other.key

    def __reduce__(self):
        return (_rebuild, (self.kind, self.children, self.name, self.index))

    @property
    def kind_name(self) -> str:
        return KIND_NAMES[self.kind]

    @property
    def left(self) -> "Formula":
        return self.children[0]

    @property
    def right(self) -> "Formula":
        return self.children[-1]

    @property
    def is_temporal(self) -> bool:
        return self.kind >= NEXT

    @property
    def is_literal(self) -> bool:
        return self.kind in (PROP, NOTPROP)


def _render(kind, children, name) -> str:
    if kind == TRUE:
        return "true"
    if kind == FALSE:
        return "false"
    if kind == PROP:
        return name
    if kind == NOTPROP:
        return "!" + name
    if kind == NEXT:
        return "X " + children[0]._text
    if kind == WNEXT:
        return "N " + children[0]._text
    sym = f" {_BINARY_SYMBOL[kind]} "
    return "(" + sym.join(c._text for c in children) + ")"


_lock = threading.Lock()
_table: dict[tuple, Formula] = {}


def _intern(kind: int, children: tuple = (), name: str | None = None,
            index: int | None = None) -> Formula:
    if kind in (PROP, NOTPROP):
        k = (kind, name, index)
    else:
        k = (kind,) + tuple(c.id for c in children)
    node = _table.get(k)
    if node is not None:
        return node
    with _lock:
        node = _table.get(k)
        if node is None:
            node = Formula(kind, children, name, index, len(_table))
            _table[k] = node
    return node


def _rebuild(kind, children, name, index):
    if kind == TRUE:
        return true()
    if kind == FALSE:
        return false()
    if kind == PROP:
        return prop(name, index)
    if kind == NOTPROP:
        return not_prop(name, index)
    return _CONSTRUCTORS[kind](*children)


def interned_count() -> int:
    return len(_table)


# -- constructors -----------------------------------------------------------

def true() -> Formula:
    return _intern(TRUE)


def false() -> Formula:
    return _intern(FALSE)


def prop(name: str, index: int) -> Formula:
    return _intern(PROP, name=name, index=index)


def not_prop(name: str, index: int) -> Formula:
    return _intern(NOTPROP, name=name, index=index)


def _junction(kind: int, unit: int, zero: int, operands: Iterable[Formula]) -> Formula:
    seen: set[Formula] = set()
    for f in operands:
        if f.kind == zero:
            return _intern(zero)
        if f.kind == unit:
            continue
        if f.kind == kind:
            seen.update(f.children)
        else:
            seen.add(f)
    if not seen:
        return _intern(unit)
    if len(seen) == 1:
        return next(iter(seen))
    return _intern(kind, tuple(sorted(seen, key=lambda f: f.key)))


def and_(*operands: Formula) -> Formula:
    return _junction(AND, TRUE, FALSE, operands)


def or_(*operands: Formula) -> Formula:
    return _junction(OR, FALSE, TRUE, operands)


def next_(f: Formula) -> Formula:
    if f.kind == FALSE:
        return f
    return _intern(NEXT, (f,))


def wnext(f: Formula) -> Formula:
    if f.kind == TRUE:
        return f
    return _intern(WNEXT, (f,))


def until(left: Formula, right: Formula) -> Formula:
    if right.kind in (TRUE, FALSE):
        return right
    return _intern(UNTIL, (left, right))


def release(left: Formula, right: Formula) -> Formula:
    if right.kind in (TRUE, FALSE):
        return right
    return _intern(RELEASE, (left, right))


def eventually(f: Formula) -> Formula:
    return until(true(), f)


def always(f: Formula) -> Formula:
    return release(false(), f)


_CONSTRUCTORS = {AND: and_, OR: or_, NEXT: next_, WNEXT: wnext,
                 UNTIL: until, RELEASE: release}


def negate(f: Formula) -> Formula:
    """NNF negation (pushes the negation down to the literals)."""
    k = f.kind
    if k == TRUE:
        return false()
    if k == FALSE:
        return true()
    if k == PROP:
        return not_prop(f.name, f.index)
    if k == NOTPROP:
        return prop(f.name, f.index)
    if k == AND:
        return or_(*(negate(c) for c in f.children))
    if k == OR:
        return and_(*(negate(c) for c in f.children))
    if k == NEXT:
        return wnext(negate(f.children[0]))
    if k == WNEXT:
        return next_(negate(f.children[0]))
    if k == UNTIL:
        return release(negate(f.left), negate(f.right))
    return until(negate(f.left), negate(f.right))


# -- structural operations --------------------------------------------------

def canonicalize(f: Formula) -> Formula:
    """Rebuild ``f`` bottom-up through the canonicalizing constructors.

    Interned formulas are canonical already, so this is the identity on
    them; it exists for callers that assemble nodes by hand.
    """
    if f.kind in (TRUE, FALSE, PROP, NOTPROP):
        return f
    return _CONSTRUCTORS[f.kind](*(canonicalize(c) for c in f.children))


def decompose(f: Formula) -> list[Formula]:
    """Top-level conjuncts of ``f``; ``[f]`` when ``f`` is not a conjunction."""
    if f.kind == AND:
        return list(f.children)
    return [f]


def xnf(f: Formula) -> Formula:
    """Next normal form: unfold Until/Release one step, leave X/N untouched."""
    cached = f._xnf
    if cached is not None:
        return cached
    k = f.kind
    if k == AND:
        out = and_(*(xnf(c) for c in f.children))
    elif k == OR:
        out = or_(*(xnf(c) for c in f.children))
    elif k == UNTIL:
        out = or_(xnf(f.right), and_(xnf(f.left), next_(f)))
    elif k == RELEASE:
        out = and_(xnf(f.right), or_(xnf(f.left), wnext(f)))
    else:
        out = f
    f._xnf = out
    return out


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over distinct subformulas."""
    seen: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        yield g
        stack.extend(reversed(g.children))


def closure(f: Formula) -> set[Formula]:
    return set(subformulas(f))


def size(f: Formula) -> int:
    """Number of nodes in the syntax tree (shared subtrees counted again)."""
    if f._size is None:
        f._size = 1 + sum(size(c) for c in f.children)
    return f._size


def propositions(f: Formula) -> dict[str, int]:
    return {g.name: g.index for g in subformulas(f) if g.kind in (PROP, NOTPROP)}


def is_nnf(f: Formula) -> bool:
    return all(0 <= g.kind <= RELEASE for g in subformulas(f))
