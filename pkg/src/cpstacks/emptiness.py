"""Bounded non-emptiness search for stack automata.

Complete emptiness checking is out of scope; this module enumerates every
well-formed stack inside explicit size bounds in a canonical order and returns
the first accepted one.  A returned witness is proof of non-emptiness; running
out of bounded stacks is not proof of emptiness, and callers (and the CLI)
must treat NO_WITNESS_WITHIN_BOUNDS accordingly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .automata import StackAutomaton, member
from .errors import ResourceLimitExceeded
from .stacks import Atom, Link, Stack, linearize

__all__ = [
    "EnumerationBounds",
    "Witness",
    "NO_WITNESS_WITHIN_BOUNDS",
    "enumerate_stacks",
    "is_empty_bounded",
    "search_shaped",
]


@dataclass(frozen=True)
class EnumerationBounds:
    """Size box for the search: at most ``max_atoms`` characters overall and
    at most ``max_width`` components per stack at every order."""

    max_atoms: int
    max_width: int
    alphabet: tuple

    def __post_init__(self):
        if self.max_atoms < 0 or self.max_width < 0:
            raise ValueError("bounds must be non-negative")
        object.__setattr__(self, "alphabet", tuple(sorted(set(self.alphabet))))


@dataclass(frozen=True)
class Witness:
    """Accepted stack returned by a search; always passes member."""

    stack: Stack

    def __bool__(self) -> bool:
        return True


class _NoWitnessWithinBounds:
    """Exhausted the bounded space without finding an accepted stack.
    Falsy; not a proof of emptiness."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NO_WITNESS_WITHIN_BOUNDS"


NO_WITNESS_WITHIN_BOUNDS = _NoWitnessWithinBounds()


def _shapes(order: int, atoms: int, max_width: int) -> Iterator[tuple]:
    """All component-count shapes of an order-``order`` stack holding exactly
    ``atoms`` atoms.  A shape is an int (atom marker 0) for order 0 and a
    tuple of child shapes otherwise."""
    if order == 0:
        if atoms == 1:
            yield 0
        return
    for width in range(max_width + 1):
        for split in _compositions(atoms, width):
            for children in _shape_products(order - 1, split, max_width):
                yield tuple(children)


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _shape_products(order: int, split: tuple, max_width: int) -> Iterator[tuple]:
    if not split:
        yield ()
        return
    head, tail = split[0], split[1:]
    for child in _shapes(order, head, max_width):
        for rest in _shape_products(order, tail, max_width):
            yield (child,) + rest


def _link_caps(shape: tuple, order: int) -> list[dict]:
    """Per-atom caps: for the p-th atom (top-down), caps[p][o] is the largest
    well-formed index of an order-o link at that position."""
    caps: list[dict] = []

    def walk(s, o: int, above: dict):
        m = len(s)
        for j, child in enumerate(s, start=1):
            here = dict(above)
            here[o] = m - j
            if o == 1:
                caps.append(here)
            else:
                walk(child, o - 1, here)

    walk(shape, order, {})
    return caps


def _fill(shape, order: int, chars: tuple, links: tuple) -> Stack:
    it_chars = iter(chars)
    it_links = iter(links)

    def build(s, o: int):
        if o == 0:
            return Atom(next(it_chars), next(it_links))
        return Stack(o, tuple(build(c, o - 1) for c in s))

    return build(shape, order)


def _canonical_key(w: Stack) -> tuple:
    tokens = linearize(w)
    shape = tuple(0 if isinstance(t, Atom) else t for t in tokens)
    atoms = [t for t in tokens if isinstance(t, Atom)]
    return (
        len(tokens),
        shape,
        tuple(a.char for a in atoms),
        tuple(a.link.order for a in atoms),
        tuple(a.link.index for a in atoms),
    )


def enumerate_stacks(order: int, bounds: EnumerationBounds) -> Iterator[Stack]:
    """Every well-formed order-``order`` stack within bounds, exactly once,
    smallest first: by atom count, then token count, then lexicographically by
    shape, characters, link orders, link indices.  Link values range over all
    well-formed (order, index) pairs, null links included."""
    if order < 1:
        raise ValueError("order must be >= 1")
    for atoms in range(bounds.max_atoms + 1):
        layer = []
        for shape in _shapes(order, atoms, bounds.max_width):
            caps = _link_caps(shape, order)
            link_choices = [
                [Link(o, i) for o in range(1, order + 1) for i in range(cap.get(o, 0) + 1)]
                for cap in caps
            ]
            for chars in itertools.product(bounds.alphabet, repeat=atoms):
                for links in itertools.product(*link_choices):
                    layer.append(_fill(shape, order, chars, links))
        layer.sort(key=_canonical_key)
        yield from layer


def is_empty_bounded(
    aut: StackAutomaton,
    initial,
    bounds: EnumerationBounds,
    budget: int | None = None,
):
    """First enumerated stack accepted from ``initial``, as a
    :class:`Witness`; NO_WITNESS_WITHIN_BOUNDS when the bounded space holds
    none.  ``budget`` caps the number of membership tests; exceeding it raises
    :class:`ResourceLimitExceeded`."""
    tested = 0
    for w in enumerate_stacks(aut.order, bounds):
        if budget is not None and tested >= budget:
            raise ResourceLimitExceeded(f"search budget of {budget} stacks exhausted")
        tested += 1
        if member(w, aut, initial):
            return Witness(w)
    return NO_WITNESS_WITHIN_BOUNDS


def search_shaped(aut: StackAutomaton, initial, shapes: Iterable[Stack]):
    """First stack of the stream accepted from ``initial``, as a
    :class:`Witness`; NO_WITNESS_WITHIN_BOUNDS when the stream is exhausted."""
    for w in shapes:
        if member(w, aut, initial):
            return Witness(w)
    return NO_WITNESS_WITHIN_BOUNDS
