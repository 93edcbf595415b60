"""Order-n collapsible stacks.

An order-1 stack is a sequence of atoms; an order-k stack is a sequence of
order-(k-1) stacks.  The first element of a sequence is the top.  Every atom
carries a character and a link ``(order, index)``: collapsing on a link of
order o keeps the ``index`` bottommost components of the topmost order-o
stack.  Links are stored as plain integers, so duplicating a subtree (push)
copies them verbatim and the copies keep pointing at the same depth.

Well-formedness: inside any order-o stack of m components, an order-o link on
an atom located in component j (1-based from the top) must satisfy
``index <= m - j``, i.e. the link destination lies strictly below the
component holding the atom.  Links of order 1 are never created by the
operations here (their created form is the null link ``(1, 0)``) and there is
no order-1 collapse, but stacks carrying well-formed order-1 links with a
positive index are accepted by :func:`validate_stack`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import UndefinedOperation

__all__ = [
    "Link",
    "NULL_LINK",
    "Atom",
    "Stack",
    "empty_stack",
    "top",
    "bottom",
    "compose",
    "decompose",
    "pop",
    "push",
    "collapse",
    "cpush",
    "rewrite",
    "Operation",
    "apply_op",
    "atom_count",
    "linearize",
    "substacks",
    "link_destination",
    "validate_stack",
]


@dataclass(frozen=True)
class Link:
    """A collapse link: target stack order and number of components kept."""

    order: int
    index: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"link order must be >= 1, got {self.order}")
        if self.index < 0:
            raise ValueError(f"link index must be >= 0, got {self.index}")


NULL_LINK = Link(1, 0)


@dataclass(frozen=True)
class Atom:
    """A stack character together with its collapse link."""

    char: str
    link: Link = NULL_LINK


@dataclass(frozen=True)
class Stack:
    """An order-k stack; ``items[0]`` is the top.

    Items of an order-1 stack are :class:`Atom`; items of an order-k stack
    (k >= 2) are order-(k-1) stacks.  Instances are immutable and hashable,
    so they can be used as dict keys and set members.
    """

    order: int
    items: tuple = ()

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"stack order must be >= 1, got {self.order}")
        items = tuple(self.items)
        object.__setattr__(self, "items", items)
        if self.order == 1:
            for it in items:
                if not isinstance(it, Atom):
                    raise ValueError("order-1 stacks contain atoms only")
        else:
            for it in items:
                if not isinstance(it, Stack) or it.order != self.order - 1:
                    raise ValueError(
                        f"order-{self.order} stacks contain order-{self.order - 1} stacks only"
                    )


def empty_stack(order: int) -> Stack:
    return Stack(order, ())


def top(k: int, w: Stack):
    """Topmost order-(k-1) stack of ``w`` (the top atom for k = 1).

    ``k`` ranges over 1..n+1; ``top(n+1, w)`` is ``w`` itself.  Undefined when
    any stack on the top spine down to order k is empty.
    """
    if k == w.order + 1:
        return w
    if not 1 <= k <= w.order:
        raise UndefinedOperation(f"top({k}, _) on an order-{w.order} stack")
    cur = w
    while cur.order > k:
        if not cur.items:
            raise UndefinedOperation(f"top({k}, _): empty order-{cur.order} stack on the spine")
        cur = cur.items[0]
    if not cur.items:
        raise UndefinedOperation(f"top({k}, _): topmost order-{k} stack is empty")
    return cur.items[0]


def bottom(k: int, i: int, w: Stack) -> Stack:
    """Keep the ``i`` bottommost components of the topmost order-k stack.

    Requires i >= 1 and i <= the component count of that stack; recursion
    follows the top spine, so it is undefined across empty spine stacks.
    """
    if i < 1:
        raise UndefinedOperation(f"bottom({k}, {i}, _): index must be >= 1")
    if not 1 <= k <= w.order:
        raise UndefinedOperation(f"bottom({k}, _, _) on an order-{w.order} stack")
    if k == w.order:
        if i > len(w.items):
            raise UndefinedOperation(
                f"bottom({k}, {i}, _): stack has only {len(w.items)} components"
            )
        return Stack(w.order, w.items[len(w.items) - i :])
    if not w.items:
        raise UndefinedOperation(f"bottom({k}, _, _): empty order-{w.order} stack on the spine")
    return Stack(w.order, (bottom(k, i, w.items[0]),) + w.items[1:])


def compose(u, k: int, v: Stack) -> Stack:
    """Prepend ``u`` (order k-1, an atom for k = 1) onto the topmost order-k
    stack of ``v``."""
    if not 1 <= k <= v.order:
        raise UndefinedOperation(f"compose(_, {k}, _) on an order-{v.order} stack")
    if k == 1:
        if not isinstance(u, Atom):
            raise ValueError("compose at order 1 takes an atom")
    elif not isinstance(u, Stack) or u.order != k - 1:
        raise ValueError(f"compose at order {k} takes an order-{k - 1} stack")
    if k == v.order:
        return Stack(v.order, (u,) + v.items)
    if not v.items:
        raise UndefinedOperation(f"compose(_, {k}, _): empty order-{v.order} stack on the spine")
    return Stack(v.order, (compose(u, k, v.items[0]),) + v.items[1:])


def decompose(k: int, w: Stack):
    """Split ``w`` as (topmost order-(k-1) component, rest).

    ``compose(u, k, v) == w`` holds for the returned pair.  Undefined when the
    topmost order-k stack is empty or unreachable.
    """
    if not 1 <= k <= w.order:
        raise UndefinedOperation(f"decompose({k}, _) on an order-{w.order} stack")
    if k == w.order:
        if not w.items:
            raise UndefinedOperation(f"decompose({k}, _): stack is empty")
        return w.items[0], Stack(w.order, w.items[1:])
    if not w.items:
        raise UndefinedOperation(f"decompose({k}, _): empty order-{w.order} stack on the spine")
    u, rest = decompose(k, w.items[0])
    return u, Stack(w.order, (rest,) + w.items[1:])


def pop(k: int, w: Stack) -> Stack:
    """Remove the topmost order-(k-1) component."""
    return decompose(k, w)[1]


def push(k: int, w: Stack) -> Stack:
    """Duplicate the topmost order-(k-1) component (k >= 2).  Link values are
    copied verbatim."""
    if k < 2:
        raise ValueError("push exists for orders >= 2 only")
    u, _ = decompose(k, w)
    return compose(u, k, w)


def collapse(k: int, w: Stack) -> Stack:
    """Follow the top atom's link: requires the link to have order exactly k
    and a positive index; the result is ``bottom(k, index, w)``."""
    if k < 2:
        raise ValueError("collapse exists for orders >= 2 only")
    a = top(1, w)
    if a.link.order != k:
        raise UndefinedOperation(
            f"collapse({k}, _): top character carries an order-{a.link.order} link"
        )
    if a.link.index < 1:
        raise UndefinedOperation(f"collapse({k}, _): top character carries a null link")
    return bottom(k, a.link.index, w)


def cpush(char: str, k: int, w: Stack) -> Stack:
    """Push ``char`` with a fresh order-k link (k >= 2).

    The link index is m - 1 where m is the component count of the topmost
    order-k stack, so collapsing right away removes exactly that stack's top
    component: ``collapse(k, cpush(c, k, w)) == pop(k, w)`` whenever both
    sides are defined.
    """
    if k < 2:
        raise ValueError("cpush exists for orders >= 2 only")
    if k > w.order:
        raise UndefinedOperation(f"cpush(_, {k}, _) on an order-{w.order} stack")
    tk = top(k + 1, w)  # the topmost order-k stack (w itself when k == order)
    if not tk.items:
        raise UndefinedOperation(f"cpush(_, {k}, _): topmost order-{k} stack is empty")
    return compose(Atom(char, Link(k, len(tk.items) - 1)), 1, w)


def rewrite(char: str, w: Stack) -> Stack:
    """Replace the top character, preserving its link."""
    a, rest = decompose(1, w)
    return compose(Atom(char, a.link), 1, rest)


_OP_RE = re.compile(r"^(pop|push|collapse)([0-9]+)$|^rew_(.+)$|^cpush_(.+)_([0-9]+)$")


@dataclass(frozen=True)
class Operation:
    """A symbolic stack operation.

    kind: one of pop/push/collapse/cpush/rew.  ``order`` is set for all but
    rew; ``char`` is set for cpush and rew.  Text form: ``pop2``, ``push3``,
    ``collapse2``, ``cpush_a_2``, ``rew_b``.
    """

    kind: str
    order: int | None = None
    char: str | None = None

    def __post_init__(self):
        if self.kind not in ("pop", "push", "collapse", "cpush", "rew"):
            raise ValueError(f"unknown operation kind {self.kind!r}")
        if self.kind == "rew":
            if self.order is not None or not self.char:
                raise ValueError("rew takes a character and no order")
        else:
            if self.order is None or self.order < 1:
                raise ValueError(f"{self.kind} needs a positive order")
            if self.kind in ("push", "collapse", "cpush") and self.order < 2:
                raise ValueError(f"{self.kind} exists for orders >= 2 only")
            if (self.kind == "cpush") != (self.char is not None):
                raise ValueError("exactly cpush takes a character")

    @staticmethod
    def parse(text: str) -> "Operation":
        m = _OP_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse operation {text!r}")
        if m.group(1):
            return Operation(m.group(1), int(m.group(2)))
        if m.group(3) is not None:
            return Operation("rew", char=m.group(3))
        return Operation("cpush", int(m.group(5)), m.group(4))

    def text(self) -> str:
        if self.kind == "rew":
            return f"rew_{self.char}"
        if self.kind == "cpush":
            return f"cpush_{self.char}_{self.order}"
        return f"{self.kind}{self.order}"


def apply_op(op: Operation, w: Stack) -> Stack:
    """Apply ``op`` to ``w``; raises :class:`UndefinedOperation` when the
    operation's decomposition or link requirement fails."""
    if op.kind == "rew":
        return rewrite(op.char, w)
    if op.order > w.order:
        raise UndefinedOperation(f"{op.text()} on an order-{w.order} stack")
    if op.kind == "pop":
        return pop(op.order, w)
    if op.kind == "push":
        return push(op.order, w)
    if op.kind == "collapse":
        return collapse(op.order, w)
    return cpush(op.char, op.order, w)


def atom_count(w: Stack) -> int:
    total = 0
    for it in w.items:
        total += 1 if isinstance(it, Atom) else atom_count(it)
    return total


def linearize(w: Stack) -> list:
    """Flatten ``w`` into tokens: atoms, and an int o for the end of each
    order-o stack.  Suffixes of the token list correspond one-to-one with the
    substacks of ``w``, in top-to-bottom order."""
    out: list = []

    def walk(s: Stack):
        for it in s.items:
            if isinstance(it, Atom):
                out.append(it)
            else:
                walk(it)
        out.append(s.order)

    walk(w)
    return out


def _successor(s: Stack) -> Stack:
    # Remove the smallest removable piece from the top: the top atom if the
    # topmost order-1 stack is non-empty, otherwise the empty shell where the
    # top spine bottoms out.
    cur = s
    while cur.order > 1 and cur.items:
        cur = cur.items[0]
    k = 1 if cur.items else cur.order + 1
    return decompose(k, s)[1]


def substacks(w: Stack) -> list[Stack]:
    """All stacks reachable from ``w`` by repeatedly removing a topmost
    component at any order, as a chain ordered top-to-bottom: position 0 is
    ``w``, the last position is the empty order-n stack.  The chain length is
    the atom count plus the number of stack nodes."""
    out = [w]
    cur = w
    while cur.items or cur.order != w.order:
        cur = _successor(cur)
        out.append(cur)
    return out


def link_destination(p: int, w: Stack) -> int:
    """Position (within ``substacks(w)``) of the stack the top atom of
    substack ``p`` collapses to.  Requires that atom to have a defined top and
    a link with index >= 1; well-formedness makes the result > p."""
    chain = substacks(w)
    s = chain[p]
    a = top(1, s)
    if a.link.index < 1:
        raise UndefinedOperation("link_destination: top character carries a null link")
    dest = bottom(a.link.order, a.link.index, s)
    index = {v: i for i, v in enumerate(chain)}
    return index[dest]


def validate_stack(w: Stack, order: int | None = None) -> bool:
    """True iff ``w`` has the requested order and every link satisfies
    ``order <= n`` and ``index <= m - j`` against its enclosing stack of the
    link's order.  Total: never raises on structurally sound stacks."""
    n = w.order if order is None else order
    if w.order != n:
        return False

    def walk(s: Stack, caps: dict[int, int]) -> bool:
        m = len(s.items)
        for j, child in enumerate(s.items, start=1):
            caps[s.order] = m - j
            if isinstance(child, Atom):
                link = child.link
                if link.order > n or link.index > caps[link.order]:
                    return False
            elif not walk(child, caps):
                return False
        caps.pop(s.order, None)
        return True

    return walk(w, {})
