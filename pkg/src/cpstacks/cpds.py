"""Alternating collapsible pushdown systems.

A system is a finite set of control states with rules of two kinds: an
ordinary rule fires when the top character matches and its stack operation is
defined, moving to a single successor configuration; an alternating rule
leaves the stack alone and branches conjunctively into a set of controls.
One step of the transition relation is computed by :func:`successors`;
:func:`bounded_reach` flattens alternating branches into their members, which
over-approximates AND-branching but is adequate for desk-scale plumbing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimitExceeded, UndefinedOperation
from .stacks import Operation, Stack, apply_op, top, validate_stack

__all__ = [
    "OrdinaryRule",
    "AlternatingRule",
    "Configuration",
    "Cpds",
    "successors",
    "bounded_reach",
]


@dataclass(frozen=True)
class OrdinaryRule:
    control: str
    char: str
    op: Operation
    target: str


@dataclass(frozen=True)
class AlternatingRule:
    control: str
    targets: frozenset

    def __post_init__(self):
        object.__setattr__(self, "targets", frozenset(self.targets))


@dataclass(frozen=True)
class Configuration:
    control: str
    stack: Stack


@dataclass(frozen=True)
class Cpds:
    order: int
    alphabet: frozenset
    controls: frozenset
    rules: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "controls", frozenset(self.controls))
        object.__setattr__(self, "rules", frozenset(self.rules))
        for r in self.rules:
            if isinstance(r, OrdinaryRule):
                ends = {r.control, r.target}
                if r.char not in self.alphabet:
                    raise ValueError(f"rule reads {r.char!r} outside the alphabet")
                if r.op.char is not None and r.op.char not in self.alphabet:
                    raise ValueError(
                        f"rule writes {r.op.char!r} outside the alphabet"
                    )
                # rew carries no order field; it acts at order 1.
                if (r.op.order or 1) > self.order:
                    raise ValueError(
                        f"rule operation {r.op.text()} exceeds order {self.order}"
                    )
            elif isinstance(r, AlternatingRule):
                ends = {r.control} | r.targets
            else:
                raise TypeError(f"not a rule: {r!r}")
            missing = ends - self.controls
            if missing:
                raise ValueError(f"rule endpoint {sorted(missing)[0]} not a control state")


def successors(conf: Configuration, sys: Cpds) -> set:
    """One-step successor items: a :class:`Configuration` per applicable
    ordinary rule, a frozenset of configurations (conjunctive branch) per
    alternating rule at this control.  Inapplicable rules contribute nothing.
    """
    items: set = set()
    try:
        top_char = top(1, conf.stack).char
    except UndefinedOperation:
        top_char = None
    for r in sys.rules:
        if isinstance(r, OrdinaryRule):
            if r.control != conf.control or r.char != top_char:
                continue
            try:
                result = apply_op(r.op, conf.stack)
            except UndefinedOperation:
                continue
            items.add(Configuration(r.target, result))
        else:
            if r.control == conf.control:
                items.add(frozenset(Configuration(q, conf.stack) for q in r.targets))
    return items


def bounded_reach(
    start: Configuration, sys: Cpds, depth: int, max_visited: int | None = None
) -> set:
    """All configurations reachable from ``start`` within ``depth`` steps,
    treating every member of an alternating branch as reached.  Raises
    :class:`ResourceLimitExceeded` when the visited set outgrows
    ``max_visited``."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if not validate_stack(start.stack, sys.order):
        raise ValueError("start configuration carries a malformed stack")
    visited = {start}
    frontier = {start}
    for _ in range(depth):
        fresh: set = set()
        for conf in frontier:
            for item in successors(conf, sys):
                members = item if isinstance(item, frozenset) else (item,)
                fresh.update(m for m in members if m not in visited)
        if not fresh:
            break
        visited |= fresh
        if max_visited is not None and len(visited) > max_visited:
            raise ResourceLimitExceeded(
                f"visited set exceeded {max_visited} configurations"
            )
        frontier = fresh
    return visited
