"""Alternating automata over collapsible stacks.

An order-n automaton has one state set per order.  A state of order k >= 2
reads the topmost order-(k-1) component with a lower-order state and sends a
set of order-k states to the remainder; a state of order 1 reads the top
character, sends a set of order-1 states to the remainder of the order-1
stack, and may additionally send a branch set of order-o states through the
character's collapse link.  A branch set is tagged with the single order its
states belong to; an empty branch set carries no tag and fires on any link,
null links included.  A state set attached to an exhausted boundary (the
suffix where the topmost order-k stack is empty) must consist of final
order-k states.

Membership is decided in one bottom-to-top pass over the linearized stack:
each suffix position gets, per order, the maximal state set from which the
remaining stack is accepted.  The pass touches each (position, order) pair
once, so the run time is linear in the stack size for a fixed automaton.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import MalformedCertificate, NotAccepted, OrderMismatch
from .stacks import Atom, Link, Stack, linearize

__all__ = [
    "CharTransition",
    "Transition",
    "StackAutomaton",
    "validate_automaton",
    "RunCertificate",
    "membership_table",
    "member",
    "extract_run",
    "check_run",
]


@dataclass(frozen=True)
class CharTransition:
    """Order-1 transition: read ``char``, continue below from every state in
    ``rest``, and require ``branch`` (order-``branch_order`` states) at the
    link destination.  ``branch_order`` is None exactly when the branch set is
    empty."""

    state: str
    char: str
    branch_order: int | None
    branch: frozenset
    rest: frozenset

    def __post_init__(self):
        object.__setattr__(self, "branch", frozenset(self.branch))
        object.__setattr__(self, "rest", frozenset(self.rest))
        if (self.branch_order is None) != (not self.branch):
            raise ValueError("branch order is carried exactly by non-empty branch sets")


@dataclass(frozen=True)
class Transition:
    """Order-k transition (k >= 2): read the topmost order-(k-1) component
    from ``component``, continue below from every state in ``rest``."""

    state: str
    component: str
    rest: frozenset

    def __post_init__(self):
        object.__setattr__(self, "rest", frozenset(self.rest))


@dataclass(frozen=True)
class StackAutomaton:
    """States, finals and transitions per order; ``states[k]`` and
    ``finals[k]`` exist for 1 <= k <= order, ``transitions[k]`` for k >= 2."""

    order: int
    alphabet: frozenset
    states: Mapping[int, frozenset]
    finals: Mapping[int, frozenset]
    char_transitions: frozenset
    transitions: Mapping[int, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(
            self, "states", {k: frozenset(v) for k, v in dict(self.states).items()}
        )
        object.__setattr__(
            self, "finals", {k: frozenset(v) for k, v in dict(self.finals).items()}
        )
        object.__setattr__(self, "char_transitions", frozenset(self.char_transitions))
        # Orders without transitions are dropped so equal automata compare
        # equal no matter how the mapping was built.
        object.__setattr__(
            self,
            "transitions",
            {k: frozenset(v) for k, v in dict(self.transitions).items() if v},
        )


def validate_automaton(aut: StackAutomaton) -> list[str]:
    """Structural diagnostics; empty list means the automaton is well formed.
    Checks per-order state disjointness, final containment, endpoint orders of
    every transition, and branch-set order tags."""
    problems: list[str] = []
    n = aut.order
    if n < 1:
        return [f"order must be >= 1, got {n}"]
    for k in range(1, n + 1):
        if k not in aut.states:
            problems.append(f"missing state set for order {k}")
        if k not in aut.finals:
            problems.append(f"missing final set for order {k}")
    if problems:
        return problems
    for k in range(1, n + 1):
        for j in range(k + 1, n + 1):
            overlap = aut.states[k] & aut.states[j]
            if overlap:
                problems.append(
                    f"state sets of orders {k} and {j} overlap: {sorted(overlap)[0]}"
                )
        extra = aut.finals[k] - aut.states[k]
        if extra:
            problems.append(f"final state {sorted(extra)[0]} not in order-{k} states")
    for k in sorted(aut.transitions):
        if not 2 <= k <= n:
            problems.append(f"transition order {k} out of range 2..{n}")
            continue
        for t in aut.transitions[k]:
            if t.state not in aut.states[k]:
                problems.append(f"order-{k} transition from unknown state {t.state}")
            if t.component not in aut.states[k - 1]:
                problems.append(
                    f"order-{k} transition reads component with non-order-{k - 1} state {t.component}"
                )
            extra = t.rest - aut.states[k]
            if extra:
                problems.append(
                    f"order-{k} transition target {sorted(extra)[0]} not an order-{k} state"
                )
    for t in aut.char_transitions:
        if t.state not in aut.states.get(1, frozenset()):
            problems.append(f"order-1 transition from unknown state {t.state}")
        if t.char not in aut.alphabet:
            problems.append(f"order-1 transition reads {t.char!r} outside the alphabet")
        extra = t.rest - aut.states.get(1, frozenset())
        if extra:
            problems.append(
                f"order-1 transition target {sorted(extra)[0]} not an order-1 state"
            )
        if t.branch_order is not None:
            if not 2 <= t.branch_order <= n:
                problems.append(f"branch order {t.branch_order} out of range 2..{n}")
            else:
                extra = t.branch - aut.states[t.branch_order]
                if extra:
                    problems.append(
                        f"branch state {sorted(extra)[0]} not an order-{t.branch_order} state"
                    )
    return problems


class _Layout:
    """Token layout of one stack: per-order closing positions and prefix
    counts, enough to find component ends and collapse destinations in O(1)."""

    def __init__(self, w: Stack):
        self.tokens = linearize(w)
        self.order = w.order
        n = w.order
        npos = len(self.tokens)
        self.close_pos = {k: [] for k in range(1, n + 1)}
        # counts[k][p] = number of order-k closers strictly before position p
        self.counts = {k: [0] * (npos + 1) for k in range(1, n + 1)}
        for p, t in enumerate(self.tokens):
            for k in range(1, n + 1):
                self.counts[k][p + 1] = self.counts[k][p]
            if not isinstance(t, Atom):
                self.close_pos[t].append(p)
                self.counts[t][p + 1] += 1

    def base(self, p: int) -> int:
        """Smallest order with an association at position p: 1 at atoms, k at
        an order-k closer."""
        t = self.tokens[p]
        return 1 if isinstance(t, Atom) else t

    def after_component(self, p: int, k: int) -> int:
        """Position just past the order-k component starting at p (the first
        order-k closer at or after p, plus one)."""
        lst = self.close_pos[k]
        return lst[self.counts[k][p]] + 1

    def destination(self, p: int, link: Link) -> int:
        """Position of the suffix reached by collapsing the atom at p."""
        o, i = link.order, link.index
        if o == 1:
            end = self.close_pos[1][self.counts[1][p]]
            m = end - p  # atoms remaining in the topmost order-1 stack
            return p + (m - i)
        end = self.close_pos[o][self.counts[o][p]]
        m = self.counts[o - 1][end] - self.counts[o - 1][p]
        idx = self.counts[o - 1][p] + (m - i) - 1
        return self.close_pos[o - 1][idx] + 1


def _normalize_initial(aut: StackAutomaton, initial) -> frozenset:
    states = frozenset([initial]) if isinstance(initial, str) else frozenset(initial)
    unknown = states - aut.states[aut.order]
    if unknown:
        raise ValueError(f"initial state {sorted(unknown)[0]} not an order-{aut.order} state")
    return states


def membership_table(w: Stack, aut: StackAutomaton) -> list[dict]:
    """The maximal run table: for every suffix position p and every order k
    down to the position's base order, the set of order-k states from which
    the remaining stack is accepted.  One entry per (position, order) pair."""
    if w.order != aut.order:
        raise OrderMismatch(f"order-{w.order} stack against an order-{aut.order} automaton")
    n = aut.order
    layout = _Layout(w)
    tokens = layout.tokens
    by_char: dict[str, list[CharTransition]] = {}
    for t in aut.char_transitions:
        by_char.setdefault(t.char, []).append(t)
    by_order = {k: list(aut.transitions.get(k, ())) for k in range(2, n + 1)}

    table: list[dict] = [dict() for _ in tokens]
    for p in range(len(tokens) - 1, -1, -1):
        t = tokens[p]
        if isinstance(t, Atom):
            below = table[p + 1][1]
            acc = set()
            for tr in by_char.get(t.char, ()):
                if tr.state in acc or not tr.rest <= below:
                    continue
                if tr.branch_order is not None:
                    if tr.branch_order != t.link.order or t.link.index < 1:
                        continue
                    dest = layout.destination(p, t.link)
                    if not tr.branch <= table[dest][tr.branch_order]:
                        continue
                acc.add(tr.state)
            table[p][1] = frozenset(acc)
            base = 1
        else:
            table[p][t] = aut.finals[t]
            base = t
        for k in range(base + 1, n + 1):
            lower = table[p][k - 1]
            below = table[layout.after_component(p, k - 1)][k]
            acc = set()
            for tr in by_order[k]:
                if tr.state not in acc and tr.component in lower and tr.rest <= below:
                    acc.add(tr.state)
            table[p][k] = frozenset(acc)
    return table


def member(w: Stack, aut: StackAutomaton, initial) -> bool:
    """True iff the automaton accepts ``w`` from every state in ``initial``
    (a state name or a set of order-n state names; the empty set accepts
    everything)."""
    states = _normalize_initial(aut, initial)
    if not states:
        return True
    table = membership_table(w, aut)
    return states <= table[0][aut.order]


@dataclass(frozen=True)
class RunCertificate:
    """State sets indexed by (substack position, order)."""

    entries: Mapping[tuple, frozenset]

    def __post_init__(self):
        object.__setattr__(
            self, "entries", {k: frozenset(v) for k, v in dict(self.entries).items()}
        )

    def get(self, position: int, order: int) -> frozenset:
        return self.entries.get((position, order), frozenset())


def extract_run(w: Stack, aut: StackAutomaton, initial) -> RunCertificate:
    """The maximal run table as a checkable certificate; raises
    :class:`NotAccepted` when the stack is rejected."""
    states = _normalize_initial(aut, initial)
    table = membership_table(w, aut)
    if not states <= table[0][aut.order]:
        raise NotAccepted(f"stack not accepted from {sorted(states)}")
    entries = {
        (p, k): sets for p, row in enumerate(table) for k, sets in row.items()
    }
    return RunCertificate(entries)


def check_run(w: Stack, aut: StackAutomaton, run: RunCertificate, initial) -> bool:
    """Verify a run certificate against its defining conditions:

    1. the empty order-n suffix carries final order-n states only;
    2. every exhausted order-k boundary carries final order-k states only;
    3. every atom's order-1 set is justified by order-1 transitions whose
       targets hold below and whose branch sets hold at the link destination;
    4. every order-k set (k >= 2) is justified by order-k transitions reading
       the component via the position's order-(k-1) set;
    and the position-0 order-n set contains ``initial``.

    Missing entries read as empty sets; :class:`MalformedCertificate` is
    raised when a state is left unjustified after its conditions consulted an
    entry the certificate does not contain, or when an entry names an unknown
    position, order, or state.
    """
    states = _normalize_initial(aut, initial)
    if w.order != aut.order:
        raise OrderMismatch(f"order-{w.order} stack against an order-{aut.order} automaton")
    n = aut.order
    layout = _Layout(w)
    tokens = layout.tokens

    for (p, k), stateset in run.entries.items():
        if not 0 <= p < len(tokens):
            raise MalformedCertificate(f"position {p} out of range")
        if not layout.base(p) <= k <= n:
            raise MalformedCertificate(f"no order-{k} association exists at position {p}")
        unknown = stateset - aut.states[k]
        if unknown:
            raise MalformedCertificate(
                f"state {sorted(unknown)[0]} is not an order-{k} state"
            )

    by_char: dict[str, list[CharTransition]] = {}
    for t in aut.char_transitions:
        by_char.setdefault(t.char, []).append(t)
    by_order = {k: list(aut.transitions.get(k, ())) for k in range(2, n + 1)}

    def unjustified(q: str, p: int, misses: list) -> bool:
        # A state whose conditions consulted a missing pair is malformed,
        # not merely rejected; with no misses the certificate is just wrong.
        if misses:
            pp, kk = misses[0]
            raise MalformedCertificate(
                f"state {q} at position {p} needs missing entry"
                f" (position {pp}, order {kk})"
            )
        return False

    for p, tok in enumerate(tokens):
        misses: list[tuple[int, int]] = []

        def probe(pp: int, kk: int) -> frozenset:
            if (pp, kk) not in run.entries:
                misses.append((pp, kk))
                return frozenset()
            return run.entries[(pp, kk)]

        if isinstance(tok, Atom):
            stateset = run.get(p, 1)
            if stateset:
                below = probe(p + 1, 1)
                for q in stateset:
                    ok = False
                    for tr in by_char.get(tok.char, ()):
                        if tr.state != q or not tr.rest <= below:
                            continue
                        if tr.branch_order is None:
                            ok = True
                            break
                        if tr.branch_order != tok.link.order or tok.link.index < 1:
                            continue
                        dest = layout.destination(p, tok.link)
                        if tr.branch <= probe(dest, tr.branch_order):
                            ok = True
                            break
                    if not ok and not unjustified(q, p, misses):
                        return False
            base = 1
        else:
            if not run.get(p, tok) <= aut.finals[tok]:
                return False
            base = tok
        for k in range(base + 1, n + 1):
            stateset = run.get(p, k)
            if not stateset:
                continue
            lower = probe(p, k - 1)
            below = probe(layout.after_component(p, k - 1), k)
            for q in stateset:
                if not any(
                    tr.state == q and tr.component in lower and tr.rest <= below
                    for tr in by_order[k]
                ) and not unjustified(q, p, misses):
                    return False
    return states <= run.get(0, n)
