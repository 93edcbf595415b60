"""Shared oracles and generators for the test suite.

Everything here recomputes results by a route different from the library:
membership by top-down recursion over stack values, run certificates by
literal enumeration against the acceptance conditions, substacks by
pop-closure, and stack enumeration by a naive shape/character/link product.
Agreement between these and the library is the backbone of the suite.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from cpstacks import (
    Atom,
    CharTransition,
    Link,
    Stack,
    StackAutomaton,
    TilingProblem,
    Transition,
    UndefinedOperation,
    bottom,
    linearize,
    pop,
    substacks,
    top,
)


# ---------------------------------------------------------------------------
# membership oracle: top-down recursion over stack values


def _topmost_is_empty(s: Stack, k: int) -> bool:
    cur = s
    while cur.order > k:
        cur = cur.items[0]
    return not cur.items


def accept_topdown(w: Stack, aut: StackAutomaton, initial) -> bool:
    """Membership decided by memoized top-down recursion over the substack
    chain, resolving collapse links and component boundaries with bottom/pop
    on stack values rather than token arithmetic."""
    chain = substacks(w)
    index = {s: p for p, s in enumerate(chain)}
    memo: dict = {}

    def acc(q: str, k: int, p: int) -> bool:
        key = (q, k, p)
        if key in memo:
            return memo[key]
        memo[key] = False  # cycles are impossible; placeholder for safety
        s = chain[p]
        if _topmost_is_empty(s, k):
            out = q in aut.finals[k]
        elif k == 1:
            a = top(1, s)
            out = False
            for t in aut.char_transitions:
                if t.state != q or t.char != a.char:
                    continue
                if not all(acc(r, 1, p + 1) for r in t.rest):
                    continue
                if t.branch_order is None:
                    out = True
                    break
                if a.link.order != t.branch_order or a.link.index < 1:
                    continue
                d = index[bottom(a.link.order, a.link.index, s)]
                if all(acc(b, t.branch_order, d) for b in t.branch):
                    out = True
                    break
        else:
            ap = index[pop(k, s)]
            out = False
            for t in aut.transitions.get(k, ()):
                if t.state != q:
                    continue
                if acc(t.component, k - 1, p) and all(acc(r, k, ap) for r in t.rest):
                    out = True
                    break
        memo[key] = out
        return out

    states = {initial} if isinstance(initial, str) else set(initial)
    return all(acc(q, aut.order, 0) for q in states)


# ---------------------------------------------------------------------------
# run-certificate oracle: literal enumeration of full assignments


def run_pairs(w: Stack, n: int) -> list[tuple[int, int]]:
    """All (position, order) pairs a run over ``w`` may assign."""
    pairs = []
    for p, t in enumerate(linearize(w)):
        base = 1 if isinstance(t, Atom) else t
        pairs.extend((p, k) for k in range(base, n + 1))
    return pairs


def cert_valid(w: Stack, aut: StackAutomaton, entries: dict, initial) -> bool:
    """Check one full (position, order) -> state-set assignment straight
    against the acceptance conditions."""
    chain = substacks(w)
    index = {s: p for p, s in enumerate(chain)}
    tokens = linearize(w)
    for (p, k), assigned in entries.items():
        s = chain[p]
        t = tokens[p]
        if not isinstance(t, Atom) and t == k:
            if not assigned <= aut.finals[k]:
                return False
            continue
        if k == 1:
            a = top(1, s)
            for q in assigned:
                for tr in aut.char_transitions:
                    if tr.state != q or tr.char != a.char:
                        continue
                    if not tr.rest <= entries[(p + 1, 1)]:
                        continue
                    if tr.branch_order is None:
                        break
                    if a.link.order != tr.branch_order or a.link.index < 1:
                        continue
                    d = index[bottom(a.link.order, a.link.index, s)]
                    if tr.branch <= entries[(d, tr.branch_order)]:
                        break
                else:
                    return False
        else:
            ap = index[pop(k, s)]
            for q in assigned:
                for tr in aut.transitions.get(k, ()):
                    if (
                        tr.state == q
                        and tr.component in entries[(p, k - 1)]
                        and tr.rest <= entries[(ap, k)]
                    ):
                        break
                else:
                    return False
    states = {initial} if isinstance(initial, str) else set(initial)
    return states <= entries[(0, aut.order)]


def certificate_space(w: Stack, aut: StackAutomaton) -> int:
    """Number of full assignments; callers keep enumeration under a cap."""
    total = 1
    for _, k in run_pairs(w, aut.order):
        total *= 2 ** len(aut.states[k])
    return total


def accept_cert_search(w: Stack, aut: StackAutomaton, initial) -> bool:
    """Membership by brute force: search every full assignment for one that
    satisfies :func:`cert_valid`."""
    pairs = run_pairs(w, aut.order)
    per_pair = []
    for _, k in pairs:
        states = sorted(aut.states[k])
        per_pair.append(
            [
                frozenset(c)
                for size in range(len(states) + 1)
                for c in combinations(states, size)
            ]
        )
    for combo in product(*per_pair):
        if cert_valid(w, aut, dict(zip(pairs, combo)), initial):
            return True
    return False


# ---------------------------------------------------------------------------
# substacks oracle: pop-closure


def closure_substacks(w: Stack) -> set[Stack]:
    seen = {w}
    frontier = [w]
    while frontier:
        s = frontier.pop()
        for k in range(1, s.order + 1):
            try:
                v = pop(k, s)
            except UndefinedOperation:
                continue
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return seen


# ---------------------------------------------------------------------------
# random generators (seeded by the caller)


def random_stack(
    rng: random.Random,
    order: int,
    max_atoms: int = 8,
    max_width: int = 3,
    alphabet: str = "ab",
) -> Stack:
    budget = [rng.randint(0, max_atoms)]

    def build(k: int) -> Stack:
        if k == 1:
            width = rng.randint(0, min(max_width, budget[0]))
            budget[0] -= width
            return Stack(1, tuple(Atom(rng.choice(alphabet)) for _ in range(width)))
        return Stack(k, tuple(build(k - 1) for _ in range(rng.randint(0, max_width))))

    return randomize_links(rng, build(order))


def randomize_links(rng: random.Random, w: Stack) -> Stack:
    """Give every atom a uniformly random well-formed link."""
    n = w.order

    def walk(s: Stack, caps: dict[int, int]) -> Stack:
        m = len(s.items)
        out = []
        for j, child in enumerate(s.items, start=1):
            caps[s.order] = m - j
            if isinstance(child, Atom):
                o = rng.randint(1, n)
                out.append(Atom(child.char, Link(o, rng.randint(0, caps[o]))))
            else:
                out.append(walk(child, caps))
        return Stack(s.order, tuple(out))

    return walk(w, {})


def random_automaton(
    rng: random.Random,
    order: int,
    alphabet: str = "ab",
    max_states: int = 3,
) -> StackAutomaton:
    states = {
        k: frozenset(f"q{k}_{i}" for i in range(rng.randint(1, max_states)))
        for k in range(1, order + 1)
    }
    finals = {
        k: frozenset(q for q in sorted(states[k]) if rng.random() < 0.5)
        for k in range(1, order + 1)
    }

    def subset(pool, p=0.4):
        return frozenset(q for q in sorted(pool) if rng.random() < p)

    char_transitions = set()
    for _ in range(rng.randint(0, 3 * max_states)):
        state = rng.choice(sorted(states[1]))
        char = rng.choice(alphabet)
        rest = subset(states[1])
        if order >= 2 and rng.random() < 0.5:
            o = rng.randint(2, order)
            branch = subset(states[o], 0.6) or frozenset([rng.choice(sorted(states[o]))])
            char_transitions.add(CharTransition(state, char, o, branch, rest))
        else:
            char_transitions.add(CharTransition(state, char, None, frozenset(), rest))
    transitions = {}
    for k in range(2, order + 1):
        bucket = set()
        for _ in range(rng.randint(1, 3 * max_states)):
            bucket.add(
                Transition(
                    rng.choice(sorted(states[k])),
                    rng.choice(sorted(states[k - 1])),
                    subset(states[k]),
                )
            )
        transitions[k] = frozenset(bucket)
    return StackAutomaton(order, frozenset(alphabet), states, finals, char_transitions, transitions)


# ---------------------------------------------------------------------------
# exact-stack automaton (for planting known witnesses)


def exact_stack_automaton(w: Stack, alphabet=None) -> tuple[StackAutomaton, str]:
    """An automaton that accepts ``w`` from the returned state by matching it
    token for token.  With every link on ``w`` of order >= 2 and index >= 1
    the language is exactly ``{w}``; other links are matched by empty branch
    sets, which additionally admit the same stack with those links replaced."""
    n = w.order
    chain = substacks(w)
    index = {s: p for p, s in enumerate(chain)}
    tokens = linearize(w)
    states: dict[int, set] = {k: set() for k in range(1, n + 1)}
    finals: dict[int, set] = {k: set() for k in range(1, n + 1)}
    char_transitions = set()
    transitions: dict[int, set] = {k: set() for k in range(2, n + 1)}

    def name(p: int, k: int) -> str:
        return f"s{p}_{k}"

    for p, t in enumerate(tokens):
        if isinstance(t, Atom):
            base = 1
            q = name(p, 1)
            states[1].add(q)
            rest = frozenset([name(p + 1, 1)])
            # Order-1 links cannot be inspected: branch tags start at 2.
            if t.link.index >= 1 and t.link.order >= 2:
                d = index[bottom(t.link.order, t.link.index, chain[p])]
                char_transitions.add(
                    CharTransition(q, t.char, t.link.order, frozenset([name(d, t.link.order)]), rest)
                )
            else:
                char_transitions.add(CharTransition(q, t.char, None, frozenset(), rest))
        else:
            base = t
            states[base].add(name(p, base))
            finals[base].add(name(p, base))
        for k in range(base + 1, n + 1):
            q = name(p, k)
            states[k].add(q)
            ap = index[pop(k, chain[p])]
            transitions[k].add(Transition(q, name(p, k - 1), frozenset([name(ap, k)])))

    chars = frozenset(t.char for t in tokens if isinstance(t, Atom))
    aut = StackAutomaton(
        n,
        frozenset(alphabet) if alphabet is not None else (chars or frozenset("a")),
        states,
        finals,
        char_transitions,
        transitions,
    )
    return aut, name(0, n)


# ---------------------------------------------------------------------------
# naive stack enumeration (counting oracle)


def all_stacks_naive(order: int, max_atoms: int, max_width: int, alphabet) -> set[Stack]:
    """Every well-formed order-``order`` stack within the bounds, built by a
    straightforward shape x characters x links product."""

    def leaves(shape) -> int:
        return 1 if shape is None else sum(leaves(c) for c in shape)

    def shapes(k: int, atoms: int) -> set[tuple]:
        if k == 1:
            return {(None,) * i for i in range(min(atoms, max_width) + 1)}
        out = set()
        children = sorted(shapes(k - 1, atoms), key=repr)
        for width in range(max_width + 1):
            for parts in product(children, repeat=width):
                if sum(leaves(c) for c in parts) <= atoms:
                    out.add(tuple(parts))
        return out

    def fill(shape, k: int, chars: list, links: list) -> Stack:
        if k == 1:
            return Stack(1, tuple(Atom(chars.pop(0), links.pop(0)) for _ in shape))
        return Stack(k, tuple(fill(c, k - 1, chars, links) for c in shape))

    def link_choices(shape, k: int, caps: dict[int, int], out: list):
        m = len(shape)
        for j, child in enumerate(shape, start=1):
            caps[k] = m - j
            if child is None:
                out.append(
                    [Link(o, i) for o in range(1, order + 1) for i in range(caps.get(o, 0) + 1)]
                )
            else:
                link_choices(child, k - 1, caps, out)

    letters = sorted(set(alphabet))
    result = set()
    for shape in shapes(order, max_atoms):
        count = leaves(shape) if order > 1 else len(shape)
        per_atom: list = []
        link_choices(shape, order, {}, per_atom)
        for chars in product(letters, repeat=count):
            for links in product(*per_atom):
                result.add(fill(shape, order, list(chars), list(links)))
    return result


# ---------------------------------------------------------------------------
# fixed fixtures


def two_state_example() -> tuple[StackAutomaton, str]:
    """Order-2 automaton accepting from p the single-component stacks whose
    component starts with the character a (the empty rest set puts no demand
    on the atoms below)."""
    aut = StackAutomaton(
        2,
        frozenset("ab"),
        {1: frozenset({"q", "f1"}), 2: frozenset({"p", "pf"})},
        {1: frozenset({"f1"}), 2: frozenset({"pf"})},
        frozenset({CharTransition("q", "a", None, frozenset(), frozenset())}),
        {2: frozenset({Transition("p", "q", frozenset({"pf"}))})},
    )
    return aut, "p"


def square_instance() -> TilingProblem:
    """The fixed solvable instance: I starts, F ends, X fills."""
    pairs = frozenset({("I", "X"), ("X", "X"), ("X", "F")})
    return TilingProblem(frozenset("IXF"), pairs, pairs, "I", "F")


def square_instance_negative() -> TilingProblem:
    """Same tiles with (X, F) removed from the vertical relation."""
    pairs = frozenset({("I", "X"), ("X", "X"), ("X", "F")})
    vert = frozenset({("I", "X"), ("X", "X")})
    return TilingProblem(frozenset("IXF"), pairs, vert, "I", "F")
