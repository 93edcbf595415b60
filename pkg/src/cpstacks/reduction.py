"""Tiling problems compiled to order-2 stack automata.

A solution to a tiling problem over the 2^n x 2^n square can be laid out as
an order-2 stack: three spacer-only components on top (they absorb the
automaton's two-component lookahead), then one component per grid cell in
row-major order.  Each cell component reads, top to bottom, a spacer, the
n-bit row index, the n-bit column index (most significant bit first), and the
cell's tile.  The spacer of every cell except those in the last row carries
an order-2 link whose destination's top component is the cell directly below.

The generated automaton accepts exactly the encodings of valid solutions, by
conjunctively asserting nine properties from the initial state: the component
shape, the first and last index values, that consecutive components carry
consecutive indices (so indices are unique and the links are forced to form
the grid), that the links point one row down in the same column, the initial
and final tiles, and the horizontal and vertical compatibility relations.
Binary indices are compared bit by bit with guessed values, so state and
transition counts stay polynomial in n and the tile count.

Bit positions are numbered 1..2n from the least significant (bottom of the
index block) upward: positions n+1..2n are the row bits, 1..n the column
bits.  A component is read top-down, so position 2n comes first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import CharTransition, StackAutomaton, Transition
from .errors import DimensionMismatch, MalformedWitness
from .stacks import NULL_LINK, Atom, Link, Stack
from .tiling import TilingProblem, side_length

__all__ = [
    "SPACER",
    "ZERO",
    "ONE",
    "ReductionOutput",
    "build_automaton",
    "encode_witness",
    "decode_witness",
]

SPACER = "_"
ZERO = "0"
ONE = "1"
_BITS = (ZERO, ONE)


@dataclass(frozen=True)
class ReductionOutput:
    automaton: StackAutomaton
    initial: str
    alphabet: frozenset


def _check_tiles(problem: TilingProblem) -> None:
    clash = problem.tiles & {SPACER, ZERO, ONE}
    if clash:
        raise ValueError(f"tile {sorted(clash)[0]!r} collides with a reserved character")


def build_automaton(problem: TilingProblem, n: int) -> ReductionOutput:
    """Order-2 stack automaton accepting exactly the stacks that encode
    solutions of ``problem`` on the 2^n x 2^n grid, to be read from state
    ``qI``.  State names mirror the nine asserted properties (p1..p9 plus
    order-1 checker families), so the output is auditable and byte-stable."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_tiles(problem)
    tiles = sorted(problem.tiles)
    alphabet = frozenset(tiles) | {SPACER, ZERO, ONE}
    N = 2 * n

    q1: set = set()
    q2: set = set()
    d1: set = set()
    d2: set = set()

    def t1(state, char, rest, branch_state=None):
        q1.add(state)
        q1.update(rest)
        if branch_state is None:
            d1.add(CharTransition(state, char, None, frozenset(), frozenset(rest)))
        else:
            q2.add(branch_state)
            d1.add(
                CharTransition(state, char, 2, frozenset({branch_state}), frozenset(rest))
            )

    def t2(state, component, rest):
        q2.add(state)
        q1.add(component)
        q2.update(rest)
        d2.add(Transition(state, component, frozenset(rest)))

    q1.add("qf1")
    q2.add("qf2")

    # predicate states over a single component
    t1("qspc", SPACER, {"qf1"})
    t1("qany", SPACER, ())

    # qS: exactly spacer, 2n bits, one tile
    t1("qS", SPACER, {f"qB.k={N}"})
    for k in range(N, 0, -1):
        for b in _BITS:
            t1(f"qB.k={k}", b, {f"qB.k={k - 1}"})
    for t in tiles:
        t1("qB.k=0", t, {"qf1"})

    # c00 / cNN: the index block is all zeros / all ones
    t1("c00", SPACER, {f"c00.k={N}"})
    t1("cNN", SPACER, {f"cNN.k={N}"})
    for k in range(N, 1, -1):
        t1(f"c00.k={k}", ZERO, {f"c00.k={k - 1}"})
        t1(f"cNN.k={k}", ONE, {f"cNN.k={k - 1}"})
    t1("c00.k=1", ZERO, ())
    t1("cNN.k=1", ONE, ())

    # rn / cn: row index all ones / column index all ones
    t1("rn", SPACER, {f"rn.k={N}"})
    for k in range(N, n + 1, -1):
        t1(f"rn.k={k}", ONE, {f"rn.k={k - 1}"})
    t1(f"rn.k={n + 1}", ONE, ())
    t1("cn", SPACER, {"cn.j=1"})
    for j in range(1, n + 1):
        for b in _BITS:
            t1(f"cn.j={j}", b, {f"cn.j={j + 1}"})
    for j in range(n + 1, N):
        t1(f"cn.j={j}", ONE, {f"cn.j={j + 1}"})
    t1(f"cn.j={N}", ONE, ())

    # rz.i / ro.i: rightmost zero / one of the full index block at position i
    def rightmost(prefix: str, lo: int, at: str, below: str, stop: int):
        # positions run stop..N; states read top-down from position N
        for i in range(lo, N + 1):
            t1(f"{prefix}.i={i}", SPACER, {f"{prefix}.i={i}.j={N}"})
            for j in range(N, stop - 1, -1):
                name = f"{prefix}.i={i}.j={j}"
                succ = {f"{prefix}.i={i}.j={j - 1}"}
                if j > i:
                    for b in _BITS:
                        t1(name, b, succ)
                elif j == i:
                    t1(name, at, () if j == stop else succ)
                else:
                    t1(name, below, () if j == stop else succ)

    rightmost("rz", 1, ZERO, ONE, 1)
    rightmost("ro", 1, ONE, ZERO, 1)
    # row-restricted variants: only the row bits (positions n+1..2n) are read
    rightmost("rzr", n + 1, ZERO, ONE, n + 1)
    rightmost("ror", n + 1, ONE, ZERO, n + 1)

    # bit.i.b: the bit at position i is b
    for i in range(1, N + 1):
        for b in _BITS:
            t1(f"bit.i={i}.b={b}", SPACER, {f"bit.i={i}.j={N}.b={b}"})
            for j in range(N, i, -1):
                for c in _BITS:
                    t1(f"bit.i={i}.j={j}.b={b}", c, {f"bit.i={i}.j={j - 1}.b={b}"})
            t1(f"bit.i={i}.j={i}.b={b}", b, ())

    # has.t: the component's tile is t
    for t in tiles:
        for c in (SPACER, ZERO, ONE):
            t1(f"has.t={t}", c, {f"has.t={t}"})
        t1(f"has.t={t}", t, ())

    # start: one conjunctive branch per property
    t2("qI", "qspc", {f"p{k}" for k in range(1, 10)})

    # property 1: three leading spacers then well-shaped cell components
    t2("p1", "qspc", {"p1.a"})
    t2("p1.a", "qspc", {"p1.b"})
    t2("p1.b", "qS", {"p1.b"})
    t2("p1.b", "qS", {"qf2"})

    # property 2: the fourth component is index 0|0
    t2("p2", "qany", {"p2.a"})
    t2("p2.a", "qany", {"p2.b"})
    t2("p2.b", "c00", set())

    # property 3: the bottommost component is index max|max
    t2("p3", "qany", {"p3"})
    t2("p3", "cNN", {"qf2"})

    # property 4: consecutive components carry consecutive index values.
    # A guess made while reading component k is checked on components k+2 and
    # k+3: rightmost zero of the upper index at position i, rightmost one of
    # the lower at i, all bits above i equal (guessed bit by bit).
    for i in range(1, N + 1):
        t2("p4", "qany", {"p4"} | {f"p4.z.i={i}"} | {f"p4.eq.i={j}" for j in range(i + 1, N + 1)})
        t2(f"p4.z.i={i}", "qany", {f"p4.zn.i={i}"})
        t2(f"p4.zn.i={i}", f"rz.i={i}", {f"p4.o.i={i}"})
        t2(f"p4.o.i={i}", f"ro.i={i}", set())
        for b in _BITS:
            t2(f"p4.eq.i={i}", "qany", {f"p4.eq.i={i}.b={b}"})
            t2(f"p4.eq.i={i}.b={b}", f"bit.i={i}.b={b}", {f"p4.eqn.i={i}.b={b}"})
            t2(f"p4.eqn.i={i}.b={b}", f"bit.i={i}.b={b}", set())
    # in-flight obligations dissolve on the bottommost component
    t2("p4", "qany", {"qf2"})
    for i in range(1, N + 1):
        t2(f"p4.z.i={i}", "qany", {"qf2"})
        t2(f"p4.zn.i={i}", "qany", {"qf2"})
        t2(f"p4.eq.i={i}", "qany", {"qf2"})
        for b in _BITS:
            t2(f"p4.eq.i={i}.b={b}", "qany", {"qf2"})

    # property 5: each non-last-row component's spacer link leads to the
    # component with the same column index and incremented row index.  Same
    # two-step schedule as property 4, but the partner component is reached
    # through the collapse link, and the increment touches only the row bits.
    def passed(state: str) -> str:
        name = f"pass.{state}"
        t1(name, SPACER, (), branch_state=state)
        return name

    for i in range(n + 1, N + 1):
        t2(
            "p5",
            "qany",
            {"p5"}
            | {f"p5.eq.i={j}" for j in range(1, n + 1)}
            | {f"p5.z.i={i}"}
            | {f"p5.eq.i={j}" for j in range(i + 1, N + 1)},
        )
        t2(f"p5.z.i={i}", "qany", {f"p5.zn.i={i}", f"p5.othru.i={i}"})
        t2(f"p5.zn.i={i}", f"rzr.i={i}", set())
        t2(f"p5.othru.i={i}", passed(f"p5.odest.i={i}"), set())
        t2(f"p5.odest.i={i}", f"ror.i={i}", set())
    for i in range(1, N + 1):
        for b in _BITS:
            t2(f"p5.eq.i={i}", "qany", {f"p5.eq.i={i}.b={b}", f"p5.eqthru.i={i}.b={b}"})
            t2(f"p5.eq.i={i}.b={b}", f"bit.i={i}.b={b}", set())
            t2(f"p5.eqthru.i={i}.b={b}", passed(f"p5.eqdest.i={i}.b={b}"), set())
            t2(f"p5.eqdest.i={i}.b={b}", f"bit.i={i}.b={b}", set())
    # obligations dissolve on reaching the last row (no links there)
    t2("p5", "rn", set())
    for i in range(n + 1, N + 1):
        t2(f"p5.z.i={i}", "rn", set())
        t2(f"p5.zn.i={i}", "rn", set())
        t2(f"p5.othru.i={i}", "rn", set())
    for i in range(1, N + 1):
        t2(f"p5.eq.i={i}", "rn", set())
        for b in _BITS:
            t2(f"p5.eq.i={i}.b={b}", "rn", set())
            t2(f"p5.eqthru.i={i}.b={b}", "rn", set())

    # property 6: the first cell holds the initial tile
    t2("p6", "qany", {"p6.a"})
    t2("p6.a", "qany", {"p6.b"})
    t2("p6.b", f"has.t={problem.initial}", set())

    # property 7: the bottommost cell holds the final tile
    t2("p7", "qany", {"p7"})
    t2("p7", f"has.t={problem.final}", {"qf2"})

    # property 8: horizontally adjacent cells are compatible.  A pair guessed
    # while reading component k is checked on components k+1 and k+2; pairs
    # straddling a row boundary are dismissed because their first component
    # has a maximal column index, and the walk ends on the bottommost
    # component, which also has one.
    t2("p8", "qany", {"p8.go"})
    for t, u in sorted(problem.horiz):
        t2("p8.go", "qany", {"p8.go", f"p8.pair.t={t}.u={u}"})
        t2(f"p8.pair.t={t}.u={u}", f"has.t={t}", {f"p8.snd.u={u}"})
        t2(f"p8.snd.u={u}", f"has.t={u}", set())
        t2(f"p8.pair.t={t}.u={u}", "cn", set())
    t2("p8.go", "cn", {"qf2"})

    # property 9: vertically adjacent cells are compatible; the lower cell is
    # reached through the spacer link.  Obligations dissolve on the last row.
    t2("p9", "qany", {"p9.go"})
    for t, u in sorted(problem.vert):
        t2("p9.go", "qany", {"p9.go", f"p9.fst.t={t}", f"p9.thru.u={u}"})
        t2(f"p9.fst.t={t}", f"has.t={t}", set())
        t2(f"p9.thru.u={u}", passed(f"p9.dest.u={u}"), set())
        t2(f"p9.dest.u={u}", f"has.t={u}", set())
        t2(f"p9.fst.t={t}", "rn", set())
        t2(f"p9.thru.u={u}", "rn", set())
    t2("p9.go", "rn", set())

    automaton = StackAutomaton(
        order=2,
        alphabet=alphabet,
        states={1: frozenset(q1), 2: frozenset(q2)},
        finals={1: frozenset({"qf1"}), 2: frozenset({"qf2"})},
        char_transitions=frozenset(d1),
        transitions={2: frozenset(d2)},
    )
    return ReductionOutput(automaton=automaton, initial="qI", alphabet=alphabet)


def _bits(value: int, n: int) -> list[str]:
    return [ONE if value & (1 << k) else ZERO for k in range(n - 1, -1, -1)]


def encode_witness(problem: TilingProblem, n: int, grid) -> Stack:
    """Lay a row-major grid out as the order-2 stack the generated automaton
    reads: three spacer components, then one component per cell carrying
    spacer, bin(row), bin(col), tile.  Spacers of all but the last row link
    one row down; every other character carries the null link."""
    _check_tiles(problem)
    side = side_length(n)
    cells = tuple(grid)
    if len(cells) != side * side:
        raise DimensionMismatch(
            f"grid has {len(cells)} cells, expected {side * side} for n={n}"
        )
    unknown = set(cells) - problem.tiles
    if unknown:
        raise ValueError(f"grid cell {sorted(unknown)[0]!r} is not a tile")
    m = 3 + side * side
    components = [Stack(1, (Atom(SPACER, NULL_LINK),)) for _ in range(3)]
    for p, tile in enumerate(cells):
        row, col = divmod(p, side)
        j_pos = 4 + p
        link = Link(2, m - j_pos - side + 1) if row < side - 1 else NULL_LINK
        chars = [SPACER] + _bits(row, n) + _bits(col, n) + [tile]
        links = [link] + [NULL_LINK] * (2 * n + 1)
        components.append(
            Stack(1, tuple(Atom(c, l) for c, l in zip(chars, links)))
        )
    return Stack(2, tuple(components))


def decode_witness(w: Stack, n: int) -> tuple:
    """Recover the row-major grid from a witness-shaped stack, ignoring link
    values; raises :class:`MalformedWitness` at the first structural
    deviation."""
    side = side_length(n)
    m = 3 + side * side
    if w.order != 2:
        raise MalformedWitness(f"expected an order-2 stack, got order {w.order}")
    if len(w.items) != m:
        raise MalformedWitness(f"expected {m} components, found {len(w.items)}")
    for k in range(3):
        chars = [a.char for a in w.items[k].items]
        if chars != [SPACER]:
            raise MalformedWitness(f"component {k + 1} is not a spacer-only component")
    grid = []
    for p in range(side * side):
        comp = w.items[3 + p]
        chars = [a.char for a in comp.items]
        if len(chars) != 2 * n + 2:
            raise MalformedWitness(
                f"cell component {p} has {len(chars)} characters, expected {2 * n + 2}"
            )
        if chars[0] != SPACER:
            raise MalformedWitness(f"cell component {p} does not start with a spacer")
        row, col = divmod(p, side)
        expected = _bits(row, n) + _bits(col, n)
        got = chars[1 : 2 * n + 1]
        if any(c not in _BITS for c in got):
            raise MalformedWitness(f"cell component {p} has a malformed index block")
        if got != expected:
            raise MalformedWitness(
                f"cell component {p} encodes index {''.join(got)}, "
                f"expected {''.join(expected)}"
            )
        tile = chars[2 * n + 1]
        if tile in (SPACER, ZERO, ONE):
            raise MalformedWitness(f"cell component {p} ends with {tile!r}, not a tile")
        grid.append(tile)
    return tuple(grid)
