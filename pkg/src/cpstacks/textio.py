"""Text formats for every domain object, plus their canonical printers.

Grammar summary:

* stack: ``[`` items ``]k`` with the top leftmost; atom ``CHAR(o,i)``.
* automaton: line-oriented; ``order N``, ``alphabet ...``, per-order
  ``statesK ...`` / ``finalK ...``; order-k transitions
  ``tK q / q' -> { q1 ... }``; order-1 transitions
  ``t1 q a / O { p1 ... } -> { q1 ... }`` where O is the branch-set order
  and ``/ { }`` stands for an empty branch set.
* tiling problem: ``tiles ...``, ``init t``, ``final t``, one ``h a b`` or
  ``v a b`` line per adjacency pair.
* solution grid: one row of tiles per line, top row first.
* run certificate: ``pos P order K { q1 ... }`` per table entry.
* pushdown system: ``order N``, ``alphabet ...``, ``controls ...``,
  ``rule q a OP q'``, ``alt q { q1 ... }``; a configuration is a single
  ``control STACK`` line.

``#`` starts a comment anywhere; names may use any characters except
whitespace, ``#`` and the delimiters ``[ ] ( ) { } , /``.  Printers are
canonical: single spaces, sorted sets, one trailing newline.  Parsing a
printed value returns an equal value, and printing a parse of canonical
text returns the same bytes.
"""

from __future__ import annotations

import re

from .automata import CharTransition, RunCertificate, StackAutomaton, Transition, validate_automaton
from .cpds import AlternatingRule, Configuration, Cpds, OrdinaryRule
from .errors import DimensionMismatch, ParseError
from .stacks import Atom, Link, Operation, Stack
from .tiling import TilingProblem, side_length

__all__ = [
    "parse_stack",
    "format_stack",
    "parse_automaton",
    "format_automaton",
    "parse_tiling",
    "format_tiling",
    "parse_solution",
    "format_solution",
    "parse_run",
    "format_run",
    "parse_cpds",
    "format_cpds",
    "parse_configuration",
    "format_configuration",
    "parse_operation",
]

_NAME_RE = re.compile(r"[^\s#\[\](){},/]+")


# ---------------------------------------------------------------------------
# stacks


class _Scanner:
    """Character scanner with 1-based line/column tracking."""

    def __init__(self, text: str, line: int = 1, col: int = 1):
        self.text = text
        self.pos = 0
        self.line = line
        self.col = col

    def error(self, message: str, line: int | None = None, col: int | None = None):
        raise ParseError(
            message, self.line if line is None else line, self.col if col is None else col
        )

    def advance(self, count: int):
        for ch in self.text[self.pos : self.pos + count]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += count

    def skip(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self.advance(1)
            elif ch == "#":
                end = self.text.find("\n", self.pos)
                self.advance((len(self.text) if end < 0 else end) - self.pos)
            else:
                return

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek()
            self.error(f"expected {ch!r}" + (f", got {got!r}" if got else " before end of input"))
        self.advance(1)

    def integer(self, what: str) -> int:
        # Adjacent digits, no whitespace skipping: ']2' and '(3,1)' are units.
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.advance(1)
        if self.pos == start:
            self.error(f"expected {what}")
        return int(self.text[start : self.pos])


def _parse_atom(sc: _Scanner) -> Atom:
    m = _NAME_RE.match(sc.text, sc.pos)
    if not m:
        sc.error("expected an atom or '['")
    char = m.group()
    line, col = sc.line, sc.col
    sc.advance(len(char))
    if sc.peek() != "(":
        sc.error("expected '(o,i)' after the atom character")
    sc.advance(1)
    order = sc.integer("a link order")
    sc.expect(",")
    index = sc.integer("a link index")
    sc.expect(")")
    if order < 1:
        sc.error("link order must be >= 1", line, col)
    return Atom(char, Link(order, index))


def _parse_stack_inner(sc: _Scanner) -> Stack:
    sc.skip()
    if sc.peek() != "[":
        sc.error("expected '['")
    open_line, open_col = sc.line, sc.col
    sc.advance(1)
    items = []
    places = []
    while True:
        sc.skip()
        ch = sc.peek()
        if ch == "":
            sc.error("unclosed '['", open_line, open_col)
        if ch == "]":
            sc.advance(1)
            order = sc.integer("a stack order after ']'")
            break
        places.append((sc.line, sc.col))
        items.append(_parse_stack_inner(sc) if ch == "[" else _parse_atom(sc))
    if order < 1:
        sc.error("stack order must be >= 1", open_line, open_col)
    for (line, col), item in zip(places, items):
        if order == 1 and not isinstance(item, Atom):
            raise ParseError("an order-1 stack contains atoms only", line, col)
        if order >= 2:
            if isinstance(item, Atom):
                raise ParseError(f"an order-{order} stack contains stacks, not atoms", line, col)
            if item.order != order - 1:
                raise ParseError(
                    f"an order-{order} stack contains order-{order - 1} stacks,"
                    f" got order {item.order}",
                    line,
                    col,
                )
    return Stack(order, tuple(items))


def parse_stack(text: str) -> Stack:
    sc = _Scanner(text)
    w = _parse_stack_inner(sc)
    if not sc.at_end():
        sc.error("unexpected text after the stack")
    return w


def format_stack(w: Stack) -> str:
    parts = [
        f"{it.char}({it.link.order},{it.link.index})" if isinstance(it, Atom) else format_stack(it)
        for it in w.items
    ]
    return "[" + " ".join(parts) + f"]{w.order}"


def parse_operation(text: str) -> Operation:
    try:
        return Operation.parse(text.strip())
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# line-oriented formats


def _logical_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, body


class _Fields:
    """Whitespace-separated tokens of one line with their columns."""

    def __init__(self, lineno: int, body: str):
        self.lineno = lineno
        self.toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        self.end_col = (self.toks[-1][0] + len(self.toks[-1][1])) if self.toks else 1
        self.i = 0
        self.last_col = 1

    def error(self, message: str, col: int | None = None):
        raise ParseError(message, self.lineno, self.last_col if col is None else col)

    def peek(self) -> str | None:
        return self.toks[self.i][1] if self.i < len(self.toks) else None

    def take(self, what: str) -> str:
        if self.i >= len(self.toks):
            raise ParseError(f"expected {what}", self.lineno, self.end_col)
        self.last_col, tok = self.toks[self.i]
        self.i += 1
        return tok

    def take_int(self, what: str) -> int:
        tok = self.take(what)
        if not tok.isdigit():
            self.error(f"expected {what}, got {tok!r}")
        return int(tok)

    def expect(self, literal: str):
        tok = self.take(f"'{literal}'")
        if tok != literal:
            self.error(f"expected '{literal}', got {tok!r}")

    def braced(self, what: str) -> list[str]:
        self.expect("{")
        out = []
        while True:
            tok = self.take(f"{what} or '}}'")
            if tok == "}":
                return out
            out.append(tok)

    def rest(self) -> list[str]:
        out = [tok for _, tok in self.toks[self.i :]]
        self.i = len(self.toks)
        return out

    def done(self):
        if self.i < len(self.toks):
            self.last_col = self.toks[self.i][0]
            self.error(f"unexpected token {self.toks[self.i][1]!r}")


def _braces(states) -> str:
    inner = " ".join(sorted(states))
    return "{ " + inner + " }" if inner else "{ }"


def _words(head: str, items) -> str:
    return head + (" " + " ".join(items) if items else "")


def _doc(lines) -> str:
    lines = list(lines)
    return "\n".join(lines) + "\n" if lines else ""


# ---------------------------------------------------------------------------
# automata

_STATES_RE = re.compile(r"^states([0-9]+)$")
_FINAL_RE = re.compile(r"^final([0-9]+)$")
_TRANS_RE = re.compile(r"^t([0-9]+)$")


def parse_automaton(text: str) -> StackAutomaton:
    """Load an automaton; structural problems raise :class:`ParseError`."""
    order = None
    alphabet = None
    states: dict[int, frozenset] = {}
    finals: dict[int, frozenset] = {}
    char_transitions = set()
    transitions: dict[int, set] = {}
    placed: list[tuple[int, int, str, int]] = []  # (line, col, kind, order)
    for lineno, body in _logical_lines(text):
        f = _Fields(lineno, body)
        head = f.take("a directive")
        head_col = f.last_col
        if head == "order":
            if order is not None:
                f.error("duplicate order line", head_col)
            order = f.take_int("the automaton order")
            if order < 1:
                f.error("the order must be >= 1")
            f.done()
        elif head == "alphabet":
            if alphabet is not None:
                f.error("duplicate alphabet line", head_col)
            alphabet = frozenset(f.rest())
        elif m := _STATES_RE.match(head):
            k = int(m.group(1))
            if k in states:
                f.error(f"duplicate states{k} line", head_col)
            states[k] = frozenset(f.rest())
            placed.append((lineno, head_col, "state set", k))
        elif m := _FINAL_RE.match(head):
            k = int(m.group(1))
            if k in finals:
                f.error(f"duplicate final{k} line", head_col)
            finals[k] = frozenset(f.rest())
            placed.append((lineno, head_col, "final set", k))
        elif m := _TRANS_RE.match(head):
            k = int(m.group(1))
            if k == 1:
                state = f.take("a source state")
                char = f.take("a character")
                f.expect("/")
                if f.peek() == "{":
                    branch_order = None
                    branch = f.braced("a branch state")
                    if branch:
                        f.error("a non-empty branch set needs an order tag before it")
                else:
                    branch_order = f.take_int("a branch order or '{'")
                    branch = f.braced("a branch state")
                    if not branch:
                        f.error("an order tag needs a non-empty branch set")
                f.expect("->")
                rest = f.braced("a target state")
                f.done()
                char_transitions.add(
                    CharTransition(state, char, branch_order, frozenset(branch), frozenset(rest))
                )
            else:
                state = f.take("a source state")
                f.expect("/")
                component = f.take("a component state")
                f.expect("->")
                rest = f.braced("a target state")
                f.done()
                transitions.setdefault(k, set()).add(
                    Transition(state, component, frozenset(rest))
                )
                placed.append((lineno, head_col, "transition", k))
        else:
            f.error(f"unknown directive {head!r}", head_col)
    if order is None:
        raise ParseError("missing order line")
    for lineno, col, kind, k in placed:
        hi = order if kind != "transition" else order
        lo = 1 if kind != "transition" else 2
        if not lo <= k <= hi:
            raise ParseError(f"{kind} order {k} out of range {lo}..{order}", lineno, col)
    for k in range(1, order + 1):
        states.setdefault(k, frozenset())
        finals.setdefault(k, frozenset())
    aut = StackAutomaton(
        order,
        alphabet if alphabet is not None else frozenset(),
        states,
        finals,
        frozenset(char_transitions),
        {k: frozenset(v) for k, v in transitions.items()},
    )
    problems = validate_automaton(aut)
    if problems:
        raise ParseError("invalid automaton: " + problems[0])
    return aut


def format_automaton(aut: StackAutomaton) -> str:
    lines = [f"order {aut.order}", _words("alphabet", sorted(aut.alphabet))]
    for k in range(1, aut.order + 1):
        lines.append(_words(f"states{k}", sorted(aut.states[k])))
        lines.append(_words(f"final{k}", sorted(aut.finals[k])))
    for k in range(2, aut.order + 1):
        key = lambda t: (t.state, t.component, tuple(sorted(t.rest)))
        for t in sorted(aut.transitions.get(k, frozenset()), key=key):
            lines.append(f"t{k} {t.state} / {t.component} -> {_braces(t.rest)}")
    key = lambda t: (
        t.state,
        t.char,
        t.branch_order or 0,
        tuple(sorted(t.branch)),
        tuple(sorted(t.rest)),
    )
    for t in sorted(aut.char_transitions, key=key):
        tag = "" if t.branch_order is None else f"{t.branch_order} "
        lines.append(f"t1 {t.state} {t.char} / {tag}{_braces(t.branch)} -> {_braces(t.rest)}")
    return _doc(lines)


# ---------------------------------------------------------------------------
# tiling problems and solution grids


def parse_tiling(text: str) -> TilingProblem:
    tiles = None
    initial = None
    final = None
    pairs: list[tuple[int, int, str, str, str]] = []  # (line, col, kind, a, b)
    singles: list[tuple[int, int, str, str]] = []  # (line, col, kind, tile)
    for lineno, body in _logical_lines(text):
        f = _Fields(lineno, body)
        head = f.take("a directive")
        head_col = f.last_col
        if head == "tiles":
            if tiles is not None:
                f.error("duplicate tiles line", head_col)
            tiles = frozenset(f.rest())
        elif head in ("init", "final"):
            if (initial if head == "init" else final) is not None:
                f.error(f"duplicate {head} line", head_col)
            tile = f.take("a tile")
            f.done()
            singles.append((lineno, f.last_col, head, tile))
            if head == "init":
                initial = tile
            else:
                final = tile
        elif head in ("h", "v"):
            a = f.take("a tile")
            col = f.last_col
            b = f.take("a tile")
            f.done()
            pairs.append((lineno, col, head, a, b))
        else:
            f.error(f"unknown directive {head!r}", head_col)
    if tiles is None:
        raise ParseError("missing tiles line")
    if initial is None:
        raise ParseError("missing init line")
    if final is None:
        raise ParseError("missing final line")
    for lineno, col, kind, tile in singles:
        if tile not in tiles:
            raise ParseError(f"unknown tile {tile!r} in {kind} line", lineno, col)
    for lineno, col, kind, a, b in pairs:
        for tile in (a, b):
            if tile not in tiles:
                raise ParseError(f"unknown tile {tile!r} in {kind} pair", lineno, col)
    horiz = frozenset((a, b) for _, _, kind, a, b in pairs if kind == "h")
    vert = frozenset((a, b) for _, _, kind, a, b in pairs if kind == "v")
    return TilingProblem(tiles, horiz, vert, initial, final)


def format_tiling(problem: TilingProblem) -> str:
    lines = [
        _words("tiles", sorted(problem.tiles)),
        f"init {problem.initial}",
        f"final {problem.final}",
    ]
    lines.extend(f"h {a} {b}" for a, b in sorted(problem.horiz))
    lines.extend(f"v {a} {b}" for a, b in sorted(problem.vert))
    return _doc(lines)


def parse_solution(text: str, n: int) -> tuple:
    """A side-by-side grid of tiles, one row per line, top row first."""
    side = side_length(n)
    rows = list(_logical_lines(text))
    if len(rows) != side:
        lineno = rows[-1][0] if rows else 1
        raise ParseError(f"expected {side} rows, got {len(rows)}", lineno)
    grid: list[str] = []
    for lineno, body in rows:
        f = _Fields(lineno, body)
        row = f.rest()
        if len(row) != side:
            raise ParseError(f"expected {side} tiles in the row, got {len(row)}", lineno)
        grid.extend(row)
    return tuple(grid)


def format_solution(grid, n: int) -> str:
    side = side_length(n)
    cells = tuple(grid)
    if len(cells) != side * side:
        raise DimensionMismatch(f"expected {side * side} cells, got {len(cells)}")
    return _doc(" ".join(cells[r * side : (r + 1) * side]) for r in range(side))


# ---------------------------------------------------------------------------
# run certificates


def parse_run(text: str) -> RunCertificate:
    entries: dict[tuple, frozenset] = {}
    for lineno, body in _logical_lines(text):
        f = _Fields(lineno, body)
        f.expect("pos")
        head_col = f.last_col
        position = f.take_int("a position")
        f.expect("order")
        order = f.take_int("an order")
        states = f.braced("a state")
        f.done()
        if order < 1:
            f.error("the order must be >= 1", head_col)
        if (position, order) in entries:
            f.error(f"duplicate entry for position {position} order {order}", head_col)
        entries[(position, order)] = frozenset(states)
    return RunCertificate(entries)


def format_run(run: RunCertificate) -> str:
    return _doc(
        f"pos {p} order {k} {_braces(run.entries[(p, k)])}" for p, k in sorted(run.entries)
    )


# ---------------------------------------------------------------------------
# pushdown systems


def parse_cpds(text: str) -> Cpds:
    order = None
    alphabet = None
    controls = None
    rules = set()
    for lineno, body in _logical_lines(text):
        f = _Fields(lineno, body)
        head = f.take("a directive")
        head_col = f.last_col
        if head == "order":
            if order is not None:
                f.error("duplicate order line", head_col)
            order = f.take_int("the system order")
            if order < 1:
                f.error("the order must be >= 1")
            f.done()
        elif head == "alphabet":
            if alphabet is not None:
                f.error("duplicate alphabet line", head_col)
            alphabet = frozenset(f.rest())
        elif head == "controls":
            if controls is not None:
                f.error("duplicate controls line", head_col)
            controls = frozenset(f.rest())
        elif head == "rule":
            control = f.take("a control state")
            char = f.take("a character")
            op_tok = f.take("an operation")
            op_col = f.last_col
            try:
                op = Operation.parse(op_tok)
            except ValueError as exc:
                f.error(str(exc), op_col)
            target = f.take("a target control state")
            f.done()
            rules.add(OrdinaryRule(control, char, op, target))
        elif head == "alt":
            control = f.take("a control state")
            targets = f.braced("a target control state")
            f.done()
            rules.add(AlternatingRule(control, frozenset(targets)))
        else:
            f.error(f"unknown directive {head!r}", head_col)
    if order is None:
        raise ParseError("missing order line")
    try:
        return Cpds(
            order,
            alphabet if alphabet is not None else frozenset(),
            controls if controls is not None else frozenset(),
            frozenset(rules),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError("invalid system: " + str(exc)) from None


def format_cpds(system: Cpds) -> str:
    lines = [
        f"order {system.order}",
        _words("alphabet", sorted(system.alphabet)),
        _words("controls", sorted(system.controls)),
    ]
    ordinary = [r for r in system.rules if isinstance(r, OrdinaryRule)]
    alternating = [r for r in system.rules if isinstance(r, AlternatingRule)]
    for r in sorted(ordinary, key=lambda r: (r.control, r.char, r.op.text(), r.target)):
        lines.append(f"rule {r.control} {r.char} {r.op.text()} {r.target}")
    for r in sorted(alternating, key=lambda r: (r.control, tuple(sorted(r.targets)))):
        lines.append(f"alt {r.control} {_braces(r.targets)}")
    return _doc(lines)


def parse_configuration(text: str) -> Configuration:
    lines = list(_logical_lines(text))
    if not lines:
        raise ParseError("expected a configuration line")
    if len(lines) > 1:
        raise ParseError("expected a single configuration line", lines[1][0])
    lineno, body = lines[0]
    indent = len(body) - len(body.lstrip())
    m = _NAME_RE.match(body, indent)
    if not m:
        raise ParseError("expected a control state name", lineno, indent + 1)
    control = m.group()
    sc = _Scanner(body[m.end() :], line=lineno, col=m.end() + 1)
    stack = _parse_stack_inner(sc)
    if not sc.at_end():
        sc.error("unexpected text after the stack")
    return Configuration(control, stack)


def format_configuration(conf: Configuration) -> str:
    return f"{conf.control} {format_stack(conf.stack)}\n"
