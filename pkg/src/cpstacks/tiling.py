"""Tiling problems over exponential square grids.

A problem is a finite tile set with horizontal and vertical compatibility
relations and two distinguished tiles; a solution fills a 2^n x 2^n grid
(row-major) so that adjacent tiles are compatible, the first cell holds the
initial tile, the last cell holds the final tile, and the two distinguished
tiles appear nowhere else.  The brute-force solver is an oracle for small n
only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, ResourceLimitExceeded

__all__ = ["TilingProblem", "side_length", "check_solution", "solve_bruteforce"]


@dataclass(frozen=True)
class TilingProblem:
    """Tiles with horizontal pairs (left, right), vertical pairs (upper,
    lower), an initial tile and a final tile."""

    tiles: frozenset
    horiz: frozenset
    vert: frozenset
    initial: str
    final: str

    def __post_init__(self):
        object.__setattr__(self, "tiles", frozenset(self.tiles))
        object.__setattr__(self, "horiz", frozenset(self.horiz))
        object.__setattr__(self, "vert", frozenset(self.vert))
        if self.initial not in self.tiles or self.final not in self.tiles:
            raise ValueError("initial and final tiles must belong to the tile set")
        for rel in (self.horiz, self.vert):
            for pair in rel:
                if len(pair) != 2 or not set(pair) <= self.tiles:
                    raise ValueError(f"relation pair {pair!r} not over the tile set")


def side_length(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return 2**n


def check_solution(problem: TilingProblem, n: int, grid) -> bool:
    """True iff the row-major ``grid`` solves ``problem`` on the 2^n x 2^n
    square: corners hold the initial/final tiles, those two tiles appear only
    there, and every horizontally or vertically adjacent pair lies in the
    respective relation."""
    side = side_length(n)
    cells = tuple(grid)
    if len(cells) != side * side:
        raise DimensionMismatch(
            f"grid has {len(cells)} cells, expected {side * side} for n={n}"
        )
    if not set(cells) <= problem.tiles:
        return False
    last = side * side - 1
    if cells[0] != problem.initial or cells[last] != problem.final:
        return False
    for p, t in enumerate(cells):
        if t == problem.initial and p != 0:
            return False
        if t == problem.final and p != last:
            return False
    for r in range(side):
        for c in range(side):
            p = r * side + c
            if c + 1 < side and (cells[p], cells[p + 1]) not in problem.horiz:
                return False
            if r + 1 < side and (cells[p], cells[p + side]) not in problem.vert:
                return False
    return True


def solve_bruteforce(problem: TilingProblem, n: int, guard: int = 3):
    """Backtracking search returning the row-major-lexicographically first
    solution (tiles compared by name), or None when no assignment works.
    Refuses n above ``guard``: the search space is |T|^(4^n)."""
    if n > guard:
        raise ResourceLimitExceeded(f"n={n} exceeds the brute-force guard {guard}")
    side = side_length(n)
    total = side * side
    interior = tuple(sorted(problem.tiles - {problem.initial, problem.final}))
    cells: list = [None] * total

    def candidates(p: int):
        if p == 0:
            return (problem.initial,)
        if p == total - 1:
            return (problem.final,)
        return interior

    def fits(p: int, t: str) -> bool:
        r, c = divmod(p, side)
        if c > 0 and (cells[p - 1], t) not in problem.horiz:
            return False
        if r > 0 and (cells[p - side], t) not in problem.vert:
            return False
        return True

    def extend(p: int):
        if p == total:
            return check_solution(problem, n, cells)
        for t in candidates(p):
            if fits(p, t):
                cells[p] = t
                if extend(p + 1):
                    return True
                cells[p] = None
        return False

    return tuple(cells) if extend(0) else None
