"""Membership timing on chain-shaped stacks.

The membership check visits each linearization token a bounded number of
times, so wall-clock time on a chain of 2k atoms should be at most a small
multiple of the time on k atoms.  This module builds the chains and the fixed
automaton, times the check at a ladder of sizes, and renders the measurements
as CSV rows plus a PNG chart.  Ratios are informational: they wobble on noisy
hardware, which is why the report records them instead of asserting them.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from typing import Sequence

from .automata import CharTransition, StackAutomaton, Transition, member
from .stacks import Atom, NULL_LINK, Stack

__all__ = [
    "BenchRow",
    "chain_stack",
    "chain_automaton",
    "run_bench",
    "write_csv",
    "write_plot",
]


def chain_stack(k: int) -> Stack:
    """Order-2 stack with a single component of ``k`` null-linked atoms."""
    if k < 0:
        raise ValueError("k must be non-negative")
    component = Stack(1, tuple(Atom("a", NULL_LINK) for _ in range(k)))
    return Stack(2, (component,))


def chain_automaton() -> tuple[StackAutomaton, frozenset]:
    """Fixed order-2 automaton accepting every all-a stack; reading a chain
    touches each atom once."""
    aut = StackAutomaton(
        order=2,
        alphabet=frozenset("a"),
        states={1: frozenset({"q"}), 2: frozenset({"p"})},
        finals={1: frozenset({"q"}), 2: frozenset({"p"})},
        char_transitions=frozenset(
            {CharTransition("q", "a", None, frozenset(), frozenset({"q"}))}
        ),
        transitions={2: frozenset({Transition("p", "q", frozenset({"p"}))})},
    )
    return aut, frozenset({"p"})


@dataclass(frozen=True)
class BenchRow:
    k: int
    seconds_k: float
    seconds_2k: float

    @property
    def ratio(self) -> float:
        return self.seconds_2k / self.seconds_k


def _time_member(w: Stack, aut: StackAutomaton, initial, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        accepted = member(w, aut, initial)
        elapsed = time.perf_counter() - start
        if not accepted:
            raise AssertionError("chain automaton must accept every chain")
        best = min(best, elapsed)
    return best


def run_bench(sizes: Sequence[int], repeats: int = 3) -> list[BenchRow]:
    """Best-of-``repeats`` membership times at each k and 2k."""
    aut, initial = chain_automaton()
    rows = []
    for k in sizes:
        t1 = _time_member(chain_stack(k), aut, initial, repeats)
        t2 = _time_member(chain_stack(2 * k), aut, initial, repeats)
        rows.append(BenchRow(k, t1, t2))
    return rows


def write_csv(rows: Sequence[BenchRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "seconds_k", "seconds_2k", "ratio"])
        for row in rows:
            writer.writerow(
                [row.k, f"{row.seconds_k:.6f}", f"{row.seconds_2k:.6f}", f"{row.ratio:.3f}"]
            )


def write_plot(rows: Sequence[BenchRow], path: str) -> None:
    """Two-panel PNG: timing curves for k and 2k, and the doubling ratio
    against the informational threshold of 3."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ks = [row.k for row in rows]
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    left.plot(ks, [row.seconds_k for row in rows], marker="o", label="k atoms")
    left.plot(ks, [row.seconds_2k for row in rows], marker="s", label="2k atoms")
    left.set_xscale("log")
    left.set_yscale("log")
    left.set_xlabel("k")
    left.set_ylabel("seconds (best of repeats)")
    left.set_title("membership time on chains")
    left.legend()
    right.plot(ks, [row.ratio for row in rows], marker="o")
    right.axhline(3.0, linestyle="--", color="red", label="threshold 3")
    right.set_xscale("log")
    right.set_xlabel("k")
    right.set_ylabel("t(2k) / t(k)")
    right.set_title("doubling ratio")
    right.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
