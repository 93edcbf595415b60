"""Membership, run certificates, and the certificate checker."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpstacks import (
    CharTransition,
    MalformedCertificate,
    NotAccepted,
    OrderMismatch,
    RunCertificate,
    StackAutomaton,
    Transition,
    check_run,
    empty_stack,
    extract_run,
    linearize,
    member,
    membership_table,
    parse_stack,
    validate_automaton,
)
from cpstacks.stacks import Atom
from support import (
    accept_cert_search,
    accept_topdown,
    certificate_space,
    exact_stack_automaton,
    random_automaton,
    random_stack,
    run_pairs,
    two_state_example,
)


class TestWorkedExample:
    def test_accepts_single_a(self):
        aut, initial = two_state_example()
        assert member(parse_stack("[[a(1,0)]1]2"), aut, initial)

    def test_rejects_single_b(self):
        aut, initial = two_state_example()
        assert not member(parse_stack("[[b(1,0)]1]2"), aut, initial)

    def test_rejects_other_shapes(self):
        aut, initial = two_state_example()
        for text in ("[]2", "[[]1]2", "[[b(1,0) a(1,0)]1]2", "[[a(1,0)]1 [a(1,0)]1]2"):
            assert not member(parse_stack(text), aut, initial), text

    def test_empty_rest_puts_no_demand_below(self):
        aut, initial = two_state_example()
        assert member(parse_stack("[[a(1,0) b(1,0)]1]2"), aut, initial)

    def test_extracted_run_marks_position_zero(self):
        aut, initial = two_state_example()
        run = extract_run(parse_stack("[[a(1,0)]1]2"), aut, initial)
        assert run.get(0, 2) == frozenset({"p"})

    def test_validates(self):
        aut, _ = two_state_example()
        assert validate_automaton(aut) == []


class TestMemberBasics:
    def test_empty_initial_accepts_everything(self):
        rng = random.Random(301)
        aut, _ = two_state_example()
        for _ in range(20):
            w = random_stack(rng, 2)
            assert member(w, aut, frozenset())

    def test_finals_accept_the_empty_stack(self):
        aut, _ = two_state_example()
        assert member(empty_stack(2), aut, "pf")
        assert not member(empty_stack(2), aut, "p")

    def test_order_mismatch(self):
        aut, _ = two_state_example()
        with pytest.raises(OrderMismatch):
            member(empty_stack(3), aut, "p")

    def test_unknown_initial_state(self):
        aut, _ = two_state_example()
        with pytest.raises(ValueError):
            member(empty_stack(2), aut, "nope")
        with pytest.raises(ValueError):
            member(empty_stack(2), aut, "q")  # order-1 state, not order-2

    def test_tagged_branch_requires_matching_link(self):
        # pb accepts the destination [[]1]2 by reading its empty component;
        # the branch on q fires only when the a carries an order-2 link.
        aut = StackAutomaton(
            2,
            frozenset("a"),
            {1: frozenset({"q", "f1"}), 2: frozenset({"p", "pb", "pf"})},
            {1: frozenset({"f1"}), 2: frozenset({"pf"})},
            frozenset({CharTransition("q", "a", 2, frozenset({"pb"}), frozenset())}),
            {
                2: frozenset(
                    {
                        Transition("p", "q", frozenset({"pb"})),
                        Transition("pb", "f1", frozenset({"pf"})),
                    }
                )
            },
        )
        linked = parse_stack("[[a(2,1)]1 []1]2")
        nulled = parse_stack("[[a(1,0)]1 []1]2")
        assert member(linked, aut, "p")
        assert not member(nulled, aut, "p")


class TestTableShape:
    def test_one_entry_per_reachable_pair(self):
        rng = random.Random(302)
        for _ in range(50):
            w = random_stack(rng, rng.choice((2, 3)))
            aut = random_automaton(rng, w.order)
            table = membership_table(w, aut)
            pairs = [(p, k) for p, row in enumerate(table) for k in row]
            assert sorted(pairs) == sorted(run_pairs(w, aut.order))
            assert len(pairs) <= len(linearize(w)) * aut.order

    def test_boundary_rows_seed_finals(self):
        rng = random.Random(303)
        for _ in range(30):
            w = random_stack(rng, 2)
            aut = random_automaton(rng, 2)
            table = membership_table(w, aut)
            for p, tok in enumerate(linearize(w)):
                if not isinstance(tok, Atom):
                    assert table[p][tok] == aut.finals[tok]


class TestOracleAgreement:
    def test_topdown_oracle_moderate_sweep(self):
        rng = random.Random(304)
        for _ in range(250):
            order = rng.choice((1, 2, 3))
            w = random_stack(rng, order, max_atoms=6)
            aut = random_automaton(rng, order)
            initial = frozenset(
                q for q in sorted(aut.states[order]) if rng.random() < 0.5
            )
            assert member(w, aut, initial) == accept_topdown(w, aut, initial)

    def test_certificate_search_oracle_small_sweep(self):
        # Literal enumeration over all full assignments; cases are capped by
        # certificate-space size, so stacks and automata stay tiny.
        rng = random.Random(305)
        checked = 0
        while checked < 25:
            w = random_stack(rng, 2, max_atoms=2, max_width=2, alphabet="ab")
            aut = random_automaton(rng, 2, max_states=2)
            if certificate_space(w, aut) > 2**14:
                continue
            initial = frozenset(
                q for q in sorted(aut.states[2]) if rng.random() < 0.5
            )
            got = member(w, aut, initial)
            assert got == accept_cert_search(w, aut, initial)
            assert got == accept_topdown(w, aut, initial)
            checked += 1

    @settings(max_examples=120, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_topdown_oracle_property(self, seed):
        rng = random.Random(seed)
        order = rng.choice((1, 2))
        w = random_stack(rng, order, max_atoms=5)
        aut = random_automaton(rng, order)
        initial = frozenset(
            q for q in sorted(aut.states[order]) if rng.random() < 0.5
        )
        assert member(w, aut, initial) == accept_topdown(w, aut, initial)

    def test_monotone_in_initial_set(self):
        rng = random.Random(306)
        for _ in range(150):
            order = rng.choice((2, 3))
            w = random_stack(rng, order)
            aut = random_automaton(rng, order)
            bigger = frozenset(
                q for q in sorted(aut.states[order]) if rng.random() < 0.6
            )
            smaller = frozenset(q for q in sorted(bigger) if rng.random() < 0.6)
            if member(w, aut, bigger):
                assert member(w, aut, smaller)


class TestExactAutomaton:
    def test_accepts_its_stack(self):
        rng = random.Random(307)
        for _ in range(60):
            w = random_stack(rng, rng.choice((1, 2, 3)))
            aut, initial = exact_stack_automaton(w)
            assert validate_automaton(aut) == []
            assert member(w, aut, initial)

    def test_rejects_perturbed_stacks(self):
        w = parse_stack("[[a(2,1) b(1,0)]1 [a(1,0)]1]2")
        aut, initial = exact_stack_automaton(w)
        for text in (
            "[[a(2,1) b(1,0)]1]2",
            "[[b(2,1) b(1,0)]1 [a(1,0)]1]2",
            "[[a(2,1) b(1,0)]1 [b(1,0)]1]2",
            "[[a(2,1)]1 [a(1,0)]1]2",
            "[]2",
        ):
            assert not member(parse_stack(text), aut, initial), text

    def test_pins_link_values_when_non_null(self):
        w = parse_stack("[[a(2,2)]1 [b(1,0)]1 [c(1,0)]1]2")
        aut, initial = exact_stack_automaton(w)
        assert member(w, aut, initial)
        moved = parse_stack("[[a(2,1)]1 [b(1,0)]1 [c(1,0)]1]2")
        assert not member(moved, aut, initial)


class TestRunCertificates:
    def test_extract_then_check(self):
        rng = random.Random(308)
        passed = 0
        for _ in range(300):
            order = rng.choice((1, 2, 3))
            w = random_stack(rng, order)
            aut = random_automaton(rng, order)
            initial = frozenset(
                q for q in sorted(aut.states[order]) if rng.random() < 0.5
            )
            if not member(w, aut, initial):
                continue
            run = extract_run(w, aut, initial)
            assert check_run(w, aut, run, initial)
            passed += 1
        assert passed > 60

    def test_extract_rejected_raises(self):
        aut, initial = two_state_example()
        with pytest.raises(NotAccepted):
            extract_run(parse_stack("[[b(1,0)]1]2"), aut, initial)

    def test_empty_initial_with_boundary_seeds(self):
        aut, _ = two_state_example()
        w = parse_stack("[[a(1,0)]1]2")
        run = extract_run(w, aut, frozenset())
        assert check_run(w, aut, run, frozenset())
        assert run.get(1, 1) == aut.finals[1]
        assert run.get(2, 2) == aut.finals[2]

    def test_single_state_empty_stack_certificate(self):
        aut = StackAutomaton(
            2,
            frozenset("a"),
            {1: frozenset({"x"}), 2: frozenset({"f"})},
            {1: frozenset(), 2: frozenset({"f"})},
            frozenset(),
            {},
        )
        run = RunCertificate({(0, 2): frozenset({"f"})})
        assert check_run(empty_stack(2), aut, run, "f")

    def test_boundary_entry_must_be_final(self):
        aut, initial = two_state_example()
        w = parse_stack("[[a(1,0)]1]2")
        run = RunCertificate({(2, 2): frozenset({"p"}), (0, 2): frozenset()})
        assert not check_run(w, aut, run, frozenset())

    def test_unjustified_state_is_rejected(self):
        aut, initial = two_state_example()
        w = parse_stack("[[b(1,0)]1]2")
        run = RunCertificate(
            {(0, 1): frozenset({"q"}), (1, 1): frozenset({"f1"}), (0, 2): frozenset()}
        )
        assert not check_run(w, aut, run, frozenset())

    def test_missing_needed_entry_is_malformed(self):
        aut, initial = two_state_example()
        w = parse_stack("[[a(1,0)]1]2")
        full = extract_run(w, aut, initial)
        # Drop the order-2 set after the first component; the order-2 claim
        # at position 0 then consults a missing pair and cannot be justified.
        entries = dict(full.entries)
        del entries[(2, 2)]
        with pytest.raises(MalformedCertificate):
            check_run(w, aut, RunCertificate(entries), initial)

    def test_missing_unneeded_entry_is_fine(self):
        aut, initial = two_state_example()
        w = parse_stack("[[a(1,0)]1]2")
        entries = dict(extract_run(w, aut, initial).entries)
        del entries[(1, 2)]  # no non-empty set conditions on this pair
        assert check_run(w, aut, RunCertificate(entries), initial)

    def test_malformed_position_order_and_state(self):
        aut, initial = two_state_example()
        w = parse_stack("[[a(1,0)]1]2")
        with pytest.raises(MalformedCertificate):
            check_run(w, aut, RunCertificate({(9, 1): frozenset()}), frozenset())
        with pytest.raises(MalformedCertificate):
            check_run(w, aut, RunCertificate({(2, 1): frozenset()}), frozenset())
        with pytest.raises(MalformedCertificate):
            check_run(w, aut, RunCertificate({(0, 1): frozenset({"p"})}), frozenset())

    def test_claiming_initial_without_support_fails(self):
        aut, initial = two_state_example()
        w = parse_stack("[[b(1,0)]1]2")
        assert not check_run(w, aut, RunCertificate({}), initial)


class TestValidateAutomaton:
    def test_clean_random_automata(self):
        rng = random.Random(309)
        for _ in range(40):
            assert validate_automaton(random_automaton(rng, rng.choice((1, 2, 3)))) == []

    def test_named_violations(self):
        base = dict(
            order=2,
            alphabet=frozenset("a"),
            states={1: frozenset({"q"}), 2: frozenset({"p"})},
            finals={1: frozenset(), 2: frozenset()},
            char_transitions=frozenset(),
            transitions={},
        )
        overlapping = StackAutomaton(**{**base, "states": {1: frozenset({"q"}), 2: frozenset({"q"})}})
        assert any("overlap" in p for p in validate_automaton(overlapping))

        stray_final = StackAutomaton(**{**base, "finals": {1: frozenset({"z"}), 2: frozenset()}})
        assert any("final" in p for p in validate_automaton(stray_final))

        bad_char = StackAutomaton(
            **{
                **base,
                "char_transitions": frozenset(
                    {CharTransition("q", "z", None, frozenset(), frozenset())}
                ),
            }
        )
        assert any("alphabet" in p for p in validate_automaton(bad_char))

        bad_branch = StackAutomaton(
            **{
                **base,
                "char_transitions": frozenset(
                    {CharTransition("q", "a", 3, frozenset({"p"}), frozenset())}
                ),
            }
        )
        assert any("branch order" in p for p in validate_automaton(bad_branch))

        bad_endpoint = StackAutomaton(
            **{
                **base,
                "transitions": {2: frozenset({Transition("z", "q", frozenset())})},
            }
        )
        assert any("unknown state" in p for p in validate_automaton(bad_endpoint))

    def test_branch_tag_carried_exactly_by_nonempty_sets(self):
        with pytest.raises(ValueError):
            CharTransition("q", "a", 2, frozenset(), frozenset())
        with pytest.raises(ValueError):
            CharTransition("q", "a", None, frozenset({"p"}), frozenset())
