import pytest

from axcat import (
    AxiomSet,
    LitmusTest,
    Outcome,
    ReadInstr,
    WriteInstr,
    allowed_outcomes,
    enumerate_candidates,
    outcome_of,
    validate,
)
from axcat.enumeration import CapExceededError, iter_candidates
from axcat.execution import READ, WRITE


def sb_test():
    return LitmusTest(
        name="SB",
        processes=(
            (WriteInstr("x", 1), ReadInstr("y", "r0")),
            (WriteInstr("y", 1), ReadInstr("x", "r1")),
        ),
        initial=(("x", 0), ("y", 0)),
    )


def sb_outcome(r0, r1):
    return Outcome.make({(0, "r0"): r0, (1, "r1"): r1}, {"x": 1, "y": 1})


class TestEnumerateCandidates:
    def test_single_write_one_candidate(self):
        t = LitmusTest("t", ((WriteInstr("x", 1),),))
        cands = enumerate_candidates(t)
        assert len(cands) == 1
        assert validate(cands[0]) == []

    def test_sb_four_candidates(self):
        cands = enumerate_candidates(sb_test())
        assert len(cands) == 4
        assert all(validate(e) == [] for e in cands)

    def test_write_then_read_two_candidates(self):
        t = LitmusTest("t", ((WriteInstr("x", 1), ReadInstr("x", "r0")),))
        cands = enumerate_candidates(t)
        assert len(cands) == 2
        values = sorted(outcome_of(t, e).register(0, "r0") for e in cands)
        assert values == [0, 1]

    def test_empty_program_rejected(self):
        with pytest.raises(ValueError):
            enumerate_candidates(LitmusTest("t", ()))

    def test_cap(self):
        t = LitmusTest("t", (tuple(WriteInstr(f"a{i}", 1) for i in range(9)),))
        with pytest.raises(CapExceededError):
            enumerate_candidates(t)
        assert len(enumerate_candidates(t, max_events=9)) == 1

    def test_count_matches_choice_point_product(self):
        # 2 writes + 2 reads at one address: 2! co orders x 3^2 rf choices
        t = LitmusTest(
            "t",
            (
                (WriteInstr("x", 1), ReadInstr("x", "r0")),
                (WriteInstr("x", 2), ReadInstr("x", "r1")),
            ),
        )
        assert len(enumerate_candidates(t)) == 2 * 9

    def test_deterministic_order(self):
        a = enumerate_candidates(sb_test())
        b = enumerate_candidates(sb_test())
        assert a == b


class TestIterCandidates:
    def test_closed_form_count(self):
        # 2 writes + 1 read, one address: 2! co orders x 3 rf sources
        skeleton = [
            (0, WRITE, "x", 1),
            (0, WRITE, "x", 2),
            (0, READ, "x", None),
        ]
        assert sum(1 for _ in iter_candidates(skeleton, {"x": 0})) == 6


class TestAllowedOutcomes:
    def test_sb_under_sc(self):
        report = allowed_outcomes(sb_test(), AxiomSet.sc())
        assert report.allowed() == {
            sb_outcome(0, 1),
            sb_outcome(1, 0),
            sb_outcome(1, 1),
        }
        assert sb_outcome(0, 0) in report.outcomes()

    def test_sb_under_sc_per_location(self):
        report = allowed_outcomes(sb_test(), AxiomSet.sc_per_location_only())
        assert report.allowed() == {sb_outcome(r0, r1) for r0 in (0, 1) for r1 in (0, 1)}

    def test_single_write_allowed_everywhere(self):
        t = LitmusTest("t", ((WriteInstr("x", 7),),))
        for axiom_set in (AxiomSet.sc(), AxiomSet.sc_per_location_only()):
            report = allowed_outcomes(t, axiom_set)
            assert report.allowed() == {Outcome.make({}, {"x": 7})}

    def test_sc_monotone_under_weakening(self):
        tests = [
            sb_test(),
            LitmusTest(
                "t",
                (
                    (WriteInstr("x", 1), ReadInstr("x", "r0")),
                    (WriteInstr("x", 2),),
                ),
            ),
        ]
        for t in tests:
            sc = allowed_outcomes(t, AxiomSet.sc()).allowed()
            scpl = allowed_outcomes(t, AxiomSet.sc_per_location_only()).allowed()
            assert sc <= scpl

    def test_nonzero_initial_values(self):
        t = LitmusTest(
            "t",
            ((ReadInstr("x", "r0"),),),
            initial=(("x", 5),),
        )
        report = allowed_outcomes(t, AxiomSet.sc())
        assert report.allowed() == {Outcome.make({(0, "r0"): 5}, {"x": 5})}
