"""Tests for the structural classifier and the implication table."""

from quiverar.algebra.classify import (
    ass_theorem_conclusions,
    check_witness,
    classify,
    cycle_nilpotency,
    multiserial_threshold,
    witness_element,
)
from quiverar.models import ConclusionStatus, Truth, WitnessKind


def test_loop_is_bounded_but_not_semiperfect(loop_stable):
    report = classify(loop_stable)
    assert report.locally_left_bounded.value == Truth.TRUE
    assert report.locally_right_bounded.value == Truth.TRUE
    flag = report.locally_semiperfect
    assert flag.value == Truth.FALSE
    assert flag.witness.kind == WitnessKind.IDEMPOTENT
    assert [(t.path, t.coefficient) for t in flag.witness.terms] == [("a*a", "1")]
    assert check_witness(loop_stable, flag)


def test_loop_is_not_semiprimary(loop_stable):
    report = classify(loop_stable, path_length_cap=8)
    flag = report.locally_semiprimary
    assert flag.value == Truth.FALSE
    assert flag.witness.kind == WitnessKind.NONZERO_PATH
    assert flag.witness.length == 8
    assert check_witness(loop_stable, flag)
    assert report.oriented_cycles == ["a"]
    assert report.oriented_cycles_nilpotent.value == Truth.FALSE
    assert report.semiprimary_via_cycles.value == Truth.FALSE


def test_cycle_power_witness(loop_stable):
    a = loop_stable.quiver.arrow_path("a")
    verdict, k, witness = cycle_nilpotency(loop_stable, a, 12)
    assert verdict == Truth.FALSE
    assert k == 4
    assert witness.kind == WitnessKind.CYCLE_POWER
    assert witness_element(loop_stable, witness) == loop_stable.arrow("a") * loop_stable.arrow("a")


def test_finite_dimensional_algebra_satisfies_everything(a2):
    report = classify(a2)
    for flag in (
        report.locally_semiperfect,
        report.locally_semiprimary,
        report.locally_left_bounded,
        report.locally_right_bounded,
        report.left_eventually_multiserial,
        report.right_eventually_multiserial,
    ):
        assert flag.value == Truth.TRUE
    assert report.locally_left_bounded.thresholds == {"1": 2, "2": 1}
    conclusions = ass_theorem_conclusions(report)
    assert len(conclusions) == 15
    assert all(c.status == ConclusionStatus.HOLDS for c in conclusions)


def test_loop_conclusions_drop_false_hypotheses(loop_stable):
    keys = [c.key for c in ass_theorem_conclusions(classify(loop_stable))]
    assert keys == ["left_noetherian", "right_noetherian"]


def test_window_is_eventually_multiserial(fp_window):
    report = classify(fp_window)
    left = report.left_eventually_multiserial
    right = report.right_eventually_multiserial
    assert left.value == Truth.TRUE
    assert right.value == Truth.TRUE
    assert left.thresholds["3"] == 1
    assert right.thresholds["0"] == 3
    assert report.oriented_cycles == ["d"]
    assert report.oriented_cycles_nilpotent.thresholds == {"d": 3}
    assert report.semiprimary_via_cycles.value == Truth.TRUE


def test_multiserial_threshold_at_branch_vertex(fp_window):
    assert multiserial_threshold(fp_window, "3", True, 6, 12) == (1, True)
    assert multiserial_threshold(fp_window, "0", False, 2, 12) == (None, False)
