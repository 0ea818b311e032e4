"""Tests for presentations, copresentations, Ext¹ and stable Hom spaces."""

import pytest

from quiverar.errors import NotSemiperfectError
from quiverar.homological.ext import costable_hom, ext1, stable_hom
from quiverar.homological.presentation import (
    minimal_copresentation,
    minimal_presentation,
    pad_presentation,
    window_support,
)
from quiverar.modules.constructions import make_injective, make_projective, make_simple


def test_presentation_of_simple(a2, a3_bound):
    p = minimal_presentation(make_simple(a2, "1"))
    assert (p.p0_labels, p.p1_labels) == (["1"], ["2"])
    assert p.omega.dims == {"1": 0, "2": 1}
    p = minimal_presentation(make_simple(a3_bound, "2"))
    assert (p.p0_labels, p.p1_labels) == (["2"], ["3"])


def test_projective_has_empty_syzygy(a3):
    p = minimal_presentation(make_projective(a3, "2"))
    assert p.p0_labels == ["2"]
    assert p.p1_labels == []
    assert p.omega.is_zero()


def test_presentation_of_hereditary_injective(a3):
    p = minimal_presentation(make_injective(a3, "2"))
    assert (p.p0_labels, p.p1_labels) == (["1"], ["3"])


def test_copresentation_of_simple(a2, loop_square):
    c = minimal_copresentation(make_simple(a2, "2"))
    assert (c.i0_labels, c.i1_labels) == (["2"], ["1"])
    assert c.cokernel.module.dims == {"1": 1, "2": 0}
    c = minimal_copresentation(make_simple(loop_square, "1"))
    assert (c.i0_labels, c.i1_labels) == (["1"], ["1"])


def test_padding_keeps_the_module(a2):
    minimal = minimal_presentation(make_simple(a2, "1"))
    padded = pad_presentation(minimal, zero_summands=["1"], identity_summands=["2"])
    assert padded.p0_labels == ["1", "2"]
    assert padded.p1_labels == ["2", "1", "2"]
    assert not padded.minimal
    padded.check_exact()


def test_ext_dimensions(a2, a3_bound, loop_square):
    s1, s2 = make_simple(a2, "1"), make_simple(a2, "2")
    assert ext1(s1, s2).dimension == 1
    assert ext1(s2, s1).dimension == 0
    assert ext1(s1, s1).dimension == 0
    b1, b2, b3 = (make_simple(a3_bound, x) for x in ("1", "2", "3"))
    assert ext1(b1, b2).dimension == 1
    assert ext1(b1, b3).dimension == 0
    assert ext1(b2, b3).dimension == 1
    loop = make_simple(loop_square, "1")
    assert ext1(loop, loop).dimension == 1


def test_ext_ignores_presentation_choice(a2):
    s1, s2 = make_simple(a2, "1"), make_simple(a2, "2")
    padded = pad_presentation(minimal_presentation(s1), ["1"], ["2"])
    assert ext1(s1, s2, presentation=padded).dimension == 1
    assert ext1(s1, make_projective(a2, "1"), presentation=padded).dimension == 0


def test_ext_classes_of_basis(a3_bound):
    space = ext1(make_simple(a3_bound, "1"), make_simple(a3_bound, "2"))
    cocycle = space.basis[0]
    assert not space.is_zero(cocycle)
    assert space.classes(cocycle) == [1]
    assert space.classes(space.cocycle([1])) == [1]


def test_stable_and_costable_hom(a2):
    s1, s2, p1 = make_simple(a2, "1"), make_simple(a2, "2"), make_projective(a2, "1")
    assert stable_hom(s1, s1).dimension == 1
    assert stable_hom(p1, s1).dimension == 0
    assert costable_hom(s2, s2).dimension == 1
    assert costable_hom(s1, s1).dimension == 0
    assert costable_hom(p1, p1).dimension == 0


def test_window_support(fp_window):
    assert window_support(fp_window, ["3"], "projective") == {"0", "1", "2", "3"}
    assert window_support(fp_window, ["3"], "injective") == {"3", "4", "5", "6"}
    assert window_support(fp_window, [], "injective") == set()


def test_non_semiperfect_algebra_has_no_covers(loop_stable):
    with pytest.raises(NotSemiperfectError) as info:
        minimal_presentation(make_simple(loop_stable, "1"))
    assert info.value.witness is not None
