"""Tests for representations, standard modules and subquotients."""

import random

import pytest

from quiverar.linalg.fields import QQ
from quiverar.linalg.matrix import Matrix
from quiverar.modules.constructions import (
    cokernel,
    exact_parts,
    make_injective,
    make_projective,
    make_simple,
    morphism_from_generators,
    morphism_to_cogenerators,
    radical,
    random_module,
    socle,
    socle_labels,
    top,
    top_labels,
)
from quiverar.modules.duality import dualize, dualize_morphism
from quiverar.modules.representation import (
    HomSpace,
    Representation,
    RepresentationError,
    RepMorphism,
    direct_sum,
    hom_basis,
)


def kronecker_module(algebra, a, b):
    action = {"a": Matrix.from_rows(QQ, [[a]]), "b": Matrix.from_rows(QQ, [[b]])}
    return Representation(algebra, {"1": 1, "2": 1}, action, name="R")


def test_standard_modules_have_expected_dimensions(a3, a3_bound, kronecker):
    assert make_projective(a3, "1").dims == {"1": 1, "2": 1, "3": 1}
    assert make_injective(a3, "1").dims == {"1": 1, "2": 0, "3": 0}
    assert make_injective(a3, "3").dims == {"1": 1, "2": 1, "3": 1}
    assert make_projective(a3_bound, "1").dims == {"1": 1, "2": 1, "3": 0}
    assert make_injective(a3_bound, "3").dims == {"1": 0, "2": 1, "3": 1}
    assert make_projective(kronecker, "1").dims == {"1": 1, "2": 2}
    assert make_simple(kronecker, "2").name == "S2"


def test_shape_and_relation_checks(a3_bound):
    one = Matrix.from_rows(QQ, [[1]])
    with pytest.raises(RepresentationError, match="shape"):
        Representation(a3_bound, {"1": 1, "2": 2}, {"a": one})
    with pytest.raises(RepresentationError, match="relation"):
        Representation(a3_bound, {"1": 1, "2": 1, "3": 1}, {"a": one, "b": one})


def test_hom_from_projective_is_evaluation(kronecker, a3):
    module = kronecker_module(kronecker, 1, 2)
    for x in ("1", "2"):
        assert HomSpace(make_projective(kronecker, x), module).dimension == module.dims[x]
        assert HomSpace(module, make_injective(kronecker, x)).dimension == module.dims[x]
    assert HomSpace(make_simple(a3, "1"), make_projective(a3, "1")).dimension == 0
    assert HomSpace(make_projective(a3, "3"), make_projective(a3, "1")).dimension == 1


def test_hom_basis_elements_commute(kronecker):
    p1 = make_projective(kronecker, "1")
    space = HomSpace(p1, p1)
    for phi in space.basis:
        phi.check()
    assert space.dimension == 1
    identity = RepMorphism.identity(p1)
    assert space.element(space.coordinates(identity)) == identity


def test_non_commuting_morphism_rejected(kronecker):
    source = kronecker_module(kronecker, 1, 0)
    target = kronecker_module(kronecker, 0, 1)
    maps = {"1": Matrix.identity(QQ, 1), "2": Matrix.identity(QQ, 1)}
    with pytest.raises(RepresentationError, match="commute"):
        RepMorphism(source, target, maps)


def test_top_radical_and_socle(a3, kronecker):
    p1 = make_projective(a3, "1")
    assert top(p1).module.dims == {"1": 1, "2": 0, "3": 0}
    assert top_labels(p1) == ["1"]
    assert socle_labels(p1) == ["3"]
    assert socle(p1)[0].dims == {"1": 0, "2": 0, "3": 1}
    assert radical(make_projective(kronecker, "1"))[0].dims == {"1": 0, "2": 2}
    assert socle_labels(make_injective(a3, "1")) == ["1"]


def test_cokernel_of_radical_inclusion_is_simple(a3):
    p2 = make_projective(a3, "2")
    _, inclusion = radical(p2)
    quotient = cokernel(inclusion)
    assert quotient.module.dims == make_simple(a3, "2").dims
    assert quotient.projection.is_surjective()
    assert quotient.projection.compose(inclusion).is_zero()


def test_direct_sum_injections_and_projections(a3):
    total = direct_sum([make_projective(a3, "1"), make_simple(a3, "2")])
    assert total.module.dims == {"1": 1, "2": 2, "3": 1}
    for inj, proj in zip(total.injections, total.projections):
        assert proj.compose(inj) == RepMorphism.identity(inj.source)
    assert total.projections[1].compose(total.injections[0]).is_zero()


def test_maps_from_generators_and_to_cogenerators(kronecker):
    module = kronecker_module(kronecker, 1, 2)
    _, cover = morphism_from_generators(["1"], module, [[1]])
    cover.check()
    assert cover.is_surjective()
    _, envelope = morphism_to_cogenerators(module, ["2"], [[1]])
    envelope.check()
    assert envelope.is_injective()


def test_random_modules_satisfy_relations(a3_bound, fp_window):
    for algebra in (a3_bound, fp_window):
        module = random_module(algebra, random.Random(3))
        module.check_relations()
        assert module == random_module(algebra, random.Random(3))


def test_dual_of_projective_is_opposite_injective(a3_bound):
    opposite = a3_bound.opposite()
    for x in ("1", "2", "3"):
        dual = dualize(make_projective(a3_bound, x))
        dual.check_relations()
        assert dual.algebra is opposite
        assert dual.dims == make_injective(opposite, x).dims


def test_dualize_twice_is_identity(kronecker):
    module = kronecker_module(kronecker, 1, 2)
    assert dualize(dualize(module)) == module
    assert dualize(dualize(module)).name == "R"
    p1 = make_projective(kronecker, "1")
    phi = HomSpace(p1, module).basis[0]
    dual = dualize_morphism(phi)
    dual.check()
    assert dual.source.dims == module.dims


def test_hom_basis_matches_hom_space(a3, kronecker):
    p3, p1 = make_projective(a3, "3"), make_projective(a3, "1")
    assert len(hom_basis(p3, p1)) == 1
    assert hom_basis(make_simple(a3, "1"), p1) == []
    assert len(hom_basis(make_simple(kronecker, "2"), make_projective(kronecker, "1"))) == 2


def test_exact_parts_of_top_projection(a3):
    p1 = make_projective(a3, "1")
    projection = top(p1).projection
    parts = exact_parts(projection)
    assert parts.kernel.dims == {"1": 0, "2": 1, "3": 1}
    assert parts.image.dims == {"1": 1, "2": 0, "3": 0}
    assert parts.cokernel.is_zero()
    assert parts.kernel_inclusion.is_injective()
    assert projection.compose(parts.kernel_inclusion).is_zero()
    assert parts.cokernel_projection.compose(parts.image_inclusion).is_zero()
