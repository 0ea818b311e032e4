"""Tests for endomorphism algebras, isomorphism search and decomposition."""

import pytest

from quiverar.errors import CertificateError
from quiverar.linalg.fields import QQ
from quiverar.linalg.matrix import Matrix
from quiverar.models import Certificate
from quiverar.modules.constructions import make_projective, make_simple
from quiverar.modules.decompose import (
    certify_indecomposable,
    decompose,
    endomorphism_algebra,
    is_isomorphic,
    reassemble,
)
from quiverar.modules.representation import Representation, RepMorphism, direct_sum


def kronecker_module(algebra, a, b, name="R"):
    action = {"a": Matrix.from_rows(QQ, [[a]]), "b": Matrix.from_rows(QQ, [[b]])}
    return Representation(algebra, {"1": 1, "2": 1}, action, name=name)


def test_endomorphism_algebra_of_sum(a3):
    total = direct_sum([make_projective(a3, "1"), make_simple(a3, "2")]).module
    end, space = endomorphism_algebra(total)
    assert space.dimension == 2
    assert end.dim == 2


def test_sum_splits_into_certified_summands(a3):
    total = direct_sum([make_projective(a3, "1"), make_simple(a3, "2")], name="M").module
    summands = decompose(total)
    assert len(summands) == 2
    assert sorted(tuple(s.module.dims.values()) for s in summands) == [(0, 1, 0), (1, 1, 1)]
    assert all(s.certificate == Certificate.CERTIFIED for s in summands)
    assert [s.module.name for s in summands] == ["M[0]", "M[1]"]
    for s in summands:
        assert s.projection.compose(s.inclusion) == RepMorphism.identity(s.module)
    assert reassemble(summands, total).is_isomorphism()


def test_local_module_is_its_own_summand(kronecker, loop_square):
    module = kronecker_module(kronecker, 1, 2)
    summands = decompose(module)
    assert len(summands) == 1
    assert summands[0].certificate == Certificate.CERTIFIED
    assert certify_indecomposable(make_projective(loop_square, "1")).module.name == "P1"


def test_zero_module_has_no_summands(a2):
    assert decompose(Representation.zero(a2)) == []
    with pytest.raises(CertificateError, match="zero"):
        certify_indecomposable(Representation.zero(a2))


def test_decomposable_module_is_not_certified(loop_square):
    total = direct_sum([make_projective(loop_square, "1"), make_simple(loop_square, "1")])
    assert len(decompose(total.module)) == 2
    with pytest.raises(CertificateError, match="decomposable"):
        certify_indecomposable(total.module)


def test_isomorphism_search(kronecker):
    first = kronecker_module(kronecker, 1, 2)
    second = kronecker_module(kronecker, 2, 4, name="R2")
    iso = is_isomorphic(first, second)
    assert iso is not None
    iso.check()
    assert iso.is_isomorphism()
    upper, lower = kronecker_module(kronecker, 1, 0), kronecker_module(kronecker, 0, 1)
    assert is_isomorphic(upper, lower) is None
    assert is_isomorphic(first, make_projective(kronecker, "1")) is None
