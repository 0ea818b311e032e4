"""Tests for quivers, rewriting and bound quiver algebras."""

from fractions import Fraction

import pytest

from quiverar.algebra.bound import (
    RelationError,
    Saturation,
    build_algebra,
    opposite_algebra,
    validate_relations,
)
from quiverar.algebra.quiver import Arrow, Path, Quiver, QuiverError
from quiverar.algebra.rewriting import RewriteSystem, format_poly
from quiverar.errors import UndecidedError
from quiverar.linalg.fields import QQ, PrimeField


@pytest.fixture
def linear():
    return Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "3")])


def test_paths_compose_right_to_left(linear):
    path = linear.path(["b", "a"])
    assert (path.source, path.target) == ("1", "3")
    assert str(path) == "b*a"
    assert linear.parse_path("e_2") == Path("2", "2")
    assert linear.compose(linear.arrow_path("b"), linear.arrow_path("a")) == path
    assert linear.compose(linear.arrow_path("a"), linear.arrow_path("b")) is None


def test_non_composable_path_rejected(linear):
    with pytest.raises(QuiverError, match="do not compose"):
        linear.path(["a", "b"])


def test_duplicate_and_undeclared_identifiers():
    with pytest.raises(QuiverError):
        Quiver(["1", "1"], [])
    with pytest.raises(QuiverError):
        Quiver(["1"], [Arrow("a", "1", "2")])
    with pytest.raises(QuiverError):
        Quiver(["1", "a"], [Arrow("a", "1", "1")])


def test_opposite_quiver_is_involutive(linear):
    opposite = linear.opposite()
    assert opposite.arrow("a^op") == Arrow("a^op", "2", "1")
    assert opposite.opposite() == linear
    assert linear.opposite_path(linear.path(["b", "a"])) == Path("3", "1", ("a^op", "b^op"))


def test_oriented_cycles_are_listed_once():
    q = Quiver(
        ["1", "2"],
        [Arrow("a", "1", "2"), Arrow("b", "2", "1"), Arrow("c", "1", "1")],
    )
    assert [str(c) for c in q.oriented_cycles(4)] == ["c", "b*a"]


def test_relation_validation(linear):
    with pytest.raises(RelationError, match="length"):
        validate_relations(linear, [{linear.arrow_path("a"): 1}], QQ)
    loop = Quiver(["1", "2"], [Arrow("a", "1", "1"), Arrow("b", "1", "2")])
    mixed = {loop.path(["b", "a"]): 1, loop.path(["a", "a"]): 1}
    with pytest.raises(RelationError, match="parallel"):
        validate_relations(loop, [mixed], QQ)
    assert validate_relations(linear, [{linear.path(["b", "a"]): 0}], QQ) == []


def test_rewrite_system_orients_by_length():
    q = Quiver(["1"], [Arrow("a", "1", "1")])
    system = RewriteSystem(q, QQ)
    aa, aaa = q.path(["a", "a"]), q.path(["a", "a", "a"])
    result = system.complete([{aa: 1, aaa: -1}], degree_cap=10)
    assert result.complete
    assert system.reduce({q.path(["a"] * 5): Fraction(1)}) == {aa: 1}
    assert format_poly({aa: 1, aaa: -1}, q) == "-1*a*a*a + a*a"


def test_completion_adds_overlap_rules():
    q = Quiver(["1"], [Arrow("x", "1", "1"), Arrow("y", "1", "1")])
    xy, yx, xx = q.path(["x", "y"]), q.path(["y", "x"]), q.path(["x", "x"])
    system = RewriteSystem(q, QQ)
    system.complete([{yx: 1, xy: -1}, {xx: 1}], degree_cap=6)
    reduced = system.reduce({q.path(["y", "x", "x"]): 1})
    assert reduced == {}


def test_basis_dimensions(a2, a3_bound, a3, kronecker, loop_stable, loop_square):
    assert a2.dimension == 3
    assert a3_bound.dimension == 5
    assert a3.dimension == 6
    assert kronecker.dimension == 4
    assert loop_stable.dimension == 3
    assert loop_square.dimension == 2


def test_window_dimensions(fp_window, fdim_window):
    assert fp_window.dimension == 29
    assert fdim_window.dimension == 20
    assert fp_window.nilpotency_index == 5
    assert fdim_window.nilpotency_index == 3


def test_saturation_status(a2, a3, loop_stable):
    assert a2.status.kind == Saturation.NILPOTENT
    assert a2.status.bound == 2
    assert a3.nilpotency_index == 3
    assert loop_stable.status.kind == Saturation.STABILIZED
    assert str(loop_stable.status) == "stabilized(3)"


def test_basis_order_puts_trivial_path_first(kronecker, a3_bound):
    assert [str(p) for p in kronecker.basis("1", "1")] == ["e_1"]
    assert [str(p) for p in kronecker.basis("1", "2")] == ["a", "b"]
    assert a3_bound.basis("1", "3") == []


def test_multiplication_follows_written_order(a3, a3_bound):
    a, b = a3.arrow("a"), a3.arrow("b")
    assert str(b * a) == "b*a"
    assert (a * b).is_zero()
    assert (a3_bound.arrow("b") * a3_bound.arrow("a")).is_zero()
    assert a3.idempotent("2") * a == a


def test_loop_powers_stabilize(loop_stable):
    a = loop_stable.arrow("a")
    square = a * a
    assert square * square == square
    assert a * a * a * a * a == square


def test_multiplication_matrices(kronecker):
    a = kronecker.arrow("a")
    left = kronecker.left_multiplication(a, "1", "1", "2")
    assert left.to_lists() == [[1], [0]]
    right = kronecker.right_multiplication(a, "1", "2", "2")
    assert right.to_lists() == [[1], [0]]


def test_undecided_algebra_refuses_basis():
    q = Quiver(["1"], [Arrow("a", "1", "1")])
    free = build_algebra(q, [], QQ, saturation_length=4)
    assert free.status.kind == Saturation.UNDECIDED
    assert not free.is_finite
    with pytest.raises(UndecidedError):
        free.basis("1", "1")


def test_prime_field_relations():
    q = Quiver(["1"], [Arrow("a", "1", "1")])
    f = PrimeField(3)
    aa, aaa = q.path(["a", "a"]), q.path(["a", "a", "a"])
    algebra = build_algebra(q, [{aaa: 1, aa: 2}], f)
    a = algebra.arrow("a")
    assert (a * a * a).terms == {aa: 1}


def test_opposite_algebra(a3_bound):
    assert opposite_algebra(a3_bound) is a3_bound.opposite()
    opposite = a3_bound.opposite()
    assert opposite.dimension == a3_bound.dimension
    assert opposite.opposite() is a3_bound
    assert (opposite.arrow("a^op") * opposite.arrow("b^op")).is_zero()


def test_paths_between_lists_parallel_paths(kronecker):
    q = kronecker.quiver
    assert [str(p) for p in q.paths_between("1", "2", 3)] == ["a", "b"]
    assert [str(p) for p in q.paths_between("1", "1", 3)] == ["e_1"]
    assert q.paths_between("2", "1", 3) == []
