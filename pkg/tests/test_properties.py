"""Seeded sweeps of the Auslander-Reiten identities over the corpus algebras."""

import random
from collections import Counter

import pytest

from quiverar.ar.sequences import ShortExactSequence, almost_split_sequence, six_term_check
from quiverar.ar.translate import tau, tau_minus
from quiverar.ar.verify import ar_duality_check, verify_almost_split
from quiverar.homological.presentation import (
    injective_envelope,
    minimal_copresentation,
    minimal_presentation,
    projective_cover,
)
from quiverar.modules.constructions import (
    make_injective,
    make_projective,
    make_simple,
    random_module,
)
from quiverar.modules.decompose import decompose, is_isomorphic, reassemble
from quiverar.modules.duality import dualize
from quiverar.modules.representation import direct_sum

ALGEBRAS = ["a2", "a3_bound", "a3", "kronecker", "loop_square"]
SEEDS = [0, 1, 2, 3]


def standard_modules(algebra):
    modules = []
    for x in algebra.quiver.vertices:
        modules += [
            make_projective(algebra, x), make_injective(algebra, x), make_simple(algebra, x)
        ]
    return modules


def random_modules(algebra, seed, count=3):
    rng = random.Random(seed)
    modules = [random_module(algebra, rng, name=f"R{k}") for k in range(count)]
    return [m for m in modules if not m.is_zero()]


def random_indecomposables(algebra, seed):
    return [s.module for m in random_modules(algebra, seed) for s in decompose(m, seed)]


def matched_up_to_isomorphism(first, second):
    rest = list(second)
    for m in first:
        match = next((n for n in rest if is_isomorphic(m, n) is not None), None)
        if match is None:
            return False
        rest.remove(match)
    return not rest


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("name", ALGEBRAS)
def test_duality_identities_on_random_modules(request, name, seed):
    algebra = request.getfixturevalue(name)
    others = standard_modules(algebra) + random_modules(algebra, seed + 100)
    for module in random_modules(algebra, seed):
        if minimal_presentation(module).omega.is_zero():
            continue
        report = ar_duality_check(module, others)
        assert report.passed, [r for r in report.rows if not r.holds]


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("name", ALGEBRAS)
def test_translates_invert_each_other(request, name, seed):
    algebra = request.getfixturevalue(name)
    for module in random_indecomposables(algebra, seed):
        moved = tau(module).result
        if not moved.is_zero():
            assert is_isomorphic(tau_minus(moved).result, module) is not None, module.dims
        moved = tau_minus(module).result
        if not moved.is_zero():
            assert is_isomorphic(tau(moved).result, module) is not None, module.dims


@pytest.mark.parametrize(
    "name, vertices",
    [("a2", ["1"]), ("a3_bound", ["1", "2"]), ("a3", ["1", "2"])],
)
def test_almost_split_sequences_of_simples_verify(request, name, vertices):
    algebra = request.getfixturevalue(name)
    for x in vertices:
        sequence = almost_split_sequence(make_simple(algebra, x))
        report = verify_almost_split(sequence, standard_modules(algebra))
        assert report.passed, (x, [c for c in report.clauses if not c.passed])


def test_almost_split_sequences_of_bound_a3(a3_bound):
    sequence = almost_split_sequence(make_simple(a3_bound, "2"))
    assert sequence.start.dims == {"1": 0, "2": 0, "3": 1}
    assert sequence.middle.dims == {"1": 0, "2": 1, "3": 1}
    sequence = almost_split_sequence(make_simple(a3_bound, "1"))
    assert sequence.start.dims == {"1": 0, "2": 1, "3": 0}
    assert sequence.middle.dims == {"1": 1, "2": 1, "3": 0}


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("name", ALGEBRAS)
def test_double_dual_and_presentation_labels(request, name, seed):
    algebra = request.getfixturevalue(name)
    for module in random_modules(algebra, seed):
        dual = dualize(module)
        assert dualize(dual) == module
        presentation = minimal_presentation(module)
        copresentation = minimal_copresentation(dual)
        assert Counter(presentation.p0_labels) == Counter(copresentation.i0_labels)
        assert Counter(presentation.p1_labels) == Counter(copresentation.i1_labels)
        assert Counter(injective_envelope(module)[0]) == Counter(projective_cover(dual)[0])


def random_sequences(algebra, seed):
    modules = random_modules(algebra, seed)
    sequences = []
    for m in modules:
        presentation = minimal_presentation(m)
        sequences.append(ShortExactSequence(presentation.omega_inclusion, presentation.d0))
        copresentation = minimal_copresentation(m)
        sequences.append(
            ShortExactSequence(copresentation.d0, copresentation.cokernel.projection)
        )
    if len(modules) >= 2:
        total = direct_sum(modules[:2])
        sequences.append(ShortExactSequence(total.injections[0], total.projections[1]))
    return sequences


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("name", ALGEBRAS)
def test_six_term_sequence_on_random_extensions(request, name, seed):
    algebra = request.getfixturevalue(name)
    modules = standard_modules(algebra) + random_modules(algebra, seed + 50)
    for sequence in random_sequences(algebra, seed):
        sequence.check_exact()
        for module in modules:
            report = six_term_check(sequence, module)
            assert report.alternating_sum == 0, (sequence.middle.dims, module.dims)
            assert report.restriction_injective


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("name", ALGEBRAS)
def test_decomposition_of_random_sums(request, name, seed):
    algebra = request.getfixturevalue(name)
    parts = random_modules(algebra, seed)
    if not parts:
        pytest.skip("every sampled module is zero")
    total = direct_sum(parts, name="T").module
    summands = decompose(total, seed)
    expected = [s.module for m in parts for s in decompose(m, seed)]
    assert matched_up_to_isomorphism([s.module for s in summands], expected)
    assert reassemble(summands, total).is_isomorphism()
