"""Tests for the Nakayama functor, translates and almost split sequences."""

import pytest

from quiverar.ar.nakayama import NakayamaError, ProjMap, from_morphism, nu, nu_minus, to_morphism
from quiverar.ar.sequences import (
    ShortExactSequence,
    almost_split_sequence,
    almost_split_sequence_starting_at,
    six_term_check,
)
from quiverar.ar.translate import tau, tau_minus, translate_summands
from quiverar.ar.verify import ar_duality_check, minimality_check, verify_almost_split
from quiverar.errors import CertificateError
from quiverar.homological.presentation import minimal_presentation, pad_presentation
from quiverar.models import Direction, Truth
from quiverar.modules.constructions import make_injective, make_projective, make_simple
from quiverar.modules.decompose import decompose, is_isomorphic
from quiverar.modules.representation import RepMorphism, direct_sum


def standard_modules(algebra):
    modules = []
    for x in algebra.quiver.vertices:
        modules += [
            make_projective(algebra, x), make_injective(algebra, x), make_simple(algebra, x)
        ]
    return modules


def test_nakayama_sends_projectives_to_injectives(a3):
    f = ProjMap(a3, ["2"], ["1"], [[a3.arrow("a")]])
    image = nu(f)
    assert image.source == make_injective(a3, "2")
    assert image.target == make_injective(a3, "1")
    image.check()
    assert nu(ProjMap.identity(a3, ["2"])) == RepMorphism.identity(make_injective(a3, "2"))


def test_nakayama_is_functorial(a3):
    f = ProjMap(a3, ["3"], ["2"], [[a3.arrow("b")]])
    g = ProjMap(a3, ["2"], ["1"], [[a3.arrow("a")]])
    assert str(g.compose(f).entry(0, 0)) == "b*a"
    assert nu(g.compose(f)) == nu(g).compose(nu(f))
    assert to_morphism(g.compose(f)) == to_morphism(g).compose(to_morphism(f))


def test_projective_maps_are_read_back(a3):
    f = ProjMap(a3, ["3"], ["1"], [[a3.arrow("b") * a3.arrow("a")]])
    assert from_morphism(to_morphism(f), ["3"], ["1"]) == f
    assert nu_minus(nu(f), ["3"], ["1"]) == f


def test_projective_map_entries_are_checked(a3):
    with pytest.raises(NakayamaError):
        ProjMap(a3, ["1"], ["2"], [[a3.arrow("a")]])
    with pytest.raises(NakayamaError):
        ProjMap(a3, ["2"], ["1"], [])


def test_translates_of_simples(a2, a3_bound, kronecker, loop_square):
    result = tau(make_simple(a2, "1"))
    assert result.result.dims == {"1": 0, "2": 1}
    assert (result.labels0, result.labels1) == (["1"], ["2"])
    assert result.matches_labels()
    assert tau(make_simple(a3_bound, "1")).result.dims == {"1": 0, "2": 1, "3": 0}
    assert tau(make_simple(a3_bound, "2")).result.dims == {"1": 0, "2": 0, "3": 1}
    assert tau(make_simple(kronecker, "1")).result.dims == {"1": 3, "2": 2}
    assert tau(make_simple(loop_square, "1")).result.dims == {"1": 1}
    assert tau_minus(make_simple(a2, "2")).result.dims == {"1": 1, "2": 0}


def test_translate_of_projective_is_zero(a2):
    result = tau(make_projective(a2, "1"))
    assert result.result.is_zero()
    assert result.note == "P1 is projective, so τ is zero"
    assert tau_minus(make_injective(a2, "1")).note == "I1 is injective, so τ⁻ is zero"


def test_hereditary_translate_and_round_trip(a3):
    i2 = make_injective(a3, "2")
    result = tau(i2).result
    assert is_isomorphic(result, make_projective(a3, "2")) is not None
    assert is_isomorphic(tau_minus(result).result, i2) is not None


def test_padded_presentation_adds_injective_summand(a2):
    s1 = make_simple(a2, "1")
    padded = pad_presentation(minimal_presentation(s1), ["1"], ["2"])
    result = tau(s1, padded)
    assert result.result.dims == {"1": 1, "2": 1}
    assert result.note is None
    assert not result.matches_labels()
    dims = sorted(tuple(s.module.dims.values()) for s in decompose(result.result))
    assert dims == [(0, 1), (1, 0)]


def test_translate_summands_keeps_certificates(a3):
    total = direct_sum([make_simple(a3, "1"), make_simple(a3, "2")], name="M").module
    pairs = translate_summands(total, Direction.TAU)
    assert sorted(tuple(t.result.dims.values()) for _, t in pairs) == [(0, 0, 1), (0, 1, 0)]


def test_almost_split_sequence_of_a2(a2):
    sequence = almost_split_sequence(make_simple(a2, "1"))
    assert sequence.start.dims == {"1": 0, "2": 1}
    assert sequence.middle.dims == {"1": 1, "2": 1}
    assert sequence.almost_split == Truth.TRUE
    assert all(sequence.certificates.values())
    assert not sequence.is_split()


def test_almost_split_sequence_ending_at_hereditary_injective(a3):
    sequence = almost_split_sequence(make_injective(a3, "2"))
    assert sequence.start.dims == {"1": 0, "2": 1, "3": 1}
    assert sequence.middle.dims == {"1": 1, "2": 2, "3": 1}
    middle = sorted(tuple(s.module.dims.values()) for s in decompose(sequence.middle))
    assert middle == [(0, 1, 0), (1, 1, 1)]


def test_almost_split_sequences_of_local_and_kronecker(loop_square, kronecker):
    sequence = almost_split_sequence(make_simple(loop_square, "1"))
    assert sequence.start.dims == {"1": 1}
    assert sequence.middle.dims == {"1": 2}
    sequence = almost_split_sequence(make_simple(kronecker, "1"))
    assert sequence.start.dims == {"1": 3, "2": 2}
    assert sequence.almost_split == Truth.TRUE


def test_projective_end_term_is_refused(a2):
    with pytest.raises(CertificateError, match="projective"):
        almost_split_sequence(make_projective(a2, "1"))
    with pytest.raises(CertificateError, match="injective"):
        almost_split_sequence_starting_at(make_injective(a2, "1"))


def test_sequence_starting_at_module(a2):
    s2 = make_simple(a2, "2")
    sequence = almost_split_sequence_starting_at(s2)
    assert sequence.start is s2
    assert sequence.end.dims == {"1": 1, "2": 0}
    sequence.check_exact()


def test_verification_passes_on_corpus_sequences(a2, a3):
    for algebra, module in ((a2, make_simple(a2, "1")), (a3, make_injective(a3, "2"))):
        sequence = almost_split_sequence(module)
        report = verify_almost_split(sequence, standard_modules(algebra))
        assert report.passed, [c for c in report.clauses if not c.passed]


def test_verification_rejects_split_sequence(a2):
    total = direct_sum([make_simple(a2, "2"), make_simple(a2, "1")])
    split = ShortExactSequence(total.injections[0], total.projections[1])
    report = verify_almost_split(split, standard_modules(a2))
    clauses = {c.name: c for c in report.clauses}
    assert clauses["exact"].passed
    assert not clauses["non_split"].passed
    assert clauses["non_split"].witness.startswith("section")
    assert not report.passed
    minimal = {c.name: c.passed for c in minimality_check(split)}
    assert minimal == {"right_minimal": False, "left_minimal": False}


def test_verification_stops_at_inexact_triple(a2):
    s1, p1 = make_simple(a2, "1"), make_projective(a2, "1")
    broken = ShortExactSequence(RepMorphism.zero(s1, p1), RepMorphism.zero(p1, s1))
    report = verify_almost_split(broken, [s1])
    assert [c.name for c in report.clauses] == ["exact"]
    assert report.clauses[0].witness == "f is not injective"


def test_six_term_alternating_sum_vanishes(a2, a3):
    total = direct_sum([make_simple(a2, "2"), make_simple(a2, "1")])
    sequences = [
        (a2, almost_split_sequence(make_simple(a2, "1"))),
        (a2, ShortExactSequence(total.injections[0], total.projections[1])),
        (a3, almost_split_sequence(make_injective(a3, "2"))),
    ]
    for algebra, sequence in sequences:
        for module in standard_modules(algebra):
            report = six_term_check(sequence, module)
            assert report.alternating_sum == 0
            assert report.restriction_injective


def test_duality_identities(a2, a3_bound, kronecker):
    for algebra, name in ((a2, "1"), (a3_bound, "1"), (kronecker, "1")):
        report = ar_duality_check(make_simple(algebra, name), standard_modules(algebra))
        assert report.passed
    with pytest.raises(CertificateError):
        ar_duality_check(make_projective(a2, "1"), [make_simple(a2, "1")])
