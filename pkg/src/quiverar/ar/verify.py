"""
Independent checks of almost split sequences and of Auslander-Reiten duality.

The probe sweep only tests the supplied modules, so a passing report is
evidence rather than proof; the socle certificate attached by the
constructor is the primary one.
"""

import itertools
import logging
import random
from typing import Callable, Iterator, List, Optional, Sequence

from quiverar.algebra.finite import FiniteAlgebra, Vector
from quiverar.ar.sequences import ShortExactSequence, rad_end
from quiverar.ar.translate import tau
from quiverar.errors import CertificateError, QuiverarError
from quiverar.homological.ext import costable_hom, ext1, stable_hom
from quiverar.homological.presentation import minimal_presentation
from quiverar.linalg.matrix import Matrix, QuotientSpace
from quiverar.models import ClauseResult, DualityReport, DualityRow, VerificationReport
from quiverar.modules.decompose import certify_indecomposable, endomorphism_algebra
from quiverar.modules.representation import HomSpace, Representation, RepMorphism

logger = logging.getLogger(__name__)


def _format_vector(morphism: RepMorphism) -> str:
    return "[" + ", ".join(morphism.field.format(v) for v in morphism.vector()) + "]"


def _sweep(
    space: HomSpace, rng: random.Random, sweep_dimension_cap: int, attempts: int
) -> Iterator[RepMorphism]:
    """All elements over a prime field when the space is small, else basis, sum and samples."""
    f = space.source.field
    n = space.dimension
    if n == 0:
        return
    if f.characteristic and n <= sweep_dimension_cap:
        for coeffs in itertools.product(range(f.characteristic), repeat=n):
            if any(coeffs):
                yield space.element(list(coeffs))
        return
    yield from space.basis
    if n > 1:
        yield space.element([f.one()] * n)
    for _ in range(attempts):
        yield space.element([f.random_element(rng) for _ in range(n)])


def radical_maps(
    source: Representation, target: Representation, radical: Sequence[RepMorphism], right: bool
) -> List[RepMorphism]:
    """A basis of rad(source, target) for an indecomposable end term.

    With ``right`` the end term is ``target`` and h is radical iff h∘s lies in
    rad End(target) for every s: target -> source; otherwise the end term is
    ``source`` and the condition is on s∘h.
    """
    hom = HomSpace(source, target)
    if not hom.dimension:
        return []
    local = target if right else source
    end = HomSpace(local, local)
    f = source.field
    span = Matrix.from_columns(f, [end.coordinates(r) for r in radical], end.dimension)
    residue = QuotientSpace(f, end.dimension, span)
    back = HomSpace(target, source)
    columns = []
    for h in hom.basis:
        column = []
        for s in back.basis:
            product = h.compose(s) if right else s.compose(h)
            coords = Matrix.column_vector(f, end.coordinates(product))
            column.extend(residue.classes(coords).column(0))
        columns.append(column)
    conditions = Matrix.from_columns(f, columns, residue.dimension * back.dimension)
    kernel = conditions.kernel_basis()
    return [hom.element(kernel.column(j)) for j in range(kernel.cols)]


def _almost_split_clause(
    name: str,
    probes: Sequence[Representation],
    space_for: Callable[[Representation], HomSpace],
    is_split: Callable[[RepMorphism], bool],
    lifts: Callable[[Representation, RepMorphism], bool],
    radical_for: Callable[[Representation], List[RepMorphism]],
    rng: random.Random,
    sweep_dimension_cap: int,
    attempts: int,
) -> ClauseResult:
    checked = 0
    for probe in probes:
        space = space_for(probe)
        candidates = list(radical_for(probe))
        candidates += [h for h in _sweep(space, rng, sweep_dimension_cap, attempts)
                       if not is_split(h)]
        for h in candidates:
            checked += 1
            if not lifts(probe, h):
                logger.debug(f"{name} fails for probe {probe.name}")
                return ClauseResult(
                    name=name, passed=False, witness=f"{probe.name}: {_format_vector(h)}"
                )
    return ClauseResult(name=name, passed=True, detail=f"{checked} maps checked")


def _indecomposable_clause(name: str, module: Representation, seed: int) -> ClauseResult:
    try:
        certify_indecomposable(module, seed)
    except QuiverarError as exc:
        return ClauseResult(name=name, passed=False, witness=str(exc))
    return ClauseResult(name=name, passed=True)


def _radical_or_none(module: Representation, seed: int) -> Optional[List[RepMorphism]]:
    try:
        return rad_end(module, seed)
    except QuiverarError as exc:
        logger.warning(f"No radical basis for {module.name}: {exc}")
        return None


def verify_almost_split(
    sequence: ShortExactSequence,
    probes: Sequence[Representation],
    seed: int = 0,
    sweep_dimension_cap: int = 4,
    attempts: int = 64,
) -> VerificationReport:
    """Check a short exact sequence clause by clause against a list of probes.

    Args:
        sequence: The sequence 0 -> X -> Y -> Z -> 0.
        probes: Indecomposable modules to test the lifting properties with.
        seed: Seed for sampled maps.
        sweep_dimension_cap: Over F_p, Hom spaces up to this dimension are swept completely.
        attempts: Sampled maps per probe otherwise.

    Returns:
        One result per clause; an inexact sequence reports only the exactness clause.
    """
    names = [p.name for p in probes]
    reason = sequence.exactness_failure()
    if reason is not None:
        return VerificationReport(
            clauses=[ClauseResult(name="exact", passed=False, witness=reason)], probes=names
        )
    clauses = [ClauseResult(name="exact", passed=True)]
    section = sequence.section()
    clauses.append(
        ClauseResult(
            name="non_split",
            passed=section is None,
            witness=None if section is None else f"section {_format_vector(section)}",
        )
    )
    x, y, z = sequence.start, sequence.middle, sequence.end
    clauses.append(_indecomposable_clause("start_indecomposable", x, seed))
    clauses.append(_indecomposable_clause("end_indecomposable", z, seed))
    rng = random.Random(seed)
    f, g = sequence.f, sequence.g
    rad_x = _radical_or_none(x, seed)
    rad_z = _radical_or_none(z, seed)

    def right_split(h: RepMorphism) -> bool:
        back = HomSpace(z, h.source)
        return back.solve(lambda s: h.compose(s), RepMorphism.identity(z)) is not None

    def right_lifts(probe: Representation, h: RepMorphism) -> bool:
        return HomSpace(probe, y).solve(lambda k: g.compose(k), h) is not None

    def left_split(h: RepMorphism) -> bool:
        back = HomSpace(h.target, x)
        return back.solve(lambda r: r.compose(h), RepMorphism.identity(x)) is not None

    def left_lifts(probe: Representation, h: RepMorphism) -> bool:
        return HomSpace(y, probe).solve(lambda k: k.compose(f), h) is not None

    clauses.append(
        _almost_split_clause(
            "right_almost_split", probes, lambda n: HomSpace(n, z), right_split, right_lifts,
            lambda n: [] if rad_z is None else radical_maps(n, z, rad_z, right=True),
            rng, sweep_dimension_cap, attempts,
        )
    )
    clauses.append(
        _almost_split_clause(
            "left_almost_split", probes, lambda n: HomSpace(x, n), left_split, left_lifts,
            lambda n: [] if rad_x is None else radical_maps(x, n, rad_x, right=False),
            rng, sweep_dimension_cap, attempts,
        )
    )
    clauses.extend(minimality_check(sequence))
    report = VerificationReport(clauses=clauses, probes=names)
    logger.info(f"Verification {'passed' if report.passed else 'failed'} on {len(probes)} probes")
    return report


def _nil_or_idempotent(end: FiniteAlgebra, ideal: List[Vector]) -> Optional[Vector]:
    """None when the one-sided ideal is nilpotent, else an idempotent inside it."""
    if not ideal:
        return None
    nilpotent, stable = end.power_chain(ideal)
    if nilpotent:
        return None
    total = end.combination([end.field.one()] * len(stable), stable)
    e = end.find_idempotent(stable + [total] + ideal)
    if e is None:
        raise CertificateError("non-nilpotent ideal without a Fitting idempotent")
    return e


def minimality_check(sequence: ShortExactSequence) -> List[ClauseResult]:
    """Right minimality of g and left minimality of f.

    {e : g∘e = 0} is a right ideal of End(Y) and {e : e∘f = 0} a left ideal;
    each lies in the radical iff it is nilpotent, and otherwise contains an
    idempotent which is returned as witness.
    """
    y = sequence.middle
    end, hom = endomorphism_algebra(y)
    f = y.field
    results = []
    checks = [
        ("right_minimal", lambda e: sequence.g.compose(e)),
        ("left_minimal", lambda e: e.compose(sequence.f)),
    ]
    for name, transform in checks:
        images = [transform(b).vector() for b in hom.basis]
        length = len(transform(RepMorphism.identity(y)).vector())
        kernel = Matrix.from_columns(f, images, length).kernel_basis()
        ideal = [tuple(kernel.column(j)) for j in range(kernel.cols)]
        try:
            e = _nil_or_idempotent(end, ideal)
        except CertificateError as exc:
            results.append(ClauseResult(name=name, passed=False, detail=str(exc)))
            continue
        if e is None:
            results.append(ClauseResult(name=name, passed=True))
        else:
            witness = _format_vector(hom.element(list(e)))
            results.append(ClauseResult(name=name, passed=False, witness=f"idempotent {witness}"))
    return results


def ar_duality_check(module: Representation, probes: Sequence[Representation]) -> DualityReport:
    """Compare dim Ext¹(X, τM) with the stable Hom(M, X) and dim Ext¹(M, X) with the
    costable Hom(X, τM) for every probe X.

    Raises:
        CertificateError: If M is projective.
    """
    presentation = minimal_presentation(module)
    if presentation.omega.is_zero():
        raise CertificateError(f"{module.name} is projective; the duality needs τM")
    tau_module = tau(module, presentation).result
    rows = []
    for probe in probes:
        ext_probe_tau = ext1(probe, tau_module).dimension
        stable = stable_hom(module, probe).dimension
        ext_module_probe = ext1(module, probe, presentation).dimension
        costable = costable_hom(probe, tau_module).dimension
        rows.append(
            DualityRow(
                probe=probe.name,
                ext_probe_tau=ext_probe_tau,
                stable_module_probe=stable,
                ext_module_probe=ext_module_probe,
                costable_probe_tau=costable,
                holds=ext_probe_tau == stable and ext_module_probe == costable,
            )
        )
    passed = all(r.holds for r in rows)
    if not passed:
        logger.warning(f"Duality identities fail for {module.name}")
    return DualityReport(
        module=module.name, tau=tau_module.summary(), rows=rows, passed=passed
    )
