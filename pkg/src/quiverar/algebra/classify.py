"""
Structural classification of bound quiver algebras.

This module decides the local finiteness conditions on Λ = kQ/I
(semiperfect, semiprimary, bounded, eventually multiserial), attaches
checkable witnesses to negative answers and evaluates which almost split
sequence theorems apply.
"""

import logging
import random
from typing import Dict, List, Optional, Set, Tuple

from quiverar.algebra.bound import AlgebraElement, BoundQuiverAlgebra, Saturation
from quiverar.algebra.finite import FiniteAlgebra
from quiverar.algebra.quiver import Path
from quiverar.errors import ConsistencyError, UndecidedError
from quiverar.models import (
    ClassificationReport,
    Conclusion,
    ConclusionStatus,
    Flag,
    Truth,
    Witness,
    WitnessKind,
    WitnessTerm,
)

logger = logging.getLogger(__name__)

MAX_PATHS_PER_LEVEL = 10000


def corner_algebra(algebra: BoundQuiverAlgebra, x: str) -> Tuple[FiniteAlgebra, List[Path]]:
    """e_xΛe_x as a finite algebra on ``basis(x, x)``; the trivial path is basis element 0."""
    basis = algebra.basis(x, x)
    elements = [algebra.element(p) for p in basis]

    def product(i: int, j: int) -> List:
        return algebra.coordinates(elements[i] * elements[j], x, x)

    unit = algebra.coordinates(algebra.idempotent(x), x, x)
    return FiniteAlgebra.from_products(algebra.field, len(basis), product, unit), basis


def element_witness(element: AlgebraElement, kind: WitnessKind, vertex: str,
                    path: Optional[str] = None, length: Optional[int] = None) -> Witness:
    terms = [
        WitnessTerm(path=str(p), coefficient=str(element.terms[p])) for p in element.support()
    ]
    return Witness(kind=kind, vertex=vertex, path=path, terms=terms, length=length)


def witness_element(algebra: BoundQuiverAlgebra, witness: Witness) -> AlgebraElement:
    terms = {algebra.quiver.parse_path(t.path): algebra.field.coerce(t.coefficient)
             for t in witness.terms}
    return algebra.normalize(terms)


def semiperfect_at(
    algebra: BoundQuiverAlgebra, x: str, rng: random.Random, attempts: int
) -> Tuple[Truth, Optional[Witness]]:
    """Decide whether e_xΛe_x is local.

    The positive-length loops at ``x`` span an ideal of codimension one, so
    the corner algebra is local exactly when that ideal is nilpotent.
    Otherwise a nontrivial idempotent is extracted from the stable power.
    """
    corner, basis = corner_algebra(algebra, x)
    loops = [corner.basis_vector(i) for i, p in enumerate(basis) if p.length > 0]
    if not loops:
        return Truth.TRUE, None
    nilpotent, stable = corner.power_chain(loops)
    if nilpotent:
        return Truth.TRUE, None
    candidates = stable + [corner.combination([corner.field.one()] * len(stable), stable)]
    candidates += [
        corner.combination([corner.field.random_element(rng) for _ in stable], stable)
        for _ in range(attempts)
    ]
    for a in candidates:
        if corner.is_nilpotent(a):
            continue
        e = corner.fitting_idempotent(a)
        if e is None:
            continue
        element = algebra.from_coordinates(x, x, e)
        logger.debug(f"Nontrivial idempotent {element} in e_{x}Λe_{x}")
        return Truth.FALSE, element_witness(element, WitnessKind.IDEMPOTENT, x)
    raise ConsistencyError(f"radical of e_{x}Λe_{x} is not nilpotent but no idempotent was found")


def nonzero_path_levels(algebra: BoundQuiverAlgebra, cap: int) -> Tuple[Truth, Optional[int],
                                                                        List[Path]]:
    """Enumerate nonzero paths by length, extending only nonzero paths.

    Returns:
        (TRUE, L, []) when every path of length L is zero, (FALSE, cap, level)
        with the nonzero paths of length ``cap`` otherwise, or UNDECIDED.
    """
    level = [algebra.quiver.trivial_path(x) for x in algebra.quiver.vertices]
    for length in range(1, cap + 1):
        extended = []
        for p in level:
            for a in algebra.quiver.out_arrows(p.target):
                step = Path(p.source, a.target, (a.name,) + p.arrows)
                verdict = algebra.is_nonzero_path(step)
                if verdict == Truth.UNDECIDED:
                    return Truth.UNDECIDED, length, []
                if verdict == Truth.TRUE:
                    extended.append(step)
        if not extended:
            return Truth.TRUE, length, []
        if len(extended) > MAX_PATHS_PER_LEVEL:
            return Truth.UNDECIDED, length, []
        level = extended
    return Truth.FALSE, cap, sorted(level, key=algebra.quiver.sort_key)


def _reach(algebra: BoundQuiverAlgebra, start: str, forward: bool) -> Set[str]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        arrows = algebra.quiver.out_arrows(v) if forward else algebra.quiver.in_arrows(v)
        for a in arrows:
            w = a.target if forward else a.source
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _extensions(algebra: BoundQuiverAlgebra, node: Path, left: bool) -> List[Path]:
    q = algebra.quiver
    if left:
        steps = [Path(node.source, a.target, (a.name,) + node.arrows)
                 for a in q.out_arrows(node.target)]
    else:
        steps = [Path(a.source, node.target, node.arrows + (a.name,))
                 for a in q.in_arrows(node.source)]
    found = []
    for s in steps:
        verdict = algebra.is_nonzero_path(s)
        if verdict == Truth.UNDECIDED:
            raise UndecidedError(f"cannot decide whether {s} is nonzero")
        if verdict == Truth.TRUE:
            found.append(s)
    return found


def _is_chain(algebra: BoundQuiverAlgebra, rho: Path, left: bool, depth: int) -> Truth:
    """Whether the nonzero paths extending ``rho`` form a chain."""
    start = algebra.is_nonzero_path(rho)
    if start != Truth.TRUE:
        return Truth.TRUE if start == Truth.FALSE else Truth.UNDECIDED
    node = rho
    for _ in range(depth):
        children = _extensions(algebra, node, left)
        if len(children) > 1:
            return Truth.FALSE
        if not children:
            return Truth.TRUE
        node = children[0]
        end = node.target if left else node.source
        region = _reach(algebra, end, forward=left)
        degree = (
            (lambda v: len(algebra.quiver.out_arrows(v)))
            if left
            else (lambda v: len(algebra.quiver.in_arrows(v)))
        )
        if all(degree(v) <= 1 for v in region):
            return Truth.TRUE
    return Truth.UNDECIDED


def _paths_of_length(algebra: BoundQuiverAlgebra, x: str, n: int, left: bool) -> List[Path]:
    """All paths of length ``n`` starting at ``x`` (left) or ending at ``x`` (right)."""
    q = algebra.quiver
    level = [q.trivial_path(x)]
    for _ in range(n):
        if left:
            level = [Path(x, a.target, (a.name,) + p.arrows)
                     for p in level for a in q.out_arrows(p.target)]
        else:
            level = [Path(a.source, x, p.arrows + (a.name,))
                     for p in level for a in q.in_arrows(p.source)]
    return level


def multiserial_threshold(
    algebra: BoundQuiverAlgebra, x: str, left: bool, n_cap: int, depth: int
) -> Tuple[Optional[int], bool]:
    """Least n such that every length-n path at ``x`` has a chain of nonzero extensions.

    Returns:
        (n, True) when found, (None, False) when no n up to ``n_cap`` is decided.
    """
    for n in range(n_cap + 1):
        verdicts = [_is_chain(algebra, rho, left, depth)
                    for rho in _paths_of_length(algebra, x, n, left)]
        if Truth.FALSE in verdicts:
            continue
        if all(v == Truth.TRUE for v in verdicts):
            return n, True
    return None, False


def cycle_nilpotency(
    algebra: BoundQuiverAlgebra, cycle: Path, cap: int
) -> Tuple[Truth, Optional[int], Optional[Witness]]:
    """Least k with c^k = 0.

    Returns:
        (TRUE, k, None), (FALSE, k, witness) where c^k is nonzero for ``k``
        beyond the dimension of the corner algebra, or (UNDECIDED, cap, None).
    """
    x = cycle.source
    limit = cap
    if algebra.is_finite:
        limit = len(algebra.basis(x, x)) + 1
    try:
        c = algebra.element(cycle)
        power = c
        for k in range(1, limit + 1):
            if power.is_zero():
                return Truth.TRUE, k, None
            if k == limit:
                break
            power = power * c
    except UndecidedError:
        return Truth.UNDECIDED, cap, None
    if algebra.is_finite:
        return Truth.FALSE, limit, element_witness(
            power, WitnessKind.CYCLE_POWER, x, path=str(cycle), length=limit
        )
    return Truth.UNDECIDED, cap, None


def check_witness(algebra: BoundQuiverAlgebra, flag: Flag) -> bool:
    """Independently check the witness attached to a false flag."""
    w = flag.witness
    if w is None:
        return False
    if w.kind == WitnessKind.IDEMPOTENT:
        e = witness_element(algebra, w)
        x = w.vertex
        in_corner = all(p.source == x and p.target == x for p in e.terms)
        return (
            in_corner
            and not e.is_zero()
            and e * e == e
            and e != algebra.idempotent(x)
        )
    if w.kind == WitnessKind.NONZERO_PATH:
        p = algebra.quiver.parse_path(w.path or "")
        return (
            algebra.is_nonzero_path(p) == Truth.TRUE
            and flag.bound is not None
            and p.length >= flag.bound
            and algebra.status.kind == Saturation.STABILIZED
        )
    if w.kind == WitnessKind.CYCLE_POWER:
        cycle = algebra.element(algebra.quiver.parse_path(w.path or ""))
        power = cycle
        for _ in range((w.length or 1) - 1):
            power = power * cycle
        return (
            not power.is_zero()
            and power == witness_element(algebra, w)
            and (w.length or 0) > len(algebra.basis(w.vertex, w.vertex))
        )
    return False


def _undecided(bound: Optional[int]) -> Flag:
    return Flag(value=Truth.UNDECIDED, bound=bound)


def classify(
    algebra: BoundQuiverAlgebra,
    path_length_cap: int = 12,
    multiserial_n_cap: int = 6,
    seed: int = 0,
    attempts: int = 64,
) -> ClassificationReport:
    """Classify the algebra.

    Args:
        algebra: A built algebra.
        path_length_cap: Longest nonzero path enumerated for semiprimary witnesses.
        multiserial_n_cap: Largest threshold n tried for eventual multiseriality.
        seed: Seed for idempotent search.
        attempts: Random candidates tried per idempotent search.

    Returns:
        The classification report.
    """
    q = algebra.quiver
    finiteness = q.local_finiteness()
    cycles = q.oriented_cycles(len(q.vertices))
    base = dict(
        field=algebra.field.descriptor(),
        status=str(algebra.status),
        left_locally_finite=finiteness.left_locally_finite,
        right_locally_finite=finiteness.right_locally_finite,
        locally_finite=finiteness.locally_finite,
        oriented_cycles=[str(c) for c in cycles],
    )
    if not algebra.is_finite:
        logger.warning(f"Algebra status {algebra.status}: every flag is undecided")
        bound = algebra.status.bound
        return ClassificationReport(
            **base,
            locally_semiperfect=_undecided(bound),
            locally_semiprimary=_undecided(bound),
            locally_left_bounded=_undecided(bound),
            locally_right_bounded=_undecided(bound),
            left_eventually_multiserial=_undecided(bound),
            right_eventually_multiserial=_undecided(bound),
            oriented_cycles_nilpotent=_undecided(bound),
            semiprimary_via_cycles=_undecided(bound),
        )

    rng = random.Random(seed)
    per_vertex: Dict[str, Truth] = {}
    witness: Optional[Witness] = None
    for x in q.vertices:
        verdict, w = semiperfect_at(algebra, x, rng, attempts)
        per_vertex[x] = verdict
        if w is not None and witness is None:
            witness = w
    semiperfect = Flag(
        value=Truth.FALSE if witness else Truth.TRUE, witness=witness, per_vertex=per_vertex
    )

    semiprimary = _semiprimary_flag(algebra, path_length_cap)

    left_bounded = Flag(
        value=Truth.TRUE,
        per_vertex={x: Truth.TRUE for x in q.vertices},
        thresholds={x: algebra.left_dimension(x) for x in q.vertices},
    )
    right_bounded = Flag(
        value=Truth.TRUE,
        per_vertex={x: Truth.TRUE for x in q.vertices},
        thresholds={x: algebra.right_dimension(x) for x in q.vertices},
    )

    left_ms = _multiserial_flag(algebra, True, multiserial_n_cap, path_length_cap)
    right_ms = _multiserial_flag(algebra, False, multiserial_n_cap, path_length_cap)

    cycles_flag = _cycles_flag(algebra, cycles, path_length_cap)
    via_cycles = _semiprimary_via_cycles(semiprimary, cycles_flag, left_ms, right_ms)

    report = ClassificationReport(
        **base,
        locally_semiperfect=semiperfect,
        locally_semiprimary=semiprimary,
        locally_left_bounded=left_bounded,
        locally_right_bounded=right_bounded,
        left_eventually_multiserial=left_ms,
        right_eventually_multiserial=right_ms,
        oriented_cycles_nilpotent=cycles_flag,
        semiprimary_via_cycles=via_cycles,
    )
    logger.info(
        f"Classified algebra: semiperfect={semiperfect.value.value}, "
        f"semiprimary={semiprimary.value.value}"
    )
    return report


def _semiprimary_flag(algebra: BoundQuiverAlgebra, cap: int) -> Flag:
    if algebra.status.kind == Saturation.NILPOTENT:
        return Flag(value=Truth.TRUE, bound=algebra.status.bound)
    verdict, length, level = nonzero_path_levels(algebra, cap)
    if verdict == Truth.TRUE:
        return Flag(value=Truth.TRUE, bound=length)
    if verdict == Truth.FALSE and algebra.status.kind == Saturation.STABILIZED:
        path = level[0]
        return Flag(
            value=Truth.FALSE,
            bound=cap,
            witness=Witness(
                kind=WitnessKind.NONZERO_PATH, vertex=path.source, path=str(path), length=cap
            ),
        )
    return _undecided(length)


def _multiserial_flag(algebra: BoundQuiverAlgebra, left: bool, n_cap: int, depth: int) -> Flag:
    thresholds: Dict[str, Optional[int]] = {}
    per_vertex: Dict[str, Truth] = {}
    for x in algebra.quiver.vertices:
        try:
            n, found = multiserial_threshold(algebra, x, left, n_cap, depth)
        except UndecidedError:
            n, found = None, False
        thresholds[x] = n
        per_vertex[x] = Truth.TRUE if found else Truth.UNDECIDED
    value = Truth.TRUE if all(v == Truth.TRUE for v in per_vertex.values()) else Truth.UNDECIDED
    return Flag(
        value=value,
        bound=None if value == Truth.TRUE else n_cap,
        per_vertex=per_vertex,
        thresholds=thresholds,
    )


def _cycles_flag(algebra: BoundQuiverAlgebra, cycles: List[Path], cap: int) -> Flag:
    value = Truth.TRUE
    witness = None
    thresholds: Dict[str, Optional[int]] = {}
    for c in cycles:
        verdict, k, w = cycle_nilpotency(algebra, c, cap)
        thresholds[str(c)] = k if verdict == Truth.TRUE else None
        if verdict == Truth.FALSE:
            value = Truth.FALSE
            witness = witness or w
        elif verdict == Truth.UNDECIDED and value == Truth.TRUE:
            value = Truth.UNDECIDED
    return Flag(value=value, witness=witness, thresholds=thresholds)


def _semiprimary_via_cycles(
    semiprimary: Flag, cycles_flag: Flag, left_ms: Flag, right_ms: Flag
) -> Flag:
    if Truth.TRUE not in (left_ms.value, right_ms.value):
        return _undecided(None)
    if (
        semiprimary.value != Truth.UNDECIDED
        and cycles_flag.value != Truth.UNDECIDED
        and semiprimary.value != cycles_flag.value
    ):
        raise ConsistencyError(
            f"semiprimary is {semiprimary.value.value} but cycle nilpotency is "
            f"{cycles_flag.value.value} on an eventually multiserial algebra"
        )
    return Flag(value=cycles_flag.value, witness=cycles_flag.witness)


HYPOTHESIS_NAMES = {
    "SP": "locally semiprimary",
    "LF": "locally finite quiver",
    "LLB": "locally left bounded",
    "LRB": "locally right bounded",
    "SPF": "locally semiperfect",
    "LEM": "left eventually multiserial",
    "REM": "right eventually multiserial",
}

# (key, statement, conjunction of hypotheses; a tuple inside is a disjunction)
CONCLUSION_TABLE: List[Tuple[str, str, List]] = [
    ("mod_ass_end", "Mod Λ has an almost split sequence ending at every indecomposable "
     "nonprojective finitely presented module with finite-dimensional τM", ["SPF"]),
    ("mod_ass_start", "Mod Λ has an almost split sequence starting at every indecomposable "
     "noninjective finitely copresented module with finite-dimensional τ⁻N", ["SPF"]),
    ("fp_ass_left", "mod⁺Λ has almost split sequences on the left", ["SP", "LF", "LLB"]),
    ("fp_ass_right", "mod⁺Λ has almost split sequences on the right", ["SP", "LF", "LRB"]),
    ("fp_ass_are_mod_ass", "almost split sequences of mod⁺Λ are those of Mod Λ with "
     "finite-dimensional starting term", ["SP", "LF"]),
    ("fcp_ass_right", "mod⁻Λ has almost split sequences on the right", ["SP", "LF", "LRB"]),
    ("fcp_ass_left", "mod⁻Λ has almost split sequences on the left", ["SP", "LF", "LLB"]),
    ("fcp_ass_are_mod_ass", "almost split sequences of mod⁻Λ are those of Mod Λ with "
     "finite-dimensional ending term", ["SP", "LF"]),
    ("fd_ass_left", "the finite-dimensional module category has almost split sequences "
     "on the left", ["SP", "LF", "LLB"]),
    ("fd_ass_right", "the finite-dimensional module category has almost split sequences "
     "on the right", ["SP", "LF", "LRB"]),
    ("fd_ass_in_mod", "almost split sequences of the finite-dimensional module category "
     "are almost split in Mod Λ", ["SP", "LF", ("LLB", "LRB")]),
    ("fp_equals_fd", "mod⁺Λ equals the finite-dimensional module category", ["SPF", "LLB"]),
    ("fcp_equals_fd", "mod⁻Λ equals the finite-dimensional module category", ["SPF", "LRB"]),
    ("left_noetherian", "Λ is locally left noetherian", ["LEM"]),
    ("right_noetherian", "Λ is locally right noetherian", ["REM"]),
]


def _hypothesis_values(report: ClassificationReport) -> Dict[str, Truth]:
    return {
        "SP": report.locally_semiprimary.value,
        "LF": Truth.TRUE if report.locally_finite else Truth.FALSE,
        "LLB": report.locally_left_bounded.value,
        "LRB": report.locally_right_bounded.value,
        "SPF": report.locally_semiperfect.value,
        "LEM": report.left_eventually_multiserial.value,
        "REM": report.right_eventually_multiserial.value,
    }


def _evaluate(term, values: Dict[str, Truth]) -> Truth:
    if isinstance(term, tuple):
        options = [values[t] for t in term]
        if Truth.TRUE in options:
            return Truth.TRUE
        return Truth.UNDECIDED if Truth.UNDECIDED in options else Truth.FALSE
    return values[term]


def ass_theorem_conclusions(report: ClassificationReport) -> List[Conclusion]:
    """Evaluate the implication table against a classification report.

    Conclusions with a false hypothesis are omitted; undecided hypotheses
    make the conclusion undecided.
    """
    values = _hypothesis_values(report)
    conclusions = []
    for key, statement, hypotheses in CONCLUSION_TABLE:
        verdicts = [_evaluate(h, values) for h in hypotheses]
        if Truth.FALSE in verdicts:
            continue
        status = (
            ConclusionStatus.HOLDS
            if all(v == Truth.TRUE for v in verdicts)
            else ConclusionStatus.UNDECIDED
        )
        names = [
            " or ".join(HYPOTHESIS_NAMES[t] for t in h) if isinstance(h, tuple)
            else HYPOTHESIS_NAMES[h]
            for h in hypotheses
        ]
        conclusions.append(
            Conclusion(key=key, statement=statement, hypotheses=names, status=status)
        )
    return conclusions
