"""
Projective presentations and injective copresentations.

Covers are built from lifts of a basis of the top, envelopes from
functionals dual to a basis of the socle. Both refuse algebras that are not
locally semiperfect.
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Set, Tuple

from quiverar.algebra.bound import BoundQuiverAlgebra
from quiverar.algebra.classify import semiperfect_at
from quiverar.errors import ConsistencyError, NotSemiperfectError
from quiverar.linalg.matrix import ColumnSpace, Matrix
from quiverar.models import Truth, Witness
from quiverar.modules.constructions import (
    Quotient,
    cokernel,
    kernel,
    make_injective,
    make_projective,
    morphism_from_generators,
    morphism_to_cogenerators,
    projective_sum,
    socle,
    top,
)
from quiverar.modules.representation import (
    DirectSum,
    Representation,
    RepMorphism,
    direct_sum_morphism,
)

logger = logging.getLogger(__name__)


class PresentationError(ConsistencyError):
    """Exception raised for a presentation that fails its exactness identities."""
    pass


@lru_cache(maxsize=None)
def semiperfect_witness(algebra: BoundQuiverAlgebra) -> Optional[Witness]:
    """The first nontrivial corner idempotent, or None for a locally semiperfect algebra."""
    rng = random.Random(0)
    for x in algebra.quiver.vertices:
        verdict, witness = semiperfect_at(algebra, x, rng, 64)
        if verdict == Truth.FALSE:
            return witness
    return None


def require_semiperfect(algebra: BoundQuiverAlgebra) -> None:
    """Raise NotSemiperfectError with the classifier witness when a corner algebra is not local."""
    algebra.require_finite("projective covers")
    witness = semiperfect_witness(algebra)
    if witness is not None:
        terms = " + ".join(f"{t.coefficient}*{t.path}" for t in witness.terms)
        raise NotSemiperfectError(
            f"algebra is not locally semiperfect: e_{witness.vertex}Λe_{witness.vertex} "
            f"contains the idempotent {terms}",
            witness,
        )


@dataclass
class Presentation:
    """A projective presentation P1 -> P0 -> M -> 0 over labeled sums of projectives."""

    module: Representation
    p0_labels: List[str]
    p1_labels: List[str]
    p0: DirectSum
    p1: DirectSum
    d0: RepMorphism
    d1: RepMorphism
    omega: Representation
    omega_inclusion: RepMorphism
    minimal: bool

    def check_exact(self) -> None:
        if not self.d0.is_surjective():
            raise PresentationError("d0 is not surjective")
        if not self.d0.compose(self.d1).is_zero():
            raise PresentationError("d0 ∘ d1 is not zero")
        for v, m in self.d1.maps.items():
            if m.rank() != self.omega.dims[v]:
                raise PresentationError(f"image of d1 differs from the kernel of d0 at {v}")


@dataclass
class Copresentation:
    """An injective copresentation 0 -> N -> I0 -> I1 over labeled sums of injectives."""

    module: Representation
    i0_labels: List[str]
    i1_labels: List[str]
    i0: DirectSum
    i1: DirectSum
    d0: RepMorphism
    d1: RepMorphism
    cokernel: Quotient
    minimal: bool

    def check_exact(self) -> None:
        if not self.d0.is_injective():
            raise PresentationError("d0 is not injective")
        if not self.d1.compose(self.d0).is_zero():
            raise PresentationError("d1 ∘ d0 is not zero")
        for v, m in self.d1.maps.items():
            if m.cols - m.rank() != self.module.dims[v]:
                raise PresentationError(f"kernel of d1 differs from the image of d0 at {v}")


def projective_cover(module: Representation) -> Tuple[List[str], DirectSum, RepMorphism]:
    """The projective cover ⊕P_x -> M, one summand per basis vector of top M.

    Returns:
        The labels, the labeled sum and the epimorphism d0.
    """
    require_semiperfect(module.algebra)
    quotient = top(module)
    labels: List[str] = []
    vectors: List[Matrix] = []
    for v in module.quiver.vertices:
        lift = quotient.lifts[v]
        for j in range(lift.cols):
            labels.append(v)
            vectors.append(lift.select_columns([j]))
    p0, d0 = morphism_from_generators(labels, module, vectors)
    return labels, p0, d0


def minimal_presentation(module: Representation) -> Presentation:
    """Cover M, then cover the kernel Ω of the cover."""
    labels0, p0, d0 = projective_cover(module)
    omega, inclusion = kernel(d0, name=f"Ω({module.name})")
    labels1, p1, cover = projective_cover(omega)
    d1 = inclusion.compose(cover)
    presentation = Presentation(
        module, labels0, labels1, p0, p1, d0, d1, omega, inclusion, minimal=True
    )
    presentation.check_exact()
    logger.debug(f"Presentation of {module.name}: P1={labels1} -> P0={labels0}")
    return presentation


def pad_presentation(
    presentation: Presentation,
    zero_summands: Sequence[str] = (),
    identity_summands: Sequence[str] = (),
) -> Presentation:
    """A non-minimal presentation of the same module.

    Args:
        presentation: The presentation to pad.
        zero_summands: Vertices x adding P_x -> 0 to P1.
        identity_summands: Vertices x adding P_x to both P1 and P0, joined by the identity.

    Returns:
        The padded presentation.
    """
    algebra = presentation.module.algebra
    labels0 = list(presentation.p0_labels) + list(identity_summands)
    labels1 = (
        list(presentation.p1_labels) + list(zero_summands) + list(identity_summands)
    )
    p0 = projective_sum(algebra, labels0)
    p1 = projective_sum(algebra, labels1)
    old0 = len(presentation.p0_labels)
    old1 = len(presentation.p1_labels)

    def zero(i: int, j: int) -> RepMorphism:
        return RepMorphism.zero(p1.injections[i].source, p0.injections[j].source)

    blocks = [[zero(i, j) for i in range(len(labels1))] for j in range(len(labels0))]
    for j in range(old0):
        for i in range(old1):
            blocks[j][i] = (
                presentation.p0.projections[j]
                .compose(presentation.d1)
                .compose(presentation.p1.injections[i])
            )
    for k, x in enumerate(identity_summands):
        blocks[old0 + k][old1 + len(zero_summands) + k] = RepMorphism.identity(
            make_projective(algebra, x)
        )
    d1 = direct_sum_morphism(p1, p0, blocks)
    module = presentation.module
    f = module.field
    d0_maps = {}
    for v in module.quiver.vertices:
        extra = p0.module.dims[v] - presentation.p0.module.dims[v]
        d0_maps[v] = Matrix.hstack(
            f, module.dims[v], [presentation.d0.maps[v], Matrix.zeros(f, module.dims[v], extra)]
        )
    d0 = RepMorphism(p0.module, module, d0_maps, check=False)
    omega, inclusion = kernel(d0, name=f"Ω({presentation.module.name})")
    padded = Presentation(
        presentation.module, labels0, labels1, p0, p1, d0, d1, omega, inclusion, minimal=False
    )
    padded.check_exact()
    return padded


def injective_envelope(module: Representation) -> Tuple[List[str], DirectSum, RepMorphism]:
    """The injective envelope M -> ⊕I_x, one summand per basis vector of soc M.

    The labels agree with those of the projective cover of 𝔇M over the opposite algebra.

    Returns:
        The labels, the labeled sum and the monomorphism d0.
    """
    require_semiperfect(module.algebra)
    _, inclusion = socle(module)
    labels: List[str] = []
    functionals: List[Matrix] = []
    for v in module.quiver.vertices:
        basis = inclusion.maps[v]
        if not basis.cols:
            continue
        dual = ColumnSpace(basis).coordinate_matrix()
        for i in range(dual.rows):
            labels.append(v)
            functionals.append(dual.select_rows([i]))
    i0, d0 = morphism_to_cogenerators(module, labels, functionals)
    return labels, i0, d0


def minimal_copresentation(module: Representation) -> Copresentation:
    """Envelop N, then envelop the cokernel of the envelope."""
    labels0, i0, d0 = injective_envelope(module)
    quotient = cokernel(d0, name=f"Σ({module.name})")
    labels1, i1, envelope = injective_envelope(quotient.module)
    d1 = envelope.compose(quotient.projection)
    copresentation = Copresentation(
        module, labels0, labels1, i0, i1, d0, d1, quotient, minimal=True
    )
    copresentation.check_exact()
    logger.debug(f"Copresentation of {module.name}: I0={labels0} -> I1={labels1}")
    return copresentation


def window_support(algebra: BoundQuiverAlgebra, labels: Sequence[str], kind: str) -> Set[str]:
    """The union of the supports of P_x (``kind="projective"``) or I_x for ``labels``."""
    build = make_projective if kind == "projective" else make_injective
    support: Set[str] = set()
    for x in set(labels):
        support.update(build(algebra, x).support())
    return support
