"""
Ext¹ and the stable and costable Hom spaces.

Ext¹(M, N) is modelled as Hom(Ω, N) modulo the restrictions of Hom(P0, N)
along Ω ⊆ P0. The stable (costable) Hom space is Hom(M, N) modulo maps
factoring through the projective cover of N (injective envelope of M).
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from quiverar.homological.presentation import (
    Presentation,
    injective_envelope,
    minimal_presentation,
    projective_cover,
)
from quiverar.linalg.fields import Scalar
from quiverar.linalg.matrix import Matrix, QuotientSpace
from quiverar.modules.representation import HomSpace, Representation, RepMorphism

logger = logging.getLogger(__name__)


@dataclass
class HomQuotient:
    """A Hom space modulo the span of some of its elements."""

    hom: HomSpace
    quotient: QuotientSpace

    @property
    def dimension(self) -> int:
        return self.quotient.dimension

    @property
    def representatives(self) -> List[RepMorphism]:
        """Morphisms whose classes form the quotient basis."""
        lift = self.quotient.lift
        return [self.hom.element(lift.column(j)) for j in range(lift.cols)]

    def classes(self, morphism: RepMorphism) -> List[Scalar]:
        coords = Matrix.column_vector(morphism.field, self.hom.coordinates(morphism))
        return list(self.quotient.classes(coords).column(0))

    def is_trivial(self, morphism: RepMorphism) -> bool:
        return all(c == 0 for c in self.classes(morphism))


def _quotient(hom: HomSpace, trivial: List[RepMorphism]) -> HomQuotient:
    f = hom.source.field
    columns = [hom.coordinates(t) for t in trivial]
    span = Matrix.from_columns(f, columns, hom.dimension)
    return HomQuotient(hom, QuotientSpace(f, hom.dimension, span))


@dataclass
class ExtSpace:
    """Ext¹(M, N) as cocycles Ω -> N modulo restrictions from P0."""

    module: Representation
    target: Representation
    presentation: Presentation
    cocycles: HomQuotient

    @property
    def dimension(self) -> int:
        return self.cocycles.dimension

    @property
    def basis(self) -> List[RepMorphism]:
        return self.cocycles.representatives

    def classes(self, cocycle: RepMorphism) -> List[Scalar]:
        return self.cocycles.classes(cocycle)

    def is_zero(self, cocycle: RepMorphism) -> bool:
        return self.cocycles.is_trivial(cocycle)

    def cocycle(self, coeffs: List[Scalar]) -> RepMorphism:
        """The cocycle of the class with quotient coordinates ``coeffs``."""
        lift = self.cocycles.quotient.lift
        f = self.module.field
        vector = lift @ Matrix.column_vector(f, coeffs)
        return self.cocycles.hom.element(vector.column(0))


def ext1(
    module: Representation,
    target: Representation,
    presentation: Optional[Presentation] = None,
) -> ExtSpace:
    """Ext¹(M, N).

    Args:
        module: M.
        target: N.
        presentation: A presentation of M; the minimal one by default.

    Returns:
        The Ext space with its cocycle model.
    """
    presentation = presentation or minimal_presentation(module)
    hom = HomSpace(presentation.omega, target)
    restrictions = [
        phi.compose(presentation.omega_inclusion)
        for phi in HomSpace(presentation.p0.module, target).basis
    ]
    space = ExtSpace(module, target, presentation, _quotient(hom, restrictions))
    logger.debug(f"dim Ext1({module.name}, {target.name}) = {space.dimension}")
    return space


def stable_hom(module: Representation, target: Representation) -> HomQuotient:
    """Hom(M, N) modulo maps factoring through a projective.

    Every such map factors through the projective cover d0: P0 -> N.
    """
    _, p0, d0 = projective_cover(target)
    trivial = [d0.compose(psi) for psi in HomSpace(module, p0.module).basis]
    return _quotient(HomSpace(module, target), trivial)


def costable_hom(module: Representation, target: Representation) -> HomQuotient:
    """Hom(M, N) modulo maps factoring through an injective.

    Every such map factors through the injective envelope d0: M -> I0.
    """
    _, i0, d0 = injective_envelope(module)
    trivial = [psi.compose(d0) for psi in HomSpace(i0.module, target).basis]
    return _quotient(HomSpace(module, target), trivial)
