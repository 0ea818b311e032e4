"""
Auslander-Reiten translates.

τM is the kernel of ν(d1) for a projective presentation d1 of M, and τ⁻N the
cokernel of ν⁻(d¹) for an injective copresentation d¹ of N.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Tuple

from quiverar.ar.nakayama import from_morphism, nu, nu_minus, to_morphism
from quiverar.homological.presentation import (
    Copresentation,
    Presentation,
    minimal_copresentation,
    minimal_presentation,
)
from quiverar.models import Direction
from quiverar.modules.constructions import cokernel, kernel, socle_labels, top_labels
from quiverar.modules.decompose import Summand, decompose
from quiverar.modules.representation import Representation, RepMorphism

logger = logging.getLogger(__name__)


@dataclass
class Translate:
    """A translate together with the (co)presentation it was computed from.

    For τ, ``morphism`` is the inclusion τM -> ⊕I_{p1}; for τ⁻ it is the
    projection ⊕P_{i1} -> τ⁻N.
    """

    module: Representation
    result: Representation
    direction: Direction
    labels0: List[str]
    labels1: List[str]
    morphism: RepMorphism
    minimal: bool
    note: Optional[str] = None

    def matches_labels(self) -> bool:
        """Whether the induced (co)presentation of the result is minimal.

        For τ the socle of τM must match the labels of P1; for τ⁻ the top of
        τ⁻N must match the labels of I1.
        """
        if self.direction == Direction.TAU:
            return Counter(socle_labels(self.result)) == Counter(self.labels1)
        return Counter(top_labels(self.result)) == Counter(self.labels1)


def _name(prefix: str, module: Representation) -> str:
    return f"{prefix}({module.name or 'M'})"


def tau(module: Representation, presentation: Optional[Presentation] = None) -> Translate:
    """τ_δM = Ker(ν d1) for the presentation δ, the minimal one by default."""
    presentation = presentation or minimal_presentation(module)
    d1 = from_morphism(presentation.d1, presentation.p1_labels, presentation.p0_labels)
    result, inclusion = kernel(nu(d1), name=_name("τ", module))
    note = None
    if result.is_zero() and presentation.minimal:
        note = f"{module.name or 'M'} is projective, so τ is zero"
    logger.debug(f"{result.name} has dimension vector {result.dims}")
    return Translate(
        module,
        result,
        Direction.TAU,
        list(presentation.p0_labels),
        list(presentation.p1_labels),
        inclusion,
        presentation.minimal,
        note,
    )


def tau_minus(
    module: Representation, copresentation: Optional[Copresentation] = None
) -> Translate:
    """τ⁻N = Coker(ν⁻ d¹) for the copresentation d¹, the minimal one by default."""
    copresentation = copresentation or minimal_copresentation(module)
    d1 = nu_minus(copresentation.d1, copresentation.i0_labels, copresentation.i1_labels)
    quotient = cokernel(to_morphism(d1), name=_name("τ⁻", module))
    result = quotient.module
    note = None
    if result.is_zero() and copresentation.minimal:
        note = f"{module.name or 'N'} is injective, so τ⁻ is zero"
    logger.debug(f"{result.name} has dimension vector {result.dims}")
    return Translate(
        module,
        result,
        Direction.TAU_MINUS,
        list(copresentation.i0_labels),
        list(copresentation.i1_labels),
        quotient.projection,
        copresentation.minimal,
        note,
    )


def translate(module: Representation, direction: Direction) -> Translate:
    return tau(module) if direction == Direction.TAU else tau_minus(module)


def translate_summands(
    module: Representation,
    direction: Direction = Direction.TAU,
    seed: int = 0,
    attempts: int = 64,
    enumeration_cap: int = 4096,
) -> List[Tuple[Summand, Translate]]:
    """Decompose ``module`` and translate each summand, keeping its certificate.

    Args:
        module: A finite-dimensional module.
        direction: τ or τ⁻.
        seed: Seed for the decomposition.
        attempts: Random candidates per endomorphism algebra.
        enumeration_cap: Enumeration limit for small prime fields.

    Returns:
        One (summand, translate) pair per summand.
    """
    pairs = []
    for summand in decompose(module, seed, attempts, enumeration_cap):
        pairs.append((summand, translate(summand.module, direction)))
    logger.info(f"Translated {len(pairs)} summands of {module.name or 'M'} by {direction.value}")
    return pairs
