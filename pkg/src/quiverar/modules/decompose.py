"""
Endomorphism algebras, isomorphism tests and Krull-Schmidt decomposition.

Decomposition splits a module along Fitting idempotents of its endomorphism
algebra until every summand has a local endomorphism algebra, or until no
further idempotent is found and the summand is flagged as only probably
indecomposable.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from quiverar.algebra.finite import FiniteAlgebra, Locality, LocalityCertificate
from quiverar.errors import CertificateError
from quiverar.linalg.fields import Scalar
from quiverar.linalg.matrix import ColumnSpace
from quiverar.models import Certificate
from quiverar.modules.constructions import image, kernel
from quiverar.modules.representation import (
    HomSpace,
    Representation,
    RepMorphism,
    direct_sum,
)

logger = logging.getLogger(__name__)


def endomorphism_algebra(module: Representation) -> Tuple[FiniteAlgebra, HomSpace]:
    """End(M) as a finite-dimensional algebra on the basis of ``HomSpace(M, M)``.

    The product of basis elements ``i`` and ``j`` is ``b_i ∘ b_j``.
    """
    space = HomSpace(module, module)
    basis = space.basis

    def product(i: int, j: int) -> List[Scalar]:
        return space.coordinates(basis[i].compose(basis[j]))

    unit = space.coordinates(RepMorphism.identity(module)) if space.dimension else None
    return FiniteAlgebra.from_products(module.field, space.dimension, product, unit), space


def end_locality(
    module: Representation, rng: random.Random, attempts: int = 64, enumeration_cap: int = 4096
) -> Tuple[LocalityCertificate, FiniteAlgebra, HomSpace]:
    end, space = endomorphism_algebra(module)
    return end.locality(rng, attempts, enumeration_cap), end, space


def _combinations(
    space: HomSpace, rng: random.Random, attempts: int, enumeration_cap: int
) -> Iterator[RepMorphism]:
    f = space.source.field
    n = space.dimension
    yield from space.basis
    if n > 1:
        yield space.element([f.one()] * n)
    p = f.characteristic
    if p and p ** n <= enumeration_cap:
        for coeffs in itertools.product(range(p), repeat=n):
            yield space.element(list(coeffs))
        return
    for _ in range(attempts):
        yield space.element([f.random_element(rng) for _ in range(n)])


def is_isomorphic(
    first: Representation,
    second: Representation,
    seed: int = 0,
    attempts: int = 64,
    enumeration_cap: int = 4096,
) -> Optional[RepMorphism]:
    """Search for an isomorphism ``first -> second``.

    Args:
        first: The source.
        second: The target.
        seed: Seed for random combinations.
        attempts: Number of random combinations tried.
        enumeration_cap: Over F_p, Hom spaces with at most this many elements are enumerated.

    Returns:
        An isomorphism, or None when none was found.
    """
    if first.algebra is not second.algebra or first.dims != second.dims:
        return None
    if first.is_zero():
        return RepMorphism.identity(first)
    space = HomSpace(first, second)
    if space.dimension == 0:
        return None
    if space.dimension != HomSpace(first, first).dimension:
        return None
    rng = random.Random(seed)
    for phi in _combinations(space, rng, attempts, enumeration_cap):
        if phi.is_isomorphism():
            return phi
    return None


@dataclass
class Summand:
    """An indecomposable summand of a decomposition."""

    module: Representation
    inclusion: RepMorphism
    projection: RepMorphism
    certificate: Certificate


def _coordinate_projection(inclusion: RepMorphism, endo: RepMorphism) -> RepMorphism:
    """The map M -> S reading off ``endo(m)`` in the basis of the subobject S."""
    maps = {}
    for v, m in inclusion.maps.items():
        maps[v] = ColumnSpace(m).coordinate_matrix() @ endo.maps[v]
    return RepMorphism(inclusion.target, inclusion.source, maps, check=False)


def split_by_idempotent(
    module: Representation, e: RepMorphism
) -> List[Tuple[Representation, RepMorphism, RepMorphism]]:
    """M = im(e) ⊕ ker(e), each with its inclusion and projection."""
    one = RepMorphism.identity(module)
    im, im_inclusion = image(e)
    ker, ker_inclusion = kernel(e)
    return [
        (im, im_inclusion, _coordinate_projection(im_inclusion, e)),
        (ker, ker_inclusion, _coordinate_projection(ker_inclusion, one - e)),
    ]


def decompose(
    module: Representation,
    seed: int = 0,
    attempts: int = 64,
    enumeration_cap: int = 4096,
) -> List[Summand]:
    """Decompose a module into indecomposable summands.

    Args:
        module: A finite-dimensional module.
        seed: Seed for the idempotent search.
        attempts: Random candidates per endomorphism algebra.
        enumeration_cap: Enumeration limit for small prime fields.

    Returns:
        Summands whose sum is isomorphic to ``module``; the zero module has none.
    """
    rng = random.Random(seed)
    summands: List[Summand] = []
    pending = [(module, RepMorphism.identity(module), RepMorphism.identity(module))]
    while pending:
        piece, inclusion, projection = pending.pop(0)
        if piece.is_zero():
            continue
        certificate, end, space = end_locality(piece, rng, attempts, enumeration_cap)
        if certificate.status == Locality.LOCAL:
            summands.append(Summand(piece, inclusion, projection, Certificate.CERTIFIED))
            continue
        if certificate.idempotent is not None:
            e = space.element(list(certificate.idempotent))
            parts = split_by_idempotent(piece, e)
            logger.debug(
                f"Split {piece!r} into {parts[0][0].dims} and {parts[1][0].dims}"
            )
            pending = [
                (sub, inclusion.compose(inc), proj.compose(projection))
                for sub, inc, proj in parts
            ] + pending
            continue
        logger.warning(
            f"Summand {piece.dims} is only probably indecomposable: {certificate.reason}"
        )
        summands.append(Summand(piece, inclusion, projection, Certificate.PROBABLE))
    base = module.name or "M"
    if len(summands) > 1:
        for k, s in enumerate(summands):
            s.module.name = f"{base}[{k}]"
    logger.info(f"Decomposed {base} into {len(summands)} summands")
    return summands


def reassemble(summands: Sequence[Summand], module: Representation) -> RepMorphism:
    """The isomorphism ⊕ summands -> M assembled from the inclusions."""
    total = direct_sum([s.module for s in summands], module.algebra)
    result = RepMorphism.zero(total.module, module)
    for s, p in zip(summands, total.projections):
        result = result + s.inclusion.compose(p)
    return result


def certify_indecomposable(
    module: Representation, seed: int = 0, attempts: int = 64, enumeration_cap: int = 4096
) -> Summand:
    """Require a certified local endomorphism algebra.

    Raises:
        CertificateError: If the module is zero, decomposable, or only probably indecomposable.
    """
    if module.is_zero():
        raise CertificateError(f"{module.name or 'module'} is zero")
    summands = decompose(module, seed, attempts, enumeration_cap)
    if len(summands) != 1:
        raise CertificateError(
            f"{module.name or 'module'} is decomposable into {len(summands)} summands"
        )
    if summands[0].certificate != Certificate.CERTIFIED:
        raise CertificateError(f"{module.name or 'module'} is only probably indecomposable")
    summands[0].module.name = module.name
    return summands[0]
