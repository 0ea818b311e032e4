"""
The Nakayama functor on labeled sums of projectives.

A morphism ⊕P_{x_i} -> ⊕P_{y_j} is a matrix of algebra elements, entry
``U[j][i]`` in e_{x_i}Λe_{y_j} acting by right multiplication. The functor
sends P_x to I_x and the entry u to the transpose of left multiplication by u.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence

from quiverar.algebra.bound import AlgebraElement, BoundQuiverAlgebra
from quiverar.errors import InputError
from quiverar.modules.constructions import (
    injective_sum,
    make_injective,
    make_projective,
    projective_sum,
)
from quiverar.modules.representation import (
    DirectSum,
    Representation,
    RepMorphism,
    direct_sum_morphism,
)

logger = logging.getLogger(__name__)


class NakayamaError(InputError):
    """Exception raised for maps that are not between labeled canonical sums."""
    pass


@dataclass
class ProjMap:
    """A morphism between labeled sums of canonical projectives."""

    algebra: BoundQuiverAlgebra
    source_labels: List[str]
    target_labels: List[str]
    entries: List[List[AlgebraElement]]

    def __post_init__(self) -> None:
        if len(self.entries) != len(self.target_labels):
            raise NakayamaError(
                f"{len(self.entries)} rows for {len(self.target_labels)} target summands"
            )
        for j, row in enumerate(self.entries):
            if len(row) != len(self.source_labels):
                raise NakayamaError(
                    f"row {j} has {len(row)} entries for {len(self.source_labels)} source summands"
                )
            y = self.target_labels[j]
            for i, u in enumerate(row):
                x = self.source_labels[i]
                for p in u.terms:
                    if p.source != y or p.target != x:
                        raise NakayamaError(f"entry ({j}, {i}) = {u} does not lie in e_{x}Λe_{y}")

    def entry(self, j: int, i: int) -> AlgebraElement:
        return self.entries[j][i]

    def is_zero(self) -> bool:
        return all(u.is_zero() for row in self.entries for u in row)

    def compose(self, other: "ProjMap") -> "ProjMap":
        """``self ∘ other``; entry ``(k, i)`` is the sum of ``other[j][i]·self[k][j]``."""
        if list(other.target_labels) != list(self.source_labels):
            raise NakayamaError("composing projective maps with mismatched labels")
        zero = AlgebraElement(self.algebra, {})
        entries = []
        for k in range(len(self.target_labels)):
            row = []
            for i in range(len(other.source_labels)):
                total = zero
                for j in range(len(self.source_labels)):
                    total = total + other.entries[j][i] * self.entries[k][j]
                row.append(total)
            entries.append(row)
        return ProjMap(self.algebra, list(other.source_labels), list(self.target_labels), entries)

    def __add__(self, other: "ProjMap") -> "ProjMap":
        if (other.source_labels, other.target_labels) != (self.source_labels, self.target_labels):
            raise NakayamaError("adding projective maps with different labels")
        entries = [
            [u + v for u, v in zip(row, other_row)]
            for row, other_row in zip(self.entries, other.entries)
        ]
        return ProjMap(self.algebra, self.source_labels, self.target_labels, entries)

    @classmethod
    def identity(cls, algebra: BoundQuiverAlgebra, labels: Sequence[str]) -> "ProjMap":
        zero = AlgebraElement(algebra, {})
        entries = [
            [algebra.idempotent(x) if i == j else zero for i, x in enumerate(labels)]
            for j in range(len(labels))
        ]
        return cls(algebra, list(labels), list(labels), entries)

    @classmethod
    def zero(
        cls, algebra: BoundQuiverAlgebra, source: Sequence[str], target: Sequence[str]
    ) -> "ProjMap":
        zero = AlgebraElement(algebra, {})
        entries = [[zero for _ in source] for _ in target]
        return cls(algebra, list(source), list(target), entries)


def _assemble(
    source: DirectSum,
    target: DirectSum,
    f: ProjMap,
    block: Callable[[AlgebraElement, str, str], RepMorphism],
) -> RepMorphism:
    blocks = [
        [block(f.entries[j][i], x, y) for i, x in enumerate(f.source_labels)]
        for j, y in enumerate(f.target_labels)
    ]
    return direct_sum_morphism(source, target, blocks)


def to_morphism(f: ProjMap) -> RepMorphism:
    """The morphism of representations ⊕P_{x_i} -> ⊕P_{y_j} encoded by ``f``."""
    algebra = f.algebra
    vertices = algebra.quiver.vertices

    def block(u: AlgebraElement, x: str, y: str) -> RepMorphism:
        maps = {z: algebra.right_multiplication(u, y, x, z) for z in vertices}
        return RepMorphism(make_projective(algebra, x), make_projective(algebra, y), maps,
                           check=False)

    source = projective_sum(algebra, f.source_labels)
    target = projective_sum(algebra, f.target_labels)
    return _assemble(source, target, f, block)


def _labeled_sum(module: Representation, canonical: DirectSum, what: str) -> None:
    if module != canonical.module:
        raise NakayamaError(f"{what} is not the labeled sum {canonical.module.name}")


def from_morphism(
    morphism: RepMorphism, source_labels: Sequence[str], target_labels: Sequence[str]
) -> ProjMap:
    """Read a morphism between labeled projective sums as a ProjMap.

    Entry ``(j, i)`` is the image of e_{x_i} in the summand P_{y_j}.

    Raises:
        NakayamaError: If source or target is not the given labeled sum.
    """
    algebra = morphism.algebra
    source = projective_sum(algebra, source_labels)
    target = projective_sum(algebra, target_labels)
    _labeled_sum(morphism.source, source, "source")
    _labeled_sum(morphism.target, target, "target")
    entries = []
    for j, y in enumerate(target_labels):
        row = []
        for i, x in enumerate(source_labels):
            block = target.projections[j].compose(morphism).compose(source.injections[i])
            row.append(algebra.from_coordinates(y, x, block.maps[x].column(0)))
        entries.append(row)
    return ProjMap(algebra, list(source_labels), list(target_labels), entries)


def nu(f: ProjMap) -> RepMorphism:
    """ν(f): ⊕I_{x_i} -> ⊕I_{y_j}.

    At vertex z the block for u is the transpose of ``v -> u·v`` from
    e_yΛe_z to e_xΛe_z.
    """
    algebra = f.algebra
    vertices = algebra.quiver.vertices

    def block(u: AlgebraElement, x: str, y: str) -> RepMorphism:
        maps = {z: algebra.left_multiplication(u, z, y, x).transpose() for z in vertices}
        return RepMorphism(make_injective(algebra, x), make_injective(algebra, y), maps,
                           check=False)

    source = injective_sum(algebra, f.source_labels)
    target = injective_sum(algebra, f.target_labels)
    result = _assemble(source, target, f, block)
    logger.debug(f"ν of a map {f.source_labels} -> {f.target_labels}")
    return result


def nu_minus(
    morphism: RepMorphism, source_labels: Sequence[str], target_labels: Sequence[str]
) -> ProjMap:
    """The quasi-inverse of ν on a morphism ⊕I_{x_i} -> ⊕I_{y_j}.

    Entry ``(j, i)`` is read off the block at vertex y_j: its row for the
    functional dual to e_{y_j} holds the coordinates of u.

    Raises:
        NakayamaError: If source or target is not the given labeled sum.
    """
    algebra = morphism.algebra
    source = injective_sum(algebra, source_labels)
    target = injective_sum(algebra, target_labels)
    _labeled_sum(morphism.source, source, "source")
    _labeled_sum(morphism.target, target, "target")
    entries = []
    for j, y in enumerate(target_labels):
        row = []
        for i, x in enumerate(source_labels):
            block = target.projections[j].compose(morphism).compose(source.injections[i])
            row.append(algebra.from_coordinates(y, x, block.maps[y].row(0)))
        entries.append(row)
    return ProjMap(algebra, list(source_labels), list(target_labels), entries)
