"""
Standard modules and subquotients.

This module builds the simple, projective and injective representations at
a vertex, sub- and quotient representations, kernels and cokernels, radical,
top and socle, and the maps out of sums of projectives and into sums of
injectives.
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from quiverar.algebra.bound import BoundQuiverAlgebra
from quiverar.linalg.fields import Scalar
from quiverar.linalg.matrix import ColumnSpace, Matrix, QuotientSpace
from quiverar.modules.representation import (
    DirectSum,
    HomSpace,
    Representation,
    RepresentationError,
    RepMorphism,
    direct_sum,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def make_simple(algebra: BoundQuiverAlgebra, x: str) -> Representation:
    algebra.quiver.check_vertex(x)
    return Representation(algebra, {x: 1}, name=f"S{x}", check=False)


@lru_cache(maxsize=None)
def make_projective(algebra: BoundQuiverAlgebra, x: str) -> Representation:
    """P_x = Λe_x: basis(x, y) at y, arrows acting by left multiplication."""
    q = algebra.quiver
    dims = {y: len(algebra.basis(x, y)) for y in q.vertices}
    action = {
        a.name: algebra.left_multiplication(algebra.arrow(a.name), x, a.source, a.target)
        for a in q.arrows
    }
    return Representation(algebra, dims, action, name=f"P{x}")


@lru_cache(maxsize=None)
def make_injective(algebra: BoundQuiverAlgebra, x: str) -> Representation:
    """I_x: the dual of basis(y, x) at y, arrows acting by transposed right multiplication."""
    q = algebra.quiver
    dims = {y: len(algebra.basis(y, x)) for y in q.vertices}
    action = {
        a.name: algebra.right_multiplication(
            algebra.arrow(a.name), a.source, a.target, x
        ).transpose()
        for a in q.arrows
    }
    return Representation(algebra, dims, action, name=f"I{x}")


def projective_sum(algebra: BoundQuiverAlgebra, labels: Sequence[str]) -> DirectSum:
    modules = [make_projective(algebra, x) for x in labels]
    return direct_sum(modules, algebra, name=" + ".join(m.name for m in modules) or "0")


def injective_sum(algebra: BoundQuiverAlgebra, labels: Sequence[str]) -> DirectSum:
    modules = [make_injective(algebra, x) for x in labels]
    return direct_sum(modules, algebra, name=" + ".join(m.name for m in modules) or "0")


def subrepresentation(
    module: Representation, bases: Mapping[str, Matrix], name: str = ""
) -> Tuple[Representation, RepMorphism]:
    """The subrepresentation spanned vertexwise by the columns of ``bases``.

    Returns:
        The subrepresentation, on the independent columns of each basis, and
        its inclusion.

    Raises:
        RepresentationError: If the subspaces are not invariant under the arrows.
    """
    f = module.field
    spans: Dict[str, Matrix] = {}
    for v in module.quiver.vertices:
        b = bases.get(v)
        if b is None:
            b = Matrix.zeros(f, module.dims[v], 0)
        spans[v] = b.column_space_basis()
    coordinates = {v: ColumnSpace(b) for v, b in spans.items()}
    action = {}
    for a in module.quiver.arrows:
        image = module.action[a.name] @ spans[a.source]
        coords = coordinates[a.target].coordinates(image)
        if coords is None:
            raise RepresentationError(f"subspace is not invariant under arrow {a.name}")
        action[a.name] = coords
    sub = Representation(
        module.algebra, {v: b.cols for v, b in spans.items()}, action, name=name, check=False
    )
    return sub, RepMorphism(sub, module, spans, check=False)


@dataclass
class Quotient:
    """A quotient representation with its projection and the lifts of its basis."""

    module: Representation
    projection: RepMorphism
    lifts: Dict[str, Matrix]


def quotient_representation(
    module: Representation, bases: Mapping[str, Matrix], name: str = ""
) -> Quotient:
    """M modulo the subrepresentation spanned vertexwise by ``bases``.

    The quotient basis at each vertex is the class of the standard vectors not
    hit by echelon pivots of the subspace.
    """
    f = module.field
    spaces: Dict[str, QuotientSpace] = {}
    for v in module.quiver.vertices:
        b = bases.get(v)
        if b is None:
            b = Matrix.zeros(f, module.dims[v], 0)
        spaces[v] = QuotientSpace(f, module.dims[v], b)
    action = {}
    for a in module.quiver.arrows:
        src, tgt = spaces[a.source], spaces[a.target]
        if not tgt.contains(module.action[a.name] @ src.sub_basis):
            raise RepresentationError(f"subspace is not invariant under arrow {a.name}")
        action[a.name] = tgt.projection @ module.action[a.name] @ src.lift
    quotient = Representation(
        module.algebra, {v: s.dimension for v, s in spaces.items()}, action, name=name,
        check=False,
    )
    projection = RepMorphism(
        module, quotient, {v: s.projection for v, s in spaces.items()}, check=False
    )
    return Quotient(quotient, projection, {v: s.lift for v, s in spaces.items()})


@dataclass
class ExactParts:
    """Kernel, image and cokernel of a morphism."""

    kernel: Representation
    kernel_inclusion: RepMorphism
    image: Representation
    image_inclusion: RepMorphism
    cokernel: Representation
    cokernel_projection: RepMorphism


def kernel(f: RepMorphism, name: str = "") -> Tuple[Representation, RepMorphism]:
    return subrepresentation(f.source, {v: m.kernel_basis() for v, m in f.maps.items()}, name)


def image(f: RepMorphism, name: str = "") -> Tuple[Representation, RepMorphism]:
    return subrepresentation(f.target, {v: m.column_space_basis() for v, m in f.maps.items()}, name)


def cokernel(f: RepMorphism, name: str = "") -> Quotient:
    return quotient_representation(f.target, dict(f.maps), name)


def exact_parts(f: RepMorphism) -> ExactParts:
    ker, ker_inclusion = kernel(f)
    im, im_inclusion = image(f)
    coker = cokernel(f)
    return ExactParts(ker, ker_inclusion, im, im_inclusion, coker.module, coker.projection)


def radical(module: Representation) -> Tuple[Representation, RepMorphism]:
    """rad M: at each vertex, the sum of the images of the incoming arrows."""
    f = module.field
    bases = {
        v: Matrix.hstack(
            f, module.dims[v], [module.action[a.name] for a in module.quiver.in_arrows(v)]
        )
        for v in module.quiver.vertices
    }
    return subrepresentation(module, bases, name=f"rad {module.name}".strip())


def top(module: Representation) -> Quotient:
    rad, inclusion = radical(module)
    return quotient_representation(module, dict(inclusion.maps), name=f"top {module.name}".strip())


def socle(module: Representation) -> Tuple[Representation, RepMorphism]:
    """soc M: at each vertex, the common kernel of the outgoing arrows."""
    f = module.field
    bases = {}
    for v in module.quiver.vertices:
        stacked = Matrix.vstack(
            f, module.dims[v], [module.action[a.name] for a in module.quiver.out_arrows(v)]
        )
        bases[v] = stacked.kernel_basis()
    return subrepresentation(module, bases, name=f"soc {module.name}".strip())


def top_labels(module: Representation) -> List[str]:
    quotient = top(module).module
    return [v for v in module.quiver.vertices for _ in range(quotient.dims[v])]


def socle_labels(module: Representation) -> List[str]:
    soc, _ = socle(module)
    return [v for v in module.quiver.vertices for _ in range(soc.dims[v])]


def _as_column(module: Representation, x: str, vector: object) -> Matrix:
    if isinstance(vector, Matrix):
        column = vector
    else:
        column = Matrix.column_vector(module.field, list(vector))
    if column.shape != (module.dims[x], 1):
        raise RepresentationError(
            f"generator at {x} has shape {column.shape}, expected ({module.dims[x]}, 1)"
        )
    return column


def morphism_from_generators(
    labels: Sequence[str], module: Representation, vectors: Sequence[object]
) -> Tuple[DirectSum, RepMorphism]:
    """The map ⊕P_{x_i} -> M sending e_{x_i} to ``vectors[i]`` in M(x_i).

    The image of the basis path p of P_{x_i}(y) is M(p) applied to ``vectors[i]``.
    """
    algebra = module.algebra
    source = projective_sum(algebra, labels)
    columns = [_as_column(module, x, m) for x, m in zip(labels, vectors)]
    maps = {}
    for y in module.quiver.vertices:
        blocks = []
        for x, m in zip(labels, columns):
            images = [(module.evaluate(p) @ m).column(0) for p in algebra.basis(x, y)]
            blocks.append(Matrix.from_columns(module.field, images, module.dims[y]))
        maps[y] = Matrix.hstack(module.field, module.dims[y], blocks)
    return source, RepMorphism(source.module, module, maps, check=False)


def morphism_to_cogenerators(
    module: Representation, labels: Sequence[str], functionals: Sequence[object]
) -> Tuple[DirectSum, RepMorphism]:
    """The map M -> ⊕I_{x_i} induced by the functionals ``functionals[i]`` on M(x_i).

    An element m of M(y) goes to the functional ``p -> φ_i(M(p)m)`` on the
    basis paths p from y to x_i.
    """
    algebra = module.algebra
    f = module.field
    target = injective_sum(algebra, labels)
    rows = []
    for x, phi in zip(labels, functionals):
        row = phi if isinstance(phi, Matrix) else Matrix.from_rows(f, [list(phi)], module.dims[x])
        if row.shape != (1, module.dims[x]):
            raise RepresentationError(
                f"functional at {x} has shape {row.shape}, expected (1, {module.dims[x]})"
            )
        rows.append(row)
    maps = {}
    for y in module.quiver.vertices:
        blocks = []
        for x, phi in zip(labels, rows):
            values = [(phi @ module.evaluate(p)).row(0) for p in algebra.basis(y, x)]
            blocks.append(Matrix.from_rows(f, values, module.dims[y]))
        maps[y] = Matrix.vstack(f, module.dims[y], blocks)
    return target, RepMorphism(module, target.module, maps, check=False)


def random_module(
    algebra: BoundQuiverAlgebra, rng: random.Random, max_generators: int = 2, name: str = "R"
) -> Representation:
    """A random finite-dimensional module, the cokernel of a random map of projective sums."""
    vertices = algebra.quiver.vertices
    generators = [rng.choice(vertices) for _ in range(rng.randint(1, max_generators))]
    relations = [rng.choice(vertices) for _ in range(rng.randint(0, max_generators))]
    p0 = projective_sum(algebra, generators)
    p1 = projective_sum(algebra, relations)
    space = HomSpace(p1.module, p0.module)
    coeffs: List[Scalar] = [algebra.field.random_element(rng) for _ in range(space.dimension)]
    module = cokernel(space.element(coeffs), name=name).module
    logger.debug(f"Random module {name} with dimension vector {module.dims}")
    return module
