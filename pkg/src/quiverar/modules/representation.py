"""
Representations of bound quivers and their morphisms.

A representation assigns a vector space to each vertex and a matrix to each
arrow such that every relation evaluates to zero. Morphisms are families of
vertex matrices commuting with all arrow actions.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence

from quiverar.algebra.bound import BoundQuiverAlgebra
from quiverar.algebra.quiver import Path
from quiverar.errors import InputError, ShapeError
from quiverar.linalg.fields import Field, Scalar
from quiverar.linalg.matrix import ColumnSpace, Matrix
from quiverar.models import Certificate, ModuleSummary

logger = logging.getLogger(__name__)


class RepresentationError(InputError):
    """Exception raised for representations or morphisms violating their defining identities."""
    pass


class Representation:
    """A finite-dimensional representation of a bound quiver.

    ``action[a]`` is a ``dims[target] x dims[source]`` matrix. Vertices and
    arrows missing from the input default to zero.
    """

    def __init__(
        self,
        algebra: BoundQuiverAlgebra,
        dims: Mapping[str, int],
        action: Optional[Mapping[str, Matrix]] = None,
        name: str = "",
        check: bool = True,
    ):
        """Initialize the representation.

        Args:
            algebra: The owning algebra.
            dims: Dimension per vertex.
            action: Matrix per arrow.
            name: Display name.
            check: Whether to verify matrix shapes and relations.
        """
        self.algebra = algebra
        self.name = name
        q = algebra.quiver
        for v in dims:
            q.check_vertex(v)
        self.dims: Dict[str, int] = {v: int(dims.get(v, 0)) for v in q.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise RepresentationError(f"negative dimension in {dict(dims)}")
        action = dict(action or {})
        for a in action:
            q.arrow(a)
        self.action: Dict[str, Matrix] = {}
        for a in q.arrows:
            m = action.get(a.name)
            shape = (self.dims[a.target], self.dims[a.source])
            if m is None:
                m = Matrix.zeros(algebra.field, *shape)
            elif m.shape != shape:
                raise RepresentationError(
                    f"matrix for arrow {a.name} has shape {m.shape}, expected {shape}"
                )
            self.action[a.name] = m
        self._evaluations: Dict[Path, Matrix] = {}
        if check:
            self.check_relations()

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def quiver(self):
        return self.algebra.quiver

    def __repr__(self) -> str:
        label = self.name or "Representation"
        return f"{label}{tuple(self.dims[v] for v in self.quiver.vertices)}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.dims == other.dims
            and self.action == other.action
        )

    def __hash__(self) -> int:
        return hash(tuple(self.dims.items()))

    def evaluate(self, path: Path) -> Matrix:
        """M(ρ) for a path ρ, the product of its arrow matrices."""
        cached = self._evaluations.get(path)
        if cached is not None:
            return cached
        if path.is_trivial:
            result = Matrix.identity(self.field, self.dims[path.source])
        else:
            result = self.action[path.arrows[0]]
            for a in path.arrows[1:]:
                result = result @ self.action[a]
        self._evaluations[path] = result
        return result

    def check_relations(self) -> None:
        for r in self.algebra.relations:
            p0 = next(iter(r))
            total = Matrix.zeros(self.field, self.dims[p0.target], self.dims[p0.source])
            for p, c in r.items():
                total = total + self.evaluate(p).scale(c)
            if not total.is_zero():
                raise RepresentationError(
                    f"representation {self.name or ''} violates a relation at {p0.source}"
                    f" -> {p0.target}"
                )

    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def support(self) -> List[str]:
        return [v for v in self.quiver.vertices if self.dims[v]]

    def is_zero(self) -> bool:
        return self.total_dimension() == 0

    def summary(self, certificate: Optional[Certificate] = None) -> ModuleSummary:
        return ModuleSummary(
            name=self.name or "M",
            dims={v: self.dims[v] for v in self.quiver.vertices},
            certificate=certificate,
        )

    @classmethod
    def zero(cls, algebra: BoundQuiverAlgebra, name: str = "0") -> "Representation":
        return cls(algebra, {}, name=name, check=False)


class RepMorphism:
    """A morphism of representations, one matrix ``maps[x]: M(x) -> N(x)`` per vertex."""

    def __init__(
        self,
        source: Representation,
        target: Representation,
        maps: Optional[Mapping[str, Matrix]] = None,
        check: bool = True,
    ):
        """Initialize the morphism.

        Args:
            source: The domain.
            target: The codomain.
            maps: Matrix per vertex; missing vertices are zero.
            check: Whether to verify the commuting squares.
        """
        if source.algebra is not target.algebra:
            raise RepresentationError("morphism between representations of different algebras")
        self.source = source
        self.target = target
        maps = dict(maps or {})
        self.maps: Dict[str, Matrix] = {}
        for v in source.quiver.vertices:
            shape = (target.dims[v], source.dims[v])
            m = maps.get(v)
            if m is None:
                m = Matrix.zeros(source.field, *shape)
            elif m.shape != shape:
                raise RepresentationError(
                    f"morphism component at {v} has shape {m.shape}, expected {shape}"
                )
            self.maps[v] = m
        if check:
            self.check()

    @property
    def field(self) -> Field:
        return self.source.field

    @property
    def algebra(self) -> BoundQuiverAlgebra:
        return self.source.algebra

    def __repr__(self) -> str:
        return f"RepMorphism({self.source!r} -> {self.target!r})"

    def check(self) -> None:
        for a in self.source.quiver.arrows:
            left = self.target.action[a.name] @ self.maps[a.source]
            right = self.maps[a.target] @ self.source.action[a.name]
            if left != right:
                raise RepresentationError(f"morphism does not commute with arrow {a.name}")

    def __getitem__(self, vertex: str) -> Matrix:
        return self.maps[vertex]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.maps == other.maps
        )

    def __hash__(self) -> int:
        return hash(tuple(self.maps.items()))

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """``self ∘ other``: first ``other``, then ``self``."""
        if other.target.dims != self.source.dims:
            raise ShapeError("composing morphisms with mismatched middle objects")
        maps = {v: self.maps[v] @ other.maps[v] for v in self.maps}
        return RepMorphism(other.source, self.target, maps, check=False)

    def _combine(self, other: "RepMorphism", sign: int) -> "RepMorphism":
        if other.source.dims != self.source.dims or other.target.dims != self.target.dims:
            raise ShapeError("adding morphisms between different objects")
        maps = {
            v: self.maps[v] + (other.maps[v] if sign > 0 else -other.maps[v]) for v in self.maps
        }
        return RepMorphism(self.source, self.target, maps, check=False)

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        return self._combine(other, 1)

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        return self._combine(other, -1)

    def __neg__(self) -> "RepMorphism":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "RepMorphism":
        maps = {v: m.scale(c) for v, m in self.maps.items()}
        return RepMorphism(self.source, self.target, maps, check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())

    def is_injective(self) -> bool:
        return all(m.rank() == m.cols for m in self.maps.values())

    def is_surjective(self) -> bool:
        return all(m.rank() == m.rows for m in self.maps.values())

    def is_isomorphism(self) -> bool:
        return all(m.is_invertible() for m in self.maps.values())

    def inverse(self) -> "RepMorphism":
        maps = {v: m.inverse() for v, m in self.maps.items()}
        return RepMorphism(self.target, self.source, maps, check=False)

    def rank(self) -> int:
        return sum(m.rank() for m in self.maps.values())

    def vector(self) -> List[Scalar]:
        """Entries of all components, vertex by vertex in row-major order."""
        return [v for x in self.source.quiver.vertices for v in self.maps[x].flatten()]

    @classmethod
    def from_vector(
        cls, source: Representation, target: Representation, values: Sequence[Scalar],
        check: bool = False,
    ) -> "RepMorphism":
        maps = {}
        offset = 0
        for x in source.quiver.vertices:
            r, c = target.dims[x], source.dims[x]
            block = values[offset : offset + r * c]
            rows = [block[i * c : (i + 1) * c] for i in range(r)]
            maps[x] = Matrix.from_rows(source.field, rows, c)
            offset += r * c
        return cls(source, target, maps, check=check)

    @classmethod
    def identity(cls, module: Representation) -> "RepMorphism":
        maps = {v: Matrix.identity(module.field, d) for v, d in module.dims.items()}
        return cls(module, module, maps, check=False)

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "RepMorphism":
        return cls(source, target, check=False)


def _offsets(source: Representation, target: Representation) -> Dict[str, int]:
    offsets = {}
    total = 0
    for x in source.quiver.vertices:
        offsets[x] = total
        total += target.dims[x] * source.dims[x]
    return offsets


def commuting_system(source: Representation, target: Representation) -> Matrix:
    """The linear system whose kernel is Hom(source, target).

    Unknowns are the entries of every component in ``RepMorphism.vector`` order;
    each arrow ``a: x -> y`` contributes the equations of ``N(a)F_x - F_y M(a) = 0``.
    """
    f = source.field
    offsets = _offsets(source, target)
    n = sum(target.dims[x] * source.dims[x] for x in source.quiver.vertices)
    rows: List[List[Scalar]] = []
    for a in source.quiver.arrows:
        x, y = a.source, a.target
        na, ma = target.action[a.name], source.action[a.name]
        mx, nx, ny = source.dims[x], target.dims[x], target.dims[y]
        my = source.dims[y]
        for i in range(ny):
            for j in range(mx):
                row = [f.zero()] * n
                for k in range(nx):
                    c = na[i, k]
                    if not f.is_zero(c):
                        idx = offsets[x] + k * mx + j
                        row[idx] = f.add(row[idx], c)
                for k in range(my):
                    c = ma[k, j]
                    if not f.is_zero(c):
                        idx = offsets[y] + i * my + k
                        row[idx] = f.subtract(row[idx], c)
                rows.append(row)
    return Matrix.from_rows(f, rows, n)


class HomSpace:
    """Hom(source, target) with a fixed basis and coordinates."""

    def __init__(self, source: Representation, target: Representation):
        """Initialize the space by solving the commuting-square system.

        Args:
            source: The domain.
            target: The codomain.
        """
        if source.algebra is not target.algebra:
            raise RepresentationError("Hom between representations of different algebras")
        self.source = source
        self.target = target
        self.matrix = commuting_system(source, target).kernel_basis()
        self.basis: List[RepMorphism] = [
            RepMorphism.from_vector(source, target, self.matrix.column(j))
            for j in range(self.matrix.cols)
        ]
        self._coordinates: Optional[ColumnSpace] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, morphism: RepMorphism) -> List[Scalar]:
        if self._coordinates is None:
            self._coordinates = ColumnSpace(self.matrix)
        coords = self._coordinates.coordinates(
            Matrix.column_vector(self.source.field, morphism.vector())
        )
        if coords is None:
            raise RepresentationError("morphism does not lie in this Hom space")
        return list(coords.column(0))

    def element(self, coeffs: Sequence[Scalar]) -> RepMorphism:
        result = RepMorphism.zero(self.source, self.target)
        for c, phi in zip(coeffs, self.basis):
            if not self.source.field.is_zero(self.source.field.coerce(c)):
                result = result + phi.scale(c)
        return result

    def solve(
        self, transform: Callable[[RepMorphism], RepMorphism], target: RepMorphism
    ) -> Optional[RepMorphism]:
        """An element φ of the space with ``transform(φ) == target``.

        Args:
            transform: A linear map out of this space, such as composition with a fixed morphism.
            target: The required value.

        Returns:
            One solution, or None when ``target`` is not in the image of ``transform``.
        """
        f = self.source.field
        values = target.vector()
        images = Matrix.from_columns(f, [transform(b).vector() for b in self.basis], len(values))
        solution = images.solve(Matrix.column_vector(f, values))
        if solution is None:
            return None
        return self.element(solution.particular.column(0))


def hom_basis(source: Representation, target: Representation) -> List[RepMorphism]:
    """A basis of Hom(source, target)."""
    return HomSpace(source, target).basis


@dataclass
class DirectSum:
    """A direct sum with its canonical injections and projections."""

    module: Representation
    injections: List[RepMorphism]
    projections: List[RepMorphism]


def direct_sum(
    modules: Sequence[Representation],
    algebra: Optional[BoundQuiverAlgebra] = None,
    name: str = "",
) -> DirectSum:
    """The direct sum of ``modules`` with block-diagonal arrow matrices.

    Args:
        modules: The summands, in order.
        algebra: Required only when ``modules`` is empty.
        name: Display name of the sum.

    Returns:
        The sum together with its injections and projections.
    """
    if not modules:
        if algebra is None:
            raise RepresentationError("empty direct sum needs an algebra")
        zero = Representation.zero(algebra, name=name or "0")
        return DirectSum(zero, [], [])
    algebra = modules[0].algebra
    if any(m.algebra is not algebra for m in modules):
        raise RepresentationError("direct sum of representations of different algebras")
    f = algebra.field
    q = algebra.quiver
    dims = {v: sum(m.dims[v] for m in modules) for v in q.vertices}
    action = {
        a.name: Matrix.block_diagonal(f, [m.action[a.name] for m in modules]) for a in q.arrows
    }
    label = name or " + ".join(m.name or "?" for m in modules)
    total = Representation(algebra, dims, action, name=label, check=False)
    injections = []
    projections = []
    offsets = {v: 0 for v in q.vertices}
    for m in modules:
        inj, proj = {}, {}
        for v in q.vertices:
            ident = Matrix.identity(f, dims[v])
            rows = list(range(offsets[v], offsets[v] + m.dims[v]))
            inj[v] = ident.select_columns(rows)
            proj[v] = ident.select_rows(rows)
            offsets[v] += m.dims[v]
        injections.append(RepMorphism(m, total, inj, check=False))
        projections.append(RepMorphism(total, m, proj, check=False))
    return DirectSum(total, injections, projections)


def direct_sum_morphism(
    source: DirectSum, target: DirectSum, blocks: Sequence[Sequence[RepMorphism]]
) -> RepMorphism:
    """The morphism between two sums with components ``blocks[j][i]: source_i -> target_j``."""
    result = RepMorphism.zero(source.module, target.module)
    for j, row in enumerate(blocks):
        for i, phi in enumerate(row):
            result = result + target.injections[j].compose(phi).compose(source.projections[i])
    return result
