"""
Bound quiver algebras.

This module builds Λ = kQ/I from a quiver and parallel relations: it
completes the rewrite system, enumerates the irreducible paths that form
the normal-form basis and decides whether the basis saturates.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from quiverar.algebra.quiver import Path, Quiver
from quiverar.algebra.rewriting import (
    CompletionResult,
    Poly,
    RewriteSystem,
    add_term,
    format_poly,
)
from quiverar.errors import ConsistencyError, InputError, QuiverarError, UndecidedError
from quiverar.linalg.fields import Field, Scalar
from quiverar.linalg.matrix import Matrix
from quiverar.models import Truth

logger = logging.getLogger(__name__)

ASSOCIATIVITY_CHECK_LIMIT = 30


class RelationError(InputError):
    """Exception raised for relations that are not parallel or too short."""
    pass


class Saturation(str, Enum):
    """Enum representing how far the normal-form basis is known."""
    NILPOTENT = "nilpotent-verified"
    STABILIZED = "stabilized"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class SaturationStatus:
    kind: Saturation
    bound: int

    def __str__(self) -> str:
        return f"{self.kind.value}({self.bound})"


class AlgebraElement:
    """A linear combination of basis path classes of a bound quiver algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "BoundQuiverAlgebra", terms: Mapping[Path, Scalar]):
        self.algebra = algebra
        f = algebra.field
        self.terms: Dict[Path, Scalar] = {p: c for p, c in terms.items() if not f.is_zero(c)}

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        terms = dict(self.terms)
        for p, c in other.terms.items():
            add_term(terms, p, c, self.algebra.field)
        return AlgebraElement(self.algebra, terms)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(self.algebra.field.negate(self.algebra.field.one()))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.multiply(self, other)

    def scale(self, c: Scalar) -> "AlgebraElement":
        f = self.algebra.field
        c = f.coerce(c)
        return AlgebraElement(self.algebra, {p: f.multiply(c, v) for p, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, p: Path) -> Scalar:
        return self.terms.get(p, self.algebra.field.zero())

    def support(self) -> List[Path]:
        return sorted(self.terms, key=self.algebra.quiver.sort_key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        return format_poly(self.terms, self.algebra.quiver)

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


class BoundQuiverAlgebra:
    """The algebra kQ/I with a completed rewrite system and a normal-form basis."""

    def __init__(
        self,
        quiver: Quiver,
        relations: Sequence[Poly],
        field: Field,
        rewriting: RewriteSystem,
        completion: CompletionResult,
        completion_degree: int,
        saturation_length: int,
    ):
        """Initialize the algebra and saturate its basis.

        Args:
            quiver: The quiver.
            relations: Validated relation generators.
            field: The coefficient field.
            rewriting: The completed rewrite system.
            completion: The completion outcome.
            completion_degree: Overlap cap used by the completion.
            saturation_length: Longest path length enumerated for the basis.
        """
        self.quiver = quiver
        self.relations: Tuple[Poly, ...] = tuple(relations)
        self.field = field
        self.rewriting = rewriting
        self.complete = completion.complete
        self.completion = completion
        self.completion_degree = completion_degree
        self.saturation_length = saturation_length
        self._normal_forms: Dict[Path, Dict[Path, Scalar]] = {}
        self._opposite: Optional["BoundQuiverAlgebra"] = None
        self.levels: List[List[Path]] = []
        self.nilpotency_index: Optional[int] = None
        self.status = self._saturate()
        self._pairs: Dict[Tuple[str, str], List[Path]] = {}
        self._pair_index: Dict[Tuple[str, str], Dict[Path, int]] = {}
        if self.is_finite:
            for path in sorted(itertools.chain.from_iterable(self.levels), key=quiver.sort_key):
                self._pairs.setdefault((path.source, path.target), []).append(path)
            for key, paths in self._pairs.items():
                self._pair_index[key] = {p: i for i, p in enumerate(paths)}
            self.nilpotency_index = self._nilpotency_index()
            if self.nilpotency_index is not None:
                self.status = SaturationStatus(Saturation.NILPOTENT, self.nilpotency_index)
        logger.info(f"Built algebra with status {self.status}")

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.quiver!r}, status={self.status})"

    def _saturate(self) -> SaturationStatus:
        level = [Path(x, x) for x in self.quiver.vertices]
        self.levels = [level]
        for length in range(1, self.saturation_length + 1):
            extended = []
            for p in level:
                for a in self.quiver.out_arrows(p.target):
                    step = Path(p.source, a.target, (a.name,) + p.arrows)
                    if self.rewriting.is_irreducible(step):
                        extended.append(step)
            level = extended
            if not level:
                if not self.complete:
                    return SaturationStatus(Saturation.UNDECIDED, self.completion_degree)
                return SaturationStatus(Saturation.STABILIZED, length)
            self.levels.append(level)
        return SaturationStatus(Saturation.UNDECIDED, self.saturation_length)

    @property
    def is_finite(self) -> bool:
        return self.status.kind != Saturation.UNDECIDED

    def require_finite(self, what: str) -> None:
        if not self.is_finite:
            raise UndecidedError(f"{what} needs a saturated basis, status is {self.status}",
                                 self.status.bound)

    @property
    def dimension(self) -> int:
        self.require_finite("the dimension")
        return sum(len(level) for level in self.levels)

    def basis(self, x: str, y: str) -> List[Path]:
        """Ordered basis of e_yΛe_x, the nonzero path classes from ``x`` to ``y``."""
        self.quiver.check_vertex(x)
        self.quiver.check_vertex(y)
        self.require_finite(f"the basis of e_{y}Λe_{x}")
        return list(self._pairs.get((x, y), []))

    def all_basis(self) -> List[Path]:
        self.require_finite("the basis")
        return sorted(itertools.chain.from_iterable(self.levels), key=self.quiver.sort_key)

    def left_dimension(self, x: str) -> int:
        """dim Λe_x."""
        return sum(len(self.basis(x, y)) for y in self.quiver.vertices)

    def right_dimension(self, x: str) -> int:
        """dim e_xΛ."""
        return sum(len(self.basis(y, x)) for y in self.quiver.vertices)

    def _check_length(self, poly: Mapping[Path, Scalar]) -> None:
        if self.complete:
            return
        for p in poly:
            if p.length > self.saturation_length:
                raise UndecidedError(
                    f"cannot normalize {p}: rewriting is incomplete beyond length "
                    f"{self.saturation_length}",
                    self.saturation_length,
                )

    def normalize(self, expr: Mapping[Path, Scalar]) -> AlgebraElement:
        """Normal form of a linear combination of paths."""
        f = self.field
        poly: Poly = {}
        for p, c in expr.items():
            add_term(poly, p, f.coerce(c), f)
        self._check_length(poly)
        return AlgebraElement(self, self.rewriting.reduce(poly))

    def normalize_path(self, p: Path) -> Dict[Path, Scalar]:
        cached = self._normal_forms.get(p)
        if cached is None:
            self._check_length({p: 1})
            cached = self.rewriting.reduce({p: self.field.one()})
            self._normal_forms[p] = cached
        return cached

    def element(self, source: Union[Path, Mapping[Path, Scalar]]) -> AlgebraElement:
        if isinstance(source, Path):
            return AlgebraElement(self, self.normalize_path(source))
        return self.normalize(source)

    def idempotent(self, x: str) -> AlgebraElement:
        return AlgebraElement(self, {self.quiver.trivial_path(x): self.field.one()})

    def arrow(self, name: str) -> AlgebraElement:
        return self.element(self.quiver.arrow_path(name))

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        """Normal form of the product ``a·b`` (first ``b``, then ``a``)."""
        if a.algebra is not self or b.algebra is not self:
            raise QuiverarError("multiplying elements of different algebras")
        f = self.field
        result: Poly = {}
        for p, c in a.terms.items():
            for q, d in b.terms.items():
                pq = self.quiver.compose(p, q)
                if pq is None:
                    continue
                cd = f.multiply(c, d)
                for r, e in self.normalize_path(pq).items():
                    add_term(result, r, f.multiply(cd, e), f)
        return AlgebraElement(self, result)

    def is_nonzero_path(self, p: Path) -> Truth:
        try:
            return Truth.TRUE if self.normalize_path(p) else Truth.FALSE
        except UndecidedError:
            return Truth.UNDECIDED

    def coordinates(self, element: AlgebraElement, x: str, y: str) -> List[Scalar]:
        """Coordinates of an element of e_yΛe_x in ``basis(x, y)``."""
        self.require_finite("coordinates")
        index = self._pair_index.get((x, y), {})
        coords = [self.field.zero()] * len(index)
        for p, c in element.terms.items():
            if p not in index:
                raise QuiverarError(f"{element} does not lie in e_{y}Λe_{x}")
            coords[index[p]] = c
        return coords

    def from_coordinates(self, x: str, y: str, coords: Sequence[Scalar]) -> AlgebraElement:
        return AlgebraElement(self, dict(zip(self.basis(x, y), coords)))

    def left_multiplication(self, u: AlgebraElement, x: str, y: str, z: str) -> Matrix:
        """Matrix of ``q -> u·q`` from e_yΛe_x to e_zΛe_x, for ``u`` in e_zΛe_y."""
        columns = [self.coordinates(u * self.element(q), x, z) for q in self.basis(x, y)]
        return Matrix.from_columns(self.field, columns, len(self.basis(x, z)))

    def right_multiplication(self, u: AlgebraElement, x: str, y: str, z: str) -> Matrix:
        """Matrix of ``q -> q·u`` from e_zΛe_y to e_zΛe_x, for ``u`` in e_yΛe_x."""
        columns = [self.coordinates(self.element(q) * u, x, z) for q in self.basis(y, z)]
        return Matrix.from_columns(self.field, columns, len(self.basis(x, z)))

    def _global_matrix(self, elements: Iterable[AlgebraElement]) -> Matrix:
        index = {p: i for i, p in enumerate(self.all_basis())}
        columns = []
        for el in elements:
            col = [self.field.zero()] * len(index)
            for p, c in el.terms.items():
                col[index[p]] = c
            columns.append(col)
        return Matrix.from_columns(self.field, columns, len(index))

    def _nilpotency_index(self) -> Optional[int]:
        """Least N with J^N = 0, or None when the powers of J stop shrinking first."""
        power = [self.element(p) for p in self.all_basis() if p.length > 0]
        arrows = [self.arrow(a.name) for a in self.quiver.arrows]
        k = 1
        dim = self._global_matrix(power).rank() if power else 0
        while dim:
            products = [a * v for a in arrows for v in power]
            span = self._global_matrix(products).column_space_basis() if products else None
            power = (
                [self.from_global(span.column(j)) for j in range(span.cols)] if span else []
            )
            k += 1
            if len(power) == dim:
                logger.debug(f"Powers of the radical stabilize at dimension {dim}")
                return None
            dim = len(power)
        return k

    def from_global(self, coords: Sequence[Scalar]) -> AlgebraElement:
        return AlgebraElement(self, dict(zip(self.all_basis(), coords)))

    def check_associativity(self) -> None:
        """Check (pq)r = p(qr) on all composable basis triples."""
        basis = [self.element(p) for p in self.all_basis()]
        for a, b, c in itertools.product(basis, repeat=3):
            if (a * b) * c != a * (b * c):
                raise ConsistencyError(f"multiplication is not associative on ({a}, {b}, {c})")

    def opposite(self) -> "BoundQuiverAlgebra":
        """The opposite algebra, cached so that ``A.opposite().opposite() is A``."""
        if self._opposite is None:
            q = self.quiver
            relations = [{q.opposite_path(p): c for p, c in r.items()} for r in self.relations]
            opposite = build_algebra(
                q.opposite(),
                relations,
                self.field,
                completion_degree=self.completion_degree,
                saturation_length=self.saturation_length,
            )
            opposite._opposite = self
            self._opposite = opposite
        return self._opposite


def validate_relations(quiver: Quiver, relations: Sequence[Mapping[Path, Scalar]],
                       field: Field) -> List[Poly]:
    """Drop zero terms and check that each relation is parallel with monomials of length >= 2."""
    cleaned: List[Poly] = []
    for r in relations:
        poly: Poly = {}
        for p, c in r.items():
            add_term(poly, p, field.coerce(c), field)
        if not poly:
            continue
        for p in poly:
            if p.length < 2:
                raise RelationError(f"relation monomial {p} has length {p.length} < 2")
        ends = {(p.source, p.target) for p in poly}
        if len(ends) > 1:
            raise RelationError(
                f"relation {format_poly(poly, quiver)} is not parallel: endpoints {sorted(ends)}"
            )
        cleaned.append(poly)
    return cleaned


def build_algebra(
    quiver: Quiver,
    relations: Sequence[Mapping[Path, Scalar]],
    field: Field,
    completion_degree: int = 10,
    saturation_length: int = 12,
) -> BoundQuiverAlgebra:
    """Build the bound quiver algebra kQ/I.

    Args:
        quiver: The quiver.
        relations: Generators of I as maps from paths to coefficients.
        field: The coefficient field.
        completion_degree: Cap on overlap lengths during completion.
        saturation_length: Cap on path lengths enumerated for the basis.

    Returns:
        The algebra; its status is undecided when a cap was hit.
    """
    if completion_degree < 2 or saturation_length < 2:
        raise InputError("completion_degree and saturation_length must be at least 2")
    cleaned = validate_relations(quiver, relations, field)
    rewriting = RewriteSystem(quiver, field)
    completion = rewriting.complete(cleaned, completion_degree)
    algebra = BoundQuiverAlgebra(
        quiver, cleaned, field, rewriting, completion, completion_degree, saturation_length
    )
    if algebra.is_finite and algebra.dimension <= ASSOCIATIVITY_CHECK_LIMIT:
        algebra.check_associativity()
    return algebra


def opposite_algebra(algebra: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    return algebra.opposite()
