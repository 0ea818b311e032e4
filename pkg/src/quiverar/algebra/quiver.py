"""
Quivers and paths.

This module defines finite quivers, paths written right to left
(``b*a`` means first ``a`` then ``b``), path composition, enumeration
and the opposite quiver.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from quiverar.errors import InputError

logger = logging.getLogger(__name__)

OPPOSITE_SUFFIX = "^op"


class QuiverError(InputError):
    """Exception raised for malformed quivers or paths."""
    pass


@dataclass(frozen=True)
class Arrow:
    """An arrow ``name: source -> target``."""

    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path in written order.

    ``arrows`` lists arrow names left to right as written, so the rightmost
    arrow is traversed first. Trivial paths have no arrows and
    ``source == target``.
    """

    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        if self.is_trivial:
            return f"e_{self.source}"
        return "*".join(self.arrows)


@dataclass(frozen=True)
class LocalFiniteness:
    """Fan-out and fan-in finiteness flags of a quiver."""

    left_locally_finite: bool
    right_locally_finite: bool
    max_fan_out: int = 0
    max_fan_in: int = 0

    @property
    def locally_finite(self) -> bool:
        return self.left_locally_finite and self.right_locally_finite


class Quiver:
    """A finite quiver with ordered vertices and arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow]):
        """Initialize the quiver.

        Args:
            vertices: Vertex ids in declaration order.
            arrows: Arrows in declaration order.
        """
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self.arrows: Tuple[Arrow, ...] = tuple(arrows)
        self.vertex_index: Dict[str, int] = {}
        for v in self.vertices:
            if v in self.vertex_index:
                raise QuiverError(f"duplicate vertex {v!r}")
            self.vertex_index[v] = len(self.vertex_index)
        self.arrow_index: Dict[str, int] = {}
        self._arrows_by_name: Dict[str, Arrow] = {}
        for a in self.arrows:
            if a.name in self.arrow_index or a.name in self.vertex_index:
                raise QuiverError(f"duplicate identifier {a.name!r}")
            for end in (a.source, a.target):
                if end not in self.vertex_index:
                    raise QuiverError(f"arrow {a.name!r} uses undeclared vertex {end!r}")
            self.arrow_index[a.name] = len(self.arrow_index)
            self._arrows_by_name[a.name] = a

    def __repr__(self) -> str:
        return f"Quiver(vertices={list(self.vertices)}, arrows={[a.name for a in self.arrows]})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def check_vertex(self, x: str) -> None:
        if x not in self.vertex_index:
            raise QuiverError(f"unknown vertex {x!r}")

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrows_by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def out_arrows(self, x: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == x]

    def in_arrows(self, x: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == x]

    def trivial_path(self, x: str) -> Path:
        self.check_vertex(x)
        return Path(x, x)

    def arrow_path(self, name: str) -> Path:
        a = self.arrow(name)
        return Path(a.source, a.target, (name,))

    def path(self, arrows: Sequence[str], vertex: Optional[str] = None) -> Path:
        """Build a path from arrow names in written order.

        Args:
            arrows: Arrow names, leftmost traversed last.
            vertex: The base vertex, required when ``arrows`` is empty.

        Returns:
            The path.
        """
        if not arrows:
            if vertex is None:
                raise QuiverError("a trivial path needs a vertex")
            return self.trivial_path(vertex)
        resolved = [self.arrow(name) for name in arrows]
        for later, earlier in zip(resolved, resolved[1:]):
            if earlier.target != later.source:
                raise QuiverError(
                    f"arrows {later.name!r} and {earlier.name!r} do not compose: "
                    f"{earlier.name!r} ends at {earlier.target!r}, "
                    f"{later.name!r} starts at {later.source!r}"
                )
        return Path(resolved[-1].source, resolved[0].target, tuple(arrows))

    def parse_path(self, text: str) -> Path:
        """Parse ``e_x`` or ``b*a`` into a path."""
        text = text.strip()
        if text.startswith("e_") and text[2:] in self.vertex_index:
            return self.trivial_path(text[2:])
        return self.path([t.strip() for t in text.split("*")])

    def compose(self, p: Path, q: Path) -> Optional[Path]:
        """Return ``p∘q`` (first ``q``, then ``p``), or None when the endpoints do not meet."""
        if q.target != p.source:
            return None
        return Path(q.source, p.target, p.arrows + q.arrows)

    def sort_key(self, p: Path) -> Tuple[int, Tuple[int, ...], int]:
        """Canonical order: length, then arrow declaration order, then vertex order."""
        return (
            len(p.arrows),
            tuple(self.arrow_index[a] for a in p.arrows),
            self.vertex_index[p.source],
        )

    def paths_from(self, x: str, max_len: int) -> List[Path]:
        """All paths starting at ``x`` of length at most ``max_len`` in canonical order."""
        self.check_vertex(x)
        level = [Path(x, x)]
        found = list(level)
        for _ in range(max_len):
            level = [
                Path(x, a.target, (a.name,) + p.arrows)
                for p in level
                for a in self.out_arrows(p.target)
            ]
            if not level:
                break
            found.extend(level)
        return sorted(found, key=self.sort_key)

    def paths_between(self, x: str, y: str, max_len: int) -> List[Path]:
        """All paths ``x -> y`` of length at most ``max_len``, ordered canonically."""
        self.check_vertex(y)
        return [p for p in self.paths_from(x, max_len) if p.target == y]

    def opposite_name(self, name: str) -> str:
        if name.endswith(OPPOSITE_SUFFIX):
            return name[: -len(OPPOSITE_SUFFIX)]
        return name + OPPOSITE_SUFFIX

    def opposite(self) -> "Quiver":
        """The opposite quiver; applying it twice restores the original names."""
        return Quiver(
            self.vertices,
            [Arrow(self.opposite_name(a.name), a.target, a.source) for a in self.arrows],
        )

    def opposite_path(self, p: Path) -> Path:
        return Path(p.target, p.source, tuple(self.opposite_name(a) for a in reversed(p.arrows)))

    def local_finiteness(self) -> LocalFiniteness:
        """Fan-out and fan-in flags; every declared quiver has finite arrow sets."""
        fan_out = {x: len(self.out_arrows(x)) for x in self.vertices}
        fan_in = {x: len(self.in_arrows(x)) for x in self.vertices}
        return LocalFiniteness(
            left_locally_finite=True,
            right_locally_finite=True,
            max_fan_out=max(fan_out.values(), default=0),
            max_fan_in=max(fan_in.values(), default=0),
        )

    def oriented_cycles(self, max_len: int) -> List[Path]:
        """Elementary oriented cycles of length at most ``max_len``.

        Each cycle is returned once, based at its smallest vertex, in canonical order.
        """
        cycles: List[Path] = []

        def extend(start: str, path: Path, visited: Tuple[str, ...]) -> None:
            if path.length >= max_len:
                return
            for a in self.out_arrows(path.target):
                step = Path(start, a.target, (a.name,) + path.arrows)
                if a.target == start:
                    cycles.append(step)
                elif (
                    self.vertex_index[a.target] > self.vertex_index[start]
                    and a.target not in visited
                ):
                    extend(start, step, visited + (a.target,))

        for v in self.vertices:
            extend(v, Path(v, v), (v,))
        return sorted(cycles, key=self.sort_key)
