"""
Workspace files for quiverar.

This module reads and writes the line-oriented text format that declares a
field, a quiver, relations, window boundaries and named modules, and
resolves module names against the built algebra.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from quiverar.algebra.bound import BoundQuiverAlgebra, build_algebra, validate_relations
from quiverar.algebra.quiver import Arrow, Quiver
from quiverar.algebra.rewriting import Poly, add_term, format_poly
from quiverar.errors import InputError, QuiverarError, WorkspaceSyntaxError
from quiverar.linalg.fields import QQ, Field, PrimeField, Scalar
from quiverar.linalg.matrix import Matrix
from quiverar.models import AppConfig
from quiverar.modules.constructions import make_injective, make_projective, make_simple
from quiverar.modules.representation import Representation

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(
    r"(?P<space>[ \t\r]+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<newline>\n)"
    r"|(?P<arrow>->)"
    r"|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<name>[^\W\d][\w']*)"
    r"|(?P<symbol>[:{};=\[\],*+\-])"
)

AUTOMATIC_NAME = re.compile(r"^([PIS])(.+)$")


@dataclass
class Token:
    """A lexical token with its 1-based position."""

    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    """Split workspace text into tokens, dropping blanks and comments."""
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        if match is None:
            raise WorkspaceSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = match.lastgroup or ""
        if kind not in ("space", "comment"):
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
        if kind == "newline":
            line += 1
            line_start = pos
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


@dataclass
class ModuleDefinition:
    """A named module as written: dimensions and arrow matrices."""

    name: str
    dims: Dict[str, int]
    matrices: Dict[str, Matrix]
    line: int = 0
    column: int = 0


@dataclass
class Workspace:
    """A parsed workspace file."""

    field: Field
    quiver: Quiver
    relations: List[Poly]
    modules: Dict[str, ModuleDefinition] = field(default_factory=dict)
    boundary: List[str] = field(default_factory=list)

    def build(self, config: Optional[AppConfig] = None) -> BoundQuiverAlgebra:
        config = config or AppConfig()
        algebra = build_algebra(
            self.quiver,
            self.relations,
            self.field,
            completion_degree=config.completion_degree,
            saturation_length=config.saturation_length,
        )
        logger.info(f"Built algebra with status {algebra.status}")
        return algebra

    def representation(self, algebra: BoundQuiverAlgebra, name: str) -> Representation:
        """The module called ``name``; ``P<v>``, ``I<v>`` and ``S<v>`` name standard modules.

        Raises:
            InputError: If the name is unknown.
        """
        definition = self.modules.get(name)
        if definition is not None:
            return self._build_module(algebra, definition)
        match = AUTOMATIC_NAME.match(name)
        if match and match.group(2) in self.quiver.vertex_index:
            kind, vertex = match.groups()
            build = {"P": make_projective, "I": make_injective, "S": make_simple}[kind]
            return build(algebra, vertex)
        raise InputError(f"unknown module {name!r}")

    def representations(self, algebra: BoundQuiverAlgebra) -> List[Representation]:
        return [self._build_module(algebra, d) for d in self.modules.values()]

    def _build_module(
        self, algebra: BoundQuiverAlgebra, definition: ModuleDefinition
    ) -> Representation:
        try:
            return Representation(
                algebra, definition.dims, definition.matrices, name=definition.name
            )
        except QuiverarError as exc:
            raise WorkspaceSyntaxError(
                f"module {definition.name}: {exc}", definition.line, definition.column
            ) from exc

    def window_unsafe(self, support: List[str]) -> bool:
        return bool(set(support) & set(self.boundary))


class _Parser:
    """Recursive-descent parser over the token list."""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0
        self.field: Field = QQ
        self.field_seen = False
        self.vertices: List[str] = []
        self.arrows: List[Arrow] = []
        self.quiver: Optional[Quiver] = None
        self.relations: List[Tuple[Token, Poly]] = []
        self.modules: Dict[str, ModuleDefinition] = {}
        self.boundary: List[str] = []

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Optional[Token] = None) -> WorkspaceSyntaxError:
        token = token or self.current
        return WorkspaceSyntaxError(message, token.line, token.column)

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        if self.current.text != text:
            found = self.current.text or "end of file"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def identifier(self, what: str) -> Token:
        if self.current.kind not in ("name", "number"):
            raise self.error(f"expected {what}")
        return self.advance()

    def skip_newlines(self) -> None:
        while self.current.kind == "newline":
            self.advance()

    def end_statement(self) -> None:
        if self.current.kind not in ("newline", "end"):
            raise self.error(f"unexpected {self.current.text!r}")
        self.skip_newlines()

    def quiver_now(self) -> Quiver:
        if self.quiver is None:
            self.quiver = Quiver(self.vertices, self.arrows)
        return self.quiver

    def parse(self) -> Workspace:
        self.skip_newlines()
        while self.current.kind != "end":
            keyword = self.current
            handler = {
                "field": self.parse_field,
                "vertex": self.parse_vertex,
                "arrow": self.parse_arrow,
                "relation": self.parse_relation,
                "boundary": self.parse_boundary,
                "module": self.parse_module,
            }.get(keyword.text)
            if handler is None or keyword.kind != "name":
                raise self.error(f"unknown statement {keyword.text!r}")
            self.advance()
            handler(keyword)
        quiver = self.quiver_now()
        relations = []
        for token, poly in self.relations:
            try:
                relations.extend(validate_relations(quiver, [poly], self.field))
            except InputError as exc:
                raise self.error(str(exc), token) from exc
        return Workspace(self.field, quiver, relations, self.modules, self.boundary)

    def parse_field(self, keyword: Token) -> None:
        if self.field_seen:
            raise self.error("field declared twice", keyword)
        name = self.identifier("a field")
        if name.text == "Q":
            self.field = QQ
        elif name.text == "F":
            p = self.current
            if p.kind != "number" or "/" in p.text:
                raise self.error("expected a prime after 'F'")
            self.advance()
            try:
                self.field = PrimeField(int(p.text))
            except InputError as exc:
                raise self.error(str(exc), p) from exc
        else:
            raise self.error(f"unknown field {name.text!r}", name)
        self.field_seen = True
        self.end_statement()

    def _check_open(self, keyword: Token) -> None:
        if self.quiver is not None:
            raise self.error(f"{keyword.text} after the quiver is in use", keyword)

    def parse_vertex(self, keyword: Token) -> None:
        self._check_open(keyword)
        if self.current.kind in ("newline", "end"):
            raise self.error("expected a vertex name")
        while self.current.kind not in ("newline", "end"):
            token = self.identifier("a vertex name")
            if token.text in self.vertices:
                raise self.error(f"vertex {token.text} declared twice", token)
            self.vertices.append(token.text)
        self.end_statement()

    def vertex(self) -> Token:
        token = self.identifier("a vertex")
        if token.text not in self.vertices:
            raise self.error(f"unknown vertex {token.text!r}", token)
        return token

    def parse_arrow(self, keyword: Token) -> None:
        self._check_open(keyword)
        name = self.current
        if name.kind != "name":
            raise self.error("arrow names start with a letter")
        self.advance()
        if any(a.name == name.text for a in self.arrows) or name.text in self.vertices:
            raise self.error(f"name {name.text} already in use", name)
        self.expect(":")
        source = self.vertex()
        self.expect("->")
        target = self.vertex()
        self.arrows.append(Arrow(name.text, source.text, target.text))
        self.end_statement()

    def scalar(self) -> Scalar:
        token = self.current
        if token.kind != "number":
            raise self.error("expected a number")
        self.advance()
        return self.field.coerce(Fraction(token.text))

    def parse_term(self, quiver: Quiver, poly: Poly, sign: int) -> None:
        f = self.field
        coefficient = f.one() if sign > 0 else f.negate(f.one())
        arrows: List[str] = []
        start = self.current
        while True:
            while self.current.text == "-":
                self.advance()
                coefficient = f.negate(coefficient)
            token = self.current
            if token.kind == "number":
                coefficient = f.multiply(coefficient, self.scalar())
            elif token.kind == "name":
                if token.text not in quiver.arrow_index:
                    raise self.error(f"unknown arrow {token.text!r}", token)
                arrows.append(self.advance().text)
            else:
                raise self.error("expected a coefficient or an arrow")
            if self.current.text != "*":
                break
            self.advance()
        if not arrows:
            raise self.error("relation term without arrows", start)
        try:
            path = quiver.path(arrows)
        except InputError as exc:
            raise self.error(str(exc), start) from exc
        add_term(poly, path, coefficient, f)

    def parse_relation(self, keyword: Token) -> None:
        quiver = self.quiver_now()
        poly: Poly = {}
        sign = 1
        while True:
            self.parse_term(quiver, poly, sign)
            if self.current.text == "+":
                sign = 1
            elif self.current.text == "-":
                sign = -1
            else:
                break
            self.advance()
        self.relations.append((keyword, poly))
        self.end_statement()

    def parse_boundary(self, keyword: Token) -> None:
        if self.current.kind in ("newline", "end"):
            raise self.error("expected a vertex")
        while self.current.kind not in ("newline", "end"):
            token = self.vertex()
            if token.text not in self.boundary:
                self.boundary.append(token.text)
        self.end_statement()

    def matrix(self) -> List[List[Scalar]]:
        self.expect("[")
        rows: List[List[Scalar]] = []
        while self.current.text != "]":
            self.expect("[")
            row: List[Scalar] = []
            while self.current.text != "]":
                negative = False
                if self.current.text == "-":
                    self.advance()
                    negative = True
                value = self.scalar()
                row.append(self.field.negate(value) if negative else value)
                if self.current.text != ",":
                    break
                self.advance()
            self.expect("]")
            rows.append(row)
            if self.current.text != ",":
                break
            self.advance()
        self.expect("]")
        return rows

    def parse_module(self, keyword: Token) -> None:
        quiver = self.quiver_now()
        name = self.identifier("a module name")
        if name.text in self.modules:
            raise self.error(f"module {name.text} defined twice", name)
        self.skip_newlines()
        self.expect("{")
        dims = {v: 0 for v in quiver.vertices}
        raw: Dict[str, Tuple[Token, List[List[Scalar]]]] = {}
        self.skip_newlines()
        while self.current.text != "}":
            word = self.identifier("'dim' or 'mat'")
            if word.text == "dim":
                vertex = self.vertex()
                self.expect("=")
                count = self.current
                if count.kind != "number" or "/" in count.text:
                    raise self.error("expected a dimension")
                self.advance()
                dims[vertex.text] = int(count.text)
            elif word.text == "mat":
                arrow = self.identifier("an arrow")
                if arrow.text not in quiver.arrow_index:
                    raise self.error(f"unknown arrow {arrow.text!r}", arrow)
                self.expect("=")
                raw[arrow.text] = (arrow, self.matrix())
            else:
                raise self.error(f"expected 'dim' or 'mat', found {word.text!r}", word)
            self.expect(";")
            self.skip_newlines()
        self.expect("}")
        matrices = {}
        for arrow_name, (token, rows) in raw.items():
            a = quiver.arrow(arrow_name)
            shape = (dims[a.target], dims[a.source])
            if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
                if shape[0] == 0 and rows in ([], [[]]):
                    continue
                raise self.error(f"matrix of {arrow_name} must be {shape[0]}x{shape[1]}", token)
            matrices[arrow_name] = Matrix.from_rows(self.field, rows, shape[1])
        self.modules[name.text] = ModuleDefinition(
            name.text, dims, matrices, name.line, name.column
        )
        self.end_statement()


def parse(source: Union[str, Path]) -> Workspace:
    """Parse workspace text, or the file at a path.

    Raises:
        WorkspaceSyntaxError: With line and column for every rejected input.
    """
    if isinstance(source, Path):
        logger.debug(f"Reading workspace {source}")
        text = source.read_text(encoding="utf-8")
    else:
        text = source
    workspace = _Parser(tokenize(text)).parse()
    logger.debug(
        f"Parsed {len(workspace.quiver.vertices)} vertices, {len(workspace.quiver.arrows)} "
        f"arrows, {len(workspace.relations)} relations, {len(workspace.modules)} modules"
    )
    return workspace


@dataclass
class Padding:
    """Summands added to a minimal presentation: ``P_x -> 0`` and ``P_x -> P_x``."""

    zero: List[str] = field(default_factory=list)
    identity: List[str] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not self.zero and not self.identity


def parse_padding(source: Union[str, Path], quiver: Quiver) -> Padding:
    """Parse a presentation file of ``zero <v> ...`` and ``identity <v> ...`` lines.

    Raises:
        WorkspaceSyntaxError: For unknown statements or vertices.
    """
    text = source.read_text(encoding="utf-8") if isinstance(source, Path) else source
    padding = Padding()
    tokens = tokenize(text)
    pos = 0
    while tokens[pos].kind != "end":
        keyword = tokens[pos]
        if keyword.kind == "newline":
            pos += 1
            continue
        if keyword.kind != "name" or keyword.text not in ("zero", "identity"):
            raise WorkspaceSyntaxError(
                f"unknown statement {keyword.text!r}", keyword.line, keyword.column
            )
        target = padding.zero if keyword.text == "zero" else padding.identity
        pos += 1
        if tokens[pos].kind in ("newline", "end"):
            raise WorkspaceSyntaxError("expected a vertex", tokens[pos].line, tokens[pos].column)
        while tokens[pos].kind not in ("newline", "end"):
            vertex = tokens[pos]
            if vertex.text not in quiver.vertex_index:
                raise WorkspaceSyntaxError(
                    f"unknown vertex {vertex.text!r}", vertex.line, vertex.column
                )
            target.append(vertex.text)
            pos += 1
    logger.debug(f"Padding with zero {padding.zero} and identity {padding.identity}")
    return padding


def _format_matrix(f: Field, m: Matrix) -> str:
    rows = ["[" + ", ".join(f.format(v) for v in row) + "]" for row in m.to_lists()]
    return "[" + ", ".join(rows) + "]"


def canonical_form(workspace: Workspace) -> str:
    """The canonical text of a workspace; parsing it gives back the same workspace."""
    q = workspace.quiver
    f = workspace.field
    lines = [f"field {f.descriptor()}", "vertex " + " ".join(q.vertices)]
    lines += [f"arrow {a.name}: {a.source} -> {a.target}" for a in q.arrows]
    lines += [f"relation {format_poly(r, q)}" for r in workspace.relations]
    if workspace.boundary:
        lines.append("boundary " + " ".join(workspace.boundary))
    for definition in workspace.modules.values():
        lines.append(f"module {definition.name} {{")
        for v in q.vertices:
            if definition.dims.get(v):
                lines.append(f"  dim {v} = {definition.dims[v]};")
        for a in q.arrows:
            m = definition.matrices.get(a.name)
            if m is not None and m.rows and m.cols and not m.is_zero():
                lines.append(f"  mat {a.name} = {_format_matrix(f, m)};")
        lines.append("}")
    return "\n".join(lines) + "\n"

