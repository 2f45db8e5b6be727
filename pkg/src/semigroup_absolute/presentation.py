"""Textual presentations of commutative semigroups.

A presentation fixes an ordered list of generator symbols and a list of
relations between formal sums of generators.  Every formal sum is stored as
an exponent vector (a tuple of nonnegative integers indexed by the
generators), so the i-th symbol is always coordinate i.

The accepted text format (``.sgp``)::

    # integer lattice Z^2 with its four unit steps
    semigroup z2
    generators: a b c d
    relations: a + b = 0; c + d = 0
    class: group

``0`` is the empty word.  ``copies: a2 = a`` declares a repeated generator
``a2`` which is a second copy of ``a``.  Relation lines may continue on
following lines that do not start a new directive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

Vector = tuple[int, ...]

CLASSES = ("group", "cancellative", "general", "auto")
_DIRECTIVES = ("semigroup", "generators", "copies", "relations", "class")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


class PresentationError(ValueError):
    """Raised for semantically invalid presentations."""


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class GeneratorSet:
    symbols: tuple[str, ...]
    copies: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if not self.symbols:
            raise PresentationError("at least one generator is required")
        if len(set(self.symbols)) != len(self.symbols):
            raise PresentationError(f"duplicate generator names in {self.symbols}")
        for alias, original in self.copies:
            if alias not in self.symbols or original not in self.symbols:
                raise PresentationError(f"bad copy declaration {alias} = {original}")

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, name: str) -> int:
        return self.symbols.index(name)

    def unit(self, name: str) -> Vector:
        v = [0] * len(self.symbols)
        v[self.index(name)] = 1
        return tuple(v)


@dataclass(frozen=True)
class RelationPair:
    lhs: Vector
    rhs: Vector

    def __post_init__(self):
        if len(self.lhs) != len(self.rhs):
            raise PresentationError("relation sides have different dimensions")
        if any(x < 0 for x in self.lhs + self.rhs):
            raise PresentationError("exponent vectors must be nonnegative")

    @property
    def difference(self) -> tuple[int, ...]:
        return relation_difference(self)

    def is_homogeneous(self) -> bool:
        return sum(self.lhs) == sum(self.rhs)

    def swapped(self) -> "RelationPair":
        return RelationPair(self.rhs, self.lhs)

    def _key(self):
        return frozenset((self.lhs, self.rhs))


@dataclass(frozen=True)
class Presentation:
    generators: GeneratorSet
    relations: tuple[RelationPair, ...] = ()
    declared_class: str = "auto"
    has_identity: bool = True
    name: str | None = None

    def __post_init__(self):
        if self.declared_class not in CLASSES:
            raise PresentationError(f"unknown class {self.declared_class!r}")
        n = len(self.generators)
        for r in self.relations:
            if len(r.lhs) != n:
                raise PresentationError("relation indexed by a different generator set")

    @property
    def size(self) -> int:
        return len(self.generators)

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.generators.symbols

    def with_relations(self, extra, declared_class=None) -> "Presentation":
        return Presentation(
            self.generators,
            self.relations + tuple(extra),
            declared_class or self.declared_class,
            self.has_identity,
            self.name,
        )


def relation_difference(r: RelationPair) -> tuple[int, ...]:
    """Coordinatewise ``lhs - rhs``."""
    return tuple(a - b for a, b in zip(r.lhs, r.rhs))


def alias_relations(gens: GeneratorSet) -> list[RelationPair]:
    return [RelationPair(gens.unit(alias), gens.unit(orig)) for alias, orig in gens.copies]


class _SideParser:
    def __init__(self, text: str, line: int, col0: int, gens: GeneratorSet):
        self.text = text
        self.line = line
        self.col0 = col0
        self.gens = gens
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        p = self.pos if pos is None else pos
        raise PresentationSyntaxError(msg, self.line, self.col0 + p + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Vector:
        vec = [0] * len(self.gens)
        if self.peek() == "":
            self.error("empty relation side")
        while True:
            self.term(vec)
            c = self.peek()
            if c == "":
                return tuple(vec)
            if c != "+":
                self.error(f"unexpected {c!r}")
            plus = self.pos
            self.pos += 1
            if self.peek() == "":
                self.error("dangling '+'", plus)

    def term(self, vec: list[int]):
        start = self.pos
        c = self.peek()
        if c == "-":
            self.error("negative coefficient")
        m = re.match(r"\d+", self.text[self.pos:])
        coeff = 1
        if m:
            coeff = int(m.group())
            self.pos += m.end()
            nxt = self.peek()
            if nxt == "*":
                self.pos += 1
                self.skip()
            elif nxt in ("", "+"):
                if coeff == 0:
                    return
                self.error("coefficient without a generator", start)
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if not m:
            self.error("expected a generator name")
        name = m.group()
        if name not in self.gens.symbols:
            raise PresentationError(
                f"line {self.line}, column {self.col0 + self.pos + 1}: unknown generator {name!r}"
            )
        self.pos = m.end()
        vec[self.gens.index(name)] += coeff


def _split_directives(text: str):
    """Yield (keyword, body, line, column_of_body) with continuation lines merged."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = re.match(r"\s*([A-Za-z]+)\s*(:)?", line)
        keyword = m.group(1).lower() if m else None
        if keyword in _DIRECTIVES and (m.group(2) or keyword == "semigroup"):
            out.append([keyword, [(line[m.end():], lineno, m.end())]])
        elif out:
            out[-1][1].append((line, lineno, 0))
        else:
            col = len(line) - len(line.lstrip()) + 1
            raise PresentationSyntaxError("expected a directive", lineno, col)
    return out


def parse_presentation(text: str) -> Presentation:
    """Parse the ``.sgp`` text format into a :class:`Presentation`.

    Alias declarations become length-one relations ``alias = original``
    placed ahead of the user relations.
    """
    name = None
    symbols: list[str] = []
    copy_lines = []
    relation_lines = []
    declared = "auto"
    for keyword, chunks in _split_directives(text):
        if keyword == "semigroup":
            name = " ".join(c[0] for c in chunks).strip().lstrip(":").strip() or None
        elif keyword == "generators":
            for body, lineno, col in chunks:
                for m in re.finditer(r"\S+", body):
                    tok = m.group().rstrip(",")
                    if not _NAME.fullmatch(tok):
                        raise PresentationSyntaxError(
                            f"invalid generator name {tok!r}", lineno, col + m.start() + 1
                        )
                    symbols.append(tok)
        elif keyword == "copies":
            copy_lines.extend(chunks)
        elif keyword == "relations":
            relation_lines.extend(chunks)
        elif keyword == "class":
            value = " ".join(c[0] for c in chunks).strip().lower()
            if value not in CLASSES:
                body, lineno, col = chunks[0]
                raise PresentationSyntaxError(f"unknown class {value!r}", lineno, col + 1)
            declared = value

    copies = []
    for body, lineno, col in copy_lines:
        for piece, offset in _pieces(body, r"[;,]"):
            if not piece.strip():
                continue
            parts = piece.split("=")
            if len(parts) != 2:
                raise PresentationSyntaxError("expected 'alias = original'", lineno, col + offset + 1)
            alias, orig = parts[0].strip(), parts[1].strip()
            if not _NAME.fullmatch(alias) or not _NAME.fullmatch(orig):
                raise PresentationSyntaxError("invalid copy declaration", lineno, col + offset + 1)
            if orig not in symbols:
                raise PresentationError(f"line {lineno}: unknown generator {orig!r}")
            if alias not in symbols:
                symbols.append(alias)
            copies.append((alias, orig))

    if not symbols:
        raise PresentationError("no generators declared")
    gens = GeneratorSet(tuple(symbols), tuple(copies))

    relations = alias_relations(gens)
    for body, lineno, col in relation_lines:
        for piece, offset in _pieces(body, r";"):
            if not piece.strip():
                continue
            eq = piece.find("=")
            if eq < 0:
                raise PresentationSyntaxError("expected '='", lineno, col + offset + len(piece.rstrip()) + 1)
            if "=" in piece[eq + 1:]:
                raise PresentationSyntaxError("more than one '='", lineno, col + offset + piece.rfind("=") + 1)
            lhs = _SideParser(piece[:eq], lineno, col + offset, gens).parse()
            rhs = _SideParser(piece[eq + 1:], lineno, col + offset + eq + 1, gens).parse()
            relations.append(RelationPair(lhs, rhs))

    return Presentation(gens, tuple(relations), declared, True, name)


def _pieces(body: str, sep: str):
    pos = 0
    for m in re.finditer(sep, body):
        yield body[pos:m.start()], pos
        pos = m.end()
    yield body[pos:], pos


def normalize(p: Presentation) -> Presentation:
    """Adjoin the identity, expand aliases, drop trivial and duplicate relations."""
    seen = set()
    rels = []
    for r in alias_relations(p.generators) + list(p.relations):
        if r.lhs == r.rhs or r._key() in seen:
            continue
        seen.add(r._key())
        rels.append(r)
    return Presentation(p.generators, tuple(rels), p.declared_class, True, p.name)


def format_side(v: Vector, symbols) -> str:
    terms = []
    for k, s in zip(v, symbols):
        if k == 1:
            terms.append(s)
        elif k:
            terms.append(f"{k}*{s}")
    return " + ".join(terms) if terms else "0"


def serialize(p: Presentation) -> str:
    """Render ``p`` in the text format; ``parse_presentation`` inverts this."""
    gens = p.generators
    lines = []
    if p.name:
        lines.append(f"semigroup {p.name}")
    lines.append("generators: " + " ".join(gens.symbols))
    if gens.copies:
        lines.append("copies: " + "; ".join(f"{a} = {o}" for a, o in gens.copies))
    implicit = {r._key() for r in alias_relations(gens)}
    explicit = [r for r in p.relations if r._key() not in implicit]
    if explicit:
        lines.append("relations:")
        for r in explicit:
            lines.append(f"  {format_side(r.lhs, gens.symbols)} = {format_side(r.rhs, gens.symbols)}")
    lines.append(f"class: {p.declared_class}")
    return "\n".join(lines) + "\n"


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return normalize(parse_presentation(fh.read()))
