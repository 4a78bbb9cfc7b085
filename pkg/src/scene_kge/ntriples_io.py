"""Streaming parser and canonical serializer for the N-Triples subset.

Grammar, per line::

    <subj-IRI> <pred-IRI> (<obj-IRI> | "literal"(^^<datatype-IRI>)?) .

IRIs are written either in full angle brackets or as ``prefix:local`` using
the built-in prefix table (rdf:, rdfs:, owl:, xsd:, scene:, inst:, and the
empty prefix as an alias for inst:). Lines starting with ``#`` and blank
lines are skipped. Parsing is strict: anything else is a ParseError with
line and byte column. Blank nodes (``_:``) are rejected.

Serialization emits one line per triple sorted by rendered (subject,
predicate, object) text, so equal triple sets produce byte-identical
documents; parse(serialize(g)) == g.
"""

from __future__ import annotations

import io
from typing import IO, Iterable, Union

from .errors import ParseError
from .triplestore import IRI, LITERAL, KnowledgeGraph, Term
from .vocab import PREFIXES

# Longest namespace first so inst: wins over the empty-prefix alias on output.
_NS_TO_PREFIX: list[tuple[str, str]] = sorted(
    ((ns, p) for p, ns in PREFIXES.items() if p != ""),
    key=lambda item: -len(item[0]),
)

_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\t": "\\t"}
_UNESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}

# Conservative local-name alphabet; anything else falls back to <full IRI>.
_LOCAL_OK = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-."
)


def render_term(term: Term) -> str:
    """Canonical text for a term: prefixed name, <IRI>, or quoted literal."""
    if term.kind == IRI:
        return _render_iri(term.lexical)
    out = ['"']
    for ch in term.lexical:
        out.append(_ESCAPES.get(ch, ch))
    out.append('"')
    if term.datatype is not None:
        out.append("^^")
        out.append(_render_iri(term.datatype))
    return "".join(out)


def _render_iri(iri: str) -> str:
    for ns, prefix in _NS_TO_PREFIX:
        if iri.startswith(ns):
            local = iri[len(ns):]
            if local and all(c in _LOCAL_OK for c in local):
                return f"{prefix}:{local}"
    return f"<{iri}>"


class _Scanner:
    """Cursor over one input line; reports errors with byte columns."""

    def __init__(self, line: str, lineno: int):
        self.line = line
        self.lineno = lineno
        self.pos = 0

    def error(self, message: str) -> ParseError:
        byte_col = len(self.line[: self.pos].encode("utf-8"))
        return ParseError(self.lineno, byte_col, message)

    def at_end(self) -> bool:
        return self.pos >= len(self.line)

    def peek(self) -> str:
        return self.line[self.pos] if self.pos < len(self.line) else ""

    def skip_ws(self):
        while not self.at_end() and self.line[self.pos] in " \t\r":
            self.pos += 1

    def require_ws(self):
        if self.at_end() or self.line[self.pos] not in " \t\r":
            raise self.error("expected whitespace between terms")
        self.skip_ws()

    def parse_term(self, allow_literal: bool) -> Term:
        ch = self.peek()
        if ch == "<":
            return Term.iri(self._parse_angle_iri())
        if ch == '"':
            if not allow_literal:
                raise self.error("literal not allowed in this position")
            return self._parse_literal()
        if self.line.startswith("_:", self.pos):
            raise self.error("blank nodes are not supported")
        return Term.iri(self._parse_prefixed())

    def _parse_angle_iri(self) -> str:
        start = self.pos
        self.pos += 1  # consume '<'
        end = self.line.find(">", self.pos)
        if end < 0:
            raise self.error("unterminated IRI (missing '>')")
        iri = self.line[self.pos:end]
        if not iri:
            self.pos = start
            raise self.error("empty IRI")
        if any(c.isspace() for c in iri) or "<" in iri or '"' in iri:
            raise self.error("illegal character inside IRI")
        self.pos = end + 1
        return iri

    def _parse_prefixed(self) -> str:
        start = self.pos
        colon = -1
        while self.pos < len(self.line):
            c = self.line[self.pos]
            if c == ":":
                colon = self.pos
                self.pos += 1
                break
            if c in " \t\r" or not (c.isalnum() or c in "_-."):
                break
            self.pos += 1
        if colon < 0:
            self.pos = start
            raise self.error("expected an IRI (<...> or prefix:local)")
        prefix = self.line[start:colon]
        if prefix not in PREFIXES:
            self.pos = start
            raise self.error(f"unknown prefix {prefix + ':'!r}")
        local_start = self.pos
        while self.pos < len(self.line) and self.line[self.pos] in _LOCAL_OK:
            self.pos += 1
        local = self.line[local_start:self.pos]
        if not local:
            self.pos = start
            raise self.error("empty local name after prefix")
        return PREFIXES[prefix] + local

    def _parse_literal(self) -> Term:
        self.pos += 1  # consume opening quote
        chars: list[str] = []
        while True:
            if self.at_end():
                raise self.error("unterminated literal")
            c = self.line[self.pos]
            if c == '"':
                self.pos += 1
                break
            if c == "\\":
                if self.pos + 1 >= len(self.line):
                    raise self.error("dangling escape at end of line")
                esc = self.line[self.pos + 1]
                if esc not in _UNESCAPES:
                    raise self.error(f"unsupported escape '\\{esc}'")
                chars.append(_UNESCAPES[esc])
                self.pos += 2
                continue
            chars.append(c)
            self.pos += 1
        datatype = None
        if self.line.startswith("^^", self.pos):
            self.pos += 2
            if self.peek() == "<":
                datatype = self._parse_angle_iri()
            else:
                datatype = self._parse_prefixed()
        return Term.literal("".join(chars), datatype)


def parse_document(source: Union[str, bytes, IO]) -> KnowledgeGraph:
    """Parse an N-Triples-subset document into a frozen graph.

    Accepts a string, raw bytes (decoded as UTF-8; bad encodings become
    ParseError), or a text stream. Duplicate lines merge by set semantics.
    """
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            line_no = source[: exc.start].count(b"\n") + 1
            col = exc.start - (source.rfind(b"\n", 0, exc.start) + 1)
            raise ParseError(line_no, col, f"invalid UTF-8: {exc.reason}") from None
    if isinstance(source, str):
        lines: Iterable[str] = io.StringIO(source)
    else:
        lines = source

    kg = KnowledgeGraph()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        sc = _Scanner(line, lineno)
        sc.skip_ws()
        if sc.at_end() or sc.peek() == "#":
            continue
        subj = sc.parse_term(allow_literal=False)
        sc.require_ws()
        pred = sc.parse_term(allow_literal=False)
        sc.require_ws()
        obj = sc.parse_term(allow_literal=True)
        sc.skip_ws()
        if sc.peek() != ".":
            raise sc.error("expected terminal '.'")
        sc.pos += 1
        sc.skip_ws()
        if not sc.at_end():
            raise sc.error("trailing content after '.'")
        kg.insert_terms(subj, pred, obj)
    return kg.freeze()


def parse_term_text(text: str) -> Term:
    """Parse a single rendered term (used by the embedding file format)."""
    sc = _Scanner(text, 1)
    sc.skip_ws()
    term = sc.parse_term(allow_literal=True)
    sc.skip_ws()
    if not sc.at_end():
        raise sc.error("trailing content after term")
    return term


def split_term_prefix(text: str) -> tuple[Term, str]:
    """Parse a leading rendered term and return it with the remaining text."""
    sc = _Scanner(text, 1)
    sc.skip_ws()
    term = sc.parse_term(allow_literal=True)
    return term, text[sc.pos:]


def serialize_document(kg: KnowledgeGraph) -> str:
    """Canonical serialization: sorted unique lines, one triple each."""
    kg.require_frozen()
    rendered = sorted(
        (render_term(s), render_term(p), render_term(o)) for s, p, o in kg.term_triples()
    )
    return "".join(f"{s} {p} {o} .\n" for s, p, o in rendered)
