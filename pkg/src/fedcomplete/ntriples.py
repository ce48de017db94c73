"""Reader and writer for a line-oriented N-Triples subset.

One triple per line, `.` terminator, `#` comment lines, UTF-8 input.
Parse errors carry the 1-based line and column where scanning failed.
The serializer emits one sorted line per triple with LF endings, so
`parse(serialize(g))` reproduces the triple set exactly.
"""

from __future__ import annotations

from typing import Optional, Union

from .errors import ParseError
from .rdf import BlankNode, Graph, Iri, Literal, RDF_LANGSTRING, Term, Triple, serialize_term

_ECHAR = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_BNODE_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-")


class TermScanner:
    """Scans RDF terms from a single line of text, tracking the column."""

    def __init__(self, text: str, line_no: int, pos: int = 0):
        self.text = text
        self.line_no = line_no
        self.pos = pos

    def error(self, message: str, at: Optional[int] = None) -> ParseError:
        col = (self.pos if at is None else at) + 1
        return ParseError(message, self.line_no, col)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def scan_term(self) -> Term:
        c = self.peek()
        if c == "<":
            return self.scan_iri()
        if c == "_":
            return self.scan_blank_node()
        if c == '"':
            return self.scan_literal()
        if c == "":
            raise self.error("unexpected end of line, expected a term")
        raise self.error(f"unexpected character {c!r}, expected a term")

    def scan_iri(self) -> Iri:
        start = self.pos
        self.pos += 1  # consume '<'
        out: list[str] = []
        while True:
            if self.at_end():
                raise self.error("unterminated IRI", at=start)
            c = self.text[self.pos]
            if c == ">":
                self.pos += 1
                value = "".join(out)
                if not value:
                    raise self.error("empty IRI", at=start)
                if any(ch.isspace() for ch in value):
                    raise self.error("whitespace inside IRI", at=start)
                return Iri(value)
            if c in '<"':
                raise self.error(f"character {c!r} not allowed inside IRI")
            if c == "\\":
                out.append(self._scan_unicode_escape())
                continue
            out.append(c)
            self.pos += 1

    def scan_blank_node(self) -> BlankNode:
        start = self.pos
        if not self.text.startswith("_:", self.pos):
            raise self.error("expected '_:' to start a blank node", at=start)
        self.pos += 2
        label_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _BNODE_CHARS:
            self.pos += 1
        label = self.text[label_start : self.pos]
        if not label:
            raise self.error("empty blank node label", at=start)
        return BlankNode(label)

    def scan_literal(self) -> Literal:
        start = self.pos
        self.pos += 1  # consume '"'
        out: list[str] = []
        while True:
            if self.at_end():
                raise self.error("unterminated literal", at=start)
            c = self.text[self.pos]
            if c == '"':
                self.pos += 1
                break
            if c == "\\":
                esc_at = self.pos
                nxt = self.text[self.pos + 1] if self.pos + 1 < len(self.text) else ""
                if nxt in _ECHAR:
                    out.append(_ECHAR[nxt])
                    self.pos += 2
                elif nxt in ("u", "U"):
                    out.append(self._scan_unicode_escape())
                else:
                    raise self.error(f"invalid escape sequence '\\{nxt}'", at=esc_at)
                continue
            out.append(c)
            self.pos += 1
        lexical = "".join(out)
        if self.peek() == "@":
            self.pos += 1
            tag = self._scan_language_tag()
            return Literal(lexical, RDF_LANGSTRING, tag)
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            if self.peek() != "<":
                raise self.error("expected '<' after '^^'")
            datatype = self.scan_iri()
            return Literal(lexical, datatype.value)
        return Literal(lexical)

    def _scan_language_tag(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "-"
        ):
            self.pos += 1
        tag = self.text[start : self.pos]
        if not tag or tag.startswith("-") or tag.endswith("-") or tag[0].isdigit():
            raise self.error("invalid language tag", at=start)
        return tag

    def _scan_unicode_escape(self) -> str:
        esc_at = self.pos
        kind = self.text[self.pos + 1] if self.pos + 1 < len(self.text) else ""
        if kind not in ("u", "U"):
            raise self.error(f"invalid escape sequence '\\{kind}'", at=esc_at)
        width = 4 if kind == "u" else 8
        digits = self.text[self.pos + 2 : self.pos + 2 + width]
        if len(digits) != width or any(d not in "0123456789abcdefABCDEF" for d in digits):
            raise self.error(f"invalid \\{kind} escape, expected {width} hex digits", at=esc_at)
        code = int(digits, 16)
        if code > 0x10FFFF:
            raise self.error("unicode escape out of range", at=esc_at)
        self.pos += 2 + width
        return chr(code)


def _parse_line(text: str, line_no: int, bnode_scope: Optional[str]) -> Optional[Triple]:
    scanner = TermScanner(text, line_no)
    scanner.skip_ws()
    if scanner.at_end() or scanner.peek() == "#":
        return None

    subj_at = scanner.pos
    subject = scanner.scan_term()
    if isinstance(subject, Literal):
        raise scanner.error("literal in subject position", at=subj_at)

    scanner.skip_ws()
    pred_at = scanner.pos
    predicate = scanner.scan_term()
    if not isinstance(predicate, Iri):
        raise scanner.error("predicate must be an IRI", at=pred_at)

    scanner.skip_ws()
    obj = scanner.scan_term()

    scanner.skip_ws()
    if scanner.peek() != ".":
        raise scanner.error("missing terminating '.'")
    scanner.pos += 1
    scanner.skip_ws()
    if not scanner.at_end() and scanner.peek() != "#":
        raise scanner.error("unexpected content after terminating '.'")

    if bnode_scope is not None:
        if isinstance(subject, BlankNode):
            subject = BlankNode(f"{subject.label}_{bnode_scope}")
        if isinstance(obj, BlankNode):
            obj = BlankNode(f"{obj.label}_{bnode_scope}")
    return Triple(subject, predicate, obj)


def parse_ntriples(source: Union[str, bytes], bnode_scope: Optional[str] = None) -> Graph:
    """Parse N-Triples text into a Graph.

    `bnode_scope`, when given, suffixes every blank node label with
    `_<scope>` so labels from different files never collide.
    """
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc.reason}", 1, 1) from exc
    graph = Graph()
    for line_no, raw in enumerate(source.split("\n"), start=1):
        triple = _parse_line(raw.rstrip("\r"), line_no, bnode_scope)
        if triple is not None:
            graph.add(triple)
    return graph


def serialize_triple(triple: Triple) -> str:
    return (
        f"{serialize_term(triple.subject)} "
        f"{serialize_term(triple.predicate)} "
        f"{serialize_term(triple.object)} ."
    )


def serialize_ntriples(graph: Graph) -> str:
    """Canonical output: one line per triple, sorted, LF endings."""
    lines = sorted(serialize_triple(t) for t in graph)
    return "".join(line + "\n" for line in lines)
