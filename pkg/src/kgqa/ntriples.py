"""N-Triples parsing and canonical serialization.

Line-oriented parser for the W3C N-Triples grammar. Strict mode raises on the
first malformed line; lenient mode skips malformed lines and records one
ParseError per skipped line. The serializer emits canonical N-Triples: UTF-8,
one statement per line, statements in lexicographic order, blank node labels
renamed to a deterministic fresh sequence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

from .terms import BLANK, IRI, LITERAL, Term, TermError, Triple, blank, iri, literal

_BLANK_LABEL_RE = re.compile(r"[A-Za-z0-9_À-￿][A-Za-z0-9_.\-À-￿]*")
_LANGTAG_BODY_RE = re.compile(r"[A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*")
# Characters an IRIREF may not contain unescaped.
_IRI_FORBIDDEN = set('<>"{}|^`\\') | {chr(c) for c in range(0x21)}
_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


@dataclass(frozen=True, slots=True)
class ParseError:
    """One recoverable parse failure: 1-based line, 1-based column, reason."""

    line: int
    column: int
    reason: str


class SyntaxAbort(ValueError):
    """Strict-mode parse failure; carries the offending position."""

    def __init__(self, error: ParseError):
        super().__init__(f"line {error.line}, column {error.column}: {error.reason}")
        self.error = error


class _LineCursor:
    """Scanner over a single statement line."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, reason: str) -> ParseError:
        return ParseError(self.line_no, self.pos + 1, reason)

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def _decode_uchar(self) -> str:
        # self.pos sits on the backslash
        start = self.pos
        if self.pos + 1 >= len(self.text):
            raise SyntaxAbort(self.error("truncated escape sequence"))
        marker = self.text[self.pos + 1]
        width = 4 if marker == "u" else 8 if marker == "U" else 0
        if width == 0:
            raise SyntaxAbort(self.error(f"invalid escape \\{marker}"))
        hexpart = self.text[self.pos + 2 : self.pos + 2 + width]
        if len(hexpart) != width or not all(c in "0123456789abcdefABCDEF" for c in hexpart):
            raise SyntaxAbort(self.error("malformed \\u escape"))
        code = int(hexpart, 16)
        if 0xD800 <= code <= 0xDFFF or code > 0x10FFFF:
            self.pos = start
            raise SyntaxAbort(self.error(f"escape U+{code:04X} is not a valid scalar value"))
        self.pos += 2 + width
        return chr(code)

    def read_iriref(self) -> Term:
        if self.peek() != "<":
            raise SyntaxAbort(self.error("expected '<'"))
        self.pos += 1
        out: List[str] = []
        while True:
            if self.eof():
                raise SyntaxAbort(self.error("unterminated IRI"))
            ch = self.text[self.pos]
            if ch == ">":
                self.pos += 1
                break
            if ch == "\\":
                out.append(self._decode_uchar())
                continue
            if ch in _IRI_FORBIDDEN:
                raise SyntaxAbort(self.error(f"character {ch!r} not allowed in IRI"))
            out.append(ch)
            self.pos += 1
        value = "".join(out)
        try:
            return iri(value)
        except TermError as exc:
            raise SyntaxAbort(self.error(str(exc))) from None

    def read_blank(self) -> Term:
        if not self.text.startswith("_:", self.pos):
            raise SyntaxAbort(self.error("expected '_:'"))
        m = _BLANK_LABEL_RE.match(self.text, self.pos + 2)
        if not m:
            raise SyntaxAbort(self.error("malformed blank node label"))
        label = m.group(0)
        if label.endswith("."):
            label = label.rstrip(".")
            if not label:
                raise SyntaxAbort(self.error("malformed blank node label"))
        self.pos += 2 + len(label)
        return blank(label)

    def read_literal(self) -> Term:
        if self.peek() != '"':
            raise SyntaxAbort(self.error("expected '\"'"))
        self.pos += 1
        out: List[str] = []
        while True:
            if self.eof():
                raise SyntaxAbort(self.error("unterminated string literal"))
            ch = self.text[self.pos]
            if ch == '"':
                self.pos += 1
                break
            if ch in "\n\r":
                raise SyntaxAbort(self.error("newline in string literal"))
            if ch == "\\":
                nxt = self.text[self.pos + 1] if self.pos + 1 < len(self.text) else ""
                if nxt in _ECHAR:
                    out.append(_ECHAR[nxt])
                    self.pos += 2
                    continue
                out.append(self._decode_uchar())
                continue
            out.append(ch)
            self.pos += 1
        lexical = "".join(out)
        if self.peek() == "@":
            m = _LANGTAG_BODY_RE.match(self.text, self.pos + 1)
            if not m:
                raise SyntaxAbort(self.error("malformed language tag"))
            self.pos += 1 + len(m.group(0))
            return literal(lexical, language=m.group(0))
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            dt = self.read_iriref()
            return literal(lexical, datatype=dt.value)
        return literal(lexical)

    def read_subject(self) -> Term:
        ch = self.peek()
        if ch == "<":
            return self.read_iriref()
        if ch == "_":
            return self.read_blank()
        raise SyntaxAbort(self.error("expected IRI or blank node as subject"))

    def read_object(self) -> Term:
        ch = self.peek()
        if ch == "<":
            return self.read_iriref()
        if ch == "_":
            return self.read_blank()
        if ch == '"':
            return self.read_literal()
        raise SyntaxAbort(self.error("expected IRI, blank node or literal as object"))


def _parse_line(text: str, line_no: int) -> Optional[Triple]:
    cur = _LineCursor(text, line_no)
    cur.skip_ws()
    if cur.eof() or cur.peek() == "#":
        return None
    subject = cur.read_subject()
    cur.skip_ws()
    predicate = cur.read_iriref()
    cur.skip_ws()
    obj = cur.read_object()
    cur.skip_ws()
    if cur.peek() != ".":
        raise SyntaxAbort(cur.error("expected '.' after object"))
    cur.pos += 1
    cur.skip_ws()
    if not cur.eof() and cur.peek() != "#":
        raise SyntaxAbort(cur.error("trailing content after '.'"))
    return Triple(subject, predicate, obj)


def parse(data: Union[bytes, str], mode: str = "strict") -> Tuple[List[Triple], List[ParseError]]:
    """Parse an N-Triples document into triples in input order, duplicates kept.

    Strict mode raises SyntaxAbort at the first malformed line. Lenient mode
    skips each malformed line and records exactly one ParseError for it.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"unknown parse mode {mode!r}")
    if isinstance(data, bytes):
        text = data.decode("utf-8")
    else:
        text = data
    triples: List[Triple] = []
    errors: List[ParseError] = []
    for line_no, line in enumerate(text.split("\n"), start=1):
        if line.endswith("\r"):
            line = line[:-1]
        try:
            t = _parse_line(line, line_no)
        except SyntaxAbort as exc:
            if mode == "strict":
                raise
            errors.append(exc.error)
            continue
        if t is not None:
            triples.append(t)
    return triples, errors


def _term_text(term: Term) -> str:
    if term.kind == IRI:
        return "<" + _escape_iri(term.value) + ">"
    if term.kind == BLANK:
        return "_:" + term.value
    body = '"' + _escape_string(term.value) + '"'
    if term.language is not None:
        return body + "@" + term.language
    if term.datatype is not None:
        return body + "^^<" + _escape_iri(term.datatype) + ">"
    return body


def _escape_iri(value: str) -> str:
    out = []
    for ch in value:
        if ch in _IRI_FORBIDDEN:
            code = ord(ch)
            out.append(f"\\u{code:04X}" if code <= 0xFFFF else f"\\U{code:08X}")
        else:
            out.append(ch)
    return "".join(out)


def _escape_string(value: str) -> str:
    out = []
    for ch in value:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        else:
            out.append(ch)
    return "".join(out)


def statement_text(t: Triple) -> str:
    return f"{_term_text(t.subject)} {_term_text(t.predicate)} {_term_text(t.object)} ."


def _erased_key(t: Triple) -> str:
    """Statement text with blank labels erased, for label-independent ordering."""
    parts = []
    for term in (t.subject, t.predicate, t.object):
        parts.append("_:" if term.kind == BLANK else _term_text(term))
    return " ".join(parts)


def canonicalize_blank_labels(triples: Iterable[Triple]) -> List[Triple]:
    """Rename blank node labels to b0, b1, ... deterministically.

    Labels are assigned by first appearance along a label-erased sort of the
    statements, so the renaming is a fixpoint: re-parsing a canonically
    serialized document and canonicalizing again is the identity.
    """
    items = list(triples)
    order = sorted(items, key=lambda t: (_erased_key(t), statement_text(t)))
    mapping: dict[str, str] = {}
    for t in order:
        for term in (t.subject, t.object):
            if term.kind == BLANK and term.value not in mapping:
                mapping[term.value] = f"b{len(mapping)}"

    def rename(term: Term) -> Term:
        if term.kind == BLANK:
            return blank(mapping[term.value])
        return term

    return [Triple(rename(t.subject), t.predicate, rename(t.object)) for t in items]


def serialize(triples: Iterable[Triple]) -> str:
    """Canonical N-Triples: sorted unique statements, one per line, LF endings."""
    lines = sorted({statement_text(t) for t in triples})
    return "".join(line + "\n" for line in lines)
