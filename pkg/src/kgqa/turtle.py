"""Turtle parsing (core grammar).

Covers prefixes and base (both @-directives and the SPARQL-style keywords),
prefixed names, the 'a' keyword, predicate and object lists, blank node
property lists, collections, and quoted / numeric / boolean literals. Named
graphs (TriG) and N-Quads are out of scope.

Lenient mode recovers per statement: on error the parser records a ParseError
and skips ahead to the next top-level '.' before continuing.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple, Union
from urllib.parse import urljoin

from .ntriples import ParseError, SyntaxAbort
from .terms import (
    RDF_FIRST,
    RDF_NIL,
    RDF_REST,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    Term,
    TermError,
    Triple,
    blank,
    iri,
    literal,
)

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_IRI_FORBIDDEN = set('<>"{}|^`\\') | {chr(c) for c in range(0x21)}
_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_PN_LOCAL_ESCAPABLE = set("_~.-!$&'()*+,;=/?#@%")

_NUMBER_RE = re.compile(
    r"[+-]?(?:\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
)
_PNAME_PREFIX_RE = re.compile(r"(?:[A-Za-zÀ-￿][A-Za-z0-9_.\-À-￿]*)?:")
_BLANK_LABEL_RE = re.compile(r"_:[A-Za-z0-9_À-￿][A-Za-z0-9_.\-À-￿]*")
_LANGTAG_RE = re.compile(r"@[A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*")
_BAREWORD_RE = re.compile(r"[A-Za-z]+")


class _Tokens:
    """Character-level scanner with line/column tracking."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _linecol(self, pos: Optional[int] = None) -> Tuple[int, int]:
        p = self.pos if pos is None else pos
        line = self.text.count("\n", 0, p) + 1
        last_nl = self.text.rfind("\n", 0, p)
        return line, p - last_nl

    def error(self, reason: str, pos: Optional[int] = None) -> SyntaxAbort:
        line, col = self._linecol(pos)
        return SyntaxAbort(ParseError(line, col, reason))

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def skip_ws(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self.pos += 1
            elif ch == "#":
                nl = self.text.find("\n", self.pos)
                self.pos = len(self.text) if nl < 0 else nl
            else:
                return

    def peek(self, offset: int = 0) -> str:
        p = self.pos + offset
        return self.text[p] if p < len(self.text) else ""

    def startswith(self, prefix: str) -> bool:
        return self.text.startswith(prefix, self.pos)

    def match_keyword(self, word: str) -> bool:
        """Case-insensitive bare keyword (PREFIX/BASE) at the cursor."""
        end = self.pos + len(word)
        if self.text[self.pos : end].lower() != word.lower():
            return False
        if end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
            return False
        self.pos = end
        return True

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if not self.startswith(ch):
            raise self.error(f"expected {ch!r}")
        self.pos += len(ch)

    def _decode_uchar(self) -> str:
        marker = self.peek(1)
        width = 4 if marker == "u" else 8 if marker == "U" else 0
        if width == 0:
            raise self.error(f"invalid escape \\{marker}")
        hexpart = self.text[self.pos + 2 : self.pos + 2 + width]
        if len(hexpart) != width or not all(c in "0123456789abcdefABCDEF" for c in hexpart):
            raise self.error("malformed \\u escape")
        code = int(hexpart, 16)
        if 0xD800 <= code <= 0xDFFF or code > 0x10FFFF:
            raise self.error(f"escape U+{code:04X} is not a valid scalar value")
        self.pos += 2 + width
        return chr(code)

    def read_iriref_raw(self) -> str:
        # cursor on '<'
        self.pos += 1
        out: List[str] = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated IRI")
            ch = self.text[self.pos]
            if ch == ">":
                self.pos += 1
                return "".join(out)
            if ch == "\\":
                out.append(self._decode_uchar())
                continue
            if ch in _IRI_FORBIDDEN:
                raise self.error(f"character {ch!r} not allowed in IRI")
            out.append(ch)
            self.pos += 1

    def read_string(self) -> str:
        quote = self.peek()
        if self.startswith(quote * 3):
            return self._read_long_string(quote)
        self.pos += 1
        out: List[str] = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated string literal")
            ch = self.text[self.pos]
            if ch == quote:
                self.pos += 1
                return "".join(out)
            if ch in "\n\r":
                raise self.error("newline in short string literal")
            if ch == "\\":
                nxt = self.peek(1)
                if nxt in _ECHAR:
                    out.append(_ECHAR[nxt])
                    self.pos += 2
                    continue
                out.append(self._decode_uchar())
                continue
            out.append(ch)
            self.pos += 1

    def _read_long_string(self, quote: str) -> str:
        self.pos += 3
        out: List[str] = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated long string literal")
            ch = self.text[self.pos]
            if ch == quote:
                run = 0
                while self.peek(run) == quote:
                    run += 1
                if run >= 3:
                    # the final three quotes close; any earlier ones are content
                    out.append(quote * (run - 3))
                    self.pos += run
                    return "".join(out)
                out.append(quote * run)
                self.pos += run
                continue
            if ch == "\\":
                nxt = self.peek(1)
                if nxt in _ECHAR:
                    out.append(_ECHAR[nxt])
                    self.pos += 2
                    continue
                out.append(self._decode_uchar())
                continue
            out.append(ch)
            self.pos += 1

    def read_pname(self) -> Tuple[str, str]:
        """Prefixed name at the cursor -> (prefix, local), unescaped local."""
        m = _PNAME_PREFIX_RE.match(self.text, self.pos)
        if not m:
            raise self.error("expected prefixed name")
        prefix = m.group(0)[:-1]
        self.pos = m.end()
        out: List[str] = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\":
                nxt = self.peek(1)
                if nxt in _PN_LOCAL_ESCAPABLE:
                    out.append(nxt)
                    self.pos += 2
                    continue
                raise self.error(f"invalid local name escape \\{nxt}")
            if ch.isalnum() or ch in "_-.%·" or ord(ch) >= 0xC0:
                out.append(ch)
                self.pos += 1
                continue
            break
        # trailing dots belong to statement punctuation, not the local name
        while out and out[-1] == ".":
            out.pop()
            self.pos -= 1
        return prefix, "".join(out)


class _Parser:
    def __init__(self, text: str, base_iri: Optional[str], mode: str):
        self.tk = _Tokens(text)
        self.base = base_iri
        self.mode = mode
        self.prefixes: dict[str, str] = {}
        self.triples: List[Triple] = []
        self.errors: List[ParseError] = []
        self.label_map: dict[str, Term] = {}
        self._fresh = 0

    # -- term helpers -------------------------------------------------------

    def fresh_blank(self) -> Term:
        self._fresh += 1
        return blank(f"gen{self._fresh}")

    def doc_blank(self, label: str) -> Term:
        if label not in self.label_map:
            self.label_map[label] = blank(f"doc{len(self.label_map)}")
        return self.label_map[label]

    def resolve_iri(self, raw: str) -> Term:
        if _SCHEME_RE.match(raw):
            value = raw
        else:
            if self.base is None:
                raise self.tk.error(f"relative IRI {raw!r} without a base")
            value = urljoin(self.base, raw)
        try:
            return iri(value)
        except TermError as exc:
            raise self.tk.error(str(exc)) from None

    def expand_pname(self, prefix: str, local: str) -> Term:
        if prefix not in self.prefixes:
            raise self.tk.error(f"undeclared prefix '{prefix}'")
        try:
            return iri(self.prefixes[prefix] + local)
        except TermError as exc:
            raise self.tk.error(str(exc)) from None

    # -- grammar ------------------------------------------------------------

    def parse_document(self) -> None:
        while not self.tk.eof():
            start = self.tk.pos
            emitted = len(self.triples)
            try:
                self.parse_statement()
            except SyntaxAbort as exc:
                if self.mode == "strict":
                    raise
                self.errors.append(exc.error)
                del self.triples[emitted:]  # drop the failed statement's partial output
                self.recover(start)

    def recover(self, failed_at: int) -> None:
        """Skip to just past the next top-level '.' and resume."""
        if self.tk.pos <= failed_at:
            self.tk.pos = failed_at + 1
        depth = 0
        while self.tk.pos < len(self.tk.text):
            ch = self.tk.text[self.tk.pos]
            if ch == "#":
                nl = self.tk.text.find("\n", self.tk.pos)
                self.tk.pos = len(self.tk.text) if nl < 0 else nl
                continue
            if ch in "\"'":
                try:
                    self.tk.read_string()
                except SyntaxAbort:
                    self.tk.pos = len(self.tk.text)
                continue
            if ch == "<":
                gt = self.tk.text.find(">", self.tk.pos)
                self.tk.pos = len(self.tk.text) if gt < 0 else gt + 1
                continue
            if ch in "[(":
                depth += 1
            elif ch in "])":
                depth = max(0, depth - 1)
            elif ch == "." and depth == 0:
                self.tk.pos += 1
                return
            self.tk.pos += 1

    def parse_statement(self) -> None:
        tk = self.tk
        tk.skip_ws()
        if tk.startswith("@prefix"):
            tk.pos += len("@prefix")
            self.parse_prefix(directive=True)
            return
        if tk.startswith("@base"):
            tk.pos += len("@base")
            self.parse_base(directive=True)
            return
        save = tk.pos
        if tk.match_keyword("prefix") and self._directive_follows():
            self.parse_prefix(directive=False)
            return
        tk.pos = save
        if tk.match_keyword("base") and self._directive_follows():
            self.parse_base(directive=False)
            return
        tk.pos = save
        self.parse_triples()

    def _directive_follows(self) -> bool:
        self.tk.skip_ws()
        return self.tk.peek() in "<" or bool(_PNAME_PREFIX_RE.match(self.tk.text, self.tk.pos))

    def parse_prefix(self, directive: bool) -> None:
        tk = self.tk
        tk.skip_ws()
        m = _PNAME_PREFIX_RE.match(tk.text, tk.pos)
        if not m:
            raise tk.error("expected prefix declaration")
        prefix = m.group(0)[:-1]
        tk.pos = m.end()
        tk.skip_ws()
        if tk.peek() != "<":
            raise tk.error("expected IRI in prefix declaration")
        raw = tk.read_iriref_raw()
        resolved = self.resolve_iri(raw)
        self.prefixes[prefix] = resolved.value
        if directive:
            tk.expect(".")

    def parse_base(self, directive: bool) -> None:
        tk = self.tk
        tk.skip_ws()
        if tk.peek() != "<":
            raise tk.error("expected IRI in base declaration")
        raw = tk.read_iriref_raw()
        self.base = urljoin(self.base, raw) if self.base else raw
        if not _SCHEME_RE.match(self.base):
            raise tk.error("base IRI is not absolute")
        if directive:
            tk.expect(".")

    def parse_triples(self) -> None:
        tk = self.tk
        tk.skip_ws()
        if tk.peek() == "[":
            subject = self.parse_blank_node_property_list()
            tk.skip_ws()
            if tk.peek() != ".":
                self.parse_predicate_object_list(subject)
        else:
            subject = self.parse_subject()
            self.parse_predicate_object_list(subject)
        tk.expect(".")

    def parse_subject(self) -> Term:
        tk = self.tk
        tk.skip_ws()
        ch = tk.peek()
        if ch == "<":
            return self.resolve_iri(tk.read_iriref_raw())
        if ch == "(":
            return self.parse_collection()
        if tk.startswith("_:"):
            m = _BLANK_LABEL_RE.match(tk.text, tk.pos)
            if not m:
                raise tk.error("malformed blank node label")
            tk.pos = m.end()
            return self.doc_blank(m.group(0)[2:])
        if _PNAME_PREFIX_RE.match(tk.text, tk.pos):
            prefix, local = tk.read_pname()
            return self.expand_pname(prefix, local)
        raise tk.error("expected subject")

    def parse_predicate_object_list(self, subject: Term) -> None:
        tk = self.tk
        while True:
            predicate = self.parse_verb()
            self.parse_object_list(subject, predicate)
            tk.skip_ws()
            if tk.peek() == ";":
                tk.pos += 1
                tk.skip_ws()
                # trailing ';' before '.' or ']' is legal
                if tk.peek() in ".]" or tk.eof():
                    return
                continue
            return

    def parse_verb(self) -> Term:
        tk = self.tk
        tk.skip_ws()
        ch = tk.peek()
        if ch == "<":
            t = self.resolve_iri(tk.read_iriref_raw())
        elif ch == "a" and not (tk.peek(1).isalnum() or tk.peek(1) in "_-.:"):
            tk.pos += 1
            return iri(RDF_TYPE)
        elif _PNAME_PREFIX_RE.match(tk.text, tk.pos):
            prefix, local = tk.read_pname()
            t = self.expand_pname(prefix, local)
        else:
            raise tk.error("expected predicate")
        if t.kind != "iri":
            raise tk.error("predicate must be an IRI")
        return t

    def parse_object_list(self, subject: Term, predicate: Term) -> None:
        while True:
            obj = self.parse_object()
            self.triples.append(Triple(subject, predicate, obj))
            self.tk.skip_ws()
            if self.tk.peek() == ",":
                self.tk.pos += 1
                continue
            return

    def parse_object(self) -> Term:
        tk = self.tk
        tk.skip_ws()
        ch = tk.peek()
        if ch == "<":
            return self.resolve_iri(tk.read_iriref_raw())
        if ch == "[":
            return self.parse_blank_node_property_list()
        if ch == "(":
            return self.parse_collection()
        if ch in "\"'":
            return self.parse_rdf_literal()
        if tk.startswith("_:"):
            m = _BLANK_LABEL_RE.match(tk.text, tk.pos)
            if not m:
                raise tk.error("malformed blank node label")
            tk.pos = m.end()
            return self.doc_blank(m.group(0)[2:])
        if ch in "+-.0123456789":
            return self.parse_numeric_literal()
        if tk.startswith("true") or tk.startswith("false"):
            m = _BAREWORD_RE.match(tk.text, tk.pos)
            word = m.group(0) if m else ""
            if word in ("true", "false"):
                tk.pos += len(word)
                return literal(word, datatype=XSD_BOOLEAN)
        if _PNAME_PREFIX_RE.match(tk.text, tk.pos):
            prefix, local = tk.read_pname()
            return self.expand_pname(prefix, local)
        raise tk.error("expected object")

    def parse_rdf_literal(self) -> Term:
        tk = self.tk
        lexical = tk.read_string()
        if tk.peek() == "@":
            m = _LANGTAG_RE.match(tk.text, tk.pos)
            if not m:
                raise tk.error("malformed language tag")
            tk.pos = m.end()
            return literal(lexical, language=m.group(0)[1:])
        if tk.startswith("^^"):
            tk.pos += 2
            tk.skip_ws()
            if tk.peek() == "<":
                dt = self.resolve_iri(tk.read_iriref_raw())
            elif _PNAME_PREFIX_RE.match(tk.text, tk.pos):
                prefix, local = tk.read_pname()
                dt = self.expand_pname(prefix, local)
            else:
                raise tk.error("expected datatype IRI")
            return literal(lexical, datatype=dt.value)
        return literal(lexical)

    def parse_numeric_literal(self) -> Term:
        tk = self.tk
        m = _NUMBER_RE.match(tk.text, tk.pos)
        if not m:
            raise tk.error("malformed numeric literal")
        lexical = m.group(0)
        tk.pos = m.end()
        if "e" in lexical or "E" in lexical:
            dtype = XSD_DOUBLE
        elif "." in lexical:
            dtype = XSD_DECIMAL
        else:
            dtype = XSD_INTEGER
        return literal(lexical, datatype=dtype)

    def parse_blank_node_property_list(self) -> Term:
        tk = self.tk
        tk.expect("[")
        node = self.fresh_blank()
        tk.skip_ws()
        if tk.peek() == "]":
            tk.pos += 1
            return node
        self.parse_predicate_object_list(node)
        tk.expect("]")
        return node

    def parse_collection(self) -> Term:
        tk = self.tk
        tk.expect("(")
        items: List[Term] = []
        while True:
            tk.skip_ws()
            if tk.peek() == ")":
                tk.pos += 1
                break
            if tk.eof():
                raise tk.error("unterminated collection")
            items.append(self.parse_object())
        if not items:
            return iri(RDF_NIL)
        head = self.fresh_blank()
        node = head
        for idx, item in enumerate(items):
            self.triples.append(Triple(node, iri(RDF_FIRST), item))
            if idx + 1 < len(items):
                nxt = self.fresh_blank()
                self.triples.append(Triple(node, iri(RDF_REST), nxt))
                node = nxt
            else:
                self.triples.append(Triple(node, iri(RDF_REST), iri(RDF_NIL)))
        return head


def parse(
    data: Union[bytes, str],
    base_iri: Optional[str] = None,
    mode: str = "strict",
) -> Tuple[List[Triple], List[ParseError]]:
    """Parse a Turtle document into triples in document order, duplicates kept."""
    if mode not in ("strict", "lenient"):
        raise ValueError(f"unknown parse mode {mode!r}")
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    parser = _Parser(text, base_iri, mode)
    parser.parse_document()
    return parser.triples, parser.errors
