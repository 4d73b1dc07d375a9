#!/usr/bin/env python3
"""Write the parser corpus under tests/corpus/.

Every file's expected triple count and error lines are hand-derived from the
document text (counted by eye, not by running the parser) so the manifest is
an independent oracle for the parser tests.
"""

import json
from pathlib import Path

CORPUS = Path(__file__).resolve().parent.parent / "tests" / "corpus"

# (filename, content, {format, strict_ok, triples, error_lines})
ENTRIES = []


def nt(name, content, triples, error_lines=(), strict_ok=None):
    ENTRIES.append((name, content, {
        "format": "ntriples",
        "strict_ok": strict_ok if strict_ok is not None else not error_lines,
        "triples": triples,
        "error_lines": list(error_lines),
    }))


def ttl(name, content, triples, error_lines=(), strict_ok=None):
    ENTRIES.append((name, content, {
        "format": "turtle",
        "strict_ok": strict_ok if strict_ok is not None else not error_lines,
        "triples": triples,
        "error_lines": list(error_lines),
    }))


EX = "http://ex.org/"

# -- valid N-Triples ----------------------------------------------------------

nt("empty.nt", "", 0)

nt("single.nt", f'<{EX}a> <{EX}p> "x" .\n', 1)

nt("duplicates.nt", (f'<{EX}a> <{EX}p> "x" .\n' * 3), 1)

nt("comments.nt",
   "# leading comment\n"
   "\n"
   f"<{EX}a> <{EX}p> <{EX}b> . # trailing comment\n"
   "   # indented comment\n"
   f"<{EX}b> <{EX}p> <{EX}c> .\n",
   2)

nt("literals.nt",
   f'<{EX}a> <{EX}plain> "simple" .\n'
   f'<{EX}a> <{EX}typed> "5"^^<http://www.w3.org/2001/XMLSchema#integer> .\n'
   f'<{EX}a> <{EX}lang> "hello"@en .\n'
   f'<{EX}a> <{EX}lang> "hallo"@de-AT .\n'
   f'<{EX}a> <{EX}empty> "" .\n',
   5)

nt("escapes.nt",
   f'<{EX}a> <{EX}p> "tab\\there" .\n'
   f'<{EX}a> <{EX}q> "newline\\nhere" .\n'
   f'<{EX}a> <{EX}r> "quote \\" and \\\\ and \\u00E9" .\n',
   3)

nt("blanks.nt",
   f"_:alpha <{EX}p> <{EX}a> .\n"
   f"_:alpha <{EX}q> _:beta .\n"
   f"<{EX}a> <{EX}r> _:beta .\n"
   f"_:gamma <{EX}p> \"v\" .\n",
   4)

nt("iris_unicode.nt",
   f"<{EX}caf\\u00E9> <{EX}p> <{EX}b> .\n"
   f"<{EX}x> <{EX}p> <{EX}caf\\u00E9> .\n",
   2)

nt("crlf.nt",
   f'<{EX}a> <{EX}p> "one" .\r\n'
   f'<{EX}b> <{EX}p> "two" .\r\n',
   2)

nt("labels.nt",
   f'<{EX}a> <http://www.w3.org/2000/01/rdf-schema#label> "Alpha"@en .\n'
   f'<{EX}a> <http://www.w3.org/2000/01/rdf-schema#label> "Alfa"@de .\n'
   f'<{EX}b> <http://schema.org/name> "Beta"@fr .\n'
   f'<{EX}c> <http://www.w3.org/2004/02/skos/core#prefLabel> "Gamma"@EN .\n',
   4)

nt("typed_instances.nt",
   f"<{EX}i1> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <{EX}Person> .\n"
   f"<{EX}i2> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <{EX}Person> .\n"
   f"<{EX}i3> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <{EX}Place> .\n"
   f"<{EX}i1> <{EX}knows> <{EX}i2> .\n"
   f"<{EX}i2> <{EX}near> <{EX}i3> .\n"
   f'<{EX}i3> <{EX}name> "Spot" .\n',
   6)

nt("reification.nt",
   f"<{EX}st> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
   "<http://www.w3.org/1999/02/22-rdf-syntax-ns#Statement> .\n"
   f"<{EX}st> <http://www.w3.org/1999/02/22-rdf-syntax-ns#subject> <{EX}a> .\n"
   f"<{EX}st> <http://www.w3.org/1999/02/22-rdf-syntax-ns#predicate> <{EX}p> .\n"
   f"<{EX}st> <http://www.w3.org/1999/02/22-rdf-syntax-ns#object> <{EX}b> .\n"
   f"<{EX}a> <{EX}p> <{EX}b> .\n",
   5)

nt("numbers.nt",
   f'<{EX}a> <{EX}count> "42"^^<http://www.w3.org/2001/XMLSchema#integer> .\n'
   f'<{EX}a> <{EX}score> "3.14"^^<http://www.w3.org/2001/XMLSchema#decimal> .\n'
   f'<{EX}a> <{EX}bad> "not-a-number"^^<http://www.w3.org/2001/XMLSchema#integer> .\n'
   f'<{EX}a> <{EX}when> "2024-02-30"^^<http://www.w3.org/2001/XMLSchema#date> .\n',
   4)

nt("mixed.nt",
   f"<{EX}s1> <{EX}p> <{EX}o1> .\n"
   f"<{EX}s2> <{EX}p> _:n0 .\n"
   f'_:n0 <{EX}q> "v1" .\n'
   f'<{EX}s3> <{EX}q> "v2"@en .\n'
   f"<{EX}s4> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <{EX}T> .\n"
   f'<{EX}s4> <{EX}r> "9"^^<http://www.w3.org/2001/XMLSchema#integer> .\n'
   f"<{EX}s5> <{EX}p> <{EX}o2> .\n"
   f"<{EX}s5> <{EX}p> <{EX}o3> .\n"
   f'<{EX}s6> <{EX}q> "" .\n'
   f"<{EX}s7> <{EX}p> <{EX}o1> .\n",
   10)

# -- malformed N-Triples (lenient counts; error lines hand-read) -----------------

nt("missing_dot.nt",
   f'<{EX}a> <{EX}p> "one" .\n'
   f'<{EX}b> <{EX}p> "two"\n'
   f'<{EX}c> <{EX}p> "three" .\n',
   2, error_lines=[2])

nt("bad_iri_space.nt",
   f"<{EX}a> <{EX}has space> <{EX}b> .\n"
   f"<{EX}a> <{EX}p> <{EX}b> .\n",
   1, error_lines=[1])

nt("bad_predicate_blank.nt",
   f"<{EX}a> _:p <{EX}b> .\n"
   f"<{EX}a> <{EX}p> <{EX}b> .\n",
   1, error_lines=[1])

nt("literal_subject.nt",
   f'"lit" <{EX}p> <{EX}b> .\n'
   f"<{EX}a> <{EX}p> <{EX}b> .\n",
   1, error_lines=[1])

nt("unterminated_literal.nt",
   f'<{EX}a> <{EX}p> "no closing quote .\n'
   f'<{EX}a> <{EX}p> "fine" .\n',
   1, error_lines=[1])

nt("bad_escape.nt",
   f'<{EX}a> <{EX}p> "bad \\q escape" .\n'
   f'<{EX}b> <{EX}p> "ok" .\n',
   1, error_lines=[1])

nt("bad_lang.nt",
   f'<{EX}a> <{EX}p> "x"@123 .\n'
   f'<{EX}a> <{EX}p> "x"@en .\n',
   1, error_lines=[1])

nt("relative_iri.nt",
   f"<relative/path> <{EX}p> <{EX}b> .\n"
   f"<{EX}a> <{EX}p> <{EX}b> .\n",
   1, error_lines=[1])

nt("garbage_lines.nt",
   f'<{EX}a> <{EX}p> "one" .\n'
   "this line is prose, not a triple\n"
   f'<{EX}b> <{EX}p> "two" .\n'
   "and another stray line\n",
   2, error_lines=[2, 4])

nt("truncated_triple.nt",
   f"<{EX}a> <{EX}p>\n"
   f"<{EX}a> <{EX}p> <{EX}b> .\n",
   1, error_lines=[1])

nt("bad_unicode_escape.nt",
   f'<{EX}a> <{EX}p> "\\uZZZZ" .\n'
   f'<{EX}a> <{EX}p> "ok" .\n',
   1, error_lines=[1])

nt("trailing_junk.nt",
   f'<{EX}a> <{EX}p> "x" . extra tokens\n'
   f'<{EX}b> <{EX}p> "y" .\n',
   1, error_lines=[1])

# -- valid Turtle ------------------------------------------------------------------

ttl("prefix_basic.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:p ex:b .\n"
    "ex:b ex:q \"v\" .\n",
    2)

ttl("base_relative.ttl",
    "@base <http://ex.org/dir/> .\n"
    "<a> <p> <../up> .\n"
    "<b> <p> <a> .\n",
    2)

ttl("semicolons_commas.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a a ex:Person ;\n"
    "    ex:knows ex:b , ex:c , ex:d ;\n"
    "    ex:name \"A\" .\n",
    5)

ttl("bnode_property_list.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:address [ ex:city \"Innsbruck\" ; ex:zip \"6020\" ] .\n",
    3)

ttl("collections.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:list (ex:x ex:y) .\n"
    "ex:b ex:empty () .\n",
    6)  # 1 + 2*(first+rest) + 1

ttl("numbers_booleans.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:i 42 ; ex:d 3.5 ; ex:e 1.0e3 ; ex:t true ; ex:f false .\n",
    5)

ttl("long_strings.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:text \"\"\"line one\nline two with \"quotes\"\"\"\" .\n"
    "ex:a ex:more '''single\nquoted''' .\n",
    2)

ttl("sparql_directives.ttl",
    "PREFIX ex: <http://ex.org/>\n"
    "BASE <http://ex.org/base/>\n"
    "ex:a ex:p <rel> .\n",
    1)

ttl("nested_bnodes.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:p [ ex:q [ ex:r \"deep\" ] ] .\n",
    3)

ttl("labels_languages.ttl",
    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a rdfs:label \"Alpha\"@en , \"Alfa\"@es , \"Alpha\"@de .\n",
    3)

# -- malformed Turtle ------------------------------------------------------------------

ttl("undeclared_prefix.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "zz:a ex:p ex:b .\n"
    "ex:c ex:p ex:d .\n",
    1, error_lines=[2])

ttl("missing_dot.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:p ex:b\n"
    "ex:c ex:p ex:d .\n",
    0, error_lines=[3], strict_ok=False)

ttl("relative_no_base.ttl",
    "<a> <http://ex.org/p> <http://ex.org/b> .\n"
    "<http://ex.org/c> <http://ex.org/p> <http://ex.org/d> .\n",
    1, error_lines=[1])

ttl("unterminated_string.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    'ex:a ex:p "never closed .\n'
    "ex:b ex:p ex:c .\n",
    0, error_lines=[2], strict_ok=False)

ttl("bad_token.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:p @@bad .\n"
    "ex:b ex:p ex:c .\n",
    1, error_lines=[2])

ttl("unclosed_bracket.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:p [ ex:q \"v\" .\n"
    "ex:b ex:p ex:c .\n",
    1, error_lines=[2], strict_ok=False)

ttl("unclosed_collection.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:p (ex:x ex:y .\n"
    "ex:b ex:p ex:c .\n",
    1, error_lines=[2], strict_ok=False)

ttl("recover_multi.ttl",
    "@prefix ex: <http://ex.org/> .\n"
    "ex:a ex:p ex:b .\n"
    "ex:bad ex:p zz:undeclared .\n"
    "ex:c ex:p ex:d .\n",
    2, error_lines=[3])


def main():
    CORPUS.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for name, content, meta in ENTRIES:
        (CORPUS / name).write_text(content, encoding="utf-8")
        manifest[name] = meta
    (CORPUS / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8",
    )
    print(f"wrote {len(ENTRIES)} corpus files")


if __name__ == "__main__":
    main()
