#!/usr/bin/env python3
"""Build the 300-triple fixture KG plus gold standard, schema and profile.

Every count is designed so the acceptance oracle can recompute each metric by
hand-style enumeration:

  instances:      30 Person + 10 Organization + the reified statement node
                  (typed rdf:Statement) = 41; 2 persons also typed Organization
  amount:         gold requires 82 -> instance_amount 41/82 = 1/2
  labels:         30 @en person labels, 10 @de org labels -> languages {en, de}
  birthDate:      functional; 31 statements, 1 subject doubled -> 1 violation
  age:            ranged xsd:integer; 20 statements, 2 plain strings -> 18/20
  semantic:       governed 31+20 = 51, violations 1+2 = 3 -> 48/51
  founded:        6 literals, 5 with invalid lexical forms (syntactic hits)
  notes:          "", "unknown", "n/a" and one real note -> 3 placeholder hits
  provenance:     12 of the distinct subjects carry dcterms:source
  interlinking:   10 of 40 instances owl:sameAs external; 2 internal ignored
  modified:       15 timestamps; 10 instances within the 365-day horizon
  reification:    exactly one quad -> 4 of 300 statements
  isbn (IFP):     10 statements, one value shared by 2 subjects -> 8/10
  blanks:         exactly 2 blank nodes among the terms
  gold entities:  20 expected, 18 present -> 9/10
  gold pairs:     20 email expectations, 16 present -> 4/5
  gold facts:     10 expected, 8 exact matches -> 4/5
  subjects:       60 IRI subjects, 8 opaque Q-ids -> self-descriptive 52/60
"""

import json
from pathlib import Path

from kgqa import ntriples
from kgqa.aggregate import uniform_profile
from kgqa.terms import (
    DCT_LICENSE,
    DCT_MODIFIED,
    DCT_SOURCE,
    OWL_SAME_AS,
    RDF_NS,
    RDF_TYPE,
    RDFS_LABEL,
    XSD_NS,
    Triple,
    blank,
    iri,
    literal,
)

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
KG = "http://kg.example.org/"
NOW_TEXT = "2025-06-01T00:00:00Z"


def k(name):
    return iri(KG + name)


def xsd(name):
    return XSD_NS + name


def build_triples():
    triples = []
    persons = [k(f"person_Alice{i}") for i in range(30)]
    orgs = [k(f"org_Acme{j}") for j in range(10)]

    # typing: 42 statements, 2 disjoint violations
    for p in persons:
        triples.append(Triple(p, iri(RDF_TYPE), k("Person")))
    for o in orgs:
        triples.append(Triple(o, iri(RDF_TYPE), k("Organization")))
    triples.append(Triple(persons[0], iri(RDF_TYPE), k("Organization")))
    triples.append(Triple(persons[1], iri(RDF_TYPE), k("Organization")))

    # labels: 40
    for i, p in enumerate(persons):
        triples.append(Triple(p, iri(RDFS_LABEL), literal(f"Alice {i}", language="en")))
    for j, o in enumerate(orgs):
        triples.append(Triple(o, iri(RDFS_LABEL), literal(f"Acme {j}", language="de")))

    # birthDate: 31 statements, person 0 doubled (functional violation)
    for i, p in enumerate(persons):
        day = (i % 27) + 1
        triples.append(Triple(p, k("birthDate"), literal(f"19{70 + i % 20}-03-{day:02d}", datatype=xsd("date"))))
    triples.append(Triple(persons[0], k("birthDate"), literal("1999-12-31", datatype=xsd("date"))))

    # age: 18 integers + 2 plain strings (range violations)
    ages = {}
    for i in range(18):
        ages[i] = 20 + i
        triples.append(Triple(persons[i], k("age"), literal(str(20 + i), datatype=xsd("integer"))))
    triples.append(Triple(persons[18], k("age"), literal("thirty-five")))
    triples.append(Triple(persons[19], k("age"), literal("forty-one")))

    # founded: 6 literals, 5 lexically invalid
    founded = [
        ("2024-02-30", xsd("date")),       # no such day
        ("abc", xsd("integer")),
        ("25:99", xsd("dateTime")),
        ("1then", xsd("gYear")),
        ("has space", xsd("anyURI")),
        ("1999", xsd("gYear")),            # valid
    ]
    for j, (value, dtype) in enumerate(founded):
        triples.append(Triple(orgs[j], k("founded"), literal(value, datatype=dtype)))

    # notes: 3 placeholder literals + 1 real one
    triples.append(Triple(orgs[6], k("note"), literal("")))
    triples.append(Triple(orgs[7], k("note"), literal("unknown")))
    triples.append(Triple(orgs[8], k("note"), literal("n/a")))
    triples.append(Triple(orgs[9], k("note"), literal("Audited in 2024")))

    # provenance on 12 subjects
    for p in persons[:10]:
        triples.append(Triple(p, iri(DCT_SOURCE), k("source_catalog")))
    triples.append(Triple(orgs[0], iri(DCT_SOURCE), k("source_catalog")))
    triples.append(Triple(orgs[1], iri(DCT_SOURCE), k("source_catalog")))

    # interlinking: 10 external + 2 internal (internal must not count)
    for i, p in enumerate(persons[:10]):
        triples.append(Triple(p, iri(OWL_SAME_AS), iri(f"http://external.example.com/p{i}")))
    triples.append(Triple(orgs[0], iri(OWL_SAME_AS), k("org_alias0")))
    triples.append(Triple(orgs[1], iri(OWL_SAME_AS), k("org_alias1")))

    # modification stamps: persons 0..9 fresh, orgs 0..4 stale
    triples.append(Triple(persons[0], iri(DCT_MODIFIED), literal(NOW_TEXT, datatype=xsd("dateTime"))))
    for i in range(1, 10):
        triples.append(Triple(
            persons[i], iri(DCT_MODIFIED),
            literal(f"2025-05-{i:02d}T00:00:00Z", datatype=xsd("dateTime")),
        ))
    for j in range(5):
        triples.append(Triple(
            orgs[j], iri(DCT_MODIFIED),
            literal("2023-01-01T00:00:00Z", datatype=xsd("dateTime")),
        ))

    # license
    triples.append(Triple(
        k("dataset"), iri(DCT_LICENSE),
        iri("https://creativecommons.org/licenses/by/4.0/"),
    ))

    # one reification quad
    triples.append(Triple(k("stmt1"), iri(RDF_TYPE), iri(RDF_NS + "Statement")))
    triples.append(Triple(k("stmt1"), iri(RDF_NS + "subject"), persons[0]))
    triples.append(Triple(k("stmt1"), iri(RDF_NS + "predicate"), k("age")))
    triples.append(Triple(k("stmt1"), iri(RDF_NS + "object"), literal("35", datatype=xsd("integer"))))

    # isbn: inverse functional, one collision across two subjects
    for n in range(10):
        value = "978-COLLIDE" if n < 2 else f"978-000000{n}"
        triples.append(Triple(k(f"book_{n}"), k("isbn"), literal(value)))

    # opaque-id subjects
    for n in range(8):
        triples.append(Triple(k(f"Q100{n}"), k("note"), literal(f"entry {n}")))

    # two blank nodes
    triples.append(Triple(blank("b0"), k("relatedTo"), persons[0]))
    triples.append(Triple(persons[1], k("relatedTo"), blank("b1")))

    # emails: gold expects 20, first 16 present
    for i in range(16):
        triples.append(Triple(persons[i], k("email"), literal(f"alice{i}@example.com", datatype=xsd("anyURI"))))

    # filler relations up to exactly 300 statements
    filler = []
    for step in (1, 2, 3):
        for i in range(30):
            filler.append(Triple(persons[i], k("knows"), persons[(i + step) % 30]))
    needed = 300 - len(triples)
    assert 0 <= needed <= len(filler), f"filler mismatch: need {needed}"
    triples.extend(filler[:needed])
    assert len(triples) == len(set(triples)) == 300
    return triples, ages


def gold_standard(ages):
    entities = [KG + f"person_Alice{i}" for i in range(18)]
    entities += [KG + "person_missing0", KG + "person_missing1"]
    pairs = [[KG + f"person_Alice{i}", KG + "email"] for i in range(20)]
    facts = []
    for i in range(8):
        facts.append([
            KG + f"person_Alice{i}", KG + "age",
            {"kind": "literal", "value": str(ages[i]), "datatype": xsd("integer")},
        ])
    facts.append([
        KG + "person_Alice8", KG + "age",
        {"kind": "literal", "value": "999", "datatype": xsd("integer")},
    ])
    facts.append([
        KG + "person_Alice19", KG + "age",
        {"kind": "literal", "value": "20", "datatype": xsd("integer")},
    ])
    return {
        "gold_id": "fixture-gold",
        "entities": entities,
        "property_expectations": pairs,
        "fact_expectations": facts,
        "required_languages": ["en", "de", "fr"],
        "required_instance_count": 82,
    }


def schema_spec():
    return {
        "schema_id": "fixture-schema",
        "disjoint_class_pairs": [[KG + "Person", KG + "Organization"]],
        "inverse_functional_properties": [KG + "isbn"],
        "property_ranges": {KG + "age": xsd("integer")},
        "functional_properties": [KG + "birthDate"],
    }


ASK_OK = json.dumps({"head": {}, "boolean": True})

PROBE_SCRIPTS = {
    "all_up": {"rules": [
        {"method": "GET", "path": "/sparql", "responses": [{"status": 200, "body": "up"}]},
        {"method": "POST", "path": "/sparql", "responses": [
            {"status": 200, "content_type": "application/sparql-results+json", "body": ASK_OK}]},
        {"method": "GET", "path": "/entity/e0",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e1",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e2",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e3",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 404, "content_type": "text/html", "body": "gone"}]},
        {"method": "GET", "path": "/entity/e0", "accept": "text/turtle",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e0", "accept": "application/n-triples",
         "responses": [{"status": 200, "content_type": "application/n-triples", "body": ""}]},
        {"method": "GET", "path": "/entity/e0", "accept": "application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/html", "body": ""}]},
        {"method": "HEAD", "path": "/dump.nt", "responses": [
            {"status": 200, "content_type": "application/n-triples"}]},
    ]},
    "no_conneg": {"rules": [
        {"method": "GET", "path": "/sparql", "responses": [{"status": 200, "body": "up"}]},
        {"method": "POST", "path": "/sparql", "responses": [
            {"status": 200, "content_type": "application/sparql-results+json", "body": ASK_OK}]},
        {"method": "GET", "path": "/entity/e0",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e1",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e2",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e3",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e0",
         "responses": [{"status": 200, "content_type": "text/html", "body": ""}]},
        {"method": "HEAD", "path": "/dump.nt", "responses": [
            {"status": 200, "content_type": "application/n-triples"}]},
    ]},
    "dump_404": {"rules": [
        {"method": "GET", "path": "/entity/e0",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e1",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e2",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 404, "content_type": "text/html", "body": ""}]},
        {"method": "GET", "path": "/entity/e3",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 500, "content_type": "text/html", "body": ""}]},
        {"method": "GET", "path": "/entity/e0", "accept": "text/turtle",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e0", "accept": "application/n-triples",
         "responses": [{"status": 200, "content_type": "text/html", "body": ""}]},
        {"method": "GET", "path": "/entity/e0", "accept": "application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/html", "body": ""}]},
        {"method": "GET", "path": "/dump.nt", "responses": [
            {"status": 404, "content_type": "text/html", "body": "missing"}]},
        {"method": "HEAD", "path": "/dump.nt", "responses": [{"status": 404}]},
    ]},
    "flaky_then_up": {"rules": [
        {"method": "GET", "path": "/sparql", "responses": [
            {"status": 200, "body": "slow", "delay_ms": 1200},
            {"status": 200, "body": "up"}]},
        {"method": "POST", "path": "/sparql", "responses": [
            {"status": 200, "content_type": "application/sparql-results+json", "body": ASK_OK}]},
        {"method": "GET", "path": "/entity/e0",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e1",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e2",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e3",
         "accept": "text/turtle, application/n-triples, application/rdf+xml",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e0", "accept": "text/turtle",
         "responses": [{"status": 200, "content_type": "text/turtle", "body": ""}]},
        {"method": "GET", "path": "/entity/e0", "accept": "application/n-triples",
         "responses": [{"status": 200, "content_type": "application/n-triples", "body": ""}]},
        {"method": "GET", "path": "/entity/e0", "accept": "application/rdf+xml",
         "responses": [{"status": 200, "content_type": "application/rdf+xml", "body": ""}]},
        {"method": "HEAD", "path": "/dump.nt", "responses": [
            {"status": 200, "content_type": "application/n-triples"}]},
    ]},
}


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    triples, ages = build_triples()
    body = ntriples.serialize(ntriples.canonicalize_blank_labels(triples))
    (FIXTURES / "fixture_kg.nt").write_text(body, encoding="utf-8")
    (FIXTURES / "gold_standard.json").write_text(
        json.dumps(gold_standard(ages), indent=2) + "\n", encoding="utf-8")
    (FIXTURES / "schema.json").write_text(
        json.dumps(schema_spec(), indent=2) + "\n", encoding="utf-8")
    (FIXTURES / "profile.json").write_text(
        json.dumps(uniform_profile("fixture-uniform").to_json(), indent=2) + "\n",
        encoding="utf-8")
    for name, script in PROBE_SCRIPTS.items():
        (FIXTURES / f"probe_{name}.json").write_text(
            json.dumps(script, indent=2) + "\n", encoding="utf-8")
    judgments = [
        {"metric_id": metric_id, "value": "0.5", "rater": "expert1",
         "rationale": "fixture judgment"}
        for metric_id in [
            "believability.trustworthy",
            "cost_effectiveness.extra_cost",
            "ease_of_manipulation.documentation",
            "interoperability.standard_vocabularies",
            "objectivity.unbiased",
            "relevancy.domain_coverage",
            "reputation.rating",
            "security.authentication",
            "traceability.provenance_verifiable",
            "traceability.authenticity",
            "variety.domain_sources",
        ]
    ]
    (FIXTURES / "judgments.json").write_text(
        json.dumps(judgments, indent=2) + "\n", encoding="utf-8")
    print(f"fixture written: 300 statements at {FIXTURES}")


if __name__ == "__main__":
    main()
