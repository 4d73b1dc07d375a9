"""Score individual quality metrics against a toy graph.
========================================================

Each scorer returns exact fractions with the integer evidence counts it used,
so every number here can be checked by hand against the statements below.
"""

from fractions import Fraction

from kgqa.metrics import (
    GoldStandard,
    SchemaSpec,
    score_accuracy,
    score_completeness,
    score_conciseness,
    score_consistency,
)
from kgqa.snapshot import snapshot_from_turtle

DOC = """
@prefix ex: <http://books.example.com/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .

ex:b1 a ex:Book ; ex:isbn "978-1111" ; ex:pages "320"^^xsd:integer .
ex:b2 a ex:Book ; ex:isbn "978-2222" ; ex:pages "not sure"^^xsd:integer .
ex:b3 a ex:Book ; ex:isbn "978-2222" ; ex:pages "108"^^xsd:integer .
ex:b3 a ex:Author .
"""

snapshot, _ = snapshot_from_turtle(DOC, kg_id="books")
schema = SchemaSpec(
    schema_id="books",
    disjoint_class_pairs=(("http://books.example.com/Book",
                           "http://books.example.com/Author"),),
    inverse_functional_properties=frozenset({"http://books.example.com/isbn"}),
    property_ranges={"http://books.example.com/pages":
                     "http://www.w3.org/2001/XMLSchema#integer"},
)
gold = GoldStandard(
    gold_id="books",
    entities=frozenset({
        "http://books.example.com/b1",
        "http://books.example.com/b2",
        "http://books.example.com/missing",
    }),
)

for score in score_accuracy(snapshot, schema):
    print(f"{score.metric_id:55s} {score.value}  ({score.evidence_summary})")
for score in score_consistency(snapshot, schema):
    print(f"{score.metric_id:55s} {score.value}  ({score.evidence_summary})")
for score in score_conciseness(snapshot):
    print(f"{score.metric_id:55s} {score.value}  ({score.evidence_summary})")
for score in score_completeness(snapshot, gold):
    value = "n/a" if score.not_applicable else score.value
    print(f"{score.metric_id:55s} {value}  ({score.evidence_summary})")

# the ISBN shared by b2 and b3 makes 2 of 3 IFP statements violating
assert any(
    s.value == 1 - Fraction(2, 3)
    for s in score_consistency(snapshot, schema)
    if s.metric_id.endswith("ifp_consistency")
)
