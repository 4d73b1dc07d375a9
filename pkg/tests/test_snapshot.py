"""Stats are checked against a from-scratch enumeration over the triple set."""

from collections import Counter

from kgqa.snapshot import build_snapshot, compute_stats
from kgqa.terms import RDF_TYPE, Triple, blank, iri, literal

from conftest import EX, e, random_graph

RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"


def brute_force_stats(triples):
    """Independent recount used as the oracle; no kgqa internals."""
    distinct = []
    seen = set()
    for t in triples:
        key = (
            t.subject.kind, t.subject.value,
            t.predicate.value,
            t.object.kind, t.object.value, t.object.datatype, t.object.language,
        )
        if key not in seen:
            seen.add(key)
            distinct.append(t)
    subjects = {(t.subject.kind, t.subject.value) for t in distinct}
    objects = {
        (t.object.kind, t.object.value, t.object.datatype, t.object.language)
        for t in distinct
    }
    terms = subjects | {
        (o[0], o[1]) if o[0] != "literal" else o for o in objects
    }
    # align term identity with full tuples for literals and pairs for others
    term_set = set()
    for t in distinct:
        for side in (t.subject, t.object):
            term_set.add((side.kind, side.value, side.datatype, side.language))
    blanks = {x for x in term_set if x[0] == "blank"}
    literals = [t.object for t in distinct if t.object.kind == "literal"]
    typed = {}
    for t in distinct:
        if t.predicate.value == RDF_TYPE and t.object.kind == "iri":
            typed.setdefault((t.subject.kind, t.subject.value), set()).add(t.object.value)
    reif_preds = {
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#subject",
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#predicate",
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#object",
    }
    reified = sum(
        1 for t in distinct
        if t.predicate.value in reif_preds
        or (
            t.predicate.value == RDF_TYPE
            and t.object.kind == "iri"
            and t.object.value.endswith("22-rdf-syntax-ns#Statement")
        )
    )
    langs = {
        t.object.language
        for t in distinct
        if t.predicate.value == RDFS_LABEL and t.object.language
    }
    by_datatype = Counter()
    for lit in literals:
        if lit.language:
            by_datatype["http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"] += 1
        else:
            by_datatype[lit.datatype or "http://www.w3.org/2001/XMLSchema#string"] += 1
    return {
        "triple_count": len(distinct),
        "distinct_subjects": len(subjects),
        "distinct_predicates": len({t.predicate.value for t in distinct}),
        "distinct_terms": len(term_set),
        "blank_node_count": len(blanks),
        "literal_count": len(literals),
        "typed_instance_count": len(typed),
        "reification_triple_count": reified,
        "label_languages": langs,
        "literals_by_datatype": dict(by_datatype),
    }


def test_stats_match_brute_force_on_random_graphs(rng):
    for _ in range(40):
        triples = random_graph(rng)
        stats = compute_stats(triples)
        oracle = brute_force_stats(triples)
        assert stats.triple_count == oracle["triple_count"]
        assert stats.distinct_subjects == oracle["distinct_subjects"]
        assert stats.distinct_predicates == oracle["distinct_predicates"]
        assert stats.distinct_terms == oracle["distinct_terms"]
        assert stats.blank_node_count == oracle["blank_node_count"]
        assert stats.literal_count == oracle["literal_count"]
        assert stats.typed_instance_count == oracle["typed_instance_count"]
        assert stats.reification_triple_count == oracle["reification_triple_count"]
        assert set(stats.label_languages) == oracle["label_languages"]
        assert stats.literals_by_datatype == oracle["literals_by_datatype"]


def test_fixture_counts_two_blanks_fifteen_terms():
    # 10 triples; terms = 6 subjects + 7 objects + 2 blanks = 15 distinct
    triples = [Triple(e(f"s{i}"), e("p"), e(f"o{i}")) for i in range(6)]
    triples.append(Triple(e("s0"), e("p"), e("o6")))
    triples.append(Triple(e("s1"), e("p"), e("o2")))
    triples.append(Triple(blank("x"), e("p"), e("o0")))
    triples.append(Triple(blank("y"), e("p"), e("o1")))
    stats = compute_stats(triples)
    assert stats.triple_count == 10
    assert stats.blank_node_count == 2
    assert stats.distinct_terms == 15


def test_distinct_predicates_with_all_literal_objects():
    triples = [
        Triple(e("a"), e("p"), literal("1")),
        Triple(e("b"), e("p"), literal("2")),
        Triple(e("c"), e("q"), literal("3")),
    ]
    assert compute_stats(triples).distinct_predicates == 2


def test_typed_instance_count():
    triples = [
        Triple(e("a"), iri(RDF_TYPE), e("C")),
        Triple(e("b"), iri(RDF_TYPE), e("C")),
        Triple(e("c"), iri(RDF_TYPE), e("D")),
        Triple(e("c"), iri(RDF_TYPE), e("C")),  # same instance, second class
        Triple(e("d"), e("p"), e("a")),
    ]
    stats = compute_stats(triples)
    assert stats.typed_instance_count == 3
    assert stats.class_instance_counts == {EX + "C": 3, EX + "D": 1}


def test_duplicate_insensitivity(rng):
    for _ in range(10):
        triples = random_graph(rng, max_triples=30)
        once = compute_stats(triples)
        thrice = compute_stats(triples * 3)
        assert once == thrice


def test_snapshot_stats_consistent(rng):
    for _ in range(10):
        snap = build_snapshot("kg", random_graph(rng))
        assert compute_stats(snap.triples) == snap.stats


def test_label_languages_lowercased_and_configurable():
    triples = [
        Triple(e("a"), iri(RDFS_LABEL), literal("x", language="EN")),
        Triple(e("a"), e("otherLabel"), literal("x", language="fr")),
    ]
    stats = compute_stats(triples)
    assert set(stats.label_languages) == {"en"}
    custom = compute_stats(triples, labeling_predicates=(EX + "otherLabel",))
    assert set(custom.label_languages) == {"fr"}
