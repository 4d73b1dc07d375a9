import random

import pytest

from kgqa.terms import Triple, blank, iri, literal

EX = "http://example.org/"
XSD = "http://www.w3.org/2001/XMLSchema#"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"


def t(s, p, o):
    return Triple(s, p, o)


def e(name):
    return iri(EX + name)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def random_term(rng, allow_literal=True, allow_blank=True):
    roll = rng.random()
    if allow_literal and roll < 0.35:
        choice = rng.random()
        if choice < 0.4:
            return literal(rng.choice(["x", "y", "", "unknown", "Alpha", "42"]))
        if choice < 0.7:
            return literal(str(rng.randint(-50, 50)), datatype=XSD + "integer")
        return literal(rng.choice(["en text", "de text"]), language=rng.choice(["en", "de", "fr"]))
    if allow_blank and roll < 0.5:
        return blank(f"b{rng.randint(0, 6)}")
    return e(rng.choice("abcdefgh") + str(rng.randint(0, 9)))


def random_graph(rng, max_triples=60):
    triples = []
    for _ in range(rng.randint(0, max_triples)):
        subject = random_term(rng, allow_literal=False)
        predicate = e("p" + str(rng.randint(0, 5)))
        obj = random_term(rng)
        triples.append(Triple(subject, predicate, obj))
    return triples
