import numpy as np
import pytest

from scene_kge import KnowledgeGraph, Term
from scene_kge.vocab import (
    HAS_PART,
    INCLUDES,
    OWL_SUBCLASSOF,
    RDF_TYPE,
    SCENE_NS,
)

# The four-triple scene/sub-scene/car example from the docs fixtures.
PAPER_BLOCK = """\
:inst-scene rdf:type scene:Scene .
:inst-scene scene:hasPart :inst-sub-scene .
:inst-sub-scene scene:includes :inst-car .
:inst-car rdf:type scene:Car .
"""

HIERARCHY_BLOCK = """\
scene:Car owl:subClassOf scene:Vehicle .
scene:Vehicle owl:subClassOf scene:FeatureOfInterest .
"""


@pytest.fixture
def paper_block():
    return PAPER_BLOCK


@pytest.fixture
def hierarchy_block():
    return HIERARCHY_BLOCK


def cls(name: str) -> Term:
    return Term.iri(SCENE_NS + name)


def inst(name: str) -> Term:
    return Term.iri("http://example.org/instance/" + name)


RDF_TYPE_T = Term.iri(RDF_TYPE)
SUBCLASS_T = Term.iri(OWL_SUBCLASSOF)
HAS_PART_T = Term.iri(HAS_PART)
INCLUDES_T = Term.iri(INCLUDES)


def random_scene_shaped_graph(rng: np.random.Generator, max_triples: int = 1000):
    """Random two-level graph exercising typing, hasPart and includes.

    hasPart parents and children come from disjoint pools, matching the
    scene/sub-scene shape, so the one-hop include join is its own fixpoint.
    """
    n_classes = int(rng.integers(3, 12))
    classes = [cls(f"C{i}") for i in range(n_classes)]
    scenes = [inst(f"s{i}") for i in range(int(rng.integers(1, 6)))]
    subs = [inst(f"ss{i}") for i in range(int(rng.integers(2, 12)))]
    objs = [inst(f"o{i}") for i in range(int(rng.integers(2, 20)))]

    kg = KnowledgeGraph()
    # random DAG: each class may point at earlier classes only
    for i in range(1, n_classes):
        for _ in range(int(rng.integers(0, 3))):
            parent = int(rng.integers(0, i))
            kg.insert_terms(classes[i], SUBCLASS_T, classes[parent])
    budget = max_triples - len(kg)
    n_type = min(int(rng.integers(0, 30)), budget)
    for _ in range(n_type):
        node = (objs + subs)[int(rng.integers(0, len(objs) + len(subs)))]
        kg.insert_terms(node, RDF_TYPE_T, classes[int(rng.integers(0, n_classes))])
    for _ in range(int(rng.integers(1, 20))):
        kg.insert_terms(scenes[int(rng.integers(0, len(scenes)))], HAS_PART_T,
                        subs[int(rng.integers(0, len(subs)))])
    for _ in range(int(rng.integers(1, 40))):
        kg.insert_terms(subs[int(rng.integers(0, len(subs)))], INCLUDES_T,
                        objs[int(rng.integers(0, len(objs)))])
    return kg.freeze()
