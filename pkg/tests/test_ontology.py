import numpy as np
import pytest

from scene_kge import (
    KnowledgeGraph,
    OntologyError,
    ValidationError,
    asserted_types,
    build_from_triples,
    parse_document,
)
from scene_kge.ontology import type_map

from conftest import HIERARCHY_BLOCK, RDF_TYPE_T, SUBCLASS_T, cls, inst


def test_build_three_level_chain(hierarchy_block):
    kg = parse_document(hierarchy_block)
    onto = build_from_triples(kg)
    assert len(onto.classes) == 3
    assert len(onto.subclass_edges) == 2


def test_build_empty_ontology():
    kg = KnowledgeGraph()
    kg.insert_terms(inst("a"), cls("includes"), inst("b"))
    onto = build_from_triples(kg.freeze(), validate_vocabulary=False)
    assert onto.classes == set()
    assert onto.subclass_edges == set()


def test_two_cycle_rejected():
    kg = KnowledgeGraph()
    kg.insert_terms(cls("A"), SUBCLASS_T, cls("B"))
    kg.insert_terms(cls("B"), SUBCLASS_T, cls("A"))
    with pytest.raises(OntologyError) as err:
        build_from_triples(kg.freeze())
    assert "cycle" in str(err.value)


def test_closure_of_car(hierarchy_block):
    kg = parse_document(hierarchy_block)
    onto = build_from_triples(kg)
    car = kg.node_id(cls("Car"))
    expect = {kg.node_id(cls("Vehicle")), kg.node_id(cls("FeatureOfInterest"))}
    assert onto.superclass_closure(car) == expect


def test_closure_of_root_is_empty(hierarchy_block):
    kg = parse_document(hierarchy_block)
    onto = build_from_triples(kg)
    assert onto.superclass_closure(kg.node_id(cls("FeatureOfInterest"))) == frozenset()


def _reachability_oracle(edges, start):
    """Fixpoint of one-step parent expansion."""
    reach = set()
    frontier = {start}
    while frontier:
        step = {p for (c, p) in edges for f in frontier if c == f}
        frontier = step - reach
        reach |= step
    return reach - {start}


def test_closure_matches_reachability_oracle_on_random_dags():
    rng = np.random.default_rng(3)
    for _ in range(25):
        kg = KnowledgeGraph()
        n = 10
        for i in range(1, n):
            for _ in range(int(rng.integers(0, 3))):
                kg.insert_terms(cls(f"C{i}"), SUBCLASS_T, cls(f"C{rng.integers(0, i)}"))
        kg.freeze()
        onto = build_from_triples(kg, validate_vocabulary=False)
        for c in onto.classes:
            assert onto.superclass_closure(c) == _reachability_oracle(onto.subclass_edges, c)
            assert c not in onto.superclass_closure(c)


def test_closure_is_monotone_along_edges():
    rng = np.random.default_rng(9)
    kg = KnowledgeGraph()
    for i in range(1, 12):
        for _ in range(int(rng.integers(0, 3))):
            kg.insert_terms(cls(f"C{i}"), SUBCLASS_T, cls(f"C{rng.integers(0, i)}"))
    kg.freeze()
    onto = build_from_triples(kg, validate_vocabulary=False)
    for child, parent in onto.subclass_edges:
        assert {parent} | set(onto.superclass_closure(parent)) <= set(
            onto.superclass_closure(child)
        )


def test_multiple_inheritance_unions_paths():
    kg = KnowledgeGraph()
    kg.insert_terms(cls("Amphibious"), SUBCLASS_T, cls("Boat"))
    kg.insert_terms(cls("Amphibious"), SUBCLASS_T, cls("Car"))
    kg.insert_terms(cls("Boat"), SUBCLASS_T, cls("Vehicle"))
    kg.insert_terms(cls("Car"), SUBCLASS_T, cls("Vehicle"))
    kg.freeze()
    onto = build_from_triples(kg)
    got = onto.superclass_closure(kg.node_id(cls("Amphibious")))
    assert got == {kg.node_id(cls("Boat")), kg.node_id(cls("Car")), kg.node_id(cls("Vehicle"))}


def test_unknown_class_rejected(hierarchy_block):
    kg = parse_document(hierarchy_block)
    onto = build_from_triples(kg)
    with pytest.raises(ValidationError):
        onto.superclass_closure(999)


def test_asserted_types_single(paper_block):
    kg = parse_document(paper_block)
    car = kg.node_id(inst("inst-car"))
    assert asserted_types(kg, car) == {kg.node_id(cls("Car"))}


def test_asserted_types_untyped_node_empty(paper_block):
    kg = parse_document(paper_block)
    sub = kg.node_id(inst("inst-sub-scene"))
    assert asserted_types(kg, sub) == set()


def test_vocabulary_warning_for_unknown_relation():
    kg = KnowledgeGraph()
    kg.insert_terms(inst("a"), Term_foaf(), inst("b"))
    with pytest.warns(UserWarning, match="outside the scene vocabulary"):
        build_from_triples(kg.freeze())


def Term_foaf():
    from scene_kge import Term
    return Term.iri("http://xmlns.com/foaf/0.1/knows")


def test_no_warning_for_vocabulary_relations(paper_block):
    import warnings
    kg = parse_document(paper_block)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        build_from_triples(kg)


def test_type_map_groups_instances(paper_block):
    kg = parse_document(paper_block)
    members = type_map(kg)
    scene_cls = kg.node_id(cls("Scene"))
    assert members[scene_cls] == {kg.node_id(inst("inst-scene"))}
