"""The three graph variants: base, inferred types, include paths.

Two deterministic materialization passes, each a pure graph -> graph
function that preserves both vocabularies (ids and order) exactly:

* ``infer_types``: for every (e, rdf:type, c) add (e, rdf:type, c') for all
  strict superclasses c' of c.
* ``materialize_include_paths``: for every (s, hasPart, x) and
  (x, includes, o) add the one-hop shortcut (s, includes, o).

Variants are cumulative: paths = include_paths(infer_types(base)).
"""

from __future__ import annotations

from enum import Enum

from .ontology import build_from_triples
from .triplestore import KnowledgeGraph, Term, Triple
from .vocab import HAS_PART, INCLUDES, RDF_TYPE


class KgVariant(Enum):
    BASE = "base"
    WITH_TYPES = "types"
    WITH_PATHS = "paths"


def infer_types(kg: KnowledgeGraph) -> KnowledgeGraph:
    """Materialize rdf:type edges to every superclass; idempotent."""
    kg.require_frozen()
    out = kg.unfrozen_copy()
    type_rel = kg.rel_id(Term.iri(RDF_TYPE))
    if type_rel is not None:
        ontology = build_from_triples(kg, validate_vocabulary=False)
        for subj, cls in kg.triples_with_predicate(type_rel):
            for ancestor in sorted(ontology.superclass_closure(cls)):
                out.insert(Triple(subj, type_rel, ancestor))
    return out.freeze()


def materialize_include_paths(kg: KnowledgeGraph) -> KnowledgeGraph:
    """Add (s, includes, o) for every hasPart/includes two-hop path.

    The join is one-hop only: it reads hasPart and includes edges of the
    input, never its own output.
    """
    kg.require_frozen()
    out = kg.unfrozen_copy()
    part_rel = kg.rel_id(Term.iri(HAS_PART))
    incl_rel = kg.rel_id(Term.iri(INCLUDES))
    if part_rel is not None and incl_rel is not None:
        included_by: dict[int, list[int]] = {}
        for mid, obj in kg.triples_with_predicate(incl_rel):
            included_by.setdefault(mid, []).append(obj)
        for scene, mid in kg.triples_with_predicate(part_rel):
            for obj in included_by.get(mid, ()):
                out.insert(Triple(scene, incl_rel, obj))
    return out.freeze()


def make_variant(kg: KnowledgeGraph, variant: KgVariant) -> KnowledgeGraph:
    """Produce one of the three variants from a base graph."""
    if variant is KgVariant.BASE:
        kg.require_frozen()
        return kg
    if variant is KgVariant.WITH_TYPES:
        return infer_types(kg)
    return materialize_include_paths(infer_types(kg))
