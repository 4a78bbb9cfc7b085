"""Scene ontology: subclass DAG plus the fixed relation vocabulary.

The ontology is read out of an ordinary graph: owl:subClassOf triples form
the hierarchy, and every object of an rdf:type triple counts as a class.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .errors import OntologyError, ValidationError
from .triplestore import KnowledgeGraph, Term
from .vocab import OWL_SUBCLASSOF, RDF_TYPE, RELATION_VOCABULARY

_RDF_TYPE_TERM = Term.iri(RDF_TYPE)
_SUBCLASS_TERM = Term.iri(OWL_SUBCLASSOF)


@dataclass
class SceneOntology:
    """Class set and subclass edges of one graph; immutable after build."""

    classes: set[int]
    subclass_edges: set[tuple[int, int]]
    relation_vocabulary: frozenset[str] = RELATION_VOCABULARY
    _parents: dict[int, list[int]] = field(default_factory=dict, repr=False)
    _closure_cache: dict[int, frozenset[int]] = field(default_factory=dict, repr=False)

    def superclass_closure(self, c: int) -> frozenset[int]:
        """All strict ancestors of ``c`` under transitive subclass edges."""
        if c not in self.classes:
            raise ValidationError(f"unknown class id: {c}")
        cached = self._closure_cache.get(c)
        if cached is not None:
            return cached
        seen: set[int] = set()
        stack = list(self._parents.get(c, ()))
        while stack:
            p = stack.pop()
            if p in seen:
                continue
            seen.add(p)
            stack.extend(self._parents.get(p, ()))
        result = frozenset(seen)
        self._closure_cache[c] = result
        return result

    def direct_parents(self, c: int) -> tuple[int, ...]:
        return tuple(self._parents.get(c, ()))

    def root_classes(self) -> set[int]:
        return {c for c in self.classes if not self._parents.get(c)}


def build_from_triples(kg: KnowledgeGraph, validate_vocabulary: bool = True) -> SceneOntology:
    """Extract the ontology from a frozen graph; rejects subclass cycles.

    With ``validate_vocabulary`` (the default at load time), relations
    outside the fixed scene vocabulary trigger a UserWarning, not an error.
    """
    kg.require_frozen()

    if validate_vocabulary:
        unknown = [t.lexical for t in kg.rel_terms if t.lexical not in RELATION_VOCABULARY]
        if unknown:
            warnings.warn(
                f"graph uses {len(unknown)} relation(s) outside the scene vocabulary: "
                + ", ".join(sorted(unknown)),
                stacklevel=2,
            )

    classes: set[int] = set()
    edges: set[tuple[int, int]] = set()
    parents: dict[int, list[int]] = {}

    sub_rel = kg.rel_id(_SUBCLASS_TERM)
    if sub_rel is not None:
        for child, parent in kg.triples_with_predicate(sub_rel):
            classes.add(child)
            classes.add(parent)
            if (child, parent) not in edges:
                edges.add((child, parent))
                parents.setdefault(child, []).append(parent)

    type_rel = kg.rel_id(_RDF_TYPE_TERM)
    if type_rel is not None:
        for _, cls in kg.triples_with_predicate(type_rel):
            classes.add(cls)

    _check_acyclic(kg, edges)
    return SceneOntology(classes=classes, subclass_edges=edges, _parents=parents)


def _check_acyclic(kg: KnowledgeGraph, edges: set[tuple[int, int]]):
    # Kahn's algorithm; any leftover node with in-degree > 0 sits on a cycle.
    out_deg: dict[int, int] = {}
    incoming: dict[int, list[int]] = {}
    nodes: set[int] = set()
    for child, parent in edges:
        nodes.update((child, parent))
        out_deg[child] = out_deg.get(child, 0) + 1
        incoming.setdefault(parent, []).append(child)
    ready = [n for n in nodes if out_deg.get(n, 0) == 0]
    done = 0
    while ready:
        n = ready.pop()
        done += 1
        for child in incoming.get(n, ()):
            out_deg[child] -= 1
            if out_deg[child] == 0:
                ready.append(child)
    if done != len(nodes):
        member = min(n for n in nodes if out_deg.get(n, 0) > 0)
        raise OntologyError(
            f"subclass hierarchy contains a cycle through {kg.node_term(member).lexical!r}"
        )


def asserted_types(kg: KnowledgeGraph, node: int) -> set[int]:
    """Objects of rdf:type triples whose subject is ``node``."""
    kg.node_term(node)  # range check
    type_rel = kg.rel_id(_RDF_TYPE_TERM)
    if type_rel is None:
        return set()
    return {c for subj, c in kg.triples_with_predicate(type_rel) if subj == node}


def type_map(kg: KnowledgeGraph) -> dict[int, set[int]]:
    """Map class id -> set of instance node ids, from asserted rdf:type triples."""
    type_rel = kg.rel_id(_RDF_TYPE_TERM)
    members: dict[int, set[int]] = {}
    if type_rel is None:
        return members
    for subj, cls in kg.triples_with_predicate(type_rel):
        members.setdefault(cls, set()).add(subj)
    return members
