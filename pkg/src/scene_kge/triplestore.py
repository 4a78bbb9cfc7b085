"""Dictionary-encoded in-memory triple store with set semantics.

Nodes (entities and literals) and relations are interned into two separate
tables with dense ids starting at 0. Triples are integer tuples held in a
set plus a predicate index that preserves insertion order, so downstream
training and reports are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import FrozenGraphError, ValidationError

IRI = "iri"
LITERAL = "literal"

NODE = "node"
RELATION = "relation"


@dataclass(frozen=True)
class Term:
    """An IRI or literal. Equality is (kind, lexical, datatype)."""

    kind: str
    lexical: str
    datatype: str | None = None

    def __post_init__(self):
        if self.kind not in (IRI, LITERAL):
            raise ValidationError(f"unknown term kind: {self.kind!r}")
        if self.kind == IRI:
            if not self.lexical:
                raise ValidationError("IRI lexical form must be non-empty")
            if any(c.isspace() for c in self.lexical):
                raise ValidationError(f"IRI may not contain whitespace: {self.lexical!r}")
            if self.datatype is not None:
                raise ValidationError("IRI terms carry no datatype")
        elif self.datatype is not None:
            if not self.datatype or any(c.isspace() for c in self.datatype):
                raise ValidationError(f"bad datatype IRI: {self.datatype!r}")

    @classmethod
    def iri(cls, lexical: str) -> "Term":
        return cls(IRI, lexical)

    @classmethod
    def literal(cls, lexical: str, datatype: str | None = None) -> "Term":
        return cls(LITERAL, lexical, datatype)

    @property
    def is_iri(self) -> bool:
        return self.kind == IRI

    @property
    def local_name(self) -> str:
        """Tail of the IRI after the last '#' or '/'; the lexical form for literals."""
        if self.kind == LITERAL:
            return self.lexical
        for sep in ("#", "/"):
            if sep in self.lexical:
                return self.lexical.rsplit(sep, 1)[1]
        return self.lexical


class Triple(NamedTuple):
    h: int
    r: int
    t: int


@dataclass(frozen=True)
class KgStats:
    triple_count: int
    entity_count: int
    relation_count: int


class _InternTable:
    """Bijective Term <-> dense id mapping."""

    def __init__(self):
        self.terms: list[Term] = []
        self.ids: dict[Term, int] = {}

    def intern(self, term: Term) -> int:
        existing = self.ids.get(term)
        if existing is not None:
            return existing
        new_id = len(self.terms)
        self.terms.append(term)
        self.ids[term] = new_id
        return new_id

    def copy(self) -> "_InternTable":
        dup = _InternTable()
        dup.terms = list(self.terms)
        dup.ids = dict(self.ids)
        return dup

    def __len__(self) -> int:
        return len(self.terms)


class KnowledgeGraph:
    """Directed labeled multigraph with set semantics over interned ids.

    Build single-writer, then :meth:`freeze`; a frozen graph is immutable
    and safe for concurrent readers. Two graphs compare equal when their
    term-level triple sets are equal, regardless of interning order.
    """

    def __init__(self):
        self._nodes = _InternTable()
        self._rels = _InternTable()
        self._triple_set: set[Triple] = set()
        self._triple_list: list[Triple] = []
        self._by_pred: dict[int, list[tuple[int, int]]] = {}
        self._frozen = False

    # -- interning ---------------------------------------------------------

    def intern(self, term: Term, role: str = NODE) -> int:
        """Return the dense id for ``term``, allocating the next id if new."""
        if self._frozen:
            raise FrozenGraphError("cannot intern into a frozen graph")
        if not isinstance(term, Term):
            raise ValidationError(f"expected Term, got {type(term).__name__}")
        if role == NODE:
            return self._nodes.intern(term)
        if role == RELATION:
            if term.kind != IRI:
                raise ValidationError("relations must be IRIs")
            return self._rels.intern(term)
        raise ValidationError(f"unknown role: {role!r}")

    def node_term(self, node_id: int) -> Term:
        self._check_node(node_id)
        return self._nodes.terms[node_id]

    def rel_term(self, rel_id: int) -> Term:
        self._check_rel(rel_id)
        return self._rels.terms[rel_id]

    def node_id(self, term: Term) -> int | None:
        return self._nodes.ids.get(term)

    def rel_id(self, term: Term) -> int | None:
        return self._rels.ids.get(term)

    @property
    def node_terms(self) -> list[Term]:
        return list(self._nodes.terms)

    @property
    def rel_terms(self) -> list[Term]:
        return list(self._rels.terms)

    # -- triples -----------------------------------------------------------

    def insert(self, triple: Triple) -> bool:
        """Insert; True iff the triple was not already present."""
        if self._frozen:
            raise FrozenGraphError("cannot insert into a frozen graph")
        h, r, t = triple
        self._check_node(h)
        self._check_rel(r)
        self._check_node(t)
        triple = Triple(h, r, t)
        if triple in self._triple_set:
            return False
        self._triple_set.add(triple)
        self._triple_list.append(triple)
        self._by_pred.setdefault(r, []).append((h, t))
        return True

    def insert_terms(self, s: Term, p: Term, o: Term) -> bool:
        """Intern three terms (s, o as nodes; p as relation) and insert."""
        return self.insert(Triple(self.intern(s), self.intern(p, RELATION), self.intern(o)))

    def triples_with_predicate(self, r: int) -> list[tuple[int, int]]:
        """The (h, t) pairs of triples with predicate ``r``, in insertion order."""
        self._check_rel(r)
        return list(self._by_pred.get(r, ()))

    def triples(self) -> Iterator[Triple]:
        """All triples in insertion order."""
        return iter(self._triple_list)

    def term_triples(self) -> Iterator[tuple[Term, Term, Term]]:
        nodes, rels = self._nodes.terms, self._rels.terms
        for h, r, t in self._triple_list:
            yield nodes[h], rels[r], nodes[t]

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triple_set

    def __len__(self) -> int:
        return len(self._triple_set)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return set(self.term_triples()) == set(other.term_triples())

    __hash__ = None  # mutable; equality is by triple set

    # -- stats / lifecycle ---------------------------------------------------

    def stats(self) -> KgStats:
        return KgStats(len(self._triple_set), len(self._nodes), len(self._rels))

    @property
    def entity_count(self) -> int:
        return len(self._nodes)

    @property
    def relation_count(self) -> int:
        return len(self._rels)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "KnowledgeGraph":
        self._frozen = True
        return self

    def require_frozen(self):
        if not self._frozen:
            raise ValidationError("operation requires a frozen graph; call freeze() first")

    def unfrozen_copy(self) -> "KnowledgeGraph":
        """Mutable copy sharing no state; ids and insertion order preserved."""
        dup = KnowledgeGraph()
        dup._nodes = self._nodes.copy()
        dup._rels = self._rels.copy()
        dup._triple_set = set(self._triple_set)
        dup._triple_list = list(self._triple_list)
        dup._by_pred = {r: list(pairs) for r, pairs in self._by_pred.items()}
        return dup

    # -- internal ------------------------------------------------------------

    def _check_node(self, node_id: int):
        if not isinstance(node_id, int) or not 0 <= node_id < len(self._nodes):
            raise ValidationError(f"node id out of range: {node_id!r}")

    def _check_rel(self, rel_id: int):
        if not isinstance(rel_id, int) or not 0 <= rel_id < len(self._rels):
            raise ValidationError(f"relation id out of range: {rel_id!r}")


def graph_from_term_triples(triples: Iterable[tuple[Term, Term, Term]]) -> KnowledgeGraph:
    """Build a frozen graph from (subject, predicate, object) terms."""
    kg = KnowledgeGraph()
    for s, p, o in triples:
        kg.insert_terms(s, p, o)
    return kg.freeze()
