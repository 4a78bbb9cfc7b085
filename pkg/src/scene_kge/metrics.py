"""Intrinsic embedding quality metrics and per-class/per-relation reports.

Three measures over a trained embedding set and the graph variant it was
trained on:

* categorization(c): cosine between the mean vector of c's instances and
  c's own vector.
* coherence(c, n): fraction of the n entities nearest to c (by cosine)
  that are instances of c. Class nodes and c itself are excluded from the
  candidate pool unless asked otherwise.
* transition distance(r): mean over triples (h, r, t) of cosine(h + r, t).

Instance membership always comes from the asserted rdf:type triples of the
graph under evaluation, so enriched variants enlarge membership sets.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field

import numpy as np

from .analysis import cosine
from .embedding import RESCAL, EmbeddingSet
from .errors import NumericError, ValidationError
from .ntriples_io import parse_term_text, render_term
from .ontology import build_from_triples, type_map
from .triplestore import KnowledgeGraph

CATEGORIZATION = "categorization"
COHERENCE = "coherence"
TRANSITION = "transition_distance"

DEFAULT_NEIGHBORHOOD = 1000


@dataclass
class EvalConfig:
    kg_variant: str = "base"
    model: str | None = None  # default: the embedding set's own tag
    coherence_n: int = DEFAULT_NEIGHBORHOOD
    include_class_neighbors: bool = False
    check_provenance: bool = True


@dataclass(frozen=True)
class MetricRow:
    metric: str
    target: str
    kg_variant: str
    model: str
    value: float
    support: int
    top_level: bool = False


@dataclass
class MetricReport:
    rows: list[MetricRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def sorted_rows(self) -> list[MetricRow]:
        return sorted(self.rows, key=lambda r: (r.metric, r.target, r.kg_variant, r.model))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["metric", "target", "kg_variant", "model", "value", "support"])
        for r in self.sorted_rows():
            writer.writerow([r.metric, r.target, r.kg_variant, r.model, repr(r.value), r.support])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "MetricReport":
        reader = csv.DictReader(io.StringIO(text))
        rows = [
            MetricRow(
                metric=rec["metric"], target=rec["target"], kg_variant=rec["kg_variant"],
                model=rec["model"], value=float(rec["value"]), support=int(rec["support"]),
            )
            for rec in reader
        ]
        return cls(rows=rows)

    def value(self, metric: str, target: str) -> float | None:
        for r in self.rows:
            if r.metric == metric and r.target == target:
                return r.value
        return None


def _rows_for(es: EmbeddingSet, kg: KnowledgeGraph, nodes) -> np.ndarray:
    rows = []
    for node in nodes:
        term = kg.node_term(node)
        row = es.entity_row(term)
        if row is None:
            raise ValidationError(f"no embedding for {render_term(term)}")
        rows.append(row)
    return np.asarray(rows, dtype=np.int64)


def categorization(es: EmbeddingSet, kg: KnowledgeGraph, concept: int,
                   members: dict[int, set[int]] | None = None) -> float:
    """Cosine between the mean instance vector of ``concept`` and its own vector."""
    members = members if members is not None else type_map(kg)
    instances = members.get(concept)
    if not instances:
        raise ValidationError(
            f"{render_term(kg.node_term(concept))} has no typed instances; "
            "categorization is undefined (reported as absent)"
        )
    inst_rows = _rows_for(es, kg, sorted(instances))
    mean_vec = es.entity_vectors[inst_rows].mean(axis=0)
    concept_vec = es.entity_vectors[_rows_for(es, kg, [concept])[0]]
    return cosine(mean_vec, concept_vec)


def coherence(es: EmbeddingSet, kg: KnowledgeGraph, concept: int,
              n: int = DEFAULT_NEIGHBORHOOD,
              include_classes: bool = False,
              members: dict[int, set[int]] | None = None) -> float:
    """Fraction of the n nearest entities to ``concept`` typed by it.

    Nearest is by cosine similarity with exact ties broken by ascending
    node id; the concept itself and (by default) all class nodes are not
    candidates. With fewer than n candidates, all of them are used and the
    fraction is over that count.
    """
    if n < 1:
        raise ValidationError("n must be positive")
    members = members if members is not None else type_map(kg)
    ontology = build_from_triples(kg, validate_vocabulary=False)

    excluded = {concept}
    if not include_classes:
        excluded |= ontology.classes
    candidates = [i for i in range(kg.entity_count) if i not in excluded]
    if not candidates:
        raise ValidationError("no candidate entities for coherence")
    if len(candidates) < n:
        warnings.warn(
            f"only {len(candidates)} candidates for n={n}; using all of them",
            stacklevel=2,
        )
        n = len(candidates)

    concept_vec = es.entity_vectors[_rows_for(es, kg, [concept])[0]]
    cn = float(np.sqrt(concept_vec @ concept_vec))
    if cn == 0.0:
        raise NumericError("concept vector has zero norm")

    cand_rows = _rows_for(es, kg, candidates)
    V = es.entity_vectors[cand_rows]
    norms = np.sqrt((V * V).sum(axis=1))
    sims = np.where(norms > 0, (V @ concept_vec) / (np.where(norms > 0, norms, 1.0) * cn),
                    -np.inf)
    cand_ids = np.asarray(candidates, dtype=np.int64)
    order = np.lexsort((cand_ids, -sims))[:n]
    instance_set = members.get(concept, set())
    hits = sum(1 for i in order if int(cand_ids[i]) in instance_set)
    return hits / n


def transition_distance(es: EmbeddingSet, kg: KnowledgeGraph, relation: int) -> float:
    """Mean cosine(h + r, t) over all triples of ``relation``."""
    value, _, _ = transition_distance_detail(es, kg, relation)
    return value


def transition_distance_detail(es: EmbeddingSet, kg: KnowledgeGraph,
                               relation: int) -> tuple[float, int, int]:
    """(mean value, triples used, triples skipped for zero-norm operands)."""
    pairs = kg.triples_with_predicate(relation)
    if not pairs:
        raise ValidationError(
            f"{render_term(kg.rel_term(relation))} has no triples; "
            "transition distance is undefined (reported as absent)"
        )
    rel_term = kg.rel_term(relation)
    rel_row = es.relation_row(rel_term)
    if rel_row is None:
        raise ValidationError(f"no embedding for relation {render_term(rel_term)}")
    rv = es.relation_vector(rel_row)

    h_rows = _rows_for(es, kg, [h for h, _ in pairs])
    t_rows = _rows_for(es, kg, [t for _, t in pairs])
    lhs = es.entity_vectors[h_rows] + rv
    rhs = es.entity_vectors[t_rows]
    ln = np.sqrt((lhs * lhs).sum(axis=1))
    rn = np.sqrt((rhs * rhs).sum(axis=1))
    ok = (ln > 0) & (rn > 0)
    skipped = int((~ok).sum())
    if skipped:
        warnings.warn(
            f"skipped {skipped} triple(s) with zero-norm operands for "
            f"{render_term(rel_term)}",
            stacklevel=2,
        )
    if not ok.any():
        raise NumericError("every triple had a zero-norm operand")
    values = (lhs[ok] * rhs[ok]).sum(axis=1) / (ln[ok] * rn[ok])
    return float(values.mean()), int(ok.sum()), skipped


def evaluate_all(es: EmbeddingSet, kg: KnowledgeGraph,
                 cfg: EvalConfig | None = None) -> MetricReport:
    """Full report: categorization and coherence per instantiated class,
    transition distance per used relation."""
    cfg = cfg or EvalConfig()
    if cfg.check_provenance:
        if es.entity_count != kg.entity_count or es.relation_count != kg.relation_count:
            raise ValidationError(
                f"embedding set covers {es.entity_count} entities / {es.relation_count} "
                f"relations but the graph has {kg.entity_count} / {kg.relation_count}; "
                "set check_provenance=False to override"
            )
    model = cfg.model or es.model
    ontology = build_from_triples(kg, validate_vocabulary=False)
    members = type_map(kg)
    roots = ontology.root_classes()

    def is_top_level(cls: int) -> bool:
        if cls not in ontology.classes:
            return False
        return cls in roots or bool(set(ontology.direct_parents(cls)) & roots)

    report = MetricReport()
    if es.model == RESCAL:
        report.notes.append(
            "transition_distance uses diag(M_r) as the relation vector for rescal "
            "(the bilinear model has no native relation vector)"
        )

    classes = sorted((c for c, inst in members.items() if inst),
                     key=lambda c: kg.node_term(c).lexical)
    for cls in classes:
        target = render_term(kg.node_term(cls))
        support = len(members[cls])
        flag = is_top_level(cls)
        report.rows.append(MetricRow(
            CATEGORIZATION, target, cfg.kg_variant, model,
            categorization(es, kg, cls, members=members), support, flag,
        ))
        report.rows.append(MetricRow(
            COHERENCE, target, cfg.kg_variant, model,
            coherence(es, kg, cls, n=cfg.coherence_n,
                      include_classes=cfg.include_class_neighbors, members=members),
            support, flag,
        ))

    relations = sorted((r for r in range(kg.relation_count) if kg.triples_with_predicate(r)),
                       key=lambda r: kg.rel_term(r).lexical)
    for rel in relations:
        value, used, _ = transition_distance_detail(es, kg, rel)
        report.rows.append(MetricRow(
            TRANSITION, render_term(kg.rel_term(rel)), cfg.kg_variant, model,
            value, used,
        ))
    return report


def parse_target_term(target: str):
    """Recover the Term from a report row's target text."""
    return parse_term_text(target)
