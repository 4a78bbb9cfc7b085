"""Scene-similarity ranking and deterministic 2D projection export."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProjectionError, NumericError, ValidationError
from .ontology import asserted_types, build_from_triples, type_map
from .scenegen import split_scene_pairs
from .embedding import EmbeddingSet
from .ntriples_io import render_term
from .triplestore import KnowledgeGraph, Term
from .vocab import SCENE_NS

_SCENE_CLASS = Term.iri(SCENE_NS + "Scene")
_FOI_CLASS = Term.iri(SCENE_NS + "FeatureOfInterest")
_EVENT_CLASS = Term.iri(SCENE_NS + "Event")

FILTER_ALL = "all"
FILTER_SCENES = "scenes"
FILTER_FOIS = "fois"
FILTER_EVENTS = "events"
NODE_FILTERS = (FILTER_ALL, FILTER_SCENES, FILTER_FOIS, FILTER_EVENTS)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity u.v / (|u||v|); zero operands are an error."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise ValidationError(f"cosine needs two equal-length vectors, got {u.shape} and {v.shape}")
    nu = float(np.sqrt(u @ u))
    nv = float(np.sqrt(v @ v))
    if nu == 0.0 or nv == 0.0:
        raise NumericError("cosine of a zero vector is undefined")
    return float(u @ v) / (nu * nv)


@dataclass(frozen=True)
class ScenePair:
    a: int
    b: int
    similarity: float
    relation: str  # same_parent | cross_parent

    def __post_init__(self):
        if self.a >= self.b:
            raise ValidationError("scene pairs are unordered with a < b")


def _embedding_rows(es: EmbeddingSet, kg: KnowledgeGraph, node_ids) -> np.ndarray:
    rows = []
    for node in node_ids:
        term = kg.node_term(node)
        row = es.entity_row(term)
        if row is None:
            raise ValidationError(f"no embedding for node {render_term(term)}")
        rows.append(row)
    return np.asarray(rows, dtype=np.int64)


def top_scene_pairs(es: EmbeddingSet, kg: KnowledgeGraph, mode: str,
                    k: int) -> list[ScenePair]:
    """The k most cosine-similar sub-scene pairs under the given pair mode.

    Sorted descending; exact ties fall back to ascending (a, b) id order.
    Asking for more pairs than exist returns all of them with a warning.
    """
    if k < 1:
        raise ValidationError("k must be positive")
    pairs = split_scene_pairs(kg, mode)
    if not pairs:
        return []
    if k > len(pairs):
        warnings.warn(f"k={k} exceeds the {len(pairs)} available pairs; returning all",
                      stacklevel=2)
        k = len(pairs)

    nodes = sorted({x for pair in pairs for x in pair})
    rows = _embedding_rows(es, kg, nodes)
    V = es.entity_vectors[rows]
    norms = np.sqrt((V * V).sum(axis=1, keepdims=True))
    if np.any(norms == 0):
        raise NumericError("zero-norm embedding among sub-scenes")
    N = V / norms
    pos = {node: i for i, node in enumerate(nodes)}
    ia = np.fromiter((pos[a] for a, _ in pairs), dtype=np.int64, count=len(pairs))
    ib = np.fromiter((pos[b] for _, b in pairs), dtype=np.int64, count=len(pairs))
    sims = (N[ia] * N[ib]).sum(axis=1)

    a_ids = np.fromiter((a for a, _ in pairs), dtype=np.int64, count=len(pairs))
    b_ids = np.fromiter((b for _, b in pairs), dtype=np.int64, count=len(pairs))
    order = np.lexsort((b_ids, a_ids, -sims))[:k]
    return [ScenePair(int(a_ids[i]), int(b_ids[i]), float(sims[i]), mode) for i in order]


def _leaf_type_label(kg: KnowledgeGraph, ontology, node: int) -> str:
    """Most specific asserted type: one that no other asserted type descends from."""
    types = asserted_types(kg, node)
    if not types:
        return ""
    leaves = [
        c for c in types
        if not any(c in ontology.superclass_closure(other) for other in types if other != c)
    ]
    chosen = min(leaves, key=lambda c: kg.node_term(c).lexical)
    return kg.node_term(chosen).local_name


def _select_nodes(kg: KnowledgeGraph, ontology, node_filter: str) -> list[int]:
    if node_filter == FILTER_ALL:
        return list(range(kg.entity_count))
    if node_filter == FILTER_SCENES:
        wanted = {kg.node_id(_SCENE_CLASS)}
    elif node_filter == FILTER_FOIS:
        wanted = {kg.node_id(_FOI_CLASS)}
    else:
        wanted = {kg.node_id(_EVENT_CLASS)}
    wanted.discard(None)
    selected = []
    members = type_map(kg)
    for cls, instances in members.items():
        ancestry = {cls} | set(ontology.superclass_closure(cls)) if cls in ontology.classes else {cls}
        if ancestry & wanted:
            selected.extend(instances)
    return sorted(set(selected))


def project_2d(es: EmbeddingSet, kg: KnowledgeGraph,
               node_filter: str = FILTER_ALL) -> list[tuple[str, float, float, str]]:
    """Project selected node embeddings onto their top-2 principal components.

    Deterministic: components are eigenvectors of the centered covariance,
    ordered by descending eigenvalue, with the first nonzero loading of each
    component made positive. Returns (term text, x, y, leaf-type label) rows
    in node-id order.
    """
    if node_filter not in NODE_FILTERS:
        raise ValidationError(f"unknown node filter {node_filter!r}")
    ontology = build_from_triples(kg, validate_vocabulary=False)
    nodes = _select_nodes(kg, ontology, node_filter)
    if len(nodes) < 2:
        raise ValidationError("projection needs at least 2 selected nodes")

    rows = _embedding_rows(es, kg, nodes)
    X = es.entity_vectors[rows]
    Xc = X - X.mean(axis=0, keepdims=True)
    cov = (Xc.T @ Xc) / (len(nodes) - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    scale = max(1.0, float(np.abs(Xc).max()) ** 2)
    if eigvals[-1] <= 1e-12 * scale:
        raise DegenerateProjectionError("all selected points coincide; nothing to project")

    W = eigvecs[:, [-1, -2]]
    for j in range(2):
        nonzero = np.flatnonzero(np.abs(W[:, j]) > 1e-12)
        if nonzero.size and W[nonzero[0], j] < 0:
            W[:, j] = -W[:, j]
    XY = Xc @ W

    out = []
    for node, (x, y) in zip(nodes, XY):
        term = kg.node_term(node)
        out.append((render_term(term), float(x), float(y),
                    _leaf_type_label(kg, ontology, node)))
    return out


def pairs_to_csv(pairs: list[ScenePair], kg: KnowledgeGraph) -> str:
    """CSV `scene_a,scene_b,similarity` rows for ranked pairs."""
    lines = ["scene_a,scene_b,similarity"]
    for p in pairs:
        a = render_term(kg.node_term(p.a))
        b = render_term(kg.node_term(p.b))
        lines.append(f"{a},{b},{p.similarity!r}")
    return "\n".join(lines) + "\n"


def projection_to_csv(rows: list[tuple[str, float, float, str]]) -> str:
    """CSV `term,x,y,label` rows for a 2D projection."""
    lines = ["term,x,y,label"]
    for term, x, y, label in rows:
        lines.append(f"{term},{x!r},{y!r},{label}")
    return "\n".join(lines) + "\n"
