"""TransE / RESCAL / HolE training and scoring over a frozen graph.

Scoring conventions (higher score = more plausible):

* TransE:  f(h,r,t) = -|h + r - t| under the configured L1 or L2 norm.
* RESCAL:  f(h,r,t) = h^T M_r t with one d x d matrix per relation.
* HolE:    f(h,r,t) = r . ccorr(h, t) where
           ccorr(a,b)[i] = sum_k a[k] * b[(k+i) mod d].

Training minimizes the pairwise margin ranking loss
mean(max(0, margin - f(pos) + f(neg))) by plain gradient descent, either
full-batch (corrupted triples drawn once up front, so the objective is
fixed and the recorded per-epoch loss is non-increasing for small steps)
or minibatch SGD with fresh corruptions per batch. Negative sampling
corrupts head or tail with equal probability and rejects corruptions
present in the graph for up to 100 attempts (filtered sampling), then
accepts unfiltered. TransE entity rows are renormalized to unit L2 after
every update step.

All randomness flows from ``TrainConfig.seed`` through one numpy PCG64
stream (init draws entities then relations, then sampling in batch order),
so a fixed config gives bit-identical parameters in single-threaded mode.

Circular correlation and convolution run through real FFTs; they agree
with the naive double loop to ~1e-15 per coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Union

import numpy as np

from .errors import (
    FormatError,
    SamplingError,
    TrainingError,
    ValidationError,
)
from .ntriples_io import render_term, split_term_prefix
from .triplestore import KnowledgeGraph, Term, Triple

TRANSE = "transe"
RESCAL = "rescal"
HOLE = "hole"
MODELS = (TRANSE, RESCAL, HOLE)

FULL_BATCH = "full"
MINIBATCH = "sgd"

_FILTER_ATTEMPTS = 100


@dataclass
class TrainConfig:
    model: str
    d: int = 100
    margin: float = 1.0
    learning_rate: float = 0.01
    epochs: int = 100
    batch: str = FULL_BATCH
    batch_size: int = 1024
    negatives_per_positive: int = 1
    norm: str = "l1"  # TransE only
    seed: int = 0
    memory_cap_floats: int = 100_000_000

    def validate(self):
        if self.model not in MODELS:
            raise ValidationError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.d < 1:
            raise ValidationError("d must be >= 1")
        if self.margin <= 0:
            raise ValidationError("margin must be positive")
        if self.learning_rate <= 0:
            raise ValidationError("learning_rate must be positive")
        if self.epochs < 1:
            raise ValidationError("epochs must be >= 1")
        if self.batch not in (FULL_BATCH, MINIBATCH):
            raise ValidationError(f"batch must be {FULL_BATCH!r} or {MINIBATCH!r}")
        if self.batch == MINIBATCH and self.batch_size < 1:
            raise ValidationError("batch_size must be >= 1")
        if self.negatives_per_positive < 1:
            raise ValidationError("negatives_per_positive must be >= 1")
        if self.norm not in ("l1", "l2"):
            raise ValidationError("norm must be 'l1' or 'l2'")
        if self.memory_cap_floats < 1:
            raise ValidationError("memory_cap_floats must be positive")

    def parameter_estimate(self, n_entities: int, n_relations: int) -> int:
        per_rel = self.d * self.d if self.model == RESCAL else self.d
        return n_entities * self.d + n_relations * per_rel


# ---------------------------------------------------------------------------
# scoring


def circular_correlation(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """ccorr(a,b)[i] = sum_k a[k] * b[(k+i) mod d]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValidationError(
            f"circular correlation needs two equal-length vectors, got {a.shape} and {b.shape}"
        )
    return _ccorr(a[None, :], b[None, :])[0]


def _ccorr(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    d = A.shape[-1]
    return np.fft.irfft(np.conj(np.fft.rfft(A, axis=-1)) * np.fft.rfft(B, axis=-1),
                        n=d, axis=-1)


def _cconv(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    d = A.shape[-1]
    return np.fft.irfft(np.fft.rfft(A, axis=-1) * np.fft.rfft(B, axis=-1),
                        n=d, axis=-1)


def _batch_scores(model, norm, E, P, h, r, t):
    if model == TRANSE:
        u = E[h] + P[r] - E[t]
        if norm == "l1":
            return -np.abs(u).sum(axis=-1)
        return -np.sqrt((u * u).sum(axis=-1))
    if model == RESCAL:
        return np.einsum("bi,bij,bj->b", E[h], P[r], E[t])
    return (P[r] * _ccorr(E[h], E[t])).sum(axis=-1)


@dataclass(eq=False)
class EmbeddingSet:
    """Learned parameters: one d-vector per entity, per-relation vector or matrix."""

    model: str
    dim: int
    entity_terms: list[Term]
    relation_terms: list[Term]
    entity_vectors: np.ndarray
    relation_params: np.ndarray
    seed: int
    norm: str = "l1"
    loss_trace: list[float] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    _entity_rows: dict[Term, int] | None = field(default=None, repr=False)
    _relation_rows: dict[Term, int] | None = field(default=None, repr=False)

    @property
    def entity_count(self) -> int:
        return len(self.entity_terms)

    @property
    def relation_count(self) -> int:
        return len(self.relation_terms)

    def parameter_count(self) -> int:
        return self.entity_vectors.size + self.relation_params.size

    def entity_row(self, term: Term) -> int | None:
        if self._entity_rows is None:
            self._entity_rows = {t: i for i, t in enumerate(self.entity_terms)}
        return self._entity_rows.get(term)

    def relation_row(self, term: Term) -> int | None:
        if self._relation_rows is None:
            self._relation_rows = {t: i for i, t in enumerate(self.relation_terms)}
        return self._relation_rows.get(term)

    def relation_vector(self, r: int) -> np.ndarray:
        """Relation d-vector; for RESCAL the diagonal of M_r (a labeled proxy)."""
        self._check_rel(r)
        if self.model == RESCAL:
            return np.diagonal(self.relation_params[r]).copy()
        return self.relation_params[r]

    def score(self, h: int, r: int, t: int) -> float:
        """Plausibility score of the triple (h, r, t)."""
        self._check_ent(h)
        self._check_rel(r)
        self._check_ent(t)
        idx = np.array([h]), np.array([r]), np.array([t])
        return float(_batch_scores(self.model, self.norm, self.entity_vectors,
                                   self.relation_params, *idx)[0])

    def score_gradients(self, h: int, r: int, t: int):
        """Analytic partials of the score w.r.t. h, t and the relation parameters.

        Returns (grad_h, grad_t, grad_rel); grad_rel is (d,) or (d,d) per
        model. TransE-L1 uses the sign subgradient with sign(0) = 0.
        """
        self._check_ent(h)
        self._check_rel(r)
        self._check_ent(t)
        hv = self.entity_vectors[h]
        tv = self.entity_vectors[t]
        if self.model == TRANSE:
            u = hv + self.relation_params[r] - tv
            if self.norm == "l1":
                g = np.sign(u)
            else:
                nrm = math.sqrt(float(u @ u))
                g = u / nrm if nrm > 0 else np.zeros_like(u)
            return -g, g, -g
        if self.model == RESCAL:
            M = self.relation_params[r]
            return M @ tv, M.T @ hv, np.outer(hv, tv)
        rv = self.relation_params[r]
        grad_h = _ccorr(rv[None, :], tv[None, :])[0]
        grad_t = _cconv(hv[None, :], rv[None, :])[0]
        grad_r = _ccorr(hv[None, :], tv[None, :])[0]
        return grad_h, grad_t, grad_r

    def __eq__(self, other):
        """Equality over what the file format owns: header fields, terms, parameters."""
        if not isinstance(other, EmbeddingSet):
            return NotImplemented
        return (
            self.model == other.model
            and self.dim == other.dim
            and self.seed == other.seed
            and self.entity_terms == other.entity_terms
            and self.relation_terms == other.relation_terms
            and self.entity_vectors.shape == other.entity_vectors.shape
            and self.relation_params.shape == other.relation_params.shape
            and np.array_equal(self.entity_vectors, other.entity_vectors)
            and np.array_equal(self.relation_params, other.relation_params)
        )

    def _check_ent(self, i: int):
        if not 0 <= i < len(self.entity_terms):
            raise ValidationError(f"entity id out of range: {i}")

    def _check_rel(self, i: int):
        if not 0 <= i < len(self.relation_terms):
            raise ValidationError(f"relation id out of range: {i}")


# ---------------------------------------------------------------------------
# negative sampling


def sample_negative(triple: Triple, kg: KnowledgeGraph, rng: np.random.Generator,
                    max_attempts: int = _FILTER_ATTEMPTS) -> Triple:
    """Corrupt head or tail (never the relation) by a uniform random entity.

    Corruptions present in the graph are rejected for up to ``max_attempts``
    draws, then the last drawn corruption is accepted unfiltered. The result
    always differs from the input in exactly one position.
    """
    kg.require_frozen()
    n = kg.entity_count
    if n < 2:
        raise SamplingError("cannot corrupt a triple in a graph with fewer than 2 entities")
    last = None
    for _ in range(max_attempts):
        replace_head = rng.random() < 0.5
        orig = triple.h if replace_head else triple.t
        e = int(rng.integers(0, n))
        while e == orig:
            e = int(rng.integers(0, n))
        cand = Triple(e, triple.r, triple.t) if replace_head else Triple(triple.h, triple.r, e)
        if cand not in kg:
            return cand
        last = cand
    return last


def _encode_keys(h, r, t, m, n):
    return (h.astype(np.int64) * m + r.astype(np.int64)) * n + t.astype(np.int64)


def _sorted_contains(sorted_keys: np.ndarray, keys: np.ndarray) -> np.ndarray:
    pos = np.searchsorted(sorted_keys, keys)
    clipped = np.minimum(pos, len(sorted_keys) - 1)
    return (pos < len(sorted_keys)) & (sorted_keys[clipped] == keys)


def _sample_negatives_batch(rng, Hp, Rp, Tp, n_entities, pos_keys, m, n):
    """Vectorized filtered corruption of a batch of positives."""
    size = len(Hp)
    negH = Hp.copy()
    negT = Tp.copy()
    pending = np.arange(size)
    for _ in range(_FILTER_ATTEMPTS):
        if pending.size == 0:
            break
        coins = rng.random(pending.size) < 0.5
        cand = rng.integers(0, n_entities, pending.size)
        negH[pending] = np.where(coins, cand, Hp[pending])
        negT[pending] = np.where(coins, Tp[pending], cand)
        keys = _encode_keys(negH[pending], Rp[pending], negT[pending], m, n)
        pending = pending[_sorted_contains(pos_keys, keys)]
    # Unfiltered leftovers are fine, but identity corruptions are not.
    ident = np.flatnonzero((negH == Hp) & (negT == Tp))
    for i in ident:
        replace_head = bool(rng.random() < 0.5)
        orig = Hp[i] if replace_head else Tp[i]
        e = int(rng.integers(0, n_entities))
        while e == orig:
            e = int(rng.integers(0, n_entities))
        if replace_head:
            negH[i] = e
        else:
            negT[i] = e
    return negH, negT


# ---------------------------------------------------------------------------
# training


def _segment_sum(idx: np.ndarray, vals: np.ndarray):
    """Group rows of ``vals`` by index with deterministic in-order reduction.

    Returns (unique sorted indices, per-index row sums)."""
    flat = vals.reshape(idx.size, -1)
    order = np.argsort(idx, kind="stable")
    idx_s = idx[order]
    starts = np.flatnonzero(np.r_[True, idx_s[1:] != idx_s[:-1]])
    return idx_s[starts], np.add.reduceat(flat[order], starts, axis=0)


_EMPTY = np.empty(0, dtype=np.int64)


def _hole_loss_and_grads(E, P, Hp, Rp, Tp, Hn, Tn, margin):
    """HolE hinge loss/gradients with entity and relation spectra shared."""
    d = E.shape[1]
    F_hp, F_tp = np.fft.rfft(E[Hp], axis=-1), np.fft.rfft(E[Tp], axis=-1)
    F_hn, F_tn = np.fft.rfft(E[Hn], axis=-1), np.fft.rfft(E[Tn], axis=-1)
    rv = P[Rp]
    ccorr_p = np.fft.irfft(np.conj(F_hp) * F_tp, n=d, axis=-1)
    ccorr_n = np.fft.irfft(np.conj(F_hn) * F_tn, n=d, axis=-1)
    f_p = (rv * ccorr_p).sum(axis=-1)
    f_n = (rv * ccorr_n).sum(axis=-1)
    slack = margin - f_p + f_n
    loss = float(np.maximum(slack, 0.0).mean())
    viol = np.flatnonzero(slack > 0)
    if viol.size == 0:
        empty = np.empty((0, 1))
        return loss, _EMPTY, empty, _EMPTY, empty
    scale = 1.0 / len(Hp)
    F_r = np.fft.rfft(rv[viol], axis=-1)
    ent_idx = np.concatenate([Hp[viol], Tp[viol], Hn[viol], Tn[viol]])
    ent_val = np.concatenate([
        -np.fft.irfft(np.conj(F_r) * F_tp[viol], n=d, axis=-1),   # d/dh ccorr(r, t)
        -np.fft.irfft(F_hp[viol] * F_r, n=d, axis=-1),            # d/dt cconv(h, r)
        np.fft.irfft(np.conj(F_r) * F_tn[viol], n=d, axis=-1),
        np.fft.irfft(F_hn[viol] * F_r, n=d, axis=-1),
    ]) * scale
    rel_val = (ccorr_n[viol] - ccorr_p[viol]) * scale
    ent_rows, ent_grads = _segment_sum(ent_idx, ent_val)
    rel_rows, rel_grads = _segment_sum(Rp[viol], rel_val)
    return loss, ent_rows, ent_grads, rel_rows, rel_grads


def _loss_and_grads(model, norm, E, P, Hp, Rp, Tp, Hn, Tn, margin):
    """Mean hinge loss over pairs and its sparse gradients.

    Returns (loss, ent_rows, ent_grads, rel_rows, rel_grads); the grad
    arrays are row sums aligned with the unique row indices.
    """
    if model == HOLE:
        return _hole_loss_and_grads(E, P, Hp, Rp, Tp, Hn, Tn, margin)
    f_p = _batch_scores(model, norm, E, P, Hp, Rp, Tp)
    f_n = _batch_scores(model, norm, E, P, Hn, Rp, Tn)
    slack = margin - f_p + f_n
    loss = float(np.maximum(slack, 0.0).mean())
    viol = np.flatnonzero(slack > 0)
    if viol.size == 0:
        empty = np.empty((0, 1))
        return loss, _EMPTY, empty, _EMPTY, empty
    scale = 1.0 / len(Hp)
    hp, rp, tp, hn, tn = Hp[viol], Rp[viol], Tp[viol], Hn[viol], Tn[viol]
    ent_idx = np.concatenate([hp, tp, hn, tn])

    if model == TRANSE:
        up = E[hp] + P[rp] - E[tp]
        un = E[hn] + P[rp] - E[tn]
        if norm == "l1":
            gp, gn = np.sign(up), np.sign(un)
        else:
            np_p = np.sqrt((up * up).sum(axis=1, keepdims=True))
            np_n = np.sqrt((un * un).sum(axis=1, keepdims=True))
            gp = np.where(np_p > 0, up / np.where(np_p > 0, np_p, 1.0), 0.0)
            gn = np.where(np_n > 0, un / np.where(np_n > 0, np_n, 1.0), 0.0)
        # L = margin + |u_p| - |u_n| on violated pairs
        ent_val = np.concatenate([gp, -gp, -gn, gn]) * scale
        rel_val = (gp - gn) * scale
    else:  # RESCAL
        hvp, tvp, hvn, tvn = E[hp], E[tp], E[hn], E[tn]
        Mp = P[rp]
        ent_val = np.concatenate([
            -np.einsum("bij,bj->bi", Mp, tvp),
            -np.einsum("bi,bij->bj", hvp, Mp),
            np.einsum("bij,bj->bi", Mp, tvn),
            np.einsum("bi,bij->bj", hvn, Mp),
        ]) * scale
        rel_val = (hvn[:, :, None] * tvn[:, None, :]
                   - hvp[:, :, None] * tvp[:, None, :]) * scale

    ent_rows, ent_grads = _segment_sum(ent_idx, ent_val)
    rel_rows, rel_grads = _segment_sum(rp, rel_val)
    return loss, ent_rows, ent_grads, rel_rows, rel_grads


def _renormalize_rows(E: np.ndarray, rows: np.ndarray | None = None):
    block = E if rows is None else E[rows]
    norms = np.sqrt((block * block).sum(axis=1, keepdims=True))
    normed = np.divide(block, norms, out=block, where=norms > 0)
    if rows is not None:
        E[rows] = normed


def train(kg: KnowledgeGraph, cfg: TrainConfig) -> EmbeddingSet:
    """Train embeddings on a frozen, nonempty graph; deterministic per seed."""
    cfg.validate()
    kg.require_frozen()
    n, m, n_t = kg.entity_count, kg.relation_count, len(kg)
    if n_t == 0:
        raise TrainingError("cannot train on an empty graph")
    if n < 2:
        raise TrainingError("cannot train on a graph with fewer than 2 entities")

    estimate = cfg.parameter_estimate(n, m)
    if estimate > cfg.memory_cap_floats:
        raise TrainingError(
            f"{cfg.model} needs {estimate} parameters "
            f"({n}*{cfg.d} entity + relation {'matrices' if cfg.model == RESCAL else 'vectors'}), "
            f"above the cap of {cfg.memory_cap_floats}; raise memory_cap_floats to override"
        )

    rng = np.random.default_rng(cfg.seed)
    d = cfg.d
    bound = 6.0 / math.sqrt(d)
    E = rng.uniform(-bound, bound, (n, d))
    if cfg.model == RESCAL:
        P = rng.uniform(-bound, bound, (m, d, d))
    else:
        P = rng.uniform(-bound, bound, (m, d))

    triples = list(kg.triples())
    H = np.fromiter((t.h for t in triples), dtype=np.int64, count=n_t)
    R = np.fromiter((t.r for t in triples), dtype=np.int64, count=n_t)
    T = np.fromiter((t.t for t in triples), dtype=np.int64, count=n_t)
    pos_keys = np.sort(_encode_keys(H, R, T, m, n))

    k = cfg.negatives_per_positive
    trace: list[float] = []

    renormed_once = False

    def step(Hp, Rp, Tp, Hn, Tn):
        nonlocal renormed_once
        loss, ent_rows, ent_grads, rel_rows, rel_grads = _loss_and_grads(
            cfg.model, cfg.norm, E, P, Hp, Rp, Tp, Hn, Tn, cfg.margin)
        if ent_rows.size:
            E[ent_rows] -= cfg.learning_rate * ent_grads.reshape((-1,) + E.shape[1:])
            P[rel_rows] -= cfg.learning_rate * rel_grads.reshape((-1,) + P.shape[1:])
            if cfg.model == TRANSE:
                # untouched rows keep the unit norm the first full pass gave them
                _renormalize_rows(E, None if not renormed_once else ent_rows)
                renormed_once = True
        return loss

    if cfg.batch == FULL_BATCH:
        Hp, Rp, Tp = np.tile(H, k), np.tile(R, k), np.tile(T, k)
        Hn, Tn = _sample_negatives_batch(rng, Hp, Rp, Tp, n, pos_keys, m, n)
        for epoch in range(cfg.epochs):
            loss = step(Hp, Rp, Tp, Hn, Tn)
            trace.append(loss)
            _check_finite(E, P, epoch, loss)
    else:
        for epoch in range(cfg.epochs):
            perm = rng.permutation(n_t)
            loss_sum = 0.0
            pair_count = 0
            for start in range(0, n_t, cfg.batch_size):
                chunk = perm[start:start + cfg.batch_size]
                Hp, Rp, Tp = np.tile(H[chunk], k), np.tile(R[chunk], k), np.tile(T[chunk], k)
                Hn, Tn = _sample_negatives_batch(rng, Hp, Rp, Tp, n, pos_keys, m, n)
                loss_sum += step(Hp, Rp, Tp, Hn, Tn) * len(Hp)
                pair_count += len(Hp)
            trace.append(loss_sum / pair_count)
            _check_finite(E, P, epoch, trace[-1])

    stats = kg.stats()
    return EmbeddingSet(
        model=cfg.model,
        dim=d,
        entity_terms=kg.node_terms,
        relation_terms=kg.rel_terms,
        entity_vectors=E,
        relation_params=P,
        seed=cfg.seed,
        norm=cfg.norm,
        loss_trace=trace,
        provenance={
            "model": cfg.model, "d": d, "margin": cfg.margin,
            "learning_rate": cfg.learning_rate, "epochs": cfg.epochs,
            "batch": cfg.batch, "batch_size": cfg.batch_size,
            "negatives_per_positive": k, "norm": cfg.norm, "seed": cfg.seed,
            "triple_count": stats.triple_count,
            "entity_count": stats.entity_count,
            "relation_count": stats.relation_count,
        },
    )


def _check_finite(E, P, epoch, loss):
    if not (math.isfinite(loss) and np.isfinite(E).all() and np.isfinite(P).all()):
        raise TrainingError(
            f"non-finite loss or parameters at epoch {epoch}; lower the learning rate"
        )


# ---------------------------------------------------------------------------
# persistence


def save_embeddings(es: EmbeddingSet) -> str:
    """Text form: header, one `E term values...` line per entity, then `R` lines."""
    lines = [
        f"model={es.model} d={es.dim} entities={es.entity_count} "
        f"relations={es.relation_count} seed={es.seed}"
    ]
    for term, row in zip(es.entity_terms, es.entity_vectors):
        lines.append(f"E {render_term(term)} " + " ".join(repr(v) for v in row.tolist()))
    for i, term in enumerate(es.relation_terms):
        flat = es.relation_params[i].reshape(-1)
        lines.append(f"R {render_term(term)} " + " ".join(repr(v) for v in flat.tolist()))
    return "\n".join(lines) + "\n"


def load_embeddings(source: Union[str, IO]) -> EmbeddingSet:
    """Inverse of :func:`save_embeddings`; bit-exact round trip."""
    text = source if isinstance(source, str) else source.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    if not lines:
        raise FormatError("line 1: empty embedding file")
    header: dict[str, str] = {}
    for token in lines[0].split():
        key, sep, value = token.partition("=")
        if not sep:
            raise FormatError(f"line 1: malformed header token {token!r}")
        header[key] = value
    try:
        model = header["model"]
        d = int(header["d"])
        n = int(header["entities"])
        m = int(header["relations"])
        seed = int(header["seed"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"line 1: bad header ({exc})") from None
    if model not in MODELS:
        raise FormatError(f"line 1: unknown model tag {model!r}")
    if d < 1 or n < 0 or m < 0:
        raise FormatError("line 1: non-positive dimensions in header")

    expected = 1 + n + m
    if len(lines) < expected:
        raise FormatError(
            f"line {len(lines) + 1}: truncated file, expected {expected} lines"
        )
    if len(lines) > expected:
        raise FormatError(f"line {expected + 1}: trailing content after last relation row")

    per_rel = d * d if model == RESCAL else d

    def read_row(lineno: int, tag: str, width: int) -> tuple[Term, np.ndarray]:
        line = lines[lineno - 1]
        if not line.startswith(tag + " "):
            raise FormatError(f"line {lineno}: expected a {tag!r} row")
        try:
            term, rest = split_term_prefix(line[2:])
        except Exception as exc:
            raise FormatError(f"line {lineno}: bad term ({exc})") from None
        tokens = rest.split()
        if len(tokens) != width:
            raise FormatError(
                f"line {lineno}: expected {width} values, found {len(tokens)}"
            )
        try:
            values = np.array([float(v) for v in tokens])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad number ({exc})") from None
        return term, values

    entity_terms, eV = [], np.empty((n, d))
    for i in range(n):
        term, row = read_row(2 + i, "E", d)
        entity_terms.append(term)
        eV[i] = row
    relation_terms = []
    rP = np.empty((m, d, d)) if model == RESCAL else np.empty((m, d))
    for i in range(m):
        term, row = read_row(2 + n + i, "R", per_rel)
        relation_terms.append(term)
        rP[i] = row.reshape(rP.shape[1:])
    return EmbeddingSet(
        model=model, dim=d, entity_terms=entity_terms, relation_terms=relation_terms,
        entity_vectors=eV, relation_params=rP, seed=seed,
        provenance={"model": model, "d": d, "entity_count": n,
                    "relation_count": m, "seed": seed},
    )
