"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criteria 1-4, 9, 10 are exact oracle/structural checks. Criteria 5-8 are
trend-level reproductions on a fixed synthetic workload (20 scenes x 40
sub-scenes, Lyft-like catalog, object persistence 0.9), TransE and HolE at
d=50, 200 epochs, training seeds {0, 1, 2}; the graph generator seed is
fixed. Hyperparameters for the trend runs (learning rate, margin, batch)
are toolkit defaults chosen once and frozen here.
"""

import statistics

import numpy as np
import pytest

import scene_kge as sk
from scene_kge.embedding import HOLE, RESCAL, TRANSE, EmbeddingSet
from scene_kge.metrics import CATEGORIZATION, COHERENCE, TRANSITION
from scene_kge.triplestore import RELATION

from conftest import (
    HAS_PART_T,
    INCLUDES_T,
    PAPER_BLOCK,
    RDF_TYPE_T,
    SUBCLASS_T,
    cls,
    inst,
    random_scene_shaped_graph,
)
from test_enrichment import oracle_include_paths, oracle_infer_types
from test_embedding import naive_ccorr, make_es, toy_graph


def report(criterion: int, ok: bool, detail: str):
    marker = "PASS" if ok else "FAIL"
    print(f"[{marker}] criterion {criterion}: {detail}")
    assert ok, f"criterion {criterion}: {detail}"


# -- the shared trend workload (criteria 5-8) ---------------------------------

GEN_SEED = 42
TRAIN_SEEDS = (0, 1, 2)
TREND_TRAIN = dict(d=50, epochs=200, batch="sgd", batch_size=1024,
                   learning_rate=0.15, margin=2.0, norm="l1")


@pytest.fixture(scope="session")
def trend_runs():
    """Train {transe, hole} x {base, types, paths} x 3 seeds once."""
    base = sk.generate(sk.GenConfig(num_scenes=20, subscenes_per_scene=40,
                                    foi_catalog_size=sk.LYFT_CATALOG_SIZE,
                                    object_persistence=0.9, seed=GEN_SEED))
    graphs = {v.value: sk.make_variant(base, v) for v in sk.KgVariant}
    runs = {}
    for model in (TRANSE, HOLE):
        for tag, kg in graphs.items():
            for seed in TRAIN_SEEDS:
                cfg = sk.TrainConfig(model=model, seed=seed, **TREND_TRAIN)
                es = sk.train(kg, cfg)
                rep = sk.evaluate_all(es, kg, sk.EvalConfig(kg_variant=tag,
                                                            coherence_n=100))
                runs[(model, tag, seed)] = (es, rep)
    return graphs, runs


def mean_categorization(rep: sk.MetricReport) -> float:
    return float(np.mean([r.value for r in rep.rows if r.metric == CATEGORIZATION]))


# -- criterion 1: oracle equivalence ------------------------------------------

def test_criterion_1_oracle_equivalence():
    rng = np.random.default_rng(1001)
    for _ in range(100):
        kg = random_scene_shaped_graph(rng, max_triples=1000)
        assert set(sk.infer_types(kg).term_triples()) == oracle_infer_types(
            set(kg.term_triples()))
        assert set(sk.materialize_include_paths(kg).term_triples()) == (
            oracle_include_paths(set(kg.term_triples())))

    # coherence vs exhaustive nearest-neighbor oracle
    for trial in range(50):
        n_entities = int(rng.integers(20, 200))
        n = int(rng.integers(2, min(100, n_entities - 2)))
        kg = sk.KnowledgeGraph()
        concept = kg.intern(cls("C"))
        type_rel = kg.intern(RDF_TYPE_T, RELATION)
        names = [kg.intern(inst(f"e{i}")) for i in range(n_entities)]
        typed = set()
        for e in names:
            if rng.random() < 0.4:
                kg.insert(sk.Triple(e, type_rel, concept))
                typed.add(e)
        kg.freeze()
        E = rng.normal(size=(kg.entity_count, 6))
        es = EmbeddingSet(model=TRANSE, dim=6, entity_terms=kg.node_terms,
                          relation_terms=kg.rel_terms, entity_vectors=E,
                          relation_params=rng.normal(size=(kg.relation_count, 6)),
                          seed=0)
        cvec = E[concept]
        sims = sorted(
            ((-float(E[e] @ cvec / (np.linalg.norm(E[e]) * np.linalg.norm(cvec))), e)
             for e in names),
        )
        oracle = sum(1 for _, e in sims[:n] if e in typed) / n
        assert sk.coherence(es, kg, concept, n=n) == pytest.approx(oracle, abs=0)

    # transition distance and categorization direct-formula oracles
    for trial in range(25):
        kg = sk.KnowledgeGraph()
        type_rel = kg.intern(RDF_TYPE_T, RELATION)
        r = kg.intern(cls("isPartOf"), RELATION)
        concept = kg.intern(cls("C"))
        ents = [kg.intern(inst(f"e{i}")) for i in range(12)]
        for e in ents[:6]:
            kg.insert(sk.Triple(e, type_rel, concept))
        for _ in range(10):
            kg.insert(sk.Triple(ents[int(rng.integers(0, 12))], r,
                                ents[int(rng.integers(0, 12))]))
        kg.freeze()
        E = rng.normal(size=(kg.entity_count, 5))
        R = rng.normal(size=(kg.relation_count, 5))
        es = EmbeddingSet(model=TRANSE, dim=5, entity_terms=kg.node_terms,
                          relation_terms=kg.rel_terms, entity_vectors=E,
                          relation_params=R, seed=0)
        mean_vec = E[ents[:6]].mean(axis=0)
        cat_oracle = float(mean_vec @ E[concept]
                           / (np.linalg.norm(mean_vec) * np.linalg.norm(E[concept])))
        assert abs(sk.categorization(es, kg, concept) - cat_oracle) <= 1e-12
        pairs = kg.triples_with_predicate(r)
        vals = []
        for h, t in pairs:
            u, v = E[h] + R[r], E[t]
            vals.append(float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v))))
        assert abs(sk.transition_distance(es, kg, r) - float(np.mean(vals))) <= 1e-12

    # HolE score vs the naive double loop
    for d in (2, 8, 33, 64):
        E = rng.normal(size=(4, d))
        P = rng.normal(size=(2, d))
        es = make_es(HOLE, E, P)
        for h in range(4):
            for t in range(4):
                naive = float(P[1] @ naive_ccorr(E[h], E[t]))
                assert abs(es.score(h, 1, t) - naive) <= 1e-12

    report(1, True, "enrichment, coherence, categorization, transition and "
                    "HolE agree with their oracles")


# -- criterion 2: gradient checks ----------------------------------------------

def test_criterion_2_gradient_checks():
    rng = np.random.default_rng(2002)
    d, step, tol = 8, 1e-5, 1e-4
    worst = 0.0
    for model, norm in ((TRANSE, "l1"), (TRANSE, "l2"), (RESCAL, "l1"), (HOLE, "l1")):
        E = rng.normal(size=(6, d))
        P = rng.normal(size=(3, d, d)) if model == RESCAL else rng.normal(size=(3, d))
        es = make_es(model, E, P, norm=norm)
        probes = 0
        while probes < 100:
            h, t = (int(x) for x in rng.integers(0, 6, 2))
            r = int(rng.integers(0, 3))
            if h == t:
                continue
            probes += 1
            grad_h, grad_t, grad_r = es.score_gradients(h, r, t)

            def fd(arr, idx):
                orig = arr[idx]
                arr[idx] = orig + step
                up = es.score(h, r, t)
                arr[idx] = orig - step
                down = es.score(h, r, t)
                arr[idx] = orig
                return (up - down) / (2 * step)

            for analytic, target, row in ((grad_h, es.entity_vectors, h),
                                          (grad_t, es.entity_vectors, t),
                                          (grad_r, es.relation_params, r)):
                numeric = np.array([fd(target, (row,) + ix)
                                    for ix in np.ndindex(analytic.shape)])
                numeric = numeric.reshape(analytic.shape)
                denom = max(np.linalg.norm(analytic.ravel()),
                            np.linalg.norm(numeric.ravel()), 1e-8)
                rel = float(np.linalg.norm((analytic - numeric).ravel()) / denom)
                worst = max(worst, rel)
                assert rel <= tol, (model, norm, rel)
    report(2, True, f"analytic vs central differences, 100 probes per model, "
                    f"worst relative error {worst:.2e} <= 1e-4")


# -- criterion 3: parameter-count formulas ---------------------------------------

def test_criterion_3_parameter_counts():
    kg = toy_graph(n_entities=100, n_relations=5, n_triples=150, seed=33)
    d = 10
    counts = {}
    for model in (TRANSE, HOLE, RESCAL):
        es = sk.train(kg, sk.TrainConfig(model=model, d=d, epochs=1, seed=0))
        counts[model] = es.parameter_count()
    ok = (counts[TRANSE] == 100 * d + 5 * d
          and counts[HOLE] == 100 * d + 5 * d
          and counts[RESCAL] == 100 * d + 5 * d * d)
    report(3, ok, f"transe/hole {counts[TRANSE]} == n*d+m*d, "
                  f"rescal {counts[RESCAL]} == n*d+m*d^2")


# -- criterion 4: variant structural invariants ----------------------------------

def test_criterion_4_variant_invariants():
    for seed in (7, 8):
        base = sk.generate(sk.GenConfig(num_scenes=3, subscenes_per_scene=6,
                                        event_probability=0.4, seed=seed))
        types = sk.make_variant(base, sk.KgVariant.WITH_TYPES)
        paths = sk.make_variant(base, sk.KgVariant.WITH_PATHS)
        b, t, p = (set(g.term_triples()) for g in (base, types, paths))
        assert b < t < p, "triple sets must grow strictly"
        sb, st, sp = base.stats(), types.stats(), paths.stats()
        assert sb.entity_count == st.entity_count == sp.entity_count
        assert sb.relation_count == st.relation_count == sp.relation_count
    report(4, True, "base < types < paths strictly; entity and relation "
                    "counts constant across variants")


# -- criteria 5-8: trend-level findings -------------------------------------------

def test_criterion_5_informational_detail_helps(trend_runs):
    _, runs = trend_runs
    med = {tag: statistics.median(mean_categorization(runs[(TRANSE, tag, s)][1])
                                  for s in TRAIN_SEEDS)
           for tag in ("base", "paths")}
    ipo = {tag: statistics.median(
        runs[(TRANSE, tag, s)][1].value(TRANSITION, "scene:isPartOf")
        for s in TRAIN_SEEDS) for tag in ("base", "paths")}
    ok = med["paths"] >= med["base"] and ipo["paths"] > ipo["base"]
    report(5, ok, f"median mean-categorization base={med['base']:.4f} "
                  f"paths={med['paths']:.4f}; median isPartOf transition "
                  f"base={ipo['base']:.4f} paths={ipo['paths']:.4f}")


def test_criterion_6_scene_coherence(trend_runs):
    _, runs = trend_runs
    values = [runs[(TRANSE, "paths", s)][1].value(COHERENCE, "scene:Scene")
              for s in TRAIN_SEEDS]
    hits = sum(v >= 0.9 for v in values)
    report(6, hits >= 2, f"coherence(Scene, n=100) on paths = "
                         f"{[round(v, 3) for v in values]}; {hits}/3 seeds >= 0.9")


def test_criterion_7_transe_beats_hole(trend_runs):
    _, runs = trend_runs
    wins = 0
    pairs = []
    for s in TRAIN_SEEDS:
        te = mean_categorization(runs[(TRANSE, "paths", s)][1])
        ho = mean_categorization(runs[(HOLE, "paths", s)][1])
        pairs.append((round(te, 4), round(ho, 4)))
        wins += te >= ho
    report(7, wins >= 2, f"mean-categorization (transe, hole) per seed: {pairs}; "
                         f"transe wins {wins}/3")


def _sample_index(kg, node):
    local = kg.node_term(node).local_name
    return int(local.rsplit("-", 1)[1])


def test_criterion_8_top_pairs_are_temporally_adjacent(trend_runs):
    graphs, runs = trend_runs
    kg = graphs["base"]
    part_rel = kg.rel_id(HAS_PART_T)
    by_scene = {}
    for scene, sub in kg.triples_with_predicate(part_rel):
        by_scene.setdefault(scene, []).append(sub)

    fractions = []
    for seed in TRAIN_SEEDS:
        es, _ = runs[(TRANSE, "base", seed)]
        adjacent = 0
        for scene, subs in by_scene.items():
            rows = [es.entity_row(kg.node_term(s)) for s in subs]
            V = es.entity_vectors[rows]
            N = V / np.linalg.norm(V, axis=1, keepdims=True)
            sims = N @ N.T
            np.fill_diagonal(sims, -np.inf)
            i, j = np.unravel_index(np.argmax(sims), sims.shape)
            delta = abs(_sample_index(kg, subs[i]) - _sample_index(kg, subs[j]))
            adjacent += delta == 1
        fractions.append(adjacent / len(by_scene))
    med = statistics.median(fractions)
    report(8, med >= 0.6, f"fraction of scenes whose top same-parent pair is "
                          f"adjacent: {[round(f, 2) for f in fractions]}, "
                          f"median {med:.2f} >= 0.6")


# -- criterion 9: format round-trips and fuzz --------------------------------------

def test_criterion_9_round_trips_and_fuzz():
    fixtures = [
        PAPER_BLOCK,
        PAPER_BLOCK + "scene:Car owl:subClassOf scene:Vehicle .\n",
        sk.serialize_document(sk.generate(sk.GenConfig(
            num_scenes=2, subscenes_per_scene=4, event_probability=0.5, seed=3))),
        ':a scene:label "tricky \\"x\\"\\n\\t" .\n'
        ':a scene:inXSDDateTime "2019-01-01T00:00:00.000"^^xsd:dateTime .\n',
    ]
    for doc in fixtures:
        kg = sk.parse_document(doc)
        assert sk.parse_document(sk.serialize_document(kg)) == kg

    kg = toy_graph(n_entities=12, n_relations=3, n_triples=30, seed=9)
    for model in (TRANSE, RESCAL, HOLE):
        es = sk.train(kg, sk.TrainConfig(model=model, d=6, epochs=2, seed=1))
        assert sk.load_embeddings(sk.save_embeddings(es)) == es

    rng = np.random.default_rng(909)
    survived = 0
    base_bytes = [doc.encode() for doc in fixtures]
    for i in range(10_000):
        data = bytearray(base_bytes[i % len(base_bytes)])
        for _ in range(int(rng.integers(1, 8))):
            data[int(rng.integers(0, len(data)))] = int(rng.integers(0, 256))
        try:
            sk.parse_document(bytes(data))
        except sk.ParseError:
            pass
        survived += 1
    report(9, survived == 10_000,
           f"all fixtures round-trip exactly; parser survived {survived}/10000 "
           "byte-mutation cases with errors only")


# -- criterion 10: end-to-end grid determinism --------------------------------------

GRID_CONFIG = """\
input = base.nt
models = transe,hole
variants = base,types,paths
seeds = 1,2
d = 8
epochs = 5
learning_rate = 0.1
batch = sgd
batch_size = 256
coherence_n = 10
outdir = {outdir}
"""


def test_criterion_10_grid_determinism(tmp_path):
    from scene_kge.cli import main
    base = sk.generate(sk.GenConfig(num_scenes=2, subscenes_per_scene=4, seed=5))
    (tmp_path / "base.nt").write_text(sk.serialize_document(base))
    merged = []
    for run_dir in ("out1", "out2"):
        cfg_path = tmp_path / f"grid-{run_dir}.cfg"
        cfg_path.write_text(GRID_CONFIG.format(outdir=tmp_path / run_dir)
                            .replace("input = base.nt", f"input = {tmp_path / 'base.nt'}"))
        assert main(["grid", str(cfg_path)]) == 0
        merged.append((tmp_path / run_dir / "merged.csv").read_bytes())
    report(10, merged[0] == merged[1],
           f"grid rerun produced byte-identical merged CSV ({len(merged[0])} bytes)")
