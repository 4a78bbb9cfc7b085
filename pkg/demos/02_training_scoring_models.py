"""Training the three embedding models.
========================================

TransE scores a triple by the negative distance between h + r and t;
RESCAL by the bilinear form h^T M_r t; HolE by the dot product of the
relation vector with the circular correlation of h and t.
"""

import numpy as np

import scene_kge as sk

kg = sk.generate(sk.GenConfig(num_scenes=4, subscenes_per_scene=10, seed=11))
print("training graph:", kg.stats())

sets = {}
for model in sk.MODELS:
    cfg = sk.TrainConfig(model=model, d=24, epochs=60, learning_rate=0.1,
                         batch="sgd", batch_size=512, seed=1)
    es = sk.train(kg, cfg)
    sets[model] = es
    print(f"{model:7s} loss {es.loss_trace[0]:.3f} -> {es.loss_trace[-1]:.3f}, "
          f"{es.parameter_count()} parameters")

# Positive triples should outscore corrupted ones after training.
es = sets["transe"]
rng = np.random.default_rng(0)
triples = list(kg.triples())[:200]
wins = 0
for triple in triples:
    neg = sk.sample_negative(triple, kg, rng)
    wins += es.score(*triple) > es.score(*neg)
print(f"\ntransE ranks the positive above a corruption in {wins}/{len(triples)} cases")

# The circular correlation primitive behind HolE:
a, b = np.array([1.0, 0.0, 0.0, 0.0]), np.array([0.0, 2.0, 0.0, 0.0])
print("\nccorr(a, b) =", sk.circular_correlation(a, b))

# Embeddings round-trip through a plain text format, bit-exactly.
text = sk.save_embeddings(es)
assert sk.load_embeddings(text) == es
print("embedding file:", len(text.splitlines()), "lines; header:",
      text.splitlines()[0])
