"""Scene similarity ranking and 2D cluster export.
===================================================

With high object persistence, consecutive sub-scenes of a drive include
almost the same objects, so their embeddings end up close: the top
same-parent pairs are usually temporally adjacent samples.
"""

import numpy as np

import scene_kge as sk

kg = sk.generate(sk.GenConfig(num_scenes=6, subscenes_per_scene=12,
                              object_persistence=0.9, seed=31))
es = sk.train(kg, sk.TrainConfig(model="transe", d=32, epochs=150,
                                 learning_rate=0.15, margin=2.0,
                                 batch="sgd", batch_size=1024, seed=2))

print("top same-parent sub-scene pairs:")
for pair in sk.top_scene_pairs(es, kg, sk.SAME_PARENT, k=5):
    a = sk.render_term(kg.node_term(pair.a))
    b = sk.render_term(kg.node_term(pair.b))
    print(f"  {a}  ~  {b}   cos={pair.similarity:.4f}")

print("\ntop cross-parent pairs (similar situations in different drives):")
for pair in sk.top_scene_pairs(es, kg, sk.CROSS_PARENT, k=3):
    a = sk.render_term(kg.node_term(pair.a))
    b = sk.render_term(kg.node_term(pair.b))
    print(f"  {a}  ~  {b}   cos={pair.similarity:.4f}")

# Deterministic PCA projection for external plotting; rows are
# (term, x, y, leaf-type label). Feed the CSV to any plotting tool to
# render cluster figures.
rows = sk.project_2d(es, kg, "fois")
labels = {}
for _, x, y, label in rows:
    labels.setdefault(label, []).append((x, y))
print("\nprojected feature-of-interest clusters:")
for label, points in sorted(labels.items()):
    pts = np.array(points)
    print(f"  {label:14s} n={len(points):3d} centroid=({pts[:,0].mean():+.3f}, "
          f"{pts[:,1].mean():+.3f})")
