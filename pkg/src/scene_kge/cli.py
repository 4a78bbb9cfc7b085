"""Command-line pipeline: generate -> enrich -> train -> evaluate -> similar/project.

Exit codes: 0 success, 1 domain error (one-line diagnostic on stderr),
2 usage error. Logs go to stderr; data goes to files or stdout only.
Every file artifact gets a sibling ``<name>.manifest.json`` recording the
subcommand, flags, inputs, seed, version, and wall-clock duration.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from pathlib import Path

from . import __version__
from .analysis import (
    NODE_FILTERS,
    pairs_to_csv,
    project_2d,
    projection_to_csv,
    top_scene_pairs,
)
from .embedding import (
    MODELS,
    TrainConfig,
    load_embeddings,
    save_embeddings,
    train,
)
from .enrichment import KgVariant, make_variant
from .errors import SceneKgError
from .metrics import EvalConfig, evaluate_all
from .ntriples_io import parse_document, serialize_document
from .scenegen import (
    CROSS_PARENT,
    LYFT_CATALOG_SIZE,
    NUSCENES_CATALOG_SIZE,
    SAME_PARENT,
    GenConfig,
    generate,
)

_VARIANTS = {v.value: v for v in KgVariant}


class _UsageError(Exception):
    pass


def _read_graph(path: str):
    data = Path(path).read_bytes()
    return parse_document(data)


def _emit(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _manifest(args, inputs: list[str], outputs: list[str], started: float):
    flags = {k: v for k, v in vars(args).items() if k != "func" and not k.startswith("_")}
    return {
        "subcommand": args.subcommand,
        "flags": flags,
        "inputs": inputs,
        "outputs": outputs,
        "seed": flags.get("seed"),
        "toolkit_version": __version__,
        "duration_seconds": round(time.monotonic() - started, 6),
    }


def _finish(args, inputs: list[str], output: str | None, started: float):
    if output is not None:
        manifest = _manifest(args, inputs, [output], started)
        Path(output + ".manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n"
        )


def _warn_threads(args):
    if getattr(args, "threads", 1) > 1:
        print("note: parallel mode is not implemented; running single-threaded",
              file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_generate(args) -> int:
    started = time.monotonic()
    catalog = LYFT_CATALOG_SIZE if args.catalog == "lyft" else NUSCENES_CATALOG_SIZE
    cfg = GenConfig(
        num_scenes=args.scenes,
        subscenes_per_scene=args.subscenes,
        foi_catalog_size=catalog,
        objects_per_subscene=(args.objects_min, args.objects_max),
        object_persistence=args.persistence,
        event_probability=args.event_prob,
        seed=args.seed,
    )
    kg = generate(cfg)
    Path(args.output).write_text(serialize_document(kg))
    stats = kg.stats()
    print(f"generated {stats.triple_count} triples, {stats.entity_count} entities",
          file=sys.stderr)
    _finish(args, [], args.output, started)
    return 0


def _cmd_enrich(args) -> int:
    started = time.monotonic()
    kg = _read_graph(args.input)
    out = make_variant(kg, _VARIANTS[args.variant])
    Path(args.output).write_text(serialize_document(out))
    print(f"{args.variant}: {len(kg)} -> {len(out)} triples", file=sys.stderr)
    _finish(args, [args.input], args.output, started)
    return 0


def _cmd_train(args) -> int:
    started = time.monotonic()
    _warn_threads(args)
    kg = _read_graph(args.input)
    cfg = TrainConfig(
        model=args.model, d=args.d, margin=args.margin, learning_rate=args.lr,
        epochs=args.epochs, batch=args.batch, batch_size=args.batch_size,
        negatives_per_positive=args.negatives, norm=args.norm, seed=args.seed,
        memory_cap_floats=args.memory_cap,
    )
    es = train(kg, cfg)
    Path(args.output).write_text(save_embeddings(es))
    print(f"trained {args.model} d={args.d}: final loss {es.loss_trace[-1]:.6f}",
          file=sys.stderr)
    _finish(args, [args.input], args.output, started)
    return 0


def _cmd_evaluate(args) -> int:
    started = time.monotonic()
    kg = _read_graph(args.input)
    es = load_embeddings(Path(args.embeddings).read_text())
    cfg = EvalConfig(
        kg_variant=args.variant,
        coherence_n=args.n,
        include_class_neighbors=args.include_class_neighbors,
        check_provenance=not args.no_provenance_check,
    )
    report = evaluate_all(es, kg, cfg)
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    _emit(report.to_csv(), args.output)
    _finish(args, [args.input, args.embeddings], args.output, started)
    return 0


def _cmd_similar(args) -> int:
    started = time.monotonic()
    kg = _read_graph(args.input)
    es = load_embeddings(Path(args.embeddings).read_text())
    mode = SAME_PARENT if args.mode == "same" else CROSS_PARENT
    pairs = top_scene_pairs(es, kg, mode, args.k)
    _emit(pairs_to_csv(pairs, kg), args.output)
    _finish(args, [args.input, args.embeddings], args.output, started)
    return 0


def _cmd_project(args) -> int:
    started = time.monotonic()
    kg = _read_graph(args.input)
    es = load_embeddings(Path(args.embeddings).read_text())
    rows = project_2d(es, kg, args.filter)
    _emit(projection_to_csv(rows), args.output)
    _finish(args, [args.input, args.embeddings], args.output, started)
    return 0


def _cmd_stats(args) -> int:
    kg = _read_graph(args.input)
    s = kg.stats()
    print(f"triples={s.triple_count} entities={s.entity_count} relations={s.relation_count}")
    return 0


# ---------------------------------------------------------------------------
# grid


_GRID_KEYS = {
    "input", "models", "variants", "seeds", "d", "epochs", "learning_rate",
    "margin", "batch", "batch_size", "negatives", "norm", "coherence_n",
    "outdir", "threads", "memory_cap",
}


def _parse_grid_config(path: str) -> dict:
    cfg = {
        "variants": ["base", "types", "paths"],
        "seeds": [0],
        "d": 100,
        "epochs": 100,
        "learning_rate": 0.01,
        "margin": 1.0,
        "batch": "sgd",
        "batch_size": 1024,
        "negatives": 1,
        "norm": "l1",
        "coherence_n": 1000,
        "outdir": "grid-out",
        "threads": 1,
        "memory_cap": 100_000_000,
    }
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SceneKgError(f"cannot read grid config: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise _UsageError(f"grid config line {lineno}: expected key=value")
        if key not in _GRID_KEYS:
            raise _UsageError(f"grid config line {lineno}: unknown key {key!r}")
        cfg[key] = value

    if "input" not in cfg:
        raise _UsageError("grid config: missing required key 'input'")
    if "models" not in cfg or not str(cfg["models"]).strip():
        raise _UsageError("grid config: 'models' must list at least one model")

    def csv_list(v):
        return [item.strip() for item in str(v).split(",") if item.strip()]

    cfg["models"] = csv_list(cfg["models"])
    if not cfg["models"]:
        raise _UsageError("grid config: 'models' must list at least one model")
    for model in cfg["models"]:
        if model not in MODELS:
            raise _UsageError(f"grid config: unknown model {model!r}")
    if isinstance(cfg["variants"], str):
        cfg["variants"] = csv_list(cfg["variants"])
    for v in cfg["variants"]:
        if v not in _VARIANTS:
            raise _UsageError(f"grid config: unknown variant {v!r}")
    if isinstance(cfg["seeds"], str):
        cfg["seeds"] = [int(s) for s in csv_list(cfg["seeds"])]
    for key in ("d", "epochs", "batch_size", "negatives", "coherence_n", "threads",
                "memory_cap"):
        cfg[key] = int(cfg[key])
    for key in ("learning_rate", "margin"):
        cfg[key] = float(cfg[key])
    return cfg


def _cmd_grid(args) -> int:
    started = time.monotonic()
    cfg = _parse_grid_config(args.config)
    if cfg["threads"] > 1:
        print("note: parallel mode is not implemented; running single-threaded",
              file=sys.stderr)
    outdir = Path(cfg["outdir"])
    outdir.mkdir(parents=True, exist_ok=True)
    base = _read_graph(cfg["input"])

    # Round-trip each variant through the interchange format so a grid cell
    # sees exactly the graph a manual enrich-then-train invocation would.
    graphs = {}
    for v in cfg["variants"]:
        doc = serialize_document(make_variant(base, _VARIANTS[v]))
        (outdir / f"{v}.nt").write_text(doc)
        graphs[v] = parse_document(doc)

    # merged[(metric, target)][f"{model}_{variant}"] = [per-seed values]
    merged: dict[tuple[str, str], dict[str, list[float]]] = {}
    failures = []
    for model in cfg["models"]:
        for variant in cfg["variants"]:
            for seed in cfg["seeds"]:
                cell = f"{model}-{variant}-seed{seed}"
                print(f"grid: {cell}", file=sys.stderr)
                try:
                    tc = TrainConfig(
                        model=model, d=cfg["d"], margin=cfg["margin"],
                        learning_rate=cfg["learning_rate"], epochs=cfg["epochs"],
                        batch=cfg["batch"], batch_size=cfg["batch_size"],
                        negatives_per_positive=cfg["negatives"], norm=cfg["norm"],
                        seed=seed, memory_cap_floats=cfg["memory_cap"],
                    )
                    es = train(graphs[variant], tc)
                    report = evaluate_all(
                        es, graphs[variant],
                        EvalConfig(kg_variant=variant, coherence_n=cfg["coherence_n"]),
                    )
                except SceneKgError as exc:
                    failures.append(cell)
                    print(f"grid: {cell} failed: {exc}", file=sys.stderr)
                    continue
                (outdir / f"{cell}.csv").write_text(report.to_csv())
                for row in report.rows:
                    merged.setdefault((row.metric, row.target), {}).setdefault(
                        f"{model}_{variant}", []
                    ).append(row.value)

    columns = [f"{m}_{v}" for m in cfg["models"] for v in cfg["variants"]]
    lines = ["metric,target," + ",".join(columns)]
    for (metric, target) in sorted(merged):
        cells = []
        for col in columns:
            values = merged[(metric, target)].get(col)
            cells.append(repr(statistics.median(values)) if values else "")
        quoted = '"' + target.replace('"', '""') + '"' if "," in target or '"' in target else target
        lines.append(f"{metric},{quoted}," + ",".join(cells))
    merged_path = outdir / "merged.csv"
    merged_path.write_text("\n".join(lines) + "\n")
    print(f"grid: merged table at {merged_path}", file=sys.stderr)

    manifest = _manifest(args, [cfg["input"]], [str(merged_path)], started)
    manifest["failures"] = failures
    (outdir / "merged.csv.manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    if failures:
        print(f"grid: {len(failures)} cell(s) failed", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scene-kge",
        description="Scene knowledge-graph embedding toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, seed=True):
        p.add_argument("--threads", type=int, default=1,
                       help="worker count (only 1 is implemented)")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("generate", help="generate a synthetic base scene graph")
    p.add_argument("--scenes", type=int, required=True)
    p.add_argument("--subscenes", type=int, default=40)
    p.add_argument("--catalog", choices=("lyft", "nuscenes"), default="lyft")
    p.add_argument("--objects-min", type=int, default=3)
    p.add_argument("--objects-max", type=int, default=10)
    p.add_argument("--persistence", type=float, default=0.9)
    p.add_argument("--event-prob", type=float, default=0.25)
    p.add_argument("-o", "--output", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("enrich", help="materialize a KG variant")
    p.add_argument("input")
    p.add_argument("--variant", choices=tuple(_VARIANTS), required=True)
    p.add_argument("-o", "--output", required=True)
    add_common(p, seed=False)
    p.set_defaults(func=_cmd_enrich)

    p = sub.add_parser("train", help="train embeddings on a graph")
    p.add_argument("input")
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--d", type=int, default=100)
    p.add_argument("--margin", type=float, default=1.0)
    p.add_argument("--lr", type=float, default=0.01)
    p.add_argument("--epochs", type=int, default=100)
    p.add_argument("--batch", choices=("full", "sgd"), default="sgd")
    p.add_argument("--batch-size", type=int, default=1024)
    p.add_argument("--negatives", type=int, default=1)
    p.add_argument("--norm", choices=("l1", "l2"), default="l1")
    p.add_argument("--memory-cap", type=int, default=100_000_000)
    p.add_argument("-o", "--output", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate", help="compute the intrinsic quality report")
    p.add_argument("input")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--variant", choices=tuple(_VARIANTS), default="base",
                   help="variant tag recorded in report rows")
    p.add_argument("--n", type=int, default=1000, help="coherence neighborhood size")
    p.add_argument("--include-class-neighbors", action="store_true")
    p.add_argument("--no-provenance-check", action="store_true")
    p.add_argument("-o", "--output")
    add_common(p, seed=False)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("similar", help="rank sub-scene pairs by cosine similarity")
    p.add_argument("input")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--mode", choices=("same", "cross"), required=True)
    p.add_argument("-k", type=int, default=10)
    p.add_argument("-o", "--output")
    add_common(p, seed=False)
    p.set_defaults(func=_cmd_similar)

    p = sub.add_parser("project", help="export a 2D PCA projection")
    p.add_argument("input")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--filter", choices=NODE_FILTERS, default="all")
    p.add_argument("-o", "--output")
    add_common(p, seed=False)
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("stats", help="print triple/entity/relation counts")
    p.add_argument("input")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("grid", help="run a models x variants x seeds evaluation grid")
    p.add_argument("config", help="key=value config file")
    p.set_defaults(func=_cmd_grid)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SceneKgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
