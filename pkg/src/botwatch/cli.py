"""Command-line front end: every analysis stage as a subcommand plus a
``run`` command that executes the whole pipeline and writes a report.

Stages hand off through files with stable names inside the output
directory (``dataset.jsonl``, ``mention.gexf``, ``coordination.gexf``,
``partition.csv``, ``centrality.csv``, ``kde_<x>_<y>.csv``,
``report.json``, ``report.md``), so each step is independently
invocable and the network-free stages run fully offline.

Exit codes: 0 success, 1 configuration error, 2 data error, 3 network
error.
"""

from __future__ import annotations

import argparse
import csv as _csv
import io
import json
import os
import sys

from . import bot_scoring, density, ingest, signals, synth
from .centrality import eigenvector_centrality, rank_accounts, ranking_table
from .community import (
    Partition,
    adjusted_rand_index,
    community_sizes,
    louvain,
)
from .errors import BotwatchError, ConfigurationError, DataError, NetworkError
from .gexf import write_gexf
from .graphs import (
    WeightedGraph,
    build_mention_graph,
    edge_list_csv,
    extract_coordination_events,
    graph_stats,
    project_coordination_graph,
)
from .models import Dataset, parse_timestamp

#: reported in the original case study; context only, never asserted
PAPER_REFERENCE_COUNTS = {
    "full_network_tweets": 41288,
    "full_network_nodes": 26363,
    "full_network_edges": 41255,
    "full_network_communities": 4108,
    "tweetdeck_tweets": 22519,
    "tweetdeck_nodes": 3767,
    "tweetdeck_communities": 124,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # bad flags are configuration errors: exit 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


# ---------------------------------------------------------------------------
# file helpers
# ---------------------------------------------------------------------------


def _load_dataset(path: str, fmt: str, column_map: dict | None = None):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read input {path}: {exc}") from exc
    if fmt == "jsonl":
        return ingest.parse_jsonl(data, provenance=path)
    if fmt == "csv":
        if column_map is None:
            column_map = {
                "id": "id",
                "screen_name": "screen_name",
                "created": "created_at",
                "source": "source",
                "text": "text",
                "retweet_of": "retweet_of",
            }
        return ingest.parse_csv(data, column_map, provenance=path)
    raise ConfigurationError(f"unknown input format '{fmt}'")


def read_edge_list_csv(path: str, directed: bool = False) -> WeightedGraph:
    """Load a ``source,target,weight`` CSV written by this toolkit."""
    g = WeightedGraph(directed=directed)
    with open(path, encoding="utf-8") as fh:
        reader = _csv.DictReader(fh)
        for field_name in ("source", "target", "weight"):
            if field_name not in (reader.fieldnames or []):
                raise ConfigurationError(
                    f"edge list {path} lacks column '{field_name}'"
                )
        for row in reader:
            g.add_edge(row["source"], row["target"], float(row["weight"]))
    return g


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _write_json(path: str, payload) -> None:
    _write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def partition_csv(p: Partition) -> str:
    lines = ["node,community"]
    for node in sorted(p.assignment):
        lines.append(f"{node},{p.assignment[node]}")
    return "\n".join(lines) + "\n"


def read_partition_csv(path: str) -> Partition:
    assignment: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        reader = _csv.DictReader(fh)
        for row in reader:
            assignment[row["node"]] = int(row["community"])
    if not assignment:
        raise DataError(f"partition file {path} is empty")
    return Partition(assignment=assignment, modularity=0.0, resolution=1.0)


def centrality_csv(ranking) -> str:
    lines = ["account,score"]
    for account, score in ranking:
        lines.append(f"{account},{score:.6f}")
    return "\n".join(lines) + "\n"


def kde_grid_csv(grid: density.KdeGrid) -> str:
    buf = io.StringIO()
    for row in grid.density:
        buf.write(",".join(format(v, ".17g") for v in row))
        buf.write("\n")
    return buf.getvalue()


def _parse_pairs(text: str) -> list[tuple[str, str]]:
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise ConfigurationError(
                f"bad pair '{chunk}'; expected axis_x:axis_y"
            )
        x, y = chunk.split(":", 1)
        pairs.append((x.strip(), y.strip()))
    if not pairs:
        raise ConfigurationError("no axis pairs given")
    return pairs


# ---------------------------------------------------------------------------
# stage implementations (shared by subcommands and `run`)
# ---------------------------------------------------------------------------


def _stage_ingest(args, outdir: str):
    result = _load_dataset(args.input, args.format)
    d = result.dataset
    if args.window_start and args.window_end:
        d = ingest.filter_by_window(
            d, parse_timestamp(args.window_start), parse_timestamp(args.window_end)
        )
    if len(d) == 0:
        raise DataError(f"no usable tweets in {args.input}")
    full_stats = ingest.dataset_stats(d)

    filtered = None
    filtered_share = None
    if args.source_client:
        filtered = ingest.filter_by_source(d, args.source_client)
        filtered_share = len(filtered) / len(d)

    _write(os.path.join(outdir, "dataset.jsonl"), d.to_jsonl())
    if filtered is not None:
        _write(os.path.join(outdir, "dataset_filtered.jsonl"), filtered.to_jsonl())
    payload = {
        "stats": full_stats.to_dict(),
        "skipped_records": result.skipped,
        "duplicate_ids": result.duplicates,
        "source_client_filter": args.source_client,
        "filtered_tweet_count": len(filtered) if filtered is not None else None,
        "filtered_share": filtered_share,
    }
    _write_json(os.path.join(outdir, "dataset_stats.json"), payload)
    return d, filtered, payload


def _build_graphs(d: Dataset, bucket_width: int, k: int):
    mention = build_mention_graph(d)
    events = extract_coordination_events(d, bucket_width)
    coordination = project_coordination_graph(events, k)
    return mention, coordination


def _analysis_graph(mention, coordination, choice: str):
    if choice == "mention":
        return mention.symmetrized(), "mention"
    if choice == "coordination":
        return coordination, "coordination"
    raise ConfigurationError("analysis graph must be 'mention' or 'coordination'")


# ---------------------------------------------------------------------------
# subcommand mains
# ---------------------------------------------------------------------------


def _cmd_ingest(args):
    os.makedirs(args.out, exist_ok=True)
    _, _, payload = _stage_ingest(args, args.out)
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _cmd_graph(args):
    os.makedirs(args.out, exist_ok=True)
    with open(args.input, encoding="utf-8") as fh:
        d = Dataset.from_canonical_jsonl(fh.read(), provenance=args.input)
    mention, coordination = _build_graphs(d, args.bucket_width, args.k)
    for name, g in (("mention", mention), ("coordination", coordination)):
        if len(g):
            write_gexf(os.path.join(args.out, f"{name}.gexf"), g)
        _write(os.path.join(args.out, f"{name}_edges.csv"), edge_list_csv(g))
        print(f"{name}: {graph_stats(g).to_dict()}")
    return 0


def _cmd_communities(args):
    os.makedirs(args.out, exist_ok=True)
    g = read_edge_list_csv(args.edges, directed=args.directed)
    p = louvain(g, resolution=args.resolution, seed=args.seed)
    _write(os.path.join(args.out, "partition.csv"), partition_csv(p))
    summary = {
        "communities": p.community_count,
        "modularity": p.modularity,
        "resolution": p.resolution,
        "seed": p.seed,
        "sizes": community_sizes(p)[:50],
    }
    _write_json(os.path.join(args.out, "partition.json"), summary)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _cmd_centrality(args):
    os.makedirs(args.out, exist_ok=True)
    g = read_edge_list_csv(args.edges, directed=args.directed)
    scores = eigenvector_centrality(g, direction=args.direction)
    ranking = rank_accounts(scores, args.top)
    _write(os.path.join(args.out, "centrality.csv"), centrality_csv(ranking))
    table = ranking_table(ranking)
    _write(os.path.join(args.out, "centrality.txt"), table)
    print(table, end="")
    return 0


def _cmd_fetch_scores(args):
    endpoint = args.endpoint or os.environ.get("BOTSCORE_ENDPOINT")
    token = args.token or os.environ.get("BOTSCORE_TOKEN", "")
    if not endpoint:
        raise ConfigurationError(
            "no scoring endpoint; pass --endpoint or set BOTSCORE_ENDPOINT"
        )
    with open(args.accounts, encoding="utf-8") as fh:
        accounts = [line.strip() for line in fh if line.strip()]
    cache = bot_scoring.load_cache(args.cache)
    todo = [a for a in accounts if a not in cache or args.refresh]
    result = bot_scoring.fetch_scores(
        todo, endpoint, token, rate_limit=args.rate_limit
    )
    for rec in result.records:
        cache.put(rec)
    bot_scoring.store_cache(cache, args.cache)
    print(
        f"fetched {len(result.records)} accounts, "
        f"{len(result.unavailable)} unavailable, {result.retries} retries"
    )
    return 0


def _stage_density(cache, args, outdir: str):
    pairs = _parse_pairs(args.pairs) if args.pairs else list(density.DEFAULT_PAIRS)
    results = density.bimodality_report(
        cache,
        pairs=pairs,
        rule=args.bandwidth,
        fixed_h=args.fixed_h,
        grid_resolution=args.grid,
    )
    summaries = []
    for r in results:
        name = f"kde_{r.axis_x}_{r.axis_y}"
        entry = {"axis_x": r.axis_x, "axis_y": r.axis_y}
        if r.error is not None:
            entry["error"] = r.error
        else:
            _write(os.path.join(outdir, f"{name}.csv"), kde_grid_csv(r.grid))
            sidecar = {
                "axis_x": r.axis_x,
                "axis_y": r.axis_y,
                "grid_resolution": r.grid.resolution,
                "bandwidth": list(r.grid.bandwidth),
                "n": r.grid.n,
                "modes": [list(m) for m in r.report.modes],
                "separation": r.report.separation,
                "classification": r.report.classification,
                "note": (
                    "modality classification is a methodological "
                    "reconstruction; thresholds are toolkit defaults"
                ),
            }
            _write_json(os.path.join(outdir, f"{name}.json"), sidecar)
            entry.update(
                {
                    "classification": r.report.classification,
                    "modes": len(r.report.modes),
                    "separation": r.report.separation,
                }
            )
        summaries.append(entry)
    return summaries


def _cmd_density(args):
    os.makedirs(args.out, exist_ok=True)
    cache = bot_scoring.load_cache(args.cache)
    summaries = _stage_density(cache, args, args.out)
    print(json.dumps(summaries, indent=2, sort_keys=True))
    return 0


def _stage_signals(d: Dataset, partition: Partition, args, outdir: str):
    accounts: dict[str, object] = {}
    for t in d.tweets:
        accounts.setdefault(t.author_screen_name, t.author_created_at)
    batches, missing = signals.detect_creation_batches(
        list(accounts.items()),
        window_days=args.batch_window_days,
        min_size=args.batch_min_size,
    )
    clusters = signals.detect_name_clusters(
        sorted(accounts),
        min_token_len=args.name_min_token,
        min_size=args.name_min_size,
    )
    report = signals.signal_report(batches, clusters, partition)

    lines = ["community,batch_fraction,name_fraction,combined"]
    for s in report:
        lines.append(
            f"{s.community},{s.batch_fraction:.6f},"
            f"{s.name_fraction:.6f},{s.combined:.6f}"
        )
    _write(os.path.join(outdir, "signals.csv"), "\n".join(lines) + "\n")
    payload = {
        "batches": [
            {
                "accounts": list(b.accounts),
                "span_days": b.span_days,
                "window_start": b.window_start.isoformat(),
                "window_end": b.window_end.isoformat(),
            }
            for b in batches
        ],
        "name_clusters": [
            {"token": c.shared_token, "accounts": list(c.accounts)}
            for c in clusters
        ],
        "accounts_missing_creation_date": missing,
        "communities": [
            {
                "community": s.community,
                "batch_fraction": s.batch_fraction,
                "name_fraction": s.name_fraction,
                "combined": s.combined,
            }
            for s in report
        ],
    }
    _write_json(os.path.join(outdir, "signals.json"), payload)
    return payload


def _cmd_signals(args):
    os.makedirs(args.out, exist_ok=True)
    with open(args.input, encoding="utf-8") as fh:
        d = Dataset.from_canonical_jsonl(fh.read(), provenance=args.input)
    partition = read_partition_csv(args.partition)
    payload = _stage_signals(d, partition, args, args.out)
    print(f"{len(payload['batches'])} batches, "
          f"{len(payload['name_clusters'])} name clusters")
    return 0


def _cmd_synth(args):
    config = synth.SynthConfig(
        n_teams=args.teams,
        team_size=args.team_size,
        waves_per_team=args.waves,
        jitter_seconds=args.jitter,
        n_background_accounts=args.background_accounts,
        background_tweets=args.background_tweets,
        seed=args.seed,
    )
    dataset, truth = synth.generate(config)
    _write(args.out, dataset.to_jsonl())
    truth_path = args.truth_out or (args.out + ".truth.json")
    _write(truth_path, truth.to_json())
    print(f"wrote {len(dataset)} tweets to {args.out}; truth in {truth_path}")
    return 0


def _cmd_report(args):
    path = os.path.join(args.artifacts, "report.json")
    if not os.path.exists(path):
        raise DataError(f"no report.json under {args.artifacts}")
    with open(path, encoding="utf-8") as fh:
        report = json.load(fh)
    md = render_report_md(report)
    _write(os.path.join(args.artifacts, "report.md"), md)
    print(md, end="")
    return 0


def _cmd_run(args):
    return run_pipeline(args)


# ---------------------------------------------------------------------------
# full pipeline
# ---------------------------------------------------------------------------


def run_pipeline(args) -> int:
    """ingest -> graphs -> communities -> centrality -> density -> signals."""
    outdir = args.out
    os.makedirs(outdir, exist_ok=True)
    stage = "ingest"
    try:
        d, filtered, dataset_payload = _stage_ingest(args, outdir)
        analysis_input = filtered if filtered is not None else d

        stage = "graphs"
        mention, coordination = _build_graphs(
            analysis_input, args.bucket_width, args.k
        )
        mention_stats = graph_stats(mention).to_dict()
        coordination_stats = graph_stats(coordination).to_dict()
        _write(os.path.join(outdir, "mention_edges.csv"), edge_list_csv(mention))
        _write(
            os.path.join(outdir, "coordination_edges.csv"),
            edge_list_csv(coordination),
        )

        stage = "communities"
        g, graph_name = _analysis_graph(mention, coordination, args.analysis_graph)
        if len(g) == 0:
            raise DataError(
                f"{graph_name} graph is empty; nothing to analyze "
                "(try a smaller threshold k or a wider bucket)"
            )
        p = louvain(g, resolution=args.resolution, seed=args.seed)
        _write(os.path.join(outdir, "partition.csv"), partition_csv(p))
        sizes = community_sizes(p)
        _write_json(
            os.path.join(outdir, "partition.json"),
            {
                "communities": p.community_count,
                "modularity": p.modularity,
                "resolution": p.resolution,
                "seed": p.seed,
                "sizes": sizes[:100],
            },
        )

        stage = "centrality"
        direction = args.direction or (
            "in" if graph_name == "mention" else "undirected"
        )
        scores = eigenvector_centrality(g, direction=direction)
        ranking = rank_accounts(scores, args.top)
        _write(os.path.join(outdir, "centrality.csv"), centrality_csv(ranking))
        _write(os.path.join(outdir, "centrality.txt"), ranking_table(ranking))

        stage = "bot-scores"
        cache = None
        if args.scores_cache:
            cache = bot_scoring.load_cache(args.scores_cache)

        stage = "density"
        density_summary = None
        if cache is not None and len(cache):
            density_summary = _stage_density(cache, args, outdir)

        stage = "signals"
        signal_payload = _stage_signals(analysis_input, p, args, outdir)

        stage = "export"
        bot_overall = None
        if cache is not None and len(cache):
            bot_overall = {
                rec.account: rec.overall
                for rec in cache.records.values()
                if rec.overall is not None
            }
        if len(mention):
            write_gexf(
                os.path.join(outdir, "mention.gexf"),
                mention,
                partition=p.assignment if graph_name == "mention" else None,
                centrality=scores.scores if graph_name == "mention" else None,
                bot_overall=bot_overall,
            )
        if len(coordination):
            write_gexf(
                os.path.join(outdir, "coordination.gexf"),
                coordination,
                partition=p.assignment if graph_name == "coordination" else None,
                centrality=(
                    scores.scores if graph_name == "coordination" else None
                ),
                bot_overall=bot_overall,
            )

        stage = "validation"
        validation = None
        if args.ground_truth:
            truth = synth.GroundTruth.from_json(
                open(args.ground_truth, encoding="utf-8").read()
            )
            planted = {
                a: label
                for a, label in truth.labels.items()
                if label != "organic" and a in p.assignment
            }
            if planted:
                detected = {a: p.assignment[a] for a in planted}
                validation = {
                    "adjusted_rand_index": adjusted_rand_index(planted, detected),
                    "planted_accounts_in_graph": len(planted),
                }

        stage = "report"
        report = {
            "parameters": {
                "input": args.input,
                "format": args.format,
                "source_client": args.source_client,
                "window_start": args.window_start,
                "window_end": args.window_end,
                "bucket_width_seconds": args.bucket_width,
                "coordination_threshold_k": args.k,
                "analysis_graph": graph_name,
                "resolution": args.resolution,
                "seed": args.seed,
                "centrality_direction": direction,
                "top_n": args.top,
                "kde_grid": args.grid,
                "kde_bandwidth_rule": args.bandwidth,
                "batch_window_days": args.batch_window_days,
                "batch_min_size": args.batch_min_size,
                "name_min_token": args.name_min_token,
                "name_min_size": args.name_min_size,
            },
            "dataset": dataset_payload,
            "graphs": {
                "mention": mention_stats,
                "coordination": coordination_stats,
            },
            "communities": {
                "count": p.community_count,
                "modularity": p.modularity,
                "sizes_top20": sizes[:20],
            },
            "centrality": {
                "direction": direction,
                "graph": graph_name,
                "converged": scores.converged,
                "iterations": scores.iterations,
                "top": [[a, round(s, 6)] for a, s in ranking],
            },
            "density": density_summary,
            "signals": {
                "batches": len(signal_payload["batches"]),
                "name_clusters": len(signal_payload["name_clusters"]),
                "top_communities": signal_payload["communities"][:20],
            },
            "validation": validation,
            "paper_references": {
                "note": (
                    "counts reported by the original case study; shown for "
                    "context only, not reproducible without its dataset"
                ),
                "counts": PAPER_REFERENCE_COUNTS,
            },
            "artifacts": sorted(
                f for f in os.listdir(outdir)
                if f not in ("report.json", "report.md")
            ),
        }
        _write_json(os.path.join(outdir, "report.json"), report)
        _write(os.path.join(outdir, "report.md"), render_report_md(report))
    except BotwatchError as exc:
        print(f"stage '{stage}' failed: {exc}", file=sys.stderr)
        raise
    print(f"pipeline complete; artifacts in {outdir}")
    return 0


def render_report_md(report: dict) -> str:
    """Human-readable Markdown view of report.json."""
    lines = ["# Campaign analysis report", ""]

    ds = report["dataset"]
    lines += ["## Dataset", ""]
    for key, value in sorted(ds["stats"].items()):
        lines.append(f"- {key}: {value}")
    if ds.get("filtered_share") is not None:
        lines.append(
            f"- source-filtered share ({ds['source_client_filter']}): "
            f"{ds['filtered_share']:.4f}"
        )
    lines.append("")

    lines += ["## Graphs", ""]
    for name in ("mention", "coordination"):
        st = report["graphs"][name]
        lines.append(
            f"- {name}: {st['node_count']} nodes, {st['edge_count']} edges, "
            f"weight sum {st['weight_sum']:g}"
        )
    lines.append("")

    com = report["communities"]
    lines += [
        "## Communities",
        "",
        f"- communities: {com['count']}",
        f"- modularity: {com['modularity']:.6f}",
        "",
    ]

    cen = report["centrality"]
    lines += ["## Top accounts by eigenvector centrality", ""]
    for account, score in cen["top"]:
        text = "1.0" if score == 1.0 else f"{score:.6f}"
        lines.append(f"- {account}  {text}")
    lines.append("")

    if report.get("density"):
        lines += ["## Score-density modality", ""]
        for entry in report["density"]:
            label = entry.get("classification", f"error: {entry.get('error')}")
            lines.append(f"- {entry['axis_x']}-{entry['axis_y']}: {label}")
        lines.append("")

    sig = report["signals"]
    lines += [
        "## Batch signals",
        "",
        f"- creation batches: {sig['batches']}",
        f"- shared-name clusters: {sig['name_clusters']}",
        "",
    ]

    if report.get("validation"):
        ari = report["validation"]["adjusted_rand_index"]
        lines += [
            "## Validation against planted ground truth",
            "",
            f"- adjusted Rand index: {ari:.4f}",
            "",
        ]

    refs = report["paper_references"]
    lines += ["## Non-reproducible case-study references", "", refs["note"], ""]
    for key, value in sorted(refs["counts"].items()):
        lines.append(f"- {key}: {value}")
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_ingest_args(sp):
    sp.add_argument("--input", required=True, help="archive path")
    sp.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    sp.add_argument("--source-client", default=None)
    sp.add_argument("--window-start", default=None)
    sp.add_argument("--window-end", default=None)


def _add_density_args(sp):
    sp.add_argument("--pairs", default=None,
                    help="comma list of axis_x:axis_y pairs")
    sp.add_argument("--bandwidth", choices=density.BANDWIDTH_RULES,
                    default="scott")
    sp.add_argument("--fixed-h", type=float, default=None)
    sp.add_argument("--grid", type=int, default=128)


def _add_signal_args(sp):
    sp.add_argument("--batch-window-days", type=int, default=2)
    sp.add_argument("--batch-min-size", type=int, default=5)
    sp.add_argument("--name-min-token", type=int, default=4)
    sp.add_argument("--name-min-size", type=int, default=3)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="botwatch",
                     description="coordinated socialbot campaign analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ingest", help="parse and filter an archive")
    _add_ingest_args(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_ingest)

    sp = sub.add_parser("graph", help="build mention + coordination graphs")
    sp.add_argument("--input", required=True, help="canonical dataset.jsonl")
    sp.add_argument("--bucket-width", type=int, default=1)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_graph)

    sp = sub.add_parser("communities", help="Louvain on an edge list")
    sp.add_argument("--edges", required=True)
    sp.add_argument("--directed", action="store_true")
    sp.add_argument("--resolution", type=float, default=1.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_communities)

    sp = sub.add_parser("centrality", help="eigenvector centrality ranking")
    sp.add_argument("--edges", required=True)
    sp.add_argument("--directed", action="store_true")
    sp.add_argument("--direction", choices=("in", "out", "undirected"),
                    default="undirected")
    sp.add_argument("--top", type=int, default=20)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_centrality)

    sp = sub.add_parser("fetch-scores", help="query the bot-scoring service")
    sp.add_argument("--accounts", required=True,
                    help="file with one screen name per line")
    sp.add_argument("--endpoint", default=None)
    sp.add_argument("--token", default=None)
    sp.add_argument("--rate-limit", type=int, default=60)
    sp.add_argument("--refresh", action="store_true")
    sp.add_argument("--cache", required=True)
    sp.set_defaults(func=_cmd_fetch_scores)

    sp = sub.add_parser("density", help="2D KDE over cached score pairs")
    sp.add_argument("--cache", required=True)
    _add_density_args(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_density)

    sp = sub.add_parser("signals", help="creation-batch and name signals")
    sp.add_argument("--input", required=True, help="canonical dataset.jsonl")
    sp.add_argument("--partition", required=True, help="partition.csv")
    _add_signal_args(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_signals)

    sp = sub.add_parser("synth", help="generate a planted-team corpus")
    sp.add_argument("--teams", type=int, default=5)
    sp.add_argument("--team-size", type=int, default=20)
    sp.add_argument("--waves", type=int, default=50)
    sp.add_argument("--jitter", type=int, default=0)
    sp.add_argument("--background-accounts", type=int, default=500)
    sp.add_argument("--background-tweets", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--out", required=True)
    sp.add_argument("--truth-out", default=None)
    sp.set_defaults(func=_cmd_synth)

    sp = sub.add_parser("report", help="re-render report.md from report.json")
    sp.add_argument("--artifacts", required=True)
    sp.set_defaults(func=_cmd_report)

    sp = sub.add_parser("run", help="full pipeline")
    _add_ingest_args(sp)
    sp.add_argument("--bucket-width", type=int, default=1)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--analysis-graph",
                    choices=("coordination", "mention"),
                    default="coordination")
    sp.add_argument("--resolution", type=float, default=1.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--direction", choices=("in", "out", "undirected"),
                    default=None)
    sp.add_argument("--top", type=int, default=20)
    sp.add_argument("--scores-cache", default=None)
    _add_density_args(sp)
    _add_signal_args(sp)
    sp.add_argument("--ground-truth", default=None,
                    help="GroundTruth JSON for a validation footer")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except NetworkError as exc:
        print(f"network error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
