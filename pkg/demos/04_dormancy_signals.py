"""Spot batch-created accounts and template screen names.

Coordinated accounts tend to be registered together and named from a
shared stem plus a counter. This demo extracts both signals from a
synthetic corpus and prints the per-community summary.
"""

from botwatch import (
    SynthConfig,
    detect_creation_batches,
    detect_name_clusters,
    extract_coordination_events,
    generate,
    louvain,
    project_coordination_graph,
    signal_report,
)

dataset, _ = generate(SynthConfig(n_teams=4, team_size=12, seed=21))

accounts = {}
for tweet in dataset.tweets:
    accounts.setdefault(tweet.author_screen_name, tweet.author_created_at)

batches, missing = detect_creation_batches(
    list(accounts.items()), window_days=2, min_size=5
)
print(f"{len(batches)} creation batches ({missing} accounts lack dates)")
for batch in batches:
    print(f"  {batch.window_start.date()}: {len(batch.accounts)} accounts")

clusters = detect_name_clusters(sorted(accounts), min_token_len=4,
                                min_size=3)
print(f"\n{len(clusters)} name clusters")
for cluster in clusters[:6]:
    print(f"  '{cluster.shared_token}': {len(cluster.accounts)} accounts")

graph = project_coordination_graph(
    extract_coordination_events(dataset, bucket_width=1), k=3
)
partition = louvain(graph, seed=0)
print("\nper-community signals (batch share / name share / combined):")
for signal in signal_report(batches, clusters, partition):
    print(f"  community {signal.community}: "
          f"{signal.batch_fraction:.2f} / {signal.name_fraction:.2f} / "
          f"{signal.combined:.2f}")
