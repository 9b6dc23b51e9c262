"""Account-metadata batch signals: creation-date batches and shared
username tokens.

Bot teams tend to be registered in short bursts (one to two days) and to
reuse a name stem with numeric suffixes.  Both signals are computed from
metadata alone and then joined against a community partition to rank
communities by how bot-like their membership looks.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from .community import Partition

__all__ = [
    "CreationBatch",
    "NameCluster",
    "CommunitySignal",
    "detect_creation_batches",
    "detect_name_clusters",
    "signal_report",
    "normalize_name",
]


@dataclass(frozen=True)
class CreationBatch:
    window_start: datetime
    window_end: datetime
    accounts: tuple[str, ...]
    span_days: int


@dataclass(frozen=True)
class NameCluster:
    shared_token: str
    accounts: tuple[str, ...]


@dataclass(frozen=True)
class CommunitySignal:
    community: int
    batch_fraction: float
    name_fraction: float

    @property
    def combined(self) -> float:
        return (self.batch_fraction + self.name_fraction) / 2.0


def detect_creation_batches(
    accounts: list[tuple[str, datetime | None]],
    window_days: int = 2,
    min_size: int = 5,
) -> tuple[list[CreationBatch], int]:
    """Greedy windowing over creation dates.

    Accounts are sorted by creation date; a batch keeps absorbing the
    next account while its date is within ``window_days`` of the batch
    start.  Batches smaller than ``min_size`` are discarded.  Returns
    the batches plus a tally of accounts lacking a creation date.
    """
    if window_days < 1:
        raise ValueError("window_days must be >= 1")
    if min_size < 2:
        raise ValueError("min_size must be >= 2")

    missing = sum(1 for _, created in accounts if created is None)
    dated = sorted(
        ((name, created) for name, created in accounts if created is not None),
        key=lambda item: (item[1], item[0]),
    )

    batches: list[CreationBatch] = []
    i = 0
    while i < len(dated):
        start_name, start = dated[i]
        members = [start_name]
        last = start
        j = i + 1
        while j < len(dated):
            name, created = dated[j]
            if (created.date() - start.date()).days <= window_days:
                members.append(name)
                last = created
                j += 1
            else:
                break
        if len(members) >= min_size:
            batches.append(
                CreationBatch(
                    window_start=start,
                    window_end=last,
                    accounts=tuple(members),
                    span_days=(last.date() - start.date()).days,
                )
            )
        i = j
    return batches, missing


def normalize_name(name: str) -> str:
    """Lowercase and strip trailing digits (bot suffix convention)."""
    return name.lower().rstrip("0123456789")


def detect_name_clusters(
    names: list[str], min_token_len: int = 4, min_size: int = 3
) -> list[NameCluster]:
    """Cluster accounts sharing a long common substring of their names.

    Substring tokens of length >= ``min_token_len`` occurring in at
    least ``min_size`` normalized names form clusters; tokens subsumed
    by a longer token with the same membership are dropped.  An account
    may belong to several clusters.
    """
    if min_token_len < 4:
        raise ValueError("min_token_len must be >= 4")
    if min_size < 3:
        raise ValueError("min_size must be >= 3")

    normalized = {name: normalize_name(name) for name in names}
    token_members: dict[str, set[str]] = {}
    for name, norm in normalized.items():
        seen_tokens: set[str] = set()
        for length in range(min_token_len, len(norm) + 1):
            for start in range(0, len(norm) - length + 1):
                seen_tokens.add(norm[start:start + length])
        for token in seen_tokens:
            token_members.setdefault(token, set()).add(name)

    frequent = {
        token: members
        for token, members in token_members.items()
        if len(members) >= min_size
    }

    # keep only maximal tokens: drop t when a strictly longer token
    # containing t has the same member set
    kept: dict[str, set[str]] = {}
    for token, members in frequent.items():
        subsumed = any(
            len(other) > len(token) and token in other and members == om
            for other, om in frequent.items()
        )
        if not subsumed:
            kept[token] = members

    clusters = [
        NameCluster(shared_token=token, accounts=tuple(sorted(members)))
        for token, members in kept.items()
    ]
    clusters.sort(key=lambda c: (-len(c.accounts), c.shared_token))
    return clusters


def signal_report(
    batches: list[CreationBatch],
    name_clusters: list[NameCluster],
    partition: Partition,
) -> list[CommunitySignal]:
    """Per-community batch/name-sharing fractions, ranked by the mean.

    batch_fraction: share of members appearing in any creation batch.
    name_fraction: largest single name-cluster overlap with the community.
    """
    batched = {acct for b in batches for acct in b.accounts}
    cluster_sets = [set(c.accounts) for c in name_clusters]

    signals: list[CommunitySignal] = []
    for cid, members in partition.communities().items():
        member_set = set(members)
        size = len(member_set)
        batch_fraction = len(member_set & batched) / size
        name_fraction = max(
            (len(member_set & cs) / size for cs in cluster_sets), default=0.0
        )
        signals.append(CommunitySignal(cid, batch_fraction, name_fraction))

    signals.sort(key=lambda s: (-s.combined, s.community))
    return signals
