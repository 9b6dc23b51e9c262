"""Core data model: tweets and tweet datasets.

A :class:`Dataset` is an immutable, ordered collection of normalized
:class:`Tweet` records, optionally bounded by a declared collection
window.  Everything downstream (graphs, signals, the synthetic
generator) operates on these two types.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import DataError

__all__ = ["Tweet", "Dataset", "parse_timestamp", "format_timestamp"]

# Twitter's classic created_at format, e.g. "Sun Dec 31 19:19:22 +0000 2017"
_CLASSIC_FORMAT = "%a %b %d %H:%M:%S %z %Y"


def parse_timestamp(value: str) -> datetime:
    """Parse a timestamp in Twitter's classic format or ISO-8601, as UTC.

    Raises ValueError if the string matches neither format.
    """
    value = value.strip()
    try:
        dt = datetime.strptime(value, _CLASSIC_FORMAT)
    except ValueError:
        dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc).replace(microsecond=0)


def format_timestamp(dt: datetime) -> str:
    """Render a UTC timestamp in ISO-8601 with a Z suffix."""
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class Tweet:
    """One archived tweet event."""

    tweet_id: str
    author_id: str
    author_screen_name: str
    created_at: datetime
    source_client: str
    text: str
    mentions: tuple[str, ...] = ()
    retweet_of: str | None = None
    author_created_at: datetime | None = None

    def __post_init__(self) -> None:
        if not self.tweet_id:
            raise DataError("tweet_id must be nonempty")
        if self.retweet_of is not None and self.retweet_of == self.tweet_id:
            raise DataError(f"tweet {self.tweet_id} retweets itself")

    def to_record(self) -> dict:
        """Canonical JSON-serializable form (stable key order)."""
        rec = {
            "tweet_id": self.tweet_id,
            "author_id": self.author_id,
            "author_screen_name": self.author_screen_name,
            "created_at": format_timestamp(self.created_at),
            "source_client": self.source_client,
            "text": self.text,
            "mentions": list(self.mentions),
            "retweet_of": self.retweet_of,
            "author_created_at": (
                format_timestamp(self.author_created_at)
                if self.author_created_at is not None
                else None
            ),
        }
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "Tweet":
        return cls(
            tweet_id=rec["tweet_id"],
            author_id=rec["author_id"],
            author_screen_name=rec["author_screen_name"],
            created_at=parse_timestamp(rec["created_at"]),
            source_client=rec["source_client"],
            text=rec["text"],
            mentions=tuple(rec.get("mentions") or ()),
            retweet_of=rec.get("retweet_of"),
            author_created_at=(
                parse_timestamp(rec["author_created_at"])
                if rec.get("author_created_at")
                else None
            ),
        )


@dataclass(frozen=True)
class Dataset:
    """Ordered tweet collection with an optional declared window."""

    tweets: tuple[Tweet, ...]
    window_start: datetime | None = None
    window_end: datetime | None = None
    provenance: str = ""

    def __post_init__(self) -> None:
        if (
            self.window_start is not None
            and self.window_end is not None
            and self.window_start >= self.window_end
        ):
            raise DataError("window_start must precede window_end")
        seen: set[str] = set()
        for t in self.tweets:
            if t.tweet_id in seen:
                raise DataError(f"duplicate tweet_id {t.tweet_id} in Dataset")
            seen.add(t.tweet_id)

    def __len__(self) -> int:
        return len(self.tweets)

    def __iter__(self):
        return iter(self.tweets)

    def to_jsonl(self) -> str:
        """Serialize to the canonical JSON-lines caching form."""
        lines = [
            json.dumps(t.to_record(), ensure_ascii=False, separators=(",", ":"))
            for t in self.tweets
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_canonical_jsonl(
        cls,
        text: str,
        window_start: datetime | None = None,
        window_end: datetime | None = None,
        provenance: str = "",
    ) -> "Dataset":
        """Load a Dataset previously written by :meth:`to_jsonl`."""
        tweets = [
            Tweet.from_record(json.loads(line))
            for line in text.splitlines()
            if line.strip()
        ]
        return cls(
            tweets=tuple(tweets),
            window_start=window_start,
            window_end=window_end,
            provenance=provenance,
        )
