"""Tweet archive ingestion: JSON-lines and CSV parsers plus filters.

Both parsers normalize raw archive records into :class:`~botwatch.models.Tweet`
and are tolerant of broken records: unparseable lines are tallied, never
fatal.  Duplicate tweet ids keep the first occurrence.

The JSONL parser understands Twitter v1.1-style field names (``id_str``,
``user.screen_name``, ``created_at``, ``source``, ``entities.user_mentions``,
``retweeted_status``) as well as the toolkit's own canonical caching form.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from datetime import datetime
import json

from .errors import ConfigurationError
from .models import Dataset, Tweet, parse_timestamp

__all__ = [
    "ParseResult",
    "DatasetStats",
    "parse_jsonl",
    "parse_csv",
    "filter_by_source",
    "filter_by_window",
    "dataset_stats",
]

# inner text of an HTML anchor, e.g. <a href="...">TweetDeck</a>
_ANCHOR_RE = re.compile(r">([^<]*)</a>", re.IGNORECASE)
_MENTION_RE = re.compile(r"@(\w+)")

#: CSV column roles required by parse_csv.
REQUIRED_CSV_ROLES = ("id", "screen_name", "created", "source", "text")
OPTIONAL_CSV_ROLES = ("author_id", "retweet_of", "mentions", "author_created")


def extract_source_client(raw: str) -> str:
    """Extract the client name from a raw ``source`` field.

    Twitter exports wrap the client name in an HTML anchor; plain values
    are returned as-is (stripped).
    """
    m = _ANCHOR_RE.search(raw)
    if m:
        return m.group(1).strip()
    return raw.strip()


def extract_mentions(text: str) -> tuple[str, ...]:
    """Fallback mention extraction from tweet text (@ + word characters)."""
    return tuple(_MENTION_RE.findall(text))


@dataclass(frozen=True)
class ParseResult:
    """A parsed Dataset plus a tally of what could not be used."""

    dataset: Dataset
    skipped: int = 0
    duplicates: int = 0

    def __iter__(self):
        # allow `dataset, result = ...`-free unpacking in quick scripts
        yield self.dataset
        yield self.skipped


@dataclass(frozen=True)
class DatasetStats:
    tweet_count: int
    distinct_authors: int
    distinct_source_clients: int
    retweet_share: float | None

    def to_dict(self) -> dict:
        return {
            "tweet_count": self.tweet_count,
            "distinct_authors": self.distinct_authors,
            "distinct_source_clients": self.distinct_source_clients,
            "retweet_share": self.retweet_share,
        }


def _tweet_from_v11(obj: dict) -> Tweet | None:
    """Build a Tweet from a Twitter v1.1-style JSON object.

    Returns None when the record lacks an id, a handle, or a timestamp.
    """
    if "tweet_id" in obj and "created_at" in obj:
        # canonical caching form
        try:
            return Tweet.from_record(obj)
        except (KeyError, ValueError):
            return None

    tweet_id = obj.get("id_str") or (str(obj["id"]) if "id" in obj else None)
    user = obj.get("user") or {}
    screen_name = user.get("screen_name") or obj.get("screen_name")
    created_raw = obj.get("created_at")
    if not tweet_id or not screen_name or not created_raw:
        return None
    try:
        created_at = parse_timestamp(str(created_raw))
    except ValueError:
        return None

    author_id = user.get("id_str") or (
        str(user["id"]) if "id" in user else screen_name
    )
    text = obj.get("full_text") or obj.get("text") or ""
    source_client = extract_source_client(str(obj.get("source", "")))

    entities = obj.get("entities") or {}
    raw_mentions = entities.get("user_mentions")
    if raw_mentions is not None:
        mentions = tuple(
            m["screen_name"] for m in raw_mentions if m.get("screen_name")
        )
    else:
        mentions = extract_mentions(text)

    retweeted = obj.get("retweeted_status") or {}
    retweet_of = retweeted.get("id_str") or (
        str(retweeted["id"]) if "id" in retweeted else None
    )
    if retweet_of is None and obj.get("retweet_of"):
        retweet_of = str(obj["retweet_of"])
    if retweet_of == tweet_id:
        return None

    author_created_at = None
    if user.get("created_at"):
        try:
            author_created_at = parse_timestamp(str(user["created_at"]))
        except ValueError:
            author_created_at = None

    return Tweet(
        tweet_id=tweet_id,
        author_id=author_id,
        author_screen_name=screen_name,
        created_at=created_at,
        source_client=source_client,
        text=text,
        mentions=mentions,
        retweet_of=retweet_of,
        author_created_at=author_created_at,
    )


def _collect(tweets_iter, provenance: str) -> ParseResult:
    """Dedupe (first wins) and assemble a ParseResult."""
    tweets: list[Tweet] = []
    seen: set[str] = set()
    skipped = 0
    duplicates = 0
    for t in tweets_iter:
        if t is None:
            skipped += 1
            continue
        if t.tweet_id in seen:
            duplicates += 1
            continue
        seen.add(t.tweet_id)
        tweets.append(t)
    return ParseResult(
        dataset=Dataset(tweets=tuple(tweets), provenance=provenance),
        skipped=skipped,
        duplicates=duplicates,
    )


def parse_jsonl(stream, provenance: str = "jsonl") -> ParseResult:
    """Parse newline-delimited tweet records from a text or byte stream.

    Accepts a file-like object, bytes, or str.  Records that fail to
    parse (bad JSON, missing id/handle/timestamp) are skipped and tallied.
    """
    text = _as_text(stream)

    def gen():
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                yield None
                continue
            if not isinstance(obj, dict):
                yield None
                continue
            yield _tweet_from_v11(obj)

    return _collect(gen(), provenance)


def parse_csv(
    stream, column_map: dict[str, str], provenance: str = "csv"
) -> ParseResult:
    """Parse an RFC 4180 CSV archive with a header row.

    ``column_map`` maps roles to column names; roles ``id``, ``screen_name``,
    ``created``, ``source`` and ``text`` are required.  A mapped column that
    is absent from the header is a fatal ConfigurationError.
    """
    for role in REQUIRED_CSV_ROLES:
        if role not in column_map:
            raise ConfigurationError(f"column_map lacks required role '{role}'")

    text = _as_text(stream)
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    for role, column in column_map.items():
        if column not in header:
            raise ConfigurationError(
                f"mapped column '{column}' (role '{role}') not in CSV header"
            )

    def gen():
        for row in reader:
            yield _tweet_from_csv_row(row, column_map)

    return _collect(gen(), provenance)


def _tweet_from_csv_row(row: dict, column_map: dict[str, str]) -> Tweet | None:
    tweet_id = (row.get(column_map["id"]) or "").strip()
    screen_name = (row.get(column_map["screen_name"]) or "").strip()
    created_raw = (row.get(column_map["created"]) or "").strip()
    if not tweet_id or not screen_name or not created_raw:
        return None
    try:
        created_at = parse_timestamp(created_raw)
    except ValueError:
        return None

    text = row.get(column_map["text"]) or ""
    source_client = extract_source_client(row.get(column_map["source"]) or "")

    author_id = screen_name
    if "author_id" in column_map:
        author_id = (row.get(column_map["author_id"]) or "").strip() or screen_name

    retweet_of = None
    if "retweet_of" in column_map:
        retweet_of = (row.get(column_map["retweet_of"]) or "").strip() or None
    if retweet_of == tweet_id:
        return None

    if "mentions" in column_map and (row.get(column_map["mentions"]) or "").strip():
        mentions = tuple(
            m.strip().lstrip("@")
            for m in row[column_map["mentions"]].split()
            if m.strip()
        )
    else:
        mentions = extract_mentions(text)

    author_created_at = None
    if "author_created" in column_map:
        raw = (row.get(column_map["author_created"]) or "").strip()
        if raw:
            try:
                author_created_at = parse_timestamp(raw)
            except ValueError:
                author_created_at = None

    return Tweet(
        tweet_id=tweet_id,
        author_id=author_id,
        author_screen_name=screen_name,
        created_at=created_at,
        source_client=source_client,
        text=text,
        mentions=mentions,
        retweet_of=retweet_of,
        author_created_at=author_created_at,
    )


def filter_by_source(d: Dataset, client: str) -> Dataset:
    """Keep tweets whose source client equals ``client``, case-insensitively."""
    if not client:
        raise ConfigurationError("source client must be nonempty")
    wanted = client.lower()
    kept = tuple(t for t in d.tweets if t.source_client.lower() == wanted)
    return Dataset(
        tweets=kept,
        window_start=d.window_start,
        window_end=d.window_end,
        provenance=d.provenance,
    )


def filter_by_window(d: Dataset, start: datetime, end: datetime) -> Dataset:
    """Keep tweets with start <= created_at <= end; stamps the window."""
    if start >= end:
        raise ConfigurationError("window start must precede window end")
    kept = tuple(t for t in d.tweets if start <= t.created_at <= end)
    return Dataset(
        tweets=kept, window_start=start, window_end=end, provenance=d.provenance
    )


def dataset_stats(d: Dataset) -> DatasetStats:
    """Exact summary counts; retweet share is None for an empty dataset."""
    n = len(d.tweets)
    authors = {t.author_screen_name for t in d.tweets}
    clients = {t.source_client for t in d.tweets}
    retweets = sum(1 for t in d.tweets if t.retweet_of is not None)
    return DatasetStats(
        tweet_count=n,
        distinct_authors=len(authors),
        distinct_source_clients=len(clients),
        retweet_share=(retweets / n) if n else None,
    )


def _as_text(stream) -> str:
    if isinstance(stream, str):
        return stream
    if isinstance(stream, bytes):
        return stream.decode("utf-8", errors="replace")
    data = stream.read()
    if isinstance(data, bytes):
        return data.decode("utf-8", errors="replace")
    return data
