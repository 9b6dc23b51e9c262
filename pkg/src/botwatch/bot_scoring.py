"""Client for an external bot-scoring service plus a local score cache.

The service is consumed, never reimplemented: one POST per account,
paced to a requests-per-minute budget, with exponential backoff on
throttle responses.  Scores land in a JSON-lines cache so every
downstream analysis (density, reports) runs offline.

Expected response body (JSON)::

    {"categories": {"content": 0.9, "sentiment": 0.8, "network": ...,
                    "friend": ..., "temporal": ..., "user": ...},
     "overall": 0.85,
     "scale": 1.0}          # optional; advertised score maximum

Services that score on a 0-5 scale are detected by range inspection and
normalized by the advertised (or assumed 5.0) maximum; the raw payload
is retained on the record.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .errors import ConfigurationError, DataError, NetworkError
from .models import format_timestamp, parse_timestamp

__all__ = [
    "SUB_SCORES",
    "AXES",
    "BotScoreRecord",
    "ScoreCache",
    "FetchResult",
    "fetch_scores",
    "load_cache",
    "store_cache",
    "score_pairs",
]

SUB_SCORES = ("content", "sentiment", "network", "friend", "temporal", "user")
AXES = SUB_SCORES + ("overall",)

BACKOFF_BASE_SECONDS = 2.0
MAX_RETRIES = 5
ASSUMED_SCALE = 5.0  # when scores exceed 1 and the service advertises none


@dataclass(frozen=True)
class BotScoreRecord:
    """Per-account classifier sub-scores, all normalized into [0, 1]."""

    account: str
    content: float | None = None
    sentiment: float | None = None
    network: float | None = None
    friend: float | None = None
    temporal: float | None = None
    user: float | None = None
    overall: float | None = None
    fetched_at: datetime | None = None
    raw: dict | None = None

    def __post_init__(self) -> None:
        if not self.account:
            raise DataError("BotScoreRecord requires a nonempty account")
        for axis in AXES:
            v = getattr(self, axis)
            if v is not None and not (0.0 <= v <= 1.0):
                raise DataError(
                    f"score '{axis}' = {v} for {self.account} outside [0,1]"
                )

    def get(self, axis: str) -> float | None:
        if axis not in AXES:
            raise ConfigurationError(
                f"unknown score axis '{axis}'; expected one of {AXES}"
            )
        return getattr(self, axis)

    def to_record(self) -> dict:
        rec: dict = {"account": self.account}
        for axis in AXES:
            rec[axis] = getattr(self, axis)
        rec["fetched_at"] = (
            format_timestamp(self.fetched_at) if self.fetched_at else None
        )
        if self.raw is not None:
            rec["raw"] = self.raw
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "BotScoreRecord":
        return cls(
            account=rec["account"],
            fetched_at=(
                parse_timestamp(rec["fetched_at"]) if rec.get("fetched_at") else None
            ),
            raw=rec.get("raw"),
            **{axis: rec.get(axis) for axis in AXES},
        )


@dataclass
class ScoreCache:
    """Account -> record map keyed by lowercased screen name."""

    records: dict[str, BotScoreRecord] = field(default_factory=dict)
    path: str | None = None

    def put(self, record: BotScoreRecord) -> None:
        self.records[record.account.lower()] = record

    def get(self, account: str) -> BotScoreRecord | None:
        return self.records.get(account.lower())

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, account: str) -> bool:
        return account.lower() in self.records


@dataclass(frozen=True)
class FetchResult:
    records: list[BotScoreRecord]
    unavailable: dict[str, str]  # account -> reason
    retries: int = 0


def _normalize_scores(payload: dict) -> dict[str, float | None]:
    """Pull the seven axis values out of a response, rescaling if needed."""
    categories = payload.get("categories") or {}
    values: dict[str, float | None] = {}
    for axis in SUB_SCORES:
        v = categories.get(axis)
        values[axis] = float(v) if v is not None else None
    overall = payload.get("overall")
    values["overall"] = float(overall) if overall is not None else None

    present = [v for v in values.values() if v is not None]
    if present and max(present) > 1.0:
        scale = float(payload.get("scale") or ASSUMED_SCALE)
        values = {
            k: (v / scale if v is not None else None) for k, v in values.items()
        }
    return values


def fetch_scores(
    accounts: list[str],
    endpoint: str,
    credentials: str,
    rate_limit: int = 60,
    *,
    session=None,
    sleep=time.sleep,
    monotonic=time.monotonic,
    now=None,
    timeout: float = 30.0,
) -> FetchResult:
    """Fetch scores for each account, paced to ``rate_limit`` req/min.

    Throttle responses (HTTP 429) and transport errors are retried with
    exponential backoff (base 2 s, at most ``MAX_RETRIES`` attempts);
    accounts that still fail are reported as unavailable rather than
    failing the batch.  Authentication rejection aborts immediately.

    ``session``, ``sleep``, ``monotonic`` and ``now`` are injectable for
    testing; the defaults use ``requests`` and the real clock.
    """
    if rate_limit < 1:
        raise ConfigurationError("rate_limit must be >= 1 request/minute")
    if not endpoint:
        raise ConfigurationError("scoring endpoint must be set")
    if session is None:
        import requests

        session = requests.Session()
    if now is None:
        now = lambda: datetime.now(timezone.utc)

    import requests as _requests

    interval = 60.0 / rate_limit
    headers = {"Authorization": f"Bearer {credentials}"} if credentials else {}

    records: list[BotScoreRecord] = []
    unavailable: dict[str, str] = {}
    total_retries = 0
    next_slot = monotonic()

    for account in accounts:
        attempts = 0
        while True:
            wait = next_slot - monotonic()
            if wait > 0:
                sleep(wait)
            next_slot = max(next_slot, monotonic()) + interval

            try:
                resp = session.post(
                    endpoint,
                    json={"screen_name": account},
                    headers=headers,
                    timeout=timeout,
                )
            except _requests.exceptions.RequestException:
                resp = None

            if resp is not None and resp.status_code in (401, 403):
                raise NetworkError(
                    f"scoring service rejected credentials (HTTP {resp.status_code})"
                )
            if resp is not None and resp.status_code == 404:
                unavailable[account] = "not_found"
                break
            if resp is not None and resp.status_code == 200:
                payload = resp.json()
                values = _normalize_scores(payload)
                records.append(
                    BotScoreRecord(
                        account=account,
                        fetched_at=now(),
                        raw=payload,
                        **values,
                    )
                )
                break

            # throttled or transport failure: back off and retry
            attempts += 1
            if attempts > MAX_RETRIES:
                reason = "throttled" if resp is not None else "unreachable"
                unavailable[account] = reason
                break
            total_retries += 1
            sleep(BACKOFF_BASE_SECONDS * (2 ** (attempts - 1)))

    return FetchResult(
        records=records, unavailable=unavailable, retries=total_retries
    )


def load_cache(path: str) -> ScoreCache:
    """Load a JSON-lines cache; a missing file yields an empty cache."""
    cache = ScoreCache(path=path)
    if not os.path.exists(path):
        return cache
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = BotScoreRecord.from_record(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DataError(
                    f"corrupt score cache {path}: bad record at line {lineno}"
                ) from exc
            cache.put(rec)
    return cache


def store_cache(cache: ScoreCache, path: str) -> None:
    """Atomically persist the cache (write temp file, then rename)."""
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        for key in sorted(cache.records):
            rec = cache.records[key]
            fh.write(json.dumps(rec.to_record(), ensure_ascii=False,
                                separators=(",", ":")))
            fh.write("\n")
    os.replace(tmp, path)


def score_pairs(
    cache: ScoreCache, axis_x: str, axis_y: str
) -> list[tuple[float, float]]:
    """(x, y) points for every account with both axes present.

    Deterministic order (by lowercased account).  Unknown axis names are
    configuration errors; so is asking for the same axis twice.
    """
    for axis in (axis_x, axis_y):
        if axis not in AXES:
            raise ConfigurationError(
                f"unknown score axis '{axis}'; expected one of {AXES}"
            )
    if axis_x == axis_y:
        raise ConfigurationError("axis_x and axis_y must differ")
    points: list[tuple[float, float]] = []
    for key in sorted(cache.records):
        rec = cache.records[key]
        x, y = rec.get(axis_x), rec.get(axis_y)
        if x is not None and y is not None:
            points.append((x, y))
    return points
