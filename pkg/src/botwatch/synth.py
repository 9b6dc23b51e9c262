"""Synthetic tweet corpora with planted coordinated bot teams.

Every detector in the toolkit is validated against this generator: each
team retweets the same originals at (nearly) the same second, shares a
username stem, and was "created" within a short window, while organic
background accounts retweet random originals at random times.  Output is
byte-identical for a fixed seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

from .errors import ConfigurationError
from .models import Dataset, Tweet, format_timestamp

__all__ = ["SynthConfig", "GroundTruth", "generate", "DEFAULT_TEAM_STEMS"]

DEFAULT_TEAM_STEMS = (
    "rivera", "santos", "flores", "mendez", "castro",
    "ardila", "monroy", "zelaya", "pineda", "varela",
)

_DEFAULT_START = datetime(2017, 12, 25, 3, 55, 22, tzinfo=timezone.utc)
_DEFAULT_END = datetime(2018, 1, 1, 19, 19, 22, tzinfo=timezone.utc)


@dataclass(frozen=True)
class SynthConfig:
    n_teams: int = 5
    team_size: int = 20
    waves_per_team: int = 50
    jitter_seconds: int = 0
    n_background_accounts: int = 500
    background_tweets: int = 2000
    seed: int = 42
    window_start: datetime = _DEFAULT_START
    window_end: datetime = _DEFAULT_END
    team_prefixes: tuple[str, ...] = ()
    creation_window_days: int = 2

    def prefix_for(self, team: int) -> str:
        if team < len(self.team_prefixes):
            return self.team_prefixes[team]
        if team < len(DEFAULT_TEAM_STEMS):
            return DEFAULT_TEAM_STEMS[team]
        return f"squad{chr(ord('a') + team % 26)}crew"


@dataclass(frozen=True)
class GroundTruth:
    """Labels and schedules backing every planted behavior."""

    labels: dict[str, str]  # account -> team prefix or "organic"
    wave_schedule: dict[str, list[tuple[str, str]]]  # team -> (original, time)
    team_creation: dict[str, list[str]]  # team -> member creation dates

    def team_accounts(self) -> dict[str, list[str]]:
        teams: dict[str, list[str]] = {}
        for account, label in self.labels.items():
            if label != "organic":
                teams.setdefault(label, []).append(account)
        return teams

    def to_json(self) -> str:
        payload = {
            "labels": dict(sorted(self.labels.items())),
            "wave_schedule": self.wave_schedule,
            "team_creation": self.team_creation,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "GroundTruth":
        payload = json.loads(text)
        return cls(
            labels=payload["labels"],
            wave_schedule={
                team: [tuple(entry) for entry in sched]
                for team, sched in payload["wave_schedule"].items()
            },
            team_creation=payload["team_creation"],
        )


def generate(config: SynthConfig) -> tuple[Dataset, GroundTruth]:
    """Build a corpus with planted teams and organic background noise."""
    if config.window_start >= config.window_end:
        raise ConfigurationError("synth window start must precede end")
    window_seconds = int(
        (config.window_end - config.window_start).total_seconds()
    )
    if config.waves_per_team > window_seconds:
        raise ConfigurationError(
            "more waves than seconds in the window; schedule infeasible"
        )
    for name, value in (
        ("n_teams", config.n_teams),
        ("team_size", config.team_size),
        ("waves_per_team", config.waves_per_team),
        ("jitter_seconds", config.jitter_seconds),
        ("n_background_accounts", config.n_background_accounts),
        ("background_tweets", config.background_tweets),
    ):
        if value < 0:
            raise ConfigurationError(f"{name} must be >= 0")

    rng = random.Random(config.seed)
    start = config.window_start
    tweets: list[Tweet] = []
    labels: dict[str, str] = {}
    wave_schedule: dict[str, list[tuple[str, str]]] = {}
    team_creation: dict[str, list[str]] = {}
    next_id = 1

    def new_id() -> str:
        nonlocal next_id
        tid = f"t{next_id:08d}"
        next_id += 1
        return tid

    def at(offset: int) -> datetime:
        offset = max(0, min(window_seconds, offset))
        return start + timedelta(seconds=offset)

    # planted teams -------------------------------------------------------
    origin_pool: list[tuple[str, str]] = []  # (original_id, author) for bg use
    for team_idx in range(config.n_teams):
        prefix = config.prefix_for(team_idx)
        members = [
            f"{prefix}{i:03d}" for i in range(1, config.team_size + 1)
        ]
        # creation dates: batched per team, with team batches spaced
        # farther apart than the batch window so they stay distinct
        base_day = datetime(2017, 6, 1, tzinfo=timezone.utc) + timedelta(
            days=team_idx * (config.creation_window_days + 3)
        )
        creations = []
        for member in members:
            created = base_day + timedelta(
                days=rng.randint(0, config.creation_window_days),
                hours=rng.randint(0, 23),
            )
            creations.append(created)
            labels[member] = prefix
        team_creation[prefix] = [format_timestamp(c) for c in creations]

        origin = f"{prefix}origin"
        labels[origin] = prefix
        schedule: list[tuple[str, str]] = []
        wave_offsets = sorted(
            rng.sample(range(window_seconds), config.waves_per_team)
        )
        for wave, offset in enumerate(wave_offsets):
            original_id = new_id()
            wave_time = at(offset)
            tweets.append(
                Tweet(
                    tweet_id=original_id,
                    author_id=origin,
                    author_screen_name=origin,
                    created_at=wave_time,
                    source_client="TweetDeck",
                    text=f"good news from Honduras #{wave}",
                    mentions=(),
                )
            )
            schedule.append((original_id, format_timestamp(wave_time)))
            origin_pool.append((original_id, origin))
            for member, created in zip(members, creations):
                j = (
                    rng.randint(-config.jitter_seconds, config.jitter_seconds)
                    if config.jitter_seconds
                    else 0
                )
                tweets.append(
                    Tweet(
                        tweet_id=new_id(),
                        author_id=member,
                        author_screen_name=member,
                        created_at=at(offset + j),
                        source_client="TweetDeck",
                        text=f"RT @{origin}: good news from Honduras #{wave}",
                        mentions=(origin,),
                        retweet_of=original_id,
                        author_created_at=created,
                    )
                )
        wave_schedule[prefix] = schedule

    # organic background ---------------------------------------------------
    background = [
        f"user{i:05d}" for i in range(1, config.n_background_accounts + 1)
    ]
    for account in background:
        labels[account] = "organic"
    bg_creations = {
        account: datetime(2012, 1, 1, tzinfo=timezone.utc)
        + timedelta(days=rng.randint(0, 2000))
        for account in background
    }

    # a few background originals so organic retweets are not all of bots
    n_bg_originals = max(1, config.background_tweets // 10) if (
        config.background_tweets and background
    ) else 0
    for _ in range(n_bg_originals):
        author = rng.choice(background)
        original_id = new_id()
        tweets.append(
            Tweet(
                tweet_id=original_id,
                author_id=author,
                author_screen_name=author,
                created_at=at(rng.randrange(window_seconds)),
                source_client="Twitter Web Client",
                text="que pasa en Honduras",
                mentions=(),
                author_created_at=bg_creations[author],
            )
        )
        origin_pool.append((original_id, author))

    if config.background_tweets and background and origin_pool:
        for _ in range(config.background_tweets):
            account = rng.choice(background)
            original_id, author = rng.choice(origin_pool)
            tweets.append(
                Tweet(
                    tweet_id=new_id(),
                    author_id=account,
                    author_screen_name=account,
                    created_at=at(rng.randrange(window_seconds)),
                    source_client=rng.choice(
                        ("Twitter Web Client", "Twitter for Android")
                    ),
                    text=f"RT @{author}",
                    mentions=(author,),
                    retweet_of=original_id,
                    author_created_at=bg_creations[account],
                )
            )

    tweets.sort(key=lambda t: (t.created_at, t.tweet_id))
    dataset = Dataset(
        tweets=tuple(tweets),
        window_start=config.window_start,
        window_end=config.window_end,
        provenance=f"synth(seed={config.seed})",
    )
    truth = GroundTruth(
        labels=labels, wave_schedule=wave_schedule, team_creation=team_creation
    )
    return dataset, truth
