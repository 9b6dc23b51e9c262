"""Shared fixtures and tiny builders for the test suite."""

from datetime import datetime, timedelta, timezone

import pytest

from botwatch.models import Dataset, Tweet

BASE = datetime(2017, 12, 25, 12, 0, 0, tzinfo=timezone.utc)


def make_tweet(
    tweet_id,
    author="alice",
    at_seconds=0,
    source="TweetDeck",
    mentions=(),
    retweet_of=None,
    text="hola",
    author_created_at=None,
):
    return Tweet(
        tweet_id=str(tweet_id),
        author_id=author,
        author_screen_name=author,
        created_at=BASE + timedelta(seconds=at_seconds),
        source_client=source,
        text=text,
        mentions=tuple(mentions),
        retweet_of=retweet_of,
        author_created_at=author_created_at,
    )


def make_dataset(tweets, **kwargs):
    return Dataset(tweets=tuple(tweets), **kwargs)


@pytest.fixture
def small_dataset():
    return make_dataset(
        [
            make_tweet(1, "alice", 0, mentions=["bob"]),
            make_tweet(2, "bob", 60, source="Twitter Web Client"),
            make_tweet(3, "carol", 120, retweet_of="1"),
            make_tweet(4, "dave", 180, retweet_of="1"),
        ]
    )
