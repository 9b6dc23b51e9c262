"""Look for two populations in bot-likelihood score space.

Fills a score cache with one bot-like and one human-like cluster, runs
the kernel density estimate over the four standard sub-score pairs, and
prints each pair's mode structure. A mixed population should come out
bimodal on every pair.
"""

import random

from botwatch import BotScoreRecord, ScoreCache, bimodality_report
from botwatch.bot_scoring import AXES

rng = random.Random(4)
cache = ScoreCache()
for i in range(300):
    center = 0.85 if i % 2 else 0.15
    values = {axis: min(1.0, max(0.0, rng.gauss(center, 0.05)))
              for axis in AXES}
    cache.put(BotScoreRecord(account=f"acct{i:03d}", **values))

for pair in bimodality_report(cache):
    report = pair.report
    peaks = ", ".join(f"({x:.2f}, {y:.2f})" for x, y, _ in report.modes)
    print(f"{pair.axis_x} x {pair.axis_y}: {report.classification}"
          f" with modes at {peaks}")
