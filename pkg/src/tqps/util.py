"""Shared runtime helpers: canonical JSON, derived RNGs, bounded parallelism."""

import json
import os
import random
from concurrent.futures import ThreadPoolExecutor


def canonical_json(obj):
    """Serialize deterministically: sorted keys, fixed separators, ASCII only."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def derived_rng(seed, *path):
    """A Random stream derived stably from a base seed and a path of labels.

    String seeding is stable across runs and platforms, so reports built from
    derived streams are byte-identical for identical configurations.
    """
    key = str(seed) + "".join("/" + str(p) for p in path)
    return random.Random(key)


def thread_count():
    """Worker cap from TQPS_THREADS, defaulting to 1."""
    raw = os.environ.get("TQPS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return n if n >= 1 else 1


def parallel_map(fn, items):
    """Map preserving order, parallel only when TQPS_THREADS asks for it.

    Work items must be independent; results are collected in input order so
    output never depends on scheduling.
    """
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
