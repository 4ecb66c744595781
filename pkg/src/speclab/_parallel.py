"""Rung-level parallelism capped by the SPECLAB_THREADS environment variable."""

import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap():
    try:
        return max(1, int(os.environ.get("SPECLAB_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """``[fn(x) for x in items]``, possibly on worker threads; order is kept."""
    items = list(items)
    workers = min(thread_cap(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
