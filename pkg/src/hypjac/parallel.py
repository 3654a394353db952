"""Optional process-level parallelism, capped by ``HYPJAC_THREADS`` (default 1)."""
import os
from concurrent.futures import ProcessPoolExecutor


def workers():
    try:
        n = int(os.environ.get("HYPJAC_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def pmap(fn, items):
    """``list(map(fn, items))``, spread over processes when allowed."""
    items = list(items)
    n = workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
