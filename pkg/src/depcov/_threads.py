"""Thread-count policy shared by the parallel code paths.

``DEPCOV_THREADS`` caps the worker count; ``0`` or unset means one worker
per CPU. Work is always split into the same chunks and results are
returned in submission order, so outputs never depend on the thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor

from .errors import InvalidParameter


def thread_count() -> int:
    raw = os.environ.get("DEPCOV_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParameter(f"DEPCOV_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise InvalidParameter("DEPCOV_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def ordered_map(fn, items):
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
