"""Order-preserving map over a process pool (or inline when workers <= 1)."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import partial


def pmap(fn, ctx, items, workers: int = 0) -> list:
    """[fn(ctx, x) for x in items], fanned out when workers > 1.

    Results always come back in input order, so parallel runs are
    byte-identical to sequential ones.
    """
    items = list(items)
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(items) // (workers * 4))
            return list(pool.map(partial(fn, ctx), items, chunksize=chunk))
    return [fn(ctx, x) for x in items]
