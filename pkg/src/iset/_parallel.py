from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def chunk_ranges(total: int, parts: int) -> list[range]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        out.append(range(start, stop))
        start = stop
    return out


def ordered_map(fn, tasks: list, workers: int) -> list:
    """``[fn(t) for t in tasks]``, fanned out to processes when ``workers > 1``."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))
