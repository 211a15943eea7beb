"""Deterministic work splitting for exhaustive scans.

A scan over q^k candidates is partitioned into contiguous index ranges.
Each chunk function receives (common_args..., start, stop) and returns a
list; results are concatenated in chunk order, so the output is identical
for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

__all__ = ["run_chunks", "split_ranges"]


def split_ranges(total: int, pieces: int) -> list[tuple[int, int]]:
    """Split range(total) into at most `pieces` contiguous nonempty ranges."""
    pieces = max(1, min(pieces, total)) if total else 1
    step, extra = divmod(total, pieces)
    ranges = []
    start = 0
    for i in range(pieces):
        stop = start + step + (1 if i < extra else 0)
        if stop > start:
            ranges.append((start, stop))
        start = stop
    return ranges or [(0, 0)]


def run_chunks(chunk_fn, common_args: tuple, total: int, workers: int = 1) -> list:
    """Apply chunk_fn(common_args + (start, stop)) over a partition of
    range(total), in order, optionally across processes."""
    workers = max(1, workers)
    pieces = workers * 4 if workers > 1 else 1
    args = [common_args + r for r in split_ranges(total, pieces)]
    if workers == 1:
        chunks = [chunk_fn(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(chunk_fn, args))
    return [item for chunk in chunks for item in chunk]
