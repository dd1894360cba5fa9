"""Chunked map-reduce over group enumerations.

Work is split by ranges of the underlying permutation index; each chunk
returns a ``Counter`` of statistic keys and chunks are merged by addition,
so the result does not depend on the chunking or on the number of workers.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Tuple


def chunk_ranges(total: int, chunks: int) -> List[Tuple[int, int]]:
    chunks = max(1, min(chunks, total))
    step = -(-total // chunks)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def map_reduce(kernel: Callable, args: tuple, n_perms: int, jobs: int = 1,
               chunks_per_job: int = 4) -> Counter:
    """Run ``kernel(*args, start, stop)`` over chunks of ``range(n_perms)``."""
    if jobs <= 1:
        return kernel(*args, 0, n_perms)
    ranges = chunk_ranges(n_perms, jobs * chunks_per_job)
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(kernel, *args, lo, hi) for lo, hi in ranges]
        for f in futures:
            total.update(f.result())
    return total


def n_perms(n: int) -> int:
    return math.factorial(n)
