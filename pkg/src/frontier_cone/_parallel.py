"""Deterministic fan-out for Monte Carlo loops.

Tasks carry their own seed substreams, results are collected in task
order, and aggregation never depends on scheduling, so the worker count
cannot change any output.
"""

from concurrent.futures import ProcessPoolExecutor


def pmap(fn, tasks, workers=1):
    tasks = list(tasks)
    if not workers or workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    chunksize = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunksize))
