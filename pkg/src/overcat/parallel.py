"""Order-preserving parallel map used behind the ``--jobs`` flag."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def parallel_map(fn: Callable, arg_tuples: Sequence[tuple], jobs: int = 1) -> list:
    """``[fn(*args) for args in arg_tuples]``, in input order.

    With ``jobs > 1`` the calls run in worker processes; results are
    identical to the sequential run because nothing depends on scheduling.
    """
    if jobs <= 1 or len(arg_tuples) <= 1:
        return [fn(*args) for args in arg_tuples]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *args) for args in arg_tuples]
        return [f.result() for f in futures]
