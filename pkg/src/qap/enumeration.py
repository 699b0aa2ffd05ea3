"""Brute-force cap enumeration: the independent oracle behind every table.

Depth-first search over points in strictly increasing order, so each cap is
visited exactly once and no isomorph rejection is needed.  The state carries
an exclude counter per point (how many cap triples sum there), updated
incrementally when a point enters or leaves the cap, plus an incremental
GF(2) direction basis for dimension tallies and a running count of
multiplicity->=2 excludes for the class split at (k,dim) in {(8,6),(9,7)}.

Two engines produce identical tallies:

* ``reference`` -- plain Python, kept deliberately simple; practical for
  n <= 5.
* ``fast`` -- the same search compiled with numba, partitioned across
  first-two-point prefixes; results are merged by exact integer addition,
  so tallies are independent of the thread budget.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np


@dataclass
class Tally:
    """Exact cap counts for one size k: per-dimension and per-mult2 splits."""

    k: int
    by_dimension: dict[int, int] = field(default_factory=dict)
    # (dim, has multiplicity>=2 exclude) -> count; refines by_dimension
    by_dimension_mult2: dict[tuple[int, bool], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.by_dimension.values())


def default_thread_budget() -> int:
    env = os.environ.get("QAP_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def enumerate_caps(
    n: int,
    k_max: int,
    thread_budget: int | None = None,
    engine: str = "fast",
) -> list[Tally]:
    """Count all caps of size 1..k_max in Z_2^n, split by dimension.

    Deterministic: the result does not depend on the thread budget.
    """
    if not 1 <= n <= 16:
        raise ValueError("n must be in 1..16")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if engine == "reference":
        return _enumerate_reference(n, k_max)
    if engine == "fast":
        return _enumerate_fast(n, k_max, thread_budget or default_thread_budget())
    raise ValueError(f"unknown engine {engine!r}")


# ---------------------------------------------------------------------------
# Reference engine


def _enumerate_reference(n: int, k_max: int) -> list[Tally]:
    size = 1 << n
    counts = [dict() for _ in range(k_max + 1)]  # k -> {(dim, has2): count}
    excl = [0] * size  # triple-sum counter per point
    cap: list[int] = []

    def record(dim: int, num2: int) -> None:
        key = (dim, num2 > 0)
        bucket = counts[len(cap)]
        bucket[key] = bucket.get(key, 0) + 1

    def dfs(first_free: int, dim: int, pivots: dict[int, int], num2: int) -> None:
        if len(cap) == k_max:
            return
        for x in range(first_free, size):
            if excl[x] > 0:
                continue
            # new excludes: x with every pair already in the cap
            delta2 = 0
            for i in range(len(cap)):
                for j in range(i + 1, len(cap)):
                    t = x ^ cap[i] ^ cap[j]
                    excl[t] += 1
                    if excl[t] == 2:
                        delta2 += 1
            new_pivots = pivots
            new_dim = dim
            if cap:
                v = x ^ cap[0]
                red = v
                while red:
                    b = red.bit_length() - 1
                    if b not in new_pivots:
                        break
                    red ^= new_pivots[b]
                if red:
                    new_pivots = dict(pivots)
                    new_pivots[red.bit_length() - 1] = red
                    new_dim = dim + 1
            cap.append(x)
            record(new_dim, num2 + delta2)
            dfs(x + 1, new_dim, new_pivots, num2 + delta2)
            cap.pop()
            for i in range(len(cap)):
                for j in range(i + 1, len(cap)):
                    excl[x ^ cap[i] ^ cap[j]] -= 1

    dfs(0, 0, {}, 0)
    return _tallies_from_buckets(counts, k_max)


def _tallies_from_buckets(counts, k_max) -> list[Tally]:
    out = []
    for k in range(1, k_max + 1):
        t = Tally(k)
        for (dim, has2), c in sorted(counts[k].items()):
            t.by_dimension[dim] = t.by_dimension.get(dim, 0) + c
            t.by_dimension_mult2[(dim, has2)] = c
        out.append(t)
    return out


# ---------------------------------------------------------------------------
# Fast engine (numba)

_KERNEL = None


def _kernel():
    global _KERNEL
    if _KERNEL is None:
        import numba

        @numba.njit(cache=True, parallel=True, nogil=True)
        def run(n, k_max, p0s, p1s, counts):  # counts: (ntask, k_max+2, n+1, 2) int64
            size = 1 << n
            ntask = p0s.shape[0]
            for task in numba.prange(ntask):
                p0 = p0s[task]
                p1 = p1s[task]

                local = counts[task]
                excl = np.zeros(size, np.int32)
                cap = np.empty(k_max + 2, np.int64)
                nxt = np.empty(k_max + 2, np.int64)
                added = np.empty(k_max + 2, np.int64)  # pivot slot grown at depth, -1 if none
                num2s = np.empty(k_max + 2, np.int64)  # count of mult>=2 excludes at depth
                piv = np.zeros(n, np.int64)
                rank = 1

                cap[0] = p0
                cap[1] = p1
                piv[_msb(p0 ^ p1)] = p0 ^ p1
                local[2, 1, 0] += 1
                depth = 2
                nxt[2] = p1 + 1
                num2s[2] = 0

                while depth >= 2:
                    if depth >= k_max:
                        x = size  # force pop
                    else:
                        x = nxt[depth]
                        while x < size and excl[x] > 0:
                            x += 1
                    if x >= size:
                        # pop
                        depth -= 1
                        if depth < 2:
                            break
                        y = cap[depth]
                        for i in range(depth):
                            for j in range(i + 1, depth):
                                excl[y ^ cap[i] ^ cap[j]] -= 1
                        if added[depth] >= 0:
                            piv[added[depth]] = 0
                            rank -= 1
                        continue
                    # push x
                    num2 = num2s[depth]
                    for i in range(depth):
                        for j in range(i + 1, depth):
                            t2 = x ^ cap[i] ^ cap[j]
                            excl[t2] += 1
                            if excl[t2] == 2:
                                num2 += 1
                    v = x ^ cap[0]
                    slot = np.int64(-1)
                    while v != 0:
                        b = _msb(v)
                        if piv[b] == 0:
                            piv[b] = v
                            slot = b
                            rank += 1
                            break
                        v ^= piv[b]
                    cap[depth] = x
                    added[depth] = slot
                    nxt[depth] = x + 1
                    local[depth + 1, rank, 1 if num2 > 0 else 0] += 1
                    depth += 1
                    nxt[depth] = x + 1
                    num2s[depth] = num2

        @numba.njit(inline="always")
        def _msb(v):
            b = 0
            while v > 1:
                v >>= 1
                b += 1
            return b

        _KERNEL = run
    return _KERNEL


def _enumerate_fast(n: int, k_max: int, thread_budget: int) -> list[Tally]:
    import numba

    if n > 8:
        raise ValueError("fast engine supports n <= 8; use engine='reference'")
    size = 1 << n
    pairs = [(p0, p1) for p0 in range(size) for p1 in range(p0 + 1, size)]
    p0s = np.array([p[0] for p in pairs], dtype=np.int64)
    p1s = np.array([p[1] for p in pairs], dtype=np.int64)
    counts = np.zeros((len(pairs), k_max + 2, n + 1, 2), dtype=np.int64)
    old = numba.get_num_threads()
    numba.set_num_threads(max(1, min(thread_budget, numba.config.NUMBA_NUM_THREADS)))
    try:
        _kernel()(n, k_max, p0s, p1s, counts)
    finally:
        numba.set_num_threads(old)

    merged = counts.sum(axis=0, dtype=object)  # exact big-int addition
    buckets = [dict() for _ in range(k_max + 1)]
    for k in range(2, k_max + 1):
        for dim in range(n + 1):
            for has2 in (0, 1):
                c = int(merged[k, dim, has2])
                if c:
                    buckets[k][(dim, bool(has2))] = c
    if k_max >= 1:
        buckets[1][(0, False)] = size
    return _tallies_from_buckets(buckets, k_max)
