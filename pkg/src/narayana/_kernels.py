"""Compiled inner loops (numba) for the automata engine.

Only the pieces whose cost is dominated by per-element Python overhead live
here: the subset construction and partition refinement.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_EMPTY_HASH = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True)
def _hash(buf, k):
    h = np.uint64(0xCBF29CE484222325)
    for t in range(k):
        h ^= np.uint64(buf[t]) + np.uint64(0x9E3779B97F4A7C15) + (h << np.uint64(6)) + (h >> np.uint64(2))
        h *= np.uint64(0x100000001B3)
    return h


@njit(cache=True)
def _grow(arr, need):
    if need <= arr.shape[0]:
        return arr
    size = arr.shape[0] * 2
    while size < need:
        size *= 2
    out = np.empty(size, dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True)
def subset_construction(succ, start, accept, max_states):
    """Determinise an NFA given as ``succ[q, s, g]`` (-1 = no move).

    Returns (delta, accepting, status) with status 0 = done, 1 = too large.
    States of the result are numbered in discovery order; subset 0 is ``start``.
    """
    n, nsym, ng = succ.shape
    pool = np.empty(max(1024, start.shape[0] * 4), dtype=np.int32)
    offsets = np.zeros(1024, dtype=np.int64)
    hashes = np.zeros(1024, dtype=np.uint64)
    table_size = 1 << 12
    table = np.full(table_size, -1, dtype=np.int64)
    delta = np.empty(1024 * nsym, dtype=np.int32)
    acc = np.zeros(1024, dtype=np.bool_)
    mark = np.full(n, -1, dtype=np.int64)
    buf = np.empty(n, dtype=np.int32)

    # insert start
    k0 = start.shape[0]
    pool[:k0] = start
    offsets[1] = k0
    h0 = _hash(start, k0)
    hashes[0] = h0
    table[h0 & np.uint64(table_size - 1)] = 0
    count = 1
    i = 0
    while i < count:
        lo = offsets[i]
        hi = offsets[i + 1]
        a = False
        for t in range(lo, hi):
            if accept[pool[t]]:
                a = True
                break
        acc[i] = a
        for s in range(nsym):
            stamp = i * nsym + s
            k = 0
            for t in range(lo, hi):
                q = pool[t]
                for g in range(ng):
                    r = succ[q, s, g]
                    if r >= 0 and mark[r] != stamp:
                        mark[r] = stamp
                        buf[k] = r
                        k += 1
            cur = np.sort(buf[:k])
            h = _hash(cur, k)
            slot = h & np.uint64(table_size - 1)
            found = -1
            while True:
                j = table[slot]
                if j < 0:
                    break
                if hashes[j] == h and offsets[j + 1] - offsets[j] == k:
                    same = True
                    base = offsets[j]
                    for t in range(k):
                        if pool[base + t] != cur[t]:
                            same = False
                            break
                    if same:
                        found = j
                        break
                slot = (slot + np.uint64(1)) & np.uint64(table_size - 1)
            if found < 0:
                if count >= max_states:
                    return delta[: count * nsym].reshape(count, nsym), acc[:count], 1
                found = count
                pool = _grow(pool, offsets[count] + k)
                pool[offsets[count]: offsets[count] + k] = cur
                offsets = _grow(offsets, count + 2)
                offsets[count + 1] = offsets[count] + k
                hashes = _grow(hashes, count + 1)
                hashes[count] = h
                acc = _grow(acc, count + 1)
                table[slot] = count
                count += 1
                if 2 * count > table_size:
                    table_size *= 4
                    table = np.full(table_size, -1, dtype=np.int64)
                    for j in range(count):
                        sl = hashes[j] & np.uint64(table_size - 1)
                        while table[sl] >= 0:
                            sl = (sl + np.uint64(1)) & np.uint64(table_size - 1)
                        table[sl] = j
            delta = _grow(delta, (i + 1) * nsym)
            delta[i * nsym + s] = found
        i += 1
    return delta[: count * nsym].reshape(count, nsym), acc[:count], 0


@njit(cache=True)
def refine(delta, labels):
    """Coarsest partition compatible with ``labels`` and stable under ``delta``.

    Moore-style rounds with hashing of (class, successor classes) signatures;
    returns class ids numbered by first occurrence.
    """
    n, nsym = delta.shape
    cls = np.empty(n, dtype=np.int64)
    # initial classes from labels
    lab_ids = {}
    k = 0
    for q in range(n):
        key = labels[q]
        if key in lab_ids:
            cls[q] = lab_ids[key]
        else:
            lab_ids[key] = k
            cls[q] = k
            k += 1
    sig = np.empty(nsym + 1, dtype=np.int64)
    while True:
        table_size = 1
        while table_size < 2 * n + 2:
            table_size *= 2
        table = np.full(table_size, -1, dtype=np.int64)
        new = np.empty(n, dtype=np.int64)
        reps = np.empty(n, dtype=np.int64)
        k2 = 0
        for q in range(n):
            sig[0] = cls[q]
            for s in range(nsym):
                sig[s + 1] = cls[delta[q, s]]
            h = _hash(sig, nsym + 1)
            slot = h & np.uint64(table_size - 1)
            while True:
                j = table[slot]
                if j < 0:
                    table[slot] = k2
                    reps[k2] = q
                    new[q] = k2
                    k2 += 1
                    break
                p = reps[j]
                same = cls[p] == cls[q]
                if same:
                    for s in range(nsym):
                        if cls[delta[p, s]] != cls[delta[q, s]]:
                            same = False
                            break
                if same:
                    new[q] = j
                    break
                slot = (slot + np.uint64(1)) & np.uint64(table_size - 1)
        if k2 == k:
            return new, k2
        cls = new
        k = k2


@njit(cache=True)
def longest_periodic(word, max_period):
    """best[p] = length of the longest factor of ``word`` having period p."""
    n = word.shape[0]
    best = np.zeros(max_period + 1, dtype=np.int64)
    for p in range(1, max_period + 1):
        run = 0
        top = 0
        for t in range(n - p):
            if word[t] == word[t + p]:
                run += 1
                if run > top:
                    top = run
            else:
                run = 0
        best[p] = top + p if n > p else 0
    return best
