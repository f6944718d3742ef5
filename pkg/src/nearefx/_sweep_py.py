"""Pure-Python enumeration kernels; see sweeps.py for the selection logic.

Same contracts as the compiled module, with arbitrary-precision integers.
Owner codes are little-endian by good index: code = sum owners[g] * base**g.
"""

from __future__ import annotations


def sweep_complete(values, p, q, forced_agent=-1, forced_goods=()):
    """Count EFX-passing complete allocations, odometer over owners.

    Returns (total, efx_count, efx_with_forced_bundle_count) where the last
    counter additionally requires forced_agent to own every forced good.
    Enumeration is lexicographic in the owner tuple (last good fastest).
    """
    n = len(values)
    m = len(values[0]) if n else 0
    coeff = q - p
    total = n ** m
    owners = [0] * m
    val = [[0] * n for _ in range(n)]  # val[i][j] = v_i(Y_j)
    for i in range(n):
        val[i][0] = sum(values[i])
    forced = tuple(forced_goods)
    for g in forced:
        if not 0 <= g < m:
            raise ValueError(f"forced good out of range: {g}")
    efx = matched = 0

    while True:
        minv = [[None] * n for _ in range(n)]
        for g in range(m):
            o = owners[g]
            for i in range(n):
                v = values[i][g]
                cur = minv[i][o]
                if cur is None or v < cur:
                    minv[i][o] = v
        ok = True
        for i in range(n):
            own = q * val[i][i]
            vi = val[i]
            mi = minv[i]
            for j in range(n):
                if j != i and mi[j] is not None and own < coeff * (vi[j] - mi[j]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            efx += 1
            if forced_agent >= 0 and all(owners[g] == forced_agent for g in forced):
                matched += 1

        g = m - 1
        while g >= 0:
            o = owners[g]
            for i in range(n):
                val[i][o] -= values[i][g]
            if o + 1 == n:
                owners[g] = 0
                for i in range(n):
                    val[i][0] += values[i][g]
                g -= 1
            else:
                owners[g] = o + 1
                for i in range(n):
                    val[i][o + 1] += values[i][g]
                break
        else:
            break
    return total, efx, matched


def sweep_partial_best(values, p, q):
    """Enumerate all (n+1)^m partial allocations; owner n means the pool.

    Returns (total, passing, best_code): passing counts allocations with no
    EFX violation between agents; best_code encodes the passing allocation
    whose ascending-sorted own-value vector is lexicographically maximal
    (first encountered wins ties).
    """
    n = len(values)
    m = len(values[0]) if n else 0
    base = n + 1
    coeff = q - p
    total = base ** m
    owners = [0] * m
    val = [[0] * base for _ in range(n)]  # column n is the pool
    for i in range(n):
        val[i][0] = sum(values[i])
    passing = 0
    best_vec = None
    best_code = -1

    while True:
        minv = [[None] * n for _ in range(n)]
        for g in range(m):
            o = owners[g]
            if o == n:
                continue
            for i in range(n):
                v = values[i][g]
                cur = minv[i][o]
                if cur is None or v < cur:
                    minv[i][o] = v
        ok = True
        for i in range(n):
            own = q * val[i][i]
            vi = val[i]
            mi = minv[i]
            for j in range(n):
                if j != i and mi[j] is not None and own < coeff * (vi[j] - mi[j]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            passing += 1
            vec = sorted(val[i][i] for i in range(n))
            if best_vec is None or vec > best_vec:
                best_vec = vec
                best_code = sum(owners[g] * base ** g for g in range(m))

        g = m - 1
        while g >= 0:
            o = owners[g]
            for i in range(n):
                val[i][o] -= values[i][g]
            if o + 1 == base:
                owners[g] = 0
                for i in range(n):
                    val[i][0] += values[i][g]
                g -= 1
            else:
                owners[g] = o + 1
                for i in range(n):
                    val[i][o + 1] += values[i][g]
                break
        else:
            break
    return total, passing, best_code
