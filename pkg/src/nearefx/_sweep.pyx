# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; contracts mirror _sweep_py exactly.

Arithmetic is int64; sweeps.py guards the magnitudes before dispatching here.
"""

from libc.stdlib cimport calloc, free


def sweep_complete(values, long long p, long long q, int forced_agent=-1, forced_goods=()):
    cdef int n = len(values)
    cdef int m = len(values[0]) if n else 0
    cdef long long coeff = q - p
    total = int(n) ** int(m)
    cdef long long efx = 0, matched = 0
    cdef int i, j, g, o, ok, in_forced
    cdef long long v, own

    cdef long long *vals = <long long *> calloc(n * m if n * m else 1, sizeof(long long))
    cdef long long *val = <long long *> calloc(n * n if n else 1, sizeof(long long))
    cdef long long *minv = <long long *> calloc(n * n if n else 1, sizeof(long long))
    cdef char *has_min = <char *> calloc(n * n if n else 1, 1)
    cdef int *owners = <int *> calloc(m if m else 1, sizeof(int))
    cdef char *forced_mask = <char *> calloc(m if m else 1, 1)
    if not (vals and val and minv and has_min and owners and forced_mask):
        free(vals); free(val); free(minv); free(has_min); free(owners); free(forced_mask)
        raise MemoryError()
    try:
        for i in range(n):
            for g in range(m):
                vals[i * m + g] = values[i][g]
        for i in range(n):
            own = 0
            for g in range(m):
                own += vals[i * m + g]
            val[i * n] = own
        for g in forced_goods:
            if not 0 <= g < m:
                raise ValueError(f"forced good out of range: {g}")
            forced_mask[g] = 1

        while True:
            for i in range(n * n):
                has_min[i] = 0
            for g in range(m):
                o = owners[g]
                for i in range(n):
                    v = vals[i * m + g]
                    if not has_min[i * n + o] or v < minv[i * n + o]:
                        minv[i * n + o] = v
                        has_min[i * n + o] = 1
            ok = 1
            for i in range(n):
                own = q * val[i * n + i]
                for j in range(n):
                    if j != i and has_min[i * n + j] and own < coeff * (val[i * n + j] - minv[i * n + j]):
                        ok = 0
                        break
                if not ok:
                    break
            if ok:
                efx += 1
                in_forced = 1
                if forced_agent >= 0:
                    for g in range(m):
                        if forced_mask[g] and owners[g] != forced_agent:
                            in_forced = 0
                            break
                    if in_forced:
                        matched += 1

            g = m - 1
            while g >= 0:
                o = owners[g]
                for i in range(n):
                    val[i * n + o] -= vals[i * m + g]
                if o + 1 == n:
                    owners[g] = 0
                    for i in range(n):
                        val[i * n] += vals[i * m + g]
                    g -= 1
                else:
                    owners[g] = o + 1
                    for i in range(n):
                        val[i * n + o + 1] += vals[i * m + g]
                    break
            else:
                break
        return total, efx, matched
    finally:
        free(vals); free(val); free(minv); free(has_min); free(owners); free(forced_mask)


def sweep_partial_best(values, long long p, long long q):
    cdef int n = len(values)
    cdef int m = len(values[0]) if n else 0
    cdef int base = n + 1
    cdef long long coeff = q - p
    total = int(base) ** int(m)
    cdef long long passing = 0
    cdef int i, j, g, o, ok, have_best = 0, cmp_res
    cdef long long v, own

    cdef long long *vals = <long long *> calloc(n * m if n * m else 1, sizeof(long long))
    cdef long long *val = <long long *> calloc(n * base, sizeof(long long))
    cdef long long *minv = <long long *> calloc(n * n if n else 1, sizeof(long long))
    cdef char *has_min = <char *> calloc(n * n if n else 1, 1)
    cdef int *owners = <int *> calloc(m if m else 1, sizeof(int))
    cdef int *best_owners = <int *> calloc(m if m else 1, sizeof(int))
    cdef long long *vec = <long long *> calloc(n if n else 1, sizeof(long long))
    cdef long long *best_vec = <long long *> calloc(n if n else 1, sizeof(long long))
    if not (vals and val and minv and has_min and owners and best_owners and vec and best_vec):
        free(vals); free(val); free(minv); free(has_min)
        free(owners); free(best_owners); free(vec); free(best_vec)
        raise MemoryError()
    try:
        for i in range(n):
            for g in range(m):
                vals[i * m + g] = values[i][g]
        for i in range(n):
            own = 0
            for g in range(m):
                own += vals[i * m + g]
            val[i * base] = own

        while True:
            for i in range(n * n):
                has_min[i] = 0
            for g in range(m):
                o = owners[g]
                if o == n:
                    continue
                for i in range(n):
                    v = vals[i * m + g]
                    if not has_min[i * n + o] or v < minv[i * n + o]:
                        minv[i * n + o] = v
                        has_min[i * n + o] = 1
            ok = 1
            for i in range(n):
                own = q * val[i * base + i]
                for j in range(n):
                    if j != i and has_min[i * n + j] and own < coeff * (val[i * base + j] - minv[i * n + j]):
                        ok = 0
                        break
                if not ok:
                    break
            if ok:
                passing += 1
                for i in range(n):
                    vec[i] = val[i * base + i]
                # insertion sort ascending; n is tiny
                for i in range(1, n):
                    v = vec[i]
                    j = i - 1
                    while j >= 0 and vec[j] > v:
                        vec[j + 1] = vec[j]
                        j -= 1
                    vec[j + 1] = v
                cmp_res = 0
                if have_best:
                    for i in range(n):
                        if vec[i] > best_vec[i]:
                            cmp_res = 1
                            break
                        if vec[i] < best_vec[i]:
                            cmp_res = -1
                            break
                if not have_best or cmp_res == 1:
                    have_best = 1
                    for i in range(n):
                        best_vec[i] = vec[i]
                    for g in range(m):
                        best_owners[g] = owners[g]

            g = m - 1
            while g >= 0:
                o = owners[g]
                for i in range(n):
                    val[i * base + o] -= vals[i * m + g]
                if o + 1 == base:
                    owners[g] = 0
                    for i in range(n):
                        val[i * base] += vals[i * m + g]
                    g -= 1
                else:
                    owners[g] = o + 1
                    for i in range(n):
                        val[i * base + o + 1] += vals[i * m + g]
                    break
            else:
                break

        if not have_best:
            return total, passing, -1
        best_code = 0
        for g in range(m - 1, -1, -1):
            best_code = best_code * base + best_owners[g]
        return total, passing, best_code
    finally:
        free(vals); free(val); free(minv); free(has_min)
        free(owners); free(best_owners); free(vec); free(best_vec)
