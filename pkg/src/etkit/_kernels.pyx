# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot inner loops.

Same contracts as :mod:`etkit._kernels_py`; see that module for the
reference semantics.  Inputs arrive as sequences of int tuples and are
copied into flat int64 arrays before the C loops run.
"""

import numpy as np

from libc.stdint cimport int64_t

IMPL = "cython"


cdef inline bint _row_leq(const int64_t[:, :] a, Py_ssize_t i,
                          const int64_t[:, :] b, Py_ssize_t j,
                          Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t x
    for x in range(n):
        if a[i, x] > b[j, x]:
            return False
    return True


cdef object _as_arr(seq, Py_ssize_t n):
    arr = np.asarray([list(row) for row in seq], dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(0, n)
    return np.ascontiguousarray(arr)


def downward_closure(tests, cap):
    """All vectors v with 0 <= v <= t for some test t, sorted lexicographically."""
    if not len(tests):
        return []
    cdef Py_ssize_t n = len(tests[0])
    cdef const int64_t[:, :] T = _as_arr(tests, n)
    cdef Py_ssize_t k = T.shape[0]
    cdef int64_t limit = cap
    cdef int64_t count = 0
    cdef Py_ssize_t j, p, x
    cdef bint skip, carried

    vec_py = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] vec = vec_py

    # first pass: count vectors, attributing each to its first test box
    with nogil:
        for j in range(k):
            for x in range(n):
                vec[x] = 0
            while True:
                skip = False
                for p in range(j):
                    skip = True
                    for x in range(n):
                        if vec[x] > T[p, x]:
                            skip = False
                            break
                    if skip:
                        break
                if not skip:
                    count += 1
                    if count > limit:
                        break
                carried = True
                for x in range(n - 1, -1, -1):
                    if vec[x] < T[j, x]:
                        vec[x] += 1
                        carried = False
                        break
                    vec[x] = 0
                if carried:
                    break
            if count > limit:
                break
    if count > limit:
        raise OverflowError("event cap exceeded")

    out_py = np.empty((count, n), dtype=np.int64)
    cdef int64_t[:, :] out = out_py
    cdef Py_ssize_t w = 0
    with nogil:
        for j in range(k):
            for x in range(n):
                vec[x] = 0
            while True:
                skip = False
                for p in range(j):
                    skip = True
                    for x in range(n):
                        if vec[x] > T[p, x]:
                            skip = False
                            break
                    if skip:
                        break
                if not skip:
                    for x in range(n):
                        out[w, x] = vec[x]
                    w += 1
                carried = True
                for x in range(n - 1, -1, -1):
                    if vec[x] < T[j, x]:
                        vec[x] += 1
                        carried = False
                        break
                    vec[x] = 0
                if carried:
                    break
    order = np.lexsort(out_py[:, ::-1].T)
    return [tuple(row) for row in out_py[order].tolist()]


cdef object _residual_arrays(object events, object tests, Py_ssize_t n):
    """Residual stack per event: (m, k, n) array plus per-event counts."""
    cdef const int64_t[:, :] E = _as_arr(events, n)
    cdef const int64_t[:, :] T = _as_arr(tests, n)
    cdef Py_ssize_t m = E.shape[0], k = T.shape[0]
    res_py = np.zeros((m, k, n), dtype=np.int64)
    cnt_py = np.zeros(m, dtype=np.int64)
    cdef int64_t[:, :, :] res = res_py
    cdef int64_t[:] cnt = cnt_py
    cdef Py_ssize_t i, j, x
    cdef bint ok
    with nogil:
        for i in range(m):
            for j in range(k):
                ok = True
                for x in range(n):
                    if E[i, x] > T[j, x]:
                        ok = False
                        break
                if ok:
                    for x in range(n):
                        res[i, cnt[i], x] = T[j, x] - E[i, x]
                    cnt[i] += 1
    return res_py, cnt_py


def class_labels(events, tests):
    """Perspectivity-component label per event (see pure version)."""
    cdef Py_ssize_t m = len(events)
    if m == 0:
        return []
    cdef Py_ssize_t n = len(events[0])
    res_py, cnt_py = _residual_arrays(events, tests, n)
    cdef int64_t[:, :, :] res = res_py
    cdef int64_t[:] cnt = cnt_py

    parent_py = np.arange(m, dtype=np.int64)
    cdef int64_t[:] parent = parent_py
    cdef Py_ssize_t i, j, ra, rb

    by_residual = {}
    for i in range(m):
        for j in range(cnt[i]):
            key = tuple(res_py[i, j].tolist())
            first = by_residual.setdefault(key, i)
            if first != i:
                ra = first
                while parent[ra] != ra:
                    ra = parent[ra]
                rb = i
                while parent[rb] != rb:
                    rb = parent[rb]
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
    labels = [0] * m
    seen = {}
    cdef Py_ssize_t root
    for i in range(m):
        root = i
        while parent[root] != root:
            root = parent[root]
        labels[i] = seen.setdefault(root, len(seen))
    return labels


cdef inline bint _res_shared(const int64_t[:, :, :] res, const int64_t[:] cnt,
                             Py_ssize_t i, Py_ssize_t j, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t a, b, x
    cdef bint same
    for a in range(cnt[i]):
        for b in range(cnt[j]):
            same = True
            for x in range(n):
                if res[i, a, x] != res[j, b, x]:
                    same = False
                    break
            if same:
                return True
    return False


def clique_violation(events, tests, labels):
    """First same-label pair with no shared residual, if any."""
    cdef Py_ssize_t m = len(events)
    if m == 0:
        return None
    cdef Py_ssize_t n = len(events[0])
    res_py, cnt_py = _residual_arrays(events, tests, n)
    cdef int64_t[:, :, :] res = res_py
    cdef int64_t[:] cnt = cnt_py
    groups = {}
    cdef Py_ssize_t i
    for i in range(m):
        groups.setdefault(labels[i], []).append(i)
    cdef Py_ssize_t a, b
    for members in groups.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if not _res_shared(res, cnt, members[a], members[b], n):
                    return (members[a], members[b])
    return None


cdef inline bint _dominated_by_some(const int64_t[:, :, :] res, const int64_t[:] cnt,
                                    Py_ssize_t i, Py_ssize_t a, Py_ssize_t j,
                                    Py_ssize_t n) noexcept nogil:
    """Is residual a of event i below some residual of event j?"""
    cdef Py_ssize_t b, x
    cdef bint ok
    for b in range(cnt[j]):
        ok = True
        for x in range(n):
            if res[i, a, x] > res[j, b, x]:
                ok = False
                break
        if ok:
            return True
    return False


def algebraic_witness(events, tests):
    """Indices (f, g, h) breaking algebraicity, or None (see pure version)."""
    cdef Py_ssize_t m = len(events)
    if m == 0:
        return None
    cdef Py_ssize_t n = len(events[0])
    res_py, cnt_py = _residual_arrays(events, tests, n)
    cdef int64_t[:, :, :] res = res_py
    cdef int64_t[:] cnt = cnt_py
    index = {tuple(e): i for i, e in enumerate(events)}

    by_residual = {}
    cdef Py_ssize_t i, j
    for i in range(m):
        for j in range(cnt[i]):
            by_residual.setdefault(tuple(res_py[i, j].tolist()), []).append(i)
    pairs = set()
    for group in by_residual.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                pairs.add((group[a], group[b]))

    cdef Py_ssize_t x, y, u
    for i, j in sorted(pairs):
        for x, y in ((i, j), (j, i)):
            for u in range(cnt[x]):
                if not _dominated_by_some(res, cnt, x, u, y, n):
                    return (x, y, index[tuple(res_py[x, u].tolist())])
    return None


def leq_matrix(vecs, tests):
    """Boolean class-order matrix from tests alone (see pure version)."""
    cdef Py_ssize_t c = len(vecs)
    out_py = np.zeros((c, c), dtype=bool)
    if c == 0:
        return out_py
    cdef Py_ssize_t n = len(vecs[0])
    cdef const int64_t[:, :] V = _as_arr(vecs, n)
    cdef const int64_t[:, :] T = _as_arr(tests, n)
    cdef Py_ssize_t k = T.shape[0]
    cdef unsigned char[:, :] out = out_py.view(np.uint8)
    cdef Py_ssize_t i, j, t1, t2, x
    cdef bint ok
    with nogil:
        for j in range(c):
            for t2 in range(k):
                if not _row_leq(V, j, T, t2, n):
                    continue
                for t1 in range(k):
                    for i in range(c):
                        if out[i, j]:
                            continue
                        ok = True
                        for x in range(n):
                            if V[i, x] > T[t1, x] + V[j, x] - T[t2, x]:
                                ok = False
                                break
                        if ok:
                            out[i, j] = 1
    return out_py


def bound_candidates(f, g, tests, upper):
    """T^4 bound tuples and candidate vectors (see pure version)."""
    cdef Py_ssize_t n = len(f)
    cdef const int64_t[:, :] T = _as_arr(tests, n)
    cdef Py_ssize_t k = T.shape[0]
    cdef const int64_t[:] F = np.asarray(list(f), dtype=np.int64)
    cdef const int64_t[:] G = np.asarray(list(g), dtype=np.int64)
    cdef bint up = bool(upper)

    cdef Py_ssize_t cap = k * k * k * k
    idx_py = np.empty((cap, 4), dtype=np.int64)
    cand_py = np.empty((cap, n), dtype=np.int64)
    cdef int64_t[:, :] idx = idx_py
    cdef int64_t[:, :] cand = cand_py

    dom_f_py = np.zeros(k, dtype=np.uint8)
    dom_g_py = np.zeros(k, dtype=np.uint8)
    cdef unsigned char[:] dom_f = dom_f_py
    cdef unsigned char[:] dom_g = dom_g_py
    cdef Py_ssize_t i1, i2, i3, i4, x, w = 0
    cdef bint ok
    cdef int64_t lo, hi

    with nogil:
        for i1 in range(k):
            ok = True
            for x in range(n):
                if F[x] > T[i1, x]:
                    ok = False
                    break
            dom_f[i1] = ok
            ok = True
            for x in range(n):
                if G[x] > T[i1, x]:
                    ok = False
                    break
            dom_g[i1] = ok

        for i1 in range(k):
            if up and not dom_f[i1]:
                continue
            for i2 in range(k):
                if not up:
                    if not dom_f[i2]:
                        continue
                    ok = True
                    for x in range(n):
                        if F[x] - T[i2, x] + T[i1, x] < 0:
                            ok = False
                            break
                    if not ok:
                        continue
                for i3 in range(k):
                    if up and not dom_g[i3]:
                        continue
                    for i4 in range(k):
                        if up:
                            ok = True
                            for x in range(n):
                                if F[x] - T[i1, x] + T[i2, x] > T[i4, x]:
                                    ok = False
                                    break
                                if G[x] - T[i3, x] + T[i4, x] > T[i2, x]:
                                    ok = False
                                    break
                            if not ok:
                                continue
                            for x in range(n):
                                lo = F[x] - T[i1, x] + T[i2, x]
                                hi = G[x] - T[i3, x] + T[i4, x]
                                if hi > lo:
                                    lo = hi
                                if lo < 0:
                                    lo = 0
                                cand[w, x] = lo
                        else:
                            if not dom_g[i4]:
                                continue
                            ok = True
                            for x in range(n):
                                if G[x] - T[i4, x] + T[i3, x] < 0:
                                    ok = False
                                    break
                            if not ok:
                                continue
                            for x in range(n):
                                lo = F[x] - T[i2, x] + T[i1, x]
                                hi = G[x] - T[i4, x] + T[i3, x]
                                if hi < lo:
                                    lo = hi
                                cand[w, x] = lo
                        idx[w, 0] = i1
                        idx[w, 1] = i2
                        idx[w, 2] = i3
                        idx[w, 3] = i4
                        w += 1
    tuples = [tuple(row) for row in idx_py[:w].tolist()]
    cands = [tuple(row) for row in cand_py[:w].tolist()]
    return tuples, cands
