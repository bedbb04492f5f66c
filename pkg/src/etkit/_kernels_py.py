"""Pure-Python kernels for the hot inner loops.

Interchangeable with the compiled ``etkit._kernels`` extension; the
dispatcher in ``etkit._core`` picks whichever is available.  All functions
take tests/events as sequences of equal-length int tuples and are
deterministic.  ``downward_closure`` raises ``OverflowError`` when the cap
is hit; callers translate that into a domain error.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

IMPL = "python"

Vec = tuple  # int tuple, one coordinate per outcome


def downward_closure(tests: Sequence[Vec], cap: int) -> list[Vec]:
    """All vectors v with 0 <= v <= t for some test t, sorted lexicographically."""
    if not tests:
        return []
    n = len(tests[0])
    out = []
    count = 0
    for j, t in enumerate(tests):
        vec = [0] * n
        while True:
            # emit each vector from the first test box that contains it
            v = tuple(vec)
            if not any(all(v[i] <= tests[p][i] for i in range(n)) for p in range(j)):
                count += 1
                if count > cap:
                    raise OverflowError("event cap exceeded")
                out.append(v)
            for i in reversed(range(n)):
                if vec[i] < t[i]:
                    vec[i] += 1
                    break
                vec[i] = 0
            else:
                break
    out.sort()
    return out


def _residuals(events: Sequence[Vec], tests: Sequence[Vec]) -> list[list[Vec]]:
    """Per event, the residuals t - e over all tests t >= e (each one an event)."""
    res = []
    for e in events:
        rs = [tuple(a - b for a, b in zip(t, e)) for t in tests if all(b <= a for a, b in zip(t, e))]
        res.append(rs)
    return res


def class_labels(events: Sequence[Vec], tests: Sequence[Vec]) -> list[int]:
    """Perspectivity-component label per event.

    Two events sharing a residual are perspective; components are the
    transitive closure of that relation, relabeled 0..C-1 in order of each
    component's first (lexicographically least) event.
    """
    m = len(events)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_residual: dict[Vec, int] = {}
    for i, rs in enumerate(_residuals(events, tests)):
        for r in rs:
            first = by_residual.setdefault(r, i)
            if first != i:
                ra, rb = find(first), find(i)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    labels = [0] * m
    seen: dict[int, int] = {}
    for i in range(m):
        root = find(i)
        labels[i] = seen.setdefault(root, len(seen))
    return labels


def clique_violation(
    events: Sequence[Vec], tests: Sequence[Vec], labels: Sequence[int]
) -> Optional[tuple[int, int]]:
    """First pair of same-label events with no shared residual, if any.

    A hit means perspectivity is not transitive on this table.
    """
    res = [set(rs) for rs in _residuals(events, tests)]
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    for members in groups.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                i, j = members[a], members[b]
                if not (res[i] & res[j]):
                    return (i, j)
    return None


def algebraic_witness(
    events: Sequence[Vec], tests: Sequence[Vec]
) -> Optional[tuple[int, int, int]]:
    """Indices (f, g, h) with f perspective to g, h+f an event, h+g not.

    Returns None when the test space is algebraic.  Uses the fact that
    {h : h+f is an event} is the downward closure of f's residual set, so
    the per-pair check reduces to domination between residual sets.
    """
    res = _residuals(events, tests)
    index = {e: i for i, e in enumerate(events)}
    n = len(tests[0]) if tests else 0

    pairs = set()
    by_residual: dict[Vec, list[int]] = {}
    for i, rs in enumerate(res):
        for r in rs:
            by_residual.setdefault(r, []).append(i)
    for group in by_residual.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                pairs.add((group[a], group[b]))

    for i, j in sorted(pairs):
        for x, y in ((i, j), (j, i)):
            # every h orthogonal to events[x] must be orthogonal to events[y]
            for u in res[x]:
                if not any(all(u[c] <= v[c] for c in range(n)) for v in res[y]):
                    return (x, y, index[u])
    return None


def leq_matrix(vecs: Sequence[Vec], tests: Sequence[Vec]) -> np.ndarray:
    """Boolean matrix M[i, j]: class of vecs[i] below class of vecs[j].

    Decided from tests alone: some t2 dominates vecs[j] and
    vecs[i] <= t1 + vecs[j] - t2 over signed integers for some t1.
    """
    c = len(vecs)
    n = len(tests[0]) if tests else 0
    out = np.zeros((c, c), dtype=bool)
    for j, g in enumerate(vecs):
        doms = [t2 for t2 in tests if all(g[x] <= t2[x] for x in range(n))]
        shifted = []
        for t2 in doms:
            for t1 in tests:
                shifted.append(tuple(t1[x] + g[x] - t2[x] for x in range(n)))
        for i, f in enumerate(vecs):
            out[i, j] = any(all(f[x] <= w[x] for x in range(n)) for w in shifted)
    return out


def bound_candidates(
    f: Vec, g: Vec, tests: Sequence[Vec], upper: bool
) -> tuple[list[tuple[int, int, int, int]], list[Vec]]:
    """Enumerate the T^4 bound tuples of (f, g) with their candidate vectors.

    Upper tuples satisfy f<=f1, g<=f3, f-f1+f2<=f4, g-f3+f4<=f2 and yield
    max(f-f1+f2, g-f3+f4, 0); lower tuples satisfy f<=f2, g<=f4,
    f-f2+f1>=0, g-f4+f3>=0 and yield min(f-f2+f1, g-f4+f3).  All
    comparisons run over signed integers.  Tuples come out in lexicographic
    index order.
    """
    k = len(tests)
    n = len(f)
    rng = range(n)
    tuples: list[tuple[int, int, int, int]] = []
    cands: list[Vec] = []
    dom_f = [all(f[x] <= t[x] for x in rng) for t in tests]
    dom_g = [all(g[x] <= t[x] for x in rng) for t in tests]
    for i1 in range(k):
        t1 = tests[i1]
        if upper and not dom_f[i1]:
            continue
        for i2 in range(k):
            t2 = tests[i2]
            if not upper and not dom_f[i2]:
                continue
            if not upper and any(f[x] - t2[x] + t1[x] < 0 for x in rng):
                continue
            for i3 in range(k):
                t3 = tests[i3]
                if upper and not dom_g[i3]:
                    continue
                for i4 in range(k):
                    t4 = tests[i4]
                    if upper:
                        if any(f[x] - t1[x] + t2[x] > t4[x] for x in rng):
                            continue
                        if any(g[x] - t3[x] + t4[x] > t2[x] for x in rng):
                            continue
                        cand = tuple(
                            max(f[x] - t1[x] + t2[x], g[x] - t3[x] + t4[x], 0) for x in rng
                        )
                    else:
                        if not dom_g[i4]:
                            continue
                        if any(g[x] - t4[x] + t3[x] < 0 for x in rng):
                            continue
                        cand = tuple(
                            min(f[x] - t2[x] + t1[x], g[x] - t4[x] + t3[x]) for x in rng
                        )
                    tuples.append((i1, i2, i3, i4))
                    cands.append(cand)
    return tuples, cands
