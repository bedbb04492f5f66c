"""Quotient effect algebra of an algebraic test space.

Events are partitioned into perspectivity classes; classes carry a partial
orthosum, an orthosupplement, and a partial order, forming a finite effect
algebra with 0 = the class of the zero vector and 1 = the class of the
tests.  Construction asserts every effect-algebra axiom and fails loudly
(:class:`etkit.errors.AxiomViolation`) rather than returning a broken
structure.

All published objects are immutable after construction; queries are
read-only and safe to run concurrently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from . import errors
from ._core import kernels
from .testspace import (
    Counterexample,
    IntVec,
    TestTable,
    VecLike,
    _require_event,
    event_vecs,
    vadd,
    vleq,
)


@dataclass(frozen=True)
class EffectClass:
    """One perspectivity class: id, lex-least member, all members."""

    class_id: int
    canonical: IntVec
    members: tuple[IntVec, ...]


ClassLike = Union[EffectClass, int]


def _class_id(p: ClassLike) -> int:
    return p.class_id if isinstance(p, EffectClass) else int(p)


@dataclass(frozen=True, eq=False)
class EffectAlgebra:
    """The quotient effect algebra of a test table.

    ``oplus`` maps defined id pairs to the id of their orthosum; ``leq`` is
    the full order matrix (numpy bool, read-only); ``orth`` maps each id to
    its orthosupplement; ``isotropic`` maps each nonzero id to the largest
    multiple of it that exists.
    """

    table: TestTable
    events: tuple[IntVec, ...]
    classes: tuple[EffectClass, ...]
    zero: int
    unit: int
    oplus: Mapping[tuple[int, int], int]
    orth: tuple[int, ...]
    leq: np.ndarray
    isotropic: Mapping[int, int]
    _class_of: Mapping[IntVec, int] = field(repr=False)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def class_of(self, f: VecLike) -> int:
        """Class id of an event vector."""
        v = _require_event(f, self.table)
        return self._class_of[v]

    def orthosum(self, p: ClassLike, q: ClassLike) -> Optional[int]:
        """Id of p + q when defined, else None."""
        return self.oplus.get((_class_id(p), _class_id(q)))

    def leq_ids(self, p: ClassLike, q: ClassLike) -> bool:
        return bool(self.leq[_class_id(p), _class_id(q)])

    def label(self, p: ClassLike) -> str:
        """Human-readable class label from the canonical representative."""
        i = _class_id(p)
        if i == self.zero:
            return "0"
        if i == self.unit:
            return "1"
        return render_vec(self.classes[i].canonical, self.table.outcomes.names)


def render_vec(vec: Sequence[int], names: Sequence[str]) -> str:
    """Outcome-sum notation for a vector, e.g. (1, 2, 0) -> 'a⊕2b'."""
    terms = [
        ("" if c == 1 else str(c)) + name for c, name in zip(vec, names) if c
    ]
    return "⊕".join(terms) if terms else "0"


def build_algebra(
    table: TestTable, cap: Optional[int] = None, check: bool = True
) -> EffectAlgebra:
    """Construct the quotient effect algebra of an algebraic table.

    Raises :class:`errors.NotAlgebraic` if the table is not algebraic, and
    :class:`errors.AxiomViolation` if any structural fact that should hold
    by construction fails (non-transitive perspectivity, member-dependent
    orthosums, a broken axiom).  With ``check=True`` the full axiom suite
    and the cross-check of the order matrix against orthosum existence run
    before the algebra is returned.
    """
    vecs = event_vecs(table, cap)
    tests = table.tests
    hit = kernels.algebraic_witness(vecs, tests)
    if hit is not None:
        i, j, k = hit
        raise errors.NotAlgebraic(Counterexample(vecs[i], vecs[j], vecs[k]))

    labels = kernels.class_labels(vecs, tests)
    bad = kernels.clique_violation(vecs, tests, labels)
    if bad is not None:
        raise errors.AxiomViolation(
            "perspectivity is not transitive", (vecs[bad[0]], vecs[bad[1]])
        )

    n_classes = max(labels) + 1
    members: list[list[IntVec]] = [[] for _ in range(n_classes)]
    for v, lab in zip(vecs, labels):
        members[lab].append(v)
    # events come sorted, so members are sorted and members[i][0] is lex-least;
    # labels are numbered by first occurrence, so ids ascend by canonical rep
    classes = tuple(
        EffectClass(i, ms[0], tuple(ms)) for i, ms in enumerate(members)
    )
    class_of = {v: lab for v, lab in zip(vecs, labels)}

    zero = class_of[vecs[0]]
    if classes[zero].members != (vecs[0],):
        raise errors.AxiomViolation("zero class has extra members", classes[zero].members)
    unit_ids = {class_of[t] for t in tests}
    if len(unit_ids) != 1:
        raise errors.AxiomViolation("tests fall into distinct classes", unit_ids)
    unit = unit_ids.pop()

    event_set = set(vecs)
    oplus: dict[tuple[int, int], int] = {}
    for i in range(n_classes):
        for j in range(i, n_classes):
            targets = set()
            for f in classes[i].members:
                for g in classes[j].members:
                    s = vadd(f, g)
                    if s in event_set:
                        targets.add(class_of[s])
            if len(targets) > 1:
                raise errors.AxiomViolation(
                    "orthosum depends on the chosen members", (i, j, sorted(targets))
                )
            if targets:
                k = targets.pop()
                oplus[(i, j)] = k
                oplus[(j, i)] = k

    orth_lists = [
        [q for q in range(n_classes) if oplus.get((p, q)) == unit]
        for p in range(n_classes)
    ]
    for p, qs in enumerate(orth_lists):
        if len(qs) != 1:
            raise errors.AxiomViolation(
                "orthosupplement is not unique", (p, qs)
            )
    orth = tuple(qs[0] for qs in orth_lists)

    leq = kernels.leq_matrix([c.canonical for c in classes], tests)
    leq.setflags(write=False)

    isotropic: dict[int, int] = {}
    for p in range(n_classes):
        if p == zero:
            continue
        k, cur = 1, p
        while (cur, p) in oplus:
            cur = oplus[(cur, p)]
            k += 1
        isotropic[p] = k

    algebra = EffectAlgebra(
        table=table,
        events=tuple(vecs),
        classes=classes,
        zero=zero,
        unit=unit,
        oplus=MappingProxyType(oplus),
        orth=orth,
        leq=leq,
        isotropic=MappingProxyType(isotropic),
        _class_of=MappingProxyType(class_of),
    )
    if check:
        _check_order_matches_orthosum(algebra)
        verify_axioms(algebra)
    return algebra


def _check_order_matches_orthosum(a: EffectAlgebra) -> None:
    """Order matrix must agree with the existence-of-completion order."""
    n = a.n_classes
    by_sum = np.zeros((n, n), dtype=bool)
    for (p, _r), q in a.oplus.items():
        by_sum[p, q] = True
    if not np.array_equal(by_sum, a.leq):
        diff = np.argwhere(by_sum != a.leq)
        raise errors.AxiomViolation(
            "order matrix disagrees with orthosum existence", diff[0].tolist()
        )


def verify_axioms(a: EffectAlgebra) -> None:
    """Assert every effect-algebra axiom plus the standard order facts.

    Covers commutativity, associativity over all defined triples, unique
    orthosupplement, the zero-unit law, cancellation, orthogonality vs
    order (q ⊥ p iff q <= p'), the involution and order reversal of the
    orthosupplement, and partial-order sanity with bottom 0 and top 1.
    """
    n = a.n_classes
    op = a.oplus
    leq = a.leq

    eye = np.eye(n, dtype=bool)
    if not leq.diagonal().all():
        raise errors.AxiomViolation("order not reflexive")
    if (leq & leq.T & ~eye).any():
        raise errors.AxiomViolation("order not antisymmetric")
    closure = leq @ leq
    if (closure & ~leq).any():
        raise errors.AxiomViolation("order not transitive")
    if not leq[a.zero, :].all():
        raise errors.AxiomViolation("zero is not the bottom")
    if not leq[:, a.unit].all():
        raise errors.AxiomViolation("unit is not the top")

    for (p, q), r in op.items():
        if op.get((q, p)) != r:
            raise errors.AxiomViolation("orthosum not commutative", (p, q))

    for (q, r), qr in op.items():
        for p in range(n):
            pqr = op.get((p, qr))
            if pqr is None:
                continue
            pq = op.get((p, q))
            if pq is None or op.get((pq, r)) != pqr:
                raise errors.AxiomViolation("orthosum not associative", (p, q, r))

    for p in range(n):
        sups = [q for q in range(n) if op.get((p, q)) == a.unit]
        if sups != [a.orth[p]]:
            raise errors.AxiomViolation("orthosupplement not unique", (p, sups))

    for p in range(n):
        if op.get((a.unit, p)) is not None and p != a.zero:
            raise errors.AxiomViolation("zero-unit law fails", p)

    by_q: dict[int, list[tuple[int, int]]] = {}
    for (p, q), s in op.items():
        by_q.setdefault(q, []).append((p, s))
    for q, pairs in by_q.items():
        for p, s1 in pairs:
            for r, s2 in pairs:
                if leq[s1, s2] and not leq[p, r]:
                    raise errors.AxiomViolation("cancellation fails", (p, r, q))

    for p in range(n):
        for q in range(n):
            if ((p, q) in op) != bool(leq[q, a.orth[p]]):
                raise errors.AxiomViolation(
                    "orthogonality does not match order against supplement", (p, q)
                )

    for p in range(n):
        if a.orth[a.orth[p]] != p:
            raise errors.AxiomViolation("orthosupplement not an involution", p)
        for q in range(n):
            if leq[p, q] and not leq[a.orth[q], a.orth[p]]:
                raise errors.AxiomViolation("orthosupplement not order reversing", (p, q))


# -- decision procedures from tests alone ---------------------------------

def residual_equal(f: VecLike, g: VecLike, table: TestTable) -> bool:
    """Class equality decided from tests: some t1 >= f, t2 >= g leave t1-f == t2-g.

    Agrees with :func:`etkit.testspace.approx` on every algebraic table.
    """
    fv, gv = _require_event(f, table), _require_event(g, table)
    res_f = {
        tuple(a - b for a, b in zip(t, fv)) for t in table.tests if vleq(fv, t)
    }
    return any(
        tuple(a - b for a, b in zip(t, gv)) in res_f
        for t in table.tests
        if vleq(gv, t)
    )


def residual_leq(f: VecLike, g: VecLike, table: TestTable) -> bool:
    """Class order decided from tests: some t2 >= g, t1 give f <= t1 + g - t2.

    The comparison runs over signed integers.  Agrees with the
    existence-of-completion order on every algebraic table.
    """
    fv, gv = _require_event(f, table), _require_event(g, table)
    for t2 in table.tests:
        if not vleq(gv, t2):
            continue
        for t1 in table.tests:
            if all(fc <= t1c + gc - t2c for fc, t1c, gc, t2c in zip(fv, t1, gv, t2)):
                return True
    return False


def orthosupplement(p: ClassLike, a: EffectAlgebra) -> EffectClass:
    """The unique class q with p + q = 1."""
    return a.classes[a.orth[_class_id(p)]]


# -- presentation ----------------------------------------------------------

def hasse_covers(a: EffectAlgebra) -> set[tuple[int, int]]:
    """Transitive reduction of the order: pairs (lower, upper) with no class between."""
    strict = a.leq & ~np.eye(a.n_classes, dtype=bool)
    two_step = strict @ strict
    cover = strict & ~two_step
    return {(int(i), int(j)) for i, j in np.argwhere(cover)}


def to_dot(a: EffectAlgebra) -> str:
    """Graphviz rendering of the Hasse diagram (bottom-up ranks)."""
    lines = [
        "digraph hasse {",
        "  rankdir=BT;",
        "  node [shape=box, style=rounded];",
    ]
    for c in a.classes:
        lines.append(f'  n{c.class_id} [label="{a.label(c.class_id)}"];')
    for i, j in sorted(hasse_covers(a)):
        lines.append(f"  n{i} -> n{j} [dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(a: EffectAlgebra) -> dict:
    """Stable JSON schema: outcomes, classes, oplus triples, order matrix."""
    return {
        "outcomes": list(a.table.outcomes.names),
        "classes": [
            {
                "id": c.class_id,
                "canonical": list(c.canonical),
                "members": [list(m) for m in c.members],
            }
            for c in a.classes
        ],
        "oplus": sorted([i, j, k] for (i, j), k in a.oplus.items()),
        "leq": [[bool(x) for x in row] for row in a.leq],
    }


def to_json(a: EffectAlgebra, indent: Optional[int] = None) -> str:
    return json.dumps(to_json_dict(a), indent=indent, sort_keys=False)
