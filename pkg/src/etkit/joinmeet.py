"""Joins and meets in the quotient algebra via bound-tuple enumeration.

Every quadruple of tests satisfying the upper (lower) inequalities yields a
candidate event whose class is an upper (lower) bound of the two inputs,
and every bound dominates some candidate.  The join therefore exists iff
the candidate class set has a least element, and dually for the meet.  The
per-tuple minimality check and an order-matrix-only oracle are kept as
independent routes; their agreement is a tested property, not an
assumption.

All functions are pure over immutable inputs, so pairwise computations can
run in parallel and merge deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import errors
from ._core import kernels
from .quotient import ClassLike, EffectAlgebra, _class_id
from .testspace import IntVec, VecLike, _require_event, vleq

UPPER = "upper"
LOWER = "lower"


class BoundTuple(NamedTuple):
    """Indices of four tests satisfying the upper or lower inequalities."""

    f1: int
    f2: int
    f3: int
    f4: int
    kind: str

    @property
    def indices(self) -> tuple[int, int, int, int]:
        return (self.f1, self.f2, self.f3, self.f4)


@dataclass(frozen=True)
class LatticeAnswer:
    """Outcome of a join/meet query.

    ``candidates`` holds the class ids considered (bound-tuple candidates,
    or minimal/maximal bounds for the oracle); when ``exists`` the value is
    below (join) or above (meet) every candidate.
    """

    exists: bool
    value: Optional[int]
    witness: Optional[BoundTuple]
    candidates: tuple[int, ...]


def _tuples_and_candidates(f, g, table, upper: bool):
    fv, gv = _require_event(f, table), _require_event(g, table)
    idx, cands = kernels.bound_candidates(fv, gv, table.tests, upper)
    kind = UPPER if upper else LOWER
    return fv, gv, [BoundTuple(*t, kind) for t in idx], cands


def upper_tuples(f: VecLike, g: VecLike, table) -> list[BoundTuple]:
    """All test quadruples satisfying the upper inequalities (never empty)."""
    return _tuples_and_candidates(f, g, table, upper=True)[2]


def lower_tuples(f: VecLike, g: VecLike, table) -> list[BoundTuple]:
    """All test quadruples satisfying the lower inequalities (never empty)."""
    return _tuples_and_candidates(f, g, table, upper=False)[2]


def upper_candidate(f: VecLike, g: VecLike, u: BoundTuple, table) -> IntVec:
    """max(f - f1 + f2, g - f3 + f4, 0) pointwise; an event below test f2."""
    fv, gv = _require_event(f, table), _require_event(g, table)
    t1, t2, t3, t4 = (table.tests[i] for i in u.indices)
    if not (
        vleq(fv, t1)
        and vleq(gv, t3)
        and all(a - b + c <= d for a, b, c, d in zip(fv, t1, t2, t4))
        and all(a - b + c <= d for a, b, c, d in zip(gv, t3, t4, t2))
    ):
        raise ValueError(f"{u} does not satisfy the upper inequalities")
    cand = tuple(
        max(fc - t1c + t2c, gc - t3c + t4c, 0)
        for fc, t1c, t2c, gc, t3c, t4c in zip(fv, t1, t2, gv, t3, t4)
    )
    assert vleq(cand, t2)
    return cand


def lower_candidate(f: VecLike, g: VecLike, u: BoundTuple, table) -> IntVec:
    """min(f - f2 + f1, g - f4 + f3) pointwise; nonnegative and below test f1."""
    fv, gv = _require_event(f, table), _require_event(g, table)
    t1, t2, t3, t4 = (table.tests[i] for i in u.indices)
    if not (
        vleq(fv, t2)
        and vleq(gv, t4)
        and all(a - b + c >= 0 for a, b, c in zip(fv, t2, t1))
        and all(a - b + c >= 0 for a, b, c in zip(gv, t4, t3))
    ):
        raise ValueError(f"{u} does not satisfy the lower inequalities")
    cand = tuple(
        min(fc - t2c + t1c, gc - t4c + t3c)
        for fc, t1c, t2c, gc, t3c, t4c in zip(fv, t1, t2, gv, t3, t4)
    )
    assert all(c >= 0 for c in cand) and vleq(cand, t1)
    return cand


def _classify(cands, a: EffectAlgebra) -> list[int]:
    out = []
    for c in cands:
        cid = a._class_of.get(tuple(c))
        if cid is None:
            raise errors.AxiomViolation("bound candidate is not an event", c)
        out.append(cid)
    return out


def join(f: VecLike, g: VecLike, a: EffectAlgebra) -> LatticeAnswer:
    """Least upper bound of the classes of f and g, if it exists.

    Computes the candidate class set once and takes its least element;
    the witness is the lexicographically first tuple achieving it.
    """
    _, _, tuples, cands = _tuples_and_candidates(f, g, a.table, upper=True)
    cls = _classify(cands, a)
    cand_set = sorted(set(cls))
    least = [c for c in cand_set if all(a.leq[c, d] for d in cand_set)]
    if not least:
        return LatticeAnswer(False, None, None, tuple(cand_set))
    value = least[0]
    witness = tuples[cls.index(value)]
    return LatticeAnswer(True, value, witness, tuple(cand_set))


def meet(f: VecLike, g: VecLike, a: EffectAlgebra) -> LatticeAnswer:
    """Greatest lower bound of the classes of f and g, if it exists."""
    _, _, tuples, cands = _tuples_and_candidates(f, g, a.table, upper=False)
    cls = _classify(cands, a)
    cand_set = sorted(set(cls))
    greatest = [c for c in cand_set if all(a.leq[d, c] for d in cand_set)]
    if not greatest:
        return LatticeAnswer(False, None, None, tuple(cand_set))
    value = greatest[0]
    witness = tuples[cls.index(value)]
    return LatticeAnswer(True, value, witness, tuple(cand_set))


def join_literal(f: VecLike, g: VecLike, a: EffectAlgebra) -> LatticeAnswer:
    """Join by the per-tuple check: a tuple wins iff its candidate's class
    is below every competing tuple's candidate class.

    O(|T|^8) formulation kept as an independent route for property tests;
    must agree with :func:`join` everywhere.
    """
    _, _, tuples, cands = _tuples_and_candidates(f, g, a.table, upper=True)
    cls = np.array(_classify(cands, a), dtype=np.intp)
    pair = a.leq[np.ix_(cls, cls)]
    winners = np.flatnonzero(pair.all(axis=1))
    cand_set = tuple(sorted(set(cls.tolist())))
    if winners.size == 0:
        return LatticeAnswer(False, None, None, cand_set)
    first = int(winners[0])
    return LatticeAnswer(True, int(cls[first]), tuples[first], cand_set)


def meet_literal(f: VecLike, g: VecLike, a: EffectAlgebra) -> LatticeAnswer:
    """Meet by the per-tuple check, dual to :func:`join_literal`."""
    _, _, tuples, cands = _tuples_and_candidates(f, g, a.table, upper=False)
    cls = np.array(_classify(cands, a), dtype=np.intp)
    pair = a.leq[np.ix_(cls, cls)]
    winners = np.flatnonzero(pair.all(axis=0))
    cand_set = tuple(sorted(set(cls.tolist())))
    if winners.size == 0:
        return LatticeAnswer(False, None, None, cand_set)
    first = int(winners[0])
    return LatticeAnswer(True, int(cls[first]), tuples[first], cand_set)


def oracle_join(p: ClassLike, q: ClassLike, a: EffectAlgebra) -> LatticeAnswer:
    """Join by scanning all classes with the order matrix only.

    Ignores the bound-tuple machinery entirely; ``candidates`` holds the
    minimal upper bounds.
    """
    pi, qi = _class_id(p), _class_id(q)
    ub = np.flatnonzero(a.leq[pi, :] & a.leq[qi, :])
    minimal = [int(r) for r in ub if not (a.leq[ub, r] & (ub != r)).any()]
    least = [r for r in ub if a.leq[r, ub].all()]
    if least:
        return LatticeAnswer(True, int(least[0]), None, tuple(minimal))
    return LatticeAnswer(False, None, None, tuple(minimal))


def oracle_meet(p: ClassLike, q: ClassLike, a: EffectAlgebra) -> LatticeAnswer:
    """Meet by scanning all classes; ``candidates`` holds the maximal lower bounds."""
    pi, qi = _class_id(p), _class_id(q)
    lb = np.flatnonzero(a.leq[:, pi] & a.leq[:, qi])
    maximal = [int(r) for r in lb if not (a.leq[r, lb] & (lb != r)).any()]
    greatest = [r for r in lb if a.leq[lb, r].all()]
    if greatest:
        return LatticeAnswer(True, int(greatest[0]), None, tuple(maximal))
    return LatticeAnswer(False, None, None, tuple(maximal))
