"""Structural analysis of a finite quotient algebra.

Atoms and isotropic indices, the atomic-test presentation, homogeneity
(decided three independent ways that must agree), sharp elements, and
lattice checks on the whole algebra and on induced subposets such as the
set of sharp elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import errors, joinmeet
from ._core import kernels
from .quotient import ClassLike, EffectAlgebra, _class_id
from .testspace import configured_cap


def isotropic_index(p: ClassLike, a: EffectAlgebra) -> int:
    """Largest n for which the n-fold orthosum of p is defined."""
    pid = _class_id(p)
    if pid == a.zero:
        raise errors.ZeroIsotropy("every multiple of 0 exists")
    return a.isotropic[pid]


def atoms(a: EffectAlgebra) -> tuple[int, ...]:
    """Classes covering zero, i.e. the minimal nonzero classes."""
    out = []
    for p in range(a.n_classes):
        if p == a.zero:
            continue
        below = np.flatnonzero(a.leq[:, p])
        if all(q == p or q == a.zero for q in below):
            out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class AtomicTest:
    """Atom multiplicities whose total orthosum is the unit."""

    atoms: tuple[int, ...]
    counts: tuple[int, ...]

    @property
    def mult(self) -> dict[int, int]:
        return dict(zip(self.atoms, self.counts))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(a for a, c in zip(self.atoms, self.counts) if c)


def atom_axis(a: EffectAlgebra) -> tuple[int, ...]:
    """Atoms ordered by descending canonical representative.

    Unit-vector atom classes then follow the outcome order, so count
    vectors line up with input table rows whenever the input was an
    atomic-test presentation.
    """
    return tuple(
        sorted(atoms(a), key=lambda p: a.classes[p].canonical, reverse=True)
    )


def atomic_tests(a: EffectAlgebra) -> list[AtomicTest]:
    """All atomic tests, by backtracking over partial orthosums.

    Atoms are taken in axis order with each multiplicity bounded by the
    atom's isotropic index; partial sums that become undefined prune the
    branch, and completions are memoized per (position, partial-sum class).
    Results are sorted with the count rows in descending lex order, like
    table rows.
    """
    ats = atom_axis(a)
    iota = {at: a.isotropic[at] for at in ats}
    memo: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}

    def complete(idx: int, cur: int) -> tuple[tuple[int, ...], ...]:
        if idx == len(ats):
            return ((),) if cur == a.unit else ()
        key = (idx, cur)
        if key in memo:
            return memo[key]
        out = []
        acc = cur
        k = 0
        while True:
            for suffix in complete(idx + 1, acc):
                out.append((k,) + suffix)
            if k == iota[ats[idx]]:
                break
            nxt = a.orthosum(acc, ats[idx])
            if nxt is None:
                break
            acc = nxt
            k += 1
        memo[key] = tuple(out)
        return memo[key]

    found = [AtomicTest(ats, counts) for counts in complete(0, a.zero)]
    found.sort(key=lambda t: t.counts, reverse=True)
    return found


def atomic_events(a: EffectAlgebra, tests: Sequence[AtomicTest]) -> list[tuple[int, ...]]:
    """All count vectors lying below some atomic test (zero included)."""
    if not tests:
        return []
    return kernels.downward_closure([t.counts for t in tests], configured_cap())


def orthosum_of_counts(a: EffectAlgebra, ats: Sequence[int], counts: Sequence[int]) -> int:
    """Class of the orthosum of ``counts[i]`` copies of each atom."""
    cur = a.zero
    for at, c in zip(ats, counts):
        for _ in range(c):
            nxt = a.orthosum(cur, at)
            if nxt is None:
                raise errors.AxiomViolation(
                    "orthosum of an atomic event is undefined", (tuple(counts), at)
                )
            cur = nxt
    return cur


@dataclass(frozen=True)
class HomogeneityResult:
    """Answer plus, when inhomogeneous, the witnessing test/atom pair."""

    homogeneous: bool
    witness: Optional[str] = None
    test_index: Optional[int] = None
    atom: Optional[int] = None
    value: Optional[int] = None
    iota: Optional[int] = None

    def __bool__(self) -> bool:
        return self.homogeneous


def _full_multiplicity_check(a, tests, iota):
    """Every atomic test must use each supported atom at its isotropic index."""
    for ti, t in enumerate(tests, start=1):
        for at, c in zip(t.atoms, t.counts):
            if c and c != iota[at]:
                return False, (ti, at, c, iota[at])
    return True, None


def _shared_support_check(tests):
    """Distinct atomic tests must agree wherever their supports overlap."""
    for i, f in enumerate(tests):
        for g in tests[i + 1:]:
            for at, cf, cg in zip(f.atoms, f.counts, g.counts):
                if cf and cg and cf != cg:
                    return False, (at, cf, cg)
    return True, None


def _definitional_check(a: EffectAlgebra):
    """Exhaustive check of the splitting property: u <= u1+u2 <= u' forces
    a decomposition u = v1+v2 with v1 <= u1 and v2 <= u2."""
    decomp: dict[int, list[tuple[int, int]]] = {}
    for (p, q), s in a.oplus.items():
        decomp.setdefault(s, []).append((p, q))
    for (u1, u2), s in a.oplus.items():
        for u in range(a.n_classes):
            if not (a.leq[u, s] and a.leq[s, a.orth[u]]):
                continue
            if not any(
                a.leq[v1, u1] and a.leq[v2, u2] for v1, v2 in decomp.get(u, ())
            ):
                return False, (u, u1, u2)
    return True, None


def is_homogeneous(
    a: EffectAlgebra, check_definitional: Optional[bool] = None
) -> HomogeneityResult:
    """Decide homogeneity from the atomic tests; cross-check the criteria.

    The answer comes from the full-multiplicity criterion (every atomic
    test takes each supported atom's isotropic index).  The shared-support
    criterion always runs as well, and on small algebras (or when forced)
    the definitional splitting property is exhausted too; any disagreement
    raises :class:`errors.CriteriaDisagree` since the criteria are
    equivalent for finite algebras.
    """
    tests = atomic_tests(a)
    iota = {at: a.isotropic[at] for at in atoms(a)}
    e_ok, e_wit = _full_multiplicity_check(a, tests, iota)
    d_ok, _ = _shared_support_check(tests)
    if e_ok != d_ok:
        raise errors.CriteriaDisagree(
            f"full-multiplicity says {e_ok}, shared-support says {d_ok}"
        )
    if check_definitional is None:
        check_definitional = a.n_classes <= 40
    if check_definitional:
        a_ok, _ = _definitional_check(a)
        if a_ok != e_ok:
            raise errors.CriteriaDisagree(
                f"definitional says {a_ok}, atomic-test criteria say {e_ok}"
            )
    if e_ok:
        return HomogeneityResult(True)
    ti, at, c, it = e_wit
    return HomogeneityResult(
        False,
        witness=f"t{ti}({a.label(at)})={c} < iota({a.label(at)})={it}",
        test_index=ti,
        atom=at,
        value=c,
        iota=it,
    )


def sharp_elements(a: EffectAlgebra) -> tuple[int, ...]:
    """Classes p whose meet with their orthosupplement exists and is zero.

    The meet runs through the bound-tuple procedure and is cross-checked
    against the order-matrix oracle.
    """
    out = []
    for p in range(a.n_classes):
        q = a.orth[p]
        ans = joinmeet.meet(a.classes[p].canonical, a.classes[q].canonical, a)
        oracle = joinmeet.oracle_meet(p, q, a)
        if (ans.exists, ans.value) != (oracle.exists, oracle.value):
            raise errors.AxiomViolation(
                "meet procedures disagree on sharpness", (p, q)
            )
        if ans.exists and ans.value == a.zero:
            out.append(p)
    result = tuple(out)
    assert a.zero in result and a.unit in result
    return result


def sharpness_by_support(a: EffectAlgebra) -> tuple[int, ...]:
    """Sharp classes of a homogeneous algebra read off atomic events.

    A class is sharp exactly when its atomic-event representatives take
    each supported atom's isotropic index.  Raises
    :class:`errors.NotHomogeneous` otherwise, since the description is
    only valid under homogeneity.
    """
    if not is_homogeneous(a):
        raise errors.NotHomogeneous("support description of sharpness needs homogeneity")
    tests = atomic_tests(a)
    ats = tests[0].atoms if tests else atom_axis(a)
    iota = {at: a.isotropic[at] for at in ats}
    out = set()
    for w in atomic_events(a, tests):
        if all(c == 0 or c == iota[at] for at, c in zip(ats, w)):
            out.add(orthosum_of_counts(a, ats, w))
    return tuple(sorted(out))


@dataclass(frozen=True)
class LatticeCheck:
    """Whether all pairwise joins and meets exist; first failure if not."""

    is_lattice: bool
    failing_pair: Optional[tuple[int, int]] = None
    failing_op: Optional[str] = None

    def __bool__(self) -> bool:
        return self.is_lattice


def is_lattice(a: EffectAlgebra, subset: Optional[Sequence[int]] = None) -> LatticeCheck:
    """Pairwise joins and meets, by direct bound scan over the order matrix.

    With ``subset`` the check runs on the induced subposet: bounds are
    sought inside the subset only.
    """
    ids = np.arange(a.n_classes) if subset is None else np.array(sorted(subset))
    for ai in range(len(ids)):
        for bi in range(ai, len(ids)):
            p, q = int(ids[ai]), int(ids[bi])
            ub = ids[a.leq[p, ids] & a.leq[q, ids]]
            if not any(a.leq[r, ub].all() for r in ub):
                return LatticeCheck(False, (p, q), "join")
            lb = ids[a.leq[ids, p] & a.leq[ids, q]]
            if not any(a.leq[lb, r].all() for r in lb):
                return LatticeCheck(False, (p, q), "meet")
    return LatticeCheck(True)


def sharp_lattice_inherited(a: EffectAlgebra, sharp: Sequence[int]) -> LatticeCheck:
    """Alternative reading: joins/meets taken in the full algebra must exist
    and land back among the sharp elements."""
    sharp_set = set(sharp)
    for p in sharp:
        for q in sharp:
            if q < p:
                continue
            j = joinmeet.oracle_join(p, q, a)
            if not j.exists or j.value not in sharp_set:
                return LatticeCheck(False, (p, q), "join")
            m = joinmeet.oracle_meet(p, q, a)
            if not m.exists or m.value not in sharp_set:
                return LatticeCheck(False, (p, q), "meet")
    return LatticeCheck(True)


@dataclass(frozen=True)
class StructureReport:
    """Full structural summary of one algebra."""

    atoms: tuple[int, ...]
    iota: dict[int, int]
    sharp: tuple[int, ...]
    homogeneous: HomogeneityResult
    e_lattice: LatticeCheck
    es_lattice: LatticeCheck
    es_lattice_inherited: LatticeCheck
    atomic_tests: tuple[AtomicTest, ...]

    @property
    def failing_pairs(self) -> list[dict]:
        out = []
        for scope, check in (
            ("E", self.e_lattice),
            ("ES", self.es_lattice),
            ("ES_inherited", self.es_lattice_inherited),
        ):
            if not check.is_lattice:
                out.append(
                    {"scope": scope, "pair": list(check.failing_pair), "op": check.failing_op}
                )
        return out


def analyze(a: EffectAlgebra) -> StructureReport:
    """Compute the full structure report."""
    sharp = sharp_elements(a)
    return StructureReport(
        atoms=atoms(a),
        iota=dict(sorted(a.isotropic.items())),
        sharp=sharp,
        homogeneous=is_homogeneous(a),
        e_lattice=is_lattice(a),
        es_lattice=is_lattice(a, subset=sharp),
        es_lattice_inherited=sharp_lattice_inherited(a, sharp),
        atomic_tests=tuple(atomic_tests(a)),
    )


def report_to_json_dict(report: StructureReport, a: EffectAlgebra) -> dict:
    """Stable JSON rendering of a report, with class labels for readability."""
    homog = report.homogeneous
    return {
        "atoms": [{"id": p, "label": a.label(p)} for p in report.atoms],
        "iota": {a.label(p): v for p, v in report.iota.items()},
        "sharp": [{"id": p, "label": a.label(p)} for p in report.sharp],
        "homogeneous": homog.homogeneous,
        "homogeneity_witness": homog.witness,
        "E_lattice": report.e_lattice.is_lattice,
        "ES_lattice": report.es_lattice.is_lattice,
        "ES_lattice_inherited": report.es_lattice_inherited.is_lattice,
        "failing_pairs": report.failing_pairs,
        "atomic_tests": [list(t.counts) for t in report.atomic_tests],
    }
