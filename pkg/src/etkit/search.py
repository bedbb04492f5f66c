"""Bounded exhaustive search over small test tables.

Enumerates every table within the configured bounds once per canonical
class (column permutation + row order), analyzes the algebraic ones, and
filters by structural predicates.  Output is deterministic regardless of
worker count: chunks are keyed by the first table row and the merged
findings are sorted by canonical key.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator, Optional

from . import errors
from .quotient import build_algebra
from .structure import StructureReport, analyze
from .testspace import TestTable, configured_cap, is_algebraic, validate_table, vleq

PREDICATES = frozenset(
    {
        "algebraic",
        "homogeneous",
        "not-homogeneous",
        "E-lattice",
        "not-E-lattice",
        "ES-lattice",
        "not-ES-lattice",
    }
)


@dataclass(frozen=True)
class SearchConfig:
    """Bounds and filters for one search run.

    ``max_outcomes`` is the exact outcome count of the emitted tables
    (axiom 1 rules out unused columns, so smaller outcome sets are their
    own runs); ``max_tests`` and ``max_entry`` are upper bounds; ``budget``
    caps the number of canonical tables enumerated.
    """

    max_outcomes: int
    max_tests: int
    max_entry: int
    predicates: tuple[str, ...] = ()
    budget: Optional[int] = None

    def __post_init__(self):
        if min(self.max_outcomes, self.max_tests, self.max_entry) < 1:
            raise ValueError("all bounds must be >= 1")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be >= 1")
        unknown = set(self.predicates) - PREDICATES
        if unknown:
            raise ValueError(f"unknown predicates {sorted(unknown)}; choose from {sorted(PREDICATES)}")

    @property
    def effective_budget(self) -> int:
        return self.budget if self.budget is not None else configured_cap()


@dataclass(frozen=True)
class Finding:
    """One matching table with its analysis."""

    table: TestTable
    report: StructureReport
    canonical_key: str


def canonicalize(rows) -> tuple[tuple[int, ...], ...]:
    """Lex-least matrix over all column permutations, rows sorted descending."""
    rows = [tuple(r) for r in rows]
    n = len(rows[0])
    best = None
    for perm in permutations(range(n)):
        mat = tuple(sorted((tuple(r[p] for p in perm) for r in rows), reverse=True))
        if best is None or mat < best:
            best = mat
    return best


def canonical_key(rows) -> str:
    return ";".join(",".join(str(c) for c in row) for row in canonicalize(rows))


def _row_universe(n: int, max_entry: int) -> list[tuple[int, ...]]:
    rows = [v for v in product(range(max_entry + 1), repeat=n) if any(v)]
    rows.sort(reverse=True)
    return rows


def _is_valid_rowset(rows, n: int) -> bool:
    for x in range(n):
        if all(r[x] == 0 for r in rows):
            return False
    for s in rows:
        for t in rows:
            if s != t and vleq(s, t):
                return False
    return True


def _chunk_tables(cfg: SearchConfig, first: int) -> Iterator[TestTable]:
    """Canonical tables whose largest row is universe[first]."""
    universe = _row_universe(cfg.max_outcomes, cfg.max_entry)
    head = universe[first]
    tail = universe[first + 1:]
    for k in range(cfg.max_tests):
        for rest in combinations(tail, k):
            rows = (head,) + rest
            if not _is_valid_rowset(rows, cfg.max_outcomes):
                continue
            if canonicalize(rows) != rows:
                continue
            yield validate_table(rows, max_entry=cfg.max_entry)


def enumerate_tables(cfg: SearchConfig) -> Iterator[TestTable]:
    """All canonical tables within bounds, in descending first-row order."""
    count = 0
    budget = cfg.effective_budget
    for first in range(len(_row_universe(cfg.max_outcomes, cfg.max_entry))):
        for table in _chunk_tables(cfg, first):
            count += 1
            if count > budget:
                raise errors.BudgetExceeded(f"more than {budget} canonical tables")
            yield table


def _matches(report: StructureReport, predicates) -> bool:
    for p in predicates:
        ok = {
            "algebraic": True,  # only algebraic tables are analyzed
            "homogeneous": report.homogeneous.homogeneous,
            "not-homogeneous": not report.homogeneous.homogeneous,
            "E-lattice": report.e_lattice.is_lattice,
            "not-E-lattice": not report.e_lattice.is_lattice,
            "ES-lattice": report.es_lattice.is_lattice,
            "not-ES-lattice": not report.es_lattice.is_lattice,
        }[p]
        if not ok:
            return False
    return True


def _analyze_table(table: TestTable, predicates) -> Optional[Finding]:
    if not is_algebraic(table):
        return None
    report = analyze(build_algebra(table))
    if not _matches(report, predicates):
        return None
    return Finding(table, report, canonical_key(table.tests))


def _search_chunk(cfg: SearchConfig, first: int) -> tuple[int, list[Finding]]:
    count = 0
    found = []
    for table in _chunk_tables(cfg, first):
        count += 1
        finding = _analyze_table(table, cfg.predicates)
        if finding is not None:
            found.append(finding)
    return count, found


def run_search(cfg: SearchConfig, workers: int = 1) -> list[Finding]:
    """All canonical algebraic tables within bounds that satisfy every predicate.

    Work is partitioned by first row; the merged result is sorted by
    canonical key, so the outcome is independent of ``workers``.
    """
    firsts = range(len(_row_universe(cfg.max_outcomes, cfg.max_entry)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search_chunk, [cfg] * len(firsts), firsts))
    else:
        chunks = [_search_chunk(cfg, first) for first in firsts]
    total = sum(c for c, _ in chunks)
    if total > cfg.effective_budget:
        raise errors.BudgetExceeded(
            f"{total} canonical tables exceed budget {cfg.effective_budget}"
        )
    findings = [f for _, fs in chunks for f in fs]
    findings.sort(key=lambda f: f.canonical_key)
    return findings
