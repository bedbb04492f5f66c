"""Finite integer test tables and their event structure.

A test table is a finite antichain of nonnegative integer vectors over a
fixed outcome set, with every outcome used by some test.  Events are the
vectors lying below some test.  This module validates tables, enumerates
events, decides the orthogonality / local-complement / perspectivity
relations, and decides algebraicity (the property that makes the quotient
construction in :mod:`etkit.quotient` well defined).

Everything here is immutable after construction and safe to share across
threads or processes.
"""

from __future__ import annotations

import os
import string
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from . import errors
from ._core import kernels

IntVec = tuple[int, ...]

DEFAULT_ENTRY_BOUND = 10**6
DEFAULT_EVENT_CAP = 10**6


def configured_cap(default: int = DEFAULT_EVENT_CAP) -> int:
    """Enumeration cap, overridable through the ETKIT_BUDGET env var."""
    raw = os.environ.get("ETKIT_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise errors.MalformedTable(f"ETKIT_BUDGET is not an integer: {raw!r}")
    return default


# -- exact vector arithmetic (signed, no clamping unless stated) --------

def vadd(u: IntVec, v: IntVec) -> IntVec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: IntVec, v: IntVec) -> IntVec:
    return tuple(a - b for a, b in zip(u, v))


def vleq(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def zero_vec(n: int) -> IntVec:
    return (0,) * n


def default_names(n: int) -> tuple[str, ...]:
    if n <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"x{i}" for i in range(n))


@dataclass(frozen=True)
class OutcomeSet:
    """Ordered outcome labels; the order fixes all lexicographic conventions."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise errors.MalformedTable("outcome set is empty")
        if len(set(self.names)) != len(self.names):
            raise errors.MalformedTable(f"duplicate outcome names in {self.names}")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)


@dataclass(frozen=True)
class TestTable:
    """A validated test table: rows are tests, stored in descending lex order."""

    outcomes: OutcomeSet
    tests: tuple[IntVec, ...]

    @property
    def n_outcomes(self) -> int:
        return len(self.outcomes)

    @property
    def n_tests(self) -> int:
        return len(self.tests)

    @cached_property
    def test_set(self) -> frozenset[IntVec]:
        return frozenset(self.tests)

    def dominating(self, vec: Sequence[int]) -> Optional[int]:
        """Index of the first test above ``vec``, or None."""
        if any(c < 0 for c in vec):
            return None
        for i, t in enumerate(self.tests):
            if vleq(vec, t):
                return i
        return None

    def is_event(self, vec: Sequence[int]) -> bool:
        return self.dominating(vec) is not None

    def rows(self) -> list[list[int]]:
        return [list(t) for t in self.tests]


@dataclass(frozen=True)
class Event:
    """A nonnegative vector below some test, with one witnessing test index."""

    vec: IntVec
    witness: int


VecLike = Union[Event, Sequence[int]]


def as_vec(f: VecLike) -> IntVec:
    return f.vec if isinstance(f, Event) else tuple(f)


def _require_event(f: VecLike, table: TestTable) -> IntVec:
    v = as_vec(f)
    if len(v) != table.n_outcomes:
        raise errors.NotAnEvent(f"{v} has {len(v)} coordinates, table has {table.n_outcomes}")
    if not table.is_event(v):
        raise errors.NotAnEvent(f"{v} is not below any test")
    return v


def validate_table(
    raw: Iterable[Sequence[int]],
    names: Optional[Sequence[str]] = None,
    max_entry: Optional[int] = None,
) -> TestTable:
    """Check the two test-space axioms and return the canonical table.

    Duplicate rows collapse to one; rows are sorted in descending
    lexicographic order.  Raises a :class:`errors.TableError` subclass on
    any violation.
    """
    bound = DEFAULT_ENTRY_BOUND if max_entry is None else max_entry
    rows = [tuple(row) for row in raw]
    if not rows:
        raise errors.EmptyTable("no tests given")
    n = len(rows[0])
    if n == 0:
        raise errors.EmptyTable("tests have no outcomes")
    for row in rows:
        if len(row) != n:
            raise errors.MalformedTable(f"ragged row {row}: expected {n} entries")
        for c in row:
            if not isinstance(c, int) or isinstance(c, bool):
                raise errors.MalformedTable(f"non-integer entry {c!r} in row {row}")
            if c < 0:
                raise errors.NegativeEntry(f"negative entry {c} in row {row}")
            if c > bound:
                raise errors.EntryTooLarge(f"entry {c} exceeds bound {bound}")
    tests = sorted(set(rows), reverse=True)
    if names is None:
        names = default_names(n)
    outcomes = OutcomeSet(tuple(names))
    if len(outcomes) != n:
        raise errors.MalformedTable(
            f"{len(outcomes)} outcome names for {n}-column table"
        )
    for s in tests:
        for t in tests:
            if s != t and vleq(s, t):
                raise errors.AntichainViolation(s, t)
    for x in range(n):
        if all(t[x] == 0 for t in tests):
            raise errors.ZeroColumn(outcomes.names[x])
    return TestTable(outcomes, tuple(tests))


# -- .eta file format ----------------------------------------------------

def read_eta(text: str) -> TestTable:
    """Parse the .eta text format.

    Lines starting with ``#`` are comments; an optional leading
    ``# outcomes: a b c`` line names the outcomes.  Data lines are
    whitespace-separated nonnegative integers, one test per line.
    """
    names: Optional[tuple[str, ...]] = None
    rows: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            body = s[1:].strip()
            if body.lower().startswith("outcomes:") and names is None and not rows:
                names = tuple(body[len("outcomes:"):].split())
            continue
        try:
            rows.append([int(tok) for tok in s.split()])
        except ValueError:
            raise errors.MalformedTable(f"line {lineno}: non-integer entry in {s!r}")
    return validate_table(rows, names=names)


def write_eta(table: TestTable) -> str:
    """Render a table in canonical .eta form (sorted row order, named header)."""
    lines = ["# outcomes: " + " ".join(table.outcomes)]
    lines.extend(" ".join(str(c) for c in t) for t in table.tests)
    return "\n".join(lines) + "\n"


def load_eta(path) -> TestTable:
    with open(path, "r", encoding="utf-8") as fh:
        return read_eta(fh.read())


def save_eta(table: TestTable, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_eta(table))


# -- events and relations ------------------------------------------------

def event_vecs(table: TestTable, cap: Optional[int] = None) -> list[IntVec]:
    """All event vectors in lexicographic order (the zero vector first)."""
    limit = configured_cap() if cap is None else cap
    try:
        return kernels.downward_closure(table.tests, limit)
    except OverflowError:
        raise errors.EventBudgetExceeded(f"more than {limit} events")


def enumerate_events(table: TestTable, cap: Optional[int] = None) -> list[Event]:
    """All events with their first dominating test, in lexicographic order."""
    return [Event(v, table.dominating(v)) for v in event_vecs(table, cap)]


def is_orthogonal(f: VecLike, g: VecLike, table: TestTable) -> bool:
    """True iff f + g is again an event."""
    fv, gv = _require_event(f, table), _require_event(g, table)
    return table.is_event(vadd(fv, gv))


def is_local_complement(f: VecLike, g: VecLike, table: TestTable) -> bool:
    """True iff f + g is a test."""
    fv, gv = _require_event(f, table), _require_event(g, table)
    return vadd(fv, gv) in table.test_set


def approx_via(f: VecLike, g: VecLike, h: VecLike, table: TestTable) -> bool:
    """True iff h completes both f and g to tests."""
    fv, gv, hv = (_require_event(x, table) for x in (f, g, h))
    return vadd(fv, hv) in table.test_set and vadd(gv, hv) in table.test_set


def approx(
    f: VecLike,
    g: VecLike,
    table: TestTable,
    events: Optional[Sequence[VecLike]] = None,
    cap: Optional[int] = None,
) -> bool:
    """Perspectivity: some event completes both f and g to tests.

    The witness scan ranges over all enumerated events, as the definition
    quantifies over all of them; pass ``events`` to reuse an enumeration.
    """
    fv, gv = _require_event(f, table), _require_event(g, table)
    hs = event_vecs(table, cap) if events is None else [as_vec(h) for h in events]
    ts = table.test_set
    return any(vadd(fv, h) in ts and vadd(gv, h) in ts for h in hs)


class Counterexample(NamedTuple):
    """A triple breaking algebraicity: f ~ g, h+f is an event, h+g is not."""

    f: IntVec
    g: IntVec
    h: IntVec


def algebraic_counterexample(
    table: TestTable, cap: Optional[int] = None
) -> Optional[Counterexample]:
    """A violating triple if the table is not algebraic, else None."""
    vecs = event_vecs(table, cap)
    hit = kernels.algebraic_witness(vecs, table.tests)
    if hit is None:
        return None
    i, j, k = hit
    return Counterexample(vecs[i], vecs[j], vecs[k])


def is_algebraic(table: TestTable, cap: Optional[int] = None) -> bool:
    """True iff perspective events are orthogonal to the same events."""
    return algebraic_counterexample(table, cap) is None
