"""Compiled and pure kernels must agree bit for bit."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etkit import _kernels_py
from etkit import errors
from etkit.testspace import validate_table

compiled = pytest.importorskip("etkit._kernels")


@st.composite
def tables(draw):
    n = draw(st.integers(1, 4))
    k = draw(st.integers(1, 3))
    rows = draw(
        st.lists(
            st.lists(st.integers(0, 3), min_size=n, max_size=n),
            min_size=k,
            max_size=k,
        )
    )
    try:
        return validate_table(rows)
    except errors.TableError:
        return None


@given(tables())
@settings(max_examples=80, deadline=None)
def test_downward_closure(table):
    if table is None:
        return
    assert compiled.downward_closure(table.tests, 10**6) == _kernels_py.downward_closure(
        table.tests, 10**6
    )


@given(tables(), st.integers(1, 20))
@settings(max_examples=40, deadline=None)
def test_downward_closure_cap(table, cap):
    if table is None:
        return
    try:
        a = compiled.downward_closure(table.tests, cap)
    except OverflowError:
        a = "overflow"
    try:
        b = _kernels_py.downward_closure(table.tests, cap)
    except OverflowError:
        b = "overflow"
    assert a == b


@given(tables())
@settings(max_examples=80, deadline=None)
def test_class_labels_and_cliques(table):
    if table is None:
        return
    events = _kernels_py.downward_closure(table.tests, 10**6)
    labels_c = compiled.class_labels(events, table.tests)
    labels_p = _kernels_py.class_labels(events, table.tests)
    assert labels_c == labels_p
    assert compiled.clique_violation(
        events, table.tests, labels_c
    ) == _kernels_py.clique_violation(events, table.tests, labels_p)


@given(tables())
@settings(max_examples=80, deadline=None)
def test_algebraic_witness(table):
    if table is None:
        return
    events = _kernels_py.downward_closure(table.tests, 10**6)
    assert compiled.algebraic_witness(events, table.tests) == _kernels_py.algebraic_witness(
        events, table.tests
    )


@given(tables())
@settings(max_examples=60, deadline=None)
def test_leq_matrix(table):
    if table is None:
        return
    events = _kernels_py.downward_closure(table.tests, 10**6)
    got = compiled.leq_matrix(events, table.tests)
    want = _kernels_py.leq_matrix(events, table.tests)
    assert got.dtype == want.dtype == np.dtype(bool)
    assert np.array_equal(got, want)


@given(tables(), st.booleans())
@settings(max_examples=80, deadline=None)
def test_bound_candidates(table, upper):
    if table is None:
        return
    events = _kernels_py.downward_closure(table.tests, 10**6)
    for f in events[:: max(1, len(events) // 5)]:
        for g in events[:: max(1, len(events) // 5)]:
            assert compiled.bound_candidates(
                f, g, table.tests, upper
            ) == _kernels_py.bound_candidates(f, g, table.tests, upper)
