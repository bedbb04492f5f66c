import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etkit import errors, quotient
from etkit.quotient import (
    build_algebra,
    hasse_covers,
    orthosupplement,
    residual_equal,
    residual_leq,
    to_dot,
    to_json_dict,
    verify_axioms,
)
from etkit.testspace import approx, enumerate_events, validate_table

from conftest import PAPER_COVERS, chain_table
from oracles import brute_classes


class TestBuild:
    def test_paper_class_count(self, paper_algebra):
        assert paper_algebra.n_classes == 11

    def test_paper_classes_match_bruteforce(self, paper_table, paper_algebra):
        expected = sorted(brute_classes(paper_table.tests))
        got = sorted(sorted(c.members) for c in paper_algebra.classes)
        assert got == [list(map(tuple, c)) for c in expected]

    def test_paper_identifications(self, paper_algebra):
        multi = {c.members for c in paper_algebra.classes if len(c.members) > 1}
        assert multi == {((0, 0, 2), (1, 2, 0)), ((1, 0, 2), (2, 2, 0))}

    def test_zero_and_unit(self, paper_algebra):
        assert paper_algebra.classes[paper_algebra.zero].members == ((0, 0, 0),)
        unit = paper_algebra.classes[paper_algebra.unit]
        assert set(unit.members) >= set(paper_algebra.table.tests)

    def test_canonical_is_lex_least(self, paper_algebra):
        for c in paper_algebra.classes:
            assert c.canonical == min(c.members)

    def test_minimal_is_two_element_boolean(self):
        a = build_algebra(validate_table([[1]]))
        assert a.n_classes == 2
        assert a.orthosum(a.zero, a.unit) == a.unit

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_chain(self, n):
        a = build_algebra(chain_table(n))
        assert a.n_classes == n + 1
        # total order
        for i in range(a.n_classes):
            for j in range(a.n_classes):
                assert a.leq[i, j] == (a.classes[i].canonical <= a.classes[j].canonical)

    def test_not_algebraic_rejected(self):
        with pytest.raises(errors.NotAlgebraic):
            build_algebra(validate_table([[2, 0], [1, 1]]))

    def test_oplus_example(self, paper_algebra, labels_of):
        a = paper_algebra
        assert a.orthosum(labels_of["a"], labels_of["2c"]) == a.unit
        assert a.orthosum(labels_of["c"], labels_of["c"]) == labels_of["2c"]
        assert a.orthosum(labels_of["2c"], labels_of["c"]) is None

    def test_axioms_verified(self, paper_algebra, boolean_algebra):
        verify_axioms(paper_algebra)
        verify_axioms(boolean_algebra)
        verify_axioms(build_algebra(chain_table(4)))


class TestResidualDecisions:
    def test_equal_examples(self, paper_table):
        assert residual_equal((1, 2, 0), (0, 0, 2), paper_table)
        assert not residual_equal((1, 0, 0), (0, 1, 0), paper_table)

    def test_equal_reflexive(self, paper_table):
        for e in enumerate_events(paper_table):
            assert residual_equal(e, e, paper_table)

    def test_equal_matches_approx(self, paper_table):
        events = [e.vec for e in enumerate_events(paper_table)]
        for f in events:
            for g in events:
                assert residual_equal(f, g, paper_table) == approx(
                    f, g, paper_table, events=events
                )

    def test_leq_examples(self, paper_table):
        assert residual_leq((1, 0, 0), (1, 2, 0), paper_table)
        assert not residual_leq((1, 0, 0), (0, 2, 0), paper_table)

    def test_leq_bottom(self, paper_table):
        for g in enumerate_events(paper_table):
            assert residual_leq((0, 0, 0), g, paper_table)

    def test_leq_matches_completion_order(self, paper_table, paper_algebra):
        a = paper_algebra
        events = [e.vec for e in enumerate_events(paper_table)]
        for f in events:
            for g in events:
                by_sum = any(
                    a.orthosum(a.class_of(f), r) == a.class_of(g)
                    for r in range(a.n_classes)
                )
                assert residual_leq(f, g, paper_table) == by_sum

    def test_pointwise_implies_class_order(self, paper_table):
        events = [e.vec for e in enumerate_events(paper_table)]
        for f in events:
            for g in events:
                if all(x <= y for x, y in zip(f, g)):
                    assert residual_leq(f, g, paper_table)


class TestOrthosupplement:
    def test_paper_example(self, paper_algebra, labels_of):
        assert orthosupplement(labels_of["a"], paper_algebra).class_id == labels_of["2c"]

    def test_zero_unit(self, paper_algebra):
        assert orthosupplement(paper_algebra.zero, paper_algebra).class_id == paper_algebra.unit

    def test_involution(self, paper_algebra):
        a = paper_algebra
        for c in a.classes:
            assert orthosupplement(orthosupplement(c, a), a).class_id == c.class_id

    def test_matches_test_difference(self, paper_table, paper_algebra):
        a = paper_algebra
        for e in enumerate_events(paper_table):
            t = paper_table.tests[e.witness]
            rest = tuple(x - y for x, y in zip(t, e.vec))
            assert a.class_of(rest) == a.orth[a.class_of(e.vec)]


class TestHasse:
    def test_paper_diagram(self, paper_algebra):
        a = paper_algebra
        got = {(a.label(i), a.label(j)) for i, j in hasse_covers(a)}
        assert got == PAPER_COVERS

    def test_chain_edges(self):
        assert len(hasse_covers(build_algebra(chain_table(3)))) == 3

    def test_boolean_diamond(self, boolean_algebra):
        assert len(hasse_covers(boolean_algebra)) == 4

    def test_dot_output(self, paper_algebra):
        dot = to_dot(paper_algebra)
        assert dot.startswith("digraph hasse {")
        assert dot.count("->") == 17
        assert 'label="a⊕b"' in dot
        assert to_dot(paper_algebra) == dot  # deterministic


class TestJsonExport:
    def test_schema(self, paper_algebra):
        d = to_json_dict(paper_algebra)
        assert set(d) == {"outcomes", "classes", "oplus", "leq"}
        assert d["outcomes"] == ["a", "b", "c"]
        assert len(d["classes"]) == 11
        assert all(set(c) == {"id", "canonical", "members"} for c in d["classes"])
        assert all(len(t) == 3 for t in d["oplus"])
        assert len(d["leq"]) == 11 and all(len(r) == 11 for r in d["leq"])

    def test_byte_deterministic(self, paper_table):
        a1 = build_algebra(paper_table)
        a2 = build_algebra(paper_table)
        assert json.dumps(to_json_dict(a1)) == json.dumps(to_json_dict(a2))


@st.composite
def algebraic_tables(draw):
    from etkit.testspace import is_algebraic

    n = draw(st.integers(1, 3))
    k = draw(st.integers(1, 2))
    rows = draw(
        st.lists(
            st.lists(st.integers(0, 2), min_size=n, max_size=n),
            min_size=k,
            max_size=k,
        )
    )
    try:
        table = validate_table(rows)
    except errors.TableError:
        return None
    return table if is_algebraic(table) else None


class TestProperties:
    @given(algebraic_tables())
    @settings(max_examples=40, deadline=None)
    def test_build_passes_axioms_and_matches_bruteforce(self, table):
        if table is None:
            return
        a = build_algebra(table)  # check=True runs verify_axioms
        expected = sorted(brute_classes(table.tests))
        got = sorted(sorted(c.members) for c in a.classes)
        assert got == [list(map(tuple, c)) for c in expected]

    @given(algebraic_tables())
    @settings(max_examples=40, deadline=None)
    def test_residual_equal_iff_approx(self, table):
        if table is None:
            return
        events = [e.vec for e in enumerate_events(table)]
        for f in events:
            for g in events:
                assert residual_equal(f, g, table) == approx(f, g, table, events=events)
