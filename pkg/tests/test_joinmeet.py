import pytest

from etkit.joinmeet import (
    BoundTuple,
    join,
    join_literal,
    lower_candidate,
    lower_tuples,
    meet,
    meet_literal,
    oracle_join,
    oracle_meet,
    upper_candidate,
    upper_tuples,
)
from etkit.quotient import build_algebra
from etkit.testspace import validate_table

from conftest import chain_table
from oracles import poset_join, poset_meet, vleq


def brute_upper_tuples(f, g, tests):
    """Direct scan of all test quadruples against the four inequalities."""
    n = len(f)
    out = []
    for i1, t1 in enumerate(tests):
        for i2, t2 in enumerate(tests):
            for i3, t3 in enumerate(tests):
                for i4, t4 in enumerate(tests):
                    if (
                        vleq(f, t1)
                        and vleq(g, t3)
                        and all(f[x] - t1[x] + t2[x] <= t4[x] for x in range(n))
                        and all(g[x] - t3[x] + t4[x] <= t2[x] for x in range(n))
                    ):
                        out.append((i1, i2, i3, i4))
    return out


def brute_lower_tuples(f, g, tests):
    n = len(f)
    out = []
    for i1, t1 in enumerate(tests):
        for i2, t2 in enumerate(tests):
            for i3, t3 in enumerate(tests):
                for i4, t4 in enumerate(tests):
                    if (
                        vleq(f, t2)
                        and vleq(g, t4)
                        and all(f[x] - t2[x] + t1[x] >= 0 for x in range(n))
                        and all(g[x] - t4[x] + t3[x] >= 0 for x in range(n))
                    ):
                        out.append((i1, i2, i3, i4))
    return out


class TestUpperTuples:
    def test_nonempty_with_standard_tuple(self, paper_table):
        # with f <= t1 and g <= t2 the quadruple (t1, t1, t2, t1) qualifies
        got = {u.indices for u in upper_tuples((1, 0, 0), (0, 0, 1), paper_table)}
        assert (0, 0, 1, 0) in got

    def test_zero_zero_matches_direct_scan(self, paper_table):
        z = (0, 0, 0)
        got = [u.indices for u in upper_tuples(z, z, paper_table)]
        assert got == brute_upper_tuples(z, z, paper_table.tests)
        assert got  # never empty

    def test_single_test_table(self):
        table = chain_table(2)
        assert [u.indices for u in upper_tuples((1,), (1,), table)] == [(0, 0, 0, 0)]

    def test_matches_direct_scan_everywhere(self, paper_table):
        from etkit.testspace import enumerate_events

        events = [e.vec for e in enumerate_events(paper_table)]
        for f in events[::2]:
            for g in events[::3]:
                got = [u.indices for u in upper_tuples(f, g, paper_table)]
                assert got == brute_upper_tuples(f, g, paper_table.tests)


class TestUpperCandidate:
    def test_paper_example(self, paper_table):
        u = BoundTuple(0, 0, 1, 0, "upper")
        cand = upper_candidate((1, 0, 0), (0, 0, 1), u, paper_table)
        assert cand == (1, 2, 0)

    def test_join_with_self(self, paper_table):
        f = (1, 1, 0)
        u = BoundTuple(0, 0, 0, 0, "upper")
        assert upper_candidate(f, f, u, paper_table) == f

    def test_zero_zero(self, paper_table):
        z = (0, 0, 0)
        u = BoundTuple(0, 0, 0, 0, "upper")
        assert upper_candidate(z, z, u, paper_table) == z

    def test_invalid_tuple_rejected(self, paper_table):
        with pytest.raises(ValueError):
            upper_candidate((0, 0, 2), (0, 0, 1), BoundTuple(0, 0, 0, 0, "upper"), paper_table)


class TestLowerTuples:
    def test_nonempty_with_standard_tuple(self, paper_table):
        got = {u.indices for u in lower_tuples((1, 0, 0), (0, 0, 1), paper_table)}
        assert (0, 0, 1, 1) in got

    def test_single_test_table(self):
        table = chain_table(2)
        assert [u.indices for u in lower_tuples((2,), (2,), table)] == [(0, 0, 0, 0)]

    def test_zero_forces_equal_first_pair(self, paper_table):
        # plugging f = 0 into f - f2 + f1 >= 0 forces f1 >= f2, an antichain equality
        z = (0, 0, 0)
        for g in [(0, 0, 0), (1, 0, 0), (2, 2, 0)]:
            got = [u.indices for u in lower_tuples(z, g, paper_table)]
            assert got == brute_lower_tuples(z, g, paper_table.tests)
            assert all(u[0] == u[1] for u in got)

    def test_matches_direct_scan_everywhere(self, paper_table):
        from etkit.testspace import enumerate_events

        events = [e.vec for e in enumerate_events(paper_table)]
        for f in events[::2]:
            for g in events[::3]:
                got = [u.indices for u in lower_tuples(f, g, paper_table)]
                assert got == brute_lower_tuples(f, g, paper_table.tests)


class TestLowerCandidate:
    def test_meet_with_self(self, paper_table):
        f = (1, 1, 0)
        u = BoundTuple(0, 0, 0, 0, "lower")
        assert lower_candidate(f, f, u, paper_table) == f

    def test_paper_example(self, paper_table):
        u = BoundTuple(0, 0, 1, 1, "lower")
        assert lower_candidate((1, 0, 0), (0, 0, 1), u, paper_table) == (0, 0, 0)

    def test_unit_pair(self, paper_table, paper_algebra):
        # both inputs are tests: every candidate class is the unit
        a = paper_algebra
        cands = meet((2, 2, 0), (1, 0, 2), a)
        assert cands.exists and cands.value == a.unit


class TestJoin:
    def test_paper_a_c_has_no_join(self, paper_algebra, labels_of):
        ans = join((1, 0, 0), (0, 0, 1), paper_algebra)
        assert not ans.exists
        assert set(ans.candidates) == {labels_of["a⊕c"], labels_of["2c"], labels_of["1"]}

    def test_a_b(self, paper_algebra, labels_of):
        ans = join((1, 0, 0), (0, 1, 0), paper_algebra)
        assert ans.exists and ans.value == labels_of["a⊕b"]

    def test_join_with_zero(self, paper_algebra):
        a = paper_algebra
        for c in a.classes:
            ans = join(c.canonical, (0, 0, 0), a)
            assert ans.exists and ans.value == c.class_id

    def test_witness_achieves_value(self, paper_algebra):
        a = paper_algebra
        for c in a.classes:
            for d in a.classes:
                ans = join(c.canonical, d.canonical, a)
                if ans.exists:
                    cand = upper_candidate(c.canonical, d.canonical, ans.witness, a.table)
                    assert a.class_of(cand) == ans.value


class TestMeet:
    def test_a_2c(self, paper_algebra, labels_of):
        ans = meet((1, 0, 0), (0, 0, 2), paper_algebra)
        assert ans.exists and ans.value == labels_of["a"]

    def test_a_b_is_zero(self, paper_algebra):
        ans = meet((1, 0, 0), (0, 1, 0), paper_algebra)
        assert ans.exists and ans.value == paper_algebra.zero

    def test_meet_with_unit(self, paper_algebra):
        a = paper_algebra
        for c in a.classes:
            ans = meet(c.canonical, (2, 2, 0), a)
            assert ans.exists and ans.value == c.class_id


class TestOracles:
    def test_oracle_join_a_c(self, paper_algebra, labels_of):
        ans = oracle_join(labels_of["a"], labels_of["c"], paper_algebra)
        assert not ans.exists
        assert set(ans.candidates) == {labels_of["a⊕c"], labels_of["2c"]}

    def test_oracle_meet_2a_2b(self, paper_algebra, labels_of):
        ans = oracle_meet(labels_of["2a"], labels_of["2b"], paper_algebra)
        assert ans.exists and ans.value == paper_algebra.zero

    def test_oracle_join_idempotent(self, paper_algebra):
        for c in paper_algebra.classes:
            ans = oracle_join(c, c, paper_algebra)
            assert ans.exists and ans.value == c.class_id

    def test_oracle_matches_poset_scan(self, paper_algebra):
        a = paper_algebra
        ids = range(a.n_classes)
        leq = [[bool(a.leq[i, j]) for j in ids] for i in ids]
        for p in ids:
            for q in ids:
                assert oracle_join(p, q, a).value == poset_join(p, q, leq, ids)
                assert oracle_meet(p, q, a).value == poset_meet(p, q, leq, ids)


class TestAgreementOnPaperTable:
    def test_three_routes_agree(self, paper_algebra):
        a = paper_algebra
        for c in a.classes:
            for d in a.classes:
                f, g = c.canonical, d.canonical
                j1, j2 = join(f, g, a), join_literal(f, g, a)
                oj = oracle_join(c.class_id, d.class_id, a)
                assert (j1.exists, j1.value) == (j2.exists, j2.value) == (oj.exists, oj.value)
                m1, m2 = meet(f, g, a), meet_literal(f, g, a)
                om = oracle_meet(c.class_id, d.class_id, a)
                assert (m1.exists, m1.value) == (m2.exists, m2.value) == (om.exists, om.value)

    def test_commutative_and_idempotent(self, paper_algebra):
        a = paper_algebra
        for c in a.classes:
            ans = join(c.canonical, c.canonical, a)
            assert ans.exists and ans.value == c.class_id
            ans = meet(c.canonical, c.canonical, a)
            assert ans.exists and ans.value == c.class_id
            for d in a.classes:
                j1 = join(c.canonical, d.canonical, a)
                j2 = join(d.canonical, c.canonical, a)
                assert (j1.exists, j1.value) == (j2.exists, j2.value)

    def test_independent_of_representatives(self, paper_algebra):
        a = paper_algebra
        for c in a.classes:
            for d in a.classes:
                base = join(c.canonical, d.canonical, a)
                for f in c.members:
                    for g in d.members:
                        ans = join(f, g, a)
                        assert (ans.exists, ans.value) == (base.exists, base.value)

    def test_de_morgan(self, paper_algebra):
        a = paper_algebra
        for c in a.classes:
            for d in a.classes:
                m = meet(c.canonical, d.canonical, a)
                j = join(
                    a.classes[a.orth[c.class_id]].canonical,
                    a.classes[a.orth[d.class_id]].canonical,
                    a,
                )
                assert m.exists == j.exists
                if m.exists:
                    assert m.value == a.orth[j.value]

    def test_candidate_soundness_and_completeness(self, paper_algebra):
        a = paper_algebra
        for c in a.classes:
            for d in a.classes:
                ans = join(c.canonical, d.canonical, a)
                for cand in ans.candidates:
                    assert a.leq[c.class_id, cand] and a.leq[d.class_id, cand]
                for h in range(a.n_classes):
                    if a.leq[c.class_id, h] and a.leq[d.class_id, h]:
                        assert any(a.leq[cand, h] for cand in ans.candidates)


class TestLiteralOnChains:
    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_chain_join_meet_are_max_min(self, n):
        a = build_algebra(chain_table(n))
        for c in a.classes:
            for d in a.classes:
                ans = join(c.canonical, d.canonical, a)
                assert ans.exists
                assert a.classes[ans.value].canonical == max(c.canonical, d.canonical)
                ans = meet(c.canonical, d.canonical, a)
                assert ans.exists
                assert a.classes[ans.value].canonical == min(c.canonical, d.canonical)
