import os
import random

import pytest
from hypothesis import given, settings, strategies as st

from posethopf import posets as P
from posethopf.errors import CycleDetected, SizeExceeded

from oracles import brute_enumerate_count

KNOWN_COUNTS = {1: 1, 2: 2, 3: 5, 4: 16, 5: 63, 6: 318, 7: 2045}
KNOWN_CONNECTED = {1: 1, 2: 1, 3: 3, 4: 10, 5: 44, 6: 238, 7: 1650}


def random_labelled(rng, n):
    pairs = set()
    for _ in range(rng.randint(0, 2 * n)):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        pairs.add((min(i, j) + 1, max(i, j) + 1))
    return P.labelled_from_pairs(n, pairs)


class TestTransitiveClosure:
    def test_three_chain(self):
        lp = P.transitive_closure((3, [(0, 1), (1, 2)]))
        assert lp.less(0, 2) and lp.less(0, 1) and lp.less(1, 2)

    def test_cycle_detected(self):
        with pytest.raises(CycleDetected):
            P.transitive_closure((3, [(0, 1), (1, 2), (2, 0)]))

    def test_self_loop(self):
        with pytest.raises(CycleDetected):
            P.transitive_closure((2, [(0, 0)]))

    def test_table_input(self):
        raw = [[False, True], [False, False]]
        assert P.transitive_closure(raw).down == (0, 1)


class TestCanonicalization:
    def test_idempotent_and_invariant(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 6)
            lp = random_labelled(rng, n)
            c, perm = P.canonicalize(lp)
            assert c.rep.is_natural()
            # witness is an order isomorphism
            for a in range(n):
                for b in range(n):
                    assert lp.less(a, b) == c.rep.less(perm[a], perm[b])
            # canonicalizing the canonical representative is the identity
            c2, perm2 = P.canonicalize(c.rep)
            assert c2 is c and perm2 == tuple(range(n))
            # invariance under relabelling
            sigma = list(range(n))
            rng.shuffle(sigma)
            down = [0] * n
            for a in range(n):
                for b in range(n):
                    if lp.less(a, b):
                        down[sigma[b]] |= 1 << sigma[a]
            assert P.canon(P.LabelledPoset(n, down)) is c

    def test_interning(self):
        assert P.chain(3) is P.chain(3)
        assert P.chain(2) == P.chain(2)
        assert P.chain(2) != P.antichain(2)


class TestEnumeration:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_known_counts(self, n):
        assert len(P.enumerate_posets(n)) == KNOWN_COUNTS[n]
        assert len(P.enumerate_posets(n, connected_only=True)) == KNOWN_CONNECTED[n]

    @pytest.mark.parametrize("n", range(1, 5))
    def test_brute_force_oracle(self, n):
        assert len(P.enumerate_posets(n)) == brute_enumerate_count(n)

    def test_all_distinct_and_canonical(self):
        for n in range(1, 6):
            out = P.enumerate_posets(n)
            assert len({p.code for p in out}) == len(out)
            for p in out:
                assert P.canon(p.rep) is p

    def test_out_of_range(self):
        with pytest.raises(SizeExceeded):
            P.enumerate_posets(10)


class TestStructure:
    def test_relations_vs_links(self):
        for n in range(1, 6):
            for p in P.enumerate_posets(n):
                assert p.relation_count() >= p.link_count()

    def test_named_posets(self):
        assert P.chain(3).relation_count() == 3
        assert P.antichain(4).relation_count() == 0
        assert P.corolla(4).link_count() == 3
        assert P.anti_corolla(4).link_count() == 3
        assert P.diamond(4).relation_count() == 5
        assert P.v_poset() is P.corolla(3)
        assert P.lambda_poset() is P.anti_corolla(3)

    def test_forest_detection(self):
        assert P.chain(4).is_forest()
        assert P.corolla(4).is_forest()
        assert not P.anti_corolla(3).is_forest()
        assert not P.diamond(4).is_forest()
        assert P.disjoint_union(P.chain(2), P.corolla(3)).is_forest()

    def test_components(self):
        p = P.disjoint_union(P.chain(2), P.chain(2))
        comps = P.components(p)
        assert comps == ((P.chain(2), 2),)
        assert P.chain(3).is_connected()
        assert not p.is_connected()

    def test_disjoint_union_commutes(self):
        a, b = P.chain(3), P.corolla(3)
        assert P.disjoint_union(a, b) is P.disjoint_union(b, a)

    def test_b_s_grafting(self):
        # grafting above the whole 2-antichain gives the lambda poset
        assert P.b_s(P.antichain(2), {0, 1}) is P.anti_corolla(3)
        # grafting above one element of the point gives the 2-chain
        assert P.b_s(P.POINT, {0}) is P.chain(2)
        # proto-pasts generating the same down-set give the same poset
        c3 = P.chain(3)
        assert P.b_s(c3, {0, 2}) is P.b_s(c3, {1, 2}) is P.chain(4)


class TestIO:
    def test_round_trips(self):
        for n in range(1, 6):
            for p in P.enumerate_posets(n):
                assert P.from_json(P.to_json(p)) is p
                assert P.from_text(P.to_text(p)) is p

    def test_from_json_validates_covers(self):
        with pytest.raises(ValueError):
            P.from_json({"n": 2, "covers": [[1, 3]]})
        with pytest.raises(ValueError):
            # 1<3 is implied, not a cover
            P.from_json({"n": 3, "covers": [[1, 2], [2, 3], [1, 3]]})

    def test_text_form(self):
        assert P.to_text(P.chain(3)) == "3:1<2,2<3"
        assert P.from_text("4:1<2,3<4") is P.disjoint_union(P.chain(2), P.chain(2))


class TestSizeCap:
    def test_hard_cap(self):
        assert P.max_n() <= P.HARD_MAX_N

    def test_env_override_lowers(self, monkeypatch):
        monkeypatch.setenv("POSETHOPF_MAX_N", "4")
        assert P.max_n() == 4
        with pytest.raises(SizeExceeded):
            P.canonicalize(P.LabelledPoset(5, (0,) * 5))

    def test_env_cannot_exceed_hard_cap(self, monkeypatch):
        monkeypatch.setenv("POSETHOPF_MAX_N", "99")
        assert P.max_n() == P.HARD_MAX_N


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.data())
def test_canonical_form_is_minimal_natural(n, data):
    """The canonical down-table is the lexicographic minimum over all natural
    labellings reachable by permutation."""
    from itertools import permutations
    pairs = data.draw(st.sets(
        st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda t: t[0] < t[1]),
        max_size=6))
    lp = P.labelled_from_pairs(n, pairs)
    c = P.canon(lp)
    best = None
    for s in permutations(range(n)):
        down = [0] * n
        ok = True
        for a in range(n):
            for b in range(n):
                if lp.less(a, b):
                    if s[a] > s[b]:
                        ok = False
                        break
                    down[s[b]] |= 1 << s[a]
            if not ok:
                break
        if ok:
            t = tuple(down)
            if best is None or t < best:
                best = t
    assert c.down == best
