import pytest

from posethopf import hopf as H, posets as P
from posethopf.algebra import Scalar, ONE
from posethopf.errors import SizeExceeded


class TestPosetVector:
    def test_linear_structure(self):
        v = H.PosetVector.basis(P.chain(2), 2) + H.PosetVector.basis(P.antichain(2))
        w = v - H.PosetVector.basis(P.chain(2))
        assert w.coeff(P.chain(2)) == ONE
        assert w.coeff(P.antichain(2)) == ONE
        assert not (v - v)

    def test_product_is_disjoint_union(self):
        v = H.PosetVector.basis(P.POINT)
        assert (v * v).coeff(P.antichain(2)) == ONE
        u = H.PosetVector.basis(P.chain(2), Scalar.var("t0"))
        prod = u * u
        assert prod.coeff(P.disjoint_union(P.chain(2), P.chain(2))) == \
            Scalar.var("t0") ** 2

    def test_unit(self):
        v = H.PosetVector.basis(P.chain(3), 5)
        assert H.PosetVector.unit() * v == v


class TestCoproduct:
    def test_point(self):
        d = H.coproduct(P.POINT)
        assert d.coeff(P.POINT, P.EMPTY) == ONE
        assert d.coeff(P.EMPTY, P.POINT) == ONE
        assert len(d.terms) == 2

    def test_two_chain_disjoint_two_chain(self):
        """The displayed expansion with multiplicities (1,2,2,1,2,1)."""
        p = P.disjoint_union(P.chain(2), P.chain(2))
        d = H.coproduct(p)
        c2, a2, pt = P.chain(2), P.antichain(2), P.POINT
        c2_pt = P.disjoint_union(c2, pt)
        assert d.coeff(P.EMPTY, p) == ONE
        assert d.coeff(pt, c2_pt) == 2
        assert d.coeff(c2, c2) == 2
        assert d.coeff(a2, a2) == ONE
        assert d.coeff(c2_pt, pt) == 2
        assert d.coeff(p, P.EMPTY) == ONE
        assert len(d.terms) == 6
        total = sum(d.terms.values(), Scalar())
        assert total == Scalar.const(9)  # 3 x 3 down-sets

    def test_number_of_cuts(self):
        for n in range(1, 6):
            for p in P.enumerate_posets(n):
                d = H.coproduct(p)
                total = sum(d.terms.values(), Scalar())
                assert total == Scalar.const(len(p.rep.down_set_masks()))

    def test_grading(self):
        for p in P.enumerate_posets(4):
            for (a, b) in H.coproduct(p).terms:
                assert a.n + b.n == 4

    def test_up_set_on_left(self):
        d = H.coproduct(P.chain(2))
        # cutting the 2-chain in the middle leaves the top element on the left
        assert d.coeff(P.POINT, P.POINT) == ONE
        d3 = H.coproduct(P.anti_corolla(3))
        # the one-element up-sets of the lambda poset are its maximal element
        assert d3.coeff(P.POINT, P.antichain(2)) == ONE
        assert d3.coeff(P.chain(2), P.POINT) == 2


class TestAxioms:
    @pytest.mark.parametrize("n", range(0, 6))
    def test_coassociativity(self, n):
        for p in (P.enumerate_posets(n) if n else [P.EMPTY]):
            assert H.check_coassociativity(p)

    @pytest.mark.parametrize("n", range(0, 6))
    def test_counit(self, n):
        for p in (P.enumerate_posets(n) if n else [P.EMPTY]):
            assert H.check_counit(p)

    def test_multiplicativity(self):
        pairs = [(P.POINT, P.POINT), (P.chain(2), P.antichain(2)),
                 (P.chain(2), P.corolla(3)), (P.chain(3), P.chain(2))]
        for a, b in pairs:
            assert H.check_multiplicativity(a, b)

    @pytest.mark.parametrize("n", range(0, 5))
    def test_antipode_convolution(self, n):
        for p in (P.enumerate_posets(n) if n else [P.EMPTY]):
            assert H.check_antipode(p)


class TestAntipode:
    def test_small_values(self):
        assert H.antipode(P.EMPTY) == H.PosetVector.unit()
        assert H.antipode(P.POINT) == H.PosetVector.basis(P.POINT, -1)
        s = H.antipode(P.chain(2))
        assert s.coeff(P.chain(2)) == Scalar.const(-1)
        assert s.coeff(P.antichain(2)) == ONE

    def test_antipode_is_graded(self):
        for p in P.enumerate_posets(3):
            for q in H.antipode(p).terms:
                assert q.n == 3

    def test_size_cap(self):
        with pytest.raises(SizeExceeded):
            H.antipode(P.chain(7))

    def test_involutive_on_cocommutative_elements(self):
        # S(S(P)) = P holds in any commutative Hopf algebra
        for n in range(1, 5):
            for p in P.enumerate_posets(n):
                assert H.antipode_vector(H.antipode(p)) == H.PosetVector.basis(p)


class TestReducedCoproduct:
    def test_removes_trivial_cuts(self):
        p = P.chain(3)
        red = H.reduced_coproduct(p)
        assert all(a is not P.EMPTY and b is not P.EMPTY for (a, b) in red.terms)
        full = H.coproduct(p)
        assert len(full.terms) == len(red.terms) + 2

    def test_counit_extraction(self):
        v = H.PosetVector.basis(P.EMPTY, 3) + H.PosetVector.basis(P.POINT)
        assert H.counit(v) == Scalar.const(3)
