from collections import Counter
from itertools import product
from math import comb, prod

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from jetbounds.schur import (
    GradedPiece,
    Partition,
    VerificationTooLarge,
    br_vanishing,
    decompose_tensor,
    graded_pieces,
    pieri,
    schur_dim,
    verify_theorem1,
)


def P(*parts):
    return Partition(parts)


# -- character oracle: Schur polynomials by the bialternant formula ------------


def schur_poly(lam, xs):
    n = len(xs)
    parts = [lam[i] for i in range(n)]
    num = sp.Matrix(n, n, lambda i, j: xs[j] ** (parts[i] + n - 1 - i))
    den = sp.Matrix(n, n, lambda i, j: xs[j] ** (n - 1 - i))
    return sp.cancel(num.det() / den.det())


def complete_homogeneous(m, xs):
    return sum(prod(x**e for x, e in zip(xs, exps)) for exps in product(range(m + 1), repeat=len(xs)) if sum(exps) == m)


class TestPartition:
    def test_parse_and_str(self):
        lam = Partition.parse("3,1,1")
        assert lam == P(3, 1, 1)
        assert str(lam) == "3,1,1"
        assert str(P()) == "0"
        assert P(2, 1, 0, 0) == P(2, 1)

    @pytest.mark.parametrize("bad", [(1, 2), (2, -1)])
    def test_rejects_invalid(self, bad):
        with pytest.raises(ValueError):
            Partition(bad)

    def test_conjugate(self):
        assert P(3, 1, 1).conjugate() == P(3, 1, 1)
        assert P(4, 2).conjugate() == P(2, 2, 1, 1)
        assert P().conjugate() == P()

    def test_graded_piece_degree(self):
        assert GradedPiece((1, 1, 2)).weighted_degree == 9
        assert str(GradedPiece((3, 0))) == "(3,0)"


class TestPieri:
    @pytest.mark.parametrize("l,m", [(3, 2), (1, 4), (5, 5), (0, 3)])
    def test_one_row(self, l, m):
        expected = Counter({P(l + m - j, j): 1 for j in range(min(m, l) + 1)})
        assert pieri(P(l), m, 4) == expected

    def test_identity(self):
        assert pieri(P(3, 1), 0, 3) == Counter({P(3, 1): 1})

    def test_box_times_box(self):
        assert pieri(P(1), 1, 2) == Counter({P(2): 1, P(1, 1): 1})

    def test_length_capped_by_rank(self):
        assert pieri(P(1, 1), 1, 2) == Counter({P(2, 1): 1})
        assert pieri(P(1, 1), 1, 3) == Counter({P(2, 1): 1, P(1, 1, 1): 1})

    def test_rejects_long_partition(self):
        with pytest.raises(ValueError):
            pieri(P(1, 1, 1), 1, 2)

    @pytest.mark.parametrize("lam,m,n", [((2, 1), 2, 3), ((3, 3, 1), 3, 4), ((1,), 3, 2)])
    def test_against_characters(self, lam, m, n):
        xs = sp.symbols(f"x1:{n + 1}")
        lhs = sp.expand(schur_poly(P(*lam), xs) * complete_homogeneous(m, xs))
        rhs = sp.expand(sum(mult * schur_poly(mu, xs) for mu, mult in pieri(P(*lam), m, n).items()))
        assert lhs == rhs


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 5), max_size=4), st.integers(0, 6), st.integers(1, 5))
def test_pieri_adds_horizontal_strips(parts, m, n):
    lam = Partition(tuple(sorted(parts, reverse=True))[:n])
    for mu, mult in pieri(lam, m, n).items():
        assert mult == 1
        assert mu.contains(lam)
        assert mu.size == lam.size + m
        assert len(mu) <= n
        # no column gains two boxes
        assert all(lam[i] >= mu[i + 1] for i in range(n))


class TestDecompose:
    def test_two_pieces(self):
        assert decompose_tensor((2, 1), 3) == Counter({P(3): 1, P(2, 1): 1})

    def test_single_symmetric_power(self):
        assert decompose_tensor(GradedPiece((6,)), 3) == Counter({P(6): 1})

    def test_empty(self):
        assert decompose_tensor((0, 0), 2) == Counter({P(): 1})

    def test_against_characters(self):
        xs = sp.symbols("x1:4")
        ell = (2, 1, 1)
        lhs = sp.expand(prod(complete_homogeneous(l, xs) for l in ell))
        rhs = sp.expand(sum(mult * schur_poly(mu, xs) for mu, mult in decompose_tensor(ell, 3).items()))
        assert lhs == rhs

    def test_row_bound_exhaustive(self):
        for k in range(1, 4):
            for ell in product(range(4), repeat=k):
                for n in range(1, 5):
                    assert all(len(mu) <= k for mu in decompose_tensor(ell, n))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=4).filter(lambda l: sum(l) <= 8), st.integers(1, 5))
def test_dimension_conservation(ell, n):
    total = sum(mult * schur_dim(mu, n) for mu, mult in decompose_tensor(tuple(ell), n).items())
    assert total == prod(comb(l + n - 1, n - 1) for l in ell)


class TestSchurDim:
    @pytest.mark.parametrize("m,n", [(0, 3), (4, 2), (5, 5)])
    def test_symmetric_power(self, m, n):
        assert schur_dim(P(m), n) == comb(m + n - 1, n - 1)

    @pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (4, 4)])
    def test_exterior_power(self, k, n):
        assert schur_dim(Partition((1,) * k), n) == comb(n, k)

    def test_adjoint(self):
        assert schur_dim(P(2, 1), 3) == 8

    def test_against_character_value_at_one(self):
        xs = sp.symbols("x1:4")
        lam = P(4, 2, 1)
        assert schur_dim(lam, 3) == schur_poly(lam, xs).subs({x: 1 for x in xs})


class TestGradedPieces:
    def test_order_two(self):
        assert [p.ell for p in graded_pieces(2, 3)] == [(3, 0), (1, 1)]

    def test_order_three(self):
        assert [p.ell for p in graded_pieces(3, 3)] == [(3, 0, 0), (1, 1, 0), (0, 0, 1)]

    def test_order_one(self):
        assert [p.ell for p in graded_pieces(1, 7)] == [(7,)]

    def test_counts_match_generating_function(self):
        t = sp.Symbol("t")
        series = sp.series(1 / prod(1 - t**i for i in range(1, 5)), t, 0, 13).removeO()
        for m in range(13):
            assert len(graded_pieces(4, m)) == series.coeff(t, m)

    def test_all_have_weighted_degree(self):
        assert all(p.weighted_degree == 10 for p in graded_pieces(4, 10))


class TestBrVanishing:
    @pytest.mark.parametrize("m,n", [(1, 2), (7, 3), (20, 6)])
    def test_symmetric_powers(self, m, n):
        assert br_vanishing(P(m), n, n + 1)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_top_exterior_power(self, n):
        assert not br_vanishing(Partition((1,) * n), n, n + 1)

    def test_hook(self):
        assert br_vanishing(P(2, 1), 3, 4)

    def test_higher_codimension(self):
        # conjugate of (3,2) is (2,2,1): two columns give t = 4 >= 3
        assert br_vanishing(P(3, 2), 3, 4)
        assert not br_vanishing(P(3, 2), 3, 5)

    def test_rejects_bad_ambient(self):
        with pytest.raises(ValueError):
            br_vanishing(P(1), 3, 3)


class TestVerifier:
    def test_threefold_order_two(self):
        for m in range(1, 31):
            report = verify_theorem1(3, 2, m)
            assert report.all_vanish
            assert report.violations == []

    def test_symmetric_differentials_on_surfaces(self):
        report = verify_theorem1(2, 1, 5)
        assert report.pieces == 1
        assert report.components == 1
        assert report.all_vanish

    def test_order_equal_to_dimension(self):
        # (1,1) first occurs at m = 3, from the piece l = (1,1)
        assert verify_theorem1(2, 2, 2).all_vanish
        report = verify_theorem1(2, 2, 3)
        assert not report.all_vanish
        assert report.violations == []
        assert report.not_guaranteed == [{"piece": "(1,1)", "partition": "1,1", "t": 2}]

    def test_component_count_with_multiplicity(self):
        report = verify_theorem1(3, 2, 4)
        expected = sum(sum(decompose_tensor(p.ell, 3).values()) for p in graded_pieces(2, 4))
        assert report.components == expected

    def test_json(self):
        data = verify_theorem1(4, 3, 12).to_json()
        assert data["all_vanish"] is True
        assert set(data) >= {"n", "k", "m", "pieces", "components", "all_vanish", "violations"}

    def test_guard(self):
        with pytest.raises(VerificationTooLarge):
            verify_theorem1(3, 3, 30, max_components=10)

    def test_rejects_zero_weight(self):
        with pytest.raises(ValueError):
            verify_theorem1(3, 2, 0)
