from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperci import Params, pivot_ci, pivot_table
from hyperci.pivot import _lower_tail_weight, _upper_tail_weight

from reference_tables import COMPETITOR_L, COMPETITOR_U


class TestPivotCi:
    def test_published_row(self, p500):
        assert pivot_ci(13, p500) == (39, 101)

    def test_lower_bound_zero_at_x_zero(self):
        for N, n, alpha in [(20, 6, 0.6), (500, 100, 0.05), (365, 292, 0.1)]:
            assert pivot_ci(0, Params(N, n, alpha))[0] == 0

    def test_upper_bound_population_at_x_n(self):
        for N, n, alpha in [(20, 6, 0.6), (500, 100, 0.05)]:
            assert pivot_ci(n, Params(N, n, alpha))[1] == N

    def test_unequal_tails_must_sum_to_alpha(self, p500):
        with pytest.raises(ValueError, match="alpha"):
            pivot_ci(13, p500, alpha1=0.02, alpha2=0.04)

    def test_explicit_equal_tails_match_default(self, p500):
        assert pivot_ci(13, p500, alpha1=0.025, alpha2=0.025) == pivot_ci(13, p500)

    def test_unequal_tail_split(self):
        p = Params(60, 20, 0.1)
        lo_skewed, _ = pivot_ci(7, p, alpha1=0.1 - 0.0125, alpha2=0.0125)
        lo_even, _ = pivot_ci(7, p)
        assert lo_skewed >= lo_even  # larger alpha1 can only raise L

    def test_one_sided_splits(self):
        p = Params(60, 20, 0.1)
        for x in (0, 3, 11, 20):
            low, _ = pivot_ci(x, p, alpha1=0.0, alpha2=p.alpha)
            assert low == x  # smallest M whose support reaches x
            _, high = pivot_ci(x, p, alpha1=p.alpha, alpha2=0.0)
            assert high == 40 + x  # largest M that can still produce x

    def test_x_out_of_range(self, p500):
        with pytest.raises(ValueError):
            pivot_ci(101, p500)


class TestPivotTable:
    def test_published_row(self, pivot500):
        assert pivot500.interval(13) == (39, 101)

    def test_contains_every_competitor_row(self, pivot500):
        for x in range(101):
            assert pivot500.lower[x] <= COMPETITOR_L[x]
            assert COMPETITOR_U[x] <= pivot500.upper[x]

    def test_total_size_gap_to_cstar(self, cstar500, pivot500):
        assert 200 <= pivot500.total_size - cstar500.total_size <= 260

    def test_rows_match_single_interval_queries(self):
        p = Params(45, 17, 0.1)
        tbl = pivot_table(p)
        for x in range(18):
            assert pivot_ci(x, p) == tbl.interval(x)

    def test_fraction_alpha(self):
        p = Params(45, 17, Fraction(1, 10))
        q = Params(45, 17, 0.1)
        assert pivot_table(p).lower == pivot_table(q).lower


class TestTailMonotonicity:
    def test_tails_monotone_in_m_small_grid(self):
        for N in (7, 12, 19):
            for n in (1, N // 2 + 1, N):
                p = Params(N, n, 0.1)
                for x in range(n + 1):
                    ups = [_upper_tail_weight(M, x, p) for M in range(N + 1)]
                    lows = [_lower_tail_weight(M, x, p) for M in range(N + 1)]
                    assert ups == sorted(ups)
                    assert lows == sorted(lows, reverse=True)

    def test_tail_weights_complement(self):
        p = Params(23, 9, 0.1)
        for M in range(24):
            for x in range(10):
                assert (
                    _upper_tail_weight(M, x, p) + _lower_tail_weight(M, x - 1, p)
                    == p.total_weight
                )


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_binary_search_matches_linear_scan(data):
    N = data.draw(st.integers(1, 40))
    n = data.draw(st.integers(1, N))
    alpha = data.draw(st.sampled_from([0.01, 0.05, 0.1, 0.3, 0.6]))
    x = data.draw(st.integers(0, n))
    p = Params(N, n, alpha)
    assert pivot_ci(x, p) == pivot_ci(x, p, scan=True)
