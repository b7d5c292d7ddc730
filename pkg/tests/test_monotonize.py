from fractions import Fraction

import pytest

from hyperci import Params, adjust, amo_half, center_interval, symmetrize
from hyperci.acceptance import AcceptanceFamily, Stage, _greedy_interval
from hyperci.core import attains_level, support, weight_table

from test_acceptance_family import family_is_level


def exact_level_ok(fam, M):
    p = fam.params
    lo, _ = support(M, p)
    w = weight_table(M, p)
    a, b = fam.interval(M)
    return attains_level(sum(w[a - lo : b - lo + 1]), p)


class TestAdjust:
    def test_already_monotone_is_identity(self):
        half = amo_half(Params(20, 6, 0.6))
        adjusted, trace = adjust(half)
        assert adjusted.lower == half.lower and adjusted.upper == half.upper
        assert not trace.set_lower and not trace.set_upper
        assert trace.max_shift == 0

    def test_up_shift_instance(self):
        # this instance needs a one-point up-shift at M=16
        half = amo_half(Params(100, 26, 0.01))
        adjusted, trace = adjust(half)
        assert trace.set_lower == {16}
        assert not trace.set_upper
        assert trace.delta[16] == 1
        assert adjusted.lower[16] == half.lower[16] + 1
        assert adjusted.upper[16] == half.upper[16] + 1

    def test_down_shift_on_full_range_family(self):
        # the upper half of a full-range greedy family mirrors the up-shifts
        p = Params(100, 26, 0.01)
        ints = [_greedy_interval(p, M) for M in range(101)]
        lower, upper = zip(*ints)
        adjusted, trace = adjust(AcceptanceFamily(p, Stage.RAW, lower, upper))
        assert 84 in trace.set_upper
        assert all(exact_level_ok(adjusted, M) for M in range(101))
        assert list(adjusted.lower) == sorted(adjusted.lower)
        assert list(adjusted.upper) == sorted(adjusted.upper)

    def test_lengths_and_level_preserved(self):
        for N, n, alpha in [(100, 26, 0.01), (150, 19, 0.1), (365, 33, 0.1)]:
            half = amo_half(Params(N, n, alpha))
            adjusted, trace = adjust(half)
            assert trace.set_lower.isdisjoint(trace.set_upper)
            for M in range(len(half)):
                assert adjusted.length(M) == half.length(M)
                assert exact_level_ok(adjusted, M)

    def test_disjoint_shift_sets_large_instance(self):
        _, trace = adjust(amo_half(Params(500, 100, 0.05)))
        assert trace.set_lower.isdisjoint(trace.set_upper)
        assert trace.max_shift == 1  # one observed one-point slide (M=16)

    def test_running_extrema_recorded(self):
        half = amo_half(Params(100, 26, 0.01))
        _, trace = adjust(half)
        assert list(trace.running_max_lower) == [
            max(half.lower[: M + 1]) for M in range(len(half))
        ]
        assert list(trace.running_min_upper) == [
            min(half.upper[M:]) for M in range(len(half))
        ]

    def test_corrupt_input_diagnostic_names_m(self):
        p = Params(20, 6, 0.6)
        half = amo_half(p)
        # shrink M=5 to a single point, which falls below the level
        broken = AcceptanceFamily(
            p, Stage.RAW, half.lower, half.upper[:5] + (half.lower[5],) + half.upper[6:]
        )
        with pytest.raises(ValueError, match="M=5"):
            adjust(broken)


class TestCenterInterval:
    def test_adversarial_instance(self):
        p = Params(20, 6, 0.6)
        half = amo_half(p)
        assert center_interval(p, half.interval(10)) == (2, 4)

    def test_already_symmetric_center_is_kept(self):
        # find an instance whose raw center is symmetric about n/2
        p = Params(18, 6, 0.2)
        half = amo_half(p)
        a, b = half.interval(9)
        if a + b == p.n:
            assert center_interval(p, (a, b)) == (a, b)
        else:  # fall back: the symmetric hull is returned
            h = min(a, p.n - b)
            assert center_interval(p, (a, b)) == (h, p.n - h)

    def test_large_instance_symmetric_and_cross_checked(self):
        p = Params(500, 100, 0.05)
        adjusted, _ = adjust(amo_half(p))
        a, b = adjusted.interval(250)
        h, top = center_interval(p, (a, b))
        assert h + top == 100
        assert h == min(a, 100 - b)

    def test_odd_population_rejected(self):
        with pytest.raises(ValueError):
            center_interval(Params(19, 6, 0.1), (2, 3))

    def test_no_shorter_symmetric_interval_attains_level(self):
        # [h, n-h] is minimal: every [c, n-c] with c > h falls short
        for N, n, alpha in [(20, 6, 0.6), (18, 6, 0.2), (30, 13, 0.05)]:
            p = Params(N, n, alpha)
            half = amo_half(p)
            h, _ = center_interval(p, half.interval(N // 2))
            lo, _ = support(N // 2, p)
            w = weight_table(N // 2, p)

            def sym_mass(c):
                lo_c, hi_c = max(c, lo), min(n - c, len(w) - 1 + lo)
                return sum(w[lo_c - lo : hi_c - lo + 1])

            assert attains_level(sym_mass(h), p)
            for c in range(h + 1, n // 2 + 1):
                assert not attains_level(sym_mass(c), p)


class TestSymmetrize:
    def test_adversarial_center_entry(self):
        p = Params(20, 6, 0.6)
        adjusted, _ = adjust(amo_half(p))
        sym = symmetrize(adjusted, p)
        assert sym.interval(10) == (2, 4)

    def test_odd_population_pure_keep_and_reflect(self):
        p = Params(19, 6, 0.1)
        adjusted, _ = adjust(amo_half(p))
        sym = symmetrize(adjusted, p)
        for M in range(10):
            assert sym.interval(M) == adjusted.interval(M)
            assert sym.interval(19 - M) == (6 - adjusted.upper[M], 6 - adjusted.lower[M])

    def test_endpoint_sums_equal_sample_size(self):
        p = Params(500, 100, 0.05)
        adjusted, _ = adjust(amo_half(p))
        sym = symmetrize(adjusted, p)
        for M in range(501):
            assert sym.lower[M] + sym.upper[500 - M] == 100

    @pytest.mark.parametrize("N,n,alpha", [(20, 6, 0.6), (19, 7, 0.1), (100, 26, 0.01)])
    def test_monotone_across_midpoint_and_level(self, N, n, alpha):
        p = Params(N, n, alpha)
        adjusted, _ = adjust(amo_half(p))
        sym = symmetrize(adjusted, p)
        k = N // 2
        assert sym.lower[k] <= sym.lower[k + 1]
        assert sym.upper[k] <= sym.upper[k + 1]
        assert family_is_level(sym)

    def test_fraction_and_float_alpha_agree(self):
        pf = Params(20, 6, 0.6)
        pq = Params(20, 6, Fraction(3, 5))
        sf = symmetrize(adjust(amo_half(pf))[0], pf)
        sq = symmetrize(adjust(amo_half(pq))[0], pq)
        assert sf.lower == sq.lower and sf.upper == sq.upper
