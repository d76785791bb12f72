import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neutrorec import golden
from neutrorec.stats import (
    StatsError,
    anova_one_way,
    betainc,
    chi2_sf,
    f_sf,
    gammainc_upper,
    kruskal_wallis,
    rankdata,
)

scipy_stats = pytest.importorskip("scipy.stats")
scipy_special = pytest.importorskip("scipy.special")


class TestSpecialFunctions:
    @pytest.mark.parametrize("a,b,x", [(0.5, 0.5, 0.3), (3.5, 16, 0.9), (16, 3.5, 0.1), (1, 1, 0.42), (50, 60, 0.45)])
    def test_betainc(self, a, b, x):
        assert betainc(a, b, x) == pytest.approx(scipy_special.betainc(a, b, x), abs=1e-13)

    def test_betainc_edges(self):
        assert betainc(2, 3, 0.0) == 0.0
        assert betainc(2, 3, 1.0) == 1.0

    @pytest.mark.parametrize("s,x", [(0.5, 0.1), (3.5, 4.0), (10, 2), (2, 30), (1, 1)])
    def test_gammainc_upper(self, s, x):
        assert gammainc_upper(s, x) == pytest.approx(scipy_special.gammaincc(s, x), abs=1e-13)

    @settings(max_examples=100)
    @given(st.floats(0.01, 40), st.integers(1, 30), st.integers(1, 60))
    def test_f_sf_matches_scipy(self, f, d1, d2):
        assert f_sf(f, d1, d2) == pytest.approx(scipy_stats.f.sf(f, d1, d2), abs=1e-12)

    @settings(max_examples=100)
    @given(st.floats(0.01, 80), st.integers(1, 30))
    def test_chi2_sf_matches_scipy(self, x, k):
        assert chi2_sf(x, k) == pytest.approx(scipy_stats.chi2.sf(x, k), abs=1e-12)

    def test_tails(self):
        assert f_sf(0.0, 3, 4) == 1.0
        assert f_sf(math.inf, 3, 4) == 0.0
        assert chi2_sf(math.inf, 2) == 0.0
        # closed form for two degrees of freedom
        assert chi2_sf(3.0, 2) == pytest.approx(math.exp(-1.5), abs=1e-15)


class TestAnova:
    def test_hand_example(self):
        t = anova_one_way([[1, 2, 3], [2, 3, 4]])
        assert (t.ss_columns, t.ss_error, t.ss_total) == pytest.approx((1.5, 4.0, 5.5))
        assert (t.df_columns, t.df_error, t.df_total) == (1, 4, 5)
        assert t.f_stat == pytest.approx(1.5)

    def test_published_p_values_follow_from_published_ratios(self):
        # the printed F and rank sums of squares imply the printed p-values
        ref, kref = golden.ANOVA_REFERENCE, golden.KRUSKAL_REFERENCE
        assert f_sf(ref["f"], 7, 32) == pytest.approx(ref["p"], abs=1e-3)
        h = kref["ss_columns"] / (kref["ss_total"] / 39)
        assert h == pytest.approx(7.71, abs=5e-3)
        assert chi2_sf(h, 7) == pytest.approx(kref["p"], abs=1e-3)

    def test_benchmark_matrix_against_scipy(self):
        groups = [list(c) for c in zip(*golden.MSE_MATRIX)]
        t = anova_one_way(groups)
        f, p = scipy_stats.f_oneway(*groups)
        assert t.f_stat == pytest.approx(f, rel=1e-12)
        assert t.p_value == pytest.approx(p, abs=1e-12)
        assert (t.df_columns, t.df_error, t.df_total) == (7, 32, 39)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.floats(-100, 100), min_size=2, max_size=8), min_size=2, max_size=5))
    def test_matches_scipy(self, groups):
        t = anova_one_way(groups)
        assert t.ss_columns + t.ss_error == pytest.approx(t.ss_total, rel=1e-9, abs=1e-9)
        if t.ms_error > 1e-6 * max(t.ss_total, 1e-300):
            f, p = scipy_stats.f_oneway(*groups)
            if math.isnan(p):
                # scipy's between-group sum can round below zero when the means coincide
                assert t.f_stat <= 1e-9 and t.p_value == pytest.approx(1.0)
                return
            assert t.f_stat == pytest.approx(f, rel=1e-7, abs=1e-12)
            assert t.p_value == pytest.approx(p, abs=1e-9)

    def test_zero_within_variance(self):
        assert anova_one_way([[1, 1], [2, 2]]).f_stat == math.inf
        t = anova_one_way([[1, 1], [1, 1]])
        assert t.f_stat == 0.0 and t.p_value == 1.0

    @pytest.mark.parametrize("groups", [[[1, 2, 3]], [[1, 2], []], [[1], [2]], [[1, math.nan], [2, 3]]])
    def test_invalid(self, groups):
        with pytest.raises(StatsError):
            anova_one_way(groups)


class TestKruskal:
    def test_hand_example(self):
        t = kruskal_wallis([[1, 2], [3, 4]])
        assert t.h_stat == pytest.approx(2.4)
        assert t.p_value == pytest.approx(scipy_stats.chi2.sf(2.4, 1))

    def test_ranks_with_ties(self):
        assert rankdata([3, 1, 3, 2]) == [3.5, 1.0, 3.5, 2.0]

    def test_all_tied(self):
        t = kruskal_wallis([[5, 5], [5, 5, 5]])
        assert t.h_stat == 0.0 and t.p_value == 1.0

    def test_benchmark_matrix_against_scipy(self):
        groups = [list(c) for c in zip(*golden.MSE_MATRIX)]
        t = kruskal_wallis(groups)
        h, p = scipy_stats.kruskal(*groups)
        assert t.h_stat == pytest.approx(h, rel=1e-12)
        assert t.p_value == pytest.approx(p, abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=7), min_size=2, max_size=5))
    def test_matches_scipy_with_ties(self, groups):
        pooled = [v for g in groups for v in g]
        if len(set(pooled)) < 2 or len(pooled) <= len(groups):
            return
        t = kruskal_wallis(groups)
        h, p = scipy_stats.kruskal(*groups)
        assert t.h_stat == pytest.approx(h, rel=1e-9, abs=1e-12)
        assert t.p_value == pytest.approx(p, abs=1e-9)
