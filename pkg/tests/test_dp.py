import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import ks_2samp

from dpcheck.cvm import cvm_discrete
from dpcheck.distributions import Exponential, Normal
from dpcheck.dp import (
    ContinuousBase,
    DiscreteMeasure,
    DpParams,
    PosteriorMixture,
    posterior_params,
    sample_base,
    sample_dp,
)
from dpcheck.errors import ConfigError, DataError, DegeneracyError, DomainError
from dpcheck.rng import RngStream

STD_NORMAL = Normal(0.0, 1.0)


def prior_distances(a, base, N, r, seed, label="d"):
    params = DpParams(a, ContinuousBase(base), N)
    root = RngStream(seed, label)
    return np.array([
        cvm_discrete(sample_dp(params, root.child(f"{N}/{j}").generator()), base)
        for j in range(r)
    ])


class TestDiscreteMeasure:
    def test_valid_measure_is_frozen(self):
        m = DiscreteMeasure(np.array([-1.0, 0.5]), np.array([0.25, 0.75]))
        assert not m.atoms.flags.writeable
        assert not m.weights.flags.writeable

    def test_merged_sums_weights_of_duplicates(self):
        m = DiscreteMeasure.merged([2.0, -1.0, 2.0, 0.0], [0.1, 0.2, 0.3, 0.4])
        assert np.array_equal(m.atoms, [-1.0, 0.0, 2.0])
        assert np.allclose(m.weights, [0.2, 0.4, 0.4])

    @pytest.mark.parametrize(
        "atoms,weights",
        [
            ([0.0, 0.0], [0.5, 0.5]),      # tied atoms
            ([1.0, 0.0], [0.5, 0.5]),      # out of order
            ([0.0, 1.0], [0.6, 0.6]),      # sum > 1
            ([0.0, 1.0], [-0.1, 1.1]),     # negative weight
            ([0.0], [0.5]),                # sum < 1
            ([], []),                      # empty
            ([np.nan], [1.0]),             # non-finite atom
        ],
    )
    def test_invalid_measures_rejected(self, atoms, weights):
        with pytest.raises(DomainError):
            DiscreteMeasure(np.asarray(atoms, dtype=float), np.asarray(weights, dtype=float))

    @given(
        locs=st.lists(
            st.floats(min_value=-100, max_value=100, allow_nan=False),
            min_size=1,
            max_size=40,
        ),
        raw=st.data(),
    )
    @settings(max_examples=80, deadline=None)
    def test_merged_always_satisfies_invariants(self, locs, raw):
        weights = raw.draw(
            st.lists(
                st.floats(min_value=1e-6, max_value=1.0),
                min_size=len(locs),
                max_size=len(locs),
            )
        )
        w = np.asarray(weights) / np.sum(weights)
        m = DiscreteMeasure.merged(np.asarray(locs), w)
        assert np.all(np.diff(m.atoms) > 0)
        assert np.all(m.weights >= 0)
        assert abs(m.weights.sum() - 1.0) < 1e-12


class TestParams:
    @pytest.mark.parametrize("a", [0.0, -1.0, np.nan, np.inf])
    def test_bad_concentration_rejected(self, a):
        with pytest.raises(ConfigError):
            DpParams(a, ContinuousBase(STD_NORMAL))

    @pytest.mark.parametrize("N", [0, -5, 2.5])
    def test_bad_truncation_rejected(self, N):
        with pytest.raises(ConfigError):
            DpParams(1.0, ContinuousBase(STD_NORMAL), N)

    def test_bad_base_rejected(self):
        with pytest.raises(ConfigError):
            DpParams(1.0, STD_NORMAL)  # must be wrapped in a BaseMeasure

    def test_mixture_weight_and_data_validated(self):
        with pytest.raises(DomainError):
            PosteriorMixture(1.5, STD_NORMAL, np.array([1.0]))
        with pytest.raises(DataError):
            PosteriorMixture(0.5, STD_NORMAL, np.array([]))
        with pytest.raises(DataError):
            PosteriorMixture(0.5, STD_NORMAL, np.array([1.0, np.inf]))


class TestPosteriorParams:
    def test_concentration_and_weight_arithmetic(self):
        prior = DpParams(1.0, ContinuousBase(STD_NORMAL), 500)
        post = posterior_params(prior, np.arange(20.0))
        assert post.a == 21.0
        assert post.base.prior_weight == pytest.approx(1.0 / 21.0, rel=1e-15)
        assert post.N == 500

        heavy = posterior_params(DpParams(20.0, ContinuousBase(STD_NORMAL)), np.arange(100.0))
        assert heavy.a == 120.0
        assert heavy.base.prior_weight == pytest.approx(1.0 / 6.0, rel=1e-15)

    def test_small_concentration_limit_is_empirical(self):
        post = posterior_params(DpParams(1e-9, ContinuousBase(STD_NORMAL)), np.arange(10.0))
        assert post.base.prior_weight == pytest.approx(0.0, abs=1e-9)
        rng = RngStream(4, "limit").generator()
        draws = sample_base(post.base, rng, 2000)
        assert set(np.unique(draws)) <= set(np.arange(10.0))

    def test_empty_data_rejected(self):
        with pytest.raises(DataError):
            posterior_params(DpParams(1.0, ContinuousBase(STD_NORMAL)), np.array([]))

    def test_posterior_base_cannot_be_updated_again(self):
        post = posterior_params(DpParams(1.0, ContinuousBase(STD_NORMAL)), np.arange(5.0))
        with pytest.raises(ConfigError):
            posterior_params(post, np.arange(5.0))


class TestSampleBase:
    def test_degenerate_mixtures(self):
        data = np.array([3.0, 7.0])
        rng = RngStream(1, "deg").generator()
        only_data = sample_base(PosteriorMixture(0.0, STD_NORMAL, data), rng, 500)
        assert set(np.unique(only_data)) <= {3.0, 7.0}
        only_prior = sample_base(PosteriorMixture(1.0, STD_NORMAL, data), rng, 500)
        assert not np.isin(only_prior, data).any()

    def test_mixture_fraction_matches_weight(self):
        # data points are integers, prior draws are continuous: a draw is a
        # prior draw exactly when it is not one of the data values
        p = 1.0 / 21.0
        data = np.arange(20.0)
        base = PosteriorMixture(p, STD_NORMAL, data)
        rng = RngStream(8, "frac").generator()
        draws = sample_base(base, rng, 10**5)
        frac_prior = 1.0 - np.isin(draws, data).mean()
        se = np.sqrt(p * (1 - p) / 10**5)
        assert abs(frac_prior - p) < 3 * se

    def test_scalar_default(self):
        v = sample_base(ContinuousBase(STD_NORMAL), RngStream(0, "s").generator())
        assert isinstance(v, float)


class TestSampleDp:
    def test_single_atom_when_truncation_is_one(self):
        m = sample_dp(DpParams(2.0, ContinuousBase(STD_NORMAL), 1), RngStream(5, "one").generator())
        assert m.atoms.shape == (1,)
        assert m.weights[0] == 1.0

    def test_draw_satisfies_measure_invariants(self):
        for j in range(25):
            m = sample_dp(
                DpParams(1.0, ContinuousBase(STD_NORMAL), 300),
                RngStream(6, f"inv/{j}").generator(),
            )
            assert np.all(np.diff(m.atoms) > 0)
            assert np.all(m.weights >= 0)
            assert abs(m.weights.sum() - 1.0) < 1e-12

    def test_posterior_draw_merges_repeated_data_atoms(self):
        prior = DpParams(1.0, ContinuousBase(STD_NORMAL), 400)
        post = posterior_params(prior, np.array([0.5, 1.5, 1.5, 2.5]))
        m = sample_dp(post, RngStream(7, "post").generator())
        # with N=400 draws over 4 data points ties are guaranteed pre-merge
        assert m.atoms.size < 400
        assert np.all(np.diff(m.atoms) > 0)
        assert abs(m.weights.sum() - 1.0) < 1e-12

    def test_mean_distance_tracks_concentration(self):
        # large-N limit of the expected distance is 1/(6(a+1))
        d = prior_distances(1.0, STD_NORMAL, 400, 300, seed=11)
        assert np.mean(d) == pytest.approx(1.0 / 12.0, rel=0.10)

    def test_truncation_convergence(self):
        # doubling N moves the seeded mean by less than the Monte Carlo
        # standard error of the difference
        r = 800
        d1 = prior_distances(1.0, STD_NORMAL, 1000, r, seed=2, label="truncation")
        d2 = prior_distances(1.0, STD_NORMAL, 2000, r, seed=2, label="truncation")
        se = np.hypot(d1.std(ddof=1), d2.std(ddof=1)) / np.sqrt(r)
        assert abs(d1.mean() - d2.mean()) < se

    def test_prior_distance_law_is_base_free(self):
        # the distance to the base has one law for every continuous base
        r = 400
        d_normal = prior_distances(1.0, STD_NORMAL, 500, r, seed=12, label="free")
        d_exp = prior_distances(1.0, Exponential(1.0), 500, r, seed=13, label="free")
        assert ks_2samp(d_normal, d_exp).pvalue > 0.01

    def test_all_underflown_weights_raise_degeneracy(self):
        params = DpParams(1e-12, ContinuousBase(STD_NORMAL), 1000)
        with pytest.raises(DegeneracyError, match="a=1e-12"):
            sample_dp(params, RngStream(9, "under").generator())

    def test_bitwise_deterministic(self):
        a = sample_dp(DpParams(1.0, ContinuousBase(STD_NORMAL), 200), RngStream(3, "det").generator())
        b = sample_dp(DpParams(1.0, ContinuousBase(STD_NORMAL), 200), RngStream(3, "det").generator())
        assert np.array_equal(a.atoms, b.atoms)
        assert np.array_equal(a.weights, b.weights)
