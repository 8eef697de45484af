import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, stats

from conftest import EXAMPLE1
from depcov.errors import InvalidParameter, UnknownGenerator
from depcov.generators import (
    GeneratorSpec,
    bivariate_t_density,
    conditional_t_density,
    conditional_t_variance,
    generate,
    t_constant,
    univariate_t_density,
)
from depcov.model import DiscreteBivariate
from depcov.sample import dcor_sample


def test_grid_n3():
    s = generate(GeneratorSpec("uniform_parabola_grid", 3))
    np.testing.assert_array_equal(s.xs, [-1.0, 0.0, 1.0])
    np.testing.assert_array_equal(s.ys, [1.0, 0.0, 1.0])


def test_uniform_parabola():
    s = generate(GeneratorSpec("uniform_parabola", 1000, seed=1))
    assert s.xs.min() >= -1 and s.xs.max() <= 1
    np.testing.assert_array_equal(s.ys, s.xs**2)
    noisy = generate(GeneratorSpec("uniform_parabola", 1000, seed=1, noise=0.1))
    np.testing.assert_array_equal(noisy.xs, s.xs)
    assert 0.08 < np.std(noisy.ys - s.ys) < 0.12


def test_discrete_frequencies():
    n = 200_000
    s = generate(GeneratorSpec("discrete", n, seed=7, dist=DiscreteBivariate(EXAMPLE1)))
    sigma = math.sqrt(0.25 * 0.75 / n)
    for x, y, _ in EXAMPLE1:
        freq = np.mean((s.xs == x) & (s.ys == y))
        assert abs(freq - 0.25) < 3 * sigma


def test_gaussian_pair():
    s = generate(GeneratorSpec("gaussian_pair", 50_000, seed=3, rho=0.6))
    assert np.corrcoef(s.xs, s.ys)[0, 1] == pytest.approx(0.6, abs=0.02)
    one = generate(GeneratorSpec("gaussian_pair", 100, seed=3, rho=-1.0))
    np.testing.assert_allclose(one.ys, -one.xs, atol=1e-15)


@pytest.mark.parametrize("kwargs", [
    dict(kind="bivariate_t", n=10, nu=0),
    dict(kind="bivariate_t", n=10),
    dict(kind="gaussian_pair", n=10, rho=1.5),
    dict(kind="discrete", n=10),
    dict(kind="uniform_parabola", n=0),
    dict(kind="uniform_parabola_grid", n=1),
    dict(kind="uniform_parabola", n=10, noise=-1.0),
])
def test_invalid_specs(kwargs):
    with pytest.raises(InvalidParameter):
        GeneratorSpec(**kwargs)


def test_unknown_kind():
    with pytest.raises(UnknownGenerator):
        GeneratorSpec("copula", 10)


@pytest.mark.parametrize("spec", [
    dict(kind="uniform_parabola"),
    dict(kind="bivariate_t", nu=3.5),
    dict(kind="gaussian_pair", rho=0.2),
    dict(kind="discrete", dist=DiscreteBivariate(EXAMPLE1)),
])
def test_determinism(spec):
    a = generate(GeneratorSpec(n=100, seed=5, **spec))
    assert a == generate(GeneratorSpec(n=100, seed=5, **spec))
    assert a != generate(GeneratorSpec(n=100, seed=6, **spec))


# --- densities ---------------------------------------------------------------

def test_cauchy_peak():
    assert univariate_t_density(0.0, 1.0, 1.0) == pytest.approx(1 / math.pi, rel=1e-14)
    assert t_constant(1.0) == pytest.approx(1 / math.pi, rel=1e-14)


@pytest.mark.parametrize("nu", [1, 3, 10])
def test_t_normalised(nu):
    val, _ = integrate.quad(univariate_t_density, -50, 50, args=(1.0, nu), limit=200)
    # the tails beyond +-50 hold this much mass
    assert val + 2 * stats.t.sf(50, nu) == pytest.approx(1.0, abs=1e-6)


@given(st.floats(-20, 20), st.floats(0.1, 5), st.floats(0.2, 30))
def test_t_density_matches_scipy_and_is_symmetric(y, s, nu):
    f = univariate_t_density(y, s, nu)
    assert f == pytest.approx(univariate_t_density(-y, s, nu), rel=1e-14)
    assert f == pytest.approx(stats.t.pdf(y, nu, scale=s), rel=1e-10)


def test_density_errors():
    with pytest.raises(InvalidParameter):
        univariate_t_density(0.0, 0.0, 1.0)
    with pytest.raises(InvalidParameter):
        univariate_t_density(0.0, 1.0, -1.0)
    with pytest.raises(InvalidParameter):
        conditional_t_density(0.0, 0.0, 0.0)
    with pytest.raises(InvalidParameter):
        conditional_t_variance(0.0, 1.0)


def test_conditional_substitution():
    y = np.linspace(-5, 5, 11)
    np.testing.assert_allclose(
        conditional_t_density(y, 0.0, 1.0), univariate_t_density(y, math.sqrt(0.5), 2.0), rtol=1e-14
    )


@pytest.mark.parametrize("x", [0.0, 1.0, 3.0])
@pytest.mark.parametrize("nu", [2.0, 5.0])
def test_conditional_normalised(x, nu):
    val, _ = integrate.quad(conditional_t_density, -np.inf, np.inf, args=(x, nu))
    assert val == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("nu", [1.0, 2.0, 5.0, 13.5])
def test_joint_over_marginal_is_conditional(nu):
    xs, ys = np.meshgrid(np.linspace(-6, 6, 25), np.linspace(-6, 6, 25))
    ratio = bivariate_t_density(xs, ys, nu) / univariate_t_density(xs, 1.0, nu)
    cond = np.array([conditional_t_density(row_y, x, nu) for row_y, x in zip(ys.T, xs[0])]).T
    np.testing.assert_allclose(ratio, cond, atol=1e-8, rtol=0)


def test_bivariate_density_normalised():
    val, _ = integrate.dblquad(lambda y, x: bivariate_t_density(x, y, 4.0), -60, 60, -60, 60)
    assert val == pytest.approx(1.0, abs=2e-3)


@pytest.mark.parametrize("x", [0.0, 1.0, 2.0])
def test_conditional_variance_simulated(x):
    s = generate(GeneratorSpec("bivariate_t", 200_000, seed=5, nu=5.0))
    sel = s.ys[np.abs(s.xs - x) < 0.1]
    expected = conditional_t_variance(x, 5.0)
    assert expected == pytest.approx((5 + x * x) / 4)
    assert abs(np.var(sel) / expected - 1) < 0.1


def test_circular_symmetry():
    s = generate(GeneratorSpec("bivariate_t", 100_000, seed=11, nu=3.0))
    angle = np.arctan2(s.ys, s.xs)
    d = stats.kstest(angle, stats.uniform(loc=-np.pi, scale=2 * np.pi).cdf).statistic
    assert d < 0.01


def test_dcor_decreases_towards_gaussian():
    heavy = dcor_sample(generate(GeneratorSpec("bivariate_t", 100_000, seed=1, nu=2.0)))[0]
    light = dcor_sample(generate(GeneratorSpec("bivariate_t", 100_000, seed=1, nu=50.0)))[0]
    assert light < heavy
