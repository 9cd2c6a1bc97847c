import math
import random
from fractions import Fraction

import pytest

from _oracles import downward_closed_sets, oracle_zeta_grid
from trisupport.constructions import m_one_sum, tight_max_support
from trisupport.core import Shape, Support
from trisupport.sampling import random_support
from trisupport.spectral import (
    IncomprSet,
    SpectralWeights,
    SupportDistribution,
    entropy,
    incompr_set,
    zeta,
    zeta_full,
    zeta_min_over_axis_orders,
)

UNIFORM = SpectralWeights.uniform()
SKEWED = SpectralWeights(Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
POINTED = SpectralWeights(Fraction(1), Fraction(0), Fraction(0))


def test_spectral_weights_validation():
    with pytest.raises(ValueError):
        SpectralWeights(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        SpectralWeights(Fraction(-1, 2), Fraction(1), Fraction(1, 2))


def test_incompr_set_examples():
    d = m_one_sum(3).support()
    assert len(incompr_set(d)) == 27  # full cube: diagonal dominates everything
    single = Support(Shape(1, 1, 1), ((0, 0, 0),))
    assert incompr_set(single).points == ((0, 0, 0),)
    s = Support(Shape(2, 2, 2), ((0, 0, 0), (1, 1, 0)))
    assert incompr_set(s).points == ((0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0))


def test_incompr_set_downward_closed():
    rng = random.Random(41)
    for _ in range(30):
        shp = Shape(rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4))
        s = random_support(rng, shp, rng.uniform(0.2, 0.8))
        phi = incompr_set(s)
        members = set(phi.points)
        for (i, j, k) in phi.points:
            for down in ((i - 1, j, k), (i, j - 1, k), (i, j, k - 1)):
                if min(down) >= 0:
                    assert down in members
    with pytest.raises(ValueError):
        IncomprSet(Shape(2, 2, 2), ((1, 0, 0),))


def test_entropy_examples():
    point = SupportDistribution(Shape(2, 2, 2), {(0, 1, 0): 1.0})
    assert entropy(point, 0) == 0.0
    uniform = SupportDistribution(Shape(4, 4, 4), {(i, i, i): 0.25 for i in range(4)})
    assert abs(entropy(uniform, 1) - 2.0) < 1e-12
    skew = SupportDistribution(Shape(2, 1, 1), {(0, 0, 0): 0.25, (1, 0, 0): 0.75})
    assert abs(entropy(skew, 0) - 0.8112781244591328) < 1e-9


@pytest.mark.parametrize("theta", [UNIFORM, SKEWED, POINTED])
@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_zeta_diagonal_normalization(r, theta):
    assert abs(zeta(m_one_sum(r).support(), theta) - r) <= 1e-6


def test_zeta_two_point_value():
    s = Support(Shape(2, 2, 2), ((0, 0, 0), (1, 1, 0)))
    assert abs(zeta(s, UNIFORM) - 2 ** (2 / 3)) <= 1e-4


def test_zeta_upper_bounds_on_seeded_supports():
    rng = random.Random(42)
    for _ in range(50):
        m = rng.randint(1, 4)
        s = random_support(rng, Shape(m, m, m), rng.uniform(0.2, 0.9))
        res = zeta_full(s, UNIFORM)
        assert res.value <= m + 1e-9
        cap = 2 ** sum(float(th) * math.log2(n) for th, n in zip(UNIFORM.as_floats(), (m, m, m)))
        assert res.value <= cap + 1e-6


def test_zeta_rejects_empty_and_bad_tol():
    s = Support(Shape(2, 2, 2), ())
    with pytest.raises(ValueError):
        zeta(s, UNIFORM)
    with pytest.raises(ValueError):
        zeta(m_one_sum(2).support(), UNIFORM, tol=0.0)


def test_zeta_agrees_with_grid_oracle_on_small_incompr_sets():
    # every downward-closed set of at most 5 points, realized by its maximal
    # elements; the oracle sweeps the simplex at 1/64 then 1/512 locally
    for points in downward_closed_sets(5):
        members = set(points)
        maximal = tuple(
            t
            for t in points
            if not any(
                u != t and all(u[d] >= t[d] for d in range(3)) for u in members
            )
        )
        shape = Shape(*(max(t[d] for t in points) + 1 for d in range(3)))
        s = Support(shape, maximal)
        assert incompr_set(s).points == points
        fast = zeta(s, UNIFORM)
        slow = oracle_zeta_grid(points, UNIFORM.as_floats())
        assert abs(fast - slow) <= 1e-4, (points, fast, slow)


def test_zeta_result_distribution_is_consistent():
    s, _ = tight_max_support(3)
    res = zeta_full(s, UNIFORM)
    dist = res.distribution
    total = sum(dist.probs.values())
    assert abs(total - 1.0) <= 1e-9
    achieved = sum(float(th) * entropy(dist, axis) for axis, th in enumerate(UNIFORM.as_floats()))
    assert abs(achieved - res.log2_value) <= 1e-9
    phi = set(incompr_set(s).points)
    assert set(dist.probs) <= phi


def test_zeta_invariant_under_weight_and_axis_swap():
    s = Support(Shape(2, 3, 2), ((0, 0, 0), (1, 2, 0), (0, 1, 1)))
    swapped = Support(Shape(3, 2, 2), tuple((j, i, k) for (i, j, k) in s.triples))
    w = SpectralWeights(Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
    w_swapped = SpectralWeights(Fraction(1, 3), Fraction(1, 2), Fraction(1, 6))
    assert abs(zeta(s, w) - zeta(swapped, w_swapped)) <= 1e-7


def test_zeta_min_over_axis_orders():
    diag = m_one_sum(3).support()
    res = zeta_min_over_axis_orders(diag, UNIFORM)
    assert res.status == "ok" and abs(res.value - 3) <= 1e-6
    s3, _ = tight_max_support(3)
    res = zeta_min_over_axis_orders(s3, UNIFORM)
    direct = zeta(s3, UNIFORM)
    assert res.status == "ok" and abs(res.value - direct) <= 1e-6
    s5, _ = tight_max_support(5)
    assert zeta_min_over_axis_orders(s5, UNIFORM).status == "unknown"
