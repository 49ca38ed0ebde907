import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarkit import distance as dist
from polarkit.errors import (
    ExceedsEnumerationBudget,
    HypothesisViolated,
    InvalidExponent,
    InvalidProfile,
    InvalidSize,
    NotInvertible,
    NotSquare,
)
from polarkit.gf2 import BinaryMatrix, kron_mat
from polarkit.kernels import G2, G3H, G3L, G6H, G6L

from strategies import invertible_matrices

E_G3H = 2 * math.log(2) / (3 * math.log(3))


@pytest.mark.parametrize(
    "g, profile",
    [(G2, [1, 2]), (G3L, [1, 1, 3]), (G3H, [1, 2, 2]), (G6L, [1, 1, 3, 2, 2, 6]), (G6H, [1, 2, 2, 2, 4, 4])],
)
def test_builtin_profiles(g, profile):
    assert list(dist.partial_distances(g)) == profile


def test_identity_profile():
    for l in (1, 4, 9):
        p = dist.partial_distances(BinaryMatrix.identity(l))
        assert list(p) == [1] * l
        assert dist.exponent(p).exponent == 0.0


def test_partial_distance_errors():
    with pytest.raises(NotSquare):
        dist.partial_distances(BinaryMatrix([[1, 0, 1], [0, 1, 1]]))
    with pytest.raises(NotInvertible):
        dist.partial_distances(BinaryMatrix([[1, 1], [1, 1]]))
    with pytest.raises(ExceedsEnumerationBudget):
        dist.partial_distances(BinaryMatrix.identity(25))
    with pytest.raises(InvalidProfile):
        dist.exponent([1, 0])


def test_exponent_values():
    assert dist.exponent([1, 2]).exponent == 0.5
    assert dist.exponent([1, 2, 2]).exponent == pytest.approx(E_G3H, abs=1e-15)
    assert dist.round_half_up(dist.exponent([1, 2, 2]).exponent, 3) == "0.421"
    report = dist.exponent([1, 2, 2])
    assert report.to_dict()["distances"] == [1, 2, 2]
    assert sum(report.per_row_terms) / 3 == pytest.approx(report.exponent)


def test_round_half_up():
    assert dist.round_half_up(0.4515, 3) == "0.452"
    assert dist.round_half_up(0.5, 3) == "0.500"
    assert dist.round_half_up(0.39794, 3) == "0.398"


def test_kron_profiles():
    assert list(dist.kron_partial_distances([1, 2], [1, 1, 3])) == [1, 1, 3, 2, 2, 6]
    assert list(dist.kron_partial_distances([1, 2], [1, 2, 2])) == [1, 2, 2, 2, 4, 4]
    assert list(dist.kron_partial_distances([3, 5], [1, 1])) == [3, 3, 5, 5]
    assert list(dist.kron_partial_distances_n([[1, 2]] * 2)) == [1, 2, 2, 4]
    three = dist.kron_partial_distances_n([[1, 2]] * 3)
    assert three == dist.partial_distances(kron_mat(kron_mat(G2, G2), G2))
    assert dist.exponent(three).exponent == pytest.approx(0.5, abs=1e-15)
    assert dist.kron_partial_distances_n([[1, 2, 2]]) == dist.PartialDistanceProfile([1, 2, 2])


def test_kron_exponent():
    assert dist.round_half_up(dist.kron_exponent(0.5, 2, E_G3H, 3), 3) == "0.451"
    assert dist.kron_exponent_n([(0.5, 2)] * 3) == pytest.approx(0.5, abs=1e-15)
    assert dist.kron_exponent_n([(0.3, 5)]) == pytest.approx(0.3)
    with pytest.raises(InvalidSize):
        dist.kron_exponent(0.5, 1, 0.5, 2)
    with pytest.raises(InvalidSize):
        dist.kron_exponent(1.0, 2, 0.5, 2)


def test_dividing_point():
    alpha, value = dist.dividing_point_decomposition(0.5, 2, E_G3H, 3)
    assert alpha == pytest.approx(math.log(2) / math.log(3))
    assert value == pytest.approx(dist.kron_exponent(0.5, 2, E_G3H, 3), abs=1e-12)
    alpha, value = dist.dividing_point_decomposition(0.2, 4, 0.4, 4)
    assert alpha == 1.0
    assert value == pytest.approx(0.3)


def test_monotonicity():
    e_l = dist.exponent([1, 1, 3]).exponent
    assert dist.monotonicity_check(0.5, 0.5, 2, E_G3H, e_l, 3)
    with pytest.raises(HypothesisViolated):
        dist.monotonicity_check(0.5, 0.5, 2, 0.4, 0.4, 3)


@given(
    st.floats(0, 0.99), st.floats(0, 0.99), st.integers(2, 64),
    st.floats(0.001, 0.3), st.floats(0, 0.3), st.integers(2, 64),
)
def test_monotonicity_random(ea2, eb2, l1, da, db, l2):
    ea1, eb1 = min(ea2 + da, 0.999), min(eb2 + db, 0.999)
    if ea1 <= ea2 and eb1 <= eb2:
        return
    if not ((ea1 >= ea2 and eb1 > eb2) or (ea1 > ea2 and eb1 >= eb2)):
        return
    assert dist.monotonicity_check(ea1, ea2, l1, eb1, eb2, l2)


def test_infer_factor_exponent():
    e = dist.infer_factor_exponent(0.5146, [(0.5, 2)], 16)
    assert e == pytest.approx((0.5146 - 0.5 / math.log2(32)) * math.log(32, 16), abs=1e-15)
    assert dist.kron_exponent(0.5, 2, e, 16) == pytest.approx(0.5146, abs=1e-15)
    with pytest.raises(InvalidExponent):
        dist.infer_factor_exponent(0.99, [(0.0, 2)], 2)


def test_composition_index():
    idx = dist.CompositionIndex((2, 3))
    assert idx.size == 6
    assert [idx.flat(d) for d in [(1, 1), (1, 3), (2, 1), (2, 3)]] == [1, 3, 4, 6]
    for k in range(1, 7):
        assert idx.flat(idx.digits(k)) == k
    with pytest.raises(IndexError):
        idx.digits(7)


@given(invertible_matrices(), invertible_matrices())
def test_product_rule_against_brute_force(a, b):
    pa, pb = dist.partial_distances(a), dist.partial_distances(b)
    brute = dist.partial_distances(kron_mat(a, b))
    assert brute == dist.kron_partial_distances(pa, pb)
    direct = dist.exponent(brute).exponent
    closed = dist.kron_exponent(dist.exponent(pa).exponent, a.nrows, dist.exponent(pb).exponent, b.nrows)
    assert abs(direct - closed) < 1e-12
    swapped = dist.exponent(dist.partial_distances(kron_mat(b, a))).exponent
    assert abs(direct - swapped) < 1e-12
