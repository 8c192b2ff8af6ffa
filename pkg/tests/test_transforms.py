from fractions import Fraction

import pytest

from app.core.errors import SeriesNotInvertible
from app.models.sequences import CumulantSeq, MomentSeq, SeriesQ
from app.services.partitions import catalan, parse_partition
from app.services.transforms import (
    alternating_moment,
    center,
    cumulants_from_moments,
    free_additive_convolution,
    free_multiplicative_convolution,
    m_pi,
    moment_seq_power,
    moments_from_cumulants,
    r_from_s,
    r_pi,
    r_series,
    s_from_r,
    sandwich_s_route,
    sandwich_transform,
    scale_time,
)


def seq(*values):
    return tuple(Fraction(v) for v in values)


def test_free_poisson_moments_are_catalan():
    m = moments_from_cumulants(CumulantSeq((1,) * 7))
    assert m.values == tuple(Fraction(catalan(n)) for n in range(1, 8))


def test_semicircle_moments():
    m = moments_from_cumulants(CumulantSeq((0, 1, 0, 0, 0, 0)))
    assert m.values == seq(0, 1, 0, 2, 0, 5)


@pytest.mark.parametrize(
    "r",
    [
        (Fraction(1, 2), -3, 2, Fraction(7, 5)),
        (0, 1, 0, 0, 0),
        (3, Fraction(-1, 4), 0, 9, 1, Fraction(2, 3)),
    ],
)
def test_moment_cumulant_round_trip(r):
    cumulants = CumulantSeq(r)
    assert cumulants_from_moments(moments_from_cumulants(cumulants)) == cumulants


def test_block_products():
    pi = parse_partition("1 2|3")
    assert m_pi(pi, MomentSeq((1, 2, 3))) == 2
    assert r_pi(pi, CumulantSeq((5, 7))) == 35
    with pytest.raises(ValueError):
        r_pi(parse_partition("1 2 3"), CumulantSeq((1, 1)))


def test_alternating_moment_with_trivial_y():
    x = CumulantSeq((0, 1, 0, 0))
    y = MomentSeq((1, 1, 1, 1))
    # y = 1, queda φ(x^n)
    assert [alternating_moment(x, y, n) for n in range(1, 5)] == [0, 1, 0, 2]


def test_alternating_moment_order_check():
    with pytest.raises(ValueError):
        alternating_moment(CumulantSeq((0, 1)), MomentSeq((1, 1, 1)), 3)


def test_scale_center_and_additive_convolution():
    r = CumulantSeq((2, 1, 3))
    assert scale_time(r, Fraction(1, 2)).values == seq(1, Fraction(1, 2), Fraction(3, 2))
    assert center(r).values == seq(0, 1, 3)
    semicircle = CumulantSeq((0, 1, 0))
    assert free_additive_convolution(semicircle, semicircle).values == seq(0, 2, 0)


def test_moment_seq_power():
    assert moment_seq_power(MomentSeq((1, 2, 3, 4, 5, 6)), 2).values == seq(2, 4, 6)
    with pytest.raises(ValueError):
        moment_seq_power(MomentSeq((1,)), 0)


def test_s_transform_of_free_poisson():
    S = s_from_r(r_series(CumulantSeq((1,) * 7)))
    assert S.coefficients == tuple(Fraction((-1) ** k) for k in range(7))


def test_r_s_round_trip():
    R = SeriesQ(seq(2, Fraction(-1, 3), 5, 0, Fraction(4, 7)))
    assert r_from_s(s_from_r(R)) == R


def test_s_transform_needs_nonzero_mean():
    with pytest.raises(SeriesNotInvertible):
        s_from_r(r_series(CumulantSeq((0, 1, 0))))


def test_multiplicative_convolution_with_unit():
    catalan_moments = MomentSeq((1, 2, 5, 14))
    unit = MomentSeq((1, 1, 1, 1))
    assert free_multiplicative_convolution(catalan_moments, unit) == catalan_moments


def test_sandwich_routes_agree():
    for values in [(1, 2, 5, 14), (2, 5, 1, 3, Fraction(1, 2))]:
        m = MomentSeq(values)
        assert sandwich_transform(m).values == m.values
        assert sandwich_s_route(m) == s_from_r(r_series(sandwich_transform(m)))
