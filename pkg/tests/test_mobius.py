from fractions import Fraction
from math import factorial

import pytest

from app.core import config
from app.core.errors import CrossingPartitionError, NotInInterval
from app.models.partition import SetPartition
from app.models.process import ProcessModel
from app.services.measures import ito_mobius_expand, pr_expectation
from app.services.mobius import LatticeService, lattice_service, lower_set, mobius_nc, mobius_p, upper_set
from app.services.partitions import catalan, enumerate_all, enumerate_noncrossing, is_noncrossing, parse_partition
from app.services.partitions import catalan, enumerate_all, enumerate_noncrossing, is_noncrossing, parse_partition


@pytest.mark.parametrize("n", range(1, 7))
def test_mobius_closed_forms(n):
    zero, one = SetPartition.zero(n), SetPartition.one(n)
    sign = (-1) ** (n - 1)
    assert mobius_p(zero, one) == sign * factorial(n - 1)
    assert mobius_nc(zero, one) == sign * catalan(n - 1)


def test_mobius_on_a_cover_is_minus_one():
    assert mobius_nc(SetPartition.zero(3), parse_partition("1 2|3")) == -1
    assert mobius_p(parse_partition("1|2|3|4"), parse_partition("1 2|3|4")) == -1


def test_mobius_diagonal_is_one():
    pi = parse_partition("1 4|2 3")
    assert mobius_nc(pi, pi) == 1


def test_not_in_interval():
    with pytest.raises(NotInInterval):
        mobius_p(parse_partition("1 2|3"), parse_partition("1|2 3"))


def test_nc_lattice_rejects_crossing():
    with pytest.raises(CrossingPartitionError):
        mobius_nc(SetPartition.zero(4), parse_partition("1 3|2 4"))


def test_upper_and_lower_sets():
    pi = parse_partition("1 2|3 4")
    assert len(lower_set(pi, "p")) == 4
    assert len(upper_set(pi, "p")) == 2
    above = upper_set(parse_partition("1 3|2|4"), "nc")
    assert SetPartition.one(4) in above
    assert all(len(s) <= 3 for s in above)


def test_noncrossing_above_crossing_partition():
    above = lattice_service.noncrossing_above(parse_partition("1 3|2 4"))
    assert above == [SetPartition.one(4)]


def test_ito_mobius_coefficients_on_full_block():
    coefficients = sorted(c for c, _ in ito_mobius_expand(SetPartition.one(3)))
    assert coefficients == [Fraction(-1)] * 3 + [Fraction(1), Fraction(2)]


def test_ito_mobius_uses_full_lattice_for_crossing():
    pi = parse_partition("1 3|2 4")
    expansion = dict((s, c) for c, s in ito_mobius_expand(pi))
    assert expansion[pi] == 1
    with pytest.raises(CrossingPartitionError):
        ito_mobius_expand(pi, lattice="nc")


# === Conjuntos superiores en NC ===

@pytest.mark.parametrize("n", range(1, 6))
def test_noncrossing_above_matches_filtered_upper_set(n):
    for pi in enumerate_all(n):
        expected = [s for s in upper_set(pi, "p") if is_noncrossing(s)]
        assert lattice_service.noncrossing_above(pi) == expected


@pytest.fixture
def small_all_cap(monkeypatch):
    monkeypatch.setitem(config.DEFAULT_CAPS, "all", 3)
    config.get_settings.cache_clear()
    yield
    config.get_settings.cache_clear()


def test_pr_expectation_stays_inside_noncrossing(small_all_cap):
    # φ(Pr_0̂) en el semicírculo cuenta los emparejamientos noncrossing de 6 puntos
    assert pr_expectation(SetPartition.zero(6), ProcessModel.semicircular(1)) == 5
    above = upper_set(parse_partition("1 2|3|4|5|6"), "nc")
    assert len(above) == len(set(above)) and SetPartition.one(6) in above


# === Inversión de Möbius ===

def _elements(n, lattice):
    return list(enumerate_all(n) if lattice == "p" else enumerate_noncrossing(n))


@pytest.mark.parametrize("lattice", ["p", "nc"])
@pytest.mark.parametrize("n", range(1, 5))
def test_mobius_inversion_round_trip(lattice, n):
    elements = _elements(n, lattice)
    f = {s: Fraction(i * i + 1, i + 2) for i, s in enumerate(elements)}
    g = {pi: sum((f[s] for s in lower_set(pi, lattice)), Fraction(0)) for pi in elements}
    for pi in elements:
        recovered = sum(
            (lattice_service.mobius(s, pi, lattice) * g[s] for s in lower_set(pi, lattice)),
            Fraction(0),
        )
        assert recovered == f[pi]


@pytest.mark.parametrize("lattice", ["p", "nc"])
@pytest.mark.parametrize("n", range(1, 6))
def test_mobius_sums_over_upper_set(lattice, n):
    one = SetPartition.one(n)
    for pi in _elements(n, lattice):
        total = sum(lattice_service.mobius_table(pi, one, lattice).values(), Fraction(0))
        assert total == (1 if pi == one else 0)


# === Caché ===

def test_mobius_cache_is_bounded():
    service = LatticeService(cache_size=2)
    one = SetPartition.one(3)
    tables = [service.mobius_table(SetPartition.zero(3), one, lat) for lat in ("p", "nc")]
    assert service.mobius_table(SetPartition.zero(3), one, "p") is tables[0]
    service.mobius_table(parse_partition("1 2|3"), one, "p")
    assert service.mobius_table.cache_info().currsize == 2
    service.clear()
    assert service.mobius_table.cache_info().currsize == 0
