from fractions import Fraction

import pytest
from sympy import Poly

from app.core.errors import ClosedFormNotAvailable, CrossingPartitionError
from app.models.partition import SetPartition
from app.models.polynomial import T, X
from app.models.process import ProcessModel
from app.models.sequences import MomentSeq
from app.services import measures
from app.services.partitions import enumerate_all, enumerate_noncrossing, parse_partition


def P(text):
    return parse_partition(text)


SEMI = ProcessModel.semicircular(2)
POISSON = ProcessModel.free_poisson(Fraction(3, 2))


# === St_π y Pr_π ===

def test_st_expectation_basics():
    assert measures.st_expectation(P("1 3|2 4"), POISSON) == 0
    assert measures.st_expectation(SetPartition.one(3), POISSON) == Fraction(3, 2)
    assert measures.st_expectation(SetPartition.zero(2), ProcessModel.free_poisson(1, centered=True)) == 0


def test_pr_expectation_is_moment_on_zero():
    assert measures.pr_expectation(SetPartition.zero(2), ProcessModel.semicircular(3)) == 3
    assert measures.pr_expectation(SetPartition.zero(4), ProcessModel.semicircular(3)) == 18


def test_pr_of_full_block_equals_st():
    one = SetPartition.one(3)
    assert measures.pr_expectation(one, POISSON) == measures.st_expectation(one, POISSON)


@pytest.mark.parametrize("text", ["1 2|3", "1 4|2 3", "1|2|3|4", "1 2 3"])
def test_st_pr_tables_invert_each_other(text):
    pi = P(text)
    assert measures.substitute(measures.st_from_pr(pi), measures.pr_from_st) == {pi: Fraction(1)}
    assert measures.substitute(measures.pr_from_st(pi), measures.st_from_pr) == {pi: Fraction(1)}


def test_tables_evaluate_consistently():
    pi = P("1 2|3|4")
    assert measures.evaluate_combination(measures.st_from_pr(pi), POISSON, "pr") == measures.st_expectation(pi, POISSON)


def test_multiplicativity():
    assert measures.multiplicativity_check(P("1 3|2"), POISSON)
    assert measures.multiplicativity_check(P("1 2|3 4"), SEMI)


# === Medidas diagonales ===

def test_diagonal_cumulants():
    assert measures.diagonal_cumulant(3, 2, POISSON) == Fraction(3, 2)
    assert measures.diagonal_cumulant(1, 2, SEMI) == 2
    assert measures.diagonal_cumulant(1, 3, SEMI) == 0
    compound = ProcessModel.compound_poisson(MomentSeq((1, 2, 3, 4)), t=Fraction(1, 2))
    assert measures.diagonal_cumulant(2, 2, compound) == 2
    assert measures.diagonal_cumulant_via_generator(2, 2, compound) == 2


def test_delta_word_moments():
    assert measures.delta_word_moment([1, 1], ProcessModel.semicircular(3)) == 3
    assert measures.delta_word_moment([1, 1, 2], SEMI) == 4
    assert measures.delta_word_moment([1, 2], ProcessModel.free_poisson(2)) == 6


@pytest.mark.parametrize("word", [(1,), (2, 1), (1, 2, 1), (3, 1, 1, 2), (1, 1, 1, 1, 1), (2, 2, 1, 3)])
def test_word_recursion_matches_enumeration(word):
    for proc in (SEMI, POISSON, ProcessModel.compound_poisson(MomentSeq(tuple(range(1, 13))), t=Fraction(1, 3))):
        assert measures.delta_word_moment(word, proc) == measures.delta_word_moment(word, proc, method="enumerate")


def test_word_limit_from_oracle():
    proc = ProcessModel.free_poisson(2)
    for word in [(1, 2), (2, 1, 1), (1, 1, 1)]:
        assert measures.word_limit_from_oracle(word, proc) == measures.delta_word_moment(word, proc)


def test_free_poisson_words_do_not_depend_on_indices():
    proc = ProcessModel.free_poisson(2)
    assert measures.delta_word_moment([1, 1, 1], proc) == measures.delta_word_moment([3, 1, 2], proc)


def test_delta_word_rejects_zero_index():
    with pytest.raises(ValueError):
        measures.delta_word_moment([1, 0], SEMI)


# === Oráculo de N finito ===

def test_finite_n_laurent_crossing_pair():
    laurent = measures.finite_n_laurent(P("1 3|2 4"), [1, 1, 1, 1], ProcessModel.free_poisson(1))
    assert laurent.to_json() == {"-1": "2", "-2": "-1", "-3": "-1"}
    assert laurent.limit_at_infinity() == 0


def test_finite_n_laurent_full_block():
    laurent = measures.finite_n_laurent(SetPartition.one(2), [1, 1], ProcessModel.free_poisson(2))
    assert laurent.to_json() == {"0": "2", "-1": "4"}


def test_finite_n_expectation():
    pi = P("1 3|2 4")
    proc = ProcessModel.free_poisson(1)
    assert measures.finite_n_expectation(pi, [1] * 4, proc, 1) == 0
    assert measures.finite_n_expectation(pi, [1] * 4, proc, 2) == Fraction(2, 2) - Fraction(1, 4) - Fraction(1, 8)
    with pytest.raises(ValueError):
        measures.finite_n_expectation(pi, [1] * 4, proc, 0)


@pytest.mark.parametrize("n", range(1, 5))
def test_finite_n_limit_is_st(n):
    for pi in enumerate_all(n):
        laurent = measures.finite_n_laurent(pi, [1] * n, POISSON)
        assert laurent.limit_at_infinity() == measures.st_expectation(pi, POISSON)


@pytest.mark.parametrize("text", ["1 3|2 4", "1 3 5|2 4 6", "1 4|2 5|3 6", "1 2|3 4"])
def test_vanishing_order(text):
    assert measures.vanishing_order_check(P(text))


def test_inner_singleton_vanishing():
    centered = ProcessModel.free_poisson(2, centered=True)
    assert measures.inner_singleton_vanishing(P("1 3|2"), centered) == 0
    assert measures.inner_singleton_vanishing(P("1 4|2 3"), centered) == 4
    with pytest.raises(ValueError):
        measures.inner_singleton_vanishing(P("1 3|2"), POISSON)


# === Formas cerradas ===

def test_brownian_product_forms():
    assert measures.brownian_product_measure(SetPartition.zero(3)).x_power == 3
    pairs = measures.brownian_product_measure(P("1 2|3 4"))
    assert (pairs.status, pairs.x_power, pairs.t_power) == ("closed", 0, 2)
    triple = measures.brownian_product_measure(P("1 2 3"))
    assert triple.is_zero() and triple.zero_power == 1
    assert measures.brownian_product_measure(P("1 3|2")).is_zero()
    with pytest.raises(ClosedFormNotAvailable):
        measures.brownian_product_measure(P("1 4|2|3"))
    with pytest.raises(CrossingPartitionError):
        measures.brownian_product_measure(P("1 3|2 4"))


@pytest.mark.parametrize("n", range(1, 7))
def test_brownian_form_matches_pr(n):
    for pi in enumerate_noncrossing(n):
        try:
            form = measures.brownian_product_measure(pi)
        except ClosedFormNotAvailable:
            continue
        assert measures.brownian_product_expectation(form, SEMI) == measures.pr_expectation(pi, SEMI)


def test_poisson_separation_predicate():
    assert measures.poisson_separation_predicate(P("1 2|3 4"))
    assert measures.poisson_separation_predicate(P("1 3 5|2|4"))
    assert not measures.poisson_separation_predicate(P("1 5|2|3|4"))


def test_poisson_product_form():
    form = measures.poisson_product_measure(P("1 3|2"))
    assert (form.x_power, form.t_power) == (1, 1)
    assert form.polynomial == Poly(X * (1 + T), X, T, domain="QQ")
    assert measures.poisson_product_measure(P("1 5|2|3|4")).status == "not-covered"


@pytest.mark.parametrize("n", range(1, 6))
def test_poisson_form_matches_pr(n):
    for pi in enumerate_noncrossing(n):
        form = measures.poisson_product_measure(pi)
        if form.status == "not-covered":
            continue
        assert measures.poisson_product_expectation(form, POISSON) == measures.pr_expectation(pi, POISSON)


# === Itô ===

def test_ito_expand():
    assert len(measures.ito_expand(SetPartition.zero(2))) == 2
    assert measures.ito_expand(SetPartition.one(3)) == [SetPartition.zero(3)]
    assert {str(s) for s in measures.ito_expand(P("1 2|3"))} == {"1|2|3", "1 3|2", "1|2 3"}


@pytest.mark.parametrize("text", ["1 2|3", "1 3|2 4", "1 2 3|4", "1|2|3"])
def test_ito_routes_agree(text):
    pi = P(text)
    for proc in (SEMI, POISSON):
        direct = measures.ito_expectation(pi, proc)
        assert direct == measures.ito_mobius_expectation(pi, proc)
        assert direct == measures.ito_orthogonality_expectation(pi, proc)


# === Sándwich ===

def test_sandwich_limit():
    limit = measures.sandwich_limit([1, 1], [5])
    assert (limit.coefficient, limit.diagonal_index) == (5, 2)
    assert measures.sandwich_limit_expectation(limit, ProcessModel.free_poisson(2)) == 10
    assert measures.sandwich_limit([3], []).diagonal_index == 3
    assert measures.sandwich_limit([1, 2, 1], [0, 7]).coefficient == 0
    with pytest.raises(ValueError):
        measures.sandwich_limit([1, 1], [])


def test_sandwich_limit_does_not_depend_on_the_process():
    with pytest.raises(TypeError):
        measures.sandwich_limit([1, 1], [5], SEMI)
    limit = measures.sandwich_limit([2, 1], [3])
    assert measures.sandwich_limit_expectation(limit, SEMI) == 0
    assert measures.sandwich_limit_expectation(limit, POISSON) == Fraction(9, 2)
