from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from braidnomial.braids import (
    DISTINCT,
    EQUAL_BY_INVARIANTS,
    BraidWord,
    Laurent,
    burau_matrix,
    charpoly,
    compose,
    conjugation_invariants,
    cycle_type,
    figure_word_infinity,
    figure_word_zero_sigma,
    garside,
    invariants_of,
    inverse_perm,
    is_identity_burau,
    lambda_family,
    mat_mul,
    same_element,
    word_permutation,
)
from braidnomial.errors import OutOfRange, StrandMismatch


def W(n, *letters):
    return BraidWord(n, tuple(letters))


def test_lambda_family_literals():
    assert lambda_family("plain", 0, 5).letters == ()
    assert lambda_family("plain", 3, 5).letters == (3, 2, 1)
    assert lambda_family("bar", 5, 5).letters == ()
    assert lambda_family("bar", 2, 5).letters == (3, 4)
    assert lambda_family("plus", 0, 5).letters == ()
    assert lambda_family("plus", 3, 5).letters == (1, 2, 3)
    assert lambda_family("minus", 5, 5).letters == ()
    assert lambda_family("minus", 2, 5).letters == (4, 3)


@pytest.mark.parametrize("kind, arg", [("plain", 5), ("plain", -1), ("bar", 0), ("plus", 5), ("minus", 0), ("odd", 1)])
def test_lambda_family_ranges(kind, arg):
    with pytest.raises(OutOfRange):
        lambda_family(kind, arg, 5)


def test_garside_three_strands():
    assert garside(3).letters == (1, 2, 1)


def test_letter_range_checked():
    with pytest.raises(OutOfRange):
        W(3, 3)
    with pytest.raises(OutOfRange):
        W(3, 0)


def test_single_generator():
    inv = invariants_of(W(2, 1))
    assert inv.permutation == (1, 0) and inv.exponent_sum == 1


def test_full_twist_five():
    inv = invariants_of(garside(5) ** 2)
    assert inv.permutation == tuple(range(5)) and inv.exponent_sum == 20
    # reduced Burau of the full twist is t^n times the identity
    B = inv.burau
    assert all(B[i][j] == (Laurent({5: 1}) if i == j else Laurent()) for i in range(4) for j in range(4))


def test_empty_word_burau_identity():
    assert is_identity_burau(burau_matrix(W(4)))


def test_figure_words():
    fig = figure_word_zero_sigma()
    assert len(fig.letters) == 26 and invariants_of(fig).exponent_sum == 26
    # the caption word for the loop about infinity has 27 letters
    assert invariants_of(figure_word_infinity()).exponent_sum == -27


def test_same_element_examples():
    assert same_element(W(3, 1, 2, 1), W(3, 2, 1, 2)) == EQUAL_BY_INVARIANTS
    assert same_element(W(4, 1, 3), W(4, 3, 1)) == EQUAL_BY_INVARIANTS
    assert same_element(W(2, 1), W(2, -1)) == DISTINCT
    with pytest.raises(StrandMismatch):
        same_element(W(2, 1), W(3, 1))


def test_permutation_convention():
    # sigma_1 then sigma_2: the strand starting in position 0 ends in position 2
    assert word_permutation(W(3, 1, 2)) == (2, 0, 1)
    assert compose((1, 0, 2), (0, 2, 1)) == (2, 0, 1)


def test_conjugation_invariants_examples():
    c = conjugation_invariants(garside(4) ** 2)
    assert c.cycle_type == (1, 1, 1, 1) and c.exponent_sum == 12
    assert c.charpoly == charpoly(burau_matrix(garside(4) ** 2))
    assert c.charpoly == (1, Laurent({4: -3}), Laurent({8: 3}), Laurent({12: -1}))
    e = conjugation_invariants(W(5))
    assert e.cycle_type == (1,) * 5 and e.exponent_sum == 0 and e.charpoly == (1, -4, 6, -4, 1)


def test_laurent_arithmetic():
    t = Laurent({1: 1})
    assert (t * Laurent({-1: 1})) == Laurent({0: 1})
    one = Laurent({0: 1})
    assert (t + one) * (t - one) == Laurent({2: 1, 0: -1})
    assert Laurent({3: 6, 0: -4}).exact_div(2) == Laurent({3: 3, 0: -2})
    assert Laurent.t(2, 5)(2) == 20


letters = st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(n + 1), st.lists(st.integers(-n, n).filter(bool), max_size=12)))


@settings(max_examples=60, deadline=None)
@given(letters, letters)
def test_homomorphisms(a, b):
    n = a[0]
    w1 = BraidWord(n, tuple(a[1]))
    w2 = BraidWord(n, tuple(x for x in b[1] if abs(x) < n))
    i1, i2, i12 = invariants_of(w1), invariants_of(w2), invariants_of(w1 * w2)
    assert i12.exponent_sum == i1.exponent_sum + i2.exponent_sum
    assert i12.permutation == compose(i1.permutation, i2.permutation)
    assert [list(row) for row in i12.burau] == [list(row) for row in mat_mul(i1.burau, i2.burau)]
    assert is_identity_burau(burau_matrix(w1 * w1.inverse()))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 2))))
def test_braid_relation(data):
    n, i = data
    assert same_element(W(n, i, i + 1, i), W(n, i + 1, i, i + 1)) == EQUAL_BY_INVARIANTS


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
def test_full_twist_is_central(data):
    n, i = data
    full = garside(n) ** 2
    assert burau_matrix(full * W(n, i)) == burau_matrix(W(n, i) * full) != burau_matrix(W(n))


@settings(max_examples=40, deadline=None)
@given(letters, letters)
def test_conjugation_invariance(a, b):
    n = a[0]
    w = BraidWord(n, tuple(a[1]))
    g = BraidWord(n, tuple(x for x in b[1] if abs(x) < n))
    assert conjugation_invariants(g * w * g.inverse()) == conjugation_invariants(w)


def test_cycle_type_and_inverse():
    assert cycle_type((1, 0, 3, 4, 2)) == (3, 2)
    assert compose((1, 2, 0), inverse_perm((1, 2, 0))) == (0, 1, 2)
