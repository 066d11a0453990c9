import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from braidnomial.equation import build_equation
from braidnomial.errors import OutOfRange
from braidnomial.series import (
    BRANCH_AMBIGUITY,
    RADIUS_EXCEEDED,
    coincidence_identity,
    direct_coefficients,
    eval_inf_series,
    eval_p_series,
    eval_psi,
    eval_q_series,
    gamma_ratio_coefficients,
    psi_value,
)
from braidnomial.tracker import all_roots

PHASE = 0.3


def at_ratio(eq, ratio, phase=PHASE):
    return (ratio * float(eq.R)) ** (1 / eq.N) * cmath.exp(1j * phase)


def test_recurrence_matches_direct_gamma_ratios():
    args = (Fraction(1, 5), Fraction(3, 5), Fraction(1, 5), Fraction(-2, 5))
    rec, _ = gamma_ratio_coefficients(*args, 30)
    direct = direct_coefficients(*args, 30)
    assert max(abs(a - b) for a, b in zip(rec, direct)) < 1e-25


def test_inf_leading_term(quintic):
    X = at_ratio(quintic, 4)
    got = eval_inf_series(quintic, 0, X, 1).value
    # principal (-1)^(1/5) X^(7/5)
    assert abs(got - cmath.exp(1j * math.pi / 5) * X ** 1.4) < 1e-14


def test_inf_label_rotation(quintic):
    X = at_ratio(quintic, 4)
    for t in range(5):
        a = eval_inf_series(quintic, t, X, 60).value
        b = eval_inf_series(quintic, 0, X, 60, arg=cmath.phase(X) + 2 * math.pi * t).value
        assert abs(a - b) < 1e-14


def test_inf_residual_at_ratio_4(quintic):
    X = at_ratio(quintic, 4)
    for t in range(5):
        assert quintic.residual(X, eval_inf_series(quintic, t, X, 60).value) < 1e-8


def test_inf_values_are_the_five_roots(quintic):
    X = at_ratio(quintic, 4)
    vals = [eval_inf_series(quintic, t, X, 60).value for t in range(5)]
    roots = all_roots(quintic, X)
    nearest = [int(np.argmin(np.abs(roots - v))) for v in vals]
    assert sorted(nearest) == list(range(5))
    assert all(abs(roots[i] - v) < 1e-9 for i, v in zip(nearest, vals))


def test_inf_flags_outside_domain(quintic):
    ev = eval_inf_series(quintic, 0, at_ratio(quintic, 0.5), 10)
    assert not ev.domain_ok and RADIUS_EXCEEDED in ev.flags


def test_p_leading_term(quintic):
    X = at_ratio(quintic, 0.5)
    for t in range(3):
        got = eval_p_series(quintic, t, X, 1).value
        want = cmath.exp(2j * math.pi * 5 * t / 3) * X ** (5 / 3)
        assert abs(got - want) < 1e-14


def test_p_residual(quintic):
    X = at_ratio(quintic, 0.5)
    assert quintic.residual(X, eval_p_series(quintic, 1, X, 40).value) < 1e-8


def test_p_rotation_identity(quintic):
    X = at_ratio(quintic, 0.5)
    for t in range(3):
        turned = eval_p_series(quintic, t, X, 25, arg=cmath.phase(X) + 2 * math.pi).value
        assert abs(turned - eval_p_series(quintic, (t + 1) % 3, X, 25).value) < 1e-14


def test_q_leading_term(quintic):
    X = at_ratio(quintic, 0.5)
    for tp in (3, 4):
        lead = eval_q_series(quintic, tp, X, 1).value
        assert abs(abs(lead) - abs(X) ** (2 / 2)) < 1e-14


def test_q_residual_and_distinct_roots(quintic):
    X = at_ratio(quintic, 0.5)
    vals = [eval_q_series(quintic, tp, X, 40) for tp in (3, 4)]
    for v in vals:
        assert quintic.residual(X, v.value) < 1e-8
        assert BRANCH_AMBIGUITY not in v.flags
    assert abs(vals[0].value - vals[1].value) > 0.1 * abs(X)


def test_literal_q_convention_flags_ambiguity(quintic):
    X = at_ratio(quintic, 0.5)
    a, b = (eval_q_series(quintic, tp, X, 40, convention="literal") for tp in (3, 4))
    assert BRANCH_AMBIGUITY in a.flags and a.value == b.value
    # the printed form solves the equation only to about 1e-3 here
    assert quintic.residual(X, a.value) > 1e-4


def test_q_sign_for_odd_q():
    # q = 3: the continued root has leading coefficient -e(s/3), i.e. a cube root of +1 times X^(g/q)
    eq = build_equation(4, 1, 1, 5)
    assert eq.q == 3
    X = at_ratio(eq, 0.3)
    roots = all_roots(eq, X)
    for tp in range(1, 4):
        v = eval_q_series(eq, tp, X, 40).value
        assert np.min(np.abs(roots - v)) < 1e-9
        lead = eval_q_series(eq, tp, X, 1).value / X ** (1 / 3)
        assert abs(lead ** 3 - 1) < 1e-12


@pytest.mark.parametrize("fn, bad", [(eval_p_series, 3), (eval_q_series, 2), (eval_inf_series, 5)])
def test_label_ranges(quintic, fn, bad):
    with pytest.raises(OutOfRange):
        fn(quintic, bad, 0.1, 5)


def test_psi_at_zero():
    for alpha, s in ((Fraction(-1, 5), Fraction(-3, 5)), (Fraction(2, 7), Fraction(1, 3))):
        assert abs(eval_psi(alpha, s, 0, 20).value - 1) < 1e-15


def test_psi_s_zero_is_binomial():
    alpha = Fraction(2, 3)
    for k in range(10):
        x = 0.8 * cmath.exp(2j * math.pi * k / 10) * (0.3 + 0.07 * k)
        assert abs(eval_psi(alpha, 0, x, 120).value - (1 - x) ** (-2 / 3)) < 1e-12


def test_psi_value_agrees_with_series_inside_radius():
    alpha, s = Fraction(-1, 5), Fraction(-3, 5)
    x = 0.4 * cmath.exp(0.7j)
    assert abs(eval_psi(alpha, s, x, 200).value - psi_value(alpha, s, x)) < 1e-12


def test_coincidence_identity_exact(quintic):
    lhs, rhs = coincidence_identity(quintic)
    assert abs(lhs - rhs) < 1e-10
    assert abs(lhs.imag) < 1e-10 and abs(rhs.imag) < 1e-10
    # the common real value is (p/q)^(1/n)
    assert abs(lhs.real - 1.5 ** 0.2) < 1e-12


def test_coincidence_identity_partial_sums_do_not_settle(quintic):
    # the argument lies on the circle of convergence, so 80 terms leave the
    # two sides 0.079 apart with imaginary parts of about +-0.04
    lhs, rhs = coincidence_identity(quintic, K=80)
    assert abs(abs(lhs - rhs) - 0.0792) < 1e-3
    assert abs(lhs.real - rhs.real) < 1e-12
