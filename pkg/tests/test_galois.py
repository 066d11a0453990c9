import math
import random

import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from braidnomial.equation import build_equation
from braidnomial.errors import DegreeMismatch
from braidnomial.galois import (
    block_action,
    block_systems,
    check_corollaries,
    group_from_generators,
    preserves,
    sheet_partition,
    stabilizer_chain,
)
from braidnomial.loops import LoopSpec, product_path
from braidnomial.predictor import predict
from braidnomial.tracker import label_base_roots, trace_loop


def loops(eq):
    return [LoopSpec("around_omega", l) for l in range(eq.N)] + [LoopSpec("around_infinity")]


def predicted_generators(eq):
    return [predict(eq, lp).permutation for lp in loops(eq)]


def empirical_generators(eq):
    base = label_base_roots(eq)
    return [trace_loop(eq, product_path(eq, [lp]), base).endpoint_permutation() for lp in loops(eq)]


def test_s3():
    rep = group_from_generators([(1, 0, 2), (1, 2, 0)])
    assert rep.order == 6 and rep.transitive and rep.block_systems == []
    assert rep.verdicts["is_symmetric"]


def test_cyclic_group_blocks():
    rep = group_from_generators([(1, 2, 3, 4, 5, 0)])
    assert rep.order == 6
    # divisors 2 and 3 of 6 give the two nontrivial block systems
    assert sorted(len(b) for b in rep.block_systems) == [2, 3]


def test_identity_group():
    rep = group_from_generators([(0, 1, 2, 3)])
    assert rep.order == 1 and not rep.transitive and not any(rep.verdicts.values())


def test_degree_mismatch(quintic):
    with pytest.raises(DegreeMismatch):
        check_corollaries(quintic, [(1, 0, 2)])


def test_orders_agree_with_sympy():
    rng = random.Random(7)
    for _ in range(40):
        d = rng.randint(2, 9)
        gens = []
        for _ in range(rng.randint(1, 3)):
            p = list(range(d))
            rng.shuffle(p)
            gens.append(tuple(p))
        assert stabilizer_chain(gens, d).order == PermutationGroup([Permutation(list(g)) for g in gens]).order()


def test_quintic_is_symmetric(quintic):
    rep = check_corollaries(quintic, predicted_generators(quintic))
    assert rep.order == 120 and rep.verdicts["is_symmetric"] and rep.verdicts["expected"]


@pytest.mark.parametrize("key, order", [
    ((5, 3, 2, 7), 120),
    ((4, 1, 2, 5), 24),
    ((6, 2, 1, 2), 24),
    ((9, 3, 1, 2), 162),
    ((12, 4, 1, 2), 192),
])
def test_predicted_and_empirical_orders(key, order):
    eq = build_equation(*key)
    pred = check_corollaries(eq, predicted_generators(eq))
    emp = check_corollaries(eq, empirical_generators(eq))
    assert pred.order == emp.order == order
    sympy_order = PermutationGroup([Permutation(list(g)) for g in empirical_generators(eq)]).order()
    assert sympy_order == order


def test_non_coprime_block_structure():
    eq = build_equation(6, 2, 1, 2)
    gens = empirical_generators(eq)
    part = sheet_partition(eq)
    assert part == ((0, 1), (2, 3), (4, 5))
    assert preserves(gens, part)
    assert group_from_generators(block_action(gens, part)).order == 6
    rep = check_corollaries(eq, gens)
    assert rep.verdicts["order_is_m^(n-1)n!"] and not rep.verdicts["order_is_m^n n!"]
    assert part in [tuple(tuple(b) for b in s) for s in block_systems(gens, 6)]


def test_order_formula_across_m():
    # measured orders follow m^(n-1) n! * m / gcd(m, r)
    for key in [(6, 2, 1, 2), (9, 3, 1, 2), (12, 4, 1, 2), (10, 4, 1, 4)]:
        eq = build_equation(*key)
        want = eq.m ** (eq.n - 1) * math.factorial(eq.n) * eq.m // math.gcd(eq.m, eq.r)
        assert check_corollaries(eq, predicted_generators(eq)).order == want
