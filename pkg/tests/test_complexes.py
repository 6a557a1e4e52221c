import math
from fractions import Fraction

import pytest

from hopfcyc import hopf as hp
from hopfcyc.cocyclic import build_sharp_delta
from hopfcyc.complexes import (NotIntegral, averaging, check_left_integral, cotor, cyclic_and_periodic, group_haar,
                               haar_contraction_check, hochschild, mixed_complex_check, uq_cotor_classes,
                               uq_cyclic_core)
from oracles import GroupCocyclic

GROUPS = [hp.cyclic_group(2), hp.cyclic_group(3), hp.symmetric_group3()]


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_group_hh_hc_against_bruteforce(G):
    n_hh, n_hc = (3, 4) if G.n < 6 else (2, 3)
    O = GroupCocyclic(G.table)
    M = build_sharp_delta(G)
    assert hochschild(M, n_hh).dims == O.hh_dims(n_hh)
    assert cyclic_and_periodic(M, n_hc).dims == O.hc_dims(n_hc)


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_group_mixed_complex(G):
    assert all(mixed_complex_check(build_sharp_delta(G), 2).values())


@pytest.mark.parametrize("d", [1, 2, 3])
def test_symmetric_per_weight_binomial(d):
    bw = hochschild(build_sharp_delta(hp.symmetric_algebra(d), D=4), 4, D=4).extra["by_weight"]
    for w in range(5):
        for n in range(5):
            assert bw[w][n] == (math.comb(d, n) if n == w else 0)


def test_symmetric_mixed_complex():
    M = build_sharp_delta(hp.symmetric_algebra(2), D=3)
    assert all(mixed_complex_check(M, 2, 3).values())


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_haar_contraction(G):
    res = haar_contraction_check(G, group_haar(G), 3)
    assert all(r["ok"] for r in res.values())


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_uniform_average_is_not_an_integral(G):
    # the constant functional 1/|G| is the Haar measure on functions, not on C[G]
    with pytest.raises(NotIntegral):
        check_left_integral(G, averaging(G.n))
    with pytest.raises(NotIntegral):
        haar_contraction_check(G, averaging(G.n), 1)


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_group_cotor_cosemisimple(G):
    for a in range(G.n):
        for b in (G.e, a):
            dims = cotor(G, a, b, 2).dims
            assert dims == {0: int(a == b), 1: 0, 2: 0}


def test_uq_core_and_cotor_classes():
    U = hp.UqSl2(Fraction(3, 2))
    core = uq_cyclic_core(U)
    assert core["ok"] and core["HC0"] == 0
    cls = uq_cotor_classes(U)
    assert all(cls["cocycles"].values()) and cls["independent"]


@pytest.mark.parametrize("q", [Fraction(3, 2), Fraction(2), Fraction(-5, 3)])
def test_uq_core_other_q(q):
    assert uq_cyclic_core(hp.UqSl2(q))["ok"]


def test_lie_hp_window_small():
    win = cyclic_and_periodic(build_sharp_delta(hp.abelian2(), D=2), 5).extra["hp_window"]
    assert (win["even"]["dim"], win["odd"]["dim"]) == (2, 2)
