from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from hopfcyc import hopf as hp
from hopfcyc.weil import (NotClosedUnderStructureMaps, Weil, beta_alpha_report, ch_cs_classes, check_contraction,
                          check_cyclic_operators, check_differentials, cohomology, cs_rank_report, exactness_report,
                          homotopy_report, hc_reference, s_operator_report, tower_check)
from oracles import GroupCocyclic

PT = hp.one_grouplike()
Z2 = hp.cyclic_group(2)
W_PT = Weil(PT, 6)
W_Z2 = Weil(Z2, 5)


@st.composite
def weil_element(draw, W, max_m=None):
    m = draw(st.integers(1, (max_m or W.Dtot) - 1))
    words = W.words_range(m)
    ks = draw(st.lists(st.sampled_from(words), min_size=1, max_size=4))
    cs = draw(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=len(ks), max_size=len(ks)))
    x = {}
    for k, c in zip(ks, cs):
        x[k] = x.get(k, 0) + c
    return {k: c for k, c in x.items() if c}


@pytest.mark.parametrize("W", [W_PT, W_Z2], ids=["point", "Z2"])
def test_differentials_and_cyclic_operators(W):
    assert all(r["ok"] for r in check_differentials(W).values())
    assert all(r["ok"] for r in check_cyclic_operators(W).values())
    assert check_contraction(W)["ok"]


@given(weil_element(W_Z2))
def test_contraction_on_elements(x):
    W = W_Z2
    lhs = W.H(W.dW(x))
    for k, c in W.dW(W.H(x)).items():
        lhs[k] = lhs.get(k, 0) + c
    assert {k: c for k, c in lhs.items() if c} == x


@given(weil_element(W_Z2, 4))
def test_d_squared_on_elements(x):
    W = W_Z2
    assert not W.dW(W.dW(x))
    assert not W.b(W.b(x))
    assert not W.N(W.one_minus_t(x))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_sequences_and_cs(n):
    assert exactness_report(W_PT, n)["ok"]
    assert cs_rank_report(W_PT, n)["ok"]


def test_chern_classes_and_S():
    W = Weil(PT, 8)
    assert ch_cs_classes(W, PT.e, 2)["ok"]
    assert s_operator_report(W, PT.e, 0)["ok"]


def test_homotopy_operators():
    W = Weil(PT, 7)
    assert homotopy_report(W, 2)["ok"]
    for n in (1, 2):
        assert beta_alpha_report(W, n)["ok"]


# known cyclic cohomology: a point has HC^even = 1; the coalgebra C[Z2] is dual to
# functions on two points, HC^even = 2; C[Z2] localized at eps has HC^even = 1
@pytest.mark.parametrize("C,delta,even", [(PT, None, 1), (Z2, None, 2), (Z2, "eps", 1)],
                         ids=["point", "Z2", "Z2/eps"])
def test_tower_against_known_hc(C, delta, even):
    d = hp.counit_character(C) if delta else None
    W = Weil(C, 8, d)
    t = tower_check(W, 2, 6)
    assert t["ok"]
    for n, row in t["table"].items():
        for k, v in row.items():
            want = even if k - 2 * n >= 0 and (k - 2 * n) % 2 == 0 else 0
            assert v["H^(k+1)(W_n)"] == want


def test_hc_reference_against_bruteforce():
    assert hc_reference(Z2, hp.counit_character(Z2), 4) == GroupCocyclic(Z2.table).hc_dims(4)


def test_wnat_cohomology_vanishes_in_positive_degree():
    for m in range(1, 5):
        assert cohomology(W_PT, "Wnat", m) == 0


def test_uq_truncation_rejected():
    with pytest.raises(NotClosedUnderStructureMaps):
        Weil(hp.UqSl2(Fraction(3, 2)), 4)
