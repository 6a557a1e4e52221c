from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given
from sympy.combinatorics import Permutation

from hopfcyc import hopf as hp
from hopfcyc.cocyclic import build_sharp_delta
from hopfcyc.lie import antisymmetrize, d_lie, lie_quasi_iso_check, perm_sign, wedge_basis, wedge_normal
from hopfcyc.verify import lie_homology_dims
from oracles import ce_homology

LIES = [hp.abelian2(), hp.heisenberg3(), hp.sl2()]
DELTAS = {"abelian2": {0: 1}, "heisenberg3": {0: 1}, "sl2": None}


@given(st.permutations(range(6)))
def test_perm_sign_matches_sympy(p):
    assert perm_sign(p) == Permutation(list(p)).signature()


@given(st.lists(st.integers(0, 4), min_size=0, max_size=4))
def test_wedge_normal(idx):
    s, key = wedge_normal(tuple(idx))
    if len(set(idx)) < len(idx):
        assert s == 0
    else:
        assert key == tuple(sorted(idx))
        order = sorted(range(len(idx)), key=lambda i: idx[i])
        assert s == (Permutation(order).signature() if idx else 1)


@pytest.mark.parametrize("g", LIES, ids=lambda g: g.name)
def test_quasi_iso_trivial_delta(g):
    assert lie_quasi_iso_check(g, None, 3)["ok"]


@pytest.mark.parametrize("g", [g for g in LIES if DELTAS[g.name]], ids=lambda g: g.name)
def test_quasi_iso_nonzero_delta(g):
    assert lie_quasi_iso_check(g, DELTAS[g.name], 3)["ok"]


@pytest.mark.parametrize("g", LIES, ids=lambda g: g.name)
def test_ce_dims_against_sympy(g):
    assert lie_homology_dims(g) == ce_homology(g.dim, g.br)
    if DELTAS[g.name]:
        assert lie_homology_dims(g, DELTAS[g.name]) == ce_homology(g.dim, g.br, DELTAS[g.name])


def test_known_lie_homology():
    assert ce_homology(2, {}) == {0: 1, 1: 2, 2: 1}
    assert ce_homology(3, {(0, 1): {2: 1}}) == {0: 1, 1: 2, 2: 2, 3: 1}
    assert lie_homology_dims(hp.sl2()) == {0: 1, 1: 0, 2: 0, 3: 1}


wedges = st.dictionaries(st.sampled_from([w for n in range(4) for w in wedge_basis(3, n)]),
                         st.fractions(-3, 3, max_denominator=2), max_size=4)


@given(wedges)
def test_d_lie_squares_to_zero(x):
    h = hp.heisenberg3()
    for g, dv in ((h, {0: Fraction(1)}), (hp.sl2(), {})):
        assert not d_lie(g, dv, d_lie(g, dv, x))


@given(wedges)
def test_antisymmetrization_is_b_closed(x):
    g = hp.sl2()
    M = build_sharp_delta(g, D=3)
    for n in range(4):
        part = {w: c for w, c in x.items() if len(w) == n and c}
        assert not M.hochschild_b(n, antisymmetrize(g, part))


def test_sl2_delta_rejected():
    with pytest.raises(hp.CharacterNotOnAbelianization):
        lie_quasi_iso_check(hp.sl2(), {2: 1})
