import itertools
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from hopfcyc import hopf as hp
from hopfcyc.charmaps import (NotFlat, PreconditionFailure, abelian2_on_polynomials, certify, char_map_tau,
                              check_flat, check_trace, conjugation_algebra, constant_term, corrupt,
                              cyclic_module_map_check, descent_check, gamma_face_check, gamma_tau, lie_char_map,
                              monomial_coefficient, require, sl2_on_m2, sl2_on_polynomials, abelian2_on_m2)
from hopfcyc.cocyclic import CocyclicModule
from hopfcyc.lie import wedge_basis
from hopfcyc.verify import cyclic_cocycles

Z3 = hp.cyclic_group(3)
A3, TAU3 = conjugation_algebra(Z3)


def direct_k(G, c):
    """tau(a0 (g1 a1 g1^-1) .. (gn an gn^-1)) straight from the table."""
    t, inv = G.table, G.inv
    n = len(next(iter(c)))
    out = {}
    for a in itertools.product(range(G.n), repeat=n + 1):
        tot = 0
        for gs, coef in c.items():
            x = a[0]
            for g, ai in zip(gs, a[1:]):
                x = t[x][t[t[g][ai]][inv[g]]]
            if x == G.e:
                tot += coef
        if tot:
            out[a] = Fraction(tot)
    return out


def test_conjugation_algebra_is_flat_and_traced():
    for G in (Z3, hp.symmetric_group3()):
        A, tau = conjugation_algebra(G)
        check_flat(A)
        r = check_trace(A, tau, hp.counit_character(G))
        assert r["trace"] and r["invariant"]


def test_z3_has_no_level_one_cyclic_cocycles():
    assert cyclic_cocycles(CocyclicModule(Z3, "localized"), 1) == []
    assert len(cyclic_cocycles(CocyclicModule(Z3, "localized"), 2)) == 2


@pytest.mark.parametrize("j", [0, 1])
def test_char_map_of_cocycles(j):
    c = cyclic_cocycles(CocyclicModule(Z3, "localized"), 2)[j]
    r = char_map_tau(A3, TAU3, c)
    cert = r["certificates"]
    assert cert["input cyclic cocycle"] and cert["output cyclic cocycle"]
    assert r["cochain"] == direct_k(Z3, c)


@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                       st.fractions(-3, 3, max_denominator=2), min_size=1, max_size=4))
def test_char_map_matches_direct_formula(c):
    c = {k: v for k, v in c.items() if v}
    if not c:
        return
    assert char_map_tau(A3, TAU3, c)["cochain"] == direct_k(Z3, c)


def test_non_cocycle_input_is_flagged():
    r = char_map_tau(A3, TAU3, {(1,): Fraction(1)})
    cert = r["certificates"]
    assert not cert["input cyclic cocycle"]
    assert not (cert["b-closed"] and cert["lambda-invariant"])


def test_level_wise_commutation():
    assert cyclic_module_map_check(A3, TAU3, n_max=2)["ok"]
    assert gamma_face_check(A3, TAU3)["ok"]
    assert descent_check(A3, TAU3)


@pytest.mark.parametrize("mk", [sl2_on_m2, abelian2_on_m2], ids=["sl2", "abelian2"])
def test_lie_char_map_equals_composite(mk):
    B, t = mk()
    check_flat(B)
    for n in (1, 2):
        for w in wedge_basis(B.H.dim, n):
            assert lie_char_map(B, t, {w: Fraction(1)})["certificates"]["equals k(A x)"]


def test_lie_non_cycle_fails_lambda_invariance():
    B, t = sl2_on_m2()
    r = lie_char_map(B, t, {(0, 1): Fraction(1)})
    cert = r["certificates"]
    assert not cert["Lie cycle"]
    assert cert["b-closed"] and not cert["lambda-invariant"]


def test_twisted_trace_on_polynomials():
    # abelian2 acts by Euler operators; the xy-coefficient is a delta-trace for delta = (1, 1)
    A = abelian2_on_polynomials(2)
    check_flat(A)
    tau = monomial_coefficient(A, (1, 1))
    dv = {0: Fraction(1), 1: Fraction(1)}
    delta = A.H.linear_character(dv)
    r = check_trace(A, tau, delta)
    assert r["trace"] and r["invariant"]
    good = lie_char_map(A, tau, {(0,): Fraction(1), (1,): Fraction(-1)}, dv)["certificates"]
    assert good["Lie cycle"] and good["b-closed"] and good["lambda-invariant"]
    bad = lie_char_map(A, tau, {(0,): Fraction(1)}, dv)["certificates"]
    assert not bad["Lie cycle"] and not bad["lambda-invariant"]


def test_constant_term_gives_zero_cochains():
    # derivations kill constants and raise nothing into degree 0
    A = sl2_on_polynomials(2)
    tau = constant_term(A)
    for w in wedge_basis(3, 1) + wedge_basis(3, 2):
        assert not lie_char_map(A, tau, {w: Fraction(1)})["cochain"]


def test_corrupted_action_rejected():
    B = corrupt(A3, 1, 0, 1)
    with pytest.raises(NotFlat):
        check_flat(B)
    with pytest.raises(PreconditionFailure):
        require(B, TAU3, None, 2)


def test_gamma_on_plain_module():
    # gamma(e) = tau(a0): the trace itself
    assert gamma_tau(A3, TAU3, {(Z3.e,): Fraction(1)}) == {(Z3.e,): Fraction(1)}


def test_certify_detects_non_trace():
    # on Z3 every functional is a trace; on S3 a point mass on a transposition is not
    S3 = hp.symmetric_group3()
    A, _ = conjugation_algebra(S3)
    assert certify(A3, 0, {(1,): Fraction(1)}) == {"b-closed": True, "lambda-invariant": True}
    assert certify(A, 0, {(1,): Fraction(1)}) == {"b-closed": False, "lambda-invariant": True}
