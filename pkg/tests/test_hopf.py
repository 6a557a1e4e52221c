import itertools
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given
from sympy.combinatorics import Permutation

from hopfcyc import hopf as hp

Q32 = Fraction(3, 2)

FINITE = [hp.cyclic_group(2), hp.cyclic_group(3), hp.symmetric_group3(), hp.one_grouplike()]
GRADED = [(hp.symmetric_algebra(d), 4) for d in (1, 2, 3)] + [(g, 4) for g in (hp.abelian2(), hp.heisenberg3(), hp.sl2())]


@pytest.mark.parametrize("H", FINITE, ids=lambda H: H.name)
def test_axioms_finite(H):
    assert hp.check_hopf_axioms(H)["passed"]
    assert hp.check_twisted_identities(H, hp.counit_character(H))["passed"]


@pytest.mark.parametrize("H,D", GRADED, ids=lambda x: getattr(x, "name", str(x)))
def test_axioms_graded(H, D):
    assert hp.check_hopf_axioms(H, D)["passed"]
    assert hp.check_twisted_identities(H, hp.counit_character(H), D)["passed"]


def test_axioms_uq():
    U = hp.UqSl2(Q32)
    assert hp.check_hopf_axioms(U, 3)["passed"]
    for d in (U.character(), U.character(-1)):
        assert hp.check_twisted_identities(U, d, 3)["passed"]


def test_s3_matches_permutation_composition():
    # oracle: sympy permutations, labels are images of 0,1,2
    G = hp.symmetric_group3()
    perms = [Permutation([int(c) for c in lab]) for lab in G.labels]
    # the table composes as functions, (ab)(i) = a(b(i)); sympy's p*q applies p first
    for a, b in itertools.product(range(6), repeat=2):
        assert perms[G.table[a][b]] == perms[b] * perms[a]
    sgn = hp.sign_character(G)
    assert [sgn(g) for g in range(6)] == [p.signature() for p in perms]


@pytest.mark.parametrize("H,D", [(G, None) for G in FINITE] + GRADED + [(hp.UqSl2(Q32), 2)],
                         ids=lambda x: getattr(x, "name", str(x)))
@given(seed=st.integers(0, 10**6))
def test_sampled_identities(H, D, seed):
    assert hp.sample_identities(H, D, seed, count=3)["passed"]


def test_uq_relations():
    U = hp.UqSl2(Q32)
    q = U.q
    x, y, s = {U.X: 1}, {U.Y: 1}, {U.K: 1}
    assert U.Mul(s, x) == hp.scale(U.Mul(x, s), q * q)
    assert U.Mul(s, y) == hp.scale(U.Mul(y, s), 1 / (q * q))
    s2 = U.Mul(s, s)
    lhs = U.Mul(y, x)
    rhs = hp.sub(hp.scale(U.Mul(x, y), q * q), hp.scale(hp.sub(s2, U.one()), 1 / (q - 1 / q)))
    assert lhs == rhs


@pytest.mark.parametrize("q", [0, 1, -1])
def test_uq_bad_q(q):
    with pytest.raises(hp.BadParameter):
        hp.UqSl2(q)


def test_involutive_and_modular():
    U = hp.UqSl2(Q32)
    assert not hp.check_involutive(U, U.character(), 2)["holds"]
    hp.check_modular_pair(U, U.character(), U.K, 2)
    with pytest.raises(hp.HopfError):
        hp.check_modular_pair(U, U.character(), (0, 0, 0), 2)
    for G in FINITE:
        assert hp.check_involutive(G, hp.counit_character(G))["holds"]


def test_sl2_has_no_nonzero_character():
    g = hp.sl2()
    for i in range(3):
        with pytest.raises(hp.CharacterNotOnAbelianization):
            g.linear_character({i: 1})


def test_jacobi_failure():
    # [e0,e1]=e1, [e1,e2]=e0, [e0,e2]=0 is not a Lie bracket
    with pytest.raises(hp.JacobiFailure):
        hp.Enveloping(3, {(0, 1): {1: 1}, (1, 2): {0: 1}})


def test_corrupted_table_fails_axioms():
    T = hp.group_as_table(hp.cyclic_group(3))
    T._st[1] = {1: Fraction(1)}  # antipode no longer the inverse
    rep = hp.check_hopf_axioms(T, strict=False)
    assert not rep["passed"]
    assert "antipode" in {f["identity"] for f in rep["failures"]}
    with pytest.raises(hp.IdentityFailure):
        hp.check_hopf_axioms(T)


def test_group_table_agrees_with_group():
    G = hp.symmetric_group3()
    T = hp.group_as_table(G)
    for a, b in itertools.product(range(6), repeat=2):
        assert T.mul(a, b) == G.mul(a, b)
    for g in range(6):
        assert T.comul(g) == G.comul(g) and T.antipode(g) == G.antipode(g)


def test_symmetric_algebra_coproduct_binomial():
    # Delta(x^n) = sum binom(n,k) x^k (x) x^(n-k): oracle is math.comb
    import math
    S = hp.symmetric_algebra(1)
    for n in range(5):
        d = S.comul((n,))
        assert d == {((k,), (n - k,)): Fraction(math.comb(n, k)) for k in range(n + 1)}
