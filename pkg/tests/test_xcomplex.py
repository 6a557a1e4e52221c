from fractions import Fraction

import pytest

from hopfcyc import hopf as hp
from hopfcyc.xcomplex import Module, regular_module, tensor_x_complex, trivial_module, uq_two_dim


@pytest.mark.parametrize("V", [trivial_module(hp.cyclic_group(2)), regular_module(hp.cyclic_group(2)),
                               regular_module(hp.cyclic_group(3)), trivial_module(hp.symmetric_group3())],
                         ids=lambda V: f"{V.name}/{V.H.name}")
def test_two_assemblies_agree(V):
    r = tensor_x_complex(V, D=3, with_unit=True)
    assert r["ok"]
    # T(V)_delta is quasi-isomorphic to the ground field: H0 = 1 (the unit), H1 = 0
    assert r["window"] == {"H0": 1, "H1": 0}


def test_module_law():
    V = regular_module(hp.symmetric_group3())
    assert V.check(range(6))


def test_uq_twisted_x_complex():
    U = hp.UqSl2(Fraction(3, 2))
    r = tensor_x_complex(uq_two_dim(U), U.character(), U.K, D=3)
    assert r["ok"]
    assert r["lengths"][2]["dim X0"] == r["lengths"][2]["dim X1"] == 1


def test_broken_module_is_caught():
    # g acts unipotently for every g != e, which is not a representation of Z3
    G = hp.cyclic_group(3)
    V = Module(G, 2, lambda g: [[1, 0], [1 if g else 0, 1]], name="broken")
    assert not V.check(range(3))
