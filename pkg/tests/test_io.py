import json

import hypothesis.strategies as st
import pytest
from hypothesis import given

from hopfcyc import hopf as hp
from hopfcyc.cocyclic import build_sharp_delta
from hopfcyc.complexes import cyclic_and_periodic, hochschild
from hopfcyc.io import (BUILTINS, PresentationError, builtin, emit_presentation, load_presentation,
                        parse_presentation)
from hopfcyc.reports import dumps, qparse, qstr


@pytest.mark.parametrize("name", BUILTINS)
def test_round_trip(name):
    text = emit_presentation(builtin(name))
    again = emit_presentation(parse_presentation(text))
    assert again == text


@given(st.fractions(max_denominator=10**6))
def test_rational_round_trip(x):
    assert qparse(qstr(x)) == x
    assert "/" in qstr(x)


def test_z2_builtin_equals_table_file():
    a, b = builtin("z2"), builtin("z2-table")
    assert isinstance(b.hopf, hp.TableHopf)

    def report(P):
        M = build_sharp_delta(P.hopf, P.delta)
        r = {"HH": hochschild(M, 3), "HC": cyclic_and_periodic(M, 4)}
        for v in r.values():
            v.source = {}
        return dumps(r)
    assert report(a) == report(b)


HEIS_BAD = """{
  "kind": "lie",
  "labels": ["a", "b", "c"],
  "brackets": {"a,b": {"b": "1"},
               "b,c": {"a": "1"}}
}
"""


def test_bad_jacobi_names_triple_and_line():
    with pytest.raises(PresentationError) as e:
        parse_presentation(HEIS_BAD, "bad.json")
    msg = str(e.value)
    assert msg.startswith("bad.json:4:")
    assert "('a', 'b', 'c')" in msg


def test_q_one_rejected():
    text = '{\n  "kind": "uq_sl2",\n  "q": "1",\n  "sigma": "K"\n}\n'
    with pytest.raises(PresentationError) as e:
        parse_presentation(text, "uq.json")
    assert e.value.line == 3


def test_json_syntax_error_line():
    with pytest.raises(PresentationError) as e:
        parse_presentation('{\n  "kind": "group",\n  "labels": [\n}\n', "x.json")
    assert e.value.line == 4


def test_non_multiplicative_delta_rejected():
    spec = json.loads(emit_presentation(builtin("z3")))
    spec["delta"] = {"g0": "1", "g1": "-1", "g2": "1"}
    with pytest.raises(PresentationError):
        parse_presentation(json.dumps(spec, indent=2))


def test_corrupted_table_rejected_at_section():
    spec = json.loads(emit_presentation(builtin("z2-table")))
    spec["antipode"]["g1"] = {"g0": "1/1"}
    text = json.dumps(spec, indent=2)
    with pytest.raises(PresentationError) as e:
        parse_presentation(text, "t.json")
    assert "antipode" in str(e.value)
    assert e.value.line == text.splitlines().index('  "antipode": {') + 1


def test_unknown_kind_and_missing_file(tmp_path):
    with pytest.raises(PresentationError):
        parse_presentation('{"kind": "banana"}')
    with pytest.raises(PresentationError):
        load_presentation(str(tmp_path / "nope.json"))
    with pytest.raises(PresentationError, match="unknown builtin"):
        load_presentation("builtin:nope")


def test_load_from_file(tmp_path):
    p = tmp_path / "s3.json"
    p.write_text(emit_presentation(builtin("s3")))
    P = load_presentation(str(p))
    assert P.hopf.n == 6 and hp.check_hopf_axioms(P.hopf)["passed"]
