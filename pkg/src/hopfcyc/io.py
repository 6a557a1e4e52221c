"""Presentation files (JSON) and built-in presentations.

Schema, by kind (scalars are exact rationals written "p/q" or integers):

  group:     {"kind": "group", "name", "labels": [..], "table": [[label, ..], ..]}
  lie:       {"kind": "lie", "name", "labels": [..], "brackets": {"a,b": {label: q}}}
  symmetric: {"kind": "symmetric", "name", "dim": n}
  uq_sl2:    {"kind": "uq_sl2", "q": "3/2"}
  table:     {"kind": "table", "name", "labels", "unit": {label: q},
              "mul": {"a,b": {label: q}}, "comul": {label: {"a,b": q}},
              "counit": {label: q}, "antipode": {label: {label: q}}}

Optional on every kind: "delta" (label -> q, or "eps"/"sgnK" for uq_sl2) and
"sigma" (a label, "K" for uq_sl2).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import hopf as hp
from .reports import qparse, qstr

KINDS = ("group", "lie", "uq_sl2", "symmetric", "table")


class PresentationError(ValueError):
    def __init__(self, msg, line=None, source="<presentation>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {msg}")


@dataclass
class Presentation:
    kind: str
    hopf: object
    delta: object
    sigma: object = None
    spec: dict = field(default_factory=dict)

    def describe(self):
        return {"kind": self.kind, "hopf": self.hopf.name, "delta": self.delta.name,
                "sigma": None if self.sigma is None else repr(self.sigma)}


# ----------------------------------------------------------------- line lookup

def _line(text, *path):
    """Line of the last key in path, found by scanning forward through the keys."""
    if not text:
        return None
    pos, found = 0, False
    for key in path:
        i = text.find(json.dumps(str(key)), pos)
        if i < 0:
            break
        pos, found = i, True
    return text.count("\n", 0, pos) + 1 if found else 1


class _Ctx:
    def __init__(self, text, source):
        self.text = text
        self.source = source

    def fail(self, msg, *path):
        raise PresentationError(msg, _line(self.text, *path), self.source)

    def q(self, v, *path):
        try:
            return qparse(v)
        except (ValueError, ZeroDivisionError) as e:
            self.fail(f"bad rational {v!r}: {e}", *path)


# ----------------------------------------------------------------- loading

def parse_presentation(text, source="<string>"):
    ctx = _Ctx(text, source)
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationError(f"invalid JSON: {e.msg}", e.lineno, source) from e
    return from_spec(spec, ctx)


def load_presentation(path):
    if isinstance(path, str) and path.startswith("builtin:"):
        return builtin(path.split(":", 1)[1])
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise PresentationError(f"cannot read: {e.strerror}", None, str(p)) from e
    return parse_presentation(text, str(p))


def from_spec(spec, ctx=None):
    ctx = ctx or _Ctx(json.dumps(spec, indent=2, sort_keys=True), "<spec>")
    if not isinstance(spec, dict):
        ctx.fail("top level must be an object")
    kind = spec.get("kind")
    if kind not in KINDS:
        ctx.fail(f"unknown kind {kind!r}, expected one of {', '.join(KINDS)}", "kind")
    builder = {"group": _group, "lie": _lie, "uq_sl2": _uq, "symmetric": _symmetric, "table": _table}[kind]
    try:
        H, label_key = builder(spec, ctx)
    except PresentationError:
        raise
    except hp.JacobiFailure as e:
        labels = spec.get("labels") or [str(i) for i in range(spec.get("dim", 0))]
        names = tuple(labels[i] for i in e.triple)
        ctx.fail(f"Jacobi identity fails on the triple {names}", "brackets")
    except hp.HopfError as e:
        ctx.fail(f"{type(e).__name__}: {e}", kind)
    delta = _delta(spec, ctx, H, kind, label_key)
    sigma = _sigma(spec, ctx, H, kind, label_key)
    norm = emit_spec(Presentation(kind, H, delta, sigma, spec))
    return Presentation(kind, H, delta, sigma, norm)


def _labels(spec, ctx, n=None):
    labels = spec.get("labels")
    if labels is None:
        if n is None:
            ctx.fail("missing 'labels'")
        return [str(i) for i in range(n)]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        ctx.fail("'labels' must be a list of strings", "labels")
    if len(set(labels)) != len(labels):
        ctx.fail("duplicate labels", "labels")
    return labels


def _index(ctx, labels, name, *path):
    try:
        return labels.index(str(name))
    except ValueError:
        ctx.fail(f"unknown label {name!r}", *path)


def _group(spec, ctx):
    labels = _labels(spec, ctx)
    table = spec.get("table")
    if not isinstance(table, list) or len(table) != len(labels):
        ctx.fail("'table' must be a square list of rows, one per label", "table")
    rows = []
    for r, row in enumerate(table):
        if not isinstance(row, list) or len(row) != len(labels):
            ctx.fail(f"row {r} of 'table' has the wrong length", "table")
        rows.append([_index(ctx, labels, x, "table") for x in row])
    try:
        G = hp.GroupAlgebra(rows, labels, name=spec.get("name", "group"))
        G.check_group()
    except hp.InvalidTable as e:
        ctx.fail(str(e), "table")
    return G, lambda s, *path: _index(ctx, labels, s, *path)


def _lie(spec, ctx):
    labels = _labels(spec, ctx)
    br = {}
    for pair, vals in (spec.get("brackets") or {}).items():
        parts = pair.split(",")
        if len(parts) != 2:
            ctx.fail(f"bracket key {pair!r} must be 'a,b'", "brackets", pair)
        i, j = (_index(ctx, labels, p.strip(), "brackets", pair) for p in parts)
        if i == j:
            ctx.fail(f"bracket key {pair!r} repeats a generator", "brackets", pair)
        if not isinstance(vals, dict):
            ctx.fail(f"bracket {pair!r} must map labels to rationals", "brackets", pair)
        v = {_index(ctx, labels, k, "brackets", pair, k): ctx.q(c, "brackets", pair, k) for k, c in vals.items()}
        if (i, j) in br or (j, i) in br:
            ctx.fail(f"bracket {pair!r} given twice", "brackets", pair)
        br[(i, j)] = v
    g = hp.Enveloping(len(labels), br, name=spec.get("name", "U(g)"))
    g.labels = labels
    return g, lambda s, *path: _index(ctx, labels, s, *path)


def _symmetric(spec, ctx):
    n = spec.get("dim")
    if not isinstance(n, int) or n < 1:
        ctx.fail("'dim' must be a positive integer", "dim")
    g = hp.Enveloping(n, {}, name=spec.get("name", f"S(V{n})"))
    g.labels = [f"v{i}" for i in range(n)]
    return g, lambda s, *path: _index(ctx, g.labels, s, *path)


def _uq(spec, ctx):
    q = ctx.q(spec.get("q", "3/2"), "q")
    try:
        U = hp.UqSl2(q)
    except hp.BadParameter as e:
        ctx.fail(str(e), "q")
    return U, None


def _table(spec, ctx):
    labels = _labels(spec, ctx)

    def ix(s, *path):
        return _index(ctx, labels, s, *path)

    def elem(d, *path):
        if not isinstance(d, dict):
            ctx.fail("expected an object label -> rational", *path)
        return {ix(k, *path, k): ctx.q(c, *path, k) for k, c in d.items()}

    def pair(s, *path):
        parts = s.split(",")
        if len(parts) != 2:
            ctx.fail(f"key {s!r} must be 'a,b'", *path)
        return tuple(ix(p.strip(), *path) for p in parts)
    for sec in ("unit", "mul", "comul", "counit", "antipode"):
        if sec not in spec:
            ctx.fail(f"table presentation needs '{sec}'")
    unit = elem(spec["unit"], "unit")
    mul = {pair(k, "mul", k): elem(v, "mul", k) for k, v in spec["mul"].items()}
    comul = {}
    for k, v in spec["comul"].items():
        if not isinstance(v, dict):
            ctx.fail("comul entries map 'a,b' to rationals", "comul", k)
        comul[ix(k, "comul", k)] = {pair(p, "comul", k, p): ctx.q(c, "comul", k, p) for p, c in v.items()}
    cu = [Fraction(0)] * len(labels)
    for k, c in spec["counit"].items():
        cu[ix(k, "counit", k)] = ctx.q(c, "counit", k)
    anti = {ix(k, "antipode", k): elem(v, "antipode", k) for k, v in spec["antipode"].items()}
    H = hp.TableHopf(labels, unit, mul, comul, cu, anti, name=spec.get("name", "table"))
    rep = hp.check_hopf_axioms(H, strict=False)
    if rep["failures"]:
        f = rep["failures"][0]
        sec = {"counit": "counit", "coassociativity": "comul", "antipode": "antipode", "eps-S": "antipode",
               "Delta-S": "antipode", "S-anti": "antipode", "S(1)": "antipode", "Delta-mult": "comul",
               "eps-mult": "counit", "unit": "unit"}.get(f["identity"], "mul")
        ctx.fail(f"Hopf axiom {f['identity']} fails at {f['witness']}", sec)
    return H, ix


def _delta(spec, ctx, H, kind, label_key):
    d = spec.get("delta")
    if d is None or d == "eps":
        return hp.counit_character(H) if kind != "uq_sl2" else H.character()
    if kind == "uq_sl2":
        if d not in ("eps", "sgnK"):
            ctx.fail("uq_sl2 delta must be 'eps' or 'sgnK'", "delta")
        return H.character(-1)
    if not isinstance(d, dict):
        ctx.fail("'delta' must map labels to rationals", "delta")
    vals = {label_key(k, "delta", k): ctx.q(v, "delta", k) for k, v in d.items()}
    if kind in ("lie", "symmetric"):
        try:
            return H.linear_character(vals)
        except hp.CharacterNotOnAbelianization as e:
            ctx.fail(str(e), "delta")
    if set(vals) != set(H.basis()):
        ctx.fail("delta must give a value on every basis label", "delta")
    ch = hp.Character(H, lambda k: vals[k], "delta")
    for a in H.basis():
        for b in H.basis():
            if ch.on(H.mul(a, b)) != vals[a] * vals[b]:
                ctx.fail(f"delta is not multiplicative at ({H.labels[a]}, {H.labels[b]})", "delta")
    if ch.on(H.one()) != 1:
        ctx.fail("delta(1) != 1", "delta")
    return ch


def _sigma(spec, ctx, H, kind, label_key):
    s = spec.get("sigma")
    if s is None:
        return None
    if kind == "uq_sl2":
        table = {"K": H.K, "1": (0, 0, 0), "Kinv": H.KINV}
        if s not in table:
            ctx.fail("uq_sl2 sigma must be 'K', 'Kinv' or '1'", "sigma")
        return table[s]
    return label_key(s, "sigma")


# ----------------------------------------------------------------- emission

def _lab(H, k):
    return H.labels[k]


def _el(H, x):
    return {_lab(H, k): qstr(c) for k, c in sorted(x.items()) if c}


def emit_spec(P: Presentation):
    H, kind = P.hopf, P.kind
    out = {"kind": kind, "name": H.name}
    if kind == "group":
        out["labels"] = list(H.labels)
        out["table"] = [[H.labels[x] for x in row] for row in H.table]
    elif kind == "lie":
        out["labels"] = list(getattr(H, "labels", [str(i) for i in range(H.dim)]))
        out["brackets"] = {f"{out['labels'][i]},{out['labels'][j]}": {out["labels"][k]: qstr(c) for k, c in sorted(v.items())}
                           for (i, j), v in sorted(H.br.items()) if v}
    elif kind == "symmetric":
        out["dim"] = H.dim
    elif kind == "uq_sl2":
        del out["name"]
        out["q"] = qstr(H.q)
    else:
        n = H.n
        out["labels"] = list(H.labels)
        out["unit"] = _el(H, H.one())
        out["mul"] = {f"{_lab(H, a)},{_lab(H, b)}": _el(H, H.mul(a, b))
                      for a in range(n) for b in range(n) if H.mul(a, b)}
        out["comul"] = {_lab(H, k): {f"{_lab(H, a)},{_lab(H, b)}": qstr(c) for (a, b), c in sorted(H.comul(k).items()) if c}
                        for k in range(n)}
        out["counit"] = {_lab(H, k): qstr(H.counit(k)) for k in range(n)}
        out["antipode"] = {_lab(H, k): _el(H, H.antipode(k)) for k in range(n)}
    d = P.delta
    if d is not None and d.name not in ("eps",):
        if kind == "uq_sl2":
            out["delta"] = d.name
        elif kind in ("lie", "symmetric"):
            labels = out.get("labels") or [f"v{i}" for i in range(H.dim)]
            out["delta"] = {labels[i]: qstr(d(H.gen(i))) for i in range(H.dim) if d(H.gen(i))}
        else:
            out["delta"] = {H.labels[k]: qstr(d(k)) for k in H.basis()}
    if P.sigma is not None:
        if kind == "uq_sl2":
            out["sigma"] = {H.K: "K", H.KINV: "Kinv", (0, 0, 0): "1"}[P.sigma]
        else:
            out["sigma"] = H.labels[P.sigma]
    return out


def emit_presentation(P: Presentation):
    return json.dumps(emit_spec(P), indent=2, sort_keys=True) + "\n"


# ----------------------------------------------------------------- built-ins

def _group_spec(G):
    return {"kind": "group", "name": G.name, "labels": list(G.labels),
            "table": [[G.labels[x] for x in row] for row in G.table]}


def builtin(name):
    """Named presentations; 'z2-table' is Z2 written out as raw structure constants."""
    name = name.lower()
    if name in ("z2", "z3", "z4", "z5"):
        G = hp.cyclic_group(int(name[1:]))
        return Presentation("group", G, hp.counit_character(G), None, _group_spec(G))
    if name == "s3":
        G = hp.symmetric_group3()
        return Presentation("group", G, hp.counit_character(G), None, _group_spec(G))
    if name in ("point", "rho"):
        G = hp.one_grouplike()
        return Presentation("group", G, hp.counit_character(G), None, _group_spec(G))
    if name == "z2-table":
        T = hp.group_as_table(hp.cyclic_group(2))
        P = Presentation("table", T, hp.counit_character(T))
        P.spec = emit_spec(P)
        return P
    if name in ("abelian2", "heisenberg3", "sl2"):
        g = getattr(hp, name)()
        g.labels = {"abelian2": ["x", "y"], "heisenberg3": ["x", "y", "z"], "sl2": ["e", "f", "h"]}[name]
        P = Presentation("lie", g, hp.counit_character(g))
        P.spec = emit_spec(P)
        return P
    if name.startswith("sym") and name[3:].isdigit():
        g = hp.symmetric_algebra(int(name[3:]))
        g.labels = [f"v{i}" for i in range(g.dim)]
        P = Presentation("symmetric", g, hp.counit_character(g))
        P.spec = emit_spec(P)
        return P
    if name in ("uqsl2", "uq_sl2"):
        U = hp.UqSl2()
        P = Presentation("uq_sl2", U, U.character(), U.K)
        P.spec = emit_spec(P)
        return P
    raise PresentationError(f"unknown builtin {name!r}", None, "builtin")


BUILTINS = ("z2", "z3", "s3", "point", "z2-table", "abelian2", "heisenberg3", "sl2",
            "sym1", "sym2", "sym3", "uqsl2")


def with_q(P: Presentation, q):
    """Rebuild a uq_sl2 presentation at another q."""
    if P.kind != "uq_sl2":
        return P
    U = hp.UqSl2(Fraction(q))
    return Presentation("uq_sl2", U, U.character(-1) if P.delta.name == "sgnK" else U.character(),
                        None if P.sigma is None else U.K, {**P.spec, "q": qstr(U.q)})
