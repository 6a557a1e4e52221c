"""Antisymmetrization from exterior powers of a Lie algebra into the localized module of U(g)."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .cocyclic import build_sharp_delta
from .complexes import hochschild
from .hopf import ONE, CharacterNotOnAbelianization, Enveloping
from .linalg import viadd


def perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def wedge_basis(dim, n):
    return list(itertools.combinations(range(dim), n))


def wedge_normal(idx):
    """Sign and sorted form of a wedge of generator indices (0 if repeated)."""
    if len(set(idx)) < len(idx):
        return 0, None
    order = sorted(range(len(idx)), key=lambda i: idx[i])
    return perm_sign(order), tuple(sorted(idx))


def d_lie(g: Enveloping, delta_vals, x):
    """Chevalley-Eilenberg boundary with coefficients in C_delta on a dict wedge -> coeff."""
    out = {}
    for w, c in x.items():
        n = len(w)
        for i in range(n):
            dv = delta_vals.get(w[i], 0)
            if dv:
                viadd(out, {w[:i] + w[i + 1:]: c * dv * (-1) ** i})
        for i in range(n):
            for j in range(i + 1, n):
                rest = w[:i] + w[i + 1:j] + w[j + 1:]
                for k, e in g.bracket(w[i], w[j]).items():
                    s, key = wedge_normal((k,) + rest)
                    if s:
                        viadd(out, {key: c * e * s * (-1) ** (i + j)})
    return out


def antisymmetrize(g: Enveloping, x):
    """A(v1 ^ .. ^ vn) = sum sign(s) v_s1 (x) .. (x) v_sn / n!."""
    out = {}
    for w, c in x.items():
        n = len(w)
        f = Fraction(1, math.factorial(n))
        for p in itertools.permutations(range(n)):
            viadd(out, {tuple(g.gen(w[i]) for i in p): c * f * perm_sign(p)})
    return out


def lie_quasi_iso_check(g: Enveloping, delta_vals=None, n_max=3):
    delta_vals = {i: Fraction(v) for i, v in (delta_vals or {}).items() if v}
    for (i, j), v in g.br.items():
        if sum(delta_vals.get(k, 0) * c for k, c in v.items()):
            raise CharacterNotOnAbelianization(f"delta does not vanish on [e{i},e{j}]")
    delta = g.linear_character(delta_vals)
    M = build_sharp_delta(g, delta, D=n_max + 1)
    res = {"hopf": g.name, "delta": {str(k): str(v) for k, v in sorted(delta_vals.items())}, "levels": {}}
    ok = True
    for n in range(0, min(n_max, g.dim) + 1):
        cocycle = compat = True
        for w in wedge_basis(g.dim, n):
            x = {w: ONE}
            Ax = antisymmetrize(g, x)
            if M.hochschild_b(n, Ax):
                cocycle = False
            if n >= 1:
                lhs = M.connes_B(n, Ax)
                rhs = antisymmetrize(g, d_lie(g, delta_vals, x))
                if lhs != rhs:
                    compat = False
        res["levels"][n] = {"b(A)=0": cocycle, "BA=Ad": compat, "wedges": len(wedge_basis(g.dim, n))}
        ok = ok and cocycle and compat
    if not delta_vals:
        hh = hochschild(build_sharp_delta(g, delta, D=n_max), n_max, D=n_max).extra["by_weight"]
        match = {n: hh[n][n] == math.comb(g.dim, n) for n in range(n_max + 1)}
        res["HH_weight_n=Lambda^n"] = match
        ok = ok and all(match.values())
    res["ok"] = ok
    return res
