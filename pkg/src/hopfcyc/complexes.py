"""Hochschild, cyclic and Cotor cohomology of cocyclic modules at truncations."""
from __future__ import annotations

import itertools
from fractions import Fraction

from .cocyclic import CocyclicModule, assemble, tensor_weight
from .hopf import ONE, Enveloping, GroupAlgebra, FunctionAlgebra, NotGroupLike, UqSl2, check_grouplike
from .linalg import (CompositeNotZero, Echelon, SparseMatrix, cohomology_dim, cohomology_map_rank, rank,
                     viadd)
from .reports import CohomologyReport


class NotIntegral(Exception):
    def __init__(self, witness):
        super().__init__(f"left integral law fails at {witness!r}")
        self.witness = witness


# ----------------------------------------------------------------- helpers

def homogeneous(M: CocyclicModule):
    """Do the cyclic operators preserve weight exactly?"""
    H = M.H
    if isinstance(H, (GroupAlgebra, FunctionAlgebra)) or all(H.weight(k) == 0 for k in H.basis(0)) and H.finite:
        return True
    if isinstance(H, Enveloping):
        return H.is_abelian()
    return False


def weight_list(M, D):
    if D is None or M.H.finite:
        return [None]
    return list(range(D + 1))


def _zero(r, c):
    return SparseMatrix.zero(r, c)


def slice_dims(mats, lo, hi):
    """Cohomology dims at spots lo..hi given mats[n]: C^n -> C^(n+1) (mats[-1] may be missing)."""
    out = {}
    for n in range(lo, hi + 1):
        d_out = mats[n]
        d_in = mats.get(n - 1) or _zero(d_out.cols, 0)
        out[n] = cohomology_dim(d_in, d_out)
    return out


# ----------------------------------------------------------------- Hochschild

def hochschild_mats(M, n_max, D=None, weight=None):
    return {n: M.matrix("b", n, D, weight) for n in range(n_max + 1)}


def hochschild(M: CocyclicModule, n_max, D=None, per_weight=True):
    """HH^n for n <= n_max; per weight when the truncation is infinite."""
    D = M.D if D is None else D
    ws = weight_list(M, D) if per_weight else [None]
    dims = {n: 0 for n in range(n_max + 1)}
    by_weight = {}
    for w in ws:
        mats = hochschild_mats(M, n_max, D, w)
        d = slice_dims(mats, 0, n_max)
        by_weight[w if w is not None else "all"] = d
        for n in d:
            dims[n] += d[n]
    rep = CohomologyReport("hochschild", dims, {"n_max": n_max, "D": D}, "exact", M.describe(),
                           {"by_weight": by_weight})
    return rep


# ----------------------------------------------------------------- cyclic bicomplex

def _offsets(blocks):
    off, pos = {}, 0
    for key, size in blocks:
        off[key] = pos
        pos += size
    return off, pos


class CyclicBicomplex:
    """Total complex of the first-quadrant bicomplex with columns b, -b' and rows 1-lambda, N."""

    def __init__(self, M: CocyclicModule, n_max, D=None, weight=None):
        self.M, self.n_max, self.D, self.weight = M, n_max, D, weight
        self._tot = {}

    def size(self, q):
        return len(self.M.level_basis(q, self.D, self.weight))

    def blocks(self, n):
        return [((p, n - p), self.size(n - p)) for p in range(n + 1)]

    def dim(self, n):
        return sum(s for _, s in self.blocks(n))

    def total(self, n):
        """Differential Tot^n -> Tot^(n+1)."""
        if n in self._tot:
            return self._tot[n]
        M, D, w = self.M, self.D, self.weight
        src_off, ns = _offsets(self.blocks(n))
        tgt_off, nt = _offsets(self.blocks(n + 1))
        data = {}

        def put(A, r0, c0, s=1):
            for i, row in A.data.items():
                r = data.setdefault(r0 + i, {})
                for j, c in row.items():
                    x = r.get(c0 + j, 0) + s * c
                    if x:
                        r[c0 + j] = x
                    else:
                        r.pop(c0 + j, None)

        for p in range(n + 1):
            q = n - p
            c0 = src_off[(p, q)]
            if p % 2 == 0:
                put(M.matrix("b", q, D, w), tgt_off[(p, q + 1)], c0)
                hor = SparseMatrix.identity(self.size(q)) - M.matrix("lambda", q, D, w)
            else:
                put(M.matrix("b'", q, D, w), tgt_off[(p, q + 1)], c0, -1)
                hor = M.matrix("N", q, D, w)
            put(hor, tgt_off[(p + 1, q)], c0)
        T = SparseMatrix(nt, ns, {i: r for i, r in data.items() if r})
        self._tot[n] = T
        return T

    def shift(self, n):
        """The periodicity map S: Tot^n -> Tot^(n+2) moving column p to p+2."""
        src_off, ns = _offsets(self.blocks(n))
        tgt_off, nt = _offsets(self.blocks(n + 2))
        data = {}
        for p in range(n + 1):
            q = n - p
            for j in range(self.size(q)):
                data[tgt_off[(p + 2, q)] + j] = {src_off[(p, q)] + j: ONE}
        return SparseMatrix(nt, ns, data)

    def d_in(self, n):
        return self.total(n - 1) if n > 0 else _zero(self.dim(0), 0)

    def hc(self, n):
        return cohomology_dim(self.d_in(n), self.total(n))

    def s_rank(self, n):
        return cohomology_map_rank(self.shift(n), self.d_in(n), self.total(n), self.d_in(n + 2))


def cyclic_and_periodic(M: CocyclicModule, n_max, D=None, per_weight=None):
    D = M.D if D is None else D
    if per_weight is None:
        per_weight = homogeneous(M)
    ws = weight_list(M, D) if per_weight else [None]
    dims = {n: 0 for n in range(n_max + 1)}
    s_ranks = {n: 0 for n in range(n_max - 1)}
    for w in ws:
        C = CyclicBicomplex(M, n_max, D, w)
        for n in range(n_max + 1):
            dims[n] += C.hc(n)
        for n in range(n_max - 1):
            s_ranks[n] += C.s_rank(n)
    bij = {n: s_ranks[n] == dims[n] == dims[n + 2] for n in s_ranks}
    window = _hp_window(dims, bij)
    exact = "exact" if (homogeneous(M) or D is None or M.H.finite) else "filtered"
    rep = CohomologyReport("cyclic", dims, {"n_max": n_max, "D": D}, exact, M.describe(),
                           {"S_ranks": s_ranks, "S_bijective": bij, "hp_window": window})
    return rep


def _hp_window(dims, bij):
    """Parity dims read off the highest degrees where S is bijective."""
    out = {}
    for par, name in ((0, "even"), (1, "odd")):
        ns = [n for n, ok in bij.items() if ok and n % 2 == par]
        if ns:
            n = max(ns)
            out[name] = {"dim": dims[n + 2], "from_degree": min(m for m in ns if all(bij[k] for k in ns if k >= m))}
    return out


# ----------------------------------------------------------------- mixed complex identities

def mixed_complex_check(M: CocyclicModule, n_max, D=None, weight=None):
    res = {}

    def z(A):
        return A.is_zero()
    for n in range(n_max + 1):
        b0 = M.matrix("b", n, D, weight)
        b1 = M.matrix("b", n + 1, D, weight)
        bp0 = M.matrix("b'", n, D, weight)
        bp1 = M.matrix("b'", n + 1, D, weight)
        lam = M.matrix("lambda", n, D, weight)
        N = M.matrix("N", n, D, weight)
        one = SparseMatrix.identity(lam.rows)
        res[f"b^2[{n}]"] = z(b1 @ b0)
        res[f"b'^2[{n}]"] = z(bp1 @ bp0)
        res[f"N(1-l)[{n}]"] = z(N @ (one - lam))
        res[f"(1-l)N[{n}]"] = z((one - lam) @ N)
        lam1 = M.matrix("lambda", n + 1, D, weight)
        one1 = SparseMatrix.identity(lam1.rows)
        res[f"(1-l)b=b'(1-l)[{n}]"] = (one1 - lam1) @ b0 == bp0 @ (one - lam)
        res[f"Nb'=bN[{n}]"] = M.matrix("N", n + 1, D, weight) @ bp0 == b0 @ N
        if n >= 1:
            B = M.matrix("B", n, D, weight)
            if n >= 2:
                res[f"B^2[{n}]"] = z(M.matrix("B", n - 1, D, weight) @ B)
            # bB + Bb = 0 on level n
            lhs = M.matrix("b", n - 1, D, weight) @ B + M.matrix("B", n + 1, D, weight) @ b0
            res[f"bB+Bb[{n}]"] = z(lhs)
    return res


# ----------------------------------------------------------------- Cotor

def cotor_boundary(H, alpha, beta):
    """u -> (alpha, u) - d'_beta(u) on tensors."""
    def bd(n, T):
        out = {}
        for t, c in T.items():
            viadd(out, {(alpha,) + t: c})
            for i in range(n):
                s = -1 if i % 2 else 1
                viadd(out, {t[:i] + ab + t[i + 1:]: -s * c * d for ab, d in H.comul(t[i]).items()})
            viadd(out, {t + (beta,): -(-1 if n % 2 else 1) * c})
        return out
    return bd


def _graded_level_basis(H, n, D, weight):
    keys = H.basis(D) if D is not None else H.basis()
    byw = {}
    for k in keys:
        byw.setdefault(H.weight(k), []).append(k)
    top = weight if weight is not None else (D or 0)

    def rec(j, left):
        if j == n:
            if weight is None or left == 0:
                yield ()
            return
        for w in sorted(byw):
            if w > left:
                break
            for k in byw[w]:
                for rest in rec(j + 1, left - w):
                    yield (k,) + rest
    return sorted(rec(0, top), key=lambda t: (tensor_weight(H, t), t))


def uq_component_basis(U: UqSl2, a, b, gaps, n):
    """Level-n tensors of the Cotor(C_{K^a}, C_{K^b}) component with nonzero gap sequence ``gaps``."""
    W = b - a - sum(gaps)
    if W < 0:
        return []
    out = []
    m = len(gaps)
    if m > n + 1:
        return []
    for pos in itertools.combinations(range(n + 1), m):
        g = [0] * (n + 1)
        for p, v in zip(pos, gaps):
            g[p] = v
        for ws in _compositions(W, n):
            s = a + g[0]
            choices = []
            for j in range(n):
                choices.append([(mm, ws[j] - mm, s) for mm in range(ws[j], -1, -1)])
                s = s + ws[j] + g[j + 1]
            for t in itertools.product(*choices):
                out.append(t)
    return sorted(set(out))


def _compositions(W, n):
    if n == 0:
        if W == 0:
            yield ()
        return
    for x in range(W + 1):
        for rest in _compositions(W - x, n - 1):
            yield (x,) + rest


def cotor(H, alpha, beta, n_max, D=None, gap_window=2):
    for g in (alpha, beta):
        try:
            check_grouplike(H, g)
        except NotGroupLike:
            raise
    bd = cotor_boundary(H, alpha, beta)
    dims = {n: 0 for n in range(n_max + 1)}
    extra = {}
    if isinstance(H, UqSl2):
        a, b = alpha[2], beta[2]
        comps = []
        rng = [v for v in range(-gap_window, gap_window + 1) if v]
        for L in range(0, 3):
            for gaps in itertools.product(rng, repeat=L):
                if b - a - sum(gaps) >= 0 and b - a - sum(gaps) <= (D if D is not None else 2):
                    comps.append(gaps)
        per = {}
        for gaps in comps:
            bases = {n: uq_component_basis(H, a, b, gaps, n) for n in range(n_max + 2)}
            mats = {n: assemble(lambda T, n=n: bd(n, T), bases[n], bases[n + 1], "cotor") for n in range(n_max + 1)}
            d = slice_dims(mats, 0, n_max)
            if any(d.values()):
                per[repr(gaps)] = d
            for n in d:
                dims[n] += d[n]
        extra["components"] = per
        extra["gap_window"] = gap_window
        exact = "window"
    else:
        ws = [None] if (D is None or H.finite) else list(range(D + 1))
        for w in ws:
            bases = {n: _graded_level_basis(H, n, D, w) for n in range(n_max + 2)}
            mats = {n: assemble(lambda T, n=n: bd(n, T), bases[n], bases[n + 1], "cotor") for n in range(n_max + 1)}
            d = slice_dims(mats, 0, n_max)
            extra.setdefault("by_weight", {})[w if w is not None else "all"] = d
            for n in d:
                dims[n] += d[n]
        exact = "exact"
    return CohomologyReport("cotor", dims, {"n_max": n_max, "D": D}, exact,
                            {"hopf": H.name, "alpha": repr(alpha), "beta": repr(beta)}, extra)


def uq_cotor_classes(U: UqSl2, n_max=1):
    """Cocycle and non-exactness certificates for [x] and [y] in Cotor^1(C, C_K)."""
    bd = cotor_boundary(U, (0, 0, 0), U.K)
    basis1 = uq_component_basis(U, 0, 1, (), 1)
    basis2 = uq_component_basis(U, 0, 1, (), 2)
    d1 = assemble(lambda T: bd(1, T), basis1, basis2)
    cls = {}
    idx = {t: i for i, t in enumerate(basis1)}
    for name, key in (("x", U.X), ("y", U.Y)):
        v = {idx[(key,)]: ONE}
        cls[name] = not d1.apply(v)
    # level 0 of this component is empty, so nothing is exact; independence is rank 2
    E = Echelon(len(basis1))
    for key in (U.X, U.Y):
        E.add({idx[(key,)]: ONE})
    return {"cocycles": cls, "independent": E.rank == 2, "level1": [repr(t) for t in basis1]}


# ----------------------------------------------------------------- U_q(sl2) low-degree cyclic classes

def uq_cyclic_core(U: UqSl2):
    """HC^0 = 0 and independence of E, KF modulo span{1-K} in the (eps, K) module."""
    from .cocyclic import build_sharp_delta_sigma
    M = build_sharp_delta_sigma(U, U.character(), U.K, D=1)
    one = U.one()
    b_unit = M.hochschild_b(0, {(): ONE})
    hc0 = 0 if b_unit else 1
    res = {"b(1)": {repr(k): str(c) for k, c in sorted(b_unit.items())}, "HC0": hc0}
    gens = {"E": (U.X,), "KF": (U.Y,)}
    for name, t in gens.items():
        T = {t: ONE}
        res[f"b({name})=0"] = not M.hochschild_b(1, T)
        res[f"lambda({name})={name}"] = M.lam(1, T) == T
    keys = sorted({k for T in [b_unit, {(U.X,): 1}, {(U.Y,): 1}] for k in T})
    idx = {k: i for i, k in enumerate(keys)}
    E = Echelon(len(keys))
    E.add({idx[k]: c for k, c in b_unit.items()})
    base = E.rank
    for t in gens.values():
        E.add({idx[t]: ONE})
    res["independent_mod_exact"] = E.rank - base == 2
    res["ok"] = hc0 == 0 and all(v for k, v in res.items() if k.startswith(("b(E", "b(K", "lambda"))) \
        and res["independent_mod_exact"]
    return res


# ----------------------------------------------------------------- Haar contraction

def check_left_integral(H, tau):
    """tau(1) = 1 and sum tau(h0) h1 = tau(h) 1 on basis keys."""
    if sum(c * tau(k) for k, c in H.one().items()) != 1:
        raise NotIntegral("tau(1) != 1")
    one = H.one()
    for k in H.basis():
        tot = {}
        for (a, b), c in H.comul(k).items():
            viadd(tot, {b: c * tau(a)})
        want = {u: c * tau(k) for u, c in one.items() if c * tau(k)}
        if tot != want:
            raise NotIntegral(k)
    return True


def haar_contraction_check(H, tau, n_max=3):
    """s(h1..hn) = tau(h1)(h2..hn) contracts the Hochschild complex above degree 0."""
    from .cocyclic import build_sharp_delta
    check_left_integral(H, tau)
    M = build_sharp_delta(H, D=None, force=True)
    out = {}
    for n in range(n_max + 1):
        basis = M.level_basis(n)
        prev = M.level_basis(n - 1) if n >= 1 else []

        def s(T, m):
            r = {}
            for t, c in T.items():
                x = tau(t[0])
                if x:
                    viadd(r, {t[1:]: c * x})
            return r
        S_n = assemble(lambda T: s(T, n), basis, prev) if n >= 1 else SparseMatrix.zero(0, len(basis))
        S_n1 = assemble(lambda T: s(T, n + 1), M.level_basis(n + 1), basis)
        b_n = M.matrix("b", n)
        lhs = S_n1 @ b_n
        if n >= 1:
            lhs = lhs + M.matrix("b", n - 1) @ S_n
        if n == 0:
            # degree 0 carries HH^0 = C: the homotopy vanishes there
            out[n] = {"ok": lhs.is_zero(), "identity": False}
        else:
            out[n] = {"ok": lhs == SparseMatrix.identity(len(basis)), "identity": True}
    return out


def group_haar(G: GroupAlgebra):
    """The left integral of C[G]: coefficient of the identity."""
    return lambda g: ONE if g == G.e else Fraction(0)


def averaging(n):
    return lambda g: Fraction(1, n)
