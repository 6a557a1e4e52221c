"""Characteristic maps from invariant traces on H-algebras into cyclic cochains.

An H-algebra is a finite-dimensional algebra A (basis 0..dim-1, structure
constants) with H acting through matrices. Cochains on A are dicts
(a0, .., an) -> coefficient, i.e. the full coefficient tensor with zeros dropped.

Cochain structure maps on A, matched to the cocyclic modules of H:
    face_i phi (a0..a_{n+1}) = phi(.., a_i a_{i+1}, ..)      0 <= i <= n
    face_{n+1} phi           = phi(a_{n+1} a0, a1, .., an)
    degen_i phi (a0..a_{n-1}) = phi(a0, .., a_i, 1, a_{i+1}, ..)
    t phi (a0..an)           = phi(an, a0, .., a_{n-1}),     lambda = (-1)^n t
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .cocyclic import CocyclicModule
from .hopf import ONE, GroupAlgebra, check_involutive, counit_character
from .lie import antisymmetrize, d_lie, perm_sign
from .linalg import viadd

ZERO = Fraction(0)


class NotFlat(Exception):
    def __init__(self, witness, what="h(ab) = sum h0(a) h1(b)"):
        self.witness = witness
        super().__init__(f"{what} fails at {witness}")


class PreconditionFailure(Exception):
    pass


class HAlgebra:
    def __init__(self, H, dim, mul, rho, unit=None, name="A"):
        """mul[(i, j)] is a dict k -> c; rho(key) a dim x dim matrix (rows)."""
        self.H = H
        self.dim = dim
        self.mul = {k: {a: Fraction(c) for a, c in v.items() if c} for k, v in mul.items()}
        self.rho = rho
        self.unit = unit
        self.name = name
        self._m = {}
        self._cols = {}

    def mat(self, h):
        M = self._m.get(h)
        if M is None:
            M = self._m[h] = [[Fraction(c) for c in row] for row in self.rho(h)]
        return M

    def act(self, h, x):
        """h . x for a basis key h and an element x (dict)."""
        out = {}
        for j, c in x.items():
            viadd(out, self.act_basis(h, j), c)
        return out

    def act_basis(self, h, j):
        r = self._cols.get((h, j))
        if r is None:
            M = self.mat(h)
            r = self._cols[(h, j)] = {i: M[i][j] for i in range(self.dim) if M[i][j]}
        return r

    def act_elem(self, x, a):
        out = {}
        for h, c in x.items():
            viadd(out, self.act(h, a), c)
        return out

    def prod(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                viadd(out, self.mul.get((i, j), {}), a * b)
        return out

    def unit_vec(self):
        if self.unit is None:
            raise PreconditionFailure(f"{self.name} has no unit")
        return dict(self.unit)


# ----------------------------------------------------------------- preconditions

def _keys(H, D):
    return list(H.basis(D))


def check_flat(A: HAlgebra, D=2):
    """Module law and flatness on basis keys of weight <= D and all basis pairs."""
    H = A.H
    keys = _keys(H, D)
    basis = [{i: ONE} for i in range(A.dim)]
    for i, a in enumerate(basis):
        if A.act_elem(H.one(), a) != a:
            raise NotFlat(("1", i), "1 . a = a")
    for h, g in itertools.product(keys, repeat=2):
        hg = H.mul(h, g)
        if any(H.weight(k) > D for k in hg):
            continue
        for i, a in enumerate(basis):
            if A.act_elem(hg, a) != A.act(h, A.act(g, a)):
                raise NotFlat((h, g, i), "(hg) . a = h . (g . a)")
    for h in keys:
        for i, j in itertools.product(range(A.dim), repeat=2):
            lhs = A.act(h, A.prod(basis[i], basis[j]))
            rhs = {}
            for (u, v), c in H.comul(h).items():
                viadd(rhs, A.prod(A.act(u, basis[i]), A.act(v, basis[j])), c)
            if lhs != rhs:
                raise NotFlat((h, i, j))
    if A.unit is not None:
        for h in keys:
            if A.act(h, A.unit_vec()) != {k: c * H.counit(h) for k, c in A.unit.items() if c * H.counit(h)}:
                raise NotFlat((h, "1"), "h . 1 = eps(h) 1")
    return {"algebra": A.name, "hopf": H.name, "keys": len(keys), "dim": A.dim, "flat": True}


def tau_of(tau, x):
    return sum((tau.get(i, ZERO) * c for i, c in x.items()), ZERO)


def check_trace(A: HAlgebra, tau, delta=None, D=2):
    """tau(ab) = tau(ba); with delta given also tau(h a) = delta(h) tau(a)."""
    out = {"trace": True, "invariant": None}
    for i, j in itertools.product(range(A.dim), repeat=2):
        if tau_of(tau, A.mul.get((i, j), {})) != tau_of(tau, A.mul.get((j, i), {})):
            out["trace"] = False
            out["trace witness"] = (i, j)
            break
    if delta is not None:
        out["invariant"] = True
        for h in _keys(A.H, D):
            for i in range(A.dim):
                if tau_of(tau, A.act(h, {i: ONE})) != delta(h) * tau.get(i, ZERO):
                    out["invariant"] = False
                    out["invariant witness"] = (h, i)
                    break
            if not out["invariant"]:
                break
    return out


def require(A, tau, delta, D):
    try:
        check_flat(A, D)
    except NotFlat as e:
        raise PreconditionFailure(f"action not flat: {e}") from e
    tr = check_trace(A, tau, delta, D)
    if not tr["trace"]:
        raise PreconditionFailure(f"tau is not a trace at {tr['trace witness']}")
    if delta is not None and not tr["invariant"]:
        raise PreconditionFailure(f"tau is not delta-invariant at {tr['invariant witness']}")


# ----------------------------------------------------------------- cochains on A

def _evaluate(A, tau, n, legs):
    """Full tensor of (a0..an) -> tau(x0(a0) x1(a1) .. xn(an)), legs[i] a function a -> element."""
    imgs = [[legs[pos]({a: ONE}) for a in range(A.dim)] for pos in range(n + 1)]
    partial = {(a,): y for a, y in enumerate(imgs[0]) if y}
    for pos in range(1, n + 1):
        nxt = {}
        for pre, x in partial.items():
            for a, y in enumerate(imgs[pos]):
                if y:
                    z = A.prod(x, y)
                    if z:
                        nxt[pre + (a,)] = z
        partial = nxt
    out = {}
    for idx, z in partial.items():
        v = tau_of(tau, z)
        if v:
            out[idx] = v
    return out


def _factorizations(A):
    """k -> [(x, y, c)] with c the coefficient of k in x y."""
    pre = getattr(A, "_pre", None)
    if pre is None:
        pre = {}
        for (x, y), v in A.mul.items():
            for k, c in v.items():
                pre.setdefault(k, []).append((x, y, c))
        A._pre = pre
    return pre


def face_A(A, i, n, phi):
    pre = _factorizations(A)
    out = {}
    for idx, v in phi.items():
        if i <= n:
            for x, y, c in pre.get(idx[i], ()):
                viadd(out, {idx[:i] + (x, y) + idx[i + 1:]: c * v})
        else:
            for y, x, c in pre.get(idx[0], ()):
                viadd(out, {(x,) + idx[1:] + (y,): c * v})
    return out


def degen_A(A, i, n, phi):
    u = A.unit_vec()
    out = {}
    for idx in itertools.product(range(A.dim), repeat=n):
        v = sum((c * phi.get(idx[:i + 1] + (k,) + idx[i + 1:], ZERO) for k, c in u.items()), ZERO)
        if v:
            out[idx] = v
    return out


def cyc_A(n, phi):
    return {idx[1:] + idx[:1]: c for idx, c in phi.items()}


def lam_A(n, phi):
    s = -1 if n % 2 else 1
    return {k: s * c for k, c in cyc_A(n, phi).items()}


def b_A(A, n, phi):
    out = {}
    for i in range(n + 2):
        viadd(out, face_A(A, i, n, phi), -1 if i % 2 else 1)
    return out


def certify(A, n, phi):
    return {"b-closed": not b_A(A, n, phi), "lambda-invariant": lam_A(n, phi) == phi}


# ----------------------------------------------------------------- the maps

def _localized_legs(A, t):
    legs = [lambda a: a]
    for h in t:
        legs.append(lambda a, h=h: A.act(h, a))
    return legs


def _k_raw(A, tau, c):
    n = _level(c)
    out = {}
    for t, coef in c.items():
        viadd(out, _evaluate(A, tau, n, _localized_legs(A, t)), coef)
    return out


def _level(c):
    lens = {len(t) for t in c}
    if len(lens) > 1:
        raise ValueError("mixed levels in input tensor")
    return lens.pop() if lens else 0


def char_map_tau(A: HAlgebra, tau, c, delta=None, D=2, n=None):
    """k(h1..hn)(a0..an) = tau(a0 h1(a1) .. hn(an)), with certificates.

    The input c lives at level n of the delta-localized cocyclic module of H.
    """
    H = A.H
    delta = delta if delta is not None else counit_character(H)
    require(A, tau, delta, D)
    chk = check_involutive(H, delta, D)
    if not chk["holds"]:
        raise PreconditionFailure(f"S_delta^2 != Id, witnesses {chk['witnesses']}")
    n = _level(c) if n is None else n
    M = CocyclicModule(H, "localized", delta=delta, force=True)
    phi = _k_raw(A, tau, c) if c else {}
    cert = certify(A, n, phi)
    cert["input b-closed"] = not M.hochschild_b(n, c)
    cert["input lambda-invariant"] = M.lam(n, c) == c
    cert["input cyclic cocycle"] = cert["input b-closed"] and cert["input lambda-invariant"]
    cert["output cyclic cocycle"] = cert["b-closed"] and cert["lambda-invariant"]
    return {"level": n, "cochain": phi, "certificates": cert}


def gamma_tau(A: HAlgebra, tau, c):
    """gamma(h0..hn)(a0..an) = tau(h0(a0) .. hn(an)) for c at level n of the plain module."""
    n = _level(c) - 1
    out = {}
    for t, coef in c.items():
        legs = [lambda a, h=h: A.act(h, a) for h in t]
        viadd(out, _evaluate(A, tau, n, legs), coef)
    return out


def lie_char_map(A: HAlgebra, tau, x, delta_vals=None, D=2):
    """(1/n!) sum sign(s) tau(a0 v_s1(a1) .. v_sn(an)) for a wedge combination x."""
    g = A.H
    delta_vals = {i: Fraction(v) for i, v in (delta_vals or {}).items() if v}
    delta = g.linear_character(delta_vals)
    require(A, tau, delta, D)
    n = _level(x)
    out = {}
    for w, coef in x.items():
        f = Fraction(1, math.factorial(n))
        for p in itertools.permutations(range(n)):
            legs = [lambda a: a] + [lambda a, i=w[p[j]]: A.act(g.gen(i), a) for j in range(n)]
            viadd(out, _evaluate(A, tau, n, legs), coef * f * perm_sign(p))
    cert = certify(A, n, out)
    cert["Lie cycle"] = not d_lie(g, delta_vals, x)
    cert["equals k(A x)"] = out == _k_raw(A, tau, antisymmetrize(g, x))
    return {"level": n, "cochain": out, "certificates": cert}


# ----------------------------------------------------------------- level-wise checks

def cyclic_module_map_check(A: HAlgebra, tau, delta=None, D=1, n_max=2):
    """k commutes with faces, degeneracies and the cyclic operator on every basis tensor."""
    H = A.H
    delta = delta if delta is not None else counit_character(H)
    require(A, tau, delta, max(D, 1))
    M = CocyclicModule(H, "localized", delta=delta, force=True)
    rows = {}
    ok = True
    for n in range(0, n_max + 1):
        faces = degens = cyc = True
        for t in M.level_basis(n, D):
            c = {t: ONE}
            phi = _k_raw(A, tau, c) if n else {(a,): tau.get(a, ZERO) for a in range(A.dim) if tau.get(a)}
            for i in range(n + 2):
                if _k_any(A, tau, M.face(i, n, c), n + 1) != face_A(A, i, n, phi):
                    faces = False
            if A.unit is not None:
                for i in range(n):
                    if _k_any(A, tau, M.degeneracy(i, n, c), n - 1) != degen_A(A, i, n, phi):
                        degens = False
            if _k_any(A, tau, M.cyc(n, c), n) != cyc_A(n, phi):
                cyc = False
        rows[n] = {"faces": faces, "degeneracies": degens if A.unit is not None else None,
                   "cyclic": cyc, "tensors": len(M.level_basis(n, D))}
        ok = ok and faces and cyc and (degens or A.unit is None)
    return {"algebra": A.name, "hopf": H.name, "delta": delta.name, "levels": rows, "ok": ok}


def _k_any(A, tau, c, n):
    if n == 0:
        out = {}
        for t, coef in c.items():
            for a in range(A.dim):
                v = coef * tau.get(a, ZERO)
                if v:
                    out[(a,)] = out.get((a,), ZERO) + v
        return {k: v for k, v in out.items() if v}
    out = {}
    for t, coef in c.items():
        viadd(out, _evaluate(A, tau, n, _localized_legs(A, t)), coef)
    return out


def gamma_face_check(A: HAlgebra, tau, D=1, n_max=2):
    """gamma commutes with faces and the cyclic operator of the plain cocyclic module."""
    H = A.H
    M = CocyclicModule(H, "plain")
    rows = {}
    ok = True
    for n in range(0, n_max + 1):
        faces = cyc = True
        for t in M.level_basis(n, D):
            c = {t: ONE}
            phi = gamma_tau(A, tau, c)
            for i in range(n + 2):
                if gamma_tau(A, tau, M.face(i, n, c)) != face_A(A, i, n, phi):
                    faces = False
            if gamma_tau(A, tau, M.cyc(n, c)) != cyc_A(n, phi):
                cyc = False
        rows[n] = {"faces": faces, "cyclic": cyc}
        ok = ok and faces and cyc
    return {"levels": rows, "ok": ok}


def descent_check(A: HAlgebra, tau, delta=None, D=1, n_max=2):
    """gamma(h0..hn) = k(S_delta(h0) . (h1..hn)) for an invariant trace."""
    from .hopf import S_delta_key
    H = A.H
    delta = delta if delta is not None else counit_character(H)
    M = CocyclicModule(H, "plain")
    ok = True
    for n in range(0, n_max + 1):
        for t in M.level_basis(n, D):
            pi = H.act_diag(S_delta_key(H, delta, t[0]), {t[1:]: ONE})
            if gamma_tau(A, tau, {t: ONE}) != _k_any(A, tau, pi, n):
                ok = False
    return ok


# ----------------------------------------------------------------- built-in test pairs

def conjugation_algebra(G: GroupAlgebra):
    """C[G] acting on itself by g . a = g a g^-1, with tau = coefficient of e."""
    n = G.n
    mul = {(i, j): {G.table[i][j]: 1} for i in range(n) for j in range(n)}

    def rho(g):
        gi = G.inv[g]
        return [[1 if G.table[G.table[g][j]][gi] == i else 0 for j in range(n)] for i in range(n)]
    A = HAlgebra(G, n, mul, rho, unit={G.e: ONE}, name=f"C[{G.name}] by conjugation")
    return A, {G.e: ONE}


def _monomials(nvars, N):
    out = []
    for d in range(N + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for c in combo:
                e[c] += 1
            out.append(tuple(e))
    return out


def derivation_algebra(g, derivs, nvars, N, name=None):
    """Q[x_1..x_nvars] / (degree > N) with g acting by degree-preserving derivations.

    derivs[i] maps generator i of g to a dict (j, k) -> c meaning c x_j d/dx_k.
    """
    mons = _monomials(nvars, N)
    idx = {m: i for i, m in enumerate(mons)}
    dim = len(mons)
    mul = {}
    for a, b in itertools.product(range(dim), repeat=2):
        m = tuple(x + y for x, y in zip(mons[a], mons[b]))
        if m in idx:
            mul[(a, b)] = {idx[m]: 1}

    def L(i):
        M = [[ZERO] * dim for _ in range(dim)]
        for col, m in enumerate(mons):
            for (j, k), c in derivs[i].items():
                if m[k] == 0:
                    continue
                e = list(m)
                coef = Fraction(c) * e[k]
                e[k] -= 1
                e[j] += 1
                M[idx[tuple(e)]][col] += coef
        return M
    gens = [L(i) for i in range(g.dim)]
    A = _enveloping_action(g, dim, mul, gens, {idx[(0,) * nvars]: ONE},
                           name or f"Q[x{nvars}]/deg>{N}", monomials=mons)
    return A


def matrix_algebra_ad(g, mats, size=2, name=None):
    """M_size(Q) with g acting by commutators [X_i, -]; tau is the matrix trace."""
    dim = size * size
    mul = {}
    for (i, j), (k, l) in itertools.product(itertools.product(range(size), repeat=2), repeat=2):
        if j == k:
            mul[(i * size + j, k * size + l)] = {i * size + l: 1}

    def ad(X):
        M = [[ZERO] * dim for _ in range(dim)]
        for k, l in itertools.product(range(size), repeat=2):
            col = k * size + l
            for i in range(size):
                if X[i][k]:
                    M[i * size + l][col] += Fraction(X[i][k])
                if X[l][i]:
                    M[k * size + i][col] -= Fraction(X[l][i])
        return M
    gens = [ad(X) for X in mats]
    unit = {i * size + i: ONE for i in range(size)}
    A = _enveloping_action(g, dim, mul, gens, unit, name or f"M{size} by ad")
    return A, {i * size + i: ONE for i in range(size)}


def _enveloping_action(g, dim, mul, gens, unit, name, monomials=None):
    def mm(X, Y):
        return [[sum((X[i][k] * Y[k][j] for k in range(dim)), ZERO) for j in range(dim)] for i in range(dim)]
    ident = [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]

    def rho(key):
        R = ident
        for i in g._word(key):
            R = mm(R, gens[i])
        return R
    A = HAlgebra(g, dim, mul, rho, unit=unit, name=name)
    A.monomials = monomials
    return A


def sl2_on_polynomials(N=2):
    from .hopf import sl2
    g = sl2()
    # e = x d/dy, f = y d/dx, h = x d/dx - y d/dy
    return derivation_algebra(g, [{(0, 1): 1}, {(1, 0): 1}, {(0, 0): 1, (1, 1): -1}], 2, N, f"Q[x,y]/deg>{N} (sl2)")


def abelian2_on_polynomials(N=2):
    from .hopf import abelian2
    g = abelian2()
    return derivation_algebra(g, [{(0, 0): 1}, {(1, 1): 1}], 2, N, f"Q[x,y]/deg>{N} (euler)")


def constant_term(A):
    return {A.monomials.index((0,) * len(A.monomials[0])): ONE}


def monomial_coefficient(A, m):
    return {A.monomials.index(tuple(m)): ONE}


def sl2_on_m2():
    from .hopf import sl2
    E = [[0, 1], [0, 0]]
    F = [[0, 0], [1, 0]]
    Hm = [[1, 0], [0, -1]]
    return matrix_algebra_ad(sl2(), [E, F, Hm], 2, "M2 by ad (sl2)")


def abelian2_on_m2():
    from .hopf import abelian2
    return matrix_algebra_ad(abelian2(), [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], 2, "M2 by ad (diagonal)")


def corrupt(A: HAlgebra, key, i, j, delta=1):
    """Copy of A with one entry of the action matrix of key perturbed."""
    rho0 = A.rho

    def rho(h):
        M = [list(r) for r in rho0(h)]
        if h == key:
            M[i][j] = Fraction(M[i][j]) + delta
        return M
    B = HAlgebra(A.H, A.dim, A.mul, rho, unit=A.unit, name=A.name + " (corrupted)")
    B.monomials = getattr(A, "monomials", None)
    return B
