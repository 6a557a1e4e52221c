"""X-complex of a tensor algebra T(V) over an H-module V, assembled two ways.

(a) literal: X0 = X1 = T(V)_delta with boundaries N and t - 1;
(b) from one-forms: Omega^1(T(V)) spanned by x dv y, divided by (twisted)
    commutators [r, w]_sigma = r w - w sigma(r) and coinvariants, with
    d(v1..vn) = sum_i v1..dvi..vn and b_sigma(dx y) = -[x, y]_sigma.

Words are tuples of basis indices of V; a one-form x dv y is (word, i) with
the differential on letter i.
"""
from __future__ import annotations

from fractions import Fraction

from .hopf import counit_character
from .linalg import SparseMatrix, cohomology_dim, quotient, rank, viadd
from .weil import cat

ONE = Fraction(1)


class MismatchedBoundaries(Exception):
    pass


class Module:
    """V = Q^dim with H acting through matrices rho(h) (lists of rows)."""

    def __init__(self, H, dim, rho, name="V"):
        self.H = H
        self.dim = dim
        self.rho = rho
        self.name = name
        self._m = {}

    def mat(self, h):
        M = self._m.get(h)
        if M is None:
            M = self._m[h] = [[Fraction(c) for c in row] for row in self.rho(h)]
        return M

    def act_vec(self, h, j):
        M = self.mat(h)
        return {i: M[i][j] for i in range(self.dim) if M[i][j]}

    def act_word(self, h, w):
        if not w:
            return {(): self.H.counit(h)} if self.H.counit(h) else {}
        out = {}
        for legs, c in self.H.iterated_comul(h, len(w)).items():
            part = {(): c}
            for g, j in zip(legs, w):
                part = cat(part, {(i,): e for i, e in self.act_vec(g, j).items()})
                if not part:
                    break
            viadd(out, part)
        return out

    def check(self, keys):
        """rho(ab) = rho(a) rho(b) and rho(1) = Id on the given keys."""
        def mm(A, B):
            return [[sum(A[i][k] * B[k][j] for k in range(self.dim)) for j in range(self.dim)]
                    for i in range(self.dim)]

        def of(x):
            M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for k, c in x.items():
                A = self.mat(k)
                for i in range(self.dim):
                    for j in range(self.dim):
                        M[i][j] += c * A[i][j]
            return M
        ident = [[ONE if i == j else Fraction(0) for j in range(self.dim)] for i in range(self.dim)]
        if of(self.H.one()) != ident:
            return False
        return all(of(self.H.mul(a, b)) == mm(self.mat(a), self.mat(b)) for a in keys for b in keys)


def trivial_module(H):
    return Module(H, 1, lambda h: [[H.counit(h)]], name="trivial")


def regular_module(G):
    """A finite group algebra acting on itself by left multiplication."""
    n = G.n

    def rho(g):
        return [[1 if G.table[g][j] == i else 0 for j in range(n)] for i in range(n)]
    return Module(G, n, rho, name=f"regular({G.name})")


def uq_two_dim(U):
    """x -> E, y -> K F, sigma -> K = diag(q, 1/q) on Q^2."""
    q = U.q
    E = [[0, 1], [0, 0]]
    F = [[0, 0], [1, 0]]
    K = [[q, 0], [0, 1 / q]]

    def mm(A, B):
        return [[sum(Fraction(A[i][k]) * B[k][j] for k in range(2)) for j in range(2)] for i in range(2)]

    def pw(A, e):
        R = [[ONE, 0], [0, ONE]]
        for _ in range(e):
            R = mm(R, A)
        return R
    Y = mm(K, F)
    Kinv = [[1 / q, 0], [0, q]]

    def rho(key):
        m, k, p = key
        return mm(mm(pw(E, m), pw(Y, k)), pw(K if p >= 0 else Kinv, abs(p)))
    return Module(U, 2, rho, name="uq-two-dim")


def _words(dim, n):
    if n == 0:
        return [()]
    return [w + (i,) for w in _words(dim, n - 1) for i in range(dim)]


class XComplex:
    def __init__(self, V: Module, delta=None, sigma=None, D=3, keys=None, with_unit=False):
        self.V = V
        self.H = V.H
        self.delta = delta if delta is not None else counit_character(V.H)
        self.sigma = sigma
        self.D = D
        self.keys = list(keys) if keys is not None else list(V.H.basis(1))
        self.with_unit = with_unit

    # -- the two sides
    def words(self, n):
        return _words(self.V.dim, n)

    def forms(self, n):
        return [(w, i) for w in self.words(n) for i in range(n)]

    def sig(self, w):
        if self.sigma is None:
            return {w: ONE}
        return self.V.act_word(self.sigma, w)

    def coinv_words(self, n):
        rels = []
        for h in self.keys:
            dh = self.delta(h)
            for w in self.words(n):
                r = self.V.act_word(h, w)
                viadd(r, {w: -Fraction(dh)})
                rels.append(r)
        return rels

    def coinv_forms(self, n):
        rels = []
        for h in self.keys:
            dh = self.delta(h)
            for w, i in self.forms(n):
                r = {(u, i): c for u, c in self.V.act_word(h, w).items()}
                viadd(r, {(w, i): -Fraction(dh)})
                rels.append(r)
        return rels

    def twisted_commutators(self, n):
        """[r, w]_sigma = r w - w sigma(r) for words r and one-forms w, total length n."""
        rels = []
        for a in range(1, n):
            for r in self.words(a):
                sr = self.sig(r)
                for w, i in self.forms(n - a):
                    rel = {(r + w, i + a): ONE}
                    for u, c in sr.items():
                        viadd(rel, {(w + u, i): -c})
                    rels.append(rel)
        return rels

    # -- operators on one-forms
    def d(self, w):
        return {(w, i): ONE for i in range(len(w))}

    def b_sigma(self, form):
        """b_sigma(x dv y), by rewriting x dv y = d(xv) y - dx (v y)."""
        w, i = form
        x, v, y = w[:i], w[i:i + 1], w[i + 1:]
        out = {}
        # d(xv) y -> -[xv, y]_sigma
        xv = x + v
        if y:
            viadd(out, {xv + y: -ONE})
            for u, c in self.sig(xv).items():
                viadd(out, {y + u: c})
        else:
            viadd(out, {xv: -ONE})
            viadd(out, self.sig(xv))
        # - dx (v y) = - sum_j x[:j] dx_j x[j+1:] v y
        for j in range(len(x)):
            viadd(out, self.b_sigma((w, j)), -1)
        return out

    # -- quotient presentations per length
    def spaces(self, n):
        W = self.words(n)
        F = self.forms(n)
        wi = {w: k for k, w in enumerate(W)}
        fi = {f: k for k, f in enumerate(F)}
        R0 = quotient(len(W), [{wi[u]: c for u, c in r.items()} for r in self.coinv_words(n)])
        rel1 = self.coinv_forms(n) + self.twisted_commutators(n)
        R1 = quotient(len(F), [{fi[u]: c for u, c in r.items() if c} for r in rel1])
        return W, wi, R0, F, fi, R1, rel1

    def check(self, n):
        W, wi, R0, F, fi, R1, rel1 = self.spaces(n)

        def vw(x):
            return {wi[u]: c for u, c in x.items() if c}

        def vf(x):
            return {fi[u]: c for u, c in x.items() if c}
        res = {"length": n, "dim X0": R0.dim, "dim X1": R1.dim}
        # well defined maps
        res["b kills relations"] = all(not R0.project(vw(lin_b(self, r))) for r in rel1)
        res["d keeps coinvariants"] = all(not R1.project(vf(lin_d(self, r))) for r in self.coinv_words(n))
        # b_sigma d = 0 modulo coinvariants, d b_sigma = 0 in the quotient
        res["b d = 0"] = all(not R0.project(vw(lin_b(self, self.d(w)))) for w in W)
        res["d b = 0"] = all(not R1.project(vf(lin_d(self, self.b_sigma(f)))) for f in F)
        if self.sigma is None:
            # (a) versus (b): iota(v y) = dv y
            iota = lambda w: {(w, 0): ONE}  # noqa: E731
            reps = [W[c] for c in R0.representative_columns]
            img = [R1.project(vf(iota(w))) for w in reps]
            res["iota iso"] = rank(SparseMatrix.from_columns(img, R1.dim)) == R1.dim == R0.dim
            t = lambda w: {w[1:] + w[:1]: ONE}  # noqa: E731
            same_d = all(R1.project(vf(self.d(w))) == R1.project(vf(_lin(iota, _Nsum(w)))) for w in W)
            same_b = all(R0.project(vw(self.b_sigma((w, 0))))
                         == R0.project(vw(viadd(dict(t(w)), {w: ONE}, -1))) for w in W)
            res["d = N"] = same_d
            res["b = t - 1"] = same_b
            # cohomology of the super-complex X0 -N-> X1 -(t-1)-> X0 at this length
            dm = SparseMatrix.from_columns([R1.project(vf(self.d(w))) for w in reps], R1.dim)
            breps = [F[c] for c in R1.representative_columns]
            bm = SparseMatrix.from_columns([R0.project(vw(self.b_sigma(f))) for f in breps], R0.dim)
            res["H even"] = cohomology_dim(bm, dm)
            res["H odd"] = cohomology_dim(dm, bm)
            if not (same_d and same_b and res["iota iso"]):
                raise MismatchedBoundaries(f"assemblies disagree at length {n}: {res}")
        return res

    def report(self):
        rows = {n: self.check(n) for n in range(1, self.D + 1)}
        out = {"module": self.V.name, "hopf": self.H.name, "delta": self.delta.name,
               "sigma": repr(self.sigma), "D": self.D, "lengths": rows}
        if self.sigma is None:
            even = sum(r["H even"] for r in rows.values()) + (1 if self.with_unit else 0)
            odd = sum(r["H odd"] for r in rows.values())
            out["window"] = {"H0": even, "H1": odd}
        flags = [v for r in rows.values() for k, v in r.items() if isinstance(v, bool)]
        out["ok"] = all(flags)
        return out


def _Nsum(w):
    out = {}
    for i in range(len(w)):
        viadd(out, {w[i:] + w[:i]: ONE})
    return out


def _lin(fn, x):
    out = {}
    for k, c in x.items():
        viadd(out, fn(k), c)
    return out


def lin_b(X, x):
    return _lin(X.b_sigma, x)


def lin_d(X, x):
    return _lin(X.d, x)


def tensor_x_complex(V: Module, delta=None, sigma=None, D=3, keys=None, with_unit=False):
    return XComplex(V, delta, sigma, D, keys, with_unit).report()
