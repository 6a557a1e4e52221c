"""Coalgebras and Hopf algebras given by computable structure maps.

An element is a dict ``key -> Fraction``.  Tensors are dicts keyed by tuples
of basis keys.  Every presentation memoizes its structure maps per key.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .linalg import viadd

ONE = Fraction(1)


class HopfError(Exception):
    pass


class IdentityFailure(HopfError):
    def __init__(self, identity, witness):
        super().__init__(f"identity {identity} fails at {witness!r}")
        self.identity = identity
        self.witness = witness


class EquivalenceBroken(HopfError):
    pass


class NotGroupLike(HopfError):
    pass


class NotModular(HopfError):
    def __init__(self, witness, msg="S_delta^2(h) != sigma h sigma^-1"):
        super().__init__(f"{msg} at {witness!r}")
        self.witness = witness


class InvalidTable(HopfError):
    pass


class JacobiFailure(HopfError):
    def __init__(self, triple):
        super().__init__(f"Jacobi identity fails on generators {triple}")
        self.triple = triple


class BadParameter(HopfError):
    pass


class UnknownKey(HopfError):
    pass


class NotInvolutive(HopfError):
    pass


# ----------------------------------------------------------------- element helpers

def elem(*pairs):
    out = {}
    for k, c in pairs:
        viadd(out, {k: Fraction(c)})
    return out


def add(*xs):
    out = {}
    for x in xs:
        viadd(out, x)
    return out


def sub(x, y):
    return viadd(dict(x), y, -1)


def scale(x, s):
    s = Fraction(s)
    return {k: c * s for k, c in x.items()} if s else {}


def tensor(*xs):
    """Outer product of plain elements into a tensor keyed by tuples."""
    out = {(): ONE}
    for x in xs:
        nxt = {}
        for k, c in out.items():
            for j, d in x.items():
                nxt[k + (j,)] = nxt.get(k + (j,), 0) + c * d
        out = {k: c for k, c in nxt.items() if c}
    return out


def concat(X, Y):
    out = {}
    for a, c in X.items():
        for b, d in Y.items():
            k = a + b
            v = out.get(k, 0) + c * d
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


# ----------------------------------------------------------------- base class

class Coalgebra:
    name = "coalgebra"
    finite = True

    def __init__(self):
        self._comul = {}

    # to implement: basis(D), weight(k), _comul_key(k), counit(k)
    def basis(self, D=None):
        raise NotImplementedError

    def weight(self, k):
        return 0

    def is_key(self, k):
        raise NotImplementedError

    def comul(self, k):
        r = self._comul.get(k)
        if r is None:
            r = self._comul[k] = self._comul_key(k)
        return r

    def counit(self, k):
        raise NotImplementedError

    # linear extensions
    def Delta(self, x):
        out = {}
        for k, c in x.items():
            viadd(out, self.comul(k), c)
        return out

    def eps(self, x):
        return sum((c * self.counit(k) for k, c in x.items()), Fraction(0))

    def iterated_comul(self, k, n):
        """Delta^(n-1)(k) as a tensor with n legs (n >= 1)."""
        if n == 1:
            return {(k,): ONE}
        key = ("iter", k, n)
        r = self._comul.get(key)
        if r is None:
            r = {}
            for (a, b), c in self.comul(k).items():
                for tail, d in self.iterated_comul(b, n - 1).items():
                    viadd(r, {(a,) + tail: c * d})
            self._comul[key] = r
        return r

    def describe(self):
        return {"name": self.name}


class Hopf(Coalgebra):
    name = "hopf"

    def __init__(self):
        super().__init__()
        self._mul = {}
        self._S = {}

    def one(self):
        raise NotImplementedError

    def mul(self, a, b):
        key = (a, b)
        r = self._mul.get(key)
        if r is None:
            r = self._mul[key] = self._mul_keys(a, b)
        return r

    def antipode(self, k):
        r = self._S.get(k)
        if r is None:
            r = self._S[k] = self._antipode_key(k)
        return r

    def Mul(self, x, y):
        out = {}
        for a, c in x.items():
            for b, d in y.items():
                viadd(out, self.mul(a, b), c * d)
        return out

    def S(self, x):
        out = {}
        for k, c in x.items():
            viadd(out, self.antipode(k), c)
        return out

    def tensor_mul(self, X, Y):
        """Componentwise product in H^{(x)n}."""
        out = {}
        for a, c in X.items():
            for b, d in Y.items():
                part = {(): c * d}
                for u, v in zip(a, b):
                    part = concat(part, {(w,): e for w, e in self.mul(u, v).items()})
                    if not part:
                        break
                viadd(out, part)
        return out

    def act_diag(self, x, T):
        """Diagonal left action of the element x on a tensor T."""
        out = {}
        for k, c in x.items():
            for t, d in T.items():
                n = len(t)
                if n == 0:
                    viadd(out, {(): c * d * self.counit(k)})
                    continue
                viadd(out, self.tensor_mul(self.iterated_comul(k, n), {t: c * d}))
        return out


# ----------------------------------------------------------------- characters

class Character:
    """An algebra map H -> Q, given on basis keys."""

    def __init__(self, H, fn, name="delta"):
        self.H = H
        self.fn = fn
        self.name = name
        self._cache = {}

    def __call__(self, k):
        r = self._cache.get(k)
        if r is None:
            r = self._cache[k] = Fraction(self.fn(k))
        return r

    def on(self, x):
        return sum((c * self(k) for k, c in x.items()), Fraction(0))


def counit_character(H):
    return Character(H, H.counit, "eps")


def check_character(H, delta, D):
    keys = H.basis(D)
    if delta.on(H.one()) != 1:
        raise IdentityFailure("character", "delta(1) != 1")
    for a in keys:
        for b in keys:
            if delta.on(H.mul(a, b)) != delta(a) * delta(b):
                raise IdentityFailure("character", (a, b))
    return True


# ----------------------------------------------------------------- group algebras

class GroupAlgebra(Hopf):
    """C[G] for a finite group given by its multiplication table."""

    def __init__(self, table, labels=None, name="group"):
        super().__init__()
        n = len(table)
        if n == 0 or any(len(r) != n for r in table):
            raise InvalidTable("multiplication table must be square and non-empty")
        if any(not 0 <= x < n for r in table for x in r):
            raise InvalidTable("table entries must be element indices")
        self.table = [list(r) for r in table]
        self.n = n
        self.labels = list(labels) if labels else [str(i) for i in range(n)]
        self.name = name
        ids = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
        if len(ids) != 1:
            raise InvalidTable("no two-sided identity")
        self.e = ids[0]
        self.inv = {}
        for g in range(n):
            hs = [h for h in range(n) if table[g][h] == self.e and table[h][g] == self.e]
            if len(hs) != 1:
                raise InvalidTable(f"element {self.labels[g]} has no inverse")
            self.inv[g] = hs[0]

    def check_group(self):
        t, n = self.table, self.n
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidTable(f"not associative at {(a, b, c)}")
        return True

    def basis(self, D=None):
        return list(range(self.n))

    def is_key(self, k):
        return isinstance(k, int) and 0 <= k < self.n

    def one(self):
        return {self.e: ONE}

    def _comul_key(self, g):
        return {(g, g): ONE}

    def counit(self, g):
        return ONE

    def _mul_keys(self, a, b):
        return {self.table[a][b]: ONE}

    def _antipode_key(self, g):
        return {self.inv[g]: ONE}

    def describe(self):
        return {"name": self.name, "kind": "group", "order": self.n}


class FunctionAlgebra(Hopf):
    """Functions on a finite group; basis of point indicators."""

    def __init__(self, group: GroupAlgebra, name=None):
        super().__init__()
        self.G = group
        self.n = group.n
        self.name = name or f"fun({group.name})"

    def basis(self, D=None):
        return list(range(self.n))

    def is_key(self, k):
        return isinstance(k, int) and 0 <= k < self.n

    def one(self):
        return {g: ONE for g in range(self.n)}

    def _comul_key(self, g):
        t = self.G.table
        return {(a, b): ONE for a in range(self.n) for b in range(self.n) if t[a][b] == g}

    def counit(self, g):
        return ONE if g == self.G.e else Fraction(0)

    def _mul_keys(self, a, b):
        return {a: ONE} if a == b else {}

    def _antipode_key(self, g):
        return {self.G.inv[g]: ONE}

    def describe(self):
        return {"name": self.name, "kind": "functions", "order": self.n}


def cyclic_group(n):
    return GroupAlgebra([[(i + j) % n for j in range(n)] for i in range(n)],
                        [f"g{i}" for i in range(n)], name=f"Z{n}")


def symmetric_group3():
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return GroupAlgebra(table, ["".join(map(str, p)) for p in perms], name="S3")


def one_grouplike():
    """The point coalgebra C rho, also the trivial Hopf algebra."""
    return GroupAlgebra([[0]], ["rho"], name="point")


def sign_character(G: GroupAlgebra):
    """A character G -> {+1,-1} when G is S3 (permutation parity)."""
    def parity(g):
        p = tuple(int(c) for c in G.labels[g])
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        return -1 if inv % 2 else 1
    return Character(G, parity, "sign")


def group_character(G: GroupAlgebra, values, name="chi"):
    vals = {g: Fraction(v) for g, v in values.items()}
    return Character(G, lambda g: vals[g], name)


# ----------------------------------------------------------------- enveloping algebras

class Enveloping(Hopf):
    """U(g) in the PBW basis of sorted exponent vectors.

    ``brackets[(i, j)]`` for i < j gives [e_i, e_j] as a dict k -> coefficient.
    """

    finite = False

    def __init__(self, dim, brackets=None, name="U(g)", check_jacobi=True):
        super().__init__()
        if dim < 1:
            raise BadParameter("Lie algebra dimension must be >= 1")
        self.dim = dim
        self.name = name
        self.br = {}
        for (i, j), v in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim) or i == j:
                raise InvalidTable(f"bad bracket index {(i, j)}")
            v = {k: Fraction(c) for k, c in v.items() if c}
            if any(not 0 <= k < dim for k in v):
                raise InvalidTable(f"bad bracket output index in {(i, j)}")
            if i < j:
                self.br[(i, j)] = v
            else:
                self.br[(j, i)] = {k: -c for k, c in v.items()}
        self._norm = {}
        if check_jacobi:
            self.check_jacobi()

    def bracket(self, i, j):
        if i == j:
            return {}
        if i < j:
            return self.br.get((i, j), {})
        return {k: -c for k, c in self.br.get((j, i), {}).items()}

    def bracket_vec(self, u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                viadd(out, self.bracket(i, j), a * b)
        return out

    def check_jacobi(self):
        for i, j, k in itertools.combinations(range(self.dim), 3):
            tot = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                viadd(tot, self.bracket_vec(self.bracket(a, b), {c: ONE}))
            if tot:
                raise JacobiFailure((i, j, k))
        return True

    def is_abelian(self):
        return not any(self.br.values())

    def basis(self, D=4):
        out = []
        for w in range(D + 1):
            for combo in itertools.combinations_with_replacement(range(self.dim), w):
                e = [0] * self.dim
                for c in combo:
                    e[c] += 1
                out.append(tuple(e))
        return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))

    def is_key(self, k):
        return isinstance(k, tuple) and len(k) == self.dim and all(isinstance(x, int) and x >= 0 for x in k)

    def weight(self, k):
        return sum(k)

    def one(self):
        return {(0,) * self.dim: ONE}

    def gen(self, i):
        e = [0] * self.dim
        e[i] = 1
        return tuple(e)

    def _word(self, k):
        return tuple(i for i, a in enumerate(k) for _ in range(a))

    def _key(self, word):
        e = [0] * self.dim
        for i in word:
            e[i] += 1
        return tuple(e)

    def normal(self, word):
        """Rewrite a word in generators into the PBW basis."""
        r = self._norm.get(word)
        if r is not None:
            return r
        for p in range(len(word) - 1):
            if word[p] > word[p + 1]:
                j, i = word[p], word[p + 1]
                r = dict(self.normal(word[:p] + (i, j) + word[p + 2:]))
                for k, c in self.bracket(i, j).items():
                    viadd(r, self.normal(word[:p] + (k,) + word[p + 2:]), -c)
                break
        else:
            r = {self._key(word): ONE}
        self._norm[word] = r
        return r

    def _mul_keys(self, a, b):
        return self.normal(self._word(a) + self._word(b))

    def _comul_key(self, k):
        out = {}
        for b in itertools.product(*(range(a + 1) for a in k)):
            c = ONE
            for ai, bi in zip(k, b):
                c *= _binom(ai, bi)
            out[(tuple(b), tuple(a - x for a, x in zip(k, b)))] = c
        return out

    def counit(self, k):
        return ONE if not any(k) else Fraction(0)

    def _antipode_key(self, k):
        w = self._word(k)
        return {m: c * (-1) ** len(w) for m, c in self.normal(tuple(reversed(w))).items()}

    def linear_character(self, values, name="delta"):
        """Character extending a functional on g that vanishes on [g,g]."""
        vals = [Fraction(values.get(i, 0)) for i in range(self.dim)]
        for (i, j), v in self.br.items():
            if sum(vals[k] * c for k, c in v.items()):
                raise CharacterNotOnAbelianization(f"delta does not vanish on [e{i},e{j}]")

        def fn(k):
            out = ONE
            for a, x in zip(k, vals):
                out *= x ** a
            return out
        return Character(self, fn, name)

    def describe(self):
        return {"name": self.name, "kind": "lie", "dim": self.dim,
                "brackets": {f"{i},{j}": {str(k): str(c) for k, c in sorted(v.items())}
                             for (i, j), v in sorted(self.br.items()) if v}}


class CharacterNotOnAbelianization(HopfError):
    pass


def _binom(n, k):
    from math import comb
    return Fraction(comb(n, k))


def symmetric_algebra(dim):
    return Enveloping(dim, {}, name=f"S(V{dim})")


def abelian2():
    return Enveloping(2, {}, name="abelian2")


def heisenberg3():
    return Enveloping(3, {(0, 1): {2: 1}}, name="heisenberg3")


def sl2():
    # basis e, f, h with [e,f]=h, [h,e]=2e, [h,f]=-2f
    return Enveloping(3, {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}}, name="sl2")


# ----------------------------------------------------------------- U_q(sl2)

class UqSl2(Hopf):
    """U_q(sl2) with basis x^m y^k s^p where x=E, y=KF, s=K.

    Relations: s x = q^2 x s, s y = q^-2 y s, y x = q^2 x y - (s^2 - 1)/(q - q^-1).
    Coproducts: D(x) = 1(x)x + x(x)s, D(y) = 1(x)y + y(x)s, D(s) = s(x)s.
    """

    finite = False

    def __init__(self, q=Fraction(3, 2), prange=2):
        super().__init__()
        q = Fraction(q)
        if q in (0, 1, -1):
            raise BadParameter(f"q must avoid 0 and +-1, got {q}")
        self.q = q
        self.c = 1 / (q - 1 / q)
        self.prange = prange
        self.name = f"Uq(sl2)[q={q}]"
        self._left = {}

    def basis(self, D=2):
        P = self.prange
        out = []
        for w in range(D + 1):
            for m in range(w, -1, -1):
                for p in range(-P, P + 1):
                    out.append((m, w - m, p))
        return out

    def is_key(self, k):
        return isinstance(k, tuple) and len(k) == 3 and k[0] >= 0 and k[1] >= 0

    def weight(self, k):
        return k[0] + k[1]

    def one(self):
        return {(0, 0, 0): ONE}

    X = (1, 0, 0)
    Y = (0, 1, 0)
    K = (0, 0, 1)
    KINV = (0, 0, -1)

    def _lx(self, z):
        return {(m + 1, k, p): c for (m, k, p), c in z.items()}

    def _ls(self, z, e):
        q2 = self.q ** 2
        return {(m, k, p + e): c * q2 ** (e * (m - k)) for (m, k, p), c in z.items()}

    def _ly_key(self, key):
        r = self._left.get(key)
        if r is not None:
            return r
        m, k, p = key
        if m == 0:
            r = {(0, k + 1, p): ONE}
        else:
            base = {(m - 1, k, p): ONE}
            r = {}
            viadd(r, self._lx(self._ly(base)), self.q ** 2)
            viadd(r, self._ls(self._ls(base, 1), 1), -self.c)
            viadd(r, base, self.c)
        self._left[key] = r
        return r

    def _ly(self, z):
        out = {}
        for key, c in z.items():
            viadd(out, self._ly_key(key), c)
        return out

    def _mul_keys(self, a, b):
        m, k, p = a
        z = self._ls({b: ONE}, p)
        for _ in range(k):
            z = self._ly(z)
        for _ in range(m):
            z = self._lx(z)
        return z

    def _comul_key(self, key):
        m, k, p = key
        if key == self.X or key == self.Y:
            return {((0, 0, 0), key): ONE, (key, self.K): ONE}
        if m:
            return self.tensor_mul(self.comul(self.X), self.comul((m - 1, k, p)))
        if k:
            return self.tensor_mul(self.comul(self.Y), self.comul((0, k - 1, p)))
        return {((0, 0, p), (0, 0, p)): ONE}

    def counit(self, key):
        return ONE if key[0] == 0 and key[1] == 0 else Fraction(0)

    def _antipode_key(self, key):
        m, k, p = key
        if m:
            return self.Mul(self.antipode((m - 1, k, p)), {(1, 0, -1): -ONE})
        if k:
            return self.Mul(self.antipode((0, k - 1, p)), {(0, 1, -1): -ONE})
        return {(0, 0, -p): ONE}

    def character(self, sign=1):
        def fn(key):
            m, k, p = key
            return 0 if m or k else sign ** p
        return Character(self, fn, "eps" if sign == 1 else "sgnK")

    def describe(self):
        return {"name": self.name, "kind": "uq_sl2", "q": str(self.q)}


# ----------------------------------------------------------------- table Hopf algebras

class TableHopf(Hopf):
    """A finite-dimensional Hopf algebra given by explicit structure constants."""

    def __init__(self, labels, unit, mul, comul, counit, antipode, name="table"):
        super().__init__()
        self.labels = list(labels)
        self.n = len(labels)
        self.name = name
        self._unit = {k: Fraction(c) for k, c in unit.items()}
        self._mt = mul
        self._ct = comul
        self._et = [Fraction(x) for x in counit]
        self._st = antipode

    def basis(self, D=None):
        return list(range(self.n))

    def is_key(self, k):
        return isinstance(k, int) and 0 <= k < self.n

    def one(self):
        return dict(self._unit)

    def _mul_keys(self, a, b):
        return dict(self._mt.get((a, b), {}))

    def _comul_key(self, k):
        return dict(self._ct.get(k, {}))

    def counit(self, k):
        return self._et[k]

    def _antipode_key(self, k):
        return dict(self._st.get(k, {}))

    def describe(self):
        return {"name": self.name, "kind": "table", "dim": self.n}


def group_as_table(G: GroupAlgebra, name=None):
    """The same Hopf algebra as ``G`` but presented by a raw table."""
    n = G.n
    mul = {(a, b): {G.table[a][b]: ONE} for a in range(n) for b in range(n)}
    comul = {g: {(g, g): ONE} for g in range(n)}
    anti = {g: {G.inv[g]: ONE} for g in range(n)}
    return TableHopf(G.labels, {G.e: 1}, mul, comul, [1] * n, anti, name=name or G.name)


# ----------------------------------------------------------------- identity checks

def twisted_antipode(H, delta, x):
    """S_delta(x) = sum delta(x_0) S(x_1)."""
    out = {}
    for k, c in x.items():
        if not H.is_key(k):
            raise UnknownKey(k)
        for (a, b), d in H.comul(k).items():
            da = delta(a)
            if da:
                viadd(out, H.antipode(b), c * d * da)
    return out


def S_delta_key(H, delta, k):
    cache = H.__dict__.setdefault("_Sd", {})
    key = (delta.name, id(delta), k)
    r = cache.get(key)
    if r is None:
        r = cache[key] = twisted_antipode(H, delta, {k: ONE})
    return r


def _mul_sum(H, T, f0=None, f1=None):
    """sum f0(h0) f1(h1) over a 2-tensor T."""
    out = {}
    for (a, b), c in T.items():
        A = f0(a) if f0 else {a: ONE}
        B = f1(b) if f1 else {b: ONE}
        viadd(out, H.Mul(A, B), c)
    return out


def _fail(report, name, witness, strict):
    report["failures"].append({"identity": name, "witness": repr(witness)})
    if strict:
        raise IdentityFailure(name, witness)


def _new_report(kind, H, D):
    return {"kind": kind, "hopf": H.name, "D": D, "checked": {}, "failures": []}


def check_coalgebra(C, D=None, strict=True):
    rep = _new_report("coalgebra", C, D)
    keys = C.basis(D) if D is not None else C.basis()
    n = 0
    for k in keys:
        n += 1
        d = C.comul(k)
        # counit law
        left, right = {}, {}
        for (a, b), c in d.items():
            viadd(left, {b: c * C.counit(a)})
            viadd(right, {a: c * C.counit(b)})
        if left != {k: ONE} or right != {k: ONE}:
            _fail(rep, "counit", k, strict)
        # coassociativity
        l3, r3 = {}, {}
        for (a, b), c in d.items():
            for (a1, a2), e in C.comul(a).items():
                viadd(l3, {(a1, a2, b): c * e})
            for (b1, b2), e in C.comul(b).items():
                viadd(r3, {(a, b1, b2): c * e})
        if l3 != r3:
            _fail(rep, "coassociativity", k, strict)
        w = C.weight(k)
        if any(C.weight(a) + C.weight(b) > w for a, b in d):
            _fail(rep, "comul-weight", k, strict)
    rep["checked"] = {"counit": n, "coassociativity": n}
    return rep


def check_hopf_axioms(H, D=None, strict=True):
    """Counit, antipode, S(1)=1, eps S = eps, anti-multiplicativity, anti-cocommutation."""
    rep = check_coalgebra(H, D, strict)
    rep["kind"] = "hopf"
    keys = H.basis(D) if D is not None else H.basis()
    one = H.one()
    for k in keys:
        d = H.comul(k)
        e = H.counit(k)
        left = _mul_sum(H, d, f0=H.antipode)
        right = _mul_sum(H, d, f1=H.antipode)
        if left != scale(one, e) or right != scale(one, e):
            _fail(rep, "antipode", k, strict)
        if H.eps(H.antipode(k)) != e:
            _fail(rep, "eps-S", k, strict)
        # Delta S(h) = sum S(h1) (x) S(h0)
        lhs = H.Delta(H.antipode(k))
        rhs = {}
        for (a, b), c in d.items():
            viadd(rhs, tensor(H.antipode(b), H.antipode(a)), c)
        if lhs != rhs:
            _fail(rep, "Delta-S", k, strict)
        if any(H.weight(j) > H.weight(k) for j in H.antipode(k)):
            _fail(rep, "S-weight", k, strict)
    if H.S(one) != one:
        _fail(rep, "S(1)", "1", strict)
    for a in keys:
        for b in keys:
            ab = H.mul(a, b)
            if H.S(ab) != H.Mul(H.antipode(b), H.antipode(a)):
                _fail(rep, "S-anti", (a, b), strict)
            # bialgebra compatibility
            if H.Delta(ab) != H.tensor_mul(H.comul(a), H.comul(b)):
                _fail(rep, "Delta-mult", (a, b), strict)
            if H.eps(ab) != H.counit(a) * H.counit(b):
                _fail(rep, "eps-mult", (a, b), strict)
            if any(H.weight(j) > H.weight(a) + H.weight(b) for j in ab):
                _fail(rep, "mul-weight", (a, b), strict)
    if H.Mul(one, one) != one:
        _fail(rep, "unit", "1", strict)
    for a in keys:
        if H.Mul(one, {a: ONE}) != {a: ONE} or H.Mul({a: ONE}, one) != {a: ONE}:
            _fail(rep, "unit", a, strict)
    nk = len(keys)
    rep["checked"].update({"antipode": nk, "S(1)": 1, "eps-S": nk, "S-anti": nk * nk, "Delta-S": nk})
    rep["passed"] = not rep["failures"]
    return rep


def check_twisted_identities(H, delta, D=None, strict=True):
    """The six identities for the twisted antipode on all keys (pairs) up to weight D."""
    rep = _new_report("twisted", H, D)
    rep["delta"] = delta.name
    keys = H.basis(D) if D is not None else H.basis()
    one = H.one()
    Sd = lambda k: S_delta_key(H, delta, k)
    for k in keys:
        d = H.comul(k)
        dk = delta(k)
        # sum S_d(h0) h1 = delta(h) 1
        if _mul_sum(H, d, f0=Sd) != scale(one, dk):
            _fail(rep, "Sd(h0)h1", k, strict)
        if H.eps(Sd(k)) != dk:
            _fail(rep, "eps-Sd", k, strict)
        # Delta S_d(h) = sum S(h1) (x) S_d(h0)
        rhs = {}
        for (a, b), c in d.items():
            viadd(rhs, tensor(H.antipode(b), Sd(a)), c)
        if H.Delta(Sd(k)) != rhs:
            _fail(rep, "Delta-Sd", k, strict)
        # sum S^2(h1) S_d(h0) = delta(h) 1
        tot = {}
        for (a, b), c in d.items():
            viadd(tot, H.Mul(H.S(H.antipode(b)), Sd(a)), c)
        if tot != scale(one, dk):
            _fail(rep, "S2(h1)Sd(h0)", k, strict)
    if twisted_antipode(H, delta, one) != one:
        _fail(rep, "Sd(1)", "1", strict)
    for a in keys:
        for b in keys:
            lhs = twisted_antipode(H, delta, H.mul(a, b))
            if lhs != H.Mul(Sd(b), Sd(a)):
                _fail(rep, "Sd-anti", (a, b), strict)
    nk = len(keys)
    rep["checked"] = {"Sd(h0)h1": nk, "Sd(1)": 1, "eps-Sd": nk, "Delta-Sd": nk,
                      "Sd-anti": nk * nk, "S2(h1)Sd(h0)": nk}
    rep["passed"] = not rep["failures"]
    return rep


def check_involutive(H, delta, D=None):
    """Compare S_d^2 = Id with sum S_d(h1) h0 = delta(h) 1 key by key."""
    keys = H.basis(D) if D is not None else H.basis()
    one = H.one()
    w1, w2 = [], []
    for k in keys:
        i = twisted_antipode(H, delta, S_delta_key(H, delta, k)) == {k: ONE}
        tot = {}
        for (a, b), c in H.comul(k).items():
            viadd(tot, H.Mul(S_delta_key(H, delta, b), {a: ONE}), c)
        ii = tot == scale(one, delta(k))
        if not i:
            w1.append(k)
        if not ii:
            w2.append(k)
    if bool(w1) != bool(w2):
        raise EquivalenceBroken(f"S_d^2=Id witnesses {w1[:3]} vs twisted-flip witnesses {w2[:3]}")
    return {"holds": not w1, "witnesses": [repr(k) for k in w1[:5]], "keys": len(keys)}


def grouplike_inverse(H, sigma):
    """Inverse of a group-like basis key, via the antipode."""
    inv = H.antipode(sigma)
    if len(inv) != 1:
        raise NotGroupLike(sigma)
    (k, c), = inv.items()
    if c != 1:
        raise NotGroupLike(sigma)
    return k


def check_grouplike(H, sigma):
    if not H.is_key(sigma):
        raise UnknownKey(sigma)
    if H.comul(sigma) != {(sigma, sigma): ONE} or H.counit(sigma) != 1:
        raise NotGroupLike(sigma)
    return True


def check_modular_pair(H, delta, sigma, D=None):
    check_grouplike(H, sigma)
    if delta(sigma) != 1:
        raise NotModular(sigma, "delta(sigma) != 1")
    sinv = grouplike_inverse(H, sigma)
    keys = H.basis(D) if D is not None else H.basis()
    for k in keys:
        lhs = twisted_antipode(H, delta, S_delta_key(H, delta, k))
        rhs = H.Mul(H.mul(sigma, k), {sinv: ONE})
        if lhs != rhs:
            raise NotModular(k)
    return {"passed": True, "sigma": repr(sigma), "keys": len(keys)}


def random_element(H, D, rng, terms=3):
    keys = H.basis(D) if D is not None else H.basis()
    out = {}
    for _ in range(terms):
        k = rng.choice(keys)
        out[k] = out.get(k, 0) + Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return {k: c for k, c in out.items() if c}


def sample_identities(H, D=None, seed=0, count=8):
    """Linear extensions of the axioms on seeded random rational combinations.

    The basis checks already imply these; the samples catch mistakes in the
    linear-extension helpers (Mul, S, Delta, tensor_mul) themselves.
    """
    rng = random.Random(seed)
    one = H.one()
    fails = []
    for i in range(count):
        x, y, z = (random_element(H, D, rng) for _ in range(3))
        if H.Mul(H.Mul(x, y), z) != H.Mul(x, H.Mul(y, z)):
            fails.append(("assoc", i))
        if H.S(H.Mul(x, y)) != H.Mul(H.S(y), H.S(x)):
            fails.append(("S-anti", i))
        if H.Delta(H.Mul(x, y)) != H.tensor_mul(H.Delta(x), H.Delta(y)):
            fails.append(("Delta-mult", i))
        if _mul_sum(H, H.Delta(x), f0=H.antipode) != scale(one, H.eps(x)):
            fails.append(("antipode", i))
    return {"seed": seed, "count": count, "failures": fails, "passed": not fails}
