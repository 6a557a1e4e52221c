"""Cocyclic modules attached to a Hopf algebra.

Three flavors share one class:

* ``plain``: level n is H^(n+1); faces insert the coproduct, the last face
  wraps the first leg around; the cyclic operator rotates legs.
* ``localized``: level n is H^n (level 0 is the ground field); faces insert 1,
  the coproduct, or a trailing 1; the cyclic operator is
  t(h1..hn) = S_delta(h1) . (h2, .., hn, 1) with the diagonal action.
* ``modular``: as ``localized`` with the trailing unit replaced by sigma.

Operators act on tensors (dicts tuple -> Fraction); ``matrix`` assembles them
on truncated level bases.
"""
from __future__ import annotations

from fractions import Fraction

from .hopf import (ONE, NotInvolutive, S_delta_key, check_involutive, check_modular_pair,
                   counit_character, grouplike_inverse)
from .linalg import SparseMatrix, viadd


class TruncationEscape(Exception):
    pass


def tensor_weight(H, t):
    return sum(H.weight(k) for k in t)


def _with_leg(t, i, X):
    """Replace leg i of the key tuple t by each term of the tensor X."""
    return {t[:i] + x + t[i + 1:]: c for x, c in X.items()}


class CocyclicModule:
    def __init__(self, H, flavor="plain", delta=None, sigma=None, force=False, D=None):
        self.H = H
        self.flavor = flavor
        self.D = D
        self.delta = delta if delta is not None else counit_character(H)
        self.sigma = sigma
        self._mats = {}
        self._bases = {}
        if flavor == "localized" and not force:
            chk = check_involutive(H, self.delta, D)
            if not chk["holds"]:
                raise NotInvolutive(f"S_delta^2 != Id, witnesses {chk['witnesses']}")
        if flavor == "modular":
            if sigma is None:
                raise ValueError("modular flavor needs sigma")
            if not force:
                check_modular_pair(H, self.delta, sigma, D)
        self._tail = H.one() if sigma is None else {sigma: ONE}

    # -- bookkeeping
    def legs(self, n):
        return n + 1 if self.flavor == "plain" else n

    def describe(self):
        d = {"hopf": self.H.name, "flavor": self.flavor, "delta": self.delta.name}
        if self.sigma is not None:
            d["sigma"] = repr(self.sigma)
        return d

    def level_basis(self, n, D=None, weight=None):
        """Tensors with the right number of legs and total weight <= D (or == weight)."""
        D = self.D if D is None else D
        key = (n, D, weight)
        if key in self._bases:
            return self._bases[key]
        H = self.H
        keys = H.basis(D if D is not None else 0) if not getattr(H, "finite", True) else H.basis(D)
        byw = {}
        for k in keys:
            byw.setdefault(H.weight(k), []).append(k)
        top = weight if weight is not None else (D if D is not None else 0)
        m = self.legs(n)

        def rec(j, left):
            if j == m:
                if weight is None or left == 0:
                    yield ()
                return
            for w in sorted(byw):
                if w > left:
                    break
                for k in byw[w]:
                    for rest in rec(j + 1, left - w):
                        yield (k,) + rest
        out = sorted(rec(0, top), key=lambda t: (tensor_weight(H, t), t))
        self._bases[key] = out
        return out

    # -- operators on tensors
    def face(self, i, n, T):
        """d^i: level n -> level n+1."""
        H = self.H
        out = {}
        if self.flavor == "plain":
            for t, c in T.items():
                if i <= n:
                    viadd(out, {t[:i] + ab + t[i + 1:]: c * d for ab, d in H.comul(t[i]).items()})
                elif i == n + 1:
                    viadd(out, {(b,) + t[1:] + (a,): c * d for (a, b), d in H.comul(t[0]).items()})
                else:
                    raise IndexError(i)
            return out
        for t, c in T.items():
            if i == 0:
                viadd(out, {(u,) + t: c * d for u, d in H.one().items()})
            elif i <= n:
                viadd(out, {t[:i - 1] + ab + t[i:]: c * d for ab, d in H.comul(t[i - 1]).items()})
            elif i == n + 1:
                viadd(out, {t + (u,): c * d for u, d in self._tail.items()})
            else:
                raise IndexError(i)
        return out

    def degeneracy(self, i, n, T):
        """s^i: level n -> level n-1, 0 <= i <= n-1: counit on leg i+1."""
        H = self.H
        out = {}
        j = i + 1 if self.flavor == "plain" else i
        for t, c in T.items():
            e = H.counit(t[j])
            if e:
                viadd(out, {t[:j] + t[j + 1:]: c * e})
        return out

    def cyc(self, n, T):
        H = self.H
        out = {}
        if self.flavor == "plain":
            for t, c in T.items():
                viadd(out, {t[1:] + t[:1]: c})
            return out
        for t, c in T.items():
            if n == 0:
                viadd(out, {t: c})
                continue
            rest = {t[1:] + (u,): d for u, d in self._tail.items()}
            viadd(out, H.act_diag(S_delta_key(H, self.delta, t[0]), rest), c)
        return out

    def lam(self, n, T):
        s = -1 if n % 2 else 1
        return {k: s * c for k, c in self.cyc(n, T).items()}

    def hochschild_b(self, n, T):
        out = {}
        for i in range(n + 2):
            viadd(out, self.face(i, n, T), -1 if i % 2 else 1)
        return out

    def bprime(self, n, T):
        out = {}
        for i in range(n + 1):
            viadd(out, self.face(i, n, T), -1 if i % 2 else 1)
        return out

    def norm(self, n, T):
        out = {}
        cur = T
        for _ in range(n + 1):
            viadd(out, cur)
            cur = self.lam(n, cur)
        return out

    def extra_degeneracy(self, n, T):
        """sigma_{-1} = s^{n-1} t: level n -> level n-1."""
        return self.degeneracy(n - 1, n, self.cyc(n, T))

    def connes_B(self, n, T):
        """B = N sigma_{-1} (1 - lambda): level n -> level n-1."""
        x = viadd(dict(T), self.lam(n, T), -1)
        return self.norm(n - 1, self.extra_degeneracy(n, x))

    # -- matrices
    def op(self, name):
        return {
            "b": (self.hochschild_b, 1), "b'": (self.bprime, 1), "t": (self.cyc, 0),
            "lambda": (self.lam, 0), "N": (self.norm, 0), "B": (self.connes_B, -1),
            "sigma_-1": (self.extra_degeneracy, -1),
        }[name]

    def matrix(self, name, n, D=None, weight=None, i=None):
        """Matrix of an operator on level n, truncated to weight <= D (or == weight)."""
        key = (name, n, D, weight, i)
        M = self._mats.get(key)
        if M is not None:
            return M
        if name in ("face", "degeneracy"):
            fn = (lambda m, T: self.face(i, m, T)) if name == "face" else (lambda m, T: self.degeneracy(i, m, T))
            shift = 1 if name == "face" else -1
        else:
            fn, shift = self.op(name)
        src = self.level_basis(n, D, weight)
        tgt_level = n + shift
        tgt = self.level_basis(tgt_level, D, weight) if tgt_level >= 0 else []
        M = assemble(lambda T: fn(n, T), src, tgt, label=f"{name} level {n}")
        self._mats[key] = M
        return M


def assemble(fn, src, tgt, label="operator"):
    index = {t: j for j, t in enumerate(tgt)}
    cols = []
    for s in src:
        img = fn({s: ONE})
        col = {}
        for k, c in img.items():
            j = index.get(k)
            if j is None:
                raise TruncationEscape(f"{label}: image term {k!r} of {s!r} outside the truncation")
            col[j] = c
        cols.append(col)
    return SparseMatrix.from_columns(cols, len(tgt))


def build_sharp(H, D=None):
    return CocyclicModule(H, "plain", D=D)


def build_sharp_delta(H, delta=None, D=None, force=False):
    return CocyclicModule(H, "localized", delta=delta, D=D, force=force)


def build_sharp_delta_sigma(H, delta, sigma, D=None, force=False):
    return CocyclicModule(H, "modular", delta=delta, sigma=sigma, D=D, force=force)


def power_on_tensor(fn, T, times):
    for _ in range(times):
        T = fn(T)
    return T


def check_cyclicity(M: CocyclicModule, n_max, D=None):
    """t^(n+1) = Id on every basis tensor of levels 0..n_max.

    Operators are applied to elements directly, so this works for truncations
    that are not closed (the image only has to come back to the input).
    """
    out = {}
    for n in range(n_max + 1):
        bad = []
        basis = M.level_basis(n, D)
        for t in basis:
            img = power_on_tensor(lambda T: M.cyc(n, T), {t: ONE}, n + 1)
            if img != {t: ONE}:
                bad.append(t)
        out[n] = {"size": len(basis), "failures": [repr(b) for b in bad[:3]], "ok": not bad}
    return out


def check_power_formula(M: CocyclicModule, n_max, D=None):
    """t^(n+1)(h1..hn) = (S_d^2 h1, .., S_d^2 hn) on each basis tensor."""
    H = M.H
    res = {}
    for n in range(1, n_max + 1):
        ok = True
        basis = M.level_basis(n, D)
        for t in basis:
            lhs = power_on_tensor(lambda T: M.cyc(n, T), {t: ONE}, n + 1)
            rhs = {(): ONE}
            for k in t:
                s2 = {}
                for j, c in S_delta_key(H, M.delta, k).items():
                    viadd(s2, S_delta_key(H, M.delta, j), c)
                rhs = {a + (j,): c * d for a, c in rhs.items() for j, d in s2.items()}
                rhs = {a: c for a, c in rhs.items() if c}
            if lhs != rhs:
                ok = False
                break
        res[n] = {"size": len(basis), "ok": ok}
    return res


def check_cosimplicial(M: CocyclicModule, n_max, D=None):
    """All cocyclic identities as equations on basis tensors of levels <= n_max."""
    fails = []
    count = 0

    def eq(a, b, what):
        nonlocal count
        count += 1
        if a != b:
            fails.append(what)

    for n in range(n_max + 1):
        for t in M.level_basis(n, D):
            T = {t: ONE}
            # d^j d^i = d^i d^(j-1), i < j   (level n -> n+2)
            for j in range(n + 3):
                for i in range(j):
                    eq(M.face(j, n + 1, M.face(i, n, T)), M.face(i, n + 1, M.face(j - 1, n, T)),
                       ("dd", n, i, j, t))
            # s^j d^i
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = M.degeneracy(j, n + 1, M.face(i, n, T))
                    if i < j:
                        rhs = M.face(i, n - 1, M.degeneracy(j - 1, n, T)) if n >= 1 else None
                    elif i in (j, j + 1):
                        rhs = T
                    else:
                        rhs = M.face(i - 1, n - 1, M.degeneracy(j, n, T)) if n >= 1 else None
                    if rhs is not None:
                        eq(lhs, rhs, ("sd", n, i, j, t))
            # s^j s^i = s^i s^(j+1), i <= j   (level n -> n-2)
            if n >= 2:
                for j in range(n - 1):
                    for i in range(j + 1):
                        eq(M.degeneracy(j, n - 1, M.degeneracy(i, n, T)),
                           M.degeneracy(i, n - 1, M.degeneracy(j + 1, n, T)), ("ss", n, i, j, t))
            # t d^i = d^(i-1) t (1 <= i <= n+1), t d^0 = d^(n+1)
            eq(M.cyc(n + 1, M.face(0, n, T)), M.face(n + 1, n, T), ("td0", n, t))
            for i in range(1, n + 2):
                eq(M.cyc(n + 1, M.face(i, n, T)), M.face(i - 1, n, M.cyc(n, T)), ("td", n, i, t))
            # t s^i = s^(i-1) t (1 <= i <= n-1), t s^0 = s^(n-1) t^2
            if n >= 1:
                eq(M.cyc(n - 1, M.degeneracy(0, n, T)),
                   M.degeneracy(n - 1, n, M.cyc(n, M.cyc(n, T))), ("ts0", n, t))
                for i in range(1, n):
                    eq(M.cyc(n - 1, M.degeneracy(i, n, T)), M.degeneracy(i - 1, n, M.cyc(n, T)),
                       ("ts", n, i, t))
    return {"checked": count, "failures": [repr(f) for f in fails[:5]], "ok": not fails}
