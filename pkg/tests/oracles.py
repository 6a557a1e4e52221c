"""Brute-force reference computations that share no code with the package.

Everything here works from raw data (a multiplication table, structure
constants) and takes ranks with sympy.
"""
import itertools
import math

import sympy


def _rank(cols, nrows):
    if not cols or not nrows:
        return 0
    M = sympy.zeros(nrows, len(cols))
    for j, col in enumerate(cols):
        for i, c in col.items():
            M[i, j] = c
    return M.rank()


class GroupCocyclic:
    """Cocyclic module of C[G] with the trivial modular pair, from the table alone.

    Level n has basis G^n.  Cofaces: insert e in front, double a letter, append e.
    Cyclic operator: (g1..gn) -> (g1^-1 g2, .., g1^-1 gn, g1^-1).
    """

    def __init__(self, table):
        self.t = table
        self.n = len(table)
        self.e = next(e for e in range(self.n) if all(table[e][g] == g for g in range(self.n)))
        self.inv = {g: next(h for h in range(self.n) if table[g][h] == self.e) for g in range(self.n)}

    def basis(self, n):
        return list(itertools.product(range(self.n), repeat=n))

    def face(self, i, w):
        if i == 0:
            return (self.e,) + w
        if i == len(w) + 1:
            return w + (self.e,)
        return w[:i] + (w[i - 1],) + w[i:]

    def tau(self, w):
        if not w:
            return w
        g = self.inv[w[0]]
        return tuple(self.t[g][h] for h in w[1:]) + (g,)

    def b(self, w):
        out = {}
        for i in range(len(w) + 2):
            k = self.face(i, w)
            out[k] = out.get(k, 0) + (-1) ** i
        return {k: c for k, c in out.items() if c}

    def lam_orbits(self, n):
        """Basis of lambda-invariant cochains: signed orbit sums of (-1)^n tau."""
        seen, out = set(), []
        s = -1 if n % 2 else 1
        for w in self.basis(n):
            if w in seen:
                continue
            vec, cur, sign = {}, w, 1
            while True:
                if cur in vec:
                    break
                vec[cur] = sign
                seen.add(cur)
                cur, sign = self.tau(cur), sign * s
            # the orbit closes with sign; if it returns with -1 the sum vanishes
            if sign == vec[w]:
                out.append(vec)
        return out

    def _apply_b(self, vec, n):
        idx = {w: i for i, w in enumerate(self.basis(n + 1))}
        out = {}
        for w, c in vec.items():
            for k, d in self.b(w).items():
                out[idx[k]] = out.get(idx[k], 0) + c * d
        return {k: v for k, v in out.items() if v}

    def hh_dims(self, n_max):
        ranks = {}
        for n in range(n_max + 1):
            cols = [self._apply_b({w: 1}, n) for w in self.basis(n)]
            ranks[n] = _rank(cols, self.n ** (n + 1))
        return {n: self.n ** n - ranks[n] - ranks.get(n - 1, 0) for n in range(n_max + 1)}

    def hc_dims(self, n_max):
        ranks, sizes = {}, {}
        for n in range(n_max + 1):
            orb = self.lam_orbits(n)
            sizes[n] = len(orb)
            ranks[n] = _rank([self._apply_b(v, n) for v in orb], self.n ** (n + 1))
        return {n: sizes[n] - ranks[n] - ranks.get(n - 1, 0) for n in range(n_max + 1)}


def ce_homology(dim, brackets, delta=None):
    """Lie algebra homology with coefficients in C_delta.

    ``brackets[(i, j)] = {k: c}`` for i < j.  Chains are wedges of sorted index
    tuples, boundary
      d(x1..xn) = sum_i (-1)^(i+1) delta(x_i) x1..^xi..xn
                + sum_{i<j} (-1)^(i+j) [xi,xj] x1..^xi..^xj..xn
    with the sign convention fixed so that d^2 = 0 (checked).
    """
    delta = delta or {}

    def br(i, j):
        if i < j:
            return brackets.get((i, j), {})
        return {k: -c for k, c in brackets.get((j, i), {}).items()}

    def normal(idx):
        if len(set(idx)) < len(idx):
            return 0, None
        perm = sorted(range(len(idx)), key=lambda a: idx[a])
        inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
        return (-1) ** inv, tuple(sorted(idx))

    def d(w):
        out = {}
        n = len(w)
        for i in range(n):
            c = delta.get(w[i], 0)
            if c:
                k = w[:i] + w[i + 1:]
                out[k] = out.get(k, 0) + (-1) ** i * c
        for i in range(n):
            for j in range(i + 1, n):
                rest = w[:i] + w[i + 1:j] + w[j + 1:]
                for k, c in br(w[i], w[j]).items():
                    s, key = normal((k,) + rest)
                    if s:
                        out[key] = out.get(key, 0) + s * c * (-1) ** (i + j)
        return {k: v for k, v in out.items() if v}

    bases = {n: list(itertools.combinations(range(dim), n)) for n in range(dim + 1)}
    mats = {}
    for n in range(1, dim + 1):
        idx = {w: i for i, w in enumerate(bases[n - 1])}
        M = sympy.zeros(len(bases[n - 1]), len(bases[n]))
        for j, w in enumerate(bases[n]):
            for k, c in d(w).items():
                M[idx[k], j] = sympy.nsimplify(c)
        mats[n] = M
    for n in range(2, dim + 1):
        assert (mats[n - 1] * mats[n]).is_zero_matrix
    r = {n: mats[n].rank() for n in mats}
    return {n: math.comb(dim, n) - r.get(n, 0) - r.get(n + 1, 0) for n in range(dim + 1)}
