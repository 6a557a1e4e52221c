"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``index -> Fraction`` with no stored zeros.  Matrices are
stored by rows.  Everything here is deterministic: reduced row-echelon form is
unique, and pivot order is always by column index.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction


class CompositeNotZero(ArithmeticError):
    """d_out * d_in != 0 for a slice that was supposed to be a complex."""


def Q(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


# ----------------------------------------------------------------- vectors

def vclean(v):
    return {k: c for k, c in v.items() if c != 0}


def vadd(u, v, s=1):
    """u + s*v as a new dict."""
    out = dict(u)
    for k, c in v.items():
        x = out.get(k, 0) + s * c
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def viadd(u, v, s=1):
    """In place u += s*v."""
    for k, c in v.items():
        x = u.get(k, 0) + s * c
        if x:
            u[k] = x
        else:
            u.pop(k, None)
    return u


def vscale(v, s):
    if not s:
        return {}
    return {k: c * s for k, c in v.items()}


def vdense(v, n):
    return [v.get(i, Fraction(0)) for i in range(n)]


def vsparse(xs):
    return {i: Q(x) for i, x in enumerate(xs) if x}


# ----------------------------------------------------------------- matrices

@dataclass
class SparseMatrix:
    rows: int
    cols: int
    data: dict = field(default_factory=dict)  # row -> {col: Fraction}

    def __post_init__(self):
        clean = {}
        for i, r in self.data.items():
            if not 0 <= i < self.rows:
                raise IndexError(f"row {i} out of range")
            r = {j: Q(c) for j, c in r.items() if c != 0}
            for j in r:
                if not 0 <= j < self.cols:
                    raise IndexError(f"col {j} out of range")
            if r:
                clean[i] = r
        self.data = clean

    @classmethod
    def from_dense(cls, m, cols=None):
        rows = len(m)
        cols = len(m[0]) if rows else (cols or 0)
        return cls(rows, cols, {i: vsparse(r) for i, r in enumerate(m)})

    @classmethod
    def from_columns(cls, columns, rows):
        data = {}
        for j, col in enumerate(columns):
            for i, c in col.items():
                if c:
                    data.setdefault(i, {})[j] = c
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, {})

    def to_dense(self):
        return [vdense(self.data.get(i, {}), self.cols) for i in range(self.rows)]

    def columns(self):
        out = [dict() for _ in range(self.cols)]
        for i, r in self.data.items():
            for j, c in r.items():
                out[j][i] = c
        return out

    def transpose(self):
        data = {}
        for i, r in self.data.items():
            for j, c in r.items():
                data.setdefault(j, {})[i] = c
        return SparseMatrix(self.cols, self.rows, data)

    def apply(self, v):
        out = {}
        for i, r in self.data.items():
            s = 0
            for j, c in r.items():
                x = v.get(j)
                if x:
                    s += c * x
            if s:
                out[i] = Fraction(s)
        return out

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        data = {}
        for i, r in self.data.items():
            acc = {}
            for k, c in r.items():
                orow = other.data.get(k)
                if orow:
                    viadd(acc, orow, c)
            if acc:
                data[i] = acc
        return SparseMatrix(self.rows, other.cols, data)

    def __add__(self, other):
        return self._lin(other, 1)

    def __sub__(self, other):
        return self._lin(other, -1)

    def _lin(self, other, s):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {i: dict(r) for i, r in self.data.items()}
        for i, r in other.data.items():
            acc = data.setdefault(i, {})
            viadd(acc, r, s)
            if not acc:
                del data[i]
        return SparseMatrix(self.rows, self.cols, data)

    def scale(self, s):
        return SparseMatrix(self.rows, self.cols, {i: vscale(r, Q(s)) for i, r in self.data.items()})

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self):
        return not self.data

    def nnz(self):
        return sum(len(r) for r in self.data.values())

    def __eq__(self, other):
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.data == other.data


# ----------------------------------------------------------------- echelon engine

class Echelon:
    """Incremental row-echelon basis of a subspace of Q^ncols.

    Each stored row has a leading 1 at its pivot column and no entries to the
    left of it.  ``reduce`` fully eliminates all pivot columns from a vector.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.piv = {}  # pivot col -> row

    @property
    def rank(self):
        return len(self.piv)

    def reduce(self, v):
        v = {k: c for k, c in v.items() if c}
        piv = self.piv
        heap = [k for k in v if k in piv]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c:
                continue
            for j, x in piv[k].items():
                y = v.get(j, 0) - c * x
                if y:
                    if j not in v and j in piv:
                        heapq.heappush(heap, j)
                    v[j] = y
                else:
                    v.pop(j, None)
        return v

    def add(self, v):
        """Insert v; return the pivot column it created or None if dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        inv = 1 / Fraction(r[p])
        self.piv[p] = {j: Fraction(x) * inv for j, x in r.items()}
        return p

    def contains(self, v):
        return not self.reduce(v)

    def rref_rows(self):
        """Fully reduced rows in pivot order."""
        cols = sorted(self.piv)
        out = {}
        done = Echelon(self.ncols)
        # back substitution from the right keeps every row reduced
        for p in reversed(cols):
            r = done.reduce(self.piv[p])
            done.piv[p] = r
            out[p] = r
        return [out[p] for p in cols], cols


def rref(M: SparseMatrix):
    """Reduced row-echelon form: (matrix, pivot columns, rank)."""
    E = Echelon(M.cols)
    for i in sorted(M.data):
        E.add(M.data[i])
    rows, pivots = E.rref_rows()
    R = SparseMatrix(M.rows, M.cols, {i: r for i, r in enumerate(rows)})
    return R, pivots, len(pivots)


def rank(M: SparseMatrix) -> int:
    return rank_of_vectors(M.data.values(), M.cols) if M.rows <= M.cols else rank_of_vectors(M.columns(), M.rows)


def rank_of_vectors(vectors, n) -> int:
    E = Echelon(n)
    for v in vectors:
        E.add(v)
    return E.rank


def kernel_basis(M: SparseMatrix):
    """Basis of ker M, one vector per free column, with a 1 on that column."""
    rows, pivots = Echelon_from(M).rref_rows()
    pset = set(pivots)
    prow = dict(zip(pivots, rows))
    out = []
    for f in range(M.cols):
        if f in pset:
            continue
        v = {f: Fraction(1)}
        for p in pivots:
            c = prow[p].get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def Echelon_from(M):
    E = Echelon(M.cols)
    for i in sorted(M.data):
        E.add(M.data[i])
    return E


def image_basis(M: SparseMatrix):
    """Echelon basis of the column space of M."""
    E = Echelon(M.rows)
    for col in M.columns():
        E.add(col)
    return E


def solve(M: SparseMatrix, b):
    """Some x with Mx = b, or None.  Free variables are set to zero."""
    # eliminate on the augmented system [M | b] row-wise
    n = M.cols
    E = Echelon(n + 1)
    for i in range(M.rows):
        r = dict(M.data.get(i, {}))
        if b.get(i):
            r[n] = Fraction(b[i])
        if r:
            E.add(r)
    if n in E.piv:
        return None
    rows, pivots = E.rref_rows()
    x = {}
    for p, r in zip(pivots, rows):
        c = r.get(n)
        if c:
            x[p] = c
    return x


def cohomology_dim(d_in: SparseMatrix, d_out: SparseMatrix, check=True) -> int:
    if d_in.rows != d_out.cols:
        raise ValueError(f"incompatible slice: d_in {d_in.shape}, d_out {d_out.shape}")
    if check and not (d_out @ d_in).is_zero():
        raise CompositeNotZero(f"d_out*d_in != 0 at a spot of dim {d_in.rows}")
    return d_out.cols - rank(d_out) - rank(d_in)


@dataclass
class ComplexSlice:
    d_in: SparseMatrix
    d_out: SparseMatrix

    def dim(self):
        return cohomology_dim(self.d_in, self.d_out)


# ----------------------------------------------------------------- quotients

@dataclass
class QuotientPresentation:
    ambient_dim: int
    relation_rows: list       # rref rows of the relation span
    pivot_columns: list
    representative_columns: list

    @property
    def dim(self):
        return len(self.representative_columns)

    def __post_init__(self):
        self._prow = dict(zip(self.pivot_columns, self.relation_rows))
        self._rep_index = {c: i for i, c in enumerate(self.representative_columns)}

    def project(self, v):
        """Coordinates of the class of v in the representative basis."""
        out = {}
        ri = self._rep_index
        for k, c in v.items():
            if not c:
                continue
            row = self._prow.get(k)
            if row is None:
                i = ri[k]
                out[i] = out.get(i, 0) + c
            else:
                for j, x in row.items():
                    if j != k:
                        i = ri[j]
                        out[i] = out.get(i, 0) - c * x
        return {i: Fraction(c) for i, c in out.items() if c}

    def section(self, w):
        return {self.representative_columns[i]: c for i, c in w.items() if c}

    def projection_matrix(self):
        cols = [self.project({k: Fraction(1)}) for k in range(self.ambient_dim)]
        return SparseMatrix.from_columns(cols, self.dim)

    def section_matrix(self):
        cols = [{c: Fraction(1)} for c in self.representative_columns]
        return SparseMatrix.from_columns(cols, self.ambient_dim)


def quotient(ambient_dim: int, relations) -> QuotientPresentation:
    E = Echelon(ambient_dim)
    for r in relations:
        if any(not 0 <= k < ambient_dim for k in r):
            raise IndexError("relation vector outside the ambient space")
        E.add(r)
    rows, pivots = E.rref_rows()
    pset = set(pivots)
    reps = [k for k in range(ambient_dim) if k not in pset]
    return QuotientPresentation(ambient_dim, rows, pivots, reps)


# ----------------------------------------------------------------- induced maps

def induced_map(f: SparseMatrix, src: QuotientPresentation, dst: QuotientPresentation):
    """Matrix of the map on quotients induced by f (assumes f(relations) in relations)."""
    cols = [dst.project(f.apply({c: Fraction(1)})) for c in src.representative_columns]
    return SparseMatrix.from_columns(cols, dst.dim)


def maps_into_span(f: SparseMatrix, vectors, target: QuotientPresentation):
    """Check f(v) projects to zero in target for every v."""
    return all(not target.project(f.apply(v)) for v in vectors)


def cohomology_map_rank(f: SparseMatrix, d_in_src, d_out_src, d_in_dst):
    """Rank of the map on cohomology induced by the chain map f at one spot."""
    Z = kernel_basis(d_out_src)
    E = Echelon(f.rows)
    for col in d_in_dst.columns():
        E.add(col)
    base = E.rank
    for z in Z:
        E.add(f.apply(z))
    return E.rank - base
