"""Exact linear algebra over Cyc: sparse matrices, order-3 tensors, spans."""

from .errors import DimensionMismatch, NotASquareDimension, SingularMatrix
from .scalars import Cyc, to_cyc


def zeros(d, m=1):
    z = Cyc.zero(m)
    return [z] * d


def unit_vector(d, i, m=1):
    v = zeros(d, m)
    v[i] = Cyc.one(m)
    return v


def as_vec(entries, m=1):
    return [to_cyc(x, m) for x in entries]


class Mat:
    """Sparse matrix; entries maps (row, col) to a nonzero Cyc."""

    __slots__ = ("rows", "cols", "entries", "m")

    def __init__(self, rows, cols, entries=None, m=1):
        self.rows = rows
        self.cols = cols
        self.m = m
        self.entries = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatch("entry (%d,%d) outside %dx%d" % (i, j, rows, cols))
            v = to_cyc(v, m)
            if v:
                self.entries[(i, j)] = v

    @classmethod
    def identity(cls, d, m=1):
        one = Cyc.one(m)
        return cls(d, d, {(i, i): one for i in range(d)}, m)

    @classmethod
    def from_columns(cls, columns, m=None):
        columns = [list(c) for c in columns]
        if m is None:
            m = max((x.m for c in columns for x in c if isinstance(x, Cyc)), default=1)
        rows = len(columns[0]) if columns else 0
        ent = {}
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise DimensionMismatch("ragged columns")
            for i, x in enumerate(col):
                ent[(i, j)] = x
        return cls(rows, len(columns), ent, m)

    @classmethod
    def from_dense(cls, rows_list, m=None):
        if not rows_list:
            return cls(0, 0, {}, m or 1)
        cols = list(zip(*rows_list))
        return cls.from_columns(cols, m)

    def get(self, i, j):
        v = self.entries.get((i, j))
        return v if v is not None else Cyc.zero(self.m)

    def dense(self):
        z = Cyc.zero(self.m)
        out = [[z] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j):
        col = zeros(self.rows, self.m)
        for (i, jj), v in self.entries.items():
            if jj == j:
                col[i] = v
        return col

    def columns(self):
        cols = [zeros(self.rows, self.m) for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def apply(self, vec):
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length %d, expected %d" % (len(vec), self.cols))
        out = zeros(self.rows, self.m)
        for (i, j), v in self.entries.items():
            x = vec[j]
            if x:
                out[i] = out[i] + v * x
        return out

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch("%dx%d @ %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        by_row = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                acc[key] = acc[key] + a * b if key in acc else a * b
        return Mat(self.rows, other.cols, acc, self.m)

    def transpose(self):
        return Mat(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}, self.m)

    def inverse(self):
        if self.rows != self.cols:
            raise SingularMatrix("non-square matrix")
        d = self.rows
        inv = solve_many(self.dense(), [unit_vector(d, i, self.m) for i in range(d)])
        if inv is None:
            raise SingularMatrix("matrix is singular")
        return Mat.from_columns(inv, self.m)

    def lift(self, m):
        return Mat(self.rows, self.cols, {k: to_cyc(v, m) for k, v in self.entries.items()}, m)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return "Mat(%dx%d, nnz=%d)" % (self.rows, self.cols, len(self.entries))


class Tensor3:
    """Sparse order-3 tensor of dimension d; entries maps (i, j, k) to Cyc."""

    __slots__ = ("d", "entries")

    def __init__(self, d, entries=None):
        self.d = d
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    def get(self, i, j, k):
        return self.entries.get((i, j, k))

    def __eq__(self, other):
        return isinstance(other, Tensor3) and self.d == other.d and self.entries == other.entries

    def __hash__(self):
        return hash((self.d, frozenset(self.entries.items())))

    def __repr__(self):
        return "Tensor3(d=%d, nnz=%d)" % (self.d, len(self.entries))


# -- elimination -----------------------------------------------------------

def _bareiss_echelon(rows, ncols):
    """Fraction-free forward elimination in place; returns pivot columns."""
    n = len(rows)
    prev = None
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, n):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    v = piv * row[j] - a * prow[j]
                    row[j] = v / prev if prev is not None else v
                row[c] = a - a
            elif prev is not None:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = piv * row[j] / prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == n:
            break
    return pivots


def solve_many(A, targets):
    """Solve A x = t for each target (A dense, rows x cols); None if any fails."""
    nr = len(A)
    nc = len(A[0]) if nr else 0
    k = len(targets)
    rows = [list(A[i]) + [t[i] for t in targets] for i in range(nr)]
    pivots = _bareiss_echelon(rows, nc + k)
    pivots = [p for p in pivots if p < nc]
    r = len(pivots)
    for i in range(r, nr):
        if any(rows[i][nc:]):
            return None
    z = rows[0][0] - rows[0][0] if nr else None
    sols = []
    for t in range(k):
        x = [z] * nc
        for i in range(r - 1, -1, -1):
            c = pivots[i]
            acc = rows[i][nc + t]
            row = rows[i]
            for j in range(c + 1, nc):
                if row[j] and x[j]:
                    acc = acc - row[j] * x[j]
            x[c] = acc / row[c]
        sols.append(x)
    return sols


def solve_in_span(vectors, target):
    """Coefficients c with sum c_i v_i = target, or None when target is outside the span."""
    if not vectors:
        return [] if not any(target) else None
    d = len(target)
    for v in vectors:
        if len(v) != d:
            raise DimensionMismatch("vector length %d, expected %d" % (len(v), d))
    A = [[v[i] for v in vectors] for i in range(d)]
    sol = solve_many(A, [target])
    return None if sol is None else sol[0]


def rank(vectors):
    if not vectors:
        return 0
    rows = [list(v) for v in vectors]
    return len(_bareiss_echelon(rows, len(rows[0])))


def nullspace(A, m=1):
    """Basis of {x : A x = 0} for a dense matrix A (list of rows)."""
    nr = len(A)
    nc = len(A[0]) if nr else 0
    rows = [list(r) for r in A]
    pivots = _bareiss_echelon(rows, nc)
    free = [c for c in range(nc) if c not in pivots]
    out = []
    one = Cyc.one(m)
    zero = Cyc.zero(m)
    for f in free:
        x = [zero] * nc
        x[f] = one
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            acc = zero
            for j in range(c + 1, nc):
                if rows[i][j] and x[j]:
                    acc = acc - rows[i][j] * x[j]
            x[c] = acc / rows[i][c]
        out.append(x)
    return out


class SpanSolver:
    """Incremental Gauss-Jordan over sparse dict vectors with arbitrary keys.

    Built once from a list of generators; express() then writes any target
    in terms of the generators, or returns None when it lies outside their span.
    """

    def __init__(self, vectors):
        self.rows = []  # (pivot key, normalized row dict, combination dict)
        self.independent = True
        self.n = len(vectors)
        for idx, v in enumerate(vectors):
            vec, comb = self._reduce({k: x if isinstance(x, Cyc) else to_cyc(x, 1)
                                      for k, x in v.items()})
            comb = {k: -c for k, c in comb.items()}
            comb[idx] = comb.get(idx, 0) + 1
            vec = {k: c for k, c in vec.items() if c}
            if not vec:
                self.independent = False
                continue
            piv = min(vec)
            inv = vec[piv].inverse()
            vec = {k: c * inv for k, c in vec.items()}
            comb = {k: c * inv for k, c in comb.items() if c}
            for i, (p, row, rc) in enumerate(self.rows):
                a = row.get(piv)
                if a:
                    row = dict(row)
                    for k, c in vec.items():
                        row[k] = row.get(k, 0) - a * c
                    row = {k: c for k, c in row.items() if c}
                    rc = dict(rc)
                    for k, c in comb.items():
                        rc[k] = rc.get(k, 0) - a * c
                    self.rows[i] = (p, row, rc)
            self.rows.append((piv, vec, comb))

    def _reduce(self, vec):
        comb = {}
        for p, row, rc in self.rows:
            a = vec.get(p)
            if a:
                for k, c in row.items():
                    vec[k] = vec.get(k, 0) - a * c
                for k, c in rc.items():
                    comb[k] = comb.get(k, 0) + a * c
        return vec, comb

    @property
    def rank(self):
        return len(self.rows)

    def express(self, target, m=1):
        vec, comb = self._reduce({k: x if isinstance(x, Cyc) else to_cyc(x, m)
                                  for k, x in target.items()})
        if any(vec.values()):
            return None
        return [to_cyc(comb.get(i, 0), m) for i in range(self.n)]


def pure_tensor_position(v, d=None):
    """(i, j) when v (length d*d, row-major) is exactly e_i (x) e_j, else None."""
    n = len(v)
    if d is None:
        d = int(round(n ** 0.5))
    if d * d != n:
        raise NotASquareDimension("length %d is not a square" % n)
    pos = None
    for idx, x in enumerate(v):
        if x:
            if pos is not None or x != 1:
                return None
            pos = idx
    if pos is None:
        return None
    return divmod(pos, d)


def change_basis_tensors(unit, counit, mult, comult, antipode, P):
    """Re-express structure tensors in the basis given by the columns of P.

    unit and counit are vectors, mult and comult Tensor3, antipode a Mat or
    None.  Returns the same five objects in the new coordinates.
    """
    d = P.rows
    if P.cols != d:
        raise SingularMatrix("basis matrix must be square")
    m = P.m
    Pinv = P.inverse()
    cols = P.columns()
    pinv_cols = Pinv.columns()
    new_unit = Pinv.apply(unit)
    new_counit = [sum((counit[i] * cols[a][i] for i in range(d) if cols[a][i]), Cyc.zero(m))
                  for a in range(d)]
    # mult: b_a b_b = sum_{ij} P_ia P_jb mu_ij^k e_k, then coordinates via Pinv
    by_ij = {}
    for (i, j, k), v in mult.entries.items():
        by_ij.setdefault((i, j), []).append((k, v))
    new_mult = {}
    for a in range(d):
        ca = [(i, x) for i, x in enumerate(cols[a]) if x]
        for b in range(d):
            cb = [(j, x) for j, x in enumerate(cols[b]) if x]
            prod = {}
            for i, x in ca:
                for j, y in cb:
                    for k, v in by_ij.get((i, j), ()):
                        prod[k] = prod.get(k, 0) + x * y * v
            for k, v in prod.items():
                if v:
                    for c, w in enumerate(pinv_cols[k]):
                        if w:
                            key = (a, b, c)
                            new_mult[key] = new_mult.get(key, 0) + w * v
    by_i = {}
    for (i, j, k), v in comult.entries.items():
        by_i.setdefault(i, []).append((j, k, v))
    new_comult = {}
    for a in range(d):
        acc = {}
        for i, x in enumerate(cols[a]):
            if x:
                for j, k, v in by_i.get(i, ()):
                    acc[(j, k)] = acc.get((j, k), 0) + x * v
        for (j, k), v in acc.items():
            if v:
                for b, w1 in enumerate(pinv_cols[j]):
                    if w1:
                        for c, w2 in enumerate(pinv_cols[k]):
                            if w2:
                                key = (a, b, c)
                                new_comult[key] = new_comult.get(key, 0) + w1 * w2 * v
    new_antipode = None if antipode is None else Pinv @ antipode @ P
    clean = lambda t: {k: to_cyc(v, m) for k, v in t.items() if v}
    return (new_unit, new_counit, Tensor3(d, clean(new_mult)), Tensor3(d, clean(new_comult)),
            new_antipode)
