"""Passing between set-theoretic, vector-space and algebra solutions."""

from itertools import product as iproduct

from .linalg import Mat
from .scalars import Cyc, to_cyc
from .solutions import PE, RPE, _norm_tag, bijection_witness, invert
from .errors import NotBijective


class LinearSolution:
    """An endomorphism of V (x) V, dim V = d, as a d^2 x d^2 matrix.

    Basis vector e_i (x) e_j has index i*d + j.
    """

    def __init__(self, d, matrix, equation_tag=None):
        if matrix.rows != d * d or matrix.cols != d * d:
            raise ValueError("matrix must be %dx%d" % (d * d, d * d))
        self.d = d
        self.matrix = matrix
        self.equation_tag = _norm_tag(equation_tag)
        self._cols = None

    @property
    def m(self):
        return self.matrix.m

    def column_dicts(self):
        if self._cols is None:
            cols = [dict() for _ in range(self.d * self.d)]
            for (i, j), v in self.matrix.entries.items():
                cols[j][i] = v
            self._cols = cols
        return self._cols

    def __eq__(self, other):
        return isinstance(other, LinearSolution) and self.d == other.d and self.matrix == other.matrix

    def __repr__(self):
        return "LinearSolution(d=%d, tag=%s)" % (self.d, self.equation_tag)


class AlgebraSolution:
    """R in End(V) (x) End(V), keyed ((i, j), (k, l)) for S_ij (x) S_kl."""

    def __init__(self, d, R):
        self.d = d
        self.R = {k: v for k, v in R.items() if v}

    def __eq__(self, other):
        return isinstance(other, AlgebraSolution) and self.d == other.d and self.R == other.R

    def __repr__(self):
        return "AlgebraSolution(d=%d, terms=%d)" % (self.d, len(self.R))


# -- set to vector space ---------------------------------------------------

def _set_matrix(s, m=1):
    n = s.n
    one = Cyc.one(m)
    ent = {}
    for x in range(n):
        for y in range(n):
            a, b = s(x, y)
            key = (a * n + b, x * n + y)
            ent[key] = ent.get(key, Cyc.zero(m)) + one
    return Mat(n * n, n * n, ent, m)


def linearise(s, m=1):
    """s^v on k[S] (x) k[S]."""
    return LinearSolution(s.n, _set_matrix(s, m), s.equation_tag)


def pullback(s, m=1):
    """f_s on k^S (x) k^S in the delta basis: delta_g (x) delta_h -> delta_{s^-1(g,h)}."""
    w = bijection_witness(s)
    if w is not None:
        raise NotBijective("pullback needs a bijection", w)
    inv = invert(s)
    n = s.n
    one = Cyc.one(m)
    ent = {}
    for g in range(n):
        for h in range(n):
            a, b = inv(g, h)
            ent[(a * n + b, g * n + h)] = one
    tag = {RPE: PE, PE: RPE}.get(s.equation_tag)
    return LinearSolution(n, Mat(n * n, n * n, ent, m), tag)


def is_permutation_matrix(M):
    if M.rows != M.cols:
        return False
    rows = set()
    cols = set()
    for (i, j), v in M.entries.items():
        if v != 1 or i in rows or j in cols:
            return False
        rows.add(i)
        cols.add(j)
    return len(rows) == M.rows


# -- linear maps on V^(x)3 -------------------------------------------------

def _apply_leg(vec, leg, cols, d):
    out = {}
    for (i, j, k), c in vec.items():
        if leg == 12:
            src, rest = i * d + j, k
        elif leg == 13:
            src, rest = i * d + k, j
        else:
            src, rest = j * d + k, i
        for r, v in cols[src].items():
            a, b = divmod(r, d)
            if leg == 12:
                key = (a, b, rest)
            elif leg == 13:
                key = (a, rest, b)
            else:
                key = (rest, a, b)
            out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _compose_legs(vec, legs, cols, d):
    # legs listed in application order
    for leg in legs:
        vec = _apply_leg(vec, leg, cols, d)
    return vec


def linear_identity_witness(f, lhs, rhs):
    d = f.d
    cols = f.column_dicts()
    one = Cyc.one(f.m)
    for t in iproduct(range(d), repeat=3):
        v = {t: one}
        if _compose_legs(v, lhs, cols, d) != _compose_legs(v, rhs, cols, d):
            return t
    return None


def linear_equation_witness(f, eq):
    eq = _norm_tag(eq)
    if eq == RPE:
        # Z12 Z13 Z23 = Z23 Z12
        return linear_identity_witness(f, (23, 13, 12), (12, 23))
    # Z23 Z13 Z12 = Z12 Z23
    return linear_identity_witness(f, (12, 13, 23), (23, 12))


def verify_linear_equation(f, eq):
    return linear_equation_witness(f, eq) is None


def check_linear_flags(f):
    return {
        "commutative": linear_identity_witness(f, (23, 13), (13, 23)) is None,
        "cocommutative": linear_identity_witness(f, (13, 12), (12, 13)) is None,
    }


def linear_product(f, g):
    """f x g on (V (x) W)^(x)2 with V (x) W indexed by i*dW + j."""
    d1, d2 = f.d, g.d
    d = d1 * d2
    m = f.m
    ent = {}
    fc, gc = f.column_dicts(), g.column_dicts()
    for x1, y1, x2, y2 in iproduct(range(d1), range(d1), range(d2), range(d2)):
        for r1, v1 in fc[x1 * d1 + y1].items():
            a1, b1 = divmod(r1, d1)
            for r2, v2 in gc[x2 * d2 + y2].items():
                a2, b2 = divmod(r2, d2)
                row = (a1 * d2 + a2) * d + (b1 * d2 + b2)
                col = (x1 * d2 + x2) * d + (y1 * d2 + y2)
                ent[(row, col)] = v1 * v2
    return LinearSolution(d, Mat(d * d, d * d, ent, m), f.equation_tag)


# -- vector space to algebra -----------------------------------------------

def to_algebra_element(f):
    """R = sum alpha_{kl}^{th} S_kt (x) S_lh where f(v_t (x) v_h) = sum alpha v_k (x) v_l."""
    d = f.d
    R = {}
    for (row, col), v in f.matrix.entries.items():
        k, l = divmod(row, d)
        t, h = divmod(col, d)
        R[((k, t), (l, h))] = v
    return AlgebraSolution(d, R)


def from_algebra_element(R, m=1):
    d = R.d
    ent = {}
    for ((k, t), (l, h)), v in R.R.items():
        ent[(k * d + l, t * d + h)] = v
    return LinearSolution(d, Mat(d * d, d * d, ent, m))


def set_algebra_element(s, m=1):
    """s^A = sum_{x,y} S_{psi_y(x), x} (x) S_{y o x, y}, built directly from the table."""
    one = Cyc.one(m)
    n = s.n
    R = {}
    for x in range(n):
        for y in range(n):
            a, b = s(x, y)
            key = ((a, x), (b, y))
            R[key] = R.get(key, Cyc.zero(m)) + one
    return AlgebraSolution(n, R)


def _leg_element(R, legs, d, one):
    out = {}
    for (p, q), v in R.R.items():
        for a in range(d):
            diag = (a, a)
            if legs == 12:
                key = (p, q, diag)
            elif legs == 13:
                key = (p, diag, q)
            else:
                key = (diag, p, q)
            out[key] = v
    return out


def _mult3(X, Y):
    by_rows = {}
    for key, w in Y.items():
        by_rows.setdefault((key[0][0], key[1][0], key[2][0]), []).append((key, w))
    out = {}
    for key, v in X.items():
        cols = (key[0][1], key[1][1], key[2][1])
        for k2, w in by_rows.get(cols, ()):
            nk = ((key[0][0], k2[0][1]), (key[1][0], k2[1][1]), (key[2][0], k2[2][1]))
            out[nk] = out.get(nk, 0) + v * w
    return {k: v for k, v in out.items() if v}


def verify_algebra_equation(R, eq):
    eq = _norm_tag(eq)
    d = R.d
    one = 1
    R12 = _leg_element(R, 12, d, one)
    R13 = _leg_element(R, 13, d, one)
    R23 = _leg_element(R, 23, d, one)
    if eq == RPE:
        return _mult3(_mult3(R12, R13), R23) == _mult3(R23, R12)
    return _mult3(_mult3(R23, R13), R12) == _mult3(R12, R23)


def to_cyc_dict(R, m=1):
    return {k: to_cyc(v, m) for k, v in R.items()}
