"""Finite-dimensional Hopf algebras given by structure constants."""

from dataclasses import dataclass, field

from .conversions import LinearSolution, check_linear_flags, linear_equation_witness
from .errors import (CounitZero, NotACoalgebraBasis, SingularMatrix, UnitNotInBasis)
from .linalg import Mat, Tensor3, change_basis_tensors, zeros
from .scalars import Cyc, as_nonnegative_rational, positivity_status, to_cyc
from .solutions import RPE, FiniteSolution, equation_witness


class FinHopf:
    """Structure constants: e_i e_j = sum_k mult[i,j,k] e_k,
    Delta(e_i) = sum comult[i,j,k] e_j (x) e_k, S(e_j) = sum_i antipode[i,j] e_i."""

    def __init__(self, d, m, unit, counit, mult, comult, antipode=None):
        self.d = d
        self.m = m
        self.unit = [to_cyc(x, m) for x in unit]
        self.counit = [to_cyc(x, m) for x in counit]
        self.mult = mult
        self.comult = comult
        self.antipode = antipode
        self._prod = None
        self._cop = None

    # cached sparse views
    def products(self):
        if self._prod is None:
            prod = {}
            for (i, j, k), v in self.mult.entries.items():
                prod.setdefault((i, j), {})[k] = v
            self._prod = prod
        return self._prod

    def coproducts(self):
        if self._cop is None:
            cop = [dict() for _ in range(self.d)]
            for (i, j, k), v in self.comult.entries.items():
                cop[i][(j, k)] = v
            self._cop = cop
        return self._cop

    # sparse vector operations, vectors as dicts index -> Cyc
    def mul(self, x, y):
        prod = self.products()
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                for k, v in prod.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + ab * v
        return {k: v for k, v in out.items() if v}

    def delta(self, x):
        cop = self.coproducts()
        out = {}
        for i, a in x.items():
            for key, v in cop[i].items():
                out[key] = out.get(key, 0) + a * v
        return {k: v for k, v in out.items() if v}

    def eps(self, x):
        acc = Cyc.zero(self.m)
        for i, a in x.items():
            if self.counit[i]:
                acc = acc + a * self.counit[i]
        return acc

    def S(self, x):
        if self.antipode is None:
            raise ValueError("no antipode")
        out = {}
        for (i, j), v in self.antipode.entries.items():
            a = x.get(j)
            if a:
                out[i] = out.get(i, 0) + v * a
        return {k: v for k, v in out.items() if v}

    def unit_dict(self):
        return {i: v for i, v in enumerate(self.unit) if v}

    def e(self, i):
        return {i: Cyc.one(self.m)}

    def lift(self, m):
        lift = lambda t: Tensor3(t.d, {k: to_cyc(v, m) for k, v in t.entries.items()})
        return FinHopf(self.d, m, self.unit, self.counit, lift(self.mult), lift(self.comult),
                       None if self.antipode is None else self.antipode.lift(m))

    def in_basis(self, P):
        """The same Hopf algebra with structure constants in the basis of P's columns."""
        if P.m != self.m:
            P = P.lift(self.m)
        u, c, mu, de, an = change_basis_tensors(self.unit, self.counit, self.mult, self.comult,
                                                self.antipode, P)
        return FinHopf(self.d, self.m, u, c, mu, de, an)

    def __eq__(self, other):
        return (isinstance(other, FinHopf) and self.d == other.d and self.unit == other.unit
                and self.counit == other.counit and self.mult == other.mult
                and self.comult == other.comult and self.antipode == other.antipode)

    def __repr__(self):
        return "FinHopf(d=%d, m=%d)" % (self.d, self.m)


def _dense(x, d, m):
    v = zeros(d, m)
    for i, a in x.items():
        v[i] = to_cyc(a, m)
    return v


def _clean(x):
    return {k: v for k, v in x.items() if v}


# -- axioms ----------------------------------------------------------------

def verify_hopf(h):
    """Exact check of every bialgebra axiom and, when present, the antipode axiom.

    Returns a dict axiom -> None (holds) or a witness.
    """
    d = h.d
    report = {}
    one = h.unit_dict()
    basis = [h.e(i) for i in range(d)]
    prods = {(i, j): h.mul(basis[i], basis[j]) for i in range(d) for j in range(d)}

    def first(gen):
        for w in gen:
            if w is not None:
                return w
        return None

    report["associativity"] = first(
        (i, j, k) if h.mul(prods[(i, j)], basis[k]) != h.mul(basis[i], prods[(j, k)]) else None
        for i in range(d) for j in range(d) for k in range(d))
    report["unit"] = first(
        i if (h.mul(one, basis[i]) != basis[i] or h.mul(basis[i], one) != basis[i]) else None
        for i in range(d))
    deltas = [h.delta(basis[i]) for i in range(d)]

    def delta_left(D):
        out = {}
        for (j, k), v in D.items():
            for (a, b), w in h.coproducts()[j].items():
                key = (a, b, k)
                out[key] = out.get(key, 0) + v * w
        return _clean(out)

    def delta_right(D):
        out = {}
        for (j, k), v in D.items():
            for (a, b), w in h.coproducts()[k].items():
                key = (j, a, b)
                out[key] = out.get(key, 0) + v * w
        return _clean(out)

    report["coassociativity"] = first(
        i if delta_left(deltas[i]) != delta_right(deltas[i]) else None for i in range(d))

    def counit_left(D):
        out = {}
        for (j, k), v in D.items():
            if h.counit[j]:
                out[k] = out.get(k, 0) + v * h.counit[j]
        return _clean(out)

    def counit_right(D):
        out = {}
        for (j, k), v in D.items():
            if h.counit[k]:
                out[j] = out.get(j, 0) + v * h.counit[k]
        return _clean(out)

    report["counit"] = first(
        i if (counit_left(deltas[i]) != basis[i] or counit_right(deltas[i]) != basis[i]) else None
        for i in range(d))

    def tensor_mul(X, Y):
        out = {}
        for (a, b), v in X.items():
            for (c, e), w in Y.items():
                left = prods[(a, c)]
                right = prods[(b, e)]
                vw = v * w
                for p, x in left.items():
                    for q, y in right.items():
                        out[(p, q)] = out.get((p, q), 0) + vw * x * y
        return _clean(out)

    def delta_mult():
        one_one = {}
        for i, a in one.items():
            for j, b in one.items():
                one_one[(i, j)] = a * b
        if h.delta(one) != _clean(one_one):
            return "unit"
        for i in range(d):
            for j in range(d):
                if h.delta(prods[(i, j)]) != tensor_mul(deltas[i], deltas[j]):
                    return (i, j)
        return None

    report["comult_multiplicative"] = delta_mult()

    def eps_mult():
        if h.eps(one) != 1:
            return "unit"
        for i in range(d):
            for j in range(d):
                if h.eps(prods[(i, j)]) != h.counit[i] * h.counit[j]:
                    return (i, j)
        return None

    report["counit_multiplicative"] = eps_mult()
    if h.antipode is not None:
        images = [h.S(basis[i]) for i in range(d)]

        def antipode_check():
            for i in range(d):
                target = _clean({k: v * h.counit[i] for k, v in one.items()})
                left = {}
                right = {}
                for (j, k), v in deltas[i].items():
                    for p, x in h.mul(images[j], basis[k]).items():
                        left[p] = left.get(p, 0) + v * x
                    for p, x in h.mul(basis[j], images[k]).items():
                        right[p] = right.get(p, 0) + v * x
                if _clean(left) != target or _clean(right) != target:
                    return i
            return None

        report["antipode"] = antipode_check()
    return report


def solve_antipode(h):
    """The unique S with m(S (x) id)Delta = eta eps, by exact linear solve; None if none exists."""
    from .linalg import solve_many
    d, m = h.d, h.m
    prod = h.products()
    rows = []
    rhs = []
    for i in range(d):
        for q in range(d):
            row = [Cyc.zero(m)] * (d * d)
            for (j, k), v in h.coproducts()[i].items():
                for p in range(d):
                    w = prod.get((p, k), {}).get(q)
                    if w:
                        row[p * d + j] = row[p * d + j] + v * w
            rows.append(row)
            rhs.append(h.counit[i] * h.unit[q])
    sol = solve_many(rows, [rhs])
    if sol is None:
        return None
    x = sol[0]
    return Mat(d, d, {(p, j): x[p * d + j] for p in range(d) for j in range(d)}, m)


def hopf_ok(report):
    return all(v is None for v in report.values())


# -- the canonical solution Phi_H ------------------------------------------

def phi_map(h):
    """a (x) b -> a_(1) (x) a_(2) b as a LinearSolution tagged RPE."""
    d = h.d
    ent = {}
    prod = h.products()
    for a in range(d):
        for (j, k), v in h.coproducts()[a].items():
            for b in range(d):
                for l, w in prod.get((k, b), {}).items():
                    key = (j * d + l, a * d + b)
                    ent[key] = ent.get(key, 0) + v * w
    return LinearSolution(d, Mat(d * d, d * d, ent, h.m), RPE)


def phi_inverse_map(h):
    """m (x) n -> m_(1) (x) S(m_(2)) n."""
    d = h.d
    ent = {}
    for a in range(d):
        for (j, k), v in h.coproducts()[a].items():
            sk = h.S(h.e(k))
            for b in range(d):
                for l, w in h.mul(sk, h.e(b)).items():
                    key = (j * d + l, a * d + b)
                    ent[key] = ent.get(key, 0) + v * w
    return LinearSolution(d, Mat(d * d, d * d, ent, h.m))


def phi_report(h):
    """RPE for Phi_H and, with an antipode, two-sided invertibility by the explicit inverse."""
    phi = phi_map(h)
    out = {"rpe": linear_equation_witness(phi, RPE) is None}
    if h.antipode is not None:
        inv = phi_inverse_map(h)
        ident = Mat.identity(h.d * h.d, h.m)
        out["bijective"] = (phi.matrix @ inv.matrix == ident) and (inv.matrix @ phi.matrix == ident)
    return out


@dataclass
class PhiCheck:
    solution: FiniteSolution = None
    witness: tuple = None
    vector: list = None

    def __bool__(self):
        return self.solution is not None


def _pinv_apply(pinv_rows, vec):
    # vec: dict index -> Cyc ; returns dict of nonzero coordinates
    out = {}
    for r, row in enumerate(pinv_rows):
        acc = 0
        for i, x in vec.items():
            p = row.get(i)
            if p is not None:
                acc = acc + p * x
        if acc:
            out[r] = acc
    return out


def phi_coordinates(h, P, b, c):
    """Coordinates of Phi(b (x) c) in the product basis of P, as a dense d^2 vector."""
    d = h.d
    Pinv = P.inverse()
    cols = P.columns()
    x = {i: v for i, v in enumerate(cols[b]) if v}
    y = {i: v for i, v in enumerate(cols[c]) if v}
    out = zeros(d * d, h.m)
    D = h.delta(x)
    for (j, k), v in D.items():
        for l, w in h.mul({k: Cyc.one(h.m)}, y).items():
            for r in range(d):
                p = Pinv.get(r, j)
                if not p:
                    continue
                for s in range(d):
                    q = Pinv.get(s, l)
                    if q:
                        out[r * d + s] = out[r * d + s] + p * q * v * w
    return out


def is_phi_set_theoretic(h, P, verify=True):
    """Check that Phi_H maps B x B into pure tensors b' (x) c' of the basis B (columns of P).

    Returns a PhiCheck: the induced FiniteSolution on indices of B, or the
    first offending pair (b, c) with the coordinate vector of Phi(b (x) c).
    """
    d = h.d
    if P.m != h.m:
        P = P.lift(h.m) if h.m % P.m == 0 else P
        if P.m != h.m:
            h = h.lift(P.m)
    Pinv = P.inverse()
    pinv_rows = [dict() for _ in range(d)]
    for (i, j), v in Pinv.entries.items():
        pinv_rows[i][j] = v
    cols = P.columns()
    col_dicts = [{i: v for i, v in enumerate(col) if v} for col in cols]
    prod = h.products()
    # right multiplication matrices: e_k c = sum_l R_c[k][l] e_l
    right = []
    for c in range(d):
        Rc = {}
        for k in range(d):
            acc = {}
            for i, ci in col_dicts[c].items():
                for l, v in prod.get((k, i), {}).items():
                    acc[l] = acc.get(l, 0) + ci * v
            acc = _clean(acc)
            if acc:
                Rc[k] = acc
        right.append(Rc)
    table = []
    for b in range(d):
        D = h.delta(col_dicts[b])
        Drows = {}
        for (j, k), v in D.items():
            Drows.setdefault(j, []).append((k, v))
        for c in range(d):
            Rc = right[c]
            C = {}
            for j, entries in Drows.items():
                row = {}
                for k, v in entries:
                    for l, w in Rc.get(k, {}).items():
                        row[l] = row.get(l, 0) + v * w
                row = _clean(row)
                if row:
                    C[j] = row
            pos = _pure_position(C, pinv_rows, col_dicts)
            if pos is None:
                return PhiCheck(witness=(b, c), vector=phi_coordinates(h, P, b, c))
            table.append(pos)
    sol = FiniteSolution(d, table, RPE)
    if verify and equation_witness(sol, RPE) is not None:
        raise AssertionError("induced solution fails RPE")
    return PhiCheck(solution=sol)


def _pure_position(C, pinv_rows, col_dicts):
    if not C:
        return None
    r = min(C)
    w = _pinv_apply(pinv_rows, C[r])
    if len(w) != 1:
        return None
    (jj, _alpha), = w.items()
    target = col_dicts[jj]
    l0 = min(target)
    t0 = target[l0]
    u = {}
    for j, row in C.items():
        coef = row.get(l0, 0) / t0 if row.get(l0) else 0
        if not coef:
            return None
        if len(row) != len(target):
            return None
        for l, v in row.items():
            tv = target.get(l)
            if tv is None or v != coef * tv:
                return None
        u[j] = coef
    w = _pinv_apply(pinv_rows, u)
    if len(w) != 1:
        return None
    (ii, val), = w.items()
    if val != 1:
        return None
    return (ii, jj)


# -- positivity ------------------------------------------------------------

CONDITIONS = ("unit", "counit", "mult", "comult", "antipode")


@dataclass
class PositivityReport:
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def positive(self):
        return all(self.verdicts[c] == "pass" for c in CONDITIONS)

    @property
    def nearly_positive(self):
        return all(self.verdicts[c] == "pass" for c in CONDITIONS[:4])

    @property
    def verdict(self):
        if self.positive:
            return "positive"
        if any(v == "fail" for v in self.verdicts.values()):
            return "not positive"
        return "indeterminate"


def positivity_check(h, P):
    hb = h.in_basis(P)
    groups = {
        "unit": [((i,), v) for i, v in enumerate(hb.unit)],
        "counit": [((i,), v) for i, v in enumerate(hb.counit)],
        "mult": sorted(hb.mult.entries.items()),
        "comult": sorted(hb.comult.entries.items()),
        "antipode": [] if hb.antipode is None else sorted(hb.antipode.entries.items()),
    }
    rep = PositivityReport()
    for name in CONDITIONS:
        verdict = "pass"
        for key, v in groups[name]:
            if as_nonnegative_rational(v) is None:
                status = positivity_status(v)
                if status == "negative":
                    verdict = "fail"
                    rep.witnesses[name] = (key, v)
                    break
                if verdict == "pass":
                    verdict = "indeterminate"
                    rep.witnesses[name] = (key, v)
        if name == "antipode" and hb.antipode is None:
            verdict = "absent"
        rep.verdicts[name] = verdict
    return rep


# -- duality, flags, tensor products ---------------------------------------

def dual_hopf(h):
    mult = Tensor3(h.d, {(j, k, i): v for (i, j, k), v in h.comult.entries.items()})
    comult = Tensor3(h.d, {(k, i, j): v for (i, j, k), v in h.mult.entries.items()})
    anti = None if h.antipode is None else h.antipode.transpose()
    return FinHopf(h.d, h.m, h.counit, h.unit, mult, comult, anti)


def flags(h):
    mu = h.mult.entries
    de = h.comult.entries
    comm = all(mu.get((j, i, k)) == v for (i, j, k), v in mu.items())
    cocomm = all(de.get((i, k, j)) == v for (i, j, k), v in de.items())
    return {"commutative": comm, "cocommutative": cocomm}


def flags_crosscheck(h):
    """flags(h) and the flags of Phi_H as a linear solution."""
    return flags(h), check_linear_flags(phi_map(h))


def tensor_hopf(h, k):
    if h.m != k.m:
        from .scalars import lcm
        m = lcm(h.m, k.m)
        h, k = h.lift(m), k.lift(m)
    m = h.m
    d1, d2 = h.d, k.d
    d = d1 * d2
    idx = lambda a, b: a * d2 + b
    unit = [h.unit[a] * k.unit[b] for a in range(d1) for b in range(d2)]
    counit = [h.counit[a] * k.counit[b] for a in range(d1) for b in range(d2)]
    mult = {}
    for (i1, j1, k1), v in h.mult.entries.items():
        for (i2, j2, k2), w in k.mult.entries.items():
            mult[(idx(i1, i2), idx(j1, j2), idx(k1, k2))] = v * w
    comult = {}
    for (i1, j1, k1), v in h.comult.entries.items():
        for (i2, j2, k2), w in k.comult.entries.items():
            comult[(idx(i1, i2), idx(j1, j2), idx(k1, k2))] = v * w
    anti = None
    if h.antipode is not None and k.antipode is not None:
        ent = {}
        for (a1, b1), v in h.antipode.entries.items():
            for (a2, b2), w in k.antipode.entries.items():
                ent[(idx(a1, a2), idx(b1, b2))] = v * w
        anti = Mat(d, d, ent, m)
    return FinHopf(d, m, unit, counit, Tensor3(d, mult), Tensor3(d, comult), anti)


def trivial_hopf(m=1):
    one = Cyc.one(m)
    return FinHopf(1, m, [one], [one], Tensor3(1, {(0, 0, 0): one}), Tensor3(1, {(0, 0, 0): one}),
                   Mat(1, 1, {(0, 0): one}, m))


def group_algebra(G, m=1):
    one = Cyc.one(m)
    n = G.n
    mult = {(g, h, G.mul(g, h)): one for g in range(n) for h in range(n)}
    comult = {(g, g, g): one for g in range(n)}
    anti = Mat(n, n, {(G.inv(g), g): one for g in range(n)}, m)
    unit = [one if g == G.identity else Cyc.zero(m) for g in range(n)]
    return FinHopf(n, m, unit, [one] * n, Tensor3(n, mult), Tensor3(n, comult), anti)


def dual_group_algebra(G, m=1):
    """k[G]* on the delta basis."""
    one = Cyc.one(m)
    n = G.n
    mult = {(g, g, g): one for g in range(n)}
    comult = {(G.mul(a, b), a, b): one for a in range(n) for b in range(n)}
    anti = Mat(n, n, {(G.inv(g), g): one for g in range(n)}, m)
    counit = [one if g == G.identity else Cyc.zero(m) for g in range(n)]
    return FinHopf(n, m, [one] * n, counit, Tensor3(n, mult), Tensor3(n, comult), anti)


# -- coalgebra bases and group-likes ---------------------------------------

def grouplikes_from_coalgebra_basis(h, P):
    """The group of elements eps(b)^-1 b for a basis with Delta(b) in k* B (x) B."""
    from .groups import FiniteGroup
    hb = h.in_basis(P)
    d = h.d
    cop = hb.coproducts()
    scale = []
    for b in range(d):
        terms = cop[b]
        if len(terms) != 1:
            raise NotACoalgebraBasis("Delta(b_%d) has %d terms" % (b, len(terms)), b)
        (j, k), v = next(iter(terms.items()))
        e = hb.counit[b]
        if not e:
            raise CounitZero("eps(b_%d) = 0" % b, b)
        if (j, k) != (b, b) or v != e.inverse():
            raise NotACoalgebraBasis("Delta(b_%d) is not eps^-1 b (x) b" % b, b)
        scale.append(e.inverse())
    Q = Mat(d, d, {(i, i): scale[i] for i in range(d)}, h.m)
    hg = hb.in_basis(Q)
    table = []
    for a in range(d):
        row = []
        for b in range(d):
            prod = hg.products().get((a, b), {})
            if len(prod) != 1 or next(iter(prod.values())) != 1:
                raise NotACoalgebraBasis("group-likes not closed under product", (a, b))
            row.append(next(iter(prod)))
        table.append(row)
    G = FiniteGroup(table)
    if group_algebra(G, h.m) != hg:
        raise NotACoalgebraBasis("structure constants differ from the group algebra")
    return G


def unit_in_basis_consequence(h, P):
    unit = h.unit if P.m == h.m else [to_cyc(x, P.m) for x in h.unit]
    if not any(col == unit for col in P.columns()):
        raise UnitNotInBasis("the unit is not a basis vector")
    chk = is_phi_set_theoretic(h, P)
    if not chk:
        raise NotACoalgebraBasis("basis is not Phi-set-theoretic", chk.witness)
    return grouplikes_from_coalgebra_basis(h, P)


# -- identities satisfied by Phi-set-theoretic bases ------------------------

def right_monomial_report(h, P, sol=None):
    """Check, for every pair of basis elements b, c with Phi(b (x) c) = psi_c(b) (x) c o b:

    (i)   b c = eps(psi_c(b)) (c o b)
    (ii)  eps(c) b = eps(c o b) psi_c(b)
    (iii) Delta(b) = sum_c lambda_c psi_c(b) (x) (c o b), where 1 = sum_c lambda_c c
    (iv)  S(psi_c(b)) (c o b) = eps(b) c  and  eps(c) S(b) (c o b) = eps(c o b) eps(b) c
    Returns dict identity -> None or first failing witness.
    """
    if sol is None:
        chk = is_phi_set_theoretic(h, P)
        if not chk:
            raise ValueError("basis is not Phi-set-theoretic")
        sol = chk.solution
    if P.m != h.m:
        P = P.lift(h.m)
    d = h.d
    vec = [{i: v for i, v in enumerate(col) if v} for col in P.columns()]
    eps = [h.eps(v) for v in vec]
    scale = lambda a, x: _clean({k: a * v for k, v in x.items()})
    add = lambda x, y: _clean({k: x.get(k, 0) + y.get(k, 0) for k in set(x) | set(y)})
    out = {"i": None, "ii": None, "iii": None, "iv": None}
    for b in range(d):
        for c in range(d):
            psi, circ = sol(b, c)
            if out["i"] is None and h.mul(vec[b], vec[c]) != scale(eps[psi], vec[circ]):
                out["i"] = (b, c)
            if out["ii"] is None and scale(eps[c], vec[b]) != scale(eps[circ], vec[psi]):
                out["ii"] = (b, c)
            if h.antipode is not None and out["iv"] is None:
                lhs1 = h.mul(h.S(vec[psi]), vec[circ])
                lhs2 = scale(eps[c], h.mul(h.S(vec[b]), vec[circ]))
                if lhs1 != scale(eps[b], vec[c]) or lhs2 != scale(eps[circ] * eps[b], vec[c]):
                    out["iv"] = (b, c)
    lam = P.inverse().apply(h.unit)
    for b in range(d):
        acc = {}
        for c in range(d):
            if lam[c]:
                psi, circ = sol(b, c)
                for i, x in vec[psi].items():
                    for j, y in vec[circ].items():
                        acc[(i, j)] = acc.get((i, j), 0) + lam[c] * x * y
        if _clean(acc) != h.delta(vec[b]):
            out["iii"] = b
            break
    if h.antipode is None:
        out["iv"] = "no antipode"
    return out
