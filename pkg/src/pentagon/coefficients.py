"""Coefficient Hopf algebras H_r(s), H_l(s) of a finite bijective RPE solution.

Elements of End(k[S]) are sparse dicts (p, q) -> scalar standing for the
matrix units S_pq, with S_pq S_qr = S_pr.  Elements of End (x) End are dicts
((p, q), (r, t)) -> scalar.  All structure constants are obtained by direct
computation inside End(k[S]) and then compared with the closed forms.
"""

from dataclasses import dataclass, field

from .conversions import linearise
from .errors import StructureViolation
from .hopf import FinHopf, dual_group_algebra, group_algebra, is_phi_set_theoretic, tensor_hopf, verify_hopf
from .linalg import Mat, SpanSolver, Tensor3, nullspace
from .scalars import Cyc
from .solutions import (compose, equivalence, identity_solution, invert, left_group_analysis,
                        perm_inverse, product)

RIGHT = "right"
LEFT = "left"


@dataclass
class CoefficientBasis:
    side: str
    labels: list
    vectors: list

    def __len__(self):
        return len(self.vectors)


@dataclass
class CoefficientAlgebra:
    hopf: FinHopf
    basis: CoefficientBasis
    analysis: object = None
    closed_form: dict = field(default_factory=dict)

    @property
    def dim(self):
        return self.hopf.d

    def constants_in_01(self):
        return constants_in_01(self.hopf)


# -- End(k[S]) arithmetic ----------------------------------------------------

def _clean(x):
    return {k: v for k, v in x.items() if v}


def _add(x, key, v):
    x[key] = x.get(key, 0) + v


def end_mul(X, Y):
    by_row = {}
    for (q, r), v in Y.items():
        by_row.setdefault(q, []).append((r, v))
    out = {}
    for (p, q), v in X.items():
        for r, w in by_row.get(q, ()):
            _add(out, (p, r), v * w)
    return _clean(out)


def end_identity(n, m=1):
    one = Cyc.one(m)
    return {(y, y): one for y in range(n)}


def _tensor_mul(X, Y):
    by_rows = {}
    for ((q1, r1), (q2, r2)), v in Y.items():
        by_rows.setdefault((q1, q2), []).append(((r1, r2), v))
    out = {}
    for ((p1, q1), (p2, q2)), v in X.items():
        for (r1, r2), w in by_rows.get((q1, q2), ()):
            _add(out, ((p1, r1), (p2, r2)), v * w)
    return _clean(out)


def _tensor_of(X, Y):
    return {(a, b): v * w for a, v in X.items() for b, w in Y.items()}


# -- slices of R = s^A and of R^-1 ----------------------------------------------

def _right_slice(s, p, q, m=1):
    """(delta_{S_pq} (x) id)(R) = sum_{y : psi_y(q) = p} S_{y o q, y}."""
    one = Cyc.one(m)
    out = {}
    for y in range(s.n):
        a, b = s(q, y)
        if a == p:
            _add(out, (b, y), one)
    return out


def _right_inverse_slice(s, inv, p, q, m=1):
    """(delta_{S_pq} (x) id)(R^-1)."""
    one = Cyc.one(m)
    out = {}
    for y in range(s.n):
        a, b = inv(q, y)
        if a == p:
            _add(out, (b, y), one)
    return out


def _left_slice(s, p, q, m=1):
    """(id (x) delta_{S_pq})(R) = sum_{x : q o x = p} S_{psi_q(x), x}."""
    one = Cyc.one(m)
    out = {}
    for x in range(s.n):
        a, b = s(x, q)
        if b == p:
            _add(out, (a, x), one)
    return out


def _left_inverse_slice(s, inv, p, q, m=1):
    one = Cyc.one(m)
    out = {}
    for x in range(s.n):
        a, b = inv(x, q)
        if b == p:
            _add(out, (a, x), one)
    return out


def spanning_sets(s, m=1):
    """Right and left slice families, each a dict (p, q) -> End element."""
    n = s.n
    right = {(p, q): _right_slice(s, p, q, m) for p in range(n) for q in range(n)}
    left = {(p, q): _left_slice(s, p, q, m) for p in range(n) for q in range(n)}
    return {RIGHT: right, LEFT: left}


def span_dimension(vectors):
    return SpanSolver([v for v in vectors if v]).rank


# -- the coproducts as conjugations -------------------------------------------

def _conjugate(X, s, side):
    """Right: R (X (x) 1) R^-1.  Left: R^-1 (1 (x) X) R.

    R acts on k[S] (x) k[S] as the permutation s, so conjugation moves an
    operator entry ((a, b), (c, d)) to (s(a, b), s(c, d)) (right) or to
    (s^-1(a, b), s^-1(c, d)) (left).
    """
    n = s.n
    out = {}
    if side == RIGHT:
        for (a, c), v in X.items():
            for b in range(n):
                w1 = s(a, b)
                w2 = s(c, b)
                _add(out, ((w1[0], w2[0]), (w1[1], w2[1])), v)
    else:
        inv = invert(s)
        for (b, d), v in X.items():
            for a in range(n):
                w1 = inv(a, b)
                w2 = inv(a, d)
                _add(out, ((w1[0], w2[0]), (w1[1], w2[1])), v)
    return _clean(out)


def _express(solver, v, m, what):
    c = solver.express(v, m)
    if c is None:
        raise StructureViolation("%s leaves the coefficient algebra" % what)
    return c


def _express_tensor(solver, t, m, what):
    """Coordinates c[j][k] with t = sum c[j][k] v_j (x) v_k."""
    d = solver.n
    by_second = {}
    for (a, b), v in t.items():
        by_second.setdefault(b, {})[a] = v
    partial = [dict() for _ in range(d)]
    for b, vec in by_second.items():
        c = _express(solver, vec, m, what)
        for j, x in enumerate(c):
            if x:
                partial[j][b] = x
    out = {}
    for j in range(d):
        if partial[j]:
            c = _express(solver, partial[j], m, what)
            for k, x in enumerate(c):
                if x:
                    out[(j, k)] = x
    return out


def coefficient_hopf_on(s, vectors, side, m=1):
    """Structure constants of H_r(s) or H_l(s) in the basis given by `vectors`.

    Unit, products and coproducts are computed in End(k[S]); counit and
    antipode come from writing each basis vector as a combination of slices
    (f (x) id)(R) and using f(1) and (f (x) id)(R^-1).
    """
    n = s.n
    d = len(vectors)
    solver = SpanSolver(vectors)
    if not solver.independent:
        raise StructureViolation("coefficient basis vectors are dependent")
    inv = invert(s)
    pairs = [(p, q) for p in range(n) for q in range(n)]
    if side == RIGHT:
        slices = [_right_slice(s, p, q, m) for p, q in pairs]
        inv_slices = [_right_inverse_slice(s, inv, p, q, m) for p, q in pairs]
    else:
        slices = [_left_slice(s, p, q, m) for p, q in pairs]
        inv_slices = [_left_inverse_slice(s, inv, p, q, m) for p, q in pairs]
    slice_solver = SpanSolver(slices)
    if slice_solver.rank != d:
        raise StructureViolation("basis has %d vectors, slices span %d" % (d, slice_solver.rank))
    for i, v in enumerate(vectors):
        if slice_solver.express(v, m) is None:
            raise StructureViolation("basis vector outside the slice span", i)

    unit = _express(solver, end_identity(n, m), m, "the unit")
    mult = {}
    for i in range(d):
        for j in range(d):
            c = _express(solver, end_mul(vectors[i], vectors[j]), m, "a product")
            for k, x in enumerate(c):
                if x:
                    mult[(i, j, k)] = x
    comult = {}
    for i in range(d):
        for (j, k), x in _express_tensor(solver, _conjugate(vectors[i], s, side), m,
                                         "a coproduct").items():
            comult[(i, j, k)] = x
    counit = []
    anti = {}
    for i, v in enumerate(vectors):
        c = slice_solver.express(v, m)
        acc = Cyc.zero(m)
        img = {}
        for (p, q), x, w in zip(pairs, c, inv_slices):
            if x:
                if p == q:
                    acc = acc + x
                for key, y in w.items():
                    _add(img, key, x * y)
        counit.append(acc)
        for k, x in enumerate(_express(solver, _clean(img), m, "an antipode image")):
            if x:
                anti[(k, i)] = x
    return FinHopf(d, m, unit, counit, Tensor3(d, mult), Tensor3(d, comult), Mat(d, d, anti, m))


def constants_in_01(h):
    vals = list(h.unit) + list(h.counit) + list(h.mult.entries.values())
    vals += list(h.comult.entries.values())
    if h.antipode is not None:
        vals += list(h.antipode.entries.values())
    return all(v == 0 or v == 1 for v in vals)


# -- canonical bases -----------------------------------------------------------

def right_basis(s, lga=None, m=1, nu=None):
    """g_(x', y') = sum_{y in nu(y')} S_{y o x', y}, ordered by (y', x')."""
    lga = lga or left_group_analysis(s)
    nu = nu or lga.nu
    one = Cyc.one(m)
    labels = []
    vectors = []
    for yp in lga.retract_reps:
        for xp in lga.group_part:
            v = {}
            for y in nu(yp):
                _add(v, (s.circ(y, xp), y), one)
            labels.append((xp, yp))
            vectors.append(v)
    return CoefficientBasis(RIGHT, labels, vectors)


def left_basis(s, lga=None, m=1):
    """sum_{x in mu(x')} S_{psi_y'(x), x}, ordered by (y', x')."""
    lga = lga or left_group_analysis(s)
    one = Cyc.one(m)
    labels = []
    vectors = []
    for yp in lga.retract_reps:
        for xp in lga.group_part:
            v = {}
            for x in lga.mu(xp):
                _add(v, (s.psi(yp, x), x), one)
            labels.append((xp, yp))
            vectors.append(v)
    return CoefficientBasis(LEFT, labels, vectors)


# -- closed forms on the right canonical basis ----------------------------------

def _closed_forms(lga, labels):
    """Unit, counit, mult, comult and antipode of H_r on g-labels, from (psi, o)."""
    s = lga.solution
    psi = lga.psi_table
    index = {lab: i for i, lab in enumerate(labels)}
    one = lga.unit_idempotent
    ident = tuple(range(s.n))
    d = len(labels)
    unit = [1 if xp == one else 0 for xp, _ in labels]
    counit = [1 if psi[yp] == ident else 0 for _, yp in labels]
    mult = {}
    for i, (xp, yp) in enumerate(labels):
        for j, (up, zp) in enumerate(labels):
            if psi[yp] == psi[s.circ(zp, up)]:
                mult[(i, j, index[(s.circ(up, xp), zp)])] = 1
    comult = {}
    for i, (xp, yp) in enumerate(labels):
        for dd in lga.retract_reps:
            z = lga.rep_with_psi(compose(psi[yp], perm_inverse(psi[dd])))
            first = index[(s.circ(one, psi[dd][xp]), z)]
            comult[(i, first, index[(xp, dd)])] = 1
    anti = {}
    for i, (xp, yp) in enumerate(labels):
        g = lga.g_inverse(s.circ(one, psi[yp][xp]))
        z = lga.rep_with_psi(perm_inverse(psi[s.circ(yp, xp)]))
        anti[(index[(g, z)], i)] = 1
    return unit, counit, Tensor3(d, mult), Tensor3(d, comult), anti


def _closed_phi_table(lga, labels):
    """Phi(g1 (x) g2) = g_(1 o psi_b(x1'), z) (x) g_(x2' o x1', y2') with b = y2' o x2'
    and psi_z = psi_y1' psi_b^-1."""
    s = lga.solution
    psi = lga.psi_table
    index = {lab: i for i, lab in enumerate(labels)}
    one = lga.unit_idempotent
    table = []
    for x1, y1 in labels:
        for x2, y2 in labels:
            b = s.circ(y2, x2)
            z = lga.rep_with_psi(compose(psi[y1], perm_inverse(psi[b])))
            table.append((index[(s.circ(one, psi[b][x1]), z)], index[(s.circ(x2, x1), y2)]))
    return table


def _compare_closed(h, closed):
    unit, counit, mult, comult, anti = closed
    out = {}
    out["unit"] = None if list(h.unit) == [Cyc.rational(x, h.m) for x in unit] else "unit"
    out["counit"] = None if list(h.counit) == [Cyc.rational(x, h.m) for x in counit] else "counit"

    def diff(a, b):
        keys = sorted(set(a.entries) | set(b.entries))
        for k in keys:
            if a.entries.get(k, 0) != b.entries.get(k, 0):
                return k
        return None

    out["mult"] = diff(h.mult, mult)
    out["comult"] = diff(h.comult, comult)
    got = h.antipode.entries
    keys = sorted(set(got) | set(anti))
    out["antipode"] = next((k for k in keys if got.get(k, 0) != anti.get(k, 0)), None)
    return out


def build_Hr(s, m=1, check=True):
    """H_r(s) on the canonical basis, with every closed form checked.

    The antipode is the closed-form one; it must agree with the slice
    computation and satisfy the antipode axiom, otherwise StructureViolation.
    """
    lga = left_group_analysis(s)
    basis = right_basis(s, lga, m)
    h = coefficient_hopf_on(s, basis.vectors, RIGHT, m)
    closed = _closed_forms(lga, basis.labels)
    report = _compare_closed(h, closed)
    h = FinHopf(h.d, m, h.unit, h.counit, h.mult, h.comult,
                Mat(h.d, h.d, {k: Cyc.rational(v, m) for k, v in closed[4].items()}, m))
    if check:
        ver = verify_hopf(h)
        bad = {k: v for k, v in ver.items() if v is not None}
        if bad:
            raise StructureViolation("H_r fails Hopf axioms", bad)
        if report["antipode"] is not None:
            raise StructureViolation("closed-form antipode disagrees", report["antipode"])
        chk = is_phi_set_theoretic(h, Mat.identity(h.d, m))
        if not chk:
            report["phi"] = chk.witness
        else:
            want = _closed_phi_table(lga, basis.labels)
            report["phi"] = next((i for i, p in enumerate(want) if chk.solution.table[i] != p), None)
    return CoefficientAlgebra(h, basis, lga, report)


def build_Hl(s, m=1, check=True):
    lga = left_group_analysis(s)
    basis = left_basis(s, lga, m)
    h = coefficient_hopf_on(s, basis.vectors, LEFT, m)
    report = {}
    if check:
        ver = verify_hopf(h)
        bad = {k: v for k, v in ver.items() if v is not None}
        if bad:
            raise StructureViolation("H_l fails Hopf axioms", bad)
        chk = is_phi_set_theoretic(h, Mat.identity(h.d, m))
        report["phi"] = None if chk else chk.witness
    return CoefficientAlgebra(h, basis, lga, report)


# -- coproduct cross-check --------------------------------------------------------

def comult_crosscheck(s, nu=None, m=1):
    """Compare R (g (x) 1) R^-1 with sum_{a,b : psi_a psi_b = psi_y'} S_{a o psi_b(x'), a} (x) S_{b o x', b}
    for every canonical g.  `nu` may override the psi-fibre function (negative control)."""
    lga = left_group_analysis(s)
    nu = nu or lga.nu
    basis = right_basis(s, lga, m)
    psi = lga.psi_table
    one = Cyc.one(m)
    for (xp, yp), g in zip(basis.labels, basis.vectors):
        conj = _conjugate(g, s, RIGHT)
        closed = {}
        for dd in lga.retract_reps:
            z = lga.rep_with_psi(compose(psi[yp], perm_inverse(psi[dd])))
            for a in nu(z):
                for b in nu(dd):
                    _add(closed, ((s.circ(a, psi[dd][xp]), a), (s.circ(b, xp), b)), one)
        if conj != _clean(closed):
            return False
    return True


# -- coinvariants --------------------------------------------------------------------

def _algebra_R(s, m=1):
    one = Cyc.one(m)
    R = {}
    for x in range(s.n):
        for y in range(s.n):
            a, b = s(x, y)
            _add(R, ((a, x), (b, y)), one)
    return R


@dataclass
class Coinvariants:
    dim: int
    vectors: list
    nullspace_dim: int
    bound: object
    agrees: bool


def coinvariants(s, m=1):
    """Span of sum_{l in d o S} S_{x, l} over x in S, d in nu(1) cap E, cross-checked
    against the kernel of a -> (1 (x) a) R - 1 (x) a."""
    from fractions import Fraction
    lga = left_group_analysis(s)
    n = s.n
    one = Cyc.one(m)
    ds = [e for e in lga.idempotents if lga.psi_table[e] == tuple(range(n))]
    vecs = []
    for x in range(n):
        for dd in ds:
            ls = {s.circ(dd, y) for y in range(n)}
            vecs.append({(x, l): one for l in ls})
    solver = SpanSolver(vecs)
    # kernel computation on the n^2 unknowns alpha_{x,y}
    R = _algebra_R(s, m)
    ident = end_identity(n, m)
    cols = []
    keys = {}
    for x in range(n):
        for y in range(n):
            a = {(x, y): one}
            lhs = _tensor_mul(_tensor_of(ident, a), R)
            rhs = _tensor_of(ident, a)
            col = dict(lhs)
            for k, v in rhs.items():
                _add(col, k, -v)
            col = _clean(col)
            for k in col:
                keys.setdefault(k, len(keys))
            cols.append(col)
    rows = [[Cyc.zero(m)] * (n * n) for _ in range(len(keys))]
    for j, col in enumerate(cols):
        for k, v in col.items():
            rows[keys[k]][j] = v
    if rows:
        kern = nullspace(rows, m)
    else:
        kern = [[Cyc.one(m) if i == j else Cyc.zero(m) for i in range(n * n)] for j in range(n * n)]
    kvecs = [{divmod(i, n): v for i, v in enumerate(k) if v} for k in kern]
    agrees = len(kvecs) == solver.rank and all(solver.express(v, m) is not None for v in kvecs)
    bound = Fraction(n * len(lga.idempotents), len(lga.retract_reps))
    return Coinvariants(solver.rank, vecs, len(kvecs), bound, agrees)


# -- reconstruction -----------------------------------------------------------------

def fixed_subspace(s, m=1):
    """V_H = {v : s^v(v (x) y) = v (x) y for all basis y}, as a list of dense vectors."""
    n = s.n
    f = linearise(s, m)
    cols = f.column_dicts()
    rows = []
    for y in range(n):
        # unknown v = sum v_x e_x ; s^v(e_x (x) e_y) - e_x (x) e_y
        block = {}
        for x in range(n):
            col = dict(cols[x * n + y])
            _add(col, x * n + y, -Cyc.one(m))
            for r, v in col.items():
                if v:
                    block.setdefault(r, [Cyc.zero(m)] * n)[x] = v
        rows.extend(block.values())
    if not rows:
        return [[Cyc.one(m) if i == j else Cyc.zero(m) for i in range(n)] for j in range(n)]
    return nullspace(rows, m)


def reconstruction_identity(s, m=1, max_equivalence=4):
    """dim k[S] = dim H_r(s) * dim V_H, and, for small S, whether s is equivalent to
    phi_B x identity with phi_B the solution induced by the canonical basis."""
    coeff = build_Hr(s, m)
    vh = fixed_subspace(s, m)
    report = {
        "dim_S": s.n,
        "dim_Hr": coeff.dim,
        "dim_VH": len(vh),
        "dimension_identity": s.n == coeff.dim * len(vh),
        "checks": ["fixed_subspace", "dimension_identity"],
        "equivalent_to_product": None,
    }
    if s.n <= max_equivalence and report["dimension_identity"]:
        chk = is_phi_set_theoretic(coeff.hopf, Mat.identity(coeff.dim, m))
        if chk:
            prod = product(chk.solution, identity_solution(len(vh)))
            report["equivalent_to_product"] = equivalence(s.with_tag(prod.equation_tag), prod) is not None
            report["checks"].append("equivalence")
    return report


# -- the H x G example ----------------------------------------------------------------

def example_left_basis(H, G, m=1):
    """E_(b, g) = sum_a S_{(a b^-1, g), (a, g)} for hopf_example(H, G), index b*|G| + g."""
    nG = G.n
    one = Cyc.one(m)
    vectors = []
    for b in range(H.n):
        for g in range(nG):
            vectors.append({(H.mul(a, H.inv(b)) * nG + g, a * nG + g): one for a in range(H.n)})
    return vectors


def example_target(H, G, m=1):
    """k[H] (x) k[G^op]*, the Hopf algebra the example basis should reproduce."""
    from .groups import FiniteGroup
    Gop = FiniteGroup([[G.mul(y, x) for y in range(G.n)] for x in range(G.n)])
    return tensor_hopf(group_algebra(H, m), dual_group_algebra(Gop, m))
