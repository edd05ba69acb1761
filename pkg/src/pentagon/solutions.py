"""Finite set-theoretic solutions of the pentagon and reversed pentagon equations.

A solution on S = {0, ..., n-1} is written s(x, y) = (psi_y(x), y o x).
"""

from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import NotBijective, NotRPE, StructureViolation, TagMismatch

RPE = "RPE"
PE = "PE"


def _norm_tag(eq):
    if eq is None:
        return None
    eq = str(eq).upper()
    if eq not in (RPE, PE, "NONE"):
        raise ValueError("unknown equation %r" % eq)
    return None if eq == "NONE" else eq


class FiniteSolution:
    """A map S x S -> S x S stored as a flat table indexed by x*n + y."""

    __slots__ = ("n", "table", "equation_tag", "_bij")

    def __init__(self, n, table, equation_tag=None):
        self.n = n
        table = tuple((int(a), int(b)) for a, b in table)
        if len(table) != n * n:
            raise ValueError("table must list all %d pairs" % (n * n))
        for a, b in table:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("table entry out of range")
        self.table = table
        self.equation_tag = _norm_tag(equation_tag)
        self._bij = None

    @classmethod
    def from_function(cls, n, f, equation_tag=None):
        return cls(n, [f(x, y) for x in range(n) for y in range(n)], equation_tag)

    @classmethod
    def from_map(cls, n, pairs, equation_tag=None):
        """pairs: iterable of (x, y, x2, y2)."""
        table = [None] * (n * n)
        for x, y, a, b in pairs:
            table[x * n + y] = (a, b)
        if any(t is None for t in table):
            raise ValueError("map is not total")
        return cls(n, table, equation_tag)

    def __call__(self, x, y):
        return self.table[x * self.n + y]

    def psi(self, y, x):
        return self.table[x * self.n + y][0]

    def circ(self, y, x):
        """y o x."""
        return self.table[x * self.n + y][1]

    def is_bijective(self):
        if self._bij is None:
            self._bij = len(set(self.table)) == len(self.table)
        return self._bij

    def with_tag(self, tag):
        return FiniteSolution(self.n, self.table, tag)

    def __eq__(self, other):
        return isinstance(other, FiniteSolution) and self.n == other.n and self.table == other.table

    def __hash__(self):
        return hash((self.n, self.table))

    def __repr__(self):
        return "FiniteSolution(n=%d, tag=%s)" % (self.n, self.equation_tag)

    def to_json(self):
        n = self.n
        out = {"n": n, "map": [[x, y, *self(x, y)] for x in range(n) for y in range(n)]}
        if self.equation_tag:
            out["equation"] = self.equation_tag
        return out

    @classmethod
    def from_json(cls, obj):
        return cls.from_map(int(obj["n"]), obj["map"], obj.get("equation"))


def identity_solution(n, tag=RPE):
    return FiniteSolution.from_function(n, lambda x, y: (x, y), tag)


# -- equations on triples --------------------------------------------------

def _legs(s):
    t = s.table
    n = s.n

    def s12(a):
        x, y, z = a
        x2, y2 = t[x * n + y]
        return (x2, y2, z)

    def s23(a):
        x, y, z = a
        y2, z2 = t[y * n + z]
        return (x, y2, z2)

    def s13(a):
        x, y, z = a
        x2, z2 = t[x * n + z]
        return (x2, y, z2)

    return s12, s13, s23


def equation_witness(s, eq):
    """First triple (lexicographic) violating eq, or None."""
    eq = _norm_tag(eq)
    n = s.n
    t = s.table
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if eq == RPE:
                    # s12 s13 s23 == s23 s12
                    y1, z1 = t[y * n + z]
                    x2, z2 = t[x * n + z1]
                    x3, y3 = t[x2 * n + y1]
                    a, b = t[x * n + y]
                    b2, c2 = t[b * n + z]
                    if (x3, y3, z2) != (a, b2, c2):
                        return (x, y, z)
                else:
                    # s23 s13 s12 == s12 s23
                    x1, y1 = t[x * n + y]
                    x2, z2 = t[x1 * n + z]
                    y3, z3 = t[y1 * n + z2]
                    b, c = t[y * n + z]
                    a2, b2 = t[x * n + b]
                    if (x2, y3, z3) != (a2, b2, c):
                        return (x, y, z)
    return None


def verify_equation(s, eq):
    return equation_witness(s, eq) is None


def verify_equation_by_legs(s, eq):
    """Slow reference check built from the leg maps s12, s13, s23."""
    s12, s13, s23 = _legs(s)
    eq = _norm_tag(eq)
    for a in iproduct(range(s.n), repeat=3):
        if eq == RPE:
            ok = s12(s13(s23(a))) == s23(s12(a))
        else:
            ok = s23(s13(s12(a))) == s12(s23(a))
        if not ok:
            return False
    return True


def bijection_witness(s):
    seen = {}
    for idx, img in enumerate(s.table):
        if img in seen:
            n = s.n
            return (divmod(seen[img], n), divmod(idx, n))
        seen[img] = idx
    return None


def invert(s):
    w = bijection_witness(s)
    if w is not None:
        raise NotBijective("pairs %s and %s collide" % w, w)
    n = s.n
    table = [None] * (n * n)
    for idx, (a, b) in enumerate(s.table):
        table[a * n + b] = divmod(idx, n)
    return FiniteSolution(n, table, s.equation_tag)


def flip_conjugate(s):
    """tau s tau."""
    n = s.n
    return FiniteSolution.from_function(n, lambda x, y: s(y, x)[::-1], None)


def dual(s):
    """tau o s^-1 o tau."""
    inv = invert(s)
    return FiniteSolution.from_function(s.n, lambda x, y: inv(y, x)[::-1], s.equation_tag)


def rpe_to_pe(s):
    """t(x, y) = (x o y, psi_x(y)), the PE solution attached to an RPE solution."""
    return FiniteSolution.from_function(s.n, lambda x, y: (s.circ(x, y), s.psi(x, y)), PE)


def inverse_relations_witness(s):
    """Check the four relations between s = (psi, o) and s^-1 = (., theta).

    Writing s^-1(x, y) = (x.y, theta_x(y)):
      psi_y(x) . (y o x) = x,  theta_{psi_y(x)}(y o x) = y,
      psi_{theta_x(y)}(x . y) = x,  theta_x(y) o (x . y) = y.
    """
    inv = invert(s)
    n = s.n
    for x in range(n):
        for y in range(n):
            a, b = s(x, y)
            if inv(a, b)[0] != x or inv(a, b)[1] != y:
                return ("s^-1 s", x, y)
            p, q = inv(x, y)
            if s(p, q) != (x, y):
                return ("s s^-1", x, y)
            if s.psi(q, p) != x or s.circ(q, p) != y:
                return ("components", x, y)
    return None


def _triple_ops(s):
    t = s.table
    n = s.n

    def z12(a):
        x, y, z = a
        return t[x * n + y] + (z,)

    def z13(a):
        x, y, z = a
        p, q = t[x * n + z]
        return (p, y, q)

    def z23(a):
        x, y, z = a
        return (x,) + t[y * n + z]

    return z12, z13, z23


def check_flags(s):
    """Cocommutative: Z12 Z13 = Z13 Z12.  Commutative: Z13 Z23 = Z23 Z13."""
    z12, z13, z23 = _triple_ops(s)
    cocomm = True
    comm = True
    for a in iproduct(range(s.n), repeat=3):
        if cocomm and z12(z13(a)) != z13(z12(a)):
            cocomm = False
        if comm and z13(z23(a)) != z23(z13(a)):
            comm = False
        if not (comm or cocomm):
            break
    return {"commutative": comm, "cocommutative": cocomm}


def product(s1, s2):
    if s1.equation_tag != s2.equation_tag:
        raise TagMismatch("%s vs %s" % (s1.equation_tag, s2.equation_tag))
    n1, n2 = s1.n, s2.n

    def f(x, y):
        x1, x2 = divmod(x, n2)
        y1, y2 = divmod(y, n2)
        a1, b1 = s1(x1, y1)
        a2, b2 = s2(x2, y2)
        return (a1 * n2 + a2, b1 * n2 + b2)

    return FiniteSolution.from_function(n1 * n2, f, s1.equation_tag)


def relabel(s, perm):
    """The solution perm x perm o s o (perm x perm)^-1, perm a list."""
    n = s.n
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i

    def f(x, y):
        a, b = s(inv[x], inv[y])
        return (perm[a], perm[b])

    return FiniteSolution.from_function(n, f, s.equation_tag)


# -- equivalence -----------------------------------------------------------

def _signatures(s):
    n = s.n
    sig = []
    for x in range(n):
        orbit = set()
        cur = (x, x)
        while cur not in orbit:
            orbit.add(cur)
            cur = s(*cur)
        fixed = sum(1 for y in range(n) if s.psi(x, y) == y)
        left = sum(1 for y in range(n) if s(x, y)[0] == x)
        right = sum(1 for y in range(n) if s(y, x)[1] == x)
        diag = s(x, x)
        sig.append((len(orbit), fixed, left, right, diag[0] == x, diag[1] == x))
    return sig


def equivalence(s1, s2):
    """A bijection f (list) with (f x f) s1 = s2 (f x f), or None."""
    n = s1.n
    if s2.n != n:
        return None
    sig1 = _signatures(s1)
    sig2 = _signatures(s2)
    if sorted(sig1) != sorted(sig2):
        return None
    order = sorted(range(n), key=lambda x: (sum(1 for z in sig1 if z == sig1[x]), x))

    def propagate(f, used, pending):
        # enforce s2(f x, f y) = f s1(x, y) on assigned pairs, extending f
        while pending:
            x = pending.pop()
            assigned = [y for y in range(n) if f[y] is not None]
            for y in assigned:
                for a, b in ((x, y), (y, x)):
                    p, q = s1(a, b)
                    p2, q2 = s2(f[a], f[b])
                    for u, v in ((p, p2), (q, q2)):
                        if f[u] is None:
                            if used[v] or sig1[u] != sig2[v]:
                                return False
                            f[u] = v
                            used[v] = True
                            pending.append(u)
                        elif f[u] != v:
                            return False
        return True

    def search(f, used):
        free = [x for x in order if f[x] is None]
        if not free:
            return f
        x = free[0]
        for v in range(n):
            if used[v] or sig1[x] != sig2[v]:
                continue
            f2 = list(f)
            u2 = list(used)
            f2[x] = v
            u2[v] = True
            if propagate(f2, u2, [x]):
                res = search(f2, u2)
                if res is not None:
                    return res
        return None

    return search([None] * n, [False] * n)


# -- left group structure --------------------------------------------------

@dataclass
class LeftGroupAnalysis:
    solution: FiniteSolution
    idempotents: list
    unit_idempotent: int
    group_part: list
    group_table: dict
    psi_table: list
    psi_group: list
    psi_group_table: dict
    psi_index: list
    retract_reps: list
    class_size: int
    e_component: list = field(default_factory=list)
    g_component: list = field(default_factory=list)

    @property
    def n(self):
        return self.solution.n

    def circ(self, y, x):
        return self.solution.circ(y, x)

    def psi(self, y, x):
        return self.solution.psi(y, x)

    def nu(self, y):
        """{z : psi_z = psi_y}."""
        k = self.psi_index[y]
        return [z for z in range(self.n) if self.psi_index[z] == k]

    def mu(self, x):
        """{e o x : e idempotent}."""
        return sorted({self.circ(e, x) for e in self.idempotents})

    def retract_rep(self, y):
        """The representative in E-bar with the same psi as y."""
        k = self.psi_index[y]
        for r in self.retract_reps:
            if self.psi_index[r] == k:
                return r
        raise StructureViolation("psi_%d matches no idempotent" % y, y)

    def rep_with_psi(self, perm):
        perm = tuple(perm)
        for r in self.retract_reps:
            if self.psi_table[r] == perm:
                return r
        raise StructureViolation("no retract class with the given psi", perm)

    def g_inverse(self, g):
        u = self.unit_idempotent
        for h in self.group_part:
            if self.circ(g, h) == u:
                return h
        raise StructureViolation("no inverse in G", g)


def compose(p, q):
    """(p q)(x) = p(q(x))."""
    return tuple(p[i] for i in q)


def perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def left_group_analysis(s):
    if not s.is_bijective():
        raise NotBijective("solution is not bijective", bijection_witness(s))
    w = equation_witness(s, RPE)
    if w is not None:
        raise NotRPE("RPE fails", w)
    n = s.n
    circ = s.circ
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if circ(circ(x, y), z) != circ(x, circ(y, z)):
                    raise StructureViolation("o is not associative", (x, y, z))
    psi_table = [tuple(s.psi(y, x) for x in range(n)) for y in range(n)]
    ident = tuple(range(n))
    for y, p in enumerate(psi_table):
        if len(set(p)) != n:
            raise StructureViolation("psi_%d is not a permutation" % y, y)
        if p != ident and any(p[i] == i for i in range(n)):
            raise StructureViolation("psi_%d has a fixed point but is not the identity" % y, y)
    E = [x for x in range(n) if circ(x, x) == x]
    units = [e for e in E if psi_table[e] == ident]
    if not units:
        raise StructureViolation("no idempotent with trivial psi")
    one = units[0]
    G = sorted({circ(one, x) for x in range(n)})
    # left group: e o x == x for exactly one e, and S = E x G via (e, g) -> e o g
    e_comp = []
    g_comp = []
    for x in range(n):
        es = [e for e in E if circ(e, x) == x]
        if len(es) != 1:
            raise StructureViolation("element lies in %d left ideals" % len(es), x)
        e_comp.append(es[0])
        g_comp.append(circ(one, x))
    pairs = {(e_comp[x], g_comp[x]) for x in range(n)}
    if len(pairs) != n or len(E) * len(G) != n:
        raise StructureViolation("S is not E x G")
    gset = set(G)
    for g in G:
        for h in G:
            if circ(g, h) not in gset:
                raise StructureViolation("G is not closed", (g, h))
    group_table = {(g, h): circ(g, h) for g in G for h in G}
    for g in G:
        if not any(group_table[(g, h)] == one for h in G):
            raise StructureViolation("G lacks inverses", g)
    distinct = []
    for p in psi_table:
        if p not in distinct:
            distinct.append(p)
    distinct.sort()
    index = {p: i for i, p in enumerate(distinct)}
    psi_group_table = {}
    for i, p in enumerate(distinct):
        for j, q in enumerate(distinct):
            c = compose(p, q)
            if c not in index:
                raise StructureViolation("Psi is not closed under composition", (i, j))
            psi_group_table[(i, j)] = index[c]
    if ident not in index:
        raise StructureViolation("Psi lacks the identity")
    psi_index = [index[p] for p in psi_table]
    reps = []
    classes = {}
    for e in E:
        classes.setdefault(psi_index[e], []).append(e)
    for k in sorted(classes, key=lambda k: min(classes[k])):
        reps.append(min(classes[k]))
    reps.sort()
    sizes = {len(v) for v in classes.values()}
    if len(sizes) != 1:
        raise StructureViolation("retract classes have unequal sizes", sorted(sizes))
    for y in range(n):
        if psi_index[y] not in classes:
            raise StructureViolation("psi_%d is not realized on an idempotent" % y, y)
    return LeftGroupAnalysis(
        solution=s, idempotents=E, unit_idempotent=one, group_part=G,
        group_table=group_table, psi_table=psi_table, psi_group=distinct,
        psi_group_table=psi_group_table, psi_index=psi_index, retract_reps=reps,
        class_size=sizes.pop(), e_component=e_comp, g_component=g_comp,
    )


def structure_identities_witness(s):
    """Check o associative, psi_z(y o x) = psi_z(y) o psi_{z o y}(x),
    and psi_{psi_z(y)} psi_{z o y} = psi_y on all triples."""
    n = s.n
    circ, psi = s.circ, s.psi
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if circ(circ(z, y), x) != circ(z, circ(y, x)):
                    return ("eq1", x, y, z)
                if psi(z, circ(y, x)) != circ(psi(z, y), psi(circ(z, y), x)):
                    return ("eq2", x, y, z)
                if psi(psi(z, y), psi(circ(z, y), x)) != psi(y, x):
                    return ("eq3", x, y, z)
    return None
