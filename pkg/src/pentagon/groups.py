"""Finite groups and the Hopf algebras and solutions built from them."""

from dataclasses import dataclass
from itertools import product as iproduct

from .conversions import LinearSolution, linear_equation_witness, linear_product
from .errors import (DimensionMismatch, InvalidGroup, InvalidMatchedPair, NotABicharacter,
                     NotAbelian, NotAnAction, NotComplement, NotNormal, SizeTooLarge)
from .hopf import (FinHopf, group_algebra, hopf_ok, is_phi_set_theoretic, phi_map, solve_antipode,
                   verify_hopf)
from .linalg import Mat, Tensor3
from .scalars import Cyc, lcm
from .solutions import RPE, FiniteSolution, equation_witness


class FiniteGroup:
    """A group on 0..n-1 given by its Cayley table (validated)."""

    def __init__(self, cayley, name=None):
        table = tuple(tuple(int(x) for x in row) for row in cayley)
        n = len(table)
        if n == 0 or any(len(r) != n for r in table):
            raise InvalidGroup("Cayley table must be square and nonempty")
        for r in table:
            if any(not 0 <= x < n for x in r):
                raise InvalidGroup("entry out of range")
        ids = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
        if not ids:
            raise InvalidGroup("no identity")
        e = ids[0]
        inv = []
        for a in range(n):
            bs = [b for b in range(n) if table[a][b] == e]
            if len(bs) != 1 or table[bs[0]][a] != e:
                raise InvalidGroup("element %d has no two-sided inverse" % a)
            inv.append(bs[0])
        for a in range(n):
            ra = table[a]
            for b in range(n):
                ab = ra[b]
                rab = table[ab]
                rb = table[b]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise InvalidGroup("not associative at %s" % ((a, b, c),))
        self.n = n
        self.cayley = table
        self.identity = e
        self.inverse = tuple(inv)
        self.name = name

    def mul(self, a, b):
        return self.cayley[a][b]

    def inv(self, a):
        return self.inverse[a]

    def prod(self, *xs):
        out = self.identity
        for x in xs:
            out = self.cayley[out][x]
        return out

    def power(self, a, k):
        out = self.identity
        for _ in range(k % self.order(a)):
            out = self.cayley[out][a]
        return out

    def order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.cayley[x][a]
            k += 1
        return k

    def exponent(self):
        return lcm(*[self.order(a) for a in range(self.n)])

    def is_abelian(self):
        t = self.cayley
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(a))

    def closure(self, gens):
        elems = {self.identity}
        frontier = list(set(gens))
        elems.update(frontier)
        while frontier:
            new = []
            for a in frontier:
                for g in list(elems):
                    for x in (self.cayley[a][g], self.cayley[g][a]):
                        if x not in elems:
                            elems.add(x)
                            new.append(x)
            frontier = new
        return frozenset(elems)

    def subgroups(self):
        """All subgroups, as sorted tuples, ordered by (size, elements)."""
        subs = {self.closure([a]) for a in range(self.n)}
        changed = True
        while changed:
            changed = False
            cur = list(subs)
            for i, H in enumerate(cur):
                for K in cur[i + 1:]:
                    if H <= K or K <= H:
                        continue
                    J = self.closure(H | K)
                    if J not in subs:
                        subs.add(J)
                        changed = True
        return sorted((tuple(sorted(H)) for H in subs), key=lambda H: (len(H), H))

    def is_subgroup(self, H):
        H = set(H)
        return (self.identity in H and all(self.mul(a, b) in H for a in H for b in H))

    def is_normal(self, H):
        H = set(H)
        return all(self.prod(g, h, self.inv(g)) in H for g in range(self.n) for h in H)

    def conj(self, g, a):
        """g a g^-1."""
        return self.prod(g, a, self.inv(g))

    def subgroup(self, H):
        """(FiniteGroup on positions, list position -> element of self)."""
        H = sorted(H)
        pos = {h: i for i, h in enumerate(H)}
        table = [[pos[self.mul(a, b)] for b in H] for a in H]
        return FiniteGroup(table), H

    def to_json(self):
        out = {"n": self.n, "cayley": [list(r) for r in self.cayley]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj):
        return cls(obj["cayley"], obj.get("name"))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.cayley == other.cayley

    def __hash__(self):
        return hash(self.cayley)

    def __repr__(self):
        return "FiniteGroup(%s, n=%d)" % (self.name or "?", self.n)


def cyclic(n):
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], "Z%d" % n)


def direct_product(G, H, name=None):
    n2 = H.n
    table = [[G.mul(a // n2, b // n2) * n2 + H.mul(a % n2, b % n2) for b in range(G.n * n2)]
             for a in range(G.n * n2)]
    return FiniteGroup(table, name or "%sx%s" % (G.name, H.name))


def find_isomorphism(G, H):
    """A list f with f[G.mul(a,b)] = H.mul(f[a], f[b]), or None."""
    if G.n != H.n or sorted(G.order(a) for a in range(G.n)) != sorted(H.order(a) for a in range(H.n)):
        return None
    gens = []
    span = {G.identity}
    for a in sorted(range(G.n), key=lambda a: -G.order(a)):
        if a not in span:
            gens.append(a)
            span = G.closure(gens)
        if len(span) == G.n:
            break

    def extend(images):
        f = {G.identity: H.identity}
        for g, h in zip(gens, images):
            f[g] = h
        frontier = list(f)
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    x, y = G.mul(a, g), H.mul(f[a], f[g])
                    if x in f:
                        if f[x] != y:
                            return None
                    else:
                        f[x] = y
                        new.append(x)
            frontier = new
        if len(set(f.values())) != G.n:
            return None
        for a in range(G.n):
            for b in range(G.n):
                if f[G.mul(a, b)] != H.mul(f[a], f[b]):
                    return None
        return [f[a] for a in range(G.n)]

    cands = [[h for h in range(H.n) if H.order(h) == G.order(g)] for g in gens]
    for images in iproduct(*cands):
        f = extend(images)
        if f is not None:
            return f
    return None


# -- semidirect products -------------------------------------------------

def semidirect(A, N, act, name=None):
    """A x| N with (a,u)(b,v) = (a (u.b), uv); act[u][a] = u.a.

    Returns (G, embed_A, embed_N) where the pair (a, u) has index a*|N| + u.
    """
    nA, nN = A.n, N.n
    for u in range(nN):
        row = act[u]
        if sorted(row) != list(range(nA)):
            raise NotAnAction("u=%d does not act bijectively" % u)
        for a in range(nA):
            for b in range(nA):
                if row[A.mul(a, b)] != A.mul(row[a], row[b]):
                    raise NotAnAction("u=%d is not an automorphism" % u, (a, b))
    if any(act[N.identity][a] != a for a in range(nA)):
        raise NotAnAction("identity acts nontrivially")
    for u in range(nN):
        for v in range(nN):
            for a in range(nA):
                if act[N.mul(u, v)][a] != act[u][act[v][a]]:
                    raise NotAnAction("not a homomorphism", (u, v, a))
    idx = lambda a, u: a * nN + u
    table = [[None] * (nA * nN) for _ in range(nA * nN)]
    for a, u, b, v in iproduct(range(nA), range(nN), range(nA), range(nN)):
        table[idx(a, u)][idx(b, v)] = idx(A.mul(a, act[u][b]), N.mul(u, v))
    G = FiniteGroup(table, name)
    return G, [idx(a, N.identity) for a in range(nA)], [idx(A.identity, u) for u in range(nN)]


def _inversion_action(A, N, gen):
    """N cyclic acting on abelian A through inversion of its generator gen."""
    act = []
    for u in range(N.n):
        # u = gen^j
        j = next(j for j in range(N.n) if N.power(gen, j) == u)
        act.append([a if j % 2 == 0 else A.inv(a) for a in range(A.n)])
    return act


def _catalog_groups():
    out = {}
    for n in range(1, 13):
        out["Z%d" % n] = lambda n=n: cyclic(n)
    Z2, Z3 = cyclic(2), cyclic(3)
    out["Z2xZ2"] = lambda: direct_product(Z2, Z2, "Z2xZ2")
    out["Z2xZ4"] = lambda: direct_product(Z2, cyclic(4), "Z2xZ4")
    out["Z2xZ2xZ2"] = lambda: direct_product(direct_product(Z2, Z2), Z2, "Z2xZ2xZ2")
    out["Z3xZ3"] = lambda: direct_product(Z3, Z3, "Z3xZ3")
    out["Z2xZ6"] = lambda: direct_product(Z2, cyclic(6), "Z2xZ6")
    for k, name in ((3, "S3"), (4, "D4"), (5, "D5"), (6, "D6")):
        out[name] = lambda k=k, name=name: semidirect(cyclic(k), Z2, _inversion_action(cyclic(k), Z2, 1),
                                                      name)[0]
    out["Dic3"] = lambda: semidirect(Z3, cyclic(4), _inversion_action(Z3, cyclic(4), 1), "Dic3")[0]
    out["A4"] = _alternating4
    out["Q8"] = _quaternion
    return out


def _alternating4():
    V = direct_product(cyclic(2), cyclic(2))
    # V = {0:(0,0), 1:(0,1), 2:(1,0), 3:(1,1)}; order-3 automorphism cycles 1 -> 2 -> 3 -> 1
    rot = [0, 2, 3, 1]
    act = [list(range(4)), rot, [rot[rot[a]] for a in range(4)]]
    return semidirect(V, cyclic(3), act, "A4")[0]


def _quaternion():
    # elements (sign, unit) with unit in 1, i, j, k; index = 4*sign + unit
    mult = {(0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
            (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
            (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
            (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0)}
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            s, u = mult[(a % 4, b % 4)]
            row.append(4 * ((s + a // 4 + b // 4) % 2) + u)
        table.append(row)
    return FiniteGroup(table, "Q8")


GROUP_BUILDERS = _catalog_groups()


def catalog_group(name):
    from .errors import UnknownName
    try:
        return GROUP_BUILDERS[name]()
    except KeyError:
        raise UnknownName("unknown group %r" % name) from None


def catalog_group_names(max_order=None):
    names = list(GROUP_BUILDERS)
    if max_order is not None:
        names = [n for n in names if catalog_group(n).n <= max_order]
    return names


# -- characters -----------------------------------------------------------

def cyclic_decomposition(A):
    """Generators g_1..g_r of A with A the internal direct product of the <g_i>."""
    if not A.is_abelian():
        raise NotAbelian("group is not abelian")
    gens = []
    ambient = set(range(A.n))
    subs = A.subgroups()
    current = frozenset(ambient)
    while len(current) > 1:
        a = max(sorted(current), key=A.order)
        C = A.closure([a])
        comp = None
        for H in subs:
            H = frozenset(H)
            if H <= current and len(H) * len(C) == len(current) and H & C == {A.identity}:
                comp = H
                break
        if comp is None:
            raise AssertionError("no complement found")
        gens.append(a)
        current = comp
    return gens


@dataclass
class CharacterTable:
    group: FiniteGroup
    exponent: int
    m: int
    chars: list           # chars[i][a] : Cyc
    labels: list          # exponent tuples j
    mult_table: list      # index of chi_i chi_j
    inverse: list

    def __len__(self):
        return len(self.chars)

    def find(self, values):
        values = tuple(values)
        for i, row in enumerate(self.chars):
            if tuple(row) == values:
                return i
        return None


def characters(A, m=None):
    gens = cyclic_decomposition(A)
    orders = [A.order(g) for g in gens]
    e = lcm(*orders) if orders else 1
    if m is None:
        m = e
    if m % e:
        raise ValueError("conductor %d is not a multiple of the exponent %d" % (m, e))
    coords = {}
    for ks in iproduct(*[range(o) for o in orders]):
        a = A.prod(*[A.power(g, k) for g, k in zip(gens, ks)])
        coords[a] = ks
    labels = list(iproduct(*[range(o) for o in orders]))
    chars = []
    for js in labels:
        row = []
        for a in range(A.n):
            ks = coords[a]
            t = sum((m // o) * j * k for o, j, k in zip(orders, js, ks))
            row.append(Cyc.root(m, t))
        chars.append(tuple(row))
    index = {lab: i for i, lab in enumerate(labels)}
    mult_table = [[index[tuple((a + b) % o for a, b, o in zip(x, y, orders))] for y in labels]
                  for x in labels]
    inverse = [index[tuple((-a) % o for a, o in zip(x, orders))] for x in labels]
    table = CharacterTable(A, e, m, chars, labels, mult_table, inverse)
    check_orthogonality(table)
    return table


def check_orthogonality(table):
    A = table.group
    n = A.n
    for a in range(n):
        s = sum((row[a] for row in table.chars), Cyc.zero(table.m))
        if s != (n if a == A.identity else 0):
            raise AssertionError("column orthogonality fails at %d" % a)
    for i, row in enumerate(table.chars):
        for a in range(n):
            for b in range(n):
                if row[A.mul(a, b)] != row[a] * row[b]:
                    raise AssertionError("character %d is not multiplicative" % i)
        s = sum(row, Cyc.zero(table.m))
        if s != (n if i == 0 else 0):
            raise AssertionError("row orthogonality fails at %d" % i)
    if len(set(table.chars)) != n:
        raise AssertionError("characters are not distinct")
    return True


def fourier_idempotents(A, table=None):
    """e_chi = (1/|A|) sum_a chi(a^-1) a, as dense vectors in k[A]."""
    if table is None:
        table = characters(A)
    n = A.n
    out = []
    for row in table.chars:
        out.append([row[A.inv(a)] * Cyc.rational(1, table.m) / n for a in range(n)])
    return out


def verify_fourier_idempotents(A, table=None):
    """Orthogonality, completeness, eigenvector and inversion properties."""
    if table is None:
        table = characters(A)
    m = table.m
    h = group_algebra(A, m)
    es = [{a: v for a, v in enumerate(e) if v} for e in fourier_idempotents(A, table)]
    k = len(es)
    for i in range(k):
        for j in range(k):
            want = es[i] if i == j else {}
            if h.mul(es[i], es[j]) != want:
                return ("orthogonal", i, j)
    total = {}
    for e in es:
        for a, v in e.items():
            total[a] = total.get(a, 0) + v
    if {a: v for a, v in total.items() if v} != {A.identity: Cyc.one(m)}:
        return ("sum",)
    for i, e in enumerate(es):
        for b in range(A.n):
            lhs = h.mul({b: Cyc.one(m)}, e)
            rhs = {a: v * table.chars[i][b] for a, v in e.items()}
            if lhs != rhs:
                return ("eigen", i, b)
    for a in range(A.n):
        acc = {}
        for i, e in enumerate(es):
            for x, v in e.items():
                acc[x] = acc.get(x, 0) + table.chars[i][a] * v
        if {x: v for x, v in acc.items() if v} != {a: Cyc.one(m)}:
            return ("inversion", a)
    return None


def fourier_transport_check(A, table=None):
    """Structure constants of k[A^v] moved along delta_chi -> e_chi equal those of k[A]*."""
    from .hopf import dual_group_algebra
    if table is None:
        table = characters(A)
    m = table.m
    char_group = FiniteGroup(table.mult_table)
    # k[A]* in the delta basis, re-expressed in the basis Theta(chi) = e_chi
    # of k[A]; equivalently compare dual(k[A]) in the Fourier basis with k[A^v]*.
    from .hopf import dual_hopf
    P = Mat.from_columns(fourier_idempotents(A, table), m)
    lhs = group_algebra(A, m).in_basis(P)
    rhs = dual_group_algebra(char_group, m)
    return lhs == rhs, dual_hopf(lhs) == dual_hopf(rhs)


# -- matched pairs and bicrossed products -------------------------------

@dataclass
class MatchedPairGroups:
    B: FiniteGroup
    N: FiniteGroup
    ract: list  # ract[b][u] = b <| u in B
    lact: list  # lact[b][u] = b |> u in N

    def to_json(self):
        return {"B": self.B.to_json(), "N": self.N.to_json(),
                "ract": [list(r) for r in self.ract], "lact": [list(r) for r in self.lact]}

    @classmethod
    def from_json(cls, obj):
        return cls(FiniteGroup.from_json(obj["B"]), FiniteGroup.from_json(obj["N"]),
                   [list(r) for r in obj["ract"]], [list(r) for r in obj["lact"]])


def trivial_matched_pair(B, N):
    return MatchedPairGroups(B, N, [[b] * N.n for b in range(B.n)],
                             [list(range(N.n)) for _ in range(B.n)])


def validate_matched_pair(mp):
    """(ok, witness) for the action, compatibility and unital laws."""
    B, N, r, l = mp.B, mp.N, mp.ract, mp.lact
    eB, eN = B.identity, N.identity
    for b in range(B.n):
        if r[b][eN] != b:
            return False, ("right action unit", b)
    for u in range(N.n):
        if l[eB][u] != u:
            return False, ("left action unit", u)
        if r[eB][u] != eB:
            return False, ("e_B <| u", u)
    for b in range(B.n):
        if l[b][eN] != eN:
            return False, ("b |> e_N", b)
    for b in range(B.n):
        for u in range(N.n):
            for v in range(N.n):
                if r[r[b][u]][v] != r[b][N.mul(u, v)]:
                    return False, ("right action", b, u, v)
                if l[b][N.mul(u, v)] != N.mul(l[b][u], l[r[b][u]][v]):
                    return False, ("grpMP1", b, u, v)
    for b in range(B.n):
        for b2 in range(B.n):
            for u in range(N.n):
                if l[b][l[b2][u]] != l[B.mul(b, b2)][u]:
                    return False, ("left action", b, b2, u)
                if r[B.mul(b, b2)][u] != B.mul(r[b][l[b2][u]], r[b2][u]):
                    return False, ("grpMP2", b, b2, u)
    return True, None


def bicrossed_hopf(mp, m=1):
    """k[B]* |><| k[N] on the basis delta_s # u, index s*|N| + u."""
    ok, w = validate_matched_pair(mp)
    if not ok:
        raise InvalidMatchedPair("invalid matched pair", w)
    B, N = mp.B, mp.N
    nB, nN = B.n, N.n
    d = nB * nN
    idx = lambda s, u: s * nN + u
    one = Cyc.one(m)
    mult = {}
    for s, u, t, v in iproduct(range(nB), range(nN), range(nB), range(nN)):
        if mp.ract[s][u] == t:
            mult[(idx(s, u), idx(t, v), idx(s, N.mul(u, v)))] = one
    comult = {}
    for x, y, u in iproduct(range(nB), range(nB), range(nN)):
        key = (idx(B.mul(x, y), u), idx(x, mp.lact[y][u]), idx(y, u))
        comult[key] = comult.get(key, Cyc.zero(m)) + one
    unit = [one if u == N.identity else Cyc.zero(m) for s in range(nB) for u in range(nN)]
    counit = [one if s == B.identity else Cyc.zero(m) for s in range(nB) for u in range(nN)]
    h = FinHopf(d, m, unit, counit, Tensor3(d, mult), Tensor3(d, comult))
    # candidate S(delta_s # u) = delta_{(s<|u)^-1} # (s|>u)^-1, validated; else solved for
    cand = Mat(d, d, {(idx(B.inv(mp.ract[s][u]), N.inv(mp.lact[s][u])), idx(s, u)): one
                      for s in range(nB) for u in range(nN)}, m)
    h.antipode = cand
    if verify_hopf(h).get("antipode") is not None:
        h.antipode = solve_antipode(h)
    return h


def bicrossed_set_solution(mp):
    ok, w = validate_matched_pair(mp)
    if not ok:
        raise InvalidMatchedPair("invalid matched pair", w)
    B, N = mp.B, mp.N
    nN = N.n

    def f(x, y):
        s, u = divmod(x, nN)
        t, v = divmod(y, nN)
        y0 = mp.ract[t][N.inv(u)]
        return (B.mul(s, B.inv(y0)) * nN + mp.lact[y0][u], y0 * nN + N.mul(u, v))

    sol = FiniteSolution.from_function(B.n * nN, f, RPE)
    if equation_witness(sol, RPE) is not None:
        raise AssertionError("bicrossed solution fails RPE")
    return sol


def enumerate_matched_pairs(B, N):
    """All matched pairs (B, N, <|, |>) by brute force over unital tables."""
    eB, eN = B.identity, N.identity
    rfree = [(b, u) for b in range(B.n) for u in range(N.n) if b != eB and u != eN]
    lfree = [(b, u) for b in range(B.n) for u in range(N.n) if b != eB and u != eN]
    out = []
    for rvals in iproduct(range(B.n), repeat=len(rfree)):
        ract = [[b if u == eN else eB for u in range(N.n)] for b in range(B.n)]
        for (b, u), x in zip(rfree, rvals):
            ract[b][u] = x
        # quick right-action check before pairing with left tables
        if any(ract[ract[b][u]][v] != ract[b][N.mul(u, v)]
               for b in range(B.n) for u in range(N.n) for v in range(N.n)):
            continue
        for lvals in iproduct(range(N.n), repeat=len(lfree)):
            lact = [[u if b == eB else (eN if u == eN else None) for u in range(N.n)]
                    for b in range(B.n)]
            for (b, u), x in zip(lfree, lvals):
                lact[b][u] = x
            mp = MatchedPairGroups(B, N, ract, lact)
            if validate_matched_pair(mp)[0]:
                out.append(MatchedPairGroups(B, N, [list(r) for r in ract], [list(r) for r in lact]))
    return out


# -- Fourier bases of k[A x| N] -------------------------------------------

@dataclass
class FourierBasis:
    G: FiniteGroup
    A: tuple
    N: tuple
    table: CharacterTable
    basis: Mat
    labels: list          # (chi index, element u of N)
    solution: FiniteSolution
    expected: FiniteSolution
    dual_action: list     # dual_action[u_pos][chi] = index of u.chi


def check_splitting(G, A, N):
    A, N = tuple(sorted(A)), tuple(sorted(N))
    if not (G.is_subgroup(A) and G.is_subgroup(N)):
        raise NotComplement("A and N must be subgroups")
    if not G.is_normal(A):
        raise NotNormal("A is not normal")
    Ag, _ = G.subgroup(A)
    if not Ag.is_abelian():
        raise NotAbelian("A is not abelian")
    if set(A) & set(N) != {G.identity} or len(A) * len(N) != G.n:
        raise NotComplement("N is not a complement of A")
    return A, N


def splitting_conductor(G, A):
    Ag, _ = G.subgroup(A)
    return Ag.exponent()


def fourier_basis_of_group_algebra(G, A, N, m=None, check_phi=True):
    A, N = check_splitting(G, A, N)
    Ag, Apos = G.subgroup(A)
    e = Ag.exponent()
    if m is None:
        m = e
    table = characters(Ag, m)
    posA = {a: i for i, a in enumerate(Apos)}
    nA = len(A)
    inv_nA = Cyc.rational(1, m) / nA
    # dual action (u.chi)(a) = chi(u^-1 a u)
    dual_action = []
    for u in N:
        row = []
        for chi in table.chars:
            vals = [chi[posA[G.prod(G.inv(u), a, u)]] for a in Apos]
            k = table.find(vals)
            if k is None:
                raise AssertionError("u.chi is not a character")
            row.append(k)
        dual_action.append(row)
    columns = []
    labels = []
    for ci, chi in enumerate(table.chars):
        for u in N:
            col = [Cyc.zero(m)] * G.n
            for a in Apos:
                col[G.mul(a, u)] = chi[posA[G.inv(a)]] * inv_nA
            columns.append(col)
            labels.append((ci, u))
    P = Mat.from_columns(columns, m)
    # u e_chi u^-1 = e_{u.chi}
    h = group_algebra(G, m)
    for ui, u in enumerate(N):
        for ci in range(len(table.chars)):
            e_chi = {a: columns[ci * len(N)][a] for a in Apos}
            lhs = h.mul(h.mul({u: Cyc.one(m)}, e_chi), {G.inv(u): Cyc.one(m)})
            k = dual_action[ui][ci]
            rhs = {a: v for a, v in enumerate(columns[k * len(N)]) if v}
            if lhs != rhs:
                raise AssertionError("conjugation identity fails", (u, ci))
    nN = len(N)
    posN = {u: i for i, u in enumerate(N)}

    def expected(x, y):
        a, up = divmod(x, nN)
        b, vp = divmod(y, nN)
        ub = dual_action[up][b]
        first = table.mult_table[a][table.inverse[ub]]
        return (first * nN + up, ub * nN + posN[G.mul(N[up], N[vp])])

    exp = FiniteSolution.from_function(len(labels), expected, RPE)
    sol = None
    if check_phi:
        chk = is_phi_set_theoretic(h, P)
        if not chk:
            raise AssertionError("Fourier basis is not Phi-set-theoretic", chk.witness)
        sol = chk.solution
    return FourierBasis(G, A, N, table, P, labels, sol, exp, dual_action)


def dual_matched_pair(fb):
    """(A^v, N) with chi <| u = u^-1 . chi and trivial |>."""
    chars = FiniteGroup(fb.table.mult_table)
    Ng, _ = fb.G.subgroup(fb.N)
    ract = [[fb.dual_action[Ng.inv(u)][chi] for u in range(Ng.n)] for chi in range(chars.n)]
    lact = [list(range(Ng.n)) for _ in range(chars.n)]
    return MatchedPairGroups(chars, Ng, ract, lact)


# -- bicharacters ----------------------------------------------------------

def bicharacter_transport(A, N, act, pairing):
    """Transport along a -> <a, .> when the pairing is an N-invariant nondegenerate bicharacter.

    act[u][a] = u.a (left action by automorphisms); a <| u = u^-1 . a.
    pairing[a][b] is a Cyc.  Returns a FiniteSolution on A x N (index a*|N| + u)
    or None when the invariance <a <| u^-1, b> = <a, b <| u> fails.
    """
    nA, nN = A.n, N.n
    P = pairing
    for a, b, c in iproduct(range(nA), repeat=3):
        if P[A.mul(a, b)][c] != P[a][c] * P[b][c] or P[a][A.mul(b, c)] != P[a][b] * P[a][c]:
            raise NotABicharacter("bicharacter", (a, b, c))
    for a in range(nA):
        if a != A.identity:
            if all(P[a][b] == 1 for b in range(nA)) or all(P[b][a] == 1 for b in range(nA)):
                raise NotABicharacter("nondegeneracy", a)
    ract = lambda a, u: act[N.inv(u)][a]
    for a, b, u in iproduct(range(nA), range(nA), range(nN)):
        if P[ract(a, N.inv(u))][b] != P[a][ract(b, u)]:
            return None

    def f(x, y):
        a, u = divmod(x, nN)
        b, v = divmod(y, nN)
        bu = ract(b, N.inv(u))
        return (A.mul(a, A.inv(bu)) * nN + u, bu * nN + N.mul(u, v))

    sol = FiniteSolution.from_function(nA * nN, f, RPE)
    if equation_witness(sol, RPE) is not None:
        raise AssertionError("transported solution fails RPE")
    return sol


# -- matched-pair datum of RPE solutions ----------------------------------

class _TypedMap:
    def __init__(self, name, dom, cod, cols):
        # cols: dict dom-index-tuple -> dict cod-index-tuple -> Cyc
        self.name, self.dom, self.cod, self.cols = name, tuple(dom), tuple(cod), cols


def _typed_from_matrix(name, dom, cod, M, dims):
    def unpack(i, spaces):
        out = []
        for sp in reversed(spaces):
            i, r = divmod(i, dims[sp])
            out.append(r)
        return tuple(reversed(out))

    cols = {}
    for (i, j), v in M.entries.items():
        cols.setdefault(unpack(j, dom), {})[unpack(i, cod)] = v
    return _TypedMap(name, dom, cod, cols)


def _run_composite(steps, start_type, vec):
    """Apply (map, slot) steps in order; returns (vector, None) or (None, type error text)."""
    cur_type = tuple(start_type)
    for k, (mp, pos) in enumerate(steps):
        seg = cur_type[pos:pos + len(mp.dom)]
        if seg != mp.dom:
            return None, "step %d (%s at slot %d) expects %s but receives %s" % (
                k + 1, mp.name, pos, "(x)".join(mp.dom), "(x)".join(seg) or "nothing")
        out = {}
        width = len(mp.dom)
        for key, c in vec.items():
            for img, w in mp.cols.get(key[pos:pos + width], {}).items():
                nk = key[:pos] + img + key[pos + width:]
                out[nk] = out.get(nk, 0) + c * w
        vec = {k2: v for k2, v in out.items() if v}
        cur_type = cur_type[:pos] + mp.cod + cur_type[pos + width:]
    return (vec, cur_type), None


def _compare_composites(lhs, rhs, start_type, target_type, dims, m):
    one = Cyc.one(m)
    for key in iproduct(*[range(dims[s]) for s in start_type]):
        vec = {key: one}
        l, errl = _run_composite(lhs, start_type, vec)
        r, errr = _run_composite(rhs, start_type, vec)
        if errl or errr:
            return {"verdict": "ill-typed", "lhs": errl, "rhs": errr}
        if l[1] != tuple(target_type) or r[1] != tuple(target_type):
            return {"verdict": "ill-typed", "lhs": "codomain %s" % (l[1],), "rhs": "codomain %s" % (r[1],)}
        if l[0] != r[0]:
            return {"verdict": "fails", "witness": key}
    return {"verdict": "holds"}


def _mult_map(name, h, space):
    cols = {}
    for (i, j, k), v in h.mult.entries.items():
        cols.setdefault((i, j), {})[(k,)] = v
    return _TypedMap(name, (space, space), (space,), cols)


def _comult_map(name, h, space):
    cols = {}
    for (i, j, k), v in h.comult.entries.items():
        cols.setdefault((i,), {})[(j, k)] = v
    return _TypedMap(name, (space,), (space, space), cols)


def flip_matrix(d1, d2, m=1):
    """x (x) y -> y (x) x from V1 (x) V2 (index x*d2 + y) to V2 (x) V1."""
    one = Cyc.one(m)
    return Mat(d1 * d2, d1 * d2, {(y * d1 + x, x * d2 + y): one for x in range(d1) for y in range(d2)}, m)


def mpd_verify_and_build(H, K, xi_mult, xi_cop):
    """Check the three interface equations as printed, then build Phi on H (x) K and test RPE."""
    dH, dK = H.d, K.d
    if xi_mult.rows != dH * dK or xi_mult.cols != dH * dK or xi_cop.rows != dH * dK or xi_cop.cols != dH * dK:
        raise DimensionMismatch("interfaces must be %dx%d" % (dH * dK, dH * dK))
    m = H.m
    dims = {"H": dH, "K": dK}
    XM = _typed_from_matrix("Xi_mult", ("K", "H"), ("H", "K"), xi_mult, dims)
    XC = _typed_from_matrix("Xi_cop", ("H", "K"), ("K", "H"), xi_cop, dims)
    PH = _typed_from_matrix("Phi_H", ("H", "H"), ("H", "H"), phi_map(H).matrix, dims)
    mH = _mult_map("m_H", H, "H")
    mK = _mult_map("m_K", K, "K")
    report = {}
    # 1: K H H -> H H K
    report["multiplicative_pentagon"] = _compare_composites(
        [(XM, 0), (XM, 1), (PH, 0)], [(PH, 1), (XM, 0), (XM, 1)],
        ("K", "H", "H"), ("H", "H", "K"), dims, m)
    # 2: H K K -> K H H
    report["comultiplicative_pentagon"] = _compare_composites(
        [(XC, 1), (XC, 0), (PH, 1)], [(PH, 0), (XC, 1), (XC, 0)],
        ("H", "K", "K"), ("K", "H", "H"), dims, m)
    # 3: K K H -> K H K
    report["action_coaction"] = _compare_composites(
        [(XM, 0), (mK, 1), (XC, 0)], [(XC, 0), (XM, 1), (mH, 1)],
        ("K", "K", "H"), ("K", "H", "K"), dims, m)
    report["normalization"] = _interface_normalization(H, K, xi_mult, xi_cop)
    # Phi on (H (x) K)^(x)2
    DH = _comult_map("Delta_H", H, "H")
    DK = _comult_map("Delta_K", K, "K")
    steps = [(DH, 0), (DK, 2), (XC, 1), (XM, 3), (mH, 2), (mK, 3)]
    d = dH * dK
    ent = {}
    one = Cyc.one(m)
    for key in iproduct(range(dH), range(dK), range(dH), range(dK)):
        res, err = _run_composite(steps, ("H", "K", "H", "K"), {key: one})
        if err:
            raise AssertionError(err)
        vec, typ = res
        col = (key[0] * dK + key[1]) * d + key[2] * dK + key[3]
        for (a, b, c, e), v in vec.items():
            ent[((a * dK + b) * d + c * dK + e, col)] = v
    phi = LinearSolution(d, Mat(d * d, d * d, ent, m), RPE)
    report["phi_rpe"] = linear_equation_witness(phi, RPE) is None
    return report, phi


def _interface_normalization(H, K, xi_mult, xi_cop):
    """Xi_mult(1 (x) h) = h (x) 1, Xi_mult(a (x) 1) = 1 (x) a, Xi_cop(h (x) 1) = 1 (x) h."""
    dH, dK = H.d, K.d
    m = H.m

    def vec_tensor(x, y):
        return [xi * yj for xi in x for yj in y]

    def basis(d, i):
        return [Cyc.one(m) if j == i else Cyc.zero(m) for j in range(d)]

    for h in range(dH):
        got = xi_mult.apply(vec_tensor(K.unit, basis(dH, h)))
        if got != vec_tensor(basis(dH, h), K.unit):
            return {"verdict": "fails", "witness": ("Xi_mult(1 (x) h)", h)}
        got = xi_cop.apply(vec_tensor(basis(dH, h), K.unit))
        if got != vec_tensor(K.unit, basis(dH, h)):
            return {"verdict": "fails", "witness": ("Xi_cop(h (x) 1)", h)}
    for a in range(dK):
        got = xi_mult.apply(vec_tensor(basis(dK, a), H.unit))
        if got != vec_tensor(H.unit, basis(dK, a)):
            return {"verdict": "fails", "witness": ("Xi_mult(a (x) 1)", a)}
    return {"verdict": "holds"}


def phi_tensor_equals_product(H, K):
    """Phi_{H (x) K} and Phi_H x Phi_K as exact matrices."""
    from .hopf import tensor_hopf
    return phi_map(tensor_hopf(H, K)).matrix == linear_product(phi_map(H), phi_map(K)).matrix
