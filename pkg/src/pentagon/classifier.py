"""Brute-force enumeration of small solutions and recognition of
Phi-set-theoretic bases of group algebras."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product as iproduct

from .errors import NotSetTheoretic, SizeTooLarge, StageFailure
from .groups import characters, check_splitting, fourier_basis_of_group_algebra
from .hopf import group_algebra, is_phi_set_theoretic
from .linalg import SpanSolver
from .scalars import Cyc, lcm
from .solutions import RPE, FiniteSolution, _norm_tag, equation_witness, equivalence

MAX_GROUP = 24


# -- enumeration --------------------------------------------------------------

def _worker_count(workers):
    if workers is None:
        env = os.environ.get("PENTAGON_THREADS")
        workers = int(env) if env else 1
    return max(1, workers)


def _scan_bijections(args):
    n, eq, first = args
    N = n * n
    rest = [v for v in range(N) if v != first]
    out = []
    for tail in permutations(rest):
        table = [divmod(first, n)] + [divmod(v, n) for v in tail]
        s = FiniteSolution(n, table, eq)
        if equation_witness(s, eq) is None:
            out.append(table)
    return out


def _scan_maps(args):
    n, eq, first = args
    N = n * n
    out = []
    for tail in iproduct(range(N), repeat=N - 1):
        table = [divmod(first, n)] + [divmod(v, n) for v in tail]
        s = FiniteSolution(n, table, eq)
        if equation_witness(s, eq) is None:
            out.append(table)
    return out


def enumerate_solutions(n, eq=RPE, bijective_only=True, up_to_equivalence=False, workers=None):
    """All solutions on {0..n-1} in lexicographic order of their tables.

    The candidate space is split by the image of (0, 0); with more than one
    worker the parts run in separate processes.
    """
    eq = _norm_tag(eq)
    if n < 1:
        raise ValueError("n must be positive")
    limit = 3 if bijective_only else 2
    if n > limit:
        raise SizeTooLarge("exhaustive scan is limited to n <= %d" % limit, n)
    scan = _scan_bijections if bijective_only else _scan_maps
    jobs = [(n, eq, first) for first in range(n * n)]
    w = min(_worker_count(workers), len(jobs))
    if w > 1:
        with ProcessPoolExecutor(max_workers=w) as ex:
            parts = list(ex.map(scan, jobs))
    else:
        parts = [scan(j) for j in jobs]
    sols = [FiniteSolution(n, t, eq) for part in parts for t in part]
    if up_to_equivalence:
        reps = []
        for s in sols:
            if all(equivalence(r, s) is None for r in reps):
                reps.append(s)
        sols = reps
    return sols


def enumerate_splittings(G):
    """All (A, N): A normal abelian, N a complement.  Sorted element tuples."""
    if G.n > MAX_GROUP:
        raise SizeTooLarge("group order %d exceeds %d" % (G.n, MAX_GROUP), G.n)
    subs = G.subgroups()
    out = []
    for A in subs:
        if not G.is_normal(A):
            continue
        Ag, _ = G.subgroup(A)
        if not Ag.is_abelian():
            continue
        for N in subs:
            if len(A) * len(N) == G.n and set(A) & set(N) == {G.identity}:
                out.append((A, N))
    return out


# -- recognition --------------------------------------------------------------

@dataclass
class RecognizedBasis:
    A: tuple
    N: tuple
    lam: Cyc
    character_assignment: list   # basis index -> (character index, u in N)
    solution_table: FiniteSolution
    basis_solution: FiniteSolution = None
    characters: object = None
    stages: list = field(default_factory=list)

    @property
    def labels(self):
        return [c * len(self.N) + self.N.index(u) for c, u in self.character_assignment]


def _supp(v):
    return frozenset(k for k, x in v.items() if x)


def _left_mul(G, g, v):
    return {G.mul(g, x): c for x, c in v.items()}


def _right_mul(G, v, g):
    return {G.mul(x, g): c for x, c in v.items()}


def _scale(a, v):
    return {k: a * x for k, x in v.items() if x}


def recognize_basis(G, P):
    """Run the recognition pipeline on the basis of k[G] given by the columns of P.

    Raises NotSetTheoretic when Phi does not preserve the basis and
    StageFailure(stage, witness) when a step of the pipeline breaks.
    """
    if G.n > MAX_GROUP:
        raise SizeTooLarge("group order %d exceeds %d" % (G.n, MAX_GROUP), G.n)
    m = P.m
    h = group_algebra(G, m)
    chk = is_phi_set_theoretic(h, P)
    if not chk:
        raise NotSetTheoretic("Phi(b (x) c) is not a pure tensor of basis elements",
                              (chk.witness, chk.vector))
    sol = chk.solution
    stages = ["phi-set-theoretic"]
    vecs = [{i: x for i, x in enumerate(col) if x} for col in P.columns()]
    d = len(vecs)

    B1 = [i for i in range(d) if G.identity in vecs[i]]
    if not B1:
        raise StageFailure("B1", "no basis element has 1 in its support")
    A = set()
    for i in B1:
        A |= _supp(vecs[i])
    A = tuple(sorted(A))
    if not G.is_subgroup(A):
        raise StageFailure("subgroup", A)
    for i in B1:
        if _supp(vecs[i]) != set(A):
            raise StageFailure("equal supports", i)
    Ag, Apos = G.subgroup(A)
    if not Ag.is_abelian():
        raise StageFailure("abelian", A)
    if not G.is_normal(A):
        raise StageFailure("normal", A)
    if len(B1) != len(A) or SpanSolver([vecs[i] for i in B1]).rank != len(A):
        raise StageFailure("span of B1", (len(B1), len(A)))
    stages += ["subgroup", "abelian", "normal", "span of B1"]

    e = Ag.exponent()
    if m % e:
        m2 = lcm(m, e)
        return recognize_basis(G, P.lift(m2))
    table = characters(Ag, m)
    posA = {a: i for i, a in enumerate(Apos)}

    def char_of(v, what):
        # v in k[A] with a v = chi(a) v for all a; returns the character index
        base = min(v)
        vals = []
        for a in Apos:
            target = G.mul(a, base)
            if target not in v:
                raise StageFailure("eigenvector", (what, a))
            vals.append(v[base] / v[target])
        for a, val in zip(Apos, vals):
            if _left_mul(G, a, v) != _scale(val, v):
                raise StageFailure("eigenvector", (what, a))
        k = table.find(vals)
        if k is None:
            raise StageFailure("character", what)
        return k

    # characters of B1 by two routes: coefficient ratios along psi, and eigenvalues
    b0 = B1[0]
    chi = {}
    for c in B1:
        psi_b0 = sol(b0, c)[0]
        ratio = [vecs[psi_b0][a] / vecs[b0][a] for a in Apos]
        k = table.find(ratio)
        if k is None or k != char_of(vecs[c], c):
            raise StageFailure("chi_c", c)
        chi[c] = k
    if len(set(chi.values())) != len(B1):
        raise StageFailure("chi_c", "characters of B1 are not distinct")
    stages.append("chi_c")

    nA = len(A)
    lam = vecs[B1[0]][G.identity] * nA
    for c in B1:
        e_chi = {a: table.chars[chi[c]][posA[G.inv(a)]] / nA for a in Apos}
        if _scale(lam, e_chi) != vecs[c]:
            raise StageFailure("common scalar", c)
    stages.append("common scalar")

    # single-coset supports and purity over the whole basis
    cosets = {}
    pure = []
    for i, v in enumerate(vecs):
        u0 = min(v)
        coset = frozenset(G.mul(a, u0) for a in A)
        if not _supp(v) <= coset:
            raise StageFailure("single coset", i)
        key = min(coset)
        w = _right_mul(G, v, G.inv(key))
        k = char_of(w, i)
        alpha = w.get(G.identity, Cyc.zero(m)) * nA
        e_chi = {a: table.chars[k][posA[G.inv(a)]] / nA for a in Apos}
        if not alpha or _scale(alpha, e_chi) != w:
            raise StageFailure("purity", i)
        cosets.setdefault(key, []).append(i)
        pure.append((k, key, alpha))
    stages += ["single coset", "purity"]

    # b = alpha e_chi key; choose u = a key with alpha = lam chi(a) across the whole coset
    reps = {}
    for key, members in sorted(cosets.items()):
        if len(members) != nA or len({pure[i][0] for i in members}) != nA:
            raise StageFailure("coset count", key)
        found = None
        for a in Apos:
            ok = True
            for i in members:
                k, _, alpha = pure[i]
                if alpha != lam * table.chars[k][posA[a]]:
                    ok = False
                    break
            if ok:
                found = a
                break
        if found is None:
            raise StageFailure("representative", key)
        reps[key] = G.mul(found, key)
    stages.append("representatives")

    T = sorted(reps.values())
    rep_of = {}
    for key, u in reps.items():
        for a in A:
            rep_of[G.mul(a, u)] = u
    for p in T:
        for q in T:
            sigma = G.mul(G.mul(p, q), G.inv(rep_of[G.mul(p, q)]))
            if sigma != G.identity:
                raise StageFailure("cocycle", (p, q, sigma))
    N = tuple(T)
    check_splitting(G, A, N)
    stages.append("cocycle")

    assign = []
    for i in range(d):
        k, u0, _ = pure[i]
        assign.append((k, rep_of[u0]))
    fb = fourier_basis_of_group_algebra(G, A, N, m, check_phi=False)
    nN = len(N)
    label = [k * nN + N.index(u) for k, u in assign]
    if sorted(label) != list(range(d)):
        raise StageFailure("labels", label)
    cols = fb.basis.columns()
    for i in range(d):
        want = {j: lam * x for j, x in enumerate(cols[label[i]]) if x}
        if want != vecs[i]:
            raise StageFailure("scalar multiple", i)
    for i in range(d):
        for j in range(d):
            k, l = sol(i, j)
            if fb.expected(label[i], label[j]) != (label[k], label[l]):
                raise StageFailure("phi-dual table", (i, j))
    stages += ["scalar multiple", "phi-dual table"]
    return RecognizedBasis(A, N, lam, assign, fb.expected, sol, table, stages)


def enumerate_phi_bases(G, check=True):
    """[(basis Mat, RecognizedBasis)] with one Fourier basis per splitting."""
    if G.n > MAX_GROUP:
        raise SizeTooLarge("group order %d exceeds %d" % (G.n, MAX_GROUP), G.n)
    out = []
    for A, N in enumerate_splittings(G):
        fb = fourier_basis_of_group_algebra(G, A, N, check_phi=check)
        rec = recognize_basis(G, fb.basis)
        out.append((fb.basis, rec))
    return out


# -- support identities -------------------------------------------------------

def support_invariants(G, P):
    """Check the support identities of a Phi-set-theoretic basis on all pairs.

    Returns dict name -> None or first witness (b, c).
    """
    m = P.m
    h = group_algebra(G, m)
    chk = is_phi_set_theoretic(h, P)
    if not chk:
        raise NotSetTheoretic("basis is not Phi-set-theoretic", chk.witness)
    sol = chk.solution
    vecs = [{i: x for i, x in enumerate(col) if x} for col in P.columns()]
    supp = [_supp(v) for v in vecs]
    d = len(vecs)
    out = {name: None for name in ("product", "translate", "first", "one_in_b", "one_in_c", "bound")}
    for b in range(d):
        for c in range(d):
            psi, circ = sol(b, c)
            prod = {G.mul(x, y) for x in supp[b] for y in supp[c]}
            if out["product"] is None and not supp[circ] <= prod:
                out["product"] = (b, c)
            if out["translate"] is None:
                for g in supp[b]:
                    lhs = _scale(vecs[b][g], _left_mul(G, g, vecs[c]))
                    rhs = _scale(vecs[psi].get(g, Cyc.zero(m)), vecs[circ])
                    if lhs != rhs or {G.mul(g, y) for y in supp[c]} != supp[circ]:
                        out["translate"] = (b, c)
                        break
            if out["first"] is None and supp[b] != supp[psi]:
                out["first"] = (b, c)
            if out["one_in_b"] is None and G.identity in supp[b] and supp[circ] != supp[c]:
                out["one_in_b"] = (b, c)
            if out["one_in_c"] is None and G.identity in supp[c] and not supp[b] <= supp[circ]:
                out["one_in_c"] = (b, c)
            if out["bound"] is None and len(supp[b]) > len(supp[c]) ** 2:
                out["bound"] = (b, c)
    return out
