"""Bundled groups and example solutions, looked up by name.

Groups use their catalog names (Z1..Z12, Z2xZ2, S3, D4, Q8, A4, ...).
Solutions use "kind:argument":

    group_solution:G   (g, h) -> (g, gh)          RPE
    dual_solution:G    (g, h) -> (g h^-1, h)      RPE
    pe_solution:G      (g, h) -> (gh, h)          PE
    identity:n         (x, y) -> (x, y)           RPE
    hopf_example:HxGdual   ((a,g),(b,h)) -> ((a b^-1, g), (b, hg)) with H = G = Z2
"""

from .errors import UnknownName
from .groups import GROUP_BUILDERS, catalog_group, catalog_group_names, cyclic
from .solutions import PE, RPE, FiniteSolution, identity_solution, verify_equation


def group_solution(G):
    return FiniteSolution.from_function(G.n, lambda g, h: (g, G.mul(g, h)), RPE)


def dual_solution(G):
    return FiniteSolution.from_function(G.n, lambda g, h: (G.mul(g, G.inv(h)), h), RPE)


def pe_solution(G):
    return FiniteSolution.from_function(G.n, lambda g, h: (G.mul(g, h), h), PE)


def hopf_example(H, G):
    """((a, g), (b, h)) -> ((a b^-1, g), (b, h g)) on H x G, index a*|G| + g."""
    nG = G.n

    def f(x, y):
        a, g = divmod(x, nG)
        b, h = divmod(y, nG)
        return (H.mul(a, H.inv(b)) * nG + g, b * nG + G.mul(h, g))

    return FiniteSolution.from_function(H.n * nG, f, RPE)


SOLUTION_KINDS = {
    "group_solution": group_solution,
    "dual_solution": dual_solution,
    "pe_solution": pe_solution,
}


def catalog(name):
    """A validated FiniteGroup or FiniteSolution for a bundled name."""
    if name in GROUP_BUILDERS:
        return catalog_group(name)
    kind, sep, arg = name.partition(":")
    if not sep:
        raise UnknownName("unknown catalog name %r" % name)
    if kind in SOLUTION_KINDS:
        s = SOLUTION_KINDS[kind](catalog_group(arg))
    elif kind == "identity":
        try:
            n = int(arg)
        except ValueError:
            raise UnknownName("identity needs a size, got %r" % arg) from None
        s = identity_solution(n)
    elif kind == "hopf_example" and arg == "HxGdual":
        s = hopf_example(cyclic(2), cyclic(2))
    else:
        raise UnknownName("unknown catalog name %r" % name)
    if not verify_equation(s, s.equation_tag):
        raise AssertionError("bundled solution %r fails its equation" % name)
    return s


def catalog_names(max_order=12):
    groups = catalog_group_names(max_order)
    out = list(groups)
    for kind in SOLUTION_KINDS:
        out += ["%s:%s" % (kind, g) for g in groups]
    out += ["identity:%d" % n for n in (1, 2, 3)]
    out.append("hopf_example:HxGdual")
    return out
