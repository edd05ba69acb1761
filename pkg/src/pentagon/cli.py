"""Command-line entry point: `pentagon <subcommand> ...`.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
bad input or usage.
"""

import argparse
import json
import os
import sys
import time

from . import serialize as io
from .catalog import catalog, group_solution, dual_solution, pe_solution
from .errors import PentagonError, UnknownName
from .groups import FiniteGroup, MatchedPairGroups
from .scalars import Cyc, lift_conductor, render


class UsageError(Exception):
    pass


class Report:
    """Verdicts, witnesses and values; rendered as JSON or as a table."""

    def __init__(self, command):
        self.command = command
        self.checks = []
        self.values = []
        self.timing = None

    def check(self, name, ok, witness=None):
        self.checks.append((name, bool(ok), witness))
        return ok

    def value(self, name, v):
        self.values.append((name, v))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def to_json(self):
        out = {
            "command": self.command,
            "checks": [{"name": n, "pass": ok, "witness": _plain(w)} for n, ok, w in self.checks],
            "values": {n: _plain(v) for n, v in self.values},
            "ok": self.ok,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_text(self):
        data = self.to_json()
        lines = ["command: %s" % " ".join(self.command)]
        for c in data["checks"]:
            line = "  %-28s %s" % (c["name"], "PASS" if c["pass"] else "FAIL")
            if c["witness"] is not None:
                line += "  witness=%s" % json.dumps(c["witness"])
            lines.append(line)
        for n, v in data["values"].items():
            lines.append("  %-28s %s" % (n, json.dumps(v)))
        if self.timing is not None:
            lines.append("  %-28s %s" % ("timing", self.timing))
        lines.append("result: %s" % ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)


def _plain(x):
    """Exact values become strings; containers recurse."""
    if isinstance(x, Cyc):
        return render(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in seq]
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return str(x)


# -- input helpers -----------------------------------------------------------

def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (path, e)) from None
    except json.JSONDecodeError as e:
        raise UsageError("%s is not valid JSON: %s" % (path, e)) from None


def _write(path, obj):
    with open(path, "w") as fh:
        fh.write(io.dumps(obj))
        fh.write("\n")


def _solution(arg):
    if os.path.exists(arg):
        return io.solution_from_json(_load_json(arg))
    try:
        s = catalog(arg)
    except UnknownName:
        raise UsageError("no file or catalog solution named %r" % arg) from None
    if isinstance(s, FiniteGroup):
        raise UsageError("%r is a group, not a solution" % arg)
    return s


def _group(arg):
    if os.path.exists(arg):
        return io.group_from_json(_load_json(arg))
    try:
        G = catalog(arg)
    except UnknownName:
        raise UsageError("no file or catalog group named %r" % arg) from None
    if not isinstance(G, FiniteGroup):
        raise UsageError("%r is not a group" % arg)
    return G


def _conductor(args, m):
    """The working conductor: m, or the --conductor override when it is a multiple of m."""
    c = getattr(args, "conductor", None)
    if c is None:
        return m
    if c < 1 or c % m:
        raise UsageError("--conductor %d is not a multiple of the computed conductor %d" % (c, m))
    return c


def _index_list(text, G):
    try:
        items = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError("expected a comma separated list of element indices, got %r" % text) from None
    if any(not 0 <= x < G.n for x in items):
        raise UsageError("element index out of range in %r" % text)
    return tuple(sorted(set(items)))


# -- subcommands -----------------------------------------------------------------

def cmd_verify_set(args, rep):
    from .solutions import check_flags, equation_witness
    s = _solution(args.input)
    eq = args.equation.upper()
    w = equation_witness(s, eq)
    rep.check("equation %s" % eq, w is None, w)
    rep.value("n", s.n)
    rep.value("bijective", s.is_bijective())
    if args.flags:
        for k, v in sorted(check_flags(s).items()):
            rep.value(k, v)


def cmd_convert(args, rep):
    from .conversions import (from_algebra_element, linear_equation_witness, linearise, pullback,
                              to_algebra_element, verify_algebra_equation)
    s = _solution(args.input)
    if args.source != "set":
        raise UsageError("--from must be 'set'")
    eq = s.equation_tag or "RPE"
    f = linearise(s)
    if args.to == "vector":
        out = io.linear_to_json(f)
        rep.check("equation preserved", linear_equation_witness(f, eq) is None)
    elif args.to == "pullback":
        g = pullback(s)
        out = io.linear_to_json(g)
        rep.check("equation %s" % g.equation_tag, linear_equation_witness(g, g.equation_tag) is None)
    else:
        R = to_algebra_element(f)
        out = io.algebra_to_json(R)
        rep.check("equation preserved", verify_algebra_equation(R, eq))
        rep.check("round trip", from_algebra_element(R).matrix == f.matrix)
    rep.value("target", args.to)
    if args.out:
        _write(args.out, out)
    else:
        rep.value("result", out)


def cmd_coeff(args, rep):
    from .coefficients import (build_Hl, build_Hr, coinvariants, comult_crosscheck,
                               constants_in_01, reconstruction_identity)
    from .hopf import hopf_ok, is_phi_set_theoretic, positivity_check, verify_hopf
    from .linalg import Mat
    s = _solution(args.input)
    m = _conductor(args, 1)
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    known = {"positive", "settheoretic", "hopf", "crosscheck", "coinvariants", "reconstruction",
             "closedform"}
    bad = [c for c in checks if c not in known]
    if bad:
        raise UsageError("unknown check(s): %s" % ", ".join(bad))
    C = build_Hr(s, m) if args.side == "right" else build_Hl(s, m)
    h = C.hopf
    rep.value("side", args.side)
    rep.value("dim", h.d)
    rep.value("labels", C.basis.labels)
    vals = {render(v) for v in list(h.unit) + list(h.counit) + list(h.mult.entries.values())
            + list(h.comult.entries.values()) + list(h.antipode.entries.values())}
    vals.add("0")
    rep.value("constants", sorted(vals))
    P = Mat.identity(h.d, h.m)
    if "hopf" in checks:
        r = verify_hopf(h)
        rep.check("hopf axioms", hopf_ok(r), {k: v for k, v in r.items() if v is not None} or None)
    if "positive" in checks:
        pr = positivity_check(h, P)
        rep.check("positive basis", pr.positive, pr.witnesses or None)
        rep.check("constants in {0,1}", constants_in_01(h))
    if "settheoretic" in checks:
        chk = is_phi_set_theoretic(h, P)
        rep.check("phi-set-theoretic", bool(chk), chk.witness)
    if "closedform" in checks:
        bad = {k: v for k, v in C.closed_form.items() if v is not None}
        rep.check("closed forms", not bad, bad or None)
    if "crosscheck" in checks:
        if args.side != "right":
            raise UsageError("crosscheck applies to the right side")
        rep.check("coproduct crosscheck", comult_crosscheck(s, m=m))
    if "coinvariants" in checks:
        co = coinvariants(s, m)
        rep.value("coinvariants_dim", co.dim)
        rep.check("coinvariants agree", co.agrees)
        rep.check("dim H * dim coinvariants = |S|^2", h.d * co.dim == s.n ** 2)
    if "reconstruction" in checks:
        r = reconstruction_identity(s, m)
        rep.value("dim_VH", r["dim_VH"])
        rep.check("dimension identity", r["dimension_identity"])
        if r["equivalent_to_product"] is not None:
            rep.value("equivalent_to_product", r["equivalent_to_product"])
    if args.out:
        _write(args.out, io.hopf_to_json(h))


def _hopf_arg(path):
    return io.hopf_from_json(_load_json(path))


def _basis_arg(path, m):
    return io.mat_from_json(_load_json(path), m)


def _match_conductors(h, P):
    from .scalars import lcm
    mm = lcm(h.m, P.m)
    if h.m != mm:
        h = h.lift(mm)
    if P.m != mm:
        P = P.lift(mm)
    return h, P


def cmd_hopf_check(args, rep):
    from .hopf import flags, hopf_ok, phi_report, positivity_check, verify_hopf
    h = _hopf_arg(args.hopf)
    m = _conductor(args, h.m)
    if m != h.m:
        h = h.lift(m)
    r = verify_hopf(h)
    for k, v in r.items():
        rep.check(k, v is None, v)
    for k, v in sorted(flags(h).items()):
        rep.value(k, v)
    pr = phi_report(h)
    rep.check("phi RPE", pr["rpe"])
    if "bijective" in pr:
        rep.check("phi bijective", pr["bijective"])
    if args.basis:
        h, P = _match_conductors(h, _basis_arg(args.basis, None))
        pos = positivity_check(h, P)
        rep.value("positivity", pos.verdicts)
        rep.value("positivity_verdict", pos.verdict)


def cmd_phi_basis(args, rep):
    from .hopf import is_phi_set_theoretic
    h = _hopf_arg(args.hopf)
    h, P = _match_conductors(h, _basis_arg(args.basis, None))
    m = _conductor(args, h.m)
    if m != h.m:
        h, P = h.lift(m), P.lift(m)
    if P.rows != h.d or P.cols != h.d:
        raise UsageError("basis must be %dx%d" % (h.d, h.d))
    chk = is_phi_set_theoretic(h, P)
    rep.check("phi-set-theoretic", bool(chk), None if chk else list(chk.witness))
    if chk:
        rep.value("solution", chk.solution.to_json())
        if args.out:
            _write(args.out, chk.solution.to_json())
    else:
        rep.value("phi_coordinates", chk.vector)


def cmd_group_solution(args, rep):
    from .solutions import check_flags, equation_witness
    G = _group(args.group)
    build = {"group": group_solution, "dual": dual_solution, "pe": pe_solution}[args.kind]
    s = build(G)
    w = equation_witness(s, s.equation_tag)
    rep.check("equation %s" % s.equation_tag, w is None, w)
    for k, v in sorted(check_flags(s).items()):
        rep.value(k, v)
    if args.out:
        _write(args.out, s.to_json())
    else:
        rep.value("solution", s.to_json())


def cmd_fourier_basis(args, rep):
    from .classifier import enumerate_splittings
    from .groups import check_splitting, fourier_basis_of_group_algebra, splitting_conductor
    G = _group(args.group)
    if args.A is not None or args.N is not None:
        if args.A is None or args.N is None:
            raise UsageError("give both --A and --N, or neither")
        pairs = [(_index_list(args.A, G), _index_list(args.N, G))]
        try:
            check_splitting(G, *pairs[0])
        except PentagonError as e:
            raise UsageError(str(e)) from None
    else:
        pairs = enumerate_splittings(G)
    outs = []
    for A, N in pairs:
        m = _conductor(args, splitting_conductor(G, A))
        fb = fourier_basis_of_group_algebra(G, A, N, m)
        same = fb.solution == fb.expected
        rep.check("A=%s N=%s table" % (list(A), list(N)), same)
        outs.append({"A": list(A), "N": list(N), "m": m, "basis": io.mat_to_json(fb.basis),
                     "labels": [list(x) for x in fb.labels], "solution": fb.solution.to_json()})
    rep.value("splittings", len(pairs))
    if args.out:
        _write(args.out, outs)


def cmd_matched_pair(args, rep):
    from .groups import (bicrossed_hopf, bicrossed_set_solution, enumerate_matched_pairs,
                         trivial_matched_pair, validate_matched_pair)
    from .hopf import hopf_ok, is_phi_set_theoretic, positivity_check, verify_hopf
    from .linalg import Mat
    if args.input:
        try:
            mps = [io.matched_pair_from_json(_load_json(args.input))]
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError("bad matched-pair JSON: %s" % e) from None
    elif args.B and args.N:
        B, N = _group(args.B), _group(args.N)
        mps = enumerate_matched_pairs(B, N) if args.enumerate else [trivial_matched_pair(B, N)]
    else:
        raise UsageError("give --input or --B and --N")
    m = _conductor(args, 1)
    sols = []
    for i, mp in enumerate(mps):
        ok, w = validate_matched_pair(mp)
        rep.check("pair %d valid" % i, ok, w)
        if not ok:
            continue
        h = bicrossed_hopf(mp, m)
        rep.check("pair %d hopf" % i, hopf_ok(verify_hopf(h)))
        rep.check("pair %d positive" % i, positivity_check(h, Mat.identity(h.d, m)).positive)
        s = bicrossed_set_solution(mp)
        chk = is_phi_set_theoretic(h, Mat.identity(h.d, m))
        rep.check("pair %d phi matches set solution" % i, bool(chk) and chk.solution == s)
        sols.append(s.to_json())
    rep.value("pairs", len(mps))
    if args.solution:
        rep.value("solutions", sols)
    if args.out:
        _write(args.out, sols if args.solution else [mp.to_json() for mp in mps])


def cmd_enumerate(args, rep):
    from .classifier import enumerate_solutions
    sols = enumerate_solutions(args.size, args.equation.upper(), bijective_only=args.bijective,
                               up_to_equivalence=args.up_to_equivalence)
    rep.value("count", len(sols))
    data = [s.to_json() for s in sols]
    if args.out:
        _write(args.out, data)
    else:
        rep.value("solutions", data)


def cmd_recognize_basis(args, rep):
    from .classifier import recognize_basis
    from .errors import NotSetTheoretic, StageFailure
    G = _group(args.group)
    P = _basis_arg(args.basis, None)
    m = _conductor(args, P.m)
    if m != P.m:
        P = P.lift(m)
    if P.rows != G.n or P.cols != G.n:
        raise UsageError("basis must be %dx%d" % (G.n, G.n))
    try:
        r = recognize_basis(G, P)
    except NotSetTheoretic as e:
        rep.check("phi-set-theoretic", False, list(e.witness[0]))
        return
    except StageFailure as e:
        rep.check("stage %s" % e.stage, False, e.witness)
        return
    rep.check("recognized", True)
    rep.value("A", list(r.A))
    rep.value("N", list(r.N))
    rep.value("lambda", r.lam)
    rep.value("assignment", [list(x) for x in r.character_assignment])
    rep.value("stages", r.stages)


# -- parser ------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="pentagon", description="Finite pentagon-equation solutions "
                                "and the Hopf algebras attached to them.")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--conductor", type=int, help="work over Q(zeta_m) for this m")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    sub = p.add_subparsers(dest="command")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--conductor", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
        return sp

    sp = add("verify-set", cmd_verify_set, "check RPE or PE for a set solution")
    sp.add_argument("--input", required=True, help="solution JSON file or catalog name")
    sp.add_argument("--equation", default="rpe", choices=["rpe", "pe", "RPE", "PE"])
    sp.add_argument("--flags", action="store_true")

    sp = add("convert", cmd_convert, "linearise, pull back or pass to the algebra element")
    sp.add_argument("--input", required=True)
    sp.add_argument("--from", dest="source", default="set", choices=["set"])
    sp.add_argument("--to", default="algebra", choices=["vector", "pullback", "algebra"])
    sp.add_argument("--out")

    sp = add("coeff", cmd_coeff, "coefficient Hopf algebra of a set solution")
    sp.add_argument("--input", required=True)
    sp.add_argument("--side", default="right", choices=["right", "left"])
    sp.add_argument("--check", default="hopf,positive,settheoretic")
    sp.add_argument("--out")

    sp = add("hopf-check", cmd_hopf_check, "verify the axioms of a Hopf algebra")
    sp.add_argument("--hopf", required=True)
    sp.add_argument("--basis")

    sp = add("phi-basis", cmd_phi_basis, "test whether a basis is Phi-set-theoretic")
    sp.add_argument("--hopf", required=True)
    sp.add_argument("--basis", required=True)
    sp.add_argument("--out")

    sp = add("group-solution", cmd_group_solution, "group, dual or PE solution of a group")
    sp.add_argument("--group", required=True)
    sp.add_argument("--kind", default="group", choices=["group", "dual", "pe"])
    sp.add_argument("--out")

    sp = add("fourier-basis", cmd_fourier_basis, "Fourier bases of k[G] for its splittings")
    sp.add_argument("--group", required=True)
    sp.add_argument("--A", help="comma separated indices of the abelian normal subgroup")
    sp.add_argument("--N", help="comma separated indices of the complement")
    sp.add_argument("--out")

    sp = add("matched-pair", cmd_matched_pair, "bicrossed products of matched pairs")
    sp.add_argument("--input")
    sp.add_argument("--B")
    sp.add_argument("--N")
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--solution", action="store_true", help="report the set solutions")
    sp.add_argument("--out")

    sp = add("enumerate", cmd_enumerate, "exhaustive scan of small solutions")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--equation", default="rpe", choices=["rpe", "pe", "RPE", "PE"])
    sp.add_argument("--bijective", action="store_true")
    sp.add_argument("--up-to-equivalence", action="store_true")
    sp.add_argument("--out")

    sp = add("recognize-basis", cmd_recognize_basis, "classify a Phi-set-theoretic basis of k[G]")
    sp.add_argument("--group", required=True)
    sp.add_argument("--basis", required=True)
    return p


def dispatch(argv):
    """Run one subcommand; returns (exit code, Report or None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (2 if e.code else 0), None
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2, None
    rep = Report(["pentagon"] + list(argv))
    t0 = time.perf_counter()
    try:
        args.fn(args, rep)
    except UsageError as e:
        print("pentagon %s: %s" % (args.command, e), file=sys.stderr)
        return 2, None
    except (PentagonError, KeyError, ValueError, TypeError) as e:
        if isinstance(e, PentagonError) and rep.checks:
            rep.check(type(e).__name__, False, e.witness)
        else:
            print("pentagon %s: %s: %s" % (args.command, type(e).__name__, e), file=sys.stderr)
            return 2, None
    if args.timing:
        rep.timing = round(time.perf_counter() - t0, 3)
    if args.json:
        print(json.dumps(rep.to_json(), sort_keys=True, indent=2))
    else:
        print(rep.to_text())
    return (0 if rep.ok else 1), rep


def main(argv=None):
    code, _ = dispatch(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
