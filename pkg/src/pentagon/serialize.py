"""JSON encodings for matrices, tensors, Hopf algebras and solutions."""

import json

from .conversions import AlgebraSolution, LinearSolution
from .groups import FiniteGroup, MatchedPairGroups
from .hopf import FinHopf
from .linalg import Mat, Tensor3
from .scalars import Cyc, from_json as scalar_from_json, lcm, lift_conductor, to_json as scalar_to_json
from .solutions import FiniteSolution


def _scalar_in(obj):
    return scalar_from_json(obj)


def _common(values, m=None):
    ms = [v.m for v in values] + ([m] if m else [])
    mm = lcm(*ms) if ms else 1
    return mm, [v if v.m == mm else lift_conductor(v, mm) for v in values]


def tensor_to_json(t):
    return {"d": t.d, "nz": [[i, j, k, scalar_to_json(v)] for (i, j, k), v in sorted(t.entries.items())]}


def tensor_from_json(obj, m=None):
    vals = [_scalar_in(e[3]) for e in obj["nz"]]
    m, vals = _common(vals, m)
    return Tensor3(int(obj["d"]), {(int(e[0]), int(e[1]), int(e[2])): v
                                   for e, v in zip(obj["nz"], vals)}), m


def mat_to_json(M):
    return {"rows": M.rows, "cols": M.cols, "m": M.m,
            "nz": [[i, j, scalar_to_json(v)] for (i, j), v in sorted(M.entries.items())]}


def mat_from_json(obj, m=None):
    """Sparse {"rows", "cols", "nz"} or dense {"dense": [[...]]} or a bare list of rows."""
    if isinstance(obj, list):
        obj = {"dense": obj}
    if "dense" in obj:
        rows = [[_scalar_in(x) for x in r] for r in obj["dense"]]
        flat = [x for r in rows for x in r]
        mm, flat = _common(flat, m or obj.get("m"))
        c = len(rows[0]) if rows else 0
        ent = {(i, j): flat[i * c + j] for i in range(len(rows)) for j in range(c)}
        return Mat(len(rows), c, ent, mm)
    vals = [_scalar_in(e[2]) for e in obj["nz"]]
    mm, vals = _common(vals, m or obj.get("m"))
    return Mat(int(obj["rows"]), int(obj["cols"]),
               {(int(e[0]), int(e[1])): v for e, v in zip(obj["nz"], vals)}, mm)


def hopf_to_json(h):
    out = {"d": h.d, "m": h.m,
           "unit": [scalar_to_json(x) for x in h.unit],
           "counit": [scalar_to_json(x) for x in h.counit],
           "mult": tensor_to_json(h.mult), "comult": tensor_to_json(h.comult)}
    if h.antipode is not None:
        out["antipode"] = mat_to_json(h.antipode)
    return out


def hopf_from_json(obj):
    unit = [_scalar_in(x) for x in obj["unit"]]
    counit = [_scalar_in(x) for x in obj["counit"]]
    m = int(obj.get("m", 1))
    m, _ = _common(unit + counit, m)
    mult, m1 = tensor_from_json(obj["mult"], m)
    comult, m2 = tensor_from_json(obj["comult"], m)
    anti = None
    if obj.get("antipode") is not None:
        anti = mat_from_json(obj["antipode"], m)
    mm = lcm(m, m1, m2, anti.m if anti else 1)
    h = FinHopf(int(obj["d"]), mm, unit, counit, mult, comult, anti)
    if mm != m1 or mm != m2 or (anti is not None and anti.m != mm):
        h = h.lift(mm)
    return h


def linear_to_json(f):
    out = {"d": f.d, "matrix": mat_to_json(f.matrix)}
    if f.equation_tag:
        out["equation"] = f.equation_tag
    return out


def linear_from_json(obj):
    return LinearSolution(int(obj["d"]), mat_from_json(obj["matrix"]), obj.get("equation"))


def algebra_to_json(R):
    return {"d": R.d, "R": [[i, j, k, l, scalar_to_json(v)]
                           for ((i, j), (k, l)), v in sorted(R.R.items())]}


def algebra_from_json(obj):
    return AlgebraSolution(int(obj["d"]), {((e[0], e[1]), (e[2], e[3])): _scalar_in(e[4])
                                           for e in obj["R"]})


def solution_to_json(s):
    return s.to_json()


def solution_from_json(obj):
    return FiniteSolution.from_json(obj)


def group_to_json(G):
    return G.to_json()


def group_from_json(obj):
    return FiniteGroup.from_json(obj)


def matched_pair_to_json(mp):
    return mp.to_json()


def matched_pair_from_json(obj):
    return MatchedPairGroups.from_json(obj)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def scalar_str(x):
    from .scalars import render
    return render(x) if isinstance(x, Cyc) else str(x)
