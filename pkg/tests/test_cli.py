import json
import subprocess
import sys

import pytest

from pentagon import serialize as io
from pentagon.catalog import catalog, catalog_names
from pentagon.cli import dispatch, main
from pentagon.errors import UnknownName
from pentagon.groups import catalog_group
from pentagon.hopf import group_algebra


def run(*argv):
    return dispatch(list(argv))


def vals(rep):
    return rep.to_json()["values"]


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_catalog_names_resolve():
    for name in catalog_names(6):
        assert catalog(name) is not None
    with pytest.raises(UnknownName):
        catalog("nonsense:Z2")


def test_verify_set(tmp_path, capsys):
    code, rep = run("verify-set", "--input", "identity:2")
    assert code == 0 and rep.ok
    path = write(tmp_path, "bad.json", {"n": 2, "map": [[0, 0, 1, 0], [0, 1, 0, 0],
                                                       [1, 0, 1, 1], [1, 1, 0, 1]]})
    code, rep = run("verify-set", "--input", path)
    assert code == 1 and not rep.ok
    code, rep = run("verify-set", "--input", "pe_solution:S3", "--equation", "pe", "--flags")
    assert code == 0 and "commutative" in vals(rep)


def test_missing_file_is_usage_error(capsys):
    code, rep = run("verify-set", "--input", "/nonexistent/file.json")
    assert code == 2 and rep is None


def test_unknown_subcommand_and_no_command(capsys):
    assert run("frobnicate")[0] == 2
    assert run()[0] == 2


def test_convert(tmp_path, capsys):
    for target in ("vector", "pullback", "algebra"):
        out = str(tmp_path / ("%s.json" % target))
        code, rep = run("convert", "--input", "group_solution:S3", "--to", target, "--out", out)
        assert code == 0
        assert json.loads(open(out).read())["d"] == 6


def test_coeff(tmp_path, capsys):
    out = str(tmp_path / "h.json")
    code, rep = run("coeff", "--input", "group_solution:Z2",
                    "--check", "hopf,positive,settheoretic,crosscheck,coinvariants,"
                    "reconstruction,closedform", "--out", out)
    assert code == 0
    assert vals(rep)["dim"] == 2 and vals(rep)["constants"] == ["0", "1"]
    h = io.hopf_from_json(json.loads(open(out).read()))
    assert h.d == 2
    code, rep = run("coeff", "--input", "identity:2", "--side", "left")
    assert code == 0
    assert run("coeff", "--input", "identity:2", "--check", "bogus")[0] == 2


def test_conductor_must_be_multiple(capsys):
    code, _ = run("--conductor", "5", "fourier-basis", "--group", "Z3")
    assert code == 2
    code, rep = run("fourier-basis", "--group", "Z3", "--conductor", "6")
    assert code == 0 and vals(rep)["splittings"] == 2


def test_hopf_check_and_phi_basis(tmp_path, capsys):
    h = group_algebra(catalog_group("Z2"))
    hp = write(tmp_path, "h.json", io.hopf_to_json(h))
    good = write(tmp_path, "good.json", [[1, 0], [0, 1]])
    bad = write(tmp_path, "bad.json", [[1, 1], [0, 1]])
    code, rep = run("hopf-check", "--hopf", hp, "--basis", good)
    assert code == 0 and vals(rep)["positivity_verdict"] == "positive"
    code, rep = run("phi-basis", "--hopf", hp, "--basis", good)
    assert code == 0
    code, rep = run("phi-basis", "--hopf", hp, "--basis", bad)
    assert code == 1
    assert rep.checks[0][2] == [1, 0]


def test_group_solution_kinds(capsys):
    for kind in ("group", "dual", "pe"):
        code, rep = run("group-solution", "--group", "D4", "--kind", kind)
        assert code == 0


def test_fourier_basis_explicit_splitting(capsys):
    code, rep = run("fourier-basis", "--group", "S3", "--A", "0,1,2", "--N", "0,3")
    G = catalog_group("S3")
    if G.is_normal((0, 1, 2)):
        assert code == 0
    assert run("fourier-basis", "--group", "S3", "--A", "0,1")[0] == 2


def test_matched_pair(tmp_path, capsys):
    code, rep = run("matched-pair", "--B", "Z2", "--N", "Z3", "--enumerate", "--solution")
    assert code == 0 and vals(rep)["pairs"] == 2
    assert run("matched-pair")[0] == 2
    bad = write(tmp_path, "mp.json", {"B": {"table": [[0]]}})
    assert run("matched-pair", "--input", bad)[0] == 2


def test_enumerate(capsys):
    code, rep = run("enumerate", "--size", "2", "--bijective")
    assert code == 0 and vals(rep)["count"] == 5
    code, rep = run("enumerate", "--size", "3", "--bijective", "--up-to-equivalence")
    assert vals(rep)["count"] == 3


def test_recognize_basis(tmp_path, capsys):
    P = write(tmp_path, "p.json", [["3/2", "3/2"], ["3/2", "-3/2"]])
    code, rep = run("recognize-basis", "--group", "Z2", "--basis", P)
    assert code == 0 and vals(rep)["A"] == [0, 1]
    bad = write(tmp_path, "q.json", [[1, 1], [0, 1]])
    code, rep = run("recognize-basis", "--group", "Z2", "--basis", bad)
    assert code == 1 and rep.checks[0][2] == [1, 0]


def test_json_output_is_deterministic(capsys):
    run("--json", "verify-set", "--input", "identity:2")
    first = capsys.readouterr().out
    run("--json", "verify-set", "--input", "identity:2")
    second = capsys.readouterr().out
    assert first == second
    data = json.loads(first)
    assert data["ok"] is True and "timing" not in data


def test_main_returns_code(capsys):
    assert main(["verify-set", "--input", "identity:1"]) == 0


def test_console_entry(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "pentagon.cli", "verify-set", "--input",
                           "identity:2"], capture_output=True, text=True)
    assert proc.returncode == 0
