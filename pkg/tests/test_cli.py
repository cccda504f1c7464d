import json
import subprocess
import sys

import pytest

from approxcat.cli import main, run
from approxcat.exactlin import ContractViolation
from approxcat.workspace import from_dict, load

A2_WS = {
    "format_version": 1,
    "field": {"kind": "prime", "p": 2},
    "quiver": {"vertices": [1, 2], "arrows": [["a1", 1, 2]]},
    "reps": {"M": {"dims": {"1": 1, "2": 1}, "maps": {"a1": [[1]]}}},
    "morphisms": {"f": {"dom": "S(2)", "cod": "M", "comps": {"2": [[1]]}}},
    "arrows": {"p": "cover(S(1))"},
}


@pytest.fixture
def a2_path(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(A2_WS))
    return str(path)


def call(*argv):
    code, text = run(list(argv))
    return code, json.loads(text)


def test_minimal_workspace_loads(a2_path):
    ws = load(a2_path)
    assert ws.quiver.n == 2 and len(ws.quiver.arrows) == 1
    assert ws.rep("M").dims == (1, 1) and ws.rep("M") == ws.rep("P(1)")
    assert ws.morphisms["f"].is_mono()
    assert ws.rep("S(1)+S(2)").dims == (1, 1)


def test_shape_mismatch_names_rep_and_arrow():
    bad = json.loads(json.dumps(A2_WS))
    bad["reps"]["M"]["maps"]["a1"] = [[1, 0]]
    with pytest.raises(ContractViolation) as err:
        from_dict(bad)
    assert "M" in str(err.value) and "a1" in str(err.value)


def test_unknown_keys_and_versions_rejected():
    with pytest.raises(ContractViolation, match="unknown top-level"):
        from_dict(dict(A2_WS, extra=1))
    with pytest.raises(ContractViolation, match="format_version"):
        from_dict(dict(A2_WS, format_version=7))


def test_builtin_templates():
    hu = load("builtin:happel-unger")
    assert hu.quiver.n == 3 and hu.rep("T1").dims == (4, 1, 2)
    assert hu.rep("T2").dims == (0, 1, 0)
    assert load("builtin:a2").quiver.n == 2
    with pytest.raises(ContractViolation, match="available"):
        load("builtin:nope")


def test_ext_and_hom_commands(a2_path):
    code, rep = call("ext", "S(1)", "S(2)", "--workspace", a2_path)
    assert code == 0 and rep["results"][0]["dim"] == 1
    code, rep = call("hom", "S(2)", "M", "--workspace", a2_path)
    assert code == 0 and rep["results"][0]["dim"] == 1


def test_tau_on_happel_unger():
    code, rep = call("tau", "S(2)", "--workspace", "builtin:happel-unger")
    assert code == 0 and rep["results"][0]["dims"] == [1, 0, 1]


def test_bet_and_precover_commands(a2_path):
    for argv in (["bet", "1(S(1))", "S(2)"], ["precover", "1(S(2))", "S(1)"], ["bet", "p", "S(2)"],
                 ["intersect", "S(2)", "1(S(1))", "p", "f"], ["sum-preenv", "1(S(1))", "1(M)", "S(2)"]):
        code, rep = call(*argv, "--workspace", a2_path)
        assert code == 0, (argv, rep)
        assert rep["exhaustive"] is False and rep["probes"] and rep["checks"]
        assert all(c["status"] in ("pass", "skipped") for c in rep["checks"])


def test_basis_mode(a2_path):
    code, rep = call("bet", "1(S(1))", "S(2)", "--mode", "basis", "--workspace", a2_path)
    assert code == 0


def test_verify_command(a2_path):
    code, rep = call("verify", "1(S(1))", "S(2)", "--workspace", a2_path)
    assert code == 0
    assert rep["checks"]


def test_selftest_passes():
    code, rep = call("selftest", "--seed", "0")
    assert code == 0 and rep["total_checks"] > 0
    assert all(c["status"] != "fail" for c in rep["checks"])


def test_reports_are_byte_stable(a2_path):
    argv = ["bet", "1(S(1))", "S(2)", "--workspace", a2_path]
    assert run(argv) == run(argv)
    code, rep = call(*argv)
    assert rep["digest"] == load(a2_path).digest and rep["seed"] == 0 and "timing" not in rep
    _, timed = call(*argv, "--timing")
    assert "seconds" in timed["timing"]


def test_error_exit_code(a2_path, capsys):
    code, rep = call("ext", "S(9)", "S(1)", "--workspace", a2_path)
    assert code == 2 and "error" in rep
    assert main(["tau", "X", "--workspace", a2_path]) == 2
    assert capsys.readouterr().err.strip()


def test_missing_workspace_is_an_error():
    code, rep = call("ext", "S(1)", "S(2)")
    assert code == 2 and "--workspace" in rep["error"]


def test_cap_exceeded_names_the_cap(tmp_path):
    ws = dict(A2_WS, caps={"bet_enumeration_cap": 1})
    path = tmp_path / "capped.json"
    path.write_text(json.dumps(ws))
    code, rep = call("bet", "1(S(1))", "S(2)", "--workspace", str(path))
    assert code == 2 and "bet_enumeration_cap" in rep["error"]


def test_enumerate_refuses_rationals(tmp_path):
    ws = dict(A2_WS, field={"kind": "rational"})
    del ws["reps"], ws["morphisms"]
    path = tmp_path / "q.json"
    path.write_text(json.dumps(ws))
    code, rep = call("bet", "1(S(1))", "S(2)", "--workspace", str(path))
    assert code == 2 and "finite field" in rep["error"]
    code, _ = call("bet", "1(S(1))", "S(2)", "--mode", "basis", "--workspace", str(path))
    assert code == 0


def test_out_writes_file(a2_path, tmp_path):
    out = tmp_path / "report.json"
    assert main(["ext", "S(1)", "S(2)", "--workspace", a2_path, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["results"][0]["dim"] == 1


def test_module_entry_point(a2_path):
    proc = subprocess.run([sys.executable, "-m", "approxcat", "ext", "S(1)", "S(2)", "--workspace", a2_path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"][0]["dim"] == 1
