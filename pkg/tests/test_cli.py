import io
import json
import subprocess
import sys

import pytest

from conftest import FIXTURES, ROOT
from elnet.cli import main
from elnet.groves import grove_measurements
from elnet.network import load


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


TRI = str(FIXTURES / "triangle.enet")


# --- enet ----------------------------------------------------------------------------------


def test_response_and_resistance():
    code, out, _ = run("enet", "response", TRI)
    assert code == 0 and out.splitlines()[0] == "5 -3 -2"
    code, out, _ = run("enet", "resistance", TRI)
    assert code == 0 and out.splitlines()[0].split()[1] == "5/17"


def test_groves_listing():
    code, out, _ = run("enet", "groves", TRI)
    assert code == 0
    assert out.splitlines() == ["1|2|3 : 1", "1|2 3 : 1/2", "1 2|3 : 3", "1 2 3 : 17/2", "1 3|2 : 2"]


def test_plucker_lam_contains_unc_line():
    code, out, _ = run("enet", "plucker", TRI, "--map", "lam")
    assert code == 0
    unc = grove_measurements(load(TRI)).unc
    assert f"2,4 : {unc}" in out.splitlines()


@pytest.mark.parametrize("mapping, first", [("cgs", "1,2,3,4 : "), ("lagrangian", "1,2 : ")])
def test_plucker_other_maps(mapping, first):
    code, out, _ = run("enet", "plucker", TRI, "--map", mapping)
    assert code == 0 and out.startswith(first)


@pytest.mark.parametrize("what, shape", [("omega", (2, 6)), ("omega-v", (2, 4)), ("omega-r", (2, 6)), ("cgs", (4, 6)), ("x", (4, 6))])
def test_emit_shapes(what, shape):
    code, out, _ = run("enet", "emit", TRI, "--emit", what)
    rows = out.strip().splitlines()
    assert code == 0 and (len(rows), len(rows[0].split())) == shape


def test_verify_all_passes():
    code, out, _ = run("enet", "verify", TRI, "--checks", "all")
    lines = out.splitlines()
    assert code == 0
    assert lines == [
        "summary: 9 passed, 0 failed, 0 skipped; passed: dimer-vs-grove, dual-shift, inclusion, "
        "isotropy (3 zero matrices), lagrangian, orthogonality, point-equality, resistance-embedding, x-matrix"
    ]


def test_verify_isotropy_only():
    code, out, _ = run("enet", "verify", str(FIXTURES / "random" / "r12_n4_i1.enet"), "--checks", "isotropy", "--verbose")
    assert code == 0
    assert out.splitlines()[0] == "isotropy: pass (3 zero matrices)"


def test_verify_json():
    code, out, _ = run("enet", "verify", TRI, "--json")
    data = json.loads(out)
    assert code == 0
    assert [c["name"] for c in data["checks"]] == sorted(c["name"] for c in data["checks"])
    assert data["summary"] == {"passed": 9, "failed": 0, "skipped": 0}
    assert all(c["status"] == "pass" and c["witnesses"] == [] for c in data["checks"])


def test_verify_response_matrix_input(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("2 -1 -1\n-1 2 -1\n-1 -1 2\n")
    code, out, _ = run("enet", "verify", str(f))
    assert code == 0
    assert "point-equality: skipped" in out
    assert out.splitlines()[-1].startswith("summary: 3 passed, 0 failed, 6 skipped")


def test_unknown_check():
    code, _, err = run("enet", "verify", TRI, "--checks", "isotropy,bogus")
    assert code == 2 and "bogus" in err


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (("enet", "verify", str(FIXTURES / "asym_response.txt")), "GaugeError"),
        (("enet", "response", str(FIXTURES / "cactus_triangle.enet")), "UnsupportedError"),
        (("enet", "groves", str(FIXTURES / "k4_crossing.enet")), "line 14"),
        (("enet", "groves", str(FIXTURES / "missing.enet")), "InputError"),
        (("enet", "groves", "MATRIX"), "needs a network"),
        (("ncp", "dual", "1 3|2 4"), "PartitionError"),
        (("ncp", "dual"), "needs a partition"),
        (("ncp", "list", "x"), "integer"),
    ],
)
def test_input_errors_exit_2(argv, fragment, tmp_path):
    matrix = tmp_path / "m.txt"
    matrix.write_text("1 -1\n-1 1\n")
    code, out, err = run(*(str(matrix) if a == "MATRIX" else a for a in argv))
    assert code == 2 and out == ""
    assert err.startswith("error: ") and fragment in err


def test_argparse_errors_exit_2(capsys):
    assert main(["enet", "frobnicate", TRI]) == 2


def test_enumeration_cap_env(monkeypatch):
    monkeypatch.setenv("ENET_MAX_EDGES", "2")
    code, _, err = run("enet", "groves", TRI)
    assert code == 2 and "cap of 2" in err


def test_cactus_groves():
    code, out, _ = run("enet", "groves", str(FIXTURES / "cactus_triangle.enet"))
    assert code == 0 and out.splitlines() == ["1 2|3 : 1", "1 2 3 : 5/2"]


# --- ncp ---------------------------------------------------------------------------------------


def test_ncp_list_and_counts():
    code, out, _ = run("ncp", "list", "--n", "4")
    assert code == 0 and len(out.splitlines()) == 14
    assert run("ncp", "list", "3")[1].splitlines()[0] == "1|2|3"


def test_ncp_dual_merge():
    assert run("ncp", "dual", "1 4 6|2 3|5")[1] == "1 3|2|4 5|6\n"
    assert run("ncp", "merge", "1 4 6|2 3|5")[1] == "1 7 11|2 6|3 5|4|8 10|9|12\n"


def test_ncp_wedge_worked_example():
    code, out, _ = run("ncp", "wedge", "1 4 6|2 3|5", "--n", "6")
    lines = out.splitlines()
    assert code == 0
    assert "signed: (e1+e7)(e2-e6)(e3+e5)(e7-e11)(e8+e10)" in lines
    assert "v-basis: (v1-v3+v5)∧(v2-v4)∧v3∧(v7-v9)∧v8" in lines
    assert lines[lines.index("expanded:") + 1 :]


def test_ncp_lext():
    assert run("ncp", "lext", "1|2 5 8|3|4|6 7")[1] == "(2,8,14)(3,5,7)(4)(6)(9,13)(10,12)(11)\n"


# --- sym and lam ---------------------------------------------------------------------------------


def test_sym_unique_form_3():
    code, out, _ = run("sym", "unique-form", "3")
    assert code == 0
    assert out.splitlines() == [
        "dimension: 1",
        "omega =",
        "0 a 0 0",
        "-a 0 -a 0",
        "0 a 0 a",
        "0 0 -a 0",
        "proportional to Lambda_4: yes",
    ]


def test_sym_forms():
    code, out, _ = run("sym", "forms", "2")
    assert code == 0
    assert out.splitlines()[:3] == ["Lambda_2", "0 1", "-1 0"]
    assert "Lambda_tilde_4" in out and "Lambda_bar_4" in out


@pytest.mark.parametrize("action", ["crystal", "invariance", "symplectic"])
def test_lam_reports(action):
    code, out, _ = run("lam", action, "3")
    assert code == 0 and out.startswith("summary: 1 passed, 0 failed, 0 skipped")


def test_lam_json():
    code, out, _ = run("lam", "crystal", "3", "--json")
    assert code == 0 and json.loads(out)["checks"][0] == {"name": "crystal n=3", "status": "pass", "witnesses": []}


# --- determinism and entry points -------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [("enet", "verify", TRI, "--json"), ("enet", "plucker", TRI, "--map", "cgs"), ("ncp", "wedge", "1|2 5 8|3|4|6 7")],
)
def test_output_is_deterministic(argv):
    assert run(*argv) == run(*argv)


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "elnet", "ncp", "dual", "1 4 6|2 3|5"], capture_output=True, text=True, cwd=ROOT
    )
    assert res.returncode == 0 and res.stdout == "1 3|2|4 5|6\n"
    res = subprocess.run([sys.executable, "-m", "elnet", "enet", "verify", "fixtures/asym_response.txt"], capture_output=True, text=True, cwd=ROOT)
    assert res.returncode == 2 and res.stdout == ""
