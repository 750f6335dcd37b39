import csv
import io
import json
import math
import subprocess
import sys

import pytest

from ppinterleave.cli import main
from ppinterleave.modring import RingPolynomial
from ppinterleave.search import evaluate_candidate


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out.strip() else None), err


def test_validate_examples(capsys):
    code, rep, _ = run_json(capsys, "validate", 32, "0,7,16")
    assert code == 0
    out = rep["outputs"]
    assert out["permutation"] is True
    assert out["irreducible_degree"] is False
    assert out["reduced"]["coefficients"] == [0, 23]

    code, rep, _ = run_json(capsys, "validate", 5, "0,0,1")
    assert code == 1
    assert rep["status"] == "failure"
    c = rep["outputs"]["collision"]
    assert c["x1"] ** 2 % 5 == c["x2"] ** 2 % 5 == c["value"]

    code, rep, _ = run_json(capsys, "validate", 128, "0,15,32")
    assert code == 0
    assert rep["outputs"]["permutation"] and rep["outputs"]["irreducible_degree"]
    assert rep["outputs"]["reduced"] is None


def test_report_envelope(capsys):
    _, rep, _ = run_json(capsys, "bounds", 512)
    assert set(rep) == {"schema_version", "command", "status", "inputs", "outputs", "timing_ms"}
    assert rep["schema_version"] == "1"
    assert rep["command"] == "bounds" and rep["status"] == "ok"
    assert rep["inputs"] == {"N": 512, "command": "bounds"}


def test_metrics_examples(capsys):
    code, rep, _ = run_json(capsys, "metrics", 512, "0,31,64")
    assert code == 0
    m = rep["outputs"]["metrics"]
    assert (m["D"], m["zeta"], m["zeta_refined"], m["epsilon"]) == (32, 4, 3, 128)
    assert m["omega_refined"] == pytest.approx(3 * math.log(32))

    code, rep, _ = run_json(capsys, "metrics", 1504, "0,23,94", "--fit-inverse", 2)
    assert code == 0
    assert rep["outputs"]["inverse"] is None

    code, rep, _ = run_json(capsys, "metrics", 512, "0,15,32", "--optimize-f0")
    assert code == 0
    assert rep["outputs"]["optimize_f0"]["corner_merit"] >= 45

    code, rep, _ = run_json(capsys, "metrics", 408, "0,25,102", "--fit-inverse", 2)
    assert rep["outputs"]["inverse"]["coefficients"] == [0, 253, 102]


def test_search_commands(capsys):
    code, rep, _ = run_json(capsys, "search-maxd", 80, "--inverse")
    assert code == 0
    out = rep["outputs"]
    assert out["D"] == 10
    assert out["winner"]["coefficients"] == [0, 9, 20]
    assert out["inverse"]["coefficients"] == [0, 49, 20]

    code, rep, _ = run_json(capsys, "search-omega", 512, "--optimize-f0", "--prune")
    assert code == 0
    out = rep["outputs"]
    assert (out["D"], out["zeta_refined"]) == (16, 4)
    assert round(out["omega_refined"], 2) == 11.09
    assert out["beta"] == 0.45
    assert out["optimize_f0"] == {"f0": 433, "corner_merit": 45}

    code, rep, _ = run_json(capsys, "search-maxd", 5)
    assert code == 1 and rep["outputs"]["error"] == "NoQPPExists"
    code, rep, _ = run_json(capsys, "search-omega", 40, "--beta", 1.0)
    assert code == 1 and rep["outputs"]["error"] == "NoCandidate"


def test_ms_seq(capsys):
    code, rep, _ = run_json(capsys, "ms-seq", 5)
    assert code == 0
    out = rep["outputs"]
    assert out["polynomial"]["coefficients"] == [0, 31, 64]
    assert out["D"] == 32 and out["maximum_spread"] is True
    assert out["inverse_round_trip"] is True
    code, rep, _ = run_json(capsys, "ms-seq", 3)
    assert code == 0
    assert rep["outputs"]["reducible"] is True
    assert rep["outputs"]["reduced"]["coefficients"] == [0, 23]


def test_scan_and_bounds(capsys):
    code, rep, _ = run_json(capsys, "scan-existence", 64, "--list")
    assert code == 0
    assert rep["outputs"]["count"] == len(rep["outputs"]["N"])
    code, rep, _ = run_json(capsys, "bounds", 4)
    out = rep["outputs"]
    assert out["ub_D"] == pytest.approx(2.8284, abs=1e-4)
    assert out["ub_DE"] == 3 and out["ub_DE_family"] == "inspection"


def test_orbits_profile_linear(capsys):
    code, rep, _ = run_json(capsys, "orbits", 512, "0,31,64", "--points")
    out = rep["outputs"]
    assert (out["zeta"], out["orbit_size"]) == (4, 128)
    assert out["intra_orbit_bound"] == 8
    assert sum(len(o) for o in out["orbits"]) == 512

    code, rep, _ = run_json(capsys, "profile", 128, "0,15,32", "--rep", 0)
    prof = rep["outputs"]["profiles"]["0"]
    assert all(prof[str(i)] == 0 for i in range(1, 16))

    code, rep, _ = run_json(capsys, "linear-ms", 512)
    assert code == 0 and 31 in rep["outputs"]["f1"]
    code, rep, _ = run_json(capsys, "linear-ms", 100)
    assert code == 1


def test_export_formats(capsys):
    code, out, _ = run(capsys, "export", 128, "0,15,32", "--format", "txt")
    assert code == 0
    values = [int(v) for v in out.split()]
    f = RingPolynomial.qpp(128, 15, 32)
    assert values == [f(x) for x in range(128)]
    assert sorted(values) == list(range(128))

    code, out, _ = run(capsys, "export", 128, "0,15,32", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "fx"]
    assert [(int(a), int(b)) for a, b in rows[1:]] == list(enumerate(values))

    code, rep, _ = run_json(capsys, "export", 128, "0,15,32", "--format", "json")
    assert rep["outputs"]["perm"] == values

    code, rep, _ = run_json(capsys, "export", 5, "0,0,1")
    assert code == 1


@pytest.mark.parametrize("coeffs", ["0,31,64", "9,15,32", "0,15,16,128,32,32,64"])
def test_exported_coefficients_round_trip(capsys, coeffs):
    _, rep, _ = run_json(capsys, "export", 512, coeffs, "--format", "json")
    again = ",".join(map(str, rep["outputs"]["polynomial"]["coefficients"]))
    _, rep2, _ = run_json(capsys, "metrics", 512, again)
    assert rep2["outputs"]["metrics"] == rep["outputs"]["metrics"]
    poly = RingPolynomial(512, rep["outputs"]["polynomial"]["coefficients"])
    assert evaluate_candidate(poly).to_dict() == rep2["outputs"]["metrics"]


EXIT_MATRIX = [
    (["validate", "128", "0,15,32"], 0),
    (["validate", "5", "0,0,1"], 1),
    (["validate", "5", "0,x"], 2),
    (["validate", "1", "0,1"], 2),
    (["validate", "abc", "0,1"], 2),
    (["metrics", "128", "0,15,32"], 0),
    (["metrics", "5", "0,0,1"], 1),
    (["metrics", "128", "1,,2"], 2),
    (["search-maxd", "40"], 0),
    (["search-maxd", "5"], 1),
    (["search-maxd", "40", "--workers", "0"], 2),
    (["search-omega", "40", "--beta", "2"], 2),
    (["ms-seq", "4"], 0),
    (["ms-seq", "0"], 2),
    (["bounds", "1"], 2),
    (["orbits", "5", "0,0,1"], 1),
    (["profile", "128", "0,15,32", "--rep", "500"], 2),
    (["linear-ms", "8"], 0),
    (["linear-ms", "9"], 1),
    (["scan-existence", "1"], 2),
    (["export", "64", "0,1", "--format", "xml"], 2),
    (["no-such-command"], 2),
    ([], 2),
]


@pytest.mark.parametrize("argv,expected", EXIT_MATRIX, ids=[" ".join(a) or "empty" for a, _ in EXIT_MATRIX])
def test_exit_codes(capsys, argv, expected):
    assert main(argv) == expected
    capsys.readouterr()


def test_diagnostics_go_to_stderr(capsys):
    code, out, err = run(capsys, "validate", 5, "0,x")
    assert code == 2 and out == "" and "comma-separated" in err


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ppinterleave.cli", "bounds", "8"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["ub_DE"] == pytest.approx(14 / 3)


def test_identical_outputs_across_workers(capsys):
    outs = []
    for w in (1, 4, 16):
        _, rep, _ = run_json(capsys, "search-omega", 800, "--workers", w)
        outs.append(rep["outputs"])
    assert outs[0] == outs[1] == outs[2]
