import csv
import io
import json
import math
import subprocess
import sys

import pytest

from nudirac.cli import main

MORSE_SHALLOW = ["--potential", "morse", "--v1", "4", "--v2", "2", "--alpha", "0.5", "--mass", "1",
                 "--symmetry", "pseudospin", "--const", "0", "--n", "0"]
HYPER_SPIN = ["--potential", "hypergeometric", "--D", "1", "--sigma", "3", "--alpha", "0.5", "--mass", "1",
              "--symmetry", "spin", "--kappa", "1"]
# deep Morse well (depth 2 at r_e = 8, alpha = 0.5) in the pseudospin limit
MORSE_DEEP = ["--potential", "morse", "--v1", repr(2 * math.exp(8.0)), "--v2", repr(4 * math.exp(4.0)),
              "--alpha", "0.5", "--mass", "1", "--symmetry", "pseudospin", "--const", "-5", "--kappa", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_rows_and_format(capsys):
    code, out, _ = run(capsys, "spectrum", *HYPER_SPIN, "--n", "2", "0", "1")
    assert code == 0
    assert "\r" not in out and out.endswith("\n")
    r = rows(out)
    assert [int(x["n"]) for x in r] == [0, 1, 2]
    assert r[0]["E"] == "%.17g" % float(r[0]["E"])
    assert float(r[0]["E"]) == pytest.approx(3.2016905603359183, rel=1e-9)
    assert {x["branch"] for x in r} == {"SpinPositive"}
    assert {x["equation_id"] for x in r} == {"Eq39"}


def test_shallow_morse_pseudospin_is_empty(capsys):
    code, out, _ = run(capsys, "spectrum", *MORSE_SHALLOW)
    assert code == 3
    assert out == "n,kappa,E,residual,branch,equation_id\n"


def test_printed_variant_reports_its_spurious_root(capsys):
    code, out, _ = run(capsys, "spectrum", *MORSE_SHALLOW, "--paper-verbatim")
    assert code == 0
    (row,) = rows(out)
    assert float(row["E"]) < 0


def test_manning_rosen_alias_is_byte_identical(capsys):
    base = ["spectrum", "--potential", "hypergeometric", "--D", "0.5", "--alpha", "0.5", "--mass", "1",
            "--kappa", "2", "--n", "0", "1"]
    a = run(capsys, *base, "--sigma", "1")
    b = run(capsys, *base, "--manning-rosen")
    assert a == b
    assert a[0] == 3


def test_usage_errors_name_the_invariant(capsys):
    code, _, err = run(capsys, "spectrum", "--potential", "hypergeometric", "--D", "-1", "--sigma", "0", "--alpha", "1")
    assert code == 2 and "D must be nonnegative" in err
    code, _, err = run(capsys, "spectrum", "--potential", "morse", "--v1", "1", "--v2", "1", "--alpha", "1", "--kappa", "3")
    assert code == 2 and "kappa" in err
    code, _, err = run(capsys, "spectrum", "--potential", "hypergeometric", "--alpha", "1")
    assert code == 2 and "--D" in err
    assert run(capsys, "spectrum", "--mass", "abc")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "spectrum")[0] == 2


def test_config_file_matches_flags_and_flags_win(tmp_path, capsys):
    cfg = {"potential": "hypergeometric", "D": 1, "sigma": 3, "alpha": 0.5, "mass": 1,
           "symmetry": "spin", "kappa": 1, "n": [0, 1], "solver": {"scan_points": 2000}}
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    from_file = run(capsys, "spectrum", "--config", str(path))
    from_flags = run(capsys, "spectrum", *HYPER_SPIN, "--n", "0", "1")
    assert from_file == from_flags
    overridden = run(capsys, "spectrum", "--config", str(path), "--kappa", "2")
    assert rows(overridden[1])[0]["kappa"] == "2"
    path.write_text("[1, 2]")
    assert run(capsys, "spectrum", "--config", str(path))[0] == 2


def test_jsonl_and_out_path(tmp_path, capsys):
    out_file = tmp_path / "levels.jsonl"
    code, out, _ = run(capsys, "spectrum", *HYPER_SPIN, "--n", "0", "--output", "jsonl", "--out", str(out_file))
    assert code == 0 and out == ""
    (rec,) = [json.loads(line) for line in out_file.read_text().splitlines()]
    assert rec["n"] == 0 and rec["E"] == pytest.approx(3.2016905603359183, rel=1e-9)


def test_threaded_output_is_identical(monkeypatch, capsys):
    serial = run(capsys, "spectrum", *HYPER_SPIN, "--n", "0", "1", "2")
    monkeypatch.setenv("NU_DIRAC_THREADS", "3")
    assert run(capsys, "spectrum", *HYPER_SPIN, "--n", "0", "1", "2") == serial


def test_wavefunction_ground_state_has_one_sign(capsys):
    code, out, _ = run(capsys, "wavefunction", *MORSE_DEEP, "--n", "0")
    assert code == 0
    v = [float(x["value"]) for x in rows(out)]
    assert len(v) == 500
    assert all(x >= 0 for x in v)


def test_wavefunction_second_excited_state_has_two_nodes(capsys):
    code, out, _ = run(capsys, "wavefunction", *MORSE_DEEP, "--n", "2", "--samples", "800")
    assert code == 0
    v = [float(x["value"]) for x in rows(out)]
    peak = max(abs(x) for x in v)
    v = [x for x in v if abs(x) > 1e-9 * peak]
    assert len(rows(out)) == 800
    assert sum(1 for a, b in zip(v, v[1:]) if a * b < 0) == 2


def test_wavefunction_missing_level(capsys):
    assert run(capsys, "wavefunction", *MORSE_DEEP, "--n", "40")[0] == 3


def test_verify_single_problem(capsys):
    code, out, _ = run(capsys, "verify", *HYPER_SPIN, "--n", "0", "1")
    assert code == 0
    r = rows(out)
    assert [x["status"] for x in r] == ["pass", "pass"]
    assert all(float(x["rel_diff"]) < 1e-5 for x in r)


def test_verify_printed_variant_mismatch_is_reported(capsys):
    code, out, _ = run(capsys, "verify", *MORSE_DEEP, "--n", "0", "1", "--bracket-lo", "-6", "--bracket-hi", "6",
                       "--paper-verbatim")
    assert code == 4
    assert any(x["status"] == "FAIL" for x in rows(out))


def test_verify_exact_centrifugal_column(capsys):
    code, out, _ = run(capsys, "verify", *HYPER_SPIN, "--kappa", "2", "--n", "0", "--centrifugal", "exact")
    assert code == 0
    (row,) = rows(out)
    assert 0 < float(row["approx_error"]) < 0.05
    code, out, _ = run(capsys, "verify", *HYPER_SPIN, "--kappa", "2", "--n", "0")
    assert "approx_error" not in out.splitlines()[0]


def test_approx_error_for_one_problem(capsys):
    code, out, _ = run(capsys, "approx-error", *HYPER_SPIN, "--kappa", "2", "--n", "0")
    assert code == 0
    (row,) = rows(out)
    assert float(row["gap"]) == pytest.approx(abs(float(row["E_exact"]) - float(row["E_approx"])))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nudirac", "spectrum", *HYPER_SPIN, "--n", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("n,kappa,E,")
    help_proc = subprocess.run([sys.executable, "-m", "nudirac", "--help"], capture_output=True, text=True)
    assert help_proc.returncode == 0
