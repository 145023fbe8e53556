import json
import subprocess
import sys

import pytest

from gcrbch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def payload(out):
    return json.loads(out.strip().splitlines()[-1])


def test_gcr_example(capsys):
    code, out, err = run(capsys, "gcr", "--m", "4", "--r", "2")
    d = payload(out)
    assert code == 0 and d["result"]["rho"] >= 5
    assert d["result"]["lower_bound_certificate"]["verdict"] == "no-cover-at-t"
    assert d["manifest"]["work"]["orbits_visited"] > 0
    assert "orbits found" in err or err == ""


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "y1y2y3", "--m", "4", "--mode", "exhaustive")
    assert code == 0 and payload(out)["result"]["pass"] is True


def test_certify_example_and_recheck(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "--m", "4", "--targets-from", "noncube-triple", "--t", "6")
    d = payload(out)
    assert code == 0 and d["result"]["verdict"] == "no-cover-at-t"
    assert d["manifest"]["work"]["subsets_enumerated"] == 5005
    path = tmp_path / "cert.json"
    path.write_text(out)
    code, out, _ = run(capsys, "certify", "--recheck", str(path))
    assert code == 0 and payload(out)["result"]["recheck"] is True


def test_recheck_covered_and_tampered(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "--m", "3", "--targets", "0x0,0x1", "--t", "4")
    d = payload(out)
    assert d["result"]["verdict"] == "covered"
    good = tmp_path / "good.json"
    good.write_text(json.dumps(d["result"]))
    assert run(capsys, "certify", "--recheck", str(good))[0] == 0
    d["result"]["witness"] = [0, 0, 1, 2]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    assert run(capsys, "certify", "--recheck", str(bad))[0] == 1


def test_gcr_certificate_rechecks(capsys, tmp_path):
    _, out, _ = run(capsys, "gcr", "--m", "3", "--r", "2")
    cert = payload(out)["result"]["lower_bound_certificate"]
    path = tmp_path / "lb.json"
    path.write_text(json.dumps(cert))
    assert run(capsys, "certify", "--recheck", str(path))[0] == 0


def strip_time(out):
    lines = []
    for line in out.strip().splitlines():
        d = json.loads(line)
        if "manifest" in d:
            d["manifest"].pop("wall_time_s")
        lines.append(d)
    return lines


@pytest.mark.parametrize("argv", [
    ("gcr", "--m", "3", "--r", "2"),
    ("cover", "--m", "9", "--targets", "0x3,0x5,0x11,0x1ff"),
    ("cover", "--m", "9", "--targets", "0x3,0x5", "--order", "randomized", "--seed", "4"),
    ("charsum", "--m", "8", "--kind", "cochrane", "--samples", "20", "--seed", "2"),
    ("classify", "--n", "6", "--k", "3", "--d", "3"),
])
def test_deterministic(capsys, argv):
    a = strip_time(run(capsys, *argv)[1])
    b = strip_time(run(capsys, *argv)[1])
    assert a == b


def test_jobs_do_not_change_output(capsys):
    a = payload(run(capsys, "gcr", "--m", "3", "--r", "2", "--jobs", "1")[1])["result"]
    b = payload(run(capsys, "gcr", "--m", "3", "--r", "2", "--jobs", "2")[1])["result"]
    assert a == b


@pytest.mark.parametrize("argv", [
    ("field", "--m", "4", "--modulus", "0x11"),
    ("cover", "--m", "4", "--targets", "0x1"),
    ("cover", "--m", "4", "--targets", "1,2"),
    ("cover", "--m", "4", "--targets", "0x10,0x1"),
    ("certify", "--m", "4"),
    ("gcr", "--m", "6", "--r", "3"),
    ("verify", "--lemma", "noncube", "--m", "5"),
    ("frobnicate",),
    ("gcr", "--r", "2"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.strip()


def test_failed_checks_exit_1(capsys):
    code, out, _ = run(capsys, "bound", "--kind", "counting", "--k", "3", "--m", "8")
    assert code == 1 and payload(out)["result"]["bound"] is None
    assert run(capsys, "bound", "--kind", "counting", "--k", "3", "--m", "9")[0] == 0


def test_csv_output(capsys):
    code, out, _ = run(capsys, "charsum", "--m", "4", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("# manifest: ")
    assert lines[1] == "m,family,abs_sum_sq,bound_sq,pass"
    assert all(line.endswith(",1") for line in lines[2:])


def test_other_subcommands(capsys):
    code, out, _ = run(capsys, "field", "--m", "8")
    assert code == 0 and payload(out)["result"]["modulus"] == "0x11d"
    code, out, _ = run(capsys, "ghw", "--m", "3", "--r", "3")
    assert code == 0 and payload(out)["result"]["d_r"] == 6
    code, out, _ = run(capsys, "dcc", "--m", "3", "--r", "2", "--generic")
    assert code == 0 and payload(out)["result"]["d_cc"] == 5
    code, out, _ = run(capsys, "count", "--m", "7", "--targets", "0x3,0x5,0x11,0x7f")
    assert code == 0 and payload(out)["result"]["proof_lower_bound_holds"] is True
    code, out, _ = run(capsys, "verify", "--lemma", "noncube", "--m", "4")
    assert code == 0 and payload(out)["result"]["triple"] == ["0x1", "0x8", "0xc"]
    code, out, _ = run(capsys, "bound", "--kind", "threshold", "--k", "2", "--m", "7")
    assert code == 0 and payload(out)["result"]["bound"] == 5


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "gcrbch", "field", "--m", "3"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["modulus"] == "0xb"
