import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from kgpt.cli import run
from kgpt.schemas import BY_COMMAND, SCHEMA_VERSION

FAST_COMMANDS = [
    ["spectrum", "--D", "10"],
    ["spectrum", "--D", "1", "--q", "2"],
    ["wavefunction", "--D", "10", "--n", "2", "--points", "11"],
    ["wavefunction", "--D", "1", "--epsilon", "1.5707963267948966", "--points", "11"],
    ["potential", "--points", "21"],
    ["special", "--case", "reflectionless", "--lambda", "2"],
    ["special", "--case", "q-symmetric", "--lambda", "2", "--q", "3"],
    ["special", "--case", "symmetric", "--lambda", "1.5"],
    ["special", "--case", "pt", "--D", "1", "--epsilon", "1.2"],
    ["verify", "--D", "1", "--points", "1001,2001"],
    ["residual", "--D", "1", "--h", "0.04,0.02", "--half-width", "8", "--dps", "20"],
]


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv", FAST_COMMANDS, ids=lambda a: "-".join(a[:3]))
def test_json_validates_against_schema(argv):
    code, out, _ = call(argv)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["command"] == argv[0]
    jsonschema.validate(doc, BY_COMMAND[argv[0]])


@pytest.mark.parametrize("argv", FAST_COMMANDS, ids=lambda a: "-".join(a[:3]))
@pytest.mark.parametrize("fmt", ["json", "csv", "table"])
def test_deterministic_output(argv, fmt):
    first = call(argv + ["--format", fmt])
    second = call(argv + ["--format", fmt])
    assert first == second
    assert first[1]


def test_deterministic_across_processes(tmp_path):
    argv = ["spectrum", "--D", "10", "--q", "4"]
    outputs = []
    for i in range(2):
        path = tmp_path / f"out{i}.json"
        subprocess.run([sys.executable, "-m", "kgpt", *argv, "--output", str(path)], check=True)
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0] == call(argv)[1].encode()


def test_spectrum_values():
    _, out, _ = call(["spectrum", "--D", "10"])
    doc = json.loads(out)
    assert doc["count"] == 4
    assert doc["levels"][0]["E"] == pytest.approx(-0.96946078129660938, abs=1e-12)
    assert doc["params"] == {"mu": 1.0, "alpha": 1.0, "D": 10.0, "q": 1.0, "hbar": 1.0, "c": 1.0}


def test_csv_and_table_layout():
    _, out, _ = call(["spectrum", "--format", "csv"])
    assert out.splitlines()[0] == "n,E,k,xi"
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(0.54368901269207636, abs=1e-12)
    _, out, _ = call(["spectrum", "--format", "table"])
    assert out.splitlines()[0].split() == ["n", "E", "k", "xi"]


@pytest.mark.parametrize("argv, expected", [
    (["spectrum", "--D", "0"], 1),
    (["wavefunction", "--D", "1", "--n", "1"], 1),
    (["verify", "--D", "1", "--n", "1", "--points", "1001,2001"], 1),
    (["spectrum", "--alpha", "-1"], 2),
    (["spectrum", "--q", "0"], 2),
    (["special", "--case", "reflectionless", "--lambda", "1.5"], 2),
    (["special", "--case", "pt", "--D", "1", "--epsilon", "0.3"], 2),
    (["special", "--case", "symmetric"], 2),
    (["potential", "--rmin", "2", "--rmax", "1"], 2),
    (["wavefunction", "--epsilon", "3.141592653589793", "--rmin", "-1", "--rmax", "1", "--points", "3"], 2),
    (["spectrum", "--D", "abc"], 2),
    (["nonsense"], 2),
])
def test_exit_codes(argv, expected):
    code, out, err = call(argv)
    assert code == expected
    if expected == 2 and argv[0] != "nonsense" and "abc" not in argv:
        assert "invalid parameters" in err


def test_empty_spectrum_still_reports():
    code, out, err = call(["spectrum", "--D", "0"])
    assert code == 1
    assert json.loads(out)["count"] == 0
    assert "empty spectrum" in err


def test_output_file(tmp_path):
    path = tmp_path / "scan.csv"
    code, out, _ = call(["potential", "--format", "csv", "--points", "5", "--output", str(path)])
    assert code == 0 and out == ""
    assert path.read_text().splitlines()[0] == "r,V_q=1.0,V_q=2.0,V_q=3.0,V_q=4.0,V_q=5.0,V_q=6.0"


def test_potential_minima():
    _, out, _ = call(["potential", "--q-list", "1,2,3,4,5,6", "--D", "1", "--alpha", "1"])
    for curve in json.loads(out)["curves"]:
        q = curve["q"]
        assert curve["minimum"]["r"] == pytest.approx(math.log(q) / 2, abs=1e-9)
        assert curve["minimum"]["v"] == pytest.approx(-1 / q, abs=1e-9)


def test_verify_agrees():
    _, out, _ = call(["verify", "--D", "10", "--q", "2"])
    doc = json.loads(out)
    assert len(doc["reports"]) == 3  # same as depth D/q = 5
    assert all(r["agree"] for r in doc["reports"])


def test_residual_ratios():
    _, out, _ = call(["residual", "--D", "1", "--h", "0.008,0.004", "--half-width", "10"])
    doc = json.loads(out)
    assert doc["ratios"][0] == pytest.approx(16.0, rel=0.25)


def test_pt_wavefunction_is_complex():
    _, out, _ = call(["wavefunction", "--D", "1", "--epsilon", "1.2", "--points", "5", "--format", "csv"])
    assert out.splitlines()[0] == "r,psi_real,psi_imag"
