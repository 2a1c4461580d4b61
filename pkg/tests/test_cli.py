import json
import math
import subprocess
import sys

import numpy as np
import pytest

from geodiv.cli import main
from geodiv.manyparty import quantum_multi_information
from geodiv.quantum import quantum_relative_entropy
from geodiv.states import State, bell_mixture, correlated_bits, random_density, save_state


@pytest.fixture
def files(tmp_path):
    rng = np.random.default_rng(4)
    paths = {}

    def put(name, doc):
        paths[name] = tmp_path / f"{name}.json"
        if isinstance(doc, State):
            save_state(paths[name], doc)
        else:
            paths[name].write_text(json.dumps(doc))

    put("p", {"kind": "simplex", "p": [0.75, 0.25]})
    put("q", {"kind": "simplex", "p": [0.5, 0.5]})
    put("r1", State("density", random_density(3, rng)))
    put("r2", State("density", random_density(3, rng)))
    put("bits", State("joint", correlated_bits(0.05)))
    put("product", {"kind": "joint", "cards": [2, 2], "p": [0.08, 0.12, 0.32, 0.48]})
    put("bell", State("multiqubit", bell_mixture(1e-3)))
    put("subsets", {"subsets": [[0, 1]]})
    put("broken", {"kind": "simplex", "p": [0.9, 0.9]})
    return {k: str(v) for k, v in paths.items()}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_canonical_with_oracle(files, capsys):
    code, out, _ = run(capsys, "divergence", "--kind", "canonical", "--a", files["p"], "--b", files["q"],
                       "--compare-oracle", "--no-timestamp")
    rep = json.loads(out)
    assert code == 0
    assert rep["value"] == pytest.approx(0.130812, abs=1e-6)
    assert rep["abs_error"] <= 1e-8
    assert "timestamp" not in rep and rep["config"]["kind"] == "canonical"


def test_identical_files_give_zero(files, capsys):
    _, out, _ = run(capsys, "divergence", "--kind", "dual", "--a", files["p"], "--b", files["p"])
    assert abs(json.loads(out)["value"]) <= 1e-12


def test_dual_q_against_reversed_qre(files, capsys):
    _, out, _ = run(capsys, "divergence", "--kind", "dual-q", "--a", files["r1"], "--b", files["r2"],
                    "--compare-oracle")
    rep = json.loads(out)
    assert rep["abs_error"] <= 1e-7
    r1 = json.loads(open(files["r1"]).read())
    assert "timestamp" in rep and r1["kind"] == "density"


def test_output_is_deterministic(files, capsys):
    args = ("divergence", "--kind", "canonical-q", "--a", files["r1"], "--b", files["r2"], "--no-timestamp")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_complexity_classical(files, capsys):
    _, out, _ = run(capsys, "complexity", "--classical", "--state", files["product"], "--family", "singletons")
    assert json.loads(out)["value"] <= 1e-12
    _, out, _ = run(capsys, "complexity", "--classical", "--state", files["bits"], "--family", "singletons",
                    "--no-timestamp")
    rep = json.loads(out)
    oracle = 2 * math.log(2) + 2 * (0.45 * math.log(0.45) + 0.05 * math.log(0.05))
    assert abs(rep["value"] - oracle) <= 1e-9 and rep["abs_error"] <= 1e-9
    assert {"iterations", "residual", "config"} <= rep.keys()
    _, out, _ = run(capsys, "complexity", "--classical", "--state", files["bits"], "--family", "subsets",
                    files["subsets"], "--bits")
    assert json.loads(out)["value"] <= 1e-12


def test_complexity_quantum_bits(files, capsys):
    code, out, _ = run(capsys, "complexity", "--quantum", "--state", files["bell"], "--k", "1", "--bits")
    rep = json.loads(out)
    expected = quantum_multi_information(bell_mixture(1e-3)) / math.log(2)
    assert code == 0 and abs(rep["value"] - expected) <= 1e-5 / math.log(2)
    assert rep["unit"] == "bits"


def test_not_converged_exit_code(files, capsys):
    code, out, err = run(capsys, "complexity", "--quantum", "--state", files["bell"], "--k", "2",
                         "--max-iter", "1", "--tol", "1e-14")
    assert code == 3
    rep = json.loads(out)
    assert rep["iterations"] == 1 and rep["residual"] > 1e-14


@pytest.mark.parametrize(
    "argv",
    [
        ["divergence", "--kind", "qre", "--a", "{p}", "--b", "{q}"],
        ["divergence", "--kind", "kl", "--a", "{broken}", "--b", "{q}"],
        ["divergence", "--kind", "kl", "--a", "/nonexistent.json", "--b", "{q}"],
        ["divergence", "--kind", "kl", "--a", "{p}", "--b", "{q}", "--points", "1"],
        ["complexity", "--classical", "--state", "{bits}", "--family", "triples"],
        ["complexity", "--quantum", "--state", "{bits}", "--k", "1"],
        ["complexity", "--quantum", "--state", "{bell}", "--k", "5"],
    ],
)
def test_validation_errors_exit_2(files, capsys, argv):
    code, out, err = run(capsys, *[a.format(**files) for a in argv])
    assert code == 2 and out == "" and err.strip()


def test_parse_error_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["divergence", "--kind", "nope"])
    assert info.value.code == 2


def test_quadrature_failure_exit_3(files, capsys):
    code, _, err = run(capsys, "divergence", "--kind", "canonical", "--a", files["p"], "--b", files["q"],
                       "--points", "3", "--tol", "1e-300")
    assert code == 3 and "quadrature" in err.lower()


def test_selftest_subset_and_vacuous(capsys):
    code, out, _ = run(capsys, "selftest", "--trials", "0")
    assert code == 0 and out.count("PASS") == 7
    code, out, _ = run(capsys, "selftest", "--suite", "classical-identity", "--trials", "3", "--seed", "5")
    assert code == 0 and "classical-identity" in out


def test_console_script_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "geodiv.cli", "divergence", "--kind", "kl", "--a", files["p"], "--b", files["q"]],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["quantity"] == "kl"
