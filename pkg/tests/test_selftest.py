import json

import numpy as np

from geodiv.selftest import SUITES, Check, failure_record, format_table, run_selftest


def test_fixed_seed_reproduces_cases():
    a = run_selftest(seed=3, trials=2, only=["quantum-identity", "classical-identity"])
    b = run_selftest(seed=3, trials=2, only=["classical-identity", "quantum-identity"])
    for ra, rb in zip(a, b):
        assert [c.label for c in ra.checks] == [c.label for c in rb.checks]
        for ca, cb in zip(ra.checks, rb.checks):
            for key in ca.inputs:
                assert np.array_equal(ca.inputs[key], cb.inputs[key])


def test_suite_draws_do_not_depend_on_selection():
    alone = run_selftest(seed=1, trials=2, only=["commuting-reduction"])[0]
    full = {r.name: r for r in run_selftest(seed=1, trials=2)}["commuting-reduction"]
    assert [c.error for c in alone.checks] == [c.error for c in full.checks]


def test_zero_trials_is_vacuous():
    results = run_selftest(trials=0)
    assert len(results) == len(SUITES)
    assert all(r.passed for r in results)
    assert "PASS" in format_table(results)


def test_failure_record_is_json_replayable():
    rho = np.eye(2, dtype=complex) / 2
    rec = failure_record("demo", Check("x", 1.0, 0.1, {"rho": rho, "p": np.array([0.5, 0.5])}))
    back = json.loads(json.dumps(rec))
    assert back["inputs"]["rho"]["re"] == [[0.5, 0.0], [0.0, 0.5]]
    assert back["inputs"]["p"] == [0.5, 0.5]


def test_nan_error_fails():
    assert not Check("nan", float("nan"), 1.0).passed
