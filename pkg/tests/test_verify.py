import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diracspin import __version__
from diracspin.verify import (DEFAULT_TOLERANCES, IDENTITY_RUNNERS, RunConfig,
                              complex_matrix_payload, format_float, identity_rng,
                              real_matrix_payload, run_all, run_identity, to_csv, to_json)

CFG = RunConfig(samples=25)


def test_registry_is_sorted_and_complete():
    names = list(IDENTITY_RUNNERS)
    assert names == sorted(names)
    assert set(DEFAULT_TOLERANCES) == set(names)
    assert len(names) >= 20


def test_identity_rng_reproducible():
    a = identity_rng(CFG, "wigner_closed_form").normal(size=4)
    b = identity_rng(CFG, "wigner_closed_form").normal(size=4)
    assert np.array_equal(a, b)
    c = identity_rng(CFG, "wigner_cocycle").normal(size=4)
    assert not np.array_equal(a, c)


def test_run_identity_passes_defaults():
    r = run_identity("amplitude_orthogonality", CFG)
    assert r.passed
    assert r.samples == 25
    assert 0.0 <= r.max_residual < r.tolerance


def test_run_identity_respects_override():
    tight = RunConfig(samples=10, tolerances={"bloch_rotation": 1e-30})
    r = run_identity("bloch_rotation", tight)
    assert not r.passed and r.tolerance == 1e-30


def test_run_identity_unknown_name():
    with pytest.raises(KeyError):
        run_identity("no_such_identity", CFG)


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(samples=0)
    with pytest.raises(ValueError):
        RunConfig(vmax=1.0)
    with pytest.raises(ValueError):
        RunConfig(mass=-1.0)
    with pytest.raises(ValueError):
        RunConfig(tolerances={"bogus": 1e-9})


def test_report_schema_and_pass():
    report = run_all(CFG)
    assert report["version"] == __version__
    assert report["all_pass"] is True
    assert [r["name"] for r in report["identities"]] == sorted(IDENTITY_RUNNERS)
    cfg = report["config"]
    assert cfg["seed"] == 42 and cfg["samples"] == 25
    assert set(cfg["tolerances"]) == set(IDENTITY_RUNNERS)


def test_report_json_byte_stable():
    a = to_json(run_all(CFG))
    b = to_json(run_all(CFG))
    assert a == b
    # and it parses as ordinary JSON with the same content
    parsed = json.loads(a)
    assert parsed["config"]["samples"] == 25


def test_report_json_seed_sensitivity():
    a = to_json(run_all(RunConfig(samples=10, seed=1)))
    b = to_json(run_all(RunConfig(samples=10, seed=2)))
    assert a != b


def test_report_csv_contract():
    text = to_csv(run_all(CFG))
    lines = text.strip().split("\n")
    assert lines[0] == "name,samples,tolerance,max_residual,passed"
    assert len(lines) == len(IDENTITY_RUNNERS) + 1
    first = lines[1].split(",")
    assert first[0] == sorted(IDENTITY_RUNNERS)[0]
    assert first[-1] in {"true", "false"}


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format_float_roundtrip(x):
    assert float(format_float(x)) == x


def test_format_float_rejects_non_finite():
    with pytest.raises(ValueError):
        format_float(float("nan"))
    with pytest.raises(ValueError):
        format_float(float("inf"))


def test_matrix_payloads():
    M = np.array([[1.0 + 2.0j, 0.0], [0.0, -1.5j]])
    got = complex_matrix_payload(M)
    assert got == [[[1.0, 2.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, -1.5]]]
    R = np.array([[1.0, 0.5], [-0.25, 2.0]])
    assert real_matrix_payload(R) == [[1.0, 0.5], [-0.25, 2.0]]


def test_failure_marks_report():
    cfg = RunConfig(samples=10, tolerances={"weinberg_condition": 1e-30})
    report = run_all(cfg)
    assert report["all_pass"] is False
    bad = [r for r in report["identities"] if r["name"] == "weinberg_condition"][0]
    assert bad["passed"] is False
    assert report["config"]["tolerances"]["weinberg_condition"] == 1e-30
