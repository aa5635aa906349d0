import json
from pathlib import Path

import pytest

import envcert

PROBLEMS = Path(__file__).resolve().parents[2] / "problems"
DI = str(PROBLEMS / "double_integrator.json")
JET = str(PROBLEMS / "jet_engine.json")


@pytest.fixture(scope="module")
def di_run():
    return envcert.certify(DI)


def test_certify_passes(di_run):
    assert di_run["verdict"] == "PASS"
    assert set(di_run["conditions"]) == {
        "taylor_model", "invariance", "safety", "admissibility", "initial_coverage"}
    assert all(v == "PASS" for v, _ in di_run["conditions"].values())


def test_round_trip(di_run):
    again = envcert.verify(di_run["certificate"], DI)
    assert again["verdict"] == "PASS"
    cert = json.loads(di_run["certificate"])
    assert cert["problem_hash"] == envcert.problem_hash(DI)


def test_tampering_is_caught(di_run):
    cert = json.loads(di_run["certificate"])
    cert["taylor_model"]["I"][1]["b"] = {"lo": "-1/100000000", "hi": "1/100000000"}
    assert envcert.verify(json.dumps(cert), DI)["verdict"] == "FAIL"
    with pytest.raises(envcert.Mismatch):
        envcert.verify(di_run["certificate"], JET)
    cert = json.loads(di_run["certificate"])
    cert["extra"] = 1
    with pytest.raises(envcert.Malformed):
        envcert.verify(json.dumps(cert), DI)


def test_robust_disturbance_fails():
    assert envcert.certify(DI, ["disturbance=robust"])["conditions"]["invariance"][0] == "FAIL"


def test_contains():
    assert envcert.contains([0, 0], [["1/2", 0], [0, "1/2"]], [0, 0], [[1, 0], [0, 1]])[0] == "PASS"
    assert envcert.contains([0, 0], [[2, 0], [0, 2]], [0, 0], [[1, 0], [0, 1]])[0] == "FAIL"
    with pytest.raises(envcert.Error):
        envcert.contains([0], [[1]], [0, 0], [[1, 0], [0, 1]])


def test_errors():
    with pytest.raises(envcert.Error):
        envcert.certify(str(PROBLEMS / "missing.json"))
    with pytest.raises(envcert.Error):
        envcert.certify(DI, ["colour=blue"])
