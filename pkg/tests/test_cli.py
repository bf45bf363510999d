"""Command line surface: schemas, exit codes, determinism, replay."""

import json
import subprocess
import sys

import pytest

BASE = [sys.executable, "-m", "cliffcomp.cli"]


def run_cli(*args, stdin=None):
    return subprocess.run(BASE + list(args), capture_output=True, text=True,
                          input=stdin, timeout=120)


def run_json(*args, stdin=None):
    p = run_cli(*args, stdin=stdin)
    assert p.returncode == 0, p.stderr
    return json.loads(p.stdout)


def test_invariants_form():
    out = run_json("invariants", "--object", '{"diag":["1","1","-1","1","-1"]}')
    assert out["n"] == 5
    assert out["degree_of_clifford"] == 4
    assert out["canonical_involution_type"] == "symplectic"
    assert out["clifford_class"]["trivial"] is True


def test_mcd_exact_value():
    out = run_json("mcd", "--object", '{"diag":["1","1","-1","1","-1"]}',
                   "--type", "symplectic", "--class", '[["-1","-1"]]')
    assert out["status"] == "exact"
    assert out["log2"] == 3
    assert out["value"] == 8


def test_mcd_defaults_to_trivial_class():
    out = run_json("mcd", "--object", '{"diag":["1","1","1"]}',
                   "--type", "symplectic")
    assert out["status"] == "exact" and out["value"] == 4


def test_mcd_gram_object_and_finite_field():
    out = run_json("mcd", "--field", "GF(2)",
                   "--object", '{"gram":[["1","1"],["0","1"]]}',
                   "--type", "unitary", "--s", '{"datum":"1"}')
    assert out["status"] == "exact" and out["value"] == 1


def test_mcd_quaternion_pair_object():
    out = run_json("mcd", "--object",
                   '{"quaternion_pair":[["-1","-1"],["2","5"]]}',
                   "--type", "symplectic")
    assert out["status"] == "exact" and out["value"] == 4
    assert out["profile"]["source"] == "pair"


def test_mcd_excluded_case_exits_3():
    p = run_cli("mcd", "--object", '{"diag":["1","-1","1","-1","1","-1"]}',
                "--type", "unitary", "--s", '{"datum":"2"}')
    assert p.returncode == 3
    err = json.loads(p.stderr)
    assert err["error"] == "not-covered"
    # the stdout payload still carries the diagnosis
    body = json.loads(p.stdout)
    assert body["status"] == "not-covered-by-paper"


@pytest.mark.parametrize(
    "args",
    [
        ("mcd", "--object", '{"bogus":1}', "--type", "symplectic"),
        ("mcd", "--object", '{"diag":["1","1"]}', "--type", "unitary"),
        ("mcd", "--object", 'not json', "--type", "symplectic"),
        ("mcd", "--field", "GF(9000)", "--object", '{"diag":["1","1"]}',
         "--type", "symplectic"),
        ("invariants", "--object", '{"diag":["1","0","1"]}'),
    ],
)
def test_invalid_inputs_exit_2(args):
    p = run_cli(*args)
    assert p.returncode == 2, (p.stdout, p.stderr)
    assert json.loads(p.stderr)["error"] == "invalid-input"


def test_bound_with_candidate_degree():
    out = run_json("bound", "--object", '{"diag":["1","1","1"]}',
                   "--type", "symplectic", "--class", '[["-1","-1"]]',
                   "--bound", "2")
    assert out["lower_bound"]["value"] == 2
    assert out["lower_bound"]["equality"] is True
    assert out["admissible"]["ok"] is True


def test_compose_emits_verified_witness():
    out = run_json("compose", "--object", '{"diag":["1","1","1"]}',
                   "--type", "symplectic", "--class", '[["-1","-1"]]')
    assert out["verified"] is True
    assert out["witness"]["degree"] == 2
    assert out["witness"]["expected"]["status"] == "exact"


def test_compose_deterministic_given_seed():
    args = ("compose", "--object", '{"diag":["1","1","1","1"]}',
            "--type", "symplectic", "--class", '[["-1","-1"]]',
            "--seed", "13")
    assert run_json(*args) == run_json(*args)


def test_verify_replays_compose_bundle():
    bundle = run_json("compose", "--object", '{"diag":["1","1","1"]}',
                      "--type", "unitary", "--s", '{"datum":"-1"}',
                      "--seed", "5")
    out = run_json("verify", stdin=json.dumps(bundle))
    assert out["verified"] is True
    assert out["degree"] == bundle["witness"]["degree"]


def test_verify_rejects_tampered_bundle():
    bundle = run_json("compose", "--object", '{"diag":["1","1","1"]}',
                      "--type", "symplectic", "--class", '[["-1","-1"]]')
    bundle["witness"]["degree"] = 16
    p = run_cli("verify", stdin=json.dumps(bundle))
    assert p.returncode == 4
    assert json.loads(p.stderr)["error"] == "certification-failure"


def test_example1_reports_both_compositions():
    p = run_cli("example1", "--a", "-1", "--b", "-1")
    assert p.returncode == 0
    assert p.stdout.count('"verified": true') == 2
    out = json.loads(p.stdout)
    assert out["degree"] == 4 and out["minimal_degree"] == 4
    assert all(out["checks"].values())


def test_example1_generic_parameters():
    out = run_json("example1", "--a", "2", "--b", "3")
    assert out["compositions"]["anti_hermitian"]["verified"] is True
    assert out["compositions"]["hermitian"]["verified"] is True


def test_example1_rejects_zero():
    assert run_cli("example1", "--a", "0", "--b", "1").returncode == 2


def test_selftest_passes():
    out = run_json("selftest")
    assert out["failed"] == 0
    assert out["passed"] >= 8
