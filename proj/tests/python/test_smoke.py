import json
import os
import subprocess

import pytest

import splitcurve as sc

K4 = {"genus_labels": [0, 0, 0, 0], "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}


def test_enumeration_counts():
    assert [len(sc.enumerate_stable_graphs(g)) for g in (2, 3, 4)] == [7, 42, 379]


def test_polygonal_curve():
    assert sc.exponent_set(K4) == {2, 3}
    assert sc.multiplicity_set(json.dumps(K4)) == {4}
    assert sc.classify(K4) == "polygonal"
    assert len(sc.admissible_sets(K4)) == 8
    assert sc.degree_sums(K4) == (28, 64)


def test_canonical_key_ignores_labels():
    relabelled = {"genus_labels": [0, 0, 0, 0], "edges": [[3, 2], [3, 1], [3, 0], [2, 1], [2, 0], [1, 0]]}
    assert sc.canonical_key(K4) == sc.canonical_key(relabelled)


def test_split_sets_and_order():
    assert sc.split_exponent_set(5) == {0, 2, 4, 5}
    assert sc.dominates([1, 2, 4], [1, 4])
    assert not sc.dominates([1, 4], [1, 2, 4])


def test_git():
    assert sc.mu_closed_form("b", 4, 0) == 8
    assert sc.mu_closed_form("combined", 5, 1, base="a") > 0
    assert all(sc.is_git_stable(k, g) for k in "abc" for g in range(4, 9))


def test_theta_and_distance():
    a = sc.theta_hat(4, 1)
    assert a["degree"] == 120
    assert len(a["entries"]) == 30
    assert sc.configuration_distance(a, a) < 1e-12
    assert sc.configuration_distance(a, sc.theta_hat(4, 2)) > 1e-3


def test_certificate():
    c = sc.vanishing_certificate(4)
    assert c["twisted_splitting"] == [-5, -5]
    assert c["valid"]


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        sc.exponent_set({"genus_labels": [0], "edges": [[0, 0]]})
    with pytest.raises(ValueError):
        sc.exponent_set("{broken")
    with pytest.raises(sc.InputError):
        sc.enumerate_stable_graphs(1)


def test_run_cli_in_process():
    code, out, err = sc.run_cli("dominates", "--l", "1,4", "--m", "1,2,4")
    assert (code, out) == (0, "false\n")
    code, out, err = sc.run_cli("enumerate", "--g", "x")
    assert code == 2
    assert json.loads(err)["error"] == "input"


@pytest.mark.skipif("SPLITCURVE_CLI" not in os.environ, reason="CLI binary not provided")
def test_cli_binary_matches_module():
    exe = os.environ["SPLITCURVE_CLI"]
    p = subprocess.run([exe, "git-check", "--g", "4..6", "--kind", "c"], capture_output=True, text=True)
    assert p.returncode == 0
    assert p.stdout == sc.run_cli("git-check", "--g", "4..6", "--kind", "c")[1]
