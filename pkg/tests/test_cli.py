"""Command-line surface: frozen outputs, exit codes, determinism, round-trips."""

import json

import pytest

from qschub import checks
from qschub.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


# ---------------------------------------------------------------------------
# frozen example outputs


def test_minq_gr24_top_pair(capsys):
    code, out = run(capsys, "minq", "gr", "2", "4", "--u", "2,2", "--v", "2,2")
    assert code == 0
    assert out == (
        "# command: minq\n"
        "# instance: gr 2 4\n"
        "# u: sigma[22]\n"
        "# v: sigma[22]\n"
        "frontier: q^2\n"
        "chain[q^2]: sigma[22] --(a1+a2+a3 | q^1)-- sigma[1] --(a2 | q^1)-- sigma[0]\n"
    )


def test_minq_golden_instance(capsys):
    code, out = run(capsys, "minq", "gr", "4", "9", "--u", "5,4,4,3", "--v", "5,4,4,1")
    assert code == 0
    assert "frontier: q^2\n" in out


def test_minq_identity_below_everything(capsys):
    code, out = run(capsys, "minq", "A2", "flag", "--u", "e", "--v", "s1*s2*s1")
    assert code == 0
    assert "frontier: q^0\n" in out
    assert "chain[q^0]: sigma[e]\n" in out


def test_product_a1_quantum_point(capsys):
    code, out = run(capsys, "product", "A1", "flag", "--u", "s1", "--v", "s1")
    assert code == 0
    assert out.endswith("q1 * sigma[e]\n")
    assert "# engine: divisor\n" in out


def test_product_rimhook_classical_part(capsys):
    code, out = run(
        capsys, "product", "gr", "2", "4", "--u", "1", "--v", "1", "--engine", "rimhook"
    )
    assert code == 0
    body = [l for l in out.splitlines() if not l.startswith("#")]
    assert body == ["sigma[2]", "sigma[11]"]


def test_product_golden_expansion(capsys):
    code, out = run(capsys, "product", "gr", "4", "9", "--u", "5,4,4,3", "--v", "5,4,4,1")
    assert code == 0
    body = [l for l in out.splitlines() if not l.startswith("#")]
    assert body == [
        "q^2 * sigma[5421]",
        "q^2 * sigma[5331]",
        "q^2 * sigma[5322]",
        "q^3 * sigma[3]",
        "2 * q^3 * sigma[21]",
        "q^3 * sigma[111]",
    ]


def test_graph_counts(capsys):
    code, out = run(capsys, "graph", "A1", "flag", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["nodes"]) == 2
    assert len(payload["edges"]) == 1

    code, out = run(capsys, "graph", "gr", "2", "4", "--format", "json")
    payload = json.loads(out)
    assert (len(payload["nodes"]), len(payload["edges"])) == (6, 12)

    code, out = run(capsys, "graph", "gr", "2", "5", "--format", "json")
    payload = json.loads(out)
    assert (len(payload["nodes"]), len(payload["edges"])) == (10, 30)


def test_graph_dot_format(capsys):
    code, out = run(capsys, "graph", "A1", "flag", "--format", "dot")
    assert code == 0
    assert out.startswith("graph")
    assert "--" in out


# ---------------------------------------------------------------------------
# engines


def test_engine_auto_matches_explicit(capsys):
    _, auto = run(capsys, "product", "A2", "flag", "--u", "s1", "--v", "s2")
    _, explicit = run(capsys, "product", "A2", "flag", "--u", "s1", "--v", "s2",
                      "--engine", "divisor")
    assert auto == explicit
    assert "# engine: divisor" in auto


def test_engine_chevalley_matches_divisor(capsys):
    _, a = run(capsys, "product", "A2", "flag", "--u", "s1", "--v", "s1*s2",
               "--engine", "chevalley")
    _, b = run(capsys, "product", "A2", "flag", "--u", "s1", "--v", "s1*s2",
               "--engine", "divisor")
    assert [l for l in a.splitlines() if not l.startswith("#")] == [
        l for l in b.splitlines() if not l.startswith("#")
    ]


def test_engine_mismatch_is_usage_error(capsys):
    code = main(["product", "gr", "2", "4", "--u", "1", "--v", "1", "--engine", "divisor"])
    assert code == 1
    code = main(["product", "A2", "flag", "--u", "s1", "--v", "s2", "--engine", "rimhook"])
    assert code == 1
    # chevalley requires a length-one class on the left
    code = main(["product", "A2", "flag", "--u", "s1*s2", "--v", "s1",
                 "--engine", "chevalley"])
    assert code == 1


# ---------------------------------------------------------------------------
# exit codes


def test_exit_code_usage_errors(capsys):
    assert main(["nonsense"]) == 1
    assert main(["minq", "gr", "2", "4", "--u", "9,9", "--v", "1"]) == 1
    assert main(["minq", "Z9", "flag", "--u", "e", "--v", "e"]) == 1
    assert main(["minq", "gr", "2", "4", "--v", "1"]) == 1  # --u missing
    assert main(["product", "A2", "flag", "--u", "s1", "--v", "s9"]) == 1


def test_exit_code_guard(capsys):
    assert main(["graph", "A3", "flag", "--max-group-order", "5"]) == 2
    assert main(["product", "B4", "flag", "--u", "s1", "--v", "s1"]) == 2


def test_exit_code_verify_failure(capsys, monkeypatch):
    # corrupt the golden anchor: the sweep must notice and exit 3
    monkeypatch.setattr(checks, "GOLDEN_GR49", {(2, (5, 3, 2, 2)): 999})
    code = main(["verify", "gr", "4", "9"])
    out = capsys.readouterr().out
    assert code == 3
    assert "FAIL" in out


def test_verify_single_instance(capsys):
    code, out = run(capsys, "verify", "A1")
    assert code == 0
    assert out.rstrip().splitlines()[-1].startswith("summary:")
    assert "0 failed" in out


def test_verify_json_shape(capsys):
    code, out = run(capsys, "verify", "A1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["checks_failed"] == 0
    assert payload["instances"][0]["instance"] == "A1"
    for row in payload["instances"][0]["checks"]:
        assert set(row) >= {"instance", "name", "passed", "checked"}


def test_verify_multiple_instances_split(capsys):
    code, out = run(capsys, "verify", "A1", "gr", "2", "4")
    assert code == 0
    assert "A1 ::" in out and "gr 2 4 ::" in out


# ---------------------------------------------------------------------------
# determinism, env, files


def test_byte_identical_reruns(capsys):
    args = ("product", "gr", "4", "9", "--u", "5,4,4,3", "--v", "5,4,4,1")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second

    args = ("verify", "gr", "2", "4", "--format", "json")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second


def test_format_env_default(capsys, monkeypatch):
    monkeypatch.setenv("QSCHUB_FORMAT", "json")
    code, out = run(capsys, "minq", "A1", "flag", "--u", "e", "--v", "s1")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "minq"
    # explicit flag still wins
    code, out = run(capsys, "minq", "A1", "flag", "--u", "e", "--v", "s1",
                    "--format", "text")
    assert out.startswith("# command: minq")


def test_out_file(tmp_path, capsys):
    target = tmp_path / "graph.json"
    code = main(["graph", "gr", "2", "4", "--format", "json", "--out", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    payload = json.loads(target.read_text())
    assert len(payload["nodes"]) == 6


def test_verify_jobs_parallel(capsys):
    code, out = run(capsys, "verify", "A1", "gr", "2", "4", "--jobs", "2")
    assert code == 0
    assert "0 failed" in out


# ---------------------------------------------------------------------------
# round-trips


def extract_labels(out):
    labels = []
    for line in out.splitlines():
        if line.startswith("#"):
            continue
        term = line.split("sigma[", 1)
        if len(term) == 2:
            labels.append(term[1].rstrip("]"))
    return labels


def test_printed_cosets_reparse(capsys):
    # every sigma printed by product output parses back as a valid --u
    _, out = run(capsys, "product", "gr", "2", "4", "--u", "2,1", "--v", "2,1")
    for label in extract_labels(out):
        code, echoed = run(capsys, "minq", "gr", "2", "4", "--u", label, "--v", "0")
        assert code == 0
        assert f"# u: sigma[{label}]" in echoed

    _, out = run(capsys, "product", "B2", "flag", "--u", "s1*s2", "--v", "s2*s1")
    for label in extract_labels(out):
        code, echoed = run(capsys, "minq", "B2", "flag", "--u", label, "--v", "e")
        assert code == 0
        assert f"# u: sigma[{label}]" in echoed


def test_minq_json_chain_structure(capsys):
    code, out = run(capsys, "minq", "gr", "2", "4", "--u", "2,2", "--v", "2,2",
                    "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["frontier"] == [[2]]
    (chain,) = payload["chains"]
    assert chain["degree"] == [2]
    assert len(chain["nodes"]) == len(chain["edges"]) + 1


def test_product_json_terms(capsys):
    code, out = run(capsys, "product", "A1", "flag", "--u", "s1", "--v", "s1",
                    "--format", "json")
    payload = json.loads(out)
    assert payload["engine"] == "divisor"
    assert payload["terms"] == [{"degree": [1], "label": "e", "coeff": 1}]
