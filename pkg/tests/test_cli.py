import io
import json

import pytest

from cobarkit.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, run
from cobarkit.simplicial import builtin_space, degenerate_vertex, simplicial_set, to_json


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_envelope_shape():
    code, out, _ = invoke("pi0-ring", "builtin:rp2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert list(doc) == ["tool", "version", "config", "results", "warnings"]
    assert doc["tool"] == "cobar-kit"
    assert doc["results"][0]["relations"][0]["monoid"] == "Â_a² = 1"


def test_pi0_table():
    code, out, _ = invoke("pi0-ring", "builtin:torus", "--format", "table")
    assert code == EXIT_OK
    assert "Â_c = Â_aÂ_b" in out and "Â_c = Â_bÂ_a" in out
    _, out, _ = invoke("pi0-ring", "builtin:wedge-circles:2", "--format", "table")
    assert "free" in out


def test_check_passes():
    code, out, _ = invoke("check", "builtin:torus", "--max-degree", "3", "--max-length", "4")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert all(r["ok"] for r in doc["results"])
    assert doc["warnings"]
    code, _, _ = invoke("check", "builtin:sphere:3", "--max-degree", "6")
    assert code == EXIT_OK


def test_strict_promotes_warnings():
    code, _, _ = invoke("check", "builtin:torus", "--max-degree", "2", "--max-length", "3",
                        "--strict")
    assert code == EXIT_FAIL


def test_homology_models_agree_on_spheres():
    for model in ("cobar", "fsq", "rigid"):
        code, out, _ = invoke("homology", "builtin:sphere:2", "--model", model, "--max-degree", "3")
        assert code == EXIT_OK
        groups = json.loads(out)["results"][0]["homology"]
        assert [g["free_rank"] for g in groups] == [1, 1, 1, 1]
    code, out, _ = invoke("homology", "builtin:sphere:3", "--model", "fsq", "--max-degree", "6")
    assert [g["free_rank"] for g in json.loads(out)["results"][0]["homology"]] == [1, 0, 1, 0, 1, 0, 1]


def test_homology_wedge_count():
    code, out, _ = invoke("homology", "builtin:wedge-circles:2", "--max-degree", "2",
                          "--max-length", "4", "--format", "table")
    assert code == EXIT_OK
    assert "31" in out and "truncation" in out


def test_rigid_homology_reports_truncation_failure():
    code, out, _ = invoke("homology", "builtin:rp2", "--model", "rigid", "--max-degree", "1",
                          "--max-length", "3")
    assert code == EXIT_FAIL
    assert "error" in json.loads(out)["results"][0]


def test_compare_small():
    code, out, _ = invoke("compare", "builtin:wedge-circles:1", "--max-degree", "1",
                          "--max-length", "3")
    assert code == EXIT_OK
    summary = json.loads(out)["results"][-1]["summary"]
    assert all(v for k, v in summary.items() if k != "psi_product_relation")


def test_compare_rp2_skips_psi_with_warning():
    code, out, _ = invoke("compare", "builtin:rp2", "--max-degree", "2", "--max-length", "4")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["results"][0]["ok"]
    assert any("skipped" in w for w in doc["warnings"])


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code, _, err = invoke("check", str(bad))
    assert code == EXIT_INPUT and "invalid JSON" in err
    code, _, err = invoke("check", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT
    code, _, err = invoke("homology", "builtin:torus")
    assert code == EXIT_INPUT and "--max-length" in err
    code, _, _ = invoke("pi0-ring", "builtin:nothing")
    assert code == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        invoke("homology", "builtin:torus", "--max-length", "0")
    assert exc.value.code == EXIT_INPUT


def test_file_input_and_identity_failure(tmp_path):
    path = tmp_path / "torus.json"
    path.write_text(json.dumps(to_json(builtin_space("torus"))))
    code, _, _ = invoke("check", str(path), "--max-degree", "2", "--max-length", "3")
    assert code == EXIT_OK
    x = degenerate_vertex(0)
    broken = simplicial_set("broken", {1: [("a", [x, x]), ("b", [x, x])],
                                       2: [("t", ["a", "b", "a"])],
                                       3: [("w", ["t", "t", "t", degenerate_vertex(2)])]})
    path.write_text(json.dumps(to_json(broken)))
    code, out, _ = invoke("check", str(path), "--max-length", "2")
    assert code == EXIT_FAIL
    assert json.loads(out)["results"][0]["ok"] is False


def test_deterministic_output():
    args = ("compare", "builtin:torus", "--max-degree", "2", "--max-length", "3", "--seed", "4")
    assert invoke(*args)[1] == invoke(*args)[1]
