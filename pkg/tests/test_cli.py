import json

import pytest

from charloc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_char_finite_adjoint(capsys):
    code, out, _ = run(capsys, "--format", "json", "char", "finite", "--datum", "a2", "--lambda", "1,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["dimension"] == 8
    assert sum(t["c"] for t in doc["restriction"]["terms"]) == 8
    assert len(doc["restriction"]["terms"]) == 7


def test_char_finite_text_table(capsys):
    code, out, _ = run(capsys, "char", "finite", "--datum", "a2", "--lambda", "1,1")
    assert code == 0 and "7 weights, 8 with multiplicity" in out


def test_blattner_comb(capsys):
    code, out, _ = run(capsys, "--format", "json", "sl2", "blattner", "--k", "3", "--box", "41")
    assert code == 0
    assert [t["w2"][0] for t in json.loads(out)["terms"]] == list(range(3, 42, 2))


def test_kernel_window_zero(capsys):
    code, out, _ = run(capsys, "kernel", "window", "--n", "2", "--box", "30")
    assert code == 0 and out.startswith("verdict: zero")


def test_kernel_y_dump(capsys):
    code, out, _ = run(capsys, "kernel", "y", "--n", "1", "--box", "3")
    assert code == 0
    assert out.splitlines()[-1].split() == ["1", "0", "1", "0", "1", "0", "1"]


def test_kernel_relation_exit_codes(capsys):
    assert run(capsys, "sl2", "kernel-relation", "--box", "40")[0] == 2
    assert run(capsys, "sl2", "kernel-relation", "--box", "40", "--sign", "1")[0] == 0
    assert run(capsys, "sl2", "kernel-relation", "--box", "2")[0] == 1


def test_tensor_outputs(capsys):
    code, out, _ = run(capsys, "--format", "json", "sl2", "tensor", "--a", "D3", "--b", "D-2")
    assert code == 0 and json.loads(out)["decomposable"] is False
    code, out, _ = run(capsys, "sl2", "tensor", "--a", "D5", "--b", "F2")
    assert out.strip() == "D+5 x F2 = D+7 + D+5 + D+3"


def test_usage_errors(capsys):
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "char", "finite", "--datum", "a2")[0] == 1
    assert run(capsys, "char", "finite", "--datum", "nowhere", "--lambda", "1,0")[0] == 1
    assert run(capsys, "char", "finite", "--datum", "a2", "--lambda=-1,0")[0] == 1
    assert run(capsys, "kernel", "window", "--n", "0")[0] == 1


def test_malformed_json_is_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "char", "finite", "--datum", str(bad), "--lambda", "1")[0] == 1
    assert run(capsys, "regularity", "s", "--config", str(bad))[0] == 1


def test_regularity_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"datum": "sl2", "betas": [[1]], "lambda": [0]}))
    code, out, _ = run(capsys, "--format", "json", "regularity", "s", "--config", str(cfg))
    assert code == 0
    doc = json.loads(out)
    assert doc["holds"] is False and doc["witness"]["n"] == [0]
    code, out, _ = run(capsys, "--format", "json", "regularity", "sprime", "--config", str(cfg))
    assert json.loads(out)["condition"] == "S'"


def test_env_default_box(capsys, monkeypatch):
    monkeypatch.setenv("CHARLOC_BOX_DEFAULT", "9")
    code, out, _ = run(capsys, "--format", "json", "sl2", "blattner", "--k", "1")
    assert json.loads(out)["box"] == 9
    monkeypatch.setenv("CHARLOC_BOX_DEFAULT", "x")
    assert run(capsys, "sl2", "blattner", "--k", "1")[0] == 1


def test_output_is_bit_identical(capsys):
    args = ("--format", "json", "kernel", "window", "--n", "1,1", "--box", "8", "--trials", "5", "--seed", "2")
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first


@pytest.mark.parametrize("group", ["char", "kernel", "regularity"])
def test_selftests_pass(capsys, group):
    assert run(capsys, group, "--selftest")[0] == 0


def test_sl2_selftest(capsys):
    code, out, _ = run(capsys, "sl2", "--selftest")
    assert code == 0 and "[D1]+[D-1]" in out


def test_leaf_selftest(capsys):
    assert run(capsys, "char", "finite", "--selftest")[0] == 0
