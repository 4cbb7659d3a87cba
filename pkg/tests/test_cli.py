import json

from meadows.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, "--json", *argv)
    return code, json.loads(out), err


def test_eval_division_by_zero(capsys):
    code, out, _ = invoke(capsys, "eval", "--model", "q0", "1/0")
    assert (code, out) == (0, "0")


def test_eval_rational_output_format(capsys):
    code, out, _ = invoke(capsys, "eval", "--assign", "x=2/3,y=0", "x + y")
    assert (code, out) == (0, "2/3")
    code, out, _ = invoke(capsys, "eval", "--assign", "x=-1/2", "x + x")
    assert (code, out) == (0, "-1")
    code, out, _ = invoke(capsys, "eval", "--model", "zp:5", "--assign", "x=3", "inv(x)")
    assert (code, out) == (0, "2")


def test_eval_signature_flag(capsys):
    code, _, err = invoke(capsys, "eval", "--sig", "imd", "x / y")
    assert code == 2 and "/" in err


def test_peval_verdicts(capsys):
    code, out, _ = invoke(capsys, "peval", "--variant", "div0", "--model", "q0", "1/0")
    assert (code, out) == (1, "undefined")
    code, out, _ = invoke(capsys, "peval", "--variant", "div0lib", "0/0")
    assert (code, out) == (0, "0")
    code, payload, _ = invoke_json(capsys, "peval", "--variant", "inv0", "inv(0)")
    assert code == 1 and payload == {"command": "peval", "status": "undefined"}
    code, payload, _ = invoke_json(capsys, "peval", "--variant", "inv0", "inv(2)")
    assert payload == {"command": "peval", "status": "defined", "value": "1/2"}


def test_project_round(capsys):
    code, out, _ = invoke(capsys, "project", "--to", "imn", "x/y")
    assert (code, out) == (0, "x * y^-1")
    code, out, _ = invoke(capsys, "project", "--to", "dmn", "x^-1")
    assert (code, out) == (0, "1 / x")
    code, out, _ = invoke(capsys, "project", "--to", "rdmn", "0")
    assert (code, out) == (0, "1 - 1")


def test_normalize(capsys):
    code, out, _ = invoke(capsys, "normalize", "--sig", "iamd", "4 * 6^-1")
    assert (code, out) == (0, "2/3")
    code, out, _ = invoke(capsys, "normalize", "--sig", "iamdz", "inv(0)")
    assert (code, out) == (0, "0")
    code, _, err = invoke(capsys, "normalize", "--sig", "iamd", "x + 1")
    assert code == 2 and "closed" in err


def test_decide_json_verdicts(capsys):
    code, out, _ = invoke(capsys, "decide", "--theory", "iamd", "x * x^-1", "1")
    payload = json.loads(out)
    assert code == 0
    assert payload["verdict"] == "true"
    assert payload["witness"]["left"] == "(x) / (x)"
    code, out, _ = invoke(capsys, "decide", "--theory", "iamd", "x", "x + x")
    assert code == 1 and json.loads(out)["verdict"] == "false"
    code, out, _ = invoke(
        capsys, "decide", "--theory", "damdz-gil", "0/0", "0"
    )
    assert code == 0 and json.loads(out)["verdict"] == "true"


def test_decide_refuses_open_problem_theory(capsys):
    code, _, err = invoke(capsys, "decide", "--theory", "iamdz", "x", "1")
    assert code == 2 and "open problem" in err


def test_truth_fixtures(capsys):
    code, out, _ = invoke(
        capsys, "truth", "--eq", "strong", "--variant", "div0", "1/0 = 1/0 + 1"
    )
    assert (code, out) == (0, "T")
    code, out, _ = invoke(
        capsys, "truth", "--eq", "exist", "--variant", "div0", "1/0 = 1/0"
    )
    assert (code, out) == (1, "F")
    code, out, _ = invoke(capsys, "truth", "--logic", "lpmd", "forall x. x/x = 1")
    assert (code, out) == (1, "U")
    code, out, _ = invoke(
        capsys, "truth", "--logic", "lpmd", "forall x. (x != 0 -> x/x = 1)"
    )
    assert (code, out) == (0, "T")
    code, out, _ = invoke(
        capsys, "truth", "--conn", "kleene", "--variant", "div0",
        "0/0 = 1 | 0 = 0",
    )
    assert (code, out) == (0, "T")


def test_truth_domain_flag_and_env(capsys, monkeypatch):
    code, out, _ = invoke(
        capsys, "truth", "--quant", "kleene", "--domain", "1,2", "forall x. x/x = 1"
    )
    assert (code, out) == (0, "T")
    monkeypatch.setenv("MEADOW_DEFAULT_DOMAIN", "1,2")
    code, out, _ = invoke(capsys, "truth", "--quant", "kleene", "forall x. x/x = 1")
    assert (code, out) == (0, "T")
    monkeypatch.delenv("MEADOW_DEFAULT_DOMAIN")
    code, out, _ = invoke(capsys, "truth", "--quant", "kleene", "forall x. x/x = 1")
    assert (code, out) == (1, "U")


def test_truth_finite_model(capsys):
    code, out, _ = invoke(
        capsys, "truth", "--variant", "inv0", "--model", "zp:3",
        "--domain", "0,1,2", "forall x. (x != 0 -> x * inv(x) = 1)",
    )
    assert (code, out) == (0, "T")


def test_classify(capsys):
    code, out, _ = invoke(capsys, "classify", "1 + x")
    assert (code, out) == (1, "Neither")
    code, out, _ = invoke(capsys, "classify", "--mode", "literal", "1 + x")
    assert (code, out) == (0, "InNz")
    code, out, _ = invoke(capsys, "classify", "--vars-defined", "1 + x")
    assert (code, out) == (0, "InNz")
    code, out, _ = invoke(capsys, "classify", "0")
    assert (code, out) == (0, "InDef")


def test_comply(capsys):
    code, out, _ = invoke(capsys, "comply", "--convention", "div0", "1/0")
    assert code == 1 and "Violation" in out
    code, payload, _ = invoke_json(capsys, "comply", "--convention", "div0", "1/0")
    assert payload["verdict"] == "Violation"
    assert payload["witness"] == {"subterm": "1 / 0", "detail": "denominator 0"}
    code, out, _ = invoke(capsys, "comply", "--convention", "div0lib", "0/0")
    assert (code, out) == (0, "Compliant")
    code, out, _ = invoke(capsys, "comply", "--open", "inv(1 + 1)")
    assert (code, out) == (0, "CertifiedCompliant")
    code, out, _ = invoke(capsys, "comply", "--open", "inv(x)")
    assert (code, out) == (1, "Unknown")


def test_check_model(capsys):
    code, out, _ = invoke(capsys, "check-model", "--zp", "7", "--axioms", "imd")
    assert code == 0 and "ok" in out
    code, out, _ = invoke(capsys, "check-model", "--zn", "6", "--axioms", "imd")
    assert code == 0
    code, _, err = invoke(capsys, "check-model", "--zn", "4", "--axioms", "imd")
    assert code == 2 and "not regular" in err.lower() or "regular" in err


def test_witness(capsys):
    code, out, _ = invoke(capsys, "witness", "--prime", "7")
    assert (code, out) == (0, "2^2 + 3^2 + 1 = 2 * 7")
    code, payload, _ = invoke_json(capsys, "witness", "--prime", "7", "--residue", "3")
    assert payload["value"] == {"prime": 7, "residue": 3, "v": 1, "w": 3}
    code, _, err = invoke(capsys, "witness", "--prime", "6")
    assert code == 2


def test_spec_show_and_flatten(capsys):
    code, payload, _ = invoke_json(capsys, "spec", "--show", "imd")
    assert code == 0
    assert len(payload["value"]["axioms"]) == 10
    assert payload["value"]["hidden"] == []
    code, payload, _ = invoke_json(
        capsys, "spec", "--flatten", "hide(inv, combine(imd, divdef))"
    )
    assert payload["value"]["hidden"] == ["^-1/1"]
    assert len(payload["value"]["axioms"]) == 11
    code, out, _ = invoke(capsys, "spec", "--show", "rd")
    assert "axioms (9):" in out


def test_parse_errors_exit_2(capsys):
    code, _, err = invoke(capsys, "eval", "x +")
    assert code == 2 and "error" in err
    code, _, err = invoke(capsys, "eval", "--model", "zq:3", "1")
    assert code == 2
    code, _, err = invoke(capsys, "truth", "x = ")
    assert code == 2


def test_usage_error_exit_2(capsys):
    assert run(["no-such-command"]) == 2
    capsys.readouterr()


def test_json_determinism(capsys):
    first = invoke_json(capsys, "decide", "--theory", "iamd", "x * y", "y * x")
    second = invoke_json(capsys, "decide", "--theory", "iamd", "x * y", "y * x")
    assert first == second
