import json

import jsonschema
import pytest

from heisrat.cli import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, load_schema, main, run


def structured(*args):
    code, text = run([*args, "--format", "structured"])
    doc = json.loads(text)
    jsonschema.validate(doc, load_schema())
    return code, doc


def statuses(doc):
    return {r["name"]: r["status"] for r in doc["results"]}


def test_group_check_n3():
    code, doc = structured("group-check", "--n", "3")
    assert code == EXIT_OK and doc["verdict"] == "pass"
    assert doc["results"][0]["witness"]["order"] == 27


def test_group_check_n1():
    code, doc = structured("group-check", "--n", "1")
    assert code == EXIT_OK


def test_group_check_n8_reports_repeated_spectra():
    code, doc = structured("group-check", "--n", "8")
    st = statuses(doc)
    assert st["group_order"] == st["center_order"] == st["homomorphism"] == "pass"
    assert st["simple_spectrum"] == "fail" and code == EXIT_FAIL


def test_group_check_cap_is_inconclusive():
    code, doc = structured("group-check", "--n", "9", "--budget", "small")
    assert code == EXIT_INCONCLUSIVE and doc["verdict"] == "inconclusive"


def test_invariants():
    for n in ("2", "3", "5"):
        code, doc = structured("invariants", "--n", n)
        assert code == EXIT_OK and set(statuses(doc).values()) == {"pass"}


def test_molien():
    code, doc = structured("molien", "--n", "3", "--max-deg", "9")
    assert doc["results"][0]["witness"][:4] == [1, 0, 0, 2] and code == EXIT_OK
    code, doc = structured("molien", "--n", "2", "--max-deg", "0")
    assert doc["results"][0]["witness"] == [1]


def test_bpf():
    assert structured("bpf", "--n", "3")[0] == EXIT_OK
    assert structured("bpf", "--n", "2")[0] == EXIT_OK
    code, doc = structured("bpf", "--n", "6", "--budget", "small")
    assert code == EXIT_INCONCLUSIVE and doc["verdict"] == "inconclusive"


def test_rationalize():
    code, doc = structured("rationalize", "--n", "5")
    assert code == EXIT_OK and doc["certificate"]["verdict"] == "AllVerifiedOrCited"
    code, doc = structured("rationalize", "--n", "2")
    assert doc["results"][0]["name"] == "trivial_case" and doc["results"][0]["status"] == "cited"
    code, doc = structured("rationalize", "--n", "4")
    assert [r["witness"] for r in doc["results"] if r["status"] == "cited"] == [
        "chu-kang Thm 4.1", "chu-kang p. 687", "fis"]


def test_hesse():
    code, doc = structured("hesse")
    assert code == EXIT_OK
    orbits = next(r["witness"] for r in doc["results"] if r["name"] == "orbits")
    assert orbits == [{"size": 3, "stabilizer_order": 3}] * 4


def test_parse_eval():
    code, doc = structured("parse-eval", "--n", "3", "x0*x1*x2")
    res = {r["name"]: r["witness"] for r in doc["results"]}
    assert res["character"] == [0, 0] and res["homogeneous"]["degree"] == 3
    code, doc = structured("parse-eval", "--n", "3", "x0^-1*x1", "--action", "eta")
    assert doc["results"][-1]["witness"] == "x1^-1*x2"
    code, doc = structured("parse-eval", "--n", "3", "x0", "--action", "1:0:0")
    assert doc["results"][-1]["witness"] == "x0"


def test_usage_errors(capsys):
    assert run(["parse-eval", "--n", "3", "x0 + * x1"])[0] == EXIT_USAGE
    assert run(["group-check", "--n", "0"])[0] == EXIT_USAGE
    assert run(["group-check", "--n", "3", "--budget", "lots"])[0] == EXIT_USAGE
    assert run(["bogus"])[0] == EXIT_USAGE
    assert run(["molien"])[0] == EXIT_USAGE
    assert run(["group-check", "--n", "3", "--unknown"])[0] == EXIT_USAGE
    assert main(["parse-eval", "--n", "2", "x0^"]) == EXIT_USAGE
    assert "position 3" in capsys.readouterr().err


def test_determinism_and_timestamps():
    a = run(["rationalize", "--n", "4", "--format", "structured"])[1]
    b = run(["rationalize", "--n", "4", "--format", "structured"])[1]
    assert a == b and "timing" not in json.loads(a)
    c = json.loads(run(["bpf", "--n", "3", "--format", "structured", "--timestamps"])[1])
    assert "generated_at" in c["timing"] and "x0" in c["timing"]


def test_human_output_and_out_file(tmp_path):
    code, text = run(["molien", "--n", "2", "--max-deg", "4"])
    assert text.splitlines()[-1] == "verdict: pass"
    out = tmp_path / "r.json"
    code, text = run(["bpf", "--n", "2", "--format", "structured", "--out", str(out)])
    assert text == "" and json.loads(out.read_text())["verdict"] == "pass"


@pytest.mark.parametrize("bad", [{"version": 2}, {"verdict": "maybe"}])
def test_schema_rejects(bad):
    doc = structured("molien", "--n", "2", "--max-deg", "2")[1]
    doc.update(bad)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, load_schema())
