import json
import os
import subprocess
import sys

import pytest

from cli_cases import CASES, GOLDEN, golden_text, run

SUBCOMMANDS = {
    "padic": {"eval", "class"},
    "presburger": {"parse", "decompose", "subgroup"},
    "group": {"check", "op", "index", "split"},
    "curve": {"invariants", "add", "transform", "minimal", "classify", "filtration", "reduce"},
    "iso": {"exp", "log", "elog", "eexp", "tlog"},
    "tate": {"coeffs", "uniformize", "coset"},
    "catalog": {"list"},
}


def test_cases_cover_every_subcommand():
    covered = {(argv[0], argv[1]) for _, argv, _ in CASES}
    expected = {(a, c) for a, cs in SUBCOMMANDS.items() for c in cs}
    assert expected <= covered
    assert len(CASES) >= 20


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code):
    got_code, text = golden_text(argv)
    assert got_code == code
    assert text == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")
    # byte-stable on a second run
    assert golden_text(argv) == (got_code, text)
    json.loads(text)


def test_catalog_has_eight_families():
    code, out, _ = run(["catalog", "list", "--p", "5"])
    items = json.loads(out)
    assert code == 0 and [i["item"] for i in items] == list(range(1, 9))


def test_decompose_stripe_cell():
    _, out, _ = run(["presburger", "decompose", "exists y. x = 2*y and 0 < x and x < 10"])
    assert json.loads(out) == [{"hi": 10, "lo": 0, "mod": 2, "res": 0}]


def test_input_file_and_pretty(tmp_path):
    f = tmp_path / "curve.json"
    f.write_text(json.dumps({"p": 5, "a": [0, 0, 0, 1, 1]}))
    code, out, _ = run(["curve", "classify", "--in", str(f), "--pretty"])
    assert code == 0 and out == '{\n  "type": "good"\n}\n'
    code, _, err = run(["curve", "classify", "--in", str(tmp_path / "missing.json")])
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_default_precision_from_environment(monkeypatch):
    monkeypatch.setenv("PADIC_DEFAULT_PREC", "4")
    _, out, _ = run(["padic", "eval", "--p", "5", "1/3"])
    assert json.loads(out)["value"] == "5^0 * (2 + 3*5 + 1*5^2 + 3*5^3)"


def test_usage_errors():
    assert run([])[0] == 2
    assert run(["padic"])[0] == 2
    assert run(["padic", "eval", "1"])[0] == 2          # no prime
    assert run(["catalog", "list"])[0] == 2


def test_domain_errors_have_codes():
    code, _, err = run(["curve", "invariants", json.dumps({"p": 5, "a": [0, 1, 0, 0, 0]})])
    assert code == 1 and json.loads(err)["error"] == "singular_equation"
    code, _, err = run(["presburger", "parse", "x < < 3"])
    assert code == 1 and "error" in json.loads(err)


def test_module_entry_point():
    env = dict(os.environ)
    src = os.path.join(os.path.dirname(__file__), os.pardir, "src")
    env["PYTHONPATH"] = os.pathsep.join([src, env.get("PYTHONPATH", "")])
    proc = subprocess.run([sys.executable, "-m", "qpgroups.cli", "curve", "classify",
                           json.dumps({"p": 5, "a": [0, 0, 0, 1, 1]})],
                          capture_output=True, text=True, env=env, check=False)
    assert proc.returncode == 0 and proc.stdout == '{"type":"good"}\n'
