"""Scripted CLI invocations with their expected exit codes.

Run ``python3 tests/cli_cases.py`` to rewrite the golden files after an
intentional output change.
"""

import io
import json
import pathlib
import sys

GOLDEN = pathlib.Path(__file__).with_name("golden")

CURVE5 = {"p": 5, "precision": 12, "a": [0, 0, 0, 1, 1]}
# exp of z = 5 on y^2 = x^3 + x + 1, and phi(10) on the Tate curve with q = 125
E1_POINT = ["5^-2 * (1 + 4*5^3 + 4*5^4 + 4*5^5 + 3*5^6 + 4*5^7 + 2*5^9 + 4*5^10 + 1*5^11)",
            "5^-3 * (4 + 4*5 + 4*5^2 + 3*5^3 + 4*5^4 + 4*5^5 + 4*5^6 + 2*5^7 + 3*5^8 + 1*5^9 + 4*5^11)"]
TATE_POINT = ["5^1 * (2 + 1*5 + 1*5^2 + 1*5^3 + 2*5^4 + 1*5^5 + 1*5^6 + 2*5^7 + 2*5^8 + 4*5^9)",
              "5^2 * (1 + 3*5 + 1*5^2 + 3*5^3 + 2*5^4 + 1*5^5 + 4*5^7)"]
FORMULA = "exists y. x = 2*y and 0 < x and x < 10"

CASES = [
    ("padic_eval", ["padic", "eval", "--p", "5", "--prec", "10", "1/3"], 0),
    ("padic_class", ["padic", "class", "--p", "7", "--prec", "10", "--n", "2", "--", "-3*49"], 0),
    ("presburger_parse", ["presburger", "parse", "exists y. (x = 3*y + 1 or x < -4) and not x = 7"], 0),
    ("presburger_decompose", ["presburger", "decompose", FORMULA], 0),
    ("presburger_subgroup", ["presburger", "subgroup", "exists y. x = 6*y or x = 6*y"], 0),
    ("presburger_not_subgroup", ["presburger", "subgroup", '[{"lo": 0, "hi": "+inf", "mod": 2, "res": 0}]'], 0),
    ("group_check", ["group", "check", "--p", "5", "--prec", "10",
                     json.dumps({"group": {"family": "Ualpha", "alpha": 1}, "element": "26"})], 0),
    ("group_op", ["group", "op", "--p", "5", "--prec", "10",
                  json.dumps({"group": {"family": "LatticeQuotient", "a": "125"},
                              "elements": ["25", "10", "3"]})], 0),
    ("group_index", ["group", "index", "--p", "7", "--prec", "10",
                     json.dumps({"group": {"family": "TorusFalpha", "alpha": 1, "d": "3"},
                                 "alpha": 1, "beta": 3})], 0),
    ("group_split", ["group", "split", json.dumps({"orders": [2, 4], "subgroup": [[0, 2]]})], 0),
    ("curve_invariants", ["curve", "invariants", json.dumps(CURVE5)], 0),
    ("curve_add", ["curve", "add", json.dumps({"p": 5, "precision": 12, "a": [0, 0, 0, 0, 1],
                                               "P": ["2", "3"], "Q": ["0", "1"]})], 0),
    ("curve_transform", ["curve", "transform", json.dumps(dict(CURVE5, u="1/5", r=1, s=2, t=3,
                                                              P=["0", "1"]))], 0),
    ("curve_minimal", ["curve", "minimal", json.dumps({"p": 5, "precision": 12,
                                                       "a": [0, 0, 0, 625, 15625]})], 0),
    ("curve_classify", ["curve", "classify", json.dumps(CURVE5)], 0),
    ("curve_filtration", ["curve", "filtration", json.dumps(dict(CURVE5, P=["0", "1"]))], 0),
    ("curve_reduce", ["curve", "reduce", json.dumps(dict(CURVE5, P=["0", "-1"]))], 0),
    ("iso_exp", ["iso", "exp", "--p", "5", "--prec", "10", "5"], 0),
    ("iso_log_base", ["iso", "log", "--p", "5", "--prec", "10", "--base", "7776"], 0),
    ("iso_elog", ["iso", "elog", json.dumps(dict(CURVE5, P=E1_POINT))], 0),
    ("iso_eexp", ["iso", "eexp", json.dumps(dict(CURVE5, z="5"))], 0),
    ("iso_tlog", ["iso", "tlog", "--p", "7", "--prec", "10", "--d", "3", "--", "-74/73", "-7/73"], 0),
    ("tate_coeffs", ["tate", "coeffs", "--p", "5", "--prec", "10", "--q", "125"], 0),
    ("tate_uniformize", ["tate", "uniformize", "--p", "5", "--prec", "10", "--q", "125", "--u", "10"], 0),
    ("tate_coset", ["tate", "coset", "--p", "5", "--prec", "10", "--q", "125", "--point", json.dumps(TATE_POINT)], 0),
    ("tate_coset_identity", ["tate", "coset", "--p", "5", "--prec", "10", "--q", "125", "--point", '"O"'], 0),
    ("catalog_list", ["catalog", "list", "--p", "5", "--pretty"], 0),
    ("error_domain", ["iso", "exp", "--p", "5", "--prec", "10", "3"], 1),
    ("error_usage", ["group", "op", "--p", "5", "not json"], 2),
]


def run(argv):
    from qpgroups.cli import main
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def golden_text(argv):
    code, out, err = run(argv)
    return code, out if code == 0 else err


def regenerate():
    GOLDEN.mkdir(exist_ok=True)
    for name, argv, _ in CASES:
        code, text = golden_text(argv)
        (GOLDEN / f"{name}.json").write_text(text, encoding="utf-8")
        print(code, name, text[:150].rstrip())


if __name__ == "__main__":
    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))
    regenerate()
