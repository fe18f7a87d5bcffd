"""Smoke test for the qmat extension module.

Build and install first:  pip install -e crates/py --no-build-isolation
"""

import json
import pathlib
import sys

import qmat

ROOT = pathlib.Path(__file__).resolve().parent.parent


def check(cond, what):
    if not cond:
        sys.exit(f"FAIL {what}")
    print(f"ok   {what}")


def main():
    c = qmat.Calculus(1, 1)
    check(c.nf("dt[1,1] t[1,1]") == "(q^-2) t[1,1] dt[1,1]", "(1,1) rewrite rule")
    check(c.d("t[1,1]^2") == "(1 + q^-2) t[1,1] dt[1,1]", "d(t^2)")
    rows = qmat.Calculus(1, 2).flatness(3)
    check(all(r[2] == r[3] == r[4] for r in rows), "(1,2) flatness through degree 3")

    h = qmat.HiddenAction(1, 1)
    check(h.table()["actions"]["K_1"]["t[1,1]"] == "(q^-2) t[1,1]", "K_1 . t")
    check(h.act("E_1 F_1 - F_1 E_1", "t[1,1]") == h.act("(q - q^-1)^-1 (K_1 - Ki_1)", "t[1,1]"),
          "[E_1, F_1] acts as (K - K^-1)/(q - q^-1)")
    check(h.verify(3)["status"] == "pass", "module-algebra suite (1,1)")
    check(h.specialize("1/3", 2)["status"] == "pass", "specialized suite at q0 = 1/3")
    try:
        h.specialize("1", 2)
        check(False, "q0 = 1 rejected")
    except ValueError:
        check(True, "q0 = 1 rejected")

    check(qmat.rhat(4)["status"] == "pass", "R-matrix identities N = 4")
    check(qmat.minor(2, [1, 2]) == "u[1,1] u[2,2] + (-q) u[1,2] u[2,1]", "x(1,2)")
    check(qmat.pair(2, "u[1,2]", "E_1") == "1", "<u12, E_1>")

    code, out, _ = qmat.run_cli(["verify", "--suite", "grading", "--m", "1", "--n", "2", "--json"])
    report = json.loads(out)
    check(code == 0 and report["status"] == "pass", "CLI grading suite")
    try:
        import jsonschema
    except ImportError:
        print("skip report schema (jsonschema not installed)")
    else:
        schema = json.loads((ROOT / "schema" / "report.schema.json").read_text())
        jsonschema.validate(report, schema)
        check(True, "report validates against the schema")
    print("smoke test passed")


if __name__ == "__main__":
    main()
