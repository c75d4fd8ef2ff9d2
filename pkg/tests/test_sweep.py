import json
from fractions import Fraction as F

from taylormeans.functions import Power
from taylormeans.sweep import (conjecture_sweep, counterexample_report, nonreal_nodes_demo,
                               nonreal_nodes_report, reciprocal_closed_forms)


def test_section_closed_forms_reproduced():
    rep = conjecture_sweep([Power(-1)], [4, 5], [2, 4])
    assert all(chk["ok"] for chk in rep.summary["closed_form_checks"])
    r5 = next(c for c in rep.cases if c.r == 5 and c.b == 2).result
    assert r5.pairs[0][0] == 1.0 and not r5.inside[0] and r5.inside[1]
    assert abs(r5.pairs[1][0] - 9 / 7) < 1e-12
    assert r5.cj1 and not r5.cj2
    r4 = next(c for c in rep.cases if c.r == 4 and c.b == 4).result
    assert abs(r4.pairs[0][0] - 0.95125) < 1e-5 and not r4.inside[0] and r4.cj1
    assert abs(reciprocal_closed_forms(4, 1, 4)[0] - 0.9512520264296465) < 1e-15


def test_prop4_pairs_at_midpoint():
    for r in range(2, 7):
        rep = conjecture_sweep([Power(r + 1)], [r], [3])
        (case,) = rep.cases
        assert case.result.cj2
        assert all(abs(x - 2) < 1e-9 for x, _ in case.result.pairs)


def test_schema_and_determinism():
    a = conjecture_sweep([Power(5), Power(-1)], [3, 4, 5], [F(3, 2), 2], jobs=1)
    b = conjecture_sweep([Power(-1), Power(5)], [5, 4, 3], [2, F(3, 2)], jobs=2)
    assert a.to_json() == b.to_json() and a.to_csv() == b.to_csv()
    doc = json.loads(a.to_json())
    for case in doc["cases"]:
        assert set(case) >= {"spec", "r", "a", "b", "x0", "pairs", "inside", "cj1", "cj2", "residual"}
        assert len(case["pairs"]) == len(case["inside"])
        assert "error" in case or case["residual"] <= 1e-8
    assert any(case["b"] == "3/2" for case in doc["cases"])


def test_errors_are_markers():
    rep = conjecture_sweep([Power(2), Power(-1)], [3], [2])
    err = [c for c in rep.cases if c.error]
    assert len(err) == 1 and "ExcludedExponent" in err[0].error
    assert rep.summary["errors"] == 1 and rep.summary["cases"] == 2
    assert "error" in err[0].to_dict()


def test_csv_one_row_per_pair():
    rep = conjecture_sweep([Power(-1)], [1, 5], [2])
    lines = rep.to_csv().strip().splitlines()
    assert len(lines) == 1 + 1 + 2


def test_nonreal_nodes():
    roots = nonreal_nodes_demo()
    for z, e in zip(roots, [2 + 2j, 3 + 3j, 4 + 4j]):
        assert abs(z - e) <= 1e-9
    rep = nonreal_nodes_report()
    assert rep["match"] and rep["middle_root_is_mean"]
    assert rep["leading_coefficient"] == [-8.0, 8.0]


def test_counterexample_report():
    rep = counterexample_report()
    assert abs(rep["x0"] - 6) < 1e-9 and abs(rep["x1"] - 33 / 43) < 1e-9
    assert rep["x0_inside"] and not rep["x1_inside"]
