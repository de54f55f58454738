import json
import math

import pytest

from artifact.ir import lower
from artifact.sim import run, superpose
from artifact.adders import build_p1_onebit, build_uc, onebit_order
from artifact.verify import (MAX_CASES, UNITS, Params, VerifyError, complexity_fit,
                             exhaustive_verify, linearity_check, matrix_check_p1, matrix_check_p2,
                             matrix_check_uc, ref_index)


@pytest.mark.parametrize("unit,params,cases", [
    ("p3", Params(n=3), 64),
    ("divider", Params(n=3, m=2, zero_safe=True), 32),
    ("p1-onebit", Params(), 8),
    ("adder", Params(n=2, variant="II"), 16),
])
def test_exhaustive_examples(unit, params, cases):
    rep = exhaustive_verify(unit, params)
    assert rep.cases_run == cases
    assert rep.passed and rep.failures == ()


@pytest.mark.parametrize("unit", sorted(UNITS))
def test_every_unit_passes_small(unit):
    p = Params(n=2, m=2 if unit == "divider" else None)
    assert exhaustive_verify(unit, p).passed


def test_failure_carries_the_counterexample():
    rep = exhaustive_verify("multiplier", Params(n=2, literal=True))
    assert not rep.passed
    assert {f.case["b"] for f in rep.failures} == {0}
    assert all("a" in f.case for f in rep.failures)
    assert "FAIL" in rep.to_text()


def test_report_formats():
    rep = exhaustive_verify("uc", Params())
    d = json.loads(rep.to_json())
    assert d["passed"] is True and d["cases_run"] == 8
    assert d["gate_counts"]["CNOT"] == 23
    assert "result: PASS" in rep.to_text()


def test_missing_parameter_and_unknown_unit():
    with pytest.raises(VerifyError):
        exhaustive_verify("p3", Params())
    with pytest.raises(VerifyError):
        exhaustive_verify("toffoli", Params(n=2))
    with pytest.raises(VerifyError):
        exhaustive_verify("adder", Params(n=2))


def test_case_limit():
    assert MAX_CASES == 1 << 16
    with pytest.raises(VerifyError):
        exhaustive_verify("p3", Params(n=9))


@pytest.mark.parametrize("unit,params", [
    ("p1-onebit", Params()), ("p3", Params(n=3)), ("upm", Params(n=3)),
    ("divider", Params(n=2, m=1, zero_safe=True)),
])
def test_linearity(unit, params):
    rep = linearity_check(unit, params, trials=32, seed=0)
    assert rep.passed and rep.cases_run == 32 and rep.seed == 0


def test_linearity_multiplier():
    assert linearity_check("multiplier", Params(n=2), trials=20).passed


def test_linearity_is_deterministic():
    a = linearity_check("p2", Params(n=2), trials=8, seed=5)
    b = linearity_check("p2", Params(n=2), trials=8, seed=5)
    assert a.to_dict() | {"elapsed": 0} == b.to_dict() | {"elapsed": 0}


def test_single_term_superposition_is_the_basis_run():
    c = build_p1_onebit()
    order = onebit_order(c)
    one = superpose(5, [(1, format(ref_index(order, 0b11000), "05b"))])
    assert run(lower(c), one).support == 1


def test_matrix_checks():
    assert matrix_check_p1() and matrix_check_p2() and matrix_check_uc()


@pytest.mark.parametrize("check,builder", [(matrix_check_p1, build_p1_onebit),
                                           (matrix_check_uc, build_uc)])
def test_matrix_negative_control(check, builder):
    # A <-> B is a symmetry of addition, so exchange C and C' instead
    a, b, c, c1, c2 = onebit_order(builder())
    assert check([a, b, c, c1, c2])
    assert not check([a, b, c1, c, c2])


@pytest.mark.parametrize("unit,ns,lo,hi", [
    ("p1", range(2, 9), 0.8, 1.2),
    ("p3", range(2, 9), 0.8, 1.2),
    ("multiplier", range(2, 7), 1.7, 2.3),
])
def test_complexity_examples(unit, ns, lo, hi):
    assert lo <= complexity_fit(unit, ns) <= hi


def test_constant_unit_has_flat_fit():
    assert abs(complexity_fit("us", range(2, 6))) < 1e-9


def test_fit_needs_four_points():
    with pytest.raises(VerifyError):
        complexity_fit("p1", [2, 3, 3, 4])


def test_ref_index_reverses_order():
    assert ref_index([0, 1, 2], 0b100) == 0b001
    assert math.isclose(sum(ref_index([2, 0, 1], i) for i in range(8)), 28)
