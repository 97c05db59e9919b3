import json
from fractions import Fraction

import mpmath as mp
import pytest

from umbra import special
from umbra.catalogue import (
    ALGEBRAIC_CHAIN,
    ASYMPTOTIC,
    CONVERGENT,
    FORMAL_NONCHECK,
    Recorder,
    VerificationReport,
    gamma_by_limit,
    gamma_by_series,
    get_identity,
    lambda1_brute,
    list_identities,
    registry,
    run_all,
    run_identity,
)
from umbra.errors import RegistryError

from conftest import close

CHEAP = ["eq-1.2", "gamma-series", "lfunc-hurwitz", "sinpib-over-b", "kernel-halfpow"]


def test_listing():
    ids = list_identities()
    assert len(ids) >= 24
    assert len(set(ids)) == len(ids)
    assert {"eq-1.2", "prop-4.1-blogb", "thm-3.1", "xi-hardy"} <= set(ids)


def test_unknown_identity():
    with pytest.raises(RegistryError):
        run_identity("foo")
    with pytest.raises(RegistryError):
        run_all(ids=["eq-1.2", "foo"])


@pytest.mark.parametrize("entry", list(registry().values()), ids=lambda e: e.id)
def test_evaluators_are_independent(entry):
    assert entry.lhs_deps and entry.rhs_deps
    assert not entry.lhs_deps & entry.rhs_deps
    assert entry.klass in (CONVERGENT, ASYMPTOTIC, ALGEBRAIC_CHAIN, FORMAL_NONCHECK)
    assert entry.grid


def test_gamma_series_passes():
    r = run_identity("gamma-series")
    assert r.status == "pass"
    assert mp.mpf(r.residual) < 1e-10
    assert r.passed


def test_eq_1_2_at_five():
    entry = get_identity("eq-1.2")
    point = next(p for p in entry.grid if mp.mpmathify(p) == 5)
    lhs, rhs = entry.evaluate(point, Recorder())
    assert close(lhs, 4 * special.zeta(5), 1e-10)
    assert abs(lhs - rhs) < 1e-10


def test_gamma_routes():
    assert close(gamma_by_series(), mp.euler, 1e-25)
    assert close(gamma_by_limit(), mp.euler, 1e-15)
    assert close(gamma_by_series(), -special.digamma_pi(0), 1e-25)


def test_lambda1_tail_is_independent_of_split():
    assert close(lambda1_brute(15), lambda1_brute(25), 1e-25)


def test_report_fields_and_serialization():
    r = run_identity("sinpib-over-b")
    d = r.to_dict()
    assert list(d) == list(VerificationReport.FIELDS) + ["timestamp"]
    assert "timestamp" not in r.body()
    assert json.loads(json.dumps(d)) == d
    assert {"N", "M", "methods", "engine_error", "precision"} <= set(r.metadata)


def test_run_all_order_independent():
    forward = run_all(ids=CHEAP)
    backward = run_all(ids=list(reversed(CHEAP)))
    assert [r.id for r in forward] == [r.id for r in backward]
    assert [r.body() for r in forward] == [r.body() for r in backward]


def test_noncheck_is_reported_not_graded():
    r = run_identity("eq-4.27-chain")
    assert r.status == "noncheck"
    assert r.passed


def test_asymptotic_entry_reports_bound():
    r = run_identity("cor-6.11-small-s")
    assert r.klass == ASYMPTOTIC
    assert "bound" in r.metadata
    assert r.status == "pass"


def test_hurwitz_shift_residual_is_alpha_power():
    # the engine value of (B + alpha)^{1-s} is zeta(s, alpha + 1)(s - 1)
    entry = get_identity("eq-1.4")
    for a, s in entry.grid:
        lhs, rhs = entry.evaluate((a, s), Recorder())
        alpha, s = mp.mpf(Fraction(a).numerator) / Fraction(a).denominator, mp.mpf(s)
        assert close(lhs - rhs, -(s - 1) * alpha ** (-s), 1e-20)
        assert close(lhs, (s - 1) * special.hurwitz_zeta(s, alpha + 1), 1e-20)


def test_log_zeta_difference_residual_is_cotangent():
    entry = get_identity("funceq-6.1")
    for p in entry.grid:
        lhs, rhs = entry.evaluate(p, Recorder())
        s = mp.mpf(p)
        assert close(lhs - rhs, -2 * mp.pi * mp.cot(mp.pi * s), 1e-12)


def test_known_failures_are_reported_as_failures():
    for i in ("eq-1.4", "funceq-6.1"):
        r = run_identity(i)
        assert r.status == "fail"
        assert r.note


def test_evaluator_failure_is_captured():
    from dataclasses import replace

    from umbra import catalogue
    from umbra.errors import InadmissiblePointError

    def boom(point, rec):
        raise InadmissiblePointError("pole")

    entry = replace(get_identity("gamma-series"), id="broken", evaluate=boom)
    reg = registry()
    reg["broken"] = entry
    try:
        r = catalogue.run_identity("broken")
    finally:
        del reg["broken"]
    assert r.status == "error"
    assert "pole" in r.diagnostics[0]
