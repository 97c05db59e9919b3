import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from umbra.errors import NotAlternatingError, PVDivergenceError
from umbra.numerics import (
    accelerate_alternating,
    find_sign_changes,
    fixed_rule,
    gauss_legendre,
    get_precision,
    integrate,
    precision,
    principal_value_pair,
    refine_bracket,
    richardson,
    set_precision,
)

from conftest import close


def test_precision_bounds():
    with pytest.raises(ValueError):
        set_precision(5)
    with pytest.raises(ValueError):
        set_precision(500)


def test_precision_context_restores():
    with precision(50):
        assert get_precision() == 50
    assert get_precision() == 30


@pytest.mark.parametrize("n", [1, 2, 5, 12, 31])
def test_gauss_legendre_weights_sum_to_two(n):
    nodes, weights = gauss_legendre(n)
    assert len(nodes) == n
    assert close(mp.fsum(weights), 2, 1e-28)


@given(st.integers(min_value=0, max_value=19))
def test_gauss_legendre_exact_for_low_degree(k):
    nodes, weights = gauss_legendre(10)
    exact = mp.mpf(2) / (k + 1) if k % 2 == 0 else mp.mpf(0)
    assert close(mp.fsum(w * x**k for x, w in zip(nodes, weights)), exact, 1e-27)


CLOSED_FORMS = [
    (lambda t: t**2, 0, 1, mp.mpf(1) / 3),
    (lambda t: mp.exp(-t), 1, mp.inf, mp.exp(-1)),
    (lambda t: 1 / t**2, 1, mp.inf, 1),
    (mp.sin, 0, mp.pi, 2),
    (lambda t: 1 / (1 + t**2), 0, mp.inf, mp.pi / 2),
    (mp.log, 1, mp.e, 1),
    (lambda t: mp.sqrt(t), 0, 4, mp.mpf(16) / 3),
    (lambda t: mp.exp(-(t**2)), 0, mp.inf, mp.sqrt(mp.pi) / 2),
    (lambda t: mp.cos(t) ** 2, 0, 2 * mp.pi, mp.pi),
    (lambda t: 1 / t, 1, 10, mp.log(10)),
    (lambda t: t * mp.exp(-t), 0, mp.inf, 1),
]


@pytest.mark.parametrize("f,a,b,exact", CLOSED_FORMS)
def test_integrate_closed_forms(f, a, b, exact):
    tol = mp.mpf("1e-20")
    res = integrate(f, a, b, tol)
    assert res.converged
    assert close(res.value, exact, tol * 10)


def test_integrate_reversed_limits():
    assert close(integrate(mp.exp, 1, 0).value, -(mp.e - 1), 1e-25)


def test_fixed_rule_breakpoints_are_sorted():
    xs, ws = fixed_rule([0, 1, 2], 6)
    assert xs == sorted(xs)
    assert close(mp.fsum(ws), 2, 1e-28)


def test_richardson_removes_linear_term():
    hs = [mp.mpf(1) / 2**k for k in range(1, 6)]
    limit, err = richardson(hs, [3 + 2 * h + 5 * h**2 for h in hs])
    assert close(limit, 3, 1e-25)


def test_pv_of_log_singularity():
    # PV int_0^3 2/(t-1) dt = 2 log|t-1| from 0 to 3 = 2 log 2
    res = principal_value_pair(lambda t: 2 / (t - 1), 3)
    assert close(res.value, 2 * mp.log(2), 1e-20)


def test_pv_symmetric_cancellation():
    assert abs(principal_value_pair(lambda t: 1 / (t - 1), 2).value) < 1e-20


@given(st.floats(min_value=0.5, max_value=3.0), st.integers(min_value=1, max_value=4))
def test_pv_odd_about_one_vanishes(c, k):
    # f(1 + h) = -f(1 - h) on [0, 2]
    f = lambda t: c * (t - 1) ** (2 * k - 1) / (t - 1) ** (2 * k)  # noqa: E731
    assert abs(principal_value_pair(f, 2).value) < 1e-18


def test_pv_oscillatory_schedules_agree():
    g = mp.mpf("14.1347")
    f = lambda t: 2 * mp.cos(g * mp.log(t)) / (mp.sqrt(t) * (t - 1))  # noqa: E731
    a = principal_value_pair(f, 10, eps0=mp.mpf("0.1"), breakpoints=[0.5, 2, 4, 6, 8]).value
    b = principal_value_pair(f, 10, eps0=mp.mpf("0.05"), breakpoints=[0.5, 2, 4, 6, 8]).value
    assert close(a, b, 1e-8)


def test_pv_rejects_double_pole():
    with pytest.raises(PVDivergenceError):
        principal_value_pair(lambda t: 1 / (t - 1) ** 2, 2)


@pytest.mark.parametrize(
    "term,exact",
    [
        (lambda k: (-1) ** k / mp.mpf(k + 1), mp.log(2)),
        (lambda k: (-1) ** k / mp.mpf(k + 1) ** 2, mp.pi**2 / 12),
        (lambda k: (-1) ** k / mp.mpf(2 * k + 1), mp.pi / 4),
    ],
)
def test_accelerate_alternating_known_limits(term, exact):
    res = accelerate_alternating(term)
    assert close(res.value, exact, 1e-25)
    assert res.error < 1e-20


def test_accelerate_matches_partial_sums_with_richardson():
    # independent route for log 2: averaged partial sums extrapolated in 1/n
    ns = [40, 80, 160, 320]
    vals = []
    for n in ns:
        s = mp.fsum((-1) ** (k + 1) / mp.mpf(k) for k in range(1, n + 1))
        vals.append(s + (-1) ** n / mp.mpf(2 * n))
    limit, _ = richardson([mp.mpf(1) / n**2 for n in ns], vals)
    assert close(limit, accelerate_alternating(lambda k: (-1) ** k / mp.mpf(k + 1)).value, 1e-10)


def test_accelerate_rejects_non_alternating():
    with pytest.raises(NotAlternatingError):
        accelerate_alternating([1, mp.mpf(1) / 2, mp.mpf(1) / 3])
    with pytest.raises(NotAlternatingError):
        accelerate_alternating([1, -2, 3, -4])


def test_sign_changes_of_cos():
    brackets = find_sign_changes(mp.cos, 0, 10, 0.5)
    assert len(brackets) == 3
    for (lo, hi), root in zip(brackets, [mp.pi / 2, 3 * mp.pi / 2, 5 * mp.pi / 2]):
        assert lo < root < hi
        assert mp.cos(lo) * mp.cos(hi) < 0


def test_no_sign_change():
    assert find_sign_changes(lambda t: t**2 + 1, 0, 10, 0.5) == []


def test_refine_to_half_pi():
    root = refine_bracket(mp.cos, (1.5, 2), mp.mpf("1e-10"))
    assert close(root, mp.pi / 2, 1e-10)


def test_bracket_contract():
    with pytest.raises(ValueError):
        find_sign_changes(mp.cos, 0, 1, 0)
    with pytest.raises(ValueError):
        refine_bracket(mp.cos, (0, 1), 1e-6)


def test_deterministic():
    f = lambda t: mp.exp(-t) * mp.sin(3 * t)  # noqa: E731
    assert integrate(f, 0, mp.inf).value == integrate(f, 0, mp.inf).value
