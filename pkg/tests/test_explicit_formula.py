import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from umbra.errors import InadmissiblePointError, ZeroFileError
from umbra.explicit_formula import (
    ZeroList,
    compute_zeros,
    default_zeros_path,
    load_zeros,
    log_neg_zeta_b,
    log_neg_zeta_b_series,
    prime_powers,
    psi_explicit_side,
    psi_prime_side,
    tail_integral,
    tail_integral_closed,
    von_mangoldt,
    zero_pair_term,
    zero_pair_term_regularized,
)

from conftest import close

GAMMA_1 = mp.mpf("14.13472514173469379045725")


def test_von_mangoldt():
    assert close(von_mangoldt(8), mp.log(2), 1e-29)
    assert von_mangoldt(6) == 0
    assert close(von_mangoldt(7), mp.log(7), 1e-29)
    assert von_mangoldt(1) == 0
    assert close(von_mangoldt(97), mp.log(97), 1e-29)


def test_prime_powers():
    assert [q for q, _ in prime_powers(10)] == [2, 3, 4, 5, 7, 8, 9]


def test_prime_side_at_ten():
    expected = mp.fsum(mp.log(p) / (q - 1) for q, p in [(2, 2), (3, 3), (4, 2), (5, 5), (7, 7), (8, 2), (9, 3)])
    assert close(psi_prime_side(10), expected, 1e-28)
    assert close(psi_prime_side(10), mp.mpf("2.43652778324"), 1e-10)


def test_prime_side_halved_at_prime_powers():
    assert close(psi_prime_side(2), mp.log(2) / 2, 1e-29)
    assert psi_prime_side(mp.mpf("1.5")) == 0
    jump = mp.log(7) / 6
    below = psi_prime_side(7 - mp.mpf(10) ** -20)
    above = psi_prime_side(7 + mp.mpf(10) ** -20)
    assert close(psi_prime_side(7) - below, jump / 2, 1e-25)
    assert close(above - psi_prime_side(7), jump / 2, 1e-25)


@given(st.floats(min_value=1.01, max_value=200.0), st.floats(min_value=0.0, max_value=30.0))
def test_prime_side_non_decreasing(x, dx):
    assert psi_prime_side(x) <= psi_prime_side(x + dx)


def test_zero_term_regression_and_routes():
    real = zero_pair_term(GAMMA_1, 10)
    assert close(real, mp.mpf("0.04395194585235843"), 1e-12)
    assert close(zero_pair_term_regularized(GAMMA_1, 10), real, 1e-12)
    cplx = zero_pair_term(GAMMA_1, 10, path="complex")
    assert abs(mp.im(cplx)) < 1e-10
    assert close(mp.re(cplx), real, 1e-8)


def test_zero_term_integrand_limit_at_one():
    f = lambda t: 2 * mp.cos(GAMMA_1 * mp.log(t)) / mp.sqrt(t)  # noqa: E731
    assert close(f(mp.mpf(1)), 2, 1e-29)


def test_zero_term_arguments():
    with pytest.raises(InadmissiblePointError):
        zero_pair_term(GAMMA_1, 1)
    with pytest.raises(ValueError):
        zero_pair_term(-1, 10)
    with pytest.raises(ValueError):
        zero_pair_term(GAMMA_1, 10, path="contour")


def test_tail_integral():
    assert close(tail_integral(10), tail_integral_closed(10), 1e-25)
    assert close(tail_integral(10), mp.mpf("3.6271376e-4"), 1e-10)
    assert tail_integral(10) > tail_integral(20)
    assert tail_integral(10**6) < 1e-18
    with pytest.raises(InadmissiblePointError):
        tail_integral(1)


def test_log_neg_zeta_routes_agree():
    a = log_neg_zeta_b(10**4)
    b = log_neg_zeta_b_series()
    assert abs(a.value - b) < 1e-3
    assert abs(a.value - b) <= a.tail_bound


def test_log_neg_zeta_cutoff_refinement():
    coarse, fine = log_neg_zeta_b(10**3), log_neg_zeta_b(10**4)
    assert abs(fine.value - coarse.value) < coarse.tail_bound
    with pytest.raises(ValueError):
        log_neg_zeta_b(1)


def test_log_neg_zeta_near_but_not_log_minus_zeta_half():
    nearby = mp.log(-mp.zeta(mp.mpf(1) / 2))
    gap = abs(log_neg_zeta_b_series() - nearby)
    assert 1e-3 < gap < 0.2


def test_bundled_zero_table():
    zeros = load_zeros(default_zeros_path())
    assert zeros.count == 200
    assert close(zeros.ordinates[0], GAMMA_1, 1e-20)


def test_compute_zeros_matches_table():
    internal = compute_zeros(3)
    assert internal.source == "internal"
    for got, want in zip(internal.ordinates, ["14.134725", "21.022040", "25.010858"]):
        assert close(got, mp.mpf(want), 1e-6)
    with pytest.raises(ValueError):
        compute_zeros(0)


def test_load_hundred_lines(tmp_path):
    table = load_zeros(default_zeros_path())
    path = tmp_path / "z.txt"
    path.write_text("\n".join(mp.nstr(g, 20) for g in table.first(100)) + "\n")
    assert load_zeros(path).count == 100


@pytest.mark.parametrize(
    "text,line",
    [
        ("14.5\n21.0\n20.0\n", 3),
        ("# header\n14.5\nabc\n", 3),
        ("10.0\n", 1),
        ("14.5\n\n14.5\n", 3),
    ],
)
def test_malformed_files_name_the_line(tmp_path, text, line):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(ZeroFileError, match=f"{path}:{line}:"):
        load_zeros(path)


def test_missing_file(tmp_path):
    with pytest.raises(ZeroFileError):
        load_zeros(tmp_path / "absent.txt")


def test_zero_list_validation():
    with pytest.raises(ZeroFileError):
        ZeroList((mp.mpf(21), mp.mpf(15)))
    with pytest.raises(ValueError):
        ZeroList((mp.mpf(15),)).first(2)


def test_more_zeros_help_at_ten():
    zeros = load_zeros(default_zeros_path())
    none = psi_explicit_side(10, zeros, 0)
    some = psi_explicit_side(10, zeros, 20)
    assert some.difference < none.difference
    assert set(some.breakdown) >= {"log_term", "zero_sum", "tail_integral", "constant"}
    with pytest.raises(InadmissiblePointError):
        psi_explicit_side(1, zeros, 1)
