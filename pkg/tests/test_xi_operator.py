import random
import warnings

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from umbra.errors import InadmissiblePointError
from umbra.jets import Jet
from umbra.special import xi_complete
from umbra.umbral import umbral_polynomial
from umbra.xi_operator import (
    PLAIN,
    SIN_WEIGHTED,
    XiKernel,
    moment_c,
    phi_kernel,
    scan_xi_zeros,
    xi_b,
    xi_b_with_error,
    xi_on_axis,
)

from conftest import close

SYM_TOL = mp.mpf(10) ** (-30 + 4)

# regression constants at 30 digits
XI_B_0 = mp.mpf("0.496167195457974722423")
XI_B_2 = mp.mpf("0.543878044205332217643")
PHI_2 = mp.mpf("0.06640955521")


def test_phi_kernel():
    assert close(phi_kernel(2), PHI_2, 1e-10)
    assert phi_kernel(2) > 0
    assert phi_kernel(50) < mp.mpf(10) ** -60
    with pytest.raises(InadmissiblePointError):
        phi_kernel(mp.mpf("0.99"))
    with pytest.raises(ValueError):
        phi_kernel(2, "cosine")


def test_phi_continuous_at_one():
    # the plain kernel log x/(sqrt x - 1) tends to 2
    assert close(phi_kernel(1), phi_kernel(1 + mp.mpf(10) ** -12), 1e-10)


def test_regression_values():
    assert close(xi_b(0), XI_B_0, 1e-20)
    assert close(xi_b(2), XI_B_2, 1e-20)
    assert close(xi_b(0, SIN_WEIGHTED), mp.mpf("0.77642434766"), 1e-10)


def test_zeroth_moment_is_four_phi_one():
    # (1/pi) int xi(B + it) dt inverts the cosine transform at u = 0
    assert close(moment_c(0), 4 * phi_kernel(1), 1e-10)


@pytest.mark.parametrize("s", [0, 1, 2])
def test_against_moment_series_of_completed_xi(s):
    # sum_m xi^{(m)}(s) B_m/m! is asymptotic: stop before the smallest term
    j = xi_complete(Jet.variable(s, 60))
    terms = [umbral_polynomial({m: c}) for m, c in enumerate(j.coeffs)]
    even = [abs(t) for t in terms[2::2]]
    stop = 2 + 2 * even.index(min(even))
    series = mp.fsum(terms[:stop])
    assert close(series, xi_b(s), 10 * abs(terms[stop]) + mp.mpf(10) ** -28)


def test_symmetry_on_random_points():
    rng = random.Random(7)
    for flavor in (PLAIN, SIN_WEIGHTED):
        for _ in range(5):
            s = mp.mpc(rng.uniform(-8, 8), rng.uniform(-30, 30))
            a, b = xi_b(s, flavor), xi_b(-s, flavor)
            assert abs(a - b) < SYM_TOL * max(1, abs(a))


@given(st.integers(min_value=-10, max_value=10), st.sampled_from([PLAIN, SIN_WEIGHTED]))
def test_positive_on_real_axis(s, flavor):
    assert xi_b(s, flavor) > 0


def test_real_on_imaginary_axis():
    v = xi_b(mp.mpc(mp.mpf(10) ** -40, 7))
    assert abs(mp.im(v)) < mp.mpf(10) ** -25
    assert close(mp.re(v), xi_on_axis(7), 1e-25)


def test_error_estimate_small():
    r = xi_b_with_error(3)
    assert r.error < mp.mpf(10) ** -25


def test_table_respects_re_bound():
    # |Re s| beyond 20 switches to a longer table
    assert close(xi_b(25), xi_b(-25), SYM_TOL * xi_b(25))


@pytest.fixture(scope="module")
def plain_zeros():
    return scan_xi_zeros(60, mp.mpf("0.5"))


def test_scan_finds_zeros(plain_zeros):
    assert len(plain_zeros) >= 3
    for got, expected in zip(plain_zeros, ["14.1832", "21.0853", "25.0595"]):
        assert close(got, mp.mpf(expected), 1e-4)


def test_scan_brackets_are_sign_changes(plain_zeros):
    for t in plain_zeros[:4]:
        assert xi_on_axis(t - mp.mpf("1e-5")) * xi_on_axis(t + mp.mpf("1e-5")) < 0


def test_scan_stable_under_looser_quadrature(plain_zeros):
    loose = scan_xi_zeros(30, mp.mpf("0.5"), tol=mp.mpf("1e-4"))
    for a, b in zip(loose, plain_zeros):
        assert abs(a - b) < 1e-4


def test_scan_contract():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert scan_xi_zeros(1, 2) == []
    assert caught
    with pytest.raises(ValueError):
        scan_xi_zeros(10, 0)
    with pytest.raises(ValueError):
        scan_xi_zeros(-1, 0.5)


def test_weighted_zeros_near_plain_ones():
    z = scan_xi_zeros(22, mp.mpf("0.5"), SIN_WEIGHTED)
    assert len(z) == 2
    assert close(z[0], mp.mpf("14.2817"), 1e-3)


def test_kernel_table_dataclass():
    k = XiKernel(PLAIN, degree=10, re_bound=20, precision=20)
    assert len(k.nodes) == len(k.weights)
    assert close(k.integrate(0), XI_B_0, 1e-12)


def test_moment_c_range():
    with pytest.raises(ValueError):
        moment_c(5)
