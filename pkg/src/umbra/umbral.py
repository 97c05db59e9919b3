"""Evaluation of expressions in the Bernoulli operator B.

Two evaluation paths exist:

* Laurent polynomials in B are expanded first and then every power B^n is
  replaced by its moment, exactly once (``umbral_polynomial``). Evaluated
  results are never multiplied together, because B^2 * B^1 evaluates to 1/12
  whereas B^3 evaluates to 0.
* f(B + a) for an analytic summand f is defined by
  f(B + a) = -sum_{n>=1} f'(n + a), regularised by the shifted form
  f(B + a) = f(N + a + B) - sum_{k=1}^{N} f'(k + a), in which f(N + a + B)
  is the Bernoulli moment series sum_m f^{(m)}(N + a) B_m / m!
  (``ramanujan_sum``).

A third, independent realisation treats B as the random variable 1/2 + iT with
T distributed with density (pi/2) sech^2(pi t); its moments are exactly B_n
and E[exp(-zB)] = z/(e^z - 1). ``line_integral_value`` evaluates f(B + a) as
that expectation and is used as a cross-check and for summands whose
singularities sit on the integer lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping

import mpmath as mp

from .bernoulli import default_table
from .errors import (
    InadmissiblePointError,
    LatticePoleError,
    NotSummableError,
    UnknownSymbolError,
)
from .numerics import accelerate_alternating, get_precision, integrate
from .oracles import ALTERNATING, ENTIRE_GROWING, EXPONENTIAL, Oracle, OracleId, get_oracle
from .special import zeta

DIRECT_SUM = "direct-sum"
SHIFTED_EM = "shifted-EM"
ALTERNATING_ACCEL = "alternating-accel"
MOMENT_SERIES = "moment-series"
LINE_INTEGRAL = "line-integral"
MODES = (DIRECT_SUM, SHIFTED_EM, ALTERNATING_ACCEL, MOMENT_SERIES, LINE_INTEGRAL)

CONVERGENT = "convergent"
ASYMPTOTIC = "asymptotic-optimal-truncation"

LOG_B = "log B"
B_LOG_B = "B log B"


# ---------------------------------------------------------------------------
# Moment table


class MomentTable:
    """Values of bare umbral symbols.

    Integer keys n >= 0 map to B_n, n = -k < 0 to k zeta(k+1); the string keys
    "log B" and "B log B" map to -gamma and (1 - log 2 pi)/2.
    """

    def __init__(self):
        self._bern = default_table()

    def __contains__(self, symbol) -> bool:
        if isinstance(symbol, int):
            return symbol < 0 or symbol <= self._bern.n_max
        return symbol in (LOG_B, B_LOG_B)

    def exact(self, n: int) -> Fraction:
        if n < 0:
            raise UnknownSymbolError(f"B^{n} has no exact rational value")
        return self._bern.number(n)

    def value(self, symbol):
        if isinstance(symbol, bool) or not isinstance(symbol, (int, str)):
            raise UnknownSymbolError(f"unsupported umbral symbol {symbol!r}")
        if isinstance(symbol, int):
            if symbol >= 0:
                return self._bern.moment(symbol)
            k = -symbol
            return k * zeta(k + 1)
        if symbol == LOG_B:
            return -mp.euler
        if symbol == B_LOG_B:
            return (1 - mp.log(2 * mp.pi)) / 2
        raise UnknownSymbolError(f"umbral symbol {symbol!r} is not tabled (composites are never assigned values)")


MOMENTS = MomentTable()


def moment_value(symbol):
    return MOMENTS.value(symbol)


def umbral_polynomial(coeffs: Mapping[int, object]):
    """Evaluate sum_n c_n B^n by a single moment substitution.

    With exact rational coefficients and non-negative exponents the result is
    an exact ``Fraction``.
    """
    for n in coeffs:
        if isinstance(n, bool) or not isinstance(n, int):
            raise UnknownSymbolError(f"exponent {n!r} is not an integer power of B")
        if n not in MOMENTS:
            raise UnknownSymbolError(f"B^{n} is beyond the Bernoulli table")
    exact = all(n >= 0 and isinstance(c, (int, Fraction)) for n, c in coeffs.items())
    if exact:
        return sum((Fraction(c) * MOMENTS.exact(n) for n, c in coeffs.items()), Fraction(0))
    terms = []
    for n, c in sorted(coeffs.items()):
        if isinstance(c, Fraction):
            c = mp.mpf(c.numerator) / c.denominator
        terms.append(c * MOMENTS.value(n))
    return mp.fsum(terms)


# exact polynomial helpers (coefficient lists, lowest degree first)


def poly_derivative(coeffs: list) -> list:
    return [k * coeffs[k] for k in range(1, len(coeffs))] or [Fraction(0)]


def affine_in_b(coeffs: list, a, z) -> dict[int, Fraction]:
    """Coefficients of f(a + zB) as a polynomial in B, for f given by coefficients."""
    out: dict[int, Fraction] = {}
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        for k in range(d + 1):
            term = Fraction(c) * comb(d, k) * Fraction(a) ** (d - k) * Fraction(z) ** k
            out[k] = out.get(k, Fraction(0)) + term
    return out


def times_b_power(poly: Mapping[int, object], j: int) -> dict[int, object]:
    """Multiply a polynomial in B by B^j before any moment is applied."""
    return {n + j: c for n, c in poly.items()}


def add_polys(*polys: Mapping[int, object]) -> dict[int, object]:
    out: dict[int, object] = {}
    for p in polys:
        for n, c in p.items():
            out[n] = out.get(n, 0) + c
    return out


def scale_poly(poly: Mapping[int, object], k) -> dict[int, object]:
    return {n: c * k for n, c in poly.items()}


# ---------------------------------------------------------------------------
# Summation engine


@dataclass(frozen=True)
class UmbralResult:
    value: mp.mpf | mp.mpc
    error_estimate: mp.mpf
    shift: int
    order: int
    method: str
    convergence: str


@dataclass(frozen=True)
class EngineConfig:
    """N: shift (None = max(10, P)); M: truncation order (None = optimal)."""

    N: int | None = None
    M: int | None = None
    mode: str = "auto"


def _moment_series(jet_coeffs, table, fixed_order: int | None):
    """sum_m c_m B_m with optimal truncation.

    Returns (value, error, last order used, convergence class).
    """
    eps = mp.mpf(10) ** (-get_precision() - 3)
    terms = []
    for m, c in enumerate(jet_coeffs):
        if m >= 3 and m % 2:
            continue
        terms.append((m, c * table.moment(m)))
    if fixed_order is not None:
        used = [t for m, t in terms if m <= fixed_order]
        nxt = [abs(t) for m, t in terms if m > fixed_order]
        err = nxt[0] if nxt else mp.mpf(0)
        return mp.fsum(used), err, fixed_order, CONVERGENT
    total = []
    mags = [abs(t) for _, t in terms]
    small_run = 0
    rises = 0
    for i, (m, t) in enumerate(terms):
        running = abs(mp.fsum(total)) if total else abs(t)
        if mags[i] <= eps * max(running, eps):
            small_run += 1
            if small_run >= 2:
                return mp.fsum(total), mags[i], m, CONVERGENT
        else:
            small_run = 0
        if i > 0 and m >= 6 and mags[i] > mags[i - 1]:
            rises += 1
            if rises >= 2:
                # divergent tail: stop in front of the smallest term seen
                j = min(range(i + 1), key=lambda q: mags[q] if terms[q][0] >= 2 else mp.inf)
                value = mp.fsum(t for _, t in terms[:j])
                return value, mags[j], terms[j - 1][0], ASYMPTOTIC
        else:
            rises = 0
        total.append(t)
    # ran out of jet order: report the last term as the error
    return mp.fsum(total), mags[-1], terms[-1][0], CONVERGENT if mags[-1] < mags[0] else ASYMPTOTIC


def _derivs_on_lattice(oracle: Oracle, a, ks):
    out = []
    for k in ks:
        try:
            out.append(oracle.deriv(k + a))
        except (InadmissiblePointError, ZeroDivisionError) as exc:
            raise LatticePoleError(
                f"oracle has poles on summation lattice at x = {mp.nstr(k + a, 10)}: {exc}; "
                "use the moment-series route or an identity chain"
            ) from None
    return out


def _direct_sum(oracle: Oracle, a, max_terms: int = 20000) -> UmbralResult:
    eps = mp.mpf(10) ** (-get_precision() - 5)
    total = []
    prev = None
    quiet = 0
    for n in range(1, max_terms + 1):
        (t,) = _derivs_on_lattice(oracle, a, [n])
        total.append(t)
        size = abs(t)
        if prev is not None and n > 20 and size > prev and size > eps:
            raise NotSummableError("f'(n + a) does not decay; not Ramanujan-summable in direct-sum mode")
        running = abs(mp.fsum(total))
        quiet = quiet + 1 if size <= eps * max(running, eps) else 0
        if quiet >= 3:
            value = -mp.fsum(total)
            return UmbralResult(value, size * 10, 0, n, DIRECT_SUM, CONVERGENT)
        prev = size
    raise NotSummableError("direct sum did not converge within the term budget")


def _alternating(oracle: Oracle, a) -> UmbralResult:
    n = int(1.4 * get_precision()) + 10
    terms = _derivs_on_lattice(oracle, a, range(1, n + 1))
    res = accelerate_alternating(terms)
    return UmbralResult(-res.value, res.error, 0, n, ALTERNATING_ACCEL, CONVERGENT)


def _auto_order(mode: str) -> int:
    P = get_precision()
    cap = default_table().n_max
    return min(cap, P + 30) if mode == SHIFTED_EM else min(cap, 4 * P + 10)


def _shifted(oracle: Oracle, a, N: int, M: int | None) -> UmbralResult:
    order = M + 2 if M is not None else _auto_order(SHIFTED_EM)
    order = min(order, default_table().n_max)
    derivs = _derivs_on_lattice(oracle, a, range(1, N + 1))
    # decay probe: third derivatives must not grow as the shift doubles
    probe_order = 3
    j1 = oracle.jet(N + a, probe_order).coeffs[probe_order]
    j2 = oracle.jet(2 * N + a, probe_order).coeffs[probe_order]
    if abs(j2) > abs(j1) * (1 + mp.mpf(10) ** -6) and abs(j2) > mp.mpf(10) ** (-get_precision()):
        raise NotSummableError(
            "derivatives of f do not decay at N + a; not Ramanujan-summable in shifted-EM mode"
        )
    jet = oracle.jet(N + a, order)
    head, err, used, conv = _moment_series(jet.coeffs, default_table(), M)
    return UmbralResult(head - mp.fsum(derivs), err, N, used, SHIFTED_EM, conv)


def _moment_only(oracle: Oracle, a, M: int | None) -> UmbralResult:
    table = default_table()
    order = M + 2 if M is not None else _auto_order(MOMENT_SERIES)
    order = min(order, table.n_max)
    eps = mp.mpf(10) ** (-get_precision() - 3)
    while True:
        try:
            jet = oracle.jet(a, order)
        except (InadmissiblePointError, ZeroDivisionError) as exc:
            raise NotSummableError(f"moment series needs f analytic at a: {exc}") from None
        value, err, used, conv = _moment_series(jet.coeffs, table, M)
        # a slowly converging series that ran out of jet order gets more terms
        if M is not None or conv != CONVERGENT or err <= eps * max(1, abs(value)) or order >= table.n_max:
            return UmbralResult(value, err, 0, used, MOMENT_SERIES, conv)
        order = min(2 * order, table.n_max)


def line_integral_value(oracle: Oracle | OracleId | str, a=0, tol=None, **params) -> UmbralResult:
    """f(B + a) as the expectation of f(a + 1/2 + iT), T ~ (pi/2) sech^2(pi t) dt.

    The conjugate pair f(a+1/2+it) + f(a+1/2-it) is integrated over t in [0, T]
    with T chosen so the density tail is below 10^{-P-8}.
    """
    oracle = oracle if isinstance(oracle, Oracle) else get_oracle(oracle, **params)
    P = get_precision()
    a = mp.mpf(a) if not isinstance(a, (mp.mpf, mp.mpc)) else a
    t_max = int(mp.ceil(((P + 8) * mp.log(10) + mp.log(2 * mp.pi)) / (2 * mp.pi))) + 1
    half = mp.mpf(1) / 2

    def integrand(t):
        w = (mp.pi / 2) / mp.cosh(mp.pi * t) ** 2
        up = oracle.value(mp.mpc(a + half, t))
        down = oracle.value(mp.mpc(a + half, -t))
        return (up + down) * w

    tol = mp.mpf(10) ** (-P - 2) if tol is None else mp.mpf(tol)
    with mp.workdps(P + 5):
        res = integrate(integrand, 0, t_max, tol, breakpoints=range(1, t_max))
    value = res.value
    if abs(mp.im(value)) <= max(res.error, mp.mpf(10) ** (-P)) * 10:
        value = mp.re(value)
    return UmbralResult(+value, +res.error, 0, 0, LINE_INTEGRAL, CONVERGENT)


def ramanujan_sum(
    oracle: Oracle | OracleId | str,
    a=0,
    cfg: EngineConfig | None = None,
    **params,
) -> UmbralResult:
    """f(B + a) for a registered summand f.

    Mode "auto" uses the direct sum when f' decays geometrically, alternating
    acceleration when it alternates, the moment series when f is entire with
    growing derivatives, and the shifted Euler-Maclaurin form otherwise.
    """
    cfg = cfg or EngineConfig()
    oracle = oracle if isinstance(oracle, Oracle) else get_oracle(oracle, **params)
    a = mp.mpmathify(a) if not isinstance(a, (mp.mpf, mp.mpc)) else a
    mode = cfg.mode
    if mode == "auto":
        mode = {
            EXPONENTIAL: DIRECT_SUM,
            ALTERNATING: ALTERNATING_ACCEL,
            ENTIRE_GROWING: MOMENT_SERIES,
        }.get(oracle.decay, SHIFTED_EM)
        if cfg.N is not None and mode in (DIRECT_SUM, ALTERNATING_ACCEL):
            mode = SHIFTED_EM
    N = cfg.N if cfg.N is not None else max(10, get_precision())
    if mode == DIRECT_SUM:
        return _direct_sum(oracle, a)
    if mode == ALTERNATING_ACCEL:
        return _alternating(oracle, a)
    if mode == SHIFTED_EM:
        return _shifted(oracle, a, N, cfg.M)
    if mode == MOMENT_SERIES:
        return _moment_only(oracle, a, cfg.M)
    if mode == LINE_INTEGRAL:
        return line_integral_value(oracle, a)
    raise ValueError(f"unknown mode {mode!r}; choose from auto, {', '.join(MODES)}")
