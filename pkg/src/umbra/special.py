"""Zeta, Hurwitz zeta, Dirichlet L, the factorial function Pi(s) = Gamma(s+1),
the theta series and the completed xi function.

Every routine that takes an argument ``s`` is written against a small
arithmetic interface so it also accepts a ``Jet``; feeding a jet returns the
Taylor expansion of the function, which is how derivatives are obtained.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import mpmath as mp

from .bernoulli import default_table
from .errors import InadmissiblePointError
from .jets import Jet
from .numerics import get_precision


def _const(s):
    return s.value if isinstance(s, Jet) else s


def _size(x):
    return x.magnitude() if isinstance(x, Jet) else abs(x)


def _power_neg(base, s):
    """base^{-s} for a positive real base."""
    if isinstance(s, Jet):
        return (s * (-mp.log(base))).exp()
    return mp.power(base, -s)


def _log(z):
    return z.log() if isinstance(z, Jet) else mp.log(z)


def _round(x):
    if isinstance(x, Jet):
        return Jet(+x.point, [+c for c in x.coeffs])
    return +x


def _em_hurwitz(s, alpha, remove_pole: bool = False):
    P = get_precision()
    s0 = _const(s)
    n0 = max(10, int(mp.ceil(abs(s0))) + P)
    # the head sum grows like X^{1-Re s}; carry enough digits to absorb the cancellation
    guard = 5 + max(0, int((1 - mp.re(s0)) * mp.log10(n0 + abs(mp.mpf(alpha)))))
    with mp.workdps(P + guard):
        out = _em_hurwitz_core(s, alpha, n0, P, remove_pole)
    return _round(out)


def _em_hurwitz_core(s, alpha, n0, P, remove_pole):
    """Euler-Maclaurin continuation of zeta(s, alpha), or (s-1) zeta(s, alpha).

    zeta(s, a) = sum_{n<n0} (n+a)^{-s} + X^{1-s}/(s-1) + X^{-s}/2
                 + sum_j B_{2j}/(2j)! (s)_{2j-1} X^{-s-2j+1},   X = n0 + a,
    with n0 = max(10, ceil|s| + P). The tail is cut at the first term below
    10^{-P-5} of the running total, or at its smallest term if the terms turn
    upward.
    """
    table = default_table()
    alpha = mp.mpf(alpha)
    head = 0
    for n in range(n0):
        head = head + _power_neg(n + alpha, s)
    X = n0 + alpha
    x_neg_s = _power_neg(X, s)
    total = head + x_neg_s / 2
    # relative to the head, which carries `guard` more digits than the result
    eps = mp.mpf(10) ** (-get_precision() - 5)
    rising = s
    power = x_neg_s / X
    inv_x2 = 1 / (X * X)
    # terms can dip and recover while s + 2j passes zero; genuine divergence
    # only sets in once 2j + |s| is comparable with 2 pi X
    asymptotic_from = mp.pi * X - abs(_const(s))
    prev = None
    j = 1
    while 2 * j <= table.n_max:
        coeff = table.moment(2 * j) / mp.factorial(2 * j)
        term = rising * power * coeff
        size = _size(term)
        if prev is not None and size > prev and 2 * j > asymptotic_from:
            break
        total = total + term
        if size <= eps * max(_size(total), eps):
            break
        prev = size
        rising = rising * (s + (2 * j - 1)) * (s + 2 * j)
        power = power * inv_x2
        j += 1
    if remove_pole:
        return (s - 1) * total + X * x_neg_s
    return total + X * x_neg_s / (s - 1)


def _reject_pole_at_one(s):
    if _const(s) == 1:
        raise InadmissiblePointError("zeta has a pole at s = 1")


def zeta(s, order: int = 0):
    """Riemann zeta (order 0) or its derivative (order 1)."""
    if isinstance(s, Jet):
        _reject_pole_at_one(s)
        return _em_hurwitz(s, 1)
    s = _num(s)
    _reject_pole_at_one(s)
    if order == 0:
        return _em_hurwitz(s, 1)
    if order == 1:
        return _em_hurwitz(Jet.variable(s, 1), 1).coeffs[1]
    raise ValueError("order must be 0 or 1")


def zeta_jet(s, order: int) -> Jet:
    """Taylor expansion of zeta at s to the given order."""
    return zeta(Jet.variable(_num(s), order))


def zeta_times_s_minus_1(s):
    """(s-1) zeta(s), continuous through the removable point s = 1."""
    if not isinstance(s, Jet):
        s = _num(s)
    return _em_hurwitz(s, 1, remove_pole=True)


def hurwitz_zeta(s, alpha, order: int = 0):
    """Hurwitz zeta(s, alpha) for real alpha > 0 (order 1 gives d/ds)."""
    alpha = _num(alpha)
    if not isinstance(alpha, mp.mpf) or alpha <= 0:
        raise InadmissiblePointError("Hurwitz zeta needs real alpha > 0")
    if isinstance(s, Jet):
        _reject_pole_at_one(s)
        return _em_hurwitz(s, alpha)
    s = _num(s)
    _reject_pole_at_one(s)
    if order == 0:
        return _em_hurwitz(s, alpha)
    if order == 1:
        return _em_hurwitz(Jet.variable(s, 1), alpha).coeffs[1]
    raise ValueError("order must be 0 or 1")


def _num(x):
    if isinstance(x, (mp.mpf, mp.mpc)):
        return x
    if isinstance(x, complex):
        return mp.mpc(x)
    if hasattr(x, "numerator") and not isinstance(x, int):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


# ---------------------------------------------------------------------------
# Pi(s) = Gamma(s + 1) family


def _check_gamma_arg(z):
    z0 = _const(z)
    if mp.im(z0) == 0 and mp.re(z0) <= 0 and mp.re(z0) == mp.floor(mp.re(z0)):
        raise InadmissiblePointError(f"Pi has a pole at s = {mp.nstr(z0 - 1, 10)} (negative integer)")


def _shift_count(z) -> int:
    target = get_precision() // 2 + 12
    re = mp.re(_const(z))
    return max(0, int(mp.ceil(target - re)))


def _guarded(fn):
    def wrapper(z):
        with mp.workdps(get_precision() + 8):
            out = fn(z)
        return _round(out)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_guarded
def _log_gamma(z):
    """log Gamma(z): Stirling series at z + r, then the recurrence back down.

    Summing principal logs of the recurrence factors gives the standard
    analytic log-gamma branch (real on the positive axis).
    """
    _check_gamma_arg(z)
    table = default_table()
    r = _shift_count(z)
    w = z + r
    inv = 1 / w
    inv2 = inv * inv
    total = (w - mp.mpf(1) / 2) * _log(w) - w + mp.log(2 * mp.pi) / 2
    eps = mp.mpf(10) ** (-get_precision() - 5)
    power = inv
    prev = None
    k = 1
    while 2 * k <= table.n_max:
        term = power * (table.moment(2 * k) / (2 * k * (2 * k - 1)))
        size = _size(term)
        if prev is not None and size > prev:
            break
        total = total + term
        if size <= eps * max(_size(total), eps):
            break
        prev = size
        power = power * inv2
        k += 1
    for j in range(r):
        total = total - _log(z + j)
    return total


@_guarded
def _digamma(z):
    """psi(z) = Gamma'(z)/Gamma(z) by asymptotic series and recurrence."""
    _check_gamma_arg(z)
    table = default_table()
    r = _shift_count(z)
    w = z + r
    inv = 1 / w
    inv2 = inv * inv
    total = _log(w) - inv / 2
    eps = mp.mpf(10) ** (-get_precision() - 5)
    power = inv2
    prev = None
    k = 1
    while 2 * k <= table.n_max:
        term = power * (table.moment(2 * k) / (2 * k))
        size = _size(term)
        if prev is not None and size > prev:
            break
        total = total - term
        if size <= eps * max(_size(total), eps):
            break
        prev = size
        power = power * inv2
        k += 1
    for j in range(r):
        total = total - 1 / (z + j)
    return total


def log_gamma_pi(s):
    """log Pi(s) = log Gamma(s + 1)."""
    if not isinstance(s, Jet):
        s = _num(s)
    return _log_gamma(s + 1)


def digamma_pi(s):
    """Pi'(s)/Pi(s) = psi(s + 1)."""
    if not isinstance(s, Jet):
        s = _num(s)
    return _digamma(s + 1)


# ---------------------------------------------------------------------------
# Theta series and xi


def theta_psi(x, order: int = 0):
    """psi_theta(x) = sum_{n>=1} exp(-n^2 pi x) or its order-th x-derivative."""
    x = _num(x)
    if x <= 0:
        raise InadmissiblePointError("theta series needs x > 0")
    eps = mp.mpf(10) ** (-get_precision() - 5)
    total = mp.mpf(0)
    n = 1
    while True:
        a = n * n * mp.pi
        term = (-a) ** order * mp.exp(-a * x)
        total += term
        if abs(term) <= eps * abs(total) and a * x > order:
            break
        n += 1
    return total


def xi_complete(s):
    """xi(s) = Pi(s/2) pi^{-s/2} (s-1) zeta(s); entire.

    At s = 1 the factor (s-1) zeta(s) is taken in its pole-free form. At
    s = -2n the pole of Pi(s/2) meets the trivial zero of zeta; the limit
    2 (-1)^{n-1} zeta'(-2n) pi^n (-2n-1) / (n-1)! is used there.
    """
    if isinstance(s, Jet):
        return (log_gamma_pi(s / 2) - (s / 2) * mp.log(mp.pi)).exp() * zeta_times_s_minus_1(s)
    s = _num(s)
    if mp.im(s) == 0 and mp.re(s) < 0 and mp.re(s) % 2 == 0:
        n = int(-mp.re(s)) // 2
        return 2 * (-1) ** (n - 1) * zeta(s, order=1) * mp.pi**n * (s - 1) / mp.factorial(n - 1)
    return mp.exp(log_gamma_pi(s / 2) - (s / 2) * mp.log(mp.pi)) * zeta_times_s_minus_1(s)


def hardy_xi(t):
    """Xi(t) = xi(1/2 + i t), real for real t (imaginary rounding dropped)."""
    return mp.re(xi_complete(mp.mpc(mp.mpf(1) / 2, t)))


# ---------------------------------------------------------------------------
# Dirichlet characters and L-functions


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod k given by its value table chi(1), ..., chi(k)."""

    modulus: int
    values: tuple

    def __post_init__(self):
        k = self.modulus
        if k < 1 or len(self.values) != k:
            raise ValueError("character table must list chi(1..k) for modulus k >= 1")
        vals = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        tol = 1e-9
        for r in range(1, k + 1):
            v = vals[r - 1]
            if gcd(r, k) > 1:
                if abs(v) > tol:
                    raise ValueError(f"chi({r}) must vanish since gcd({r}, {k}) > 1")
            elif abs(abs(v) - 1) > tol:
                raise ValueError(f"chi({r}) must have modulus 1")
        if abs(self(1) - 1) > tol:
            raise ValueError("chi(1) must equal 1")
        for a in range(1, k + 1):
            for b in range(1, k + 1):
                if abs(self(a * b) - self(a) * self(b)) > tol:
                    raise ValueError(f"table is not multiplicative at ({a}, {b})")

    def __call__(self, n: int) -> complex:
        return self.values[(n - 1) % self.modulus]

    @property
    def principal(self) -> bool:
        return all(abs(v - (1 if gcd(r, self.modulus) == 1 else 0)) < 1e-12 for r, v in enumerate(self.values, 1))

    def mp_value(self, n: int):
        v = self(n)
        return mp.mpf(v.real) if v.imag == 0 else mp.mpc(v.real, v.imag)


PRINCIPAL_MOD_1 = DirichletCharacter(1, (1,))
CHI_4 = DirichletCharacter(4, (1, 0, -1, 0))
BUILTIN_CHARACTERS = {"principal-1": PRINCIPAL_MOD_1, "chi4": CHI_4}


def dirichlet_l(s, chi: DirichletCharacter):
    """L(s, chi) = k^{-s} sum_r chi(r) zeta(s, r/k).

    At s = 1 for a non-principal character the Hurwitz poles cancel and the
    finite parts give L(1, chi) = -(1/k) sum_r chi(r) psi(r/k).
    """
    s = _num(s)
    k = chi.modulus
    if s == 1:
        if chi.principal:
            raise InadmissiblePointError("L(s, principal chi) has a pole at s = 1")
        total = mp.fsum(chi.mp_value(r) * _digamma(mp.mpf(r) / k) for r in range(1, k + 1) if chi(r) != 0)
        return -total / k
    total = mp.fsum(chi.mp_value(r) * hurwitz_zeta(s, mp.mpf(r) / k) for r in range(1, k + 1) if chi(r) != 0)
    return mp.power(k, -s) * total
