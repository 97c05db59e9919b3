"""Registry of analytic function families usable as summands.

Each family knows how to build a Jet at a point, which is all the summation
engine needs: f'(k+a) is the order-1 coefficient and the Bernoulli moment
series at N+a uses the full jet. A family also declares the decay behaviour
of f' that decides the default summation mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import mpmath as mp

from . import special
from .errors import InadmissiblePointError, RegistryError
from .jets import Jet

# decay classes of f'(n + a) as n grows
EXPONENTIAL = "exponential"  # absolutely summable, geometric
ALTERNATING = "alternating"  # sign-alternating, slowly decreasing
ALGEBRAIC = "algebraic"  # power-law or growing: needs the shifted form
ENTIRE_GROWING = "entire-growing"  # derivatives grow with the shift: moment series only


@dataclass(frozen=True)
class OracleId:
    """A family name plus parameters, e.g. OracleId.make("power", alpha=-1)."""

    name: str
    params: tuple = ()

    @classmethod
    def make(cls, name: str, **params) -> "OracleId":
        return cls(name, tuple(sorted(params.items())))

    def param(self, key: str, default=None):
        return dict(self.params).get(key, default)

    def __str__(self) -> str:
        if not self.params:
            return self.name
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"


@dataclass(frozen=True)
class Oracle:
    ident: OracleId
    build: Callable[[Jet], Jet]
    decay: str
    check: Callable = field(default=lambda x: None)
    # jet of f' where f itself may leave the real branch (log of a negative value)
    deriv_build: Callable | None = None

    def jet(self, a, order: int) -> Jet:
        self.check(a)
        return self.build(Jet.variable(a, order))

    def value(self, x):
        return self.jet(x, 0).value

    def deriv(self, x):
        if self.deriv_build is not None:
            self.check(x)
            return self.deriv_build(Jet.variable(x, 0)).value
        return self.jet(x, 1).coeffs[1]


def _num(x):
    if isinstance(x, (mp.mpf, mp.mpc)):
        return x
    if isinstance(x, complex):
        return mp.mpc(x)
    if isinstance(x, str):
        return mp.mpmathify(x)
    if hasattr(x, "numerator") and not isinstance(x, int):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def _near_int(x, tol_digits: int = 2) -> bool:
    tol = mp.mpf(10) ** (-(mp.mp.dps // tol_digits))
    return mp.im(x) == 0 and abs(x - mp.nint(mp.re(x))) < tol


def _positive_real(expr_name: str, shift):
    def check(x):
        y = x + shift
        if mp.im(y) == 0 and mp.re(y) <= 0:
            raise InadmissiblePointError(f"{expr_name} requires x + c > 0 (got {mp.nstr(y, 10)})")

    return check


def _sin_zero(c, removable_at_origin: bool = False):
    def check(x):
        if removable_at_origin and x == 0:
            return
        if _near_int(c * x / mp.pi):
            raise InadmissiblePointError(f"sin({mp.nstr(c, 8)} x) vanishes at x = {mp.nstr(x, 10)}")

    return check


def _gamma_pole(c, d):
    def check(x):
        y = c * x + d
        if mp.im(y) == 0 and mp.re(y) < 0 and _near_int(y):
            raise InadmissiblePointError(f"Pi has a pole at {mp.nstr(y, 10)}")

    return check


def _zeta_pole(c):
    def check(x):
        y = x + c
        if mp.im(y) == 0 and abs(y - 1) < mp.mpf(10) ** (-(mp.mp.dps // 2)):
            raise InadmissiblePointError("zeta has a pole at x + c = 1")

    return check


def _build_exp(p):
    c = _num(p.get("c", -1))
    decay = EXPONENTIAL if mp.re(c) < 0 else ENTIRE_GROWING
    return (lambda X: (X * c).exp()), decay, None


def _build_power(p):
    alpha = _num(p.get("alpha", -1))
    c = _num(p.get("c", 0))
    if mp.im(alpha) == 0 and alpha == int(alpha) and alpha >= 0:
        k = int(alpha)
        return (lambda X: (X + c) ** k), ALGEBRAIC, None
    return (lambda X: (X + c) ** alpha), ALGEBRAIC, _positive_real("power", c)


def _build_log(p):
    c = _num(p.get("c", 0))
    return (lambda X: (X + c).log()), ALGEBRAIC, _positive_real("log", c)


def _build_xlogx(p):
    c = _num(p.get("c", 0))

    def f(X):
        Y = X + c
        return Y * Y.log()

    return f, ALGEBRAIC, _positive_real("x log x", c)


def _build_power_log(p):
    alpha = _num(p.get("alpha", 0))
    c = _num(p.get("c", 0))

    def f(X):
        Y = X + c
        return (Y**alpha) * Y.log()

    return f, ALGEBRAIC, _positive_real("x^alpha log x", c)


def _build_sin_over_x(p):
    c = _num(p.get("c", mp.pi))
    return (lambda X: (X * c).sin() / X), ALTERNATING, None


def _build_sin_kernel(p):
    y = _num(p.get("y", 2))
    if y <= 1:
        raise InadmissiblePointError("sin-kernel needs y > 1")
    ly = mp.log(y)
    return (lambda X: (X * mp.pi).sin() * (X * (-ly)).exp()), EXPONENTIAL, None


def _build_log_sin(p):
    c = _num(p.get("c", mp.pi / 2))

    def dlog(X):
        s, co = (X * c).sincos()
        return co * c / s

    return (lambda X: (X * c).sin().log()), ALGEBRAIC, _sin_zero(c), dlog


def _build_xcot(p):
    c = _num(p.get("c", mp.pi))

    def f(X):
        s, co = (X * c).sincos()
        return (X * c) * co / s

    return f, ALGEBRAIC, _sin_zero(c, removable_at_origin=True)


def _build_cot(p):
    c = _num(p.get("c", mp.pi))

    def f(X):
        s, co = (X * c).sincos()
        return co / s

    return f, ALGEBRAIC, _sin_zero(c)


def _build_log_zeta(p):
    c = _num(p.get("c", 0))
    return (lambda X: special.zeta(X + c).log()), ALGEBRAIC, _zeta_pole(c), _build_zeta_log_deriv(p)[0]


def _build_zeta_log_deriv(p):
    c = _num(p.get("c", 0))

    def f(X):
        # one extra order, then differentiate log zeta
        Y = Jet.variable(X.point, X.order + 1) + c
        z = special.zeta(Y)
        return _logderiv(z)

    return f, ALGEBRAIC, _zeta_pole(c)


def _logderiv(z: Jet) -> Jet:
    return z.differentiate() / z.truncate(z.order - 1)


def _build_log_gamma_pi(p):
    c = _num(p.get("c", 1))
    d = _num(p.get("d", 0))
    return (lambda X: special.log_gamma_pi(X * c + d)), ALGEBRAIC, _gamma_pole(c, d)


def _build_digamma_pi(p):
    c = _num(p.get("c", 1))
    d = _num(p.get("d", 0))
    return (lambda X: special.digamma_pi(X * c + d)), ALGEBRAIC, _gamma_pole(c, d)


def _build_x_digamma_pi(p):
    c = _num(p.get("c", 1))

    def f(X):
        Y = X * c
        return Y * special.digamma_pi(Y)

    return f, ALGEBRAIC, _gamma_pole(c, 0)


_FAMILIES: dict[str, tuple[Callable, str]] = {
    "exp": (_build_exp, "e^{c x}; params c (complex allowed)"),
    "exp-neg": (lambda p: _build_exp({"c": -1}), "e^{-x}"),
    "power": (_build_power, "(x + c)^alpha; params alpha, c"),
    "recip": (lambda p: _build_power({"alpha": -1, "c": p.get("c", 0)}), "1/(x + c)"),
    "log": (_build_log, "log(x + c)"),
    "xlogx": (_build_xlogx, "(x + c) log(x + c)"),
    "power-log": (_build_power_log, "(x + c)^alpha log(x + c)"),
    "sin-over-x": (_build_sin_over_x, "sin(c x)/x, default c = pi"),
    "sin-kernel": (_build_sin_kernel, "sin(pi x) y^{-x}; param y > 1"),
    "log-sin": (_build_log_sin, "log sin(c x)"),
    "xcot": (_build_xcot, "(c x) cot(c x)"),
    "cot": (_build_cot, "cot(c x)"),
    "log-zeta": (_build_log_zeta, "log zeta(x + c)"),
    "zeta-log-deriv": (_build_zeta_log_deriv, "zeta'(x + c)/zeta(x + c)"),
    "log-gamma-pi": (_build_log_gamma_pi, "log Pi(c x + d)"),
    "digamma-pi": (_build_digamma_pi, "Pi'/Pi(c x + d)"),
    "x-digamma-pi": (_build_x_digamma_pi, "(c x) Pi'(c x)/Pi(c x)"),
}


def oracle_names() -> list[str]:
    return sorted(_FAMILIES)


def describe(name: str) -> str:
    return _FAMILIES[name][1]


def get_oracle(ident: OracleId | str, **params) -> Oracle:
    if isinstance(ident, str):
        ident = OracleId.make(ident, **params)
    try:
        builder = _FAMILIES[ident.name][0]
    except KeyError:
        raise RegistryError(f"unknown oracle {ident.name!r}; known: {', '.join(oracle_names())}") from None
    build, decay, check, *rest = builder(dict(ident.params))
    return Oracle(ident, build, decay, check or (lambda x: None), rest[0] if rest else None)


def jet_of(ident: OracleId | str, a, order: int, **params) -> Jet:
    """Jet of a registered family at point a."""
    return get_oracle(ident, **params).jet(_num(a), order)
