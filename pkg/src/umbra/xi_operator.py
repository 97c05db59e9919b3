"""The operator-valued xi(B + s) as an integral over theta-function derivatives.

xi(B + s) = int_1^inf phi(x) (x^{s/2} + x^{-s/2}) dx with
phi(x) = D(x) k(x), D(x) = d/dx[x^{3/2} psi_theta'(x)] and k(x) the image of
x^{-B/2} (plain) or sin(pi B) x^{-B/2} (sin-weighted) under the moment rule.

The integral is taken in u = log x, where x^{it/2} = e^{itu/2} oscillates at a
constant rate, with a fixed composite Gauss-Legendre rule whose phi values are
cached: many values of s reuse one table.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import mpmath as mp

from .errors import InadmissiblePointError, QuadratureError
from .numerics import find_sign_changes, fixed_rule, get_precision, refine_bracket
from .special import theta_psi

PLAIN = "plain"
SIN_WEIGHTED = "sin-weighted"
FLAVORS = (PLAIN, SIN_WEIGHTED)

# panel width in u = log x
_PANEL = mp.mpf(1) / 4
# guard digits for the cached tables: xi(B + it) is ~e^{-pi t/4}, so values
# near t = 60 are obtained by cancellation
_GUARD = 15


def _check_flavor(flavor: str) -> None:
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; choose {' or '.join(FLAVORS)}")


def _kernel_u(u, flavor: str):
    """k(e^u); the plain kernel u/(e^{u/2} - 1) tends to 2 at u = 0."""
    if flavor == PLAIN:
        return mp.mpf(2) if u == 0 else u / mp.expm1(u / 2)
    return 2 * mp.pi / (mp.exp(u / 2) + 1)


def theta_d(x):
    """D(x) = (3/2) sqrt(x) psi_theta'(x) + x^{3/2} psi_theta''(x)."""
    r = mp.sqrt(x)
    return mp.mpf(3) / 2 * r * theta_psi(x, 1) + x * r * theta_psi(x, 2)


def phi_kernel(x, flavor: str = PLAIN):
    """phi(x) = D(x) k(x) for x >= 1 (x = 1 through the kernel's limit)."""
    _check_flavor(flavor)
    x = mp.mpf(x)
    if x < 1:
        raise InadmissiblePointError(f"phi is defined for x >= 1 (got {mp.nstr(x, 10)})")
    return theta_d(x) * _kernel_u(mp.log(x), flavor)


def _upper_u(P: int, re_bound) -> mp.mpf:
    """u_max with phi(x) x^{re_bound/2} below 10^{-P-guard} beyond x = e^{u_max}."""
    target = (P + _GUARD) * mp.log(10)
    x = mp.mpf(10)
    for _ in range(50):
        x_new = (target + (re_bound / 2 + 3) * mp.log(x) + 2 * mp.log(mp.pi)) / mp.pi
        if abs(x_new - x) < 1e-6:
            break
        x = x_new
    return mp.ceil(mp.log(x) / _PANEL) * _PANEL


@dataclass
class XiKernel:
    """Cached quadrature table for one flavor: nodes u_j, weights w_j phi(e^{u_j}) e^{u_j}.

    ``degree`` is the Gauss-Legendre order per panel; ``re_bound`` bounds the
    |Re s| the table is accurate for.
    """

    flavor: str = PLAIN
    degree: int = 30
    re_bound: int = 20
    precision: int = field(default_factory=get_precision)
    nodes: list = field(init=False, repr=False)
    weights: list = field(init=False, repr=False)

    def __post_init__(self):
        _check_flavor(self.flavor)
        with mp.workdps(self.precision + _GUARD):
            u_max = _upper_u(self.precision, self.re_bound)
            count = int(u_max / _PANEL)
            us, ws = fixed_rule([k * _PANEL for k in range(count + 1)], self.degree)
            self.nodes = us
            self.weights = []
            for u, w in zip(us, ws):
                x = mp.exp(u)
                self.weights.append(w * x * theta_d(x) * _kernel_u(u, self.flavor))

    def integrate(self, s):
        """int phi(x)(x^{s/2} + x^{-s/2}) dx on this table (at guarded precision)."""
        with mp.workdps(self.precision + _GUARD):
            s = mp.mpmathify(s)
            if mp.im(s) == 0:
                h = mp.re(s) / 2
                total = mp.fsum(w * 2 * mp.cosh(h * u) for u, w in zip(self.nodes, self.weights))
            elif mp.re(s) == 0:
                h = mp.im(s) / 2
                total = mp.fsum(w * 2 * mp.cos(h * u) for u, w in zip(self.nodes, self.weights))
            else:
                h = s / 2
                total = mp.fsum(w * 2 * mp.cosh(h * u) for u, w in zip(self.nodes, self.weights))
        return total


_TABLES: dict[tuple, XiKernel] = {}


def kernel_table(flavor: str = PLAIN, degree: int = 30, re_bound: int = 20) -> XiKernel:
    P = get_precision()
    key = (flavor, degree, re_bound, P)
    table = _TABLES.get(key)
    if table is None:
        table = _TABLES[key] = XiKernel(flavor, degree, re_bound, P)
    return table


def _degrees_for(tol) -> tuple[int, int]:
    """Panel orders for a requested tolerance; the pair gives the error estimate."""
    if tol is None:
        return 30, 40
    # xi(B + it) near t = 60 is ~1e-19, so even loose tolerances need enough
    # nodes per panel to follow cos(t u / 2); the tolerance is relative
    digits = max(4, int(-mp.log10(mp.mpf(tol))))
    lo = min(30, 16 + digits)
    return lo, lo + 8


@dataclass(frozen=True)
class XiValue:
    value: mp.mpf | mp.mpc
    error: mp.mpf


def xi_b_with_error(s, flavor: str = PLAIN, tol=None) -> XiValue:
    """xi(B + s) and the difference between two quadrature orders."""
    _check_flavor(flavor)
    s = mp.mpmathify(s)
    bound = max(20, int(mp.ceil(abs(mp.re(s)))) + 1)
    if bound > 20:
        bound = 10 * int(mp.ceil(mp.mpf(bound) / 10))
    lo, hi = _degrees_for(tol)
    a = kernel_table(flavor, lo, bound).integrate(s)
    b = kernel_table(flavor, hi, bound).integrate(s)
    err = abs(a - b)
    if tol is not None and err > max(mp.mpf(tol), abs(b) * mp.mpf(10) ** (-get_precision() + 4)):
        raise QuadratureError(f"xi(B + s) quadrature error {mp.nstr(err, 3)} exceeds tol at s = {mp.nstr(s, 8)}")
    return XiValue(+b, +err)


def xi_b(s, flavor: str = PLAIN, tol=None):
    """xi(B + s) by the theta-kernel integral; symmetric in s -> -s."""
    return xi_b_with_error(s, flavor, tol).value


_AXIS_CACHE: dict[tuple, mp.mpf] = {}


def xi_on_axis(t, flavor: str = PLAIN, tol=None) -> mp.mpf:
    """t -> xi(B + it), real by the even cosine integrand."""
    lo, _ = _degrees_for(tol)
    t = mp.mpf(t)
    key = (t, flavor, lo, get_precision())
    val = _AXIS_CACHE.get(key)
    if val is None:
        val = _AXIS_CACHE[key] = +kernel_table(flavor, lo, 20).integrate(mp.mpc(0, t))
    return val


def scan_xi_zeros(t_max, step, flavor: str = PLAIN, tol=None, refine_tol=mp.mpf("1e-6")) -> list:
    """Refined ordinates of sign changes of t -> xi(B + it) on (0, t_max].

    A step wider than the gaps between zeros misses pairs; a step larger than
    t_max yields an empty list with a warning.
    """
    t_max, step = mp.mpf(t_max), mp.mpf(step)
    if t_max <= 0 or step <= 0:
        raise ValueError("t_max and step must be positive")
    if step > t_max:
        warnings.warn(f"step {mp.nstr(step, 6)} exceeds t_max {mp.nstr(t_max, 6)}; no brackets scanned", stacklevel=2)
        return []

    def f(t):
        return xi_on_axis(t, flavor, tol)

    brackets = find_sign_changes(f, 0, t_max, step)
    return [refine_bracket(f, br, refine_tol) for br in brackets]


def _moment_t_max(n: int, tol) -> mp.mpf:
    # |xi(B + it)| ~ e^{-pi t/4} t^{7/4}; add the t^n weight
    t = mp.mpf(20)
    target = -mp.log(mp.mpf(tol)) + 5
    for _ in range(50):
        t = 4 * (target + (n + 2) * mp.log(t)) / mp.pi
    return mp.ceil(t)


def moment_c(n: int, flavor: str = PLAIN, tol=mp.mpf("1e-12")) -> mp.mpf:
    """C_n = (1/(pi n!)) int_{-inf}^{inf} xi(B + it) t^n dt by symmetric quadrature on [-T, T].

    Both halves are evaluated, so odd moments vanish through the symmetry of
    xi(B + it) rather than by assumption.
    """
    if n < 0 or n > 4:
        raise ValueError("moment_c supports 0 <= n <= 4")
    # one T for every n keeps the node set, and so the xi cache, shared
    T = int(_moment_t_max(4, tol))
    T += T % 2
    xs, ws = fixed_rule(list(range(-T, T + 1, 2)), 20)
    total = mp.fsum(w * xi_on_axis(t, flavor) * t**n for t, w in zip(xs, ws))
    return total / (mp.pi * mp.factorial(n))
