"""Prime-power side and zero side of the explicit formula for psi(x).

psi(x) = 1/2 [sum_{p^n < x} + sum_{p^n <= x}] log p / (p^n - 1)
       = log(x - 1) - sum_{Im rho > 0} PV int_0^x (t^{rho-1} + t^{-rho})/(t - 1) dt
         + int_x^inf dt / (t (t - 1)(t^2 - 1)) + log[-zeta(B)].

For rho = 1/2 + i gamma the pair integrand is 2 cos(gamma log t) / (sqrt(t)(t - 1)),
so conjugate zeros never enter separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import mpmath as mp

from .errors import InadmissiblePointError, ZeroFileError
from .numerics import (
    MIN_PRECISION,
    find_sign_changes,
    get_precision,
    integrate,
    precision,
    principal_value_pair,
    refine_bracket,
)
from .special import hardy_xi, zeta

MAX_COMPUTED_ZEROS = 200
DEFAULT_CUTOFF = 10**4
# the comparison needs a few digits; these keep each zero term well below that
ZERO_TERM_TOL = mp.mpf("1e-12")


# ---------------------------------------------------------------------------
# Zeros


@dataclass(frozen=True)
class ZeroList:
    """Ascending positive ordinates gamma_k of zeros rho_k = 1/2 + i gamma_k."""

    ordinates: tuple
    source: str = "file"

    def __post_init__(self):
        prev = None
        for k, g in enumerate(self.ordinates, 1):
            if g <= 14:
                raise ZeroFileError(f"ordinate #{k} = {g} is not above 14")
            if prev is not None and g <= prev:
                raise ZeroFileError(f"ordinate #{k} = {g} does not increase")
            prev = g

    @property
    def count(self) -> int:
        return len(self.ordinates)

    def first(self, k: int) -> tuple:
        if k > self.count:
            raise ValueError(f"requested {k} zeros but only {self.count} are available")
        return self.ordinates[:k]


def load_zeros(path) -> ZeroList:
    """Read one ordinate per line; '#' comments and blank lines are skipped."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ZeroFileError(f"{path}: {exc.strerror}") from None
    values, prev = [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            g = mp.mpf(line)
        except (ValueError, TypeError):
            raise ZeroFileError(f"{path}:{lineno}: not a number: {raw.strip()!r}") from None
        if not mp.isfinite(g) or g <= 14:
            raise ZeroFileError(f"{path}:{lineno}: ordinate {line} must be a finite value above 14")
        if prev is not None and g <= prev:
            raise ZeroFileError(f"{path}:{lineno}: ordinate {line} does not exceed the previous {mp.nstr(prev, 12)}")
        values.append(g)
        prev = g
    return ZeroList(tuple(values), "file")


def default_zeros_path() -> Path:
    return Path(__file__).with_name("data") / "zeta_zeros.txt"


def compute_zeros(count: int, step=mp.mpf("0.2"), tol=mp.mpf("1e-6")) -> ZeroList:
    """First ``count`` sign changes of Xi(t) = xi(1/2 + it), bisected to ``tol``.

    Xi is real on the critical line; a pair of zeros closer than ``step`` is
    missed, which at heights below 400 does not occur for step 0.2.
    """
    if not 1 <= count <= MAX_COMPUTED_ZEROS:
        raise ValueError(f"count must lie in 1..{MAX_COMPUTED_ZEROS}")
    step = mp.mpf(step)
    found = []
    lo = mp.mpf(14)
    while len(found) < count:
        # scan in windows; the zero density grows like log(t)/(2 pi)
        hi = lo + 20
        for br in find_sign_changes(hardy_xi, lo, hi, step):
            found.append(refine_bracket(hardy_xi, br, tol))
            if len(found) == count:
                break
        lo = hi
    return ZeroList(tuple(found), "internal")


# ---------------------------------------------------------------------------
# Prime side


def _spf_sieve(n: int) -> list[int]:
    spf = list(range(n + 1))
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == p:
            for m in range(p * p, n + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def von_mangoldt(n: int) -> mp.mpf:
    """log p if n = p^k, else 0."""
    if n < 1:
        raise ValueError("von Mangoldt needs n >= 1")
    if n == 1:
        return mp.mpf(0)
    p = next((d for d in range(2, math.isqrt(n) + 1) if n % d == 0), n)
    m = n
    while m % p == 0:
        m //= p
    return mp.log(p) if m == 1 else mp.mpf(0)


def prime_powers(limit: int) -> list[tuple[int, int]]:
    """(p^k, p) for all prime powers p^k <= limit, ascending."""
    if limit < 2:
        return []
    spf = _spf_sieve(limit)
    out = []
    for n in range(2, limit + 1):
        p = spf[n]
        m = n
        while m % p == 0:
            m //= p
        if m == 1:
            out.append((n, p))
    return out


def psi_prime_side(x) -> mp.mpf:
    """1/2 [sum_{p^n < x} + sum_{p^n <= x}] log p / (p^n - 1)."""
    x = mp.mpf(x)
    if x <= 1:
        raise InadmissiblePointError("psi(x) needs x > 1")
    total = mp.mpf(0)
    for q, p in prime_powers(int(mp.floor(x))):
        w = mp.log(p) / (q - 1)
        total += w / 2 if q == x else w
    return total


# ---------------------------------------------------------------------------
# Zero side


def _near_part(rho, delta):
    """int_0^delta (t^{rho-1} + t^{-rho})/(t - 1) dt, expanding 1/(t-1) = -sum t^j."""
    eps = mp.mpf(10) ** (-get_precision() - 5)
    total = mp.mpf(0)
    j = 0
    while True:
        a, b = rho + j, 1 - rho + j
        term = delta**a / a + delta**b / b
        total -= term
        if abs(term) < eps * max(1, abs(total)):
            return total
        j += 1


def _period_breaks(gamma, lo, hi) -> list:
    # cos(gamma log t) has period 2 pi/gamma in log t
    out = []
    k = int(mp.ceil(mp.log(lo) * gamma / (2 * mp.pi)))
    while True:
        t = mp.exp(2 * k * mp.pi / gamma)
        if t >= hi:
            return out
        if t > lo:
            out.append(t)
        k += 1


_TERM_CACHE: dict[tuple, mp.mpf] = {}


def zero_pair_term(gamma, x, *, path: str = "real", tol=ZERO_TERM_TOL, eps0=mp.mpf("0.1")):
    """PV int_0^x (t^{rho-1} + t^{-rho})/(t - 1) dt for rho = 1/2 + i gamma.

    [0, 1/2] is done by the geometric series of 1/(t - 1); the principal value
    on [1/2, x] by the symmetric eps-pair. ``path="complex"`` evaluates the
    integrand in complex arithmetic instead of the real cosine form and
    returns a complex number whose imaginary part should vanish.
    """
    gamma, x = mp.mpf(gamma), mp.mpf(x)
    if gamma <= 0:
        raise ValueError("ordinate must be positive")
    if x <= 1:
        raise InadmissiblePointError("zero term needs x > 1")
    if path not in ("real", "complex"):
        raise ValueError("path is 'real' or 'complex'")
    key = (gamma, x, path, mp.mpf(tol), mp.mpf(eps0), get_precision())
    if key in _TERM_CACHE:
        return _TERM_CACHE[key]
    # work at a few digits beyond the tolerance, not at the full precision
    digits = min(get_precision(), max(MIN_PRECISION, int(-mp.log10(mp.mpf(tol))) + 5))
    with precision(digits):
        value = _zero_pair_term(gamma, x, path, tol, eps0)
    _TERM_CACHE[key] = value
    return value


def _zero_pair_term(gamma, x, path, tol, eps0):
    rho = mp.mpc(mp.mpf(1) / 2, gamma)
    delta = mp.mpf(1) / 2
    if path == "real":

        def f(t):
            return 2 * mp.cos(gamma * mp.log(t)) / (mp.sqrt(t) * (t - 1))

    else:

        def f(t):
            return (mp.power(t, rho - 1) + mp.power(t, -rho)) / (t - 1)

    near = _near_part(rho, delta)
    if path == "real":
        near = mp.re(near)
    pv = principal_value_pair(
        f, x, lower=delta, tol=tol, eps0=eps0, breakpoints=_period_breaks(gamma, delta, x), degree=16
    )
    return near + pv.value


def zero_pair_term_regularized(gamma, x, tol=ZERO_TERM_TOL):
    """Same quantity without any principal value.

    Subtracting 2/(t - 1) leaves an integrable integrand, and
    PV int_0^x 2/(t - 1) dt = 2 log(x - 1). In v = -log t the remainder reads
    (2 e^{v/2} cos(gamma v) - 2) e^{-v} / (e^{-v} - 1), integrated over
    [-log x, inf).
    """
    gamma, x = mp.mpf(gamma), mp.mpf(x)
    with mp.workdps(get_precision() + 10):

        def g(v):
            if v == 0:
                return mp.mpf(-1)
            e = mp.exp(-v)
            return (2 * mp.exp(v / 2) * mp.cos(gamma * v) - 2) * e / (e - 1)

        a = -mp.log(x)
        # stop where e^{-v/2} drops below tol; panels span two periods of cos(gamma v)
        v_end = 2 * mp.log(1 / mp.mpf(tol)) + 10
        step = 4 * mp.pi / gamma
        breaks = [a + k * step for k in range(1, int((v_end - a) / step))]
        head = integrate(g, a, v_end, tol / 10, breakpoints=breaks + [0], degree=20).value
        # the -2 e^{-v}/(e^{-v} - 1) part keeps a 2 e^{-v} tail beyond v_end
        tail = -2 * mp.log(1 - mp.exp(-v_end))
        value = head + tail + 2 * mp.log(x - 1)
    return +value


def tail_integral(x) -> mp.mpf:
    """int_x^inf dt / (t (t - 1)(t^2 - 1)), as int_0^{1/x} u^2 / ((1 - u)(1 - u^2)) du."""
    x = mp.mpf(x)
    if x <= 1:
        raise InadmissiblePointError("tail integral diverges for x <= 1")
    return integrate(lambda u: u * u / ((1 - u) * (1 - u * u)), 0, 1 / x).value


def tail_integral_closed(x) -> mp.mpf:
    """Partial-fraction antiderivative evaluated between x and infinity."""
    x = mp.mpf(x)
    return -mp.log(x) + mp.mpf(3) / 4 * mp.log(x - 1) + 1 / (2 * (x - 1)) + mp.log(x + 1) / 4


@dataclass(frozen=True)
class LogNegZeta:
    value: mp.mpf
    tail_bound: mp.mpf
    cutoff: int


_LNZ_CACHE: dict[tuple, LogNegZeta] = {}


def log_neg_zeta_b(cutoff: int = DEFAULT_CUTOFF) -> LogNegZeta:
    """-gamma + sum_{n=2}^N Lambda(n)/(n(n-1)) with a bound on the omitted tail.

    The tail sum_{n>N} log n/(n(n-1)) is at most log N/(N-1) + log(N/(N-1)).
    """
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    key = (cutoff, get_precision())
    if key in _LNZ_CACHE:
        return _LNZ_CACHE[key]
    total = mp.fsum(mp.log(p) / (mp.mpf(q) * (q - 1)) for q, p in prime_powers(cutoff))
    N = mp.mpf(cutoff)
    bound = mp.log(N) / (N - 1) + mp.log(N / (N - 1))
    res = _LNZ_CACHE[key] = LogNegZeta(total - mp.euler, bound, cutoff)
    return res


def log_neg_zeta_b_series() -> mp.mpf:
    """-gamma - sum_{n>=2} zeta'(n)/zeta(n); terms decay like log 2 / 2^n."""
    eps = mp.mpf(10) ** (-get_precision() - 3)
    total = -mp.euler
    n = 2
    while True:
        term = zeta(n, 1) / zeta(n)
        total -= term
        if abs(term) < eps:
            return total
        n += 1


@dataclass(frozen=True)
class PsiComparison:
    x: mp.mpf
    prime_side: mp.mpf
    explicit_side: mp.mpf
    zeros_used: int
    difference: mp.mpf
    breakdown: dict = field(default_factory=dict)


def psi_explicit_side(x, zeros: ZeroList, K: int | None = None, cutoff: int = DEFAULT_CUTOFF) -> PsiComparison:
    """Explicit side with the first K zero pairs, packaged with the prime side."""
    x = mp.mpf(x)
    if x <= 1:
        raise InadmissiblePointError("explicit formula needs x > 1")
    K = zeros.count if K is None else K
    gammas = zeros.first(K)
    log_term = mp.log(x - 1)
    zero_sum = mp.fsum(zero_pair_term(g, x) for g in gammas)
    tail = tail_integral(x)
    const = log_neg_zeta_b(cutoff)
    explicit = log_term - zero_sum + tail + const.value
    prime = psi_prime_side(x)
    breakdown = {
        "log_term": log_term,
        "zero_sum": zero_sum,
        "tail_integral": tail,
        "constant": const.value,
        "constant_tail_bound": const.tail_bound,
    }
    return PsiComparison(x, prime, explicit, K, abs(prime - explicit), breakdown)
