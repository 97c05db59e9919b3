"""Precision context, quadrature and series-acceleration primitives.

Scalars are mpmath ``mpf``/``mpc`` values. The working precision ``P`` (decimal
digits) lives in mpmath's global context and is changed only through
``set_precision`` or the ``precision`` context manager, so it is a property of
the evaluation context rather than of individual values.
"""

from __future__ import annotations

import contextlib
import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

import mpmath as mp

from .errors import NotAlternatingError, PVDivergenceError, QuadratureError

DEFAULT_PRECISION = 30
MIN_PRECISION = 15
MAX_PRECISION = 100


def _check_precision(digits: int) -> int:
    digits = int(digits)
    if not MIN_PRECISION <= digits <= MAX_PRECISION:
        raise ValueError(f"precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}], got {digits}")
    return digits


def set_precision(digits: int) -> None:
    mp.mp.dps = _check_precision(digits)


def get_precision() -> int:
    return mp.mp.dps


@contextlib.contextmanager
def precision(digits: int) -> Iterator[int]:
    """Temporarily run at ``digits`` decimal digits."""
    with mp.workdps(_check_precision(digits)):
        yield digits


def eps_tol(extra: int = 0) -> mp.mpf:
    """Tolerance of 10^{-(P - extra)} at the current precision."""
    return mp.mpf(10) ** (-(get_precision() - extra))


# ---------------------------------------------------------------------------
# Quadrature


@dataclass(frozen=True)
class QuadResult:
    value: mp.mpf | mp.mpc
    error: mp.mpf
    converged: bool
    panels: int


@lru_cache(maxsize=64)
def _gauss_legendre_cached(n: int, prec: int) -> tuple[tuple, tuple]:
    with mp.workprec(prec + 20):
        nodes, weights = [], []
        for i in range(1, n // 2 + 1):
            x = mp.cos(mp.pi * (i - mp.mpf(1) / 4) / (n + mp.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mp.mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(2) ** (-(prec + 10)):
                    break
            w = 2 / ((1 - x * x) * dp * dp)
            nodes += [x, -x]
            weights += [w, w]
        if n % 2:
            p0, p1 = mp.mpf(1), mp.mpf(0)
            for k in range(2, n + 1):
                p0, p1 = p1, (-(k - 1) * p0) / k
            dp = n * (-p0) / (-1)
            nodes.append(mp.mpf(0))
            weights.append(2 / (dp * dp))
    return tuple(+x for x in nodes), tuple(+w for w in weights)


def gauss_legendre(n: int) -> tuple[tuple, tuple]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    if n < 1:
        raise ValueError("rule size must be positive")
    return _gauss_legendre_cached(n, mp.mp.prec)


def _panel(f: Callable, a, b, n: int):
    nodes, weights = gauss_legendre(n)
    half = (b - a) / 2
    mid = (a + b) / 2
    total = mp.fsum(w * f(mid + half * x) for x, w in zip(nodes, weights))
    return half * total


def _panel_pair(f: Callable, a, b, n: int):
    lo = _panel(f, a, b, n)
    hi = _panel(f, a, b, 2 * n)
    if not mp.isfinite(hi):
        raise QuadratureError(f"integrand not finite on [{a}, {b}]")
    return hi, abs(hi - lo)


def integrate(
    f: Callable,
    a,
    b,
    tol=None,
    *,
    breakpoints: Sequence = (),
    degree: int = 20,
    max_panels: int = 400,
) -> QuadResult:
    """Adaptive composite Gauss-Legendre quadrature of f over [a, b].

    Each panel is evaluated with n and 2n nodes; the difference is its error
    estimate and the 2n value is kept. The panel with the largest estimate is
    bisected until the total estimate is below ``tol`` or ``max_panels`` is
    reached (then ``converged`` is False). ``b = mp.inf`` maps [a, inf) onto
    [0, 1) through t = a + u/(1-u).
    """
    a = mp.mpf(a)
    tol = eps_tol(2) if tol is None else mp.mpf(tol)
    if b == mp.inf:
        g = f

        def f(u):
            w = 1 - u
            return g(a + u / w) / (w * w)

        pts = [mp.mpf(0)] + sorted((mp.mpf(t) - a) / (1 + mp.mpf(t) - a) for t in breakpoints if t > a) + [mp.mpf(1)]
    else:
        b = mp.mpf(b)
        if b < a:
            r = integrate(f, b, a, tol, breakpoints=breakpoints, degree=degree, max_panels=max_panels)
            return QuadResult(-r.value, r.error, r.converged, r.panels)
        pts = [a] + sorted(mp.mpf(t) for t in breakpoints if a < t < b) + [b]
    heap = []
    for i, (lo, hi) in enumerate(zip(pts[:-1], pts[1:])):
        val, err = _panel_pair(f, lo, hi, degree)
        heapq.heappush(heap, (-err, i, lo, hi, val))
    counter = len(heap)
    while True:
        total_err = mp.fsum(-h[0] for h in heap)
        if total_err <= tol or len(heap) >= max_panels:
            break
        _, _, lo, hi, _ = heapq.heappop(heap)
        mid = (lo + hi) / 2
        for l, h in ((lo, mid), (mid, hi)):
            val, err = _panel_pair(f, l, h, degree)
            counter += 1
            heapq.heappush(heap, (-err, counter, l, h, val))
    # sum in position order for deterministic rounding
    ordered = sorted(heap, key=lambda h: h[2])
    value = mp.fsum(h[4] for h in ordered)
    return QuadResult(value, total_err, total_err <= tol, len(heap))


def fixed_rule(breakpoints: Sequence, degree: int) -> tuple[list, list]:
    """Composite Gauss-Legendre nodes and weights over consecutive breakpoints.

    Used where one rule is applied to many integrands (e.g. a kernel integrated
    against x^{s/2} for many s), so node values can be cached.
    """
    nodes, weights = gauss_legendre(degree)
    xs, ws = [], []
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        lo, hi = mp.mpf(lo), mp.mpf(hi)
        half, mid = (hi - lo) / 2, (hi + lo) / 2
        for x, w in zip(nodes, weights):
            xs.append(mid + half * x)
            ws.append(half * w)
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    return [xs[i] for i in order], [ws[i] for i in order]


# ---------------------------------------------------------------------------
# Extrapolation and principal values


def richardson(hs: Sequence, values: Sequence) -> tuple:
    """Neville extrapolation of values(h) to h = 0.

    Returns (limit, error) where error is the change made by the last
    extrapolation level.
    """
    if len(hs) != len(values) or not values:
        raise ValueError("need matching, non-empty h and value lists")
    hs = [mp.mpf(h) for h in hs]
    table = list(values)
    prev_best = table[-1]
    best = table[-1]
    n = len(table)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            table[i] = (hs[i - level] * table[i] - hs[i] * table[i - 1]) / (hs[i - level] - hs[i])
        prev_best, best = best, table[-1]
    return best, abs(best - prev_best)


@dataclass(frozen=True)
class PVResult:
    value: mp.mpf
    error: mp.mpf
    levels: int


def principal_value_pair(
    f: Callable,
    x,
    *,
    lower=0,
    eps0=mp.mpf("0.1"),
    tol=None,
    max_levels: int = 14,
    breakpoints: Sequence = (),
    degree: int = 20,
) -> PVResult:
    """Symmetric limit of the integral of f over [lower, 1-eps] and [1+eps, x].

    The parts outside 1 +- eps0 are integrated once. The inner parts are added
    as the folded integral of f(1-h) + f(1+h) over [eps_j, eps0] with
    eps_j = eps0 * 10^{-j}; the last three estimates are Richardson-extrapolated
    in eps until successive limits agree to ``tol``.
    """
    x = mp.mpf(x)
    lower = mp.mpf(lower)
    if x <= 1:
        raise ValueError("upper limit must exceed 1")
    if lower >= 1:
        raise ValueError("lower limit must lie below 1")
    eps0 = min(mp.mpf(eps0), (x - 1) / 2, (1 - lower) / 2)
    tol = eps_tol(4) if tol is None else mp.mpf(tol)
    qtol = tol / 10
    with mp.workdps(get_precision() + 10):
        outer = integrate(f, lower, 1 - eps0, qtol, breakpoints=breakpoints, degree=degree).value
        outer += integrate(f, 1 + eps0, x, qtol, breakpoints=breakpoints, degree=degree).value

        def folded(h):
            return f(1 - h) + f(1 + h)

        hs, vals, limits = [], [], []
        inner = mp.mpf(0)
        upper = eps0
        increments = []
        for j in range(1, max_levels + 1):
            eps = eps0 * mp.mpf(10) ** (-j)
            piece = integrate(folded, eps, upper, qtol, degree=degree).value
            increments.append(abs(piece))
            inner += piece
            upper = eps
            hs.append(eps)
            vals.append(outer + inner)
            if len(increments) >= 4 and increments[-1] > tol and increments[-1] > 2 * increments[-2] > 4 * increments[-3]:
                raise PVDivergenceError("not a PV-cancelling singularity: estimates grow as eps shrinks")
            if len(vals) >= 3:
                lim, _ = richardson(hs[-3:], vals[-3:])
                limits.append(lim)
                if len(limits) >= 2 and abs(limits[-1] - limits[-2]) < tol:
                    break
        else:
            if increments[-1] > tol and increments[-1] > increments[0]:
                raise PVDivergenceError("not a PV-cancelling singularity: estimates grow as eps shrinks")
        err = abs(limits[-1] - limits[-2]) if len(limits) >= 2 else mp.inf
    return PVResult(+limits[-1], +err, j)


# ---------------------------------------------------------------------------
# Alternating series


@dataclass(frozen=True)
class AccelResult:
    value: mp.mpf | mp.mpc
    error: mp.mpf
    terms_used: int


def _cvz(a: Sequence) -> mp.mpf:
    """Cohen-Villegas-Zagier weights applied to sum_{k>=0} (-1)^k a_k."""
    n = len(a)
    d = (3 + mp.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = mp.mpf(-1)
    c = -d
    s = mp.mpf(0)
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = (k + n) * (k - n) * b / ((k + mp.mpf(1) / 2) * (k + 1))
    return s / d


def accelerate_alternating(terms, n: int | None = None, *, check: bool = True) -> AccelResult:
    """Limit of an alternating series with decreasing magnitudes.

    ``terms`` is either a sequence of signed terms or a callable k -> term for
    k = 0, 1, 2, ...; the callable form uses ``n`` terms (default about 1.4P).
    The error estimate is the gap to a run with ~80% of the terms.
    """
    if callable(terms):
        n = n or int(1.4 * get_precision()) + 10
        seq = [terms(k) for k in range(n)]
    else:
        seq = list(terms)
    if len(seq) < 2:
        raise NotAlternatingError("need at least two terms")
    if check:
        for k in range(len(seq) - 1):
            t0, t1 = seq[k], seq[k + 1]
            if mp.im(t0) != 0 or mp.im(t1) != 0:
                raise NotAlternatingError("terms must be real")
            if t0 * t1 > 0 or (t0 == 0) != (t1 == 0):
                raise NotAlternatingError(f"terms {k} and {k + 1} do not alternate in sign")
            if abs(t1) > abs(t0) * (1 + mp.mpf(10) ** (-get_precision() // 2)):
                raise NotAlternatingError(f"magnitude increases at term {k + 1}")
    sign = 1 if seq[0] >= 0 else -1
    mags = [abs(t) for t in seq]
    full = sign * _cvz(mags)
    short = sign * _cvz(mags[: max(2, (4 * len(mags)) // 5)])
    return AccelResult(full, abs(full - short), len(mags))


# ---------------------------------------------------------------------------
# Root bracketing


def find_sign_changes(f: Callable, a, b, step) -> list[tuple]:
    """Brackets (t1, t2) with f(t1) f(t2) < 0 on the grid a, a+step, ..., b."""
    step = mp.mpf(step)
    if step <= 0:
        raise ValueError("step must be positive")
    a, b = mp.mpf(a), mp.mpf(b)
    count = int(mp.floor((b - a) / step))
    grid = [a + k * step for k in range(count + 1)]
    if grid and grid[-1] < b:
        grid.append(b)
    out = []
    prev_t, prev_v = None, None
    for t in grid:
        v = mp.re(f(t))
        if prev_v is not None and prev_v * v < 0:
            out.append((prev_t, t))
        prev_t, prev_v = t, v
    return out


def refine_bracket(f: Callable, bracket: tuple, tol) -> mp.mpf:
    """Bisect a sign-change bracket down to width ``tol``; returns the midpoint."""
    lo, hi = mp.mpf(bracket[0]), mp.mpf(bracket[1])
    flo, fhi = mp.re(f(lo)), mp.re(f(hi))
    if flo * fhi >= 0:
        raise ValueError(f"[{lo}, {hi}] is not a sign-change bracket")
    tol = mp.mpf(tol)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = mp.re(f(mid))
        if fm == 0:
            return mid
        if flo * fm < 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return (lo + hi) / 2
