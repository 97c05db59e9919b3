"""Exact Bernoulli numbers with B_1 = +1/2, Bernoulli polynomials, moments.

The Akiyama-Tanigawa recurrence produces the B_1 = +1/2 convention directly,
so no sign adjustment is needed. The equivalent characterisation used in the
tests is the reflection identity sum_k C(n,k) (-1)^k B_k = B_n.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath as mp

from .errors import CapacityError

DEFAULT_CAP = 256


def _akiyama_tanigawa(n_max: int) -> tuple[Fraction, ...]:
    row = [Fraction(0)] * (n_max + 1)
    out = []
    for m in range(n_max + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    return tuple(out)


class BernoulliTable:
    """Immutable table of exact B_0..B_{n_max}."""

    def __init__(self, n_max: int = DEFAULT_CAP):
        if n_max < 1:
            raise ValueError("cap must be at least 1")
        self.n_max = n_max
        self._values = _akiyama_tanigawa(n_max)
        self._mp_cache: dict[tuple[int, int], mp.mpf] = {}

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, n: int) -> Fraction:
        return self.number(n)

    def number(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("Bernoulli index must be non-negative")
        if n > self.n_max:
            raise CapacityError(f"B_{n} exceeds the table cap {self.n_max}; build a larger BernoulliTable")
        return self._values[n]

    def moment(self, n: int) -> mp.mpf:
        """B_n rounded to the current working precision."""
        key = (n, mp.mp.prec)
        val = self._mp_cache.get(key)
        if val is None:
            b = self.number(n)
            val = mp.mpf(b.numerator) / b.denominator
            self._mp_cache[key] = val
        return val

    def minus_convention(self, n: int) -> Fraction:
        """B_n with B_1 = -1/2, i.e. B_n(0)."""
        return -self.number(n) if n == 1 else self.number(n)


_TABLE = BernoulliTable(DEFAULT_CAP)


def default_table() -> BernoulliTable:
    return _TABLE


def set_default_cap(n_max: int) -> BernoulliTable:
    """Rebuild the shared table with a different cap."""
    global _TABLE
    if n_max != _TABLE.n_max:
        _TABLE = BernoulliTable(n_max)
    return _TABLE


def bernoulli_number(n: int) -> Fraction:
    return _TABLE.number(n)


def moment(n: int) -> mp.mpf:
    return _TABLE.moment(n)


def polynomial_coefficients(n: int) -> list[Fraction]:
    """Coefficients a_k of B_n(x) = sum_k a_k x^k (B_n(1) = B_n in the plus convention)."""
    return [comb(n, k) * _TABLE.minus_convention(n - k) for k in range(n + 1)]


def bernoulli_polynomial(n: int, x, periodic: bool = False):
    """B_n(x), or the periodic B_n(x - floor x) when ``periodic`` is set.

    Exact ``Fraction``/``int`` arguments give an exact ``Fraction``.
    """
    coeffs = polynomial_coefficients(n)
    exact = isinstance(x, (int, Fraction))
    if periodic:
        if exact:
            x = Fraction(x)
            x -= x.numerator // x.denominator
        else:
            x = mp.mpf(x)
            x -= mp.floor(x)
    if exact:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc
    x = mp.mpf(x) if not isinstance(x, (mp.mpf, mp.mpc)) else x
    acc = mp.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + mp.mpf(c.numerator) / c.denominator
    return acc
