"""Truncated Taylor series ("jets") with arithmetic.

A Jet at point a of order M stores c_m = f^{(m)}(a)/m! for m = 0..M. Jets can
be fed through generic numerical code (the Euler-Maclaurin zeta sum, Stirling
series, ...) to obtain derivatives without finite differences.
"""

from __future__ import annotations

from typing import Sequence

import mpmath as mp

from .errors import InadmissiblePointError


def _is_scalar(x) -> bool:
    return isinstance(x, (int, float, complex, mp.mpf, mp.mpc)) or hasattr(x, "numerator") or hasattr(x, "_mpf_")


def _mpify(x):
    if isinstance(x, (mp.mpf, mp.mpc)):
        return x
    if isinstance(x, complex):
        return mp.mpc(x)
    if hasattr(x, "numerator") and not isinstance(x, int):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpmathify(x)


class Jet:
    """Truncated Taylor expansion sum_m c_m (x - a)^m, m = 0..M."""

    __slots__ = ("point", "coeffs")

    def __init__(self, point, coeffs: Sequence):
        if len(coeffs) == 0:
            raise ValueError("a jet needs at least one coefficient")
        self.point = _mpify(point)
        self.coeffs = tuple(_mpify(c) for c in coeffs)

    # construction -----------------------------------------------------------
    @classmethod
    def variable(cls, a, order: int) -> "Jet":
        """The identity function x expanded at a."""
        a = _mpify(a)
        return cls(a, [a, 1] + [0] * (order - 1) if order >= 1 else [a])

    @classmethod
    def constant(cls, value, a, order: int) -> "Jet":
        return cls(a, [value] + [0] * order)

    # basic properties ---------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self):
        return self.coeffs[0]

    def derivative(self, m: int):
        return derivative(self, m)

    def magnitude(self):
        return max(abs(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Jet(point={mp.nstr(self.point, 8)}, coeffs=[{', '.join(mp.nstr(c, 8) for c in self.coeffs)}])"

    def _like(self, coeffs) -> "Jet":
        return Jet(self.point, coeffs)

    def _check(self, other: "Jet") -> None:
        if other.order != self.order or other.point != self.point:
            raise ValueError("jets must share expansion point and order")

    def truncate(self, order: int) -> "Jet":
        return self._like(self.coeffs[: order + 1])

    def differentiate(self) -> "Jet":
        """Jet of f' at the same point (order drops by one)."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        return self._like([k * self.coeffs[k] for k in range(1, len(self.coeffs))])

    def scaled(self, h) -> "Jet":
        """Jet of y -> f(a + h*y) at y = 0, relabelled at the same point."""
        h = _mpify(h)
        out, p = [], mp.mpf(1)
        for c in self.coeffs:
            out.append(c * p)
            p *= h
        return self._like(out)

    # arithmetic -------------------------------------------------------------
    def __neg__(self) -> "Jet":
        return self._like([-c for c in self.coeffs])

    def __pos__(self) -> "Jet":
        return self

    def __add__(self, other) -> "Jet":
        if isinstance(other, Jet):
            self._check(other)
            return self._like([x + y for x, y in zip(self.coeffs, other.coeffs)])
        if _is_scalar(other):
            return self._like((self.coeffs[0] + _mpify(other),) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        if isinstance(other, Jet) or _is_scalar(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        if isinstance(other, Jet):
            self._check(other)
            a, b = self.coeffs, other.coeffs
            return self._like([mp.fdot(a[: n + 1], b[n::-1]) for n in range(len(a))])
        if _is_scalar(other):
            k = _mpify(other)
            return self._like([c * k for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return _div(self, other)
        if _is_scalar(other):
            k = _mpify(other)
            if k == 0:
                raise ZeroDivisionError("jet divided by zero")
            return self._like([c / k for c in self.coeffs])
        return NotImplemented

    def __rtruediv__(self, other) -> "Jet":
        if _is_scalar(other):
            return _div(Jet.constant(other, self.point, self.order), self)
        return NotImplemented

    def __pow__(self, alpha) -> "Jet":
        if isinstance(alpha, Jet):
            return (alpha * self.log()).exp()
        return _pow(self, alpha)

    def __rpow__(self, base) -> "Jet":
        return (self * mp.log(_mpify(base))).exp()

    # elementary functions ---------------------------------------------------
    def exp(self) -> "Jet":
        f = self.coeffs
        e = [mp.exp(f[0])]
        for n in range(1, len(f)):
            e.append(mp.fdot([k * f[k] for k in range(1, n + 1)], e[n - 1 :: -1]) / n)
        return self._like(e)

    def log(self) -> "Jet":
        f = self.coeffs
        if f[0] == 0:
            raise InadmissiblePointError("log of a jet with zero constant term")
        if isinstance(f[0], mp.mpf) and f[0] < 0:
            raise InadmissiblePointError("log of a jet with negative constant term (real branch)")
        out = [mp.log(f[0])]
        for n in range(1, len(f)):
            acc = mp.fdot([k * out[k] for k in range(1, n)], f[n - 1 : 0 : -1]) if n > 1 else 0
            out.append((f[n] - acc / n) / f[0])
        return self._like(out)

    def sincos(self) -> tuple["Jet", "Jet"]:
        f = self.coeffs
        s, c = [mp.sin(f[0])], [mp.cos(f[0])]
        for n in range(1, len(f)):
            kf = [k * f[k] for k in range(1, n + 1)]
            s.append(mp.fdot(kf, c[n - 1 :: -1]) / n)
            c.append(-mp.fdot(kf, s[n - 1 :: -1]) / n)
        return self._like(s), self._like(c)

    def sin(self) -> "Jet":
        return self.sincos()[0]

    def cos(self) -> "Jet":
        return self.sincos()[1]

    def sqrt(self) -> "Jet":
        return _pow(self, mp.mpf(1) / 2)


def _div(a: Jet, b: Jet) -> Jet:
    a._check(b)
    bc, ac = list(b.coeffs), list(a.coeffs)
    shift = 0
    while shift < len(bc) and bc[shift] == 0:
        shift += 1
    if shift == len(bc):
        raise ZeroDivisionError("division by the zero jet")
    if shift:
        # removable singularity: cancel the common zero of numerator and denominator
        if any(c != 0 for c in ac[:shift]):
            raise ZeroDivisionError("division by a jet with zero constant term")
        ac, bc = ac[shift:], bc[shift:]
    out = []
    for n in range(len(ac)):
        acc = mp.fdot(bc[1 : n + 1], out[::-1]) if n else 0
        out.append((ac[n] - acc) / bc[0])
    return Jet(a.point, out)


def _pow(f: Jet, alpha) -> Jet:
    if isinstance(alpha, int) and alpha >= 0:
        result = Jet.constant(1, f.point, f.order)
        base = f
        while alpha:
            if alpha & 1:
                result = result * base
            base = base * base
            alpha >>= 1
        return result
    alpha = _mpify(alpha)
    c = f.coeffs
    if c[0] == 0:
        raise InadmissiblePointError("non-integer power of a jet with zero constant term")
    p = [mp.power(c[0], alpha)]
    for n in range(1, len(c)):
        acc = mp.fdot([(alpha * k - (n - k)) * c[k] for k in range(1, n + 1)], p[n - 1 :: -1])
        p.append(acc / (n * c[0]))
    return f._like(p)


def derivative(j: Jet, m: int):
    """m-th derivative at the expansion point: m! c_m."""
    if m < 0 or m > j.order:
        raise ValueError(f"derivative order {m} outside 0..{j.order}")
    return mp.factorial(m) * j.coeffs[m]


_UNARY = {"exp": Jet.exp, "log": Jet.log, "sin": Jet.sin, "cos": Jet.cos}
_BINARY = {"add": Jet.__add__, "mul": Jet.__mul__, "div": Jet.__truediv__, "pow": Jet.__pow__}


def jet_arith(op: str, *operands) -> Jet:
    """Named access to jet operations (add, mul, div, exp, log, sin, cos, pow)."""
    if op in _UNARY:
        (x,) = operands
        return _UNARY[op](x)
    if op in _BINARY:
        x, y = operands
        return _BINARY[op](x, y)
    raise ValueError(f"unknown jet operation {op!r}")
