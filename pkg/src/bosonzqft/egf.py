"""Truncated exponential generating functions with exact rational coefficients.

A series is stored by its EGF-normalised coefficients: ``coeffs[n] = f_n`` where
``f(x) = sum f_n x**n / n!``.  Every operation truncates to the smallest order
among its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

Rational = Fraction | int

__all__ = [
    "EgfSeries",
    "add",
    "multiply",
    "exp",
    "log",
    "compose",
    "rational_power",
    "product_formula",
    "from_ordinary",
    "to_ordinary",
    "shift_down",
]


@dataclass(frozen=True)
class EgfSeries:
    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, coeffs: Iterable[Rational], order: int | None = None) -> EgfSeries:
        """Build from a coefficient list, zero-padding or cutting to ``order``."""
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            if not cs:
                raise ValueError("empty coefficient list")
            order = len(cs) - 1
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(order, tuple(cs))

    @classmethod
    def zero(cls, order: int) -> EgfSeries:
        return cls.of([], order)

    @classmethod
    def one(cls, order: int) -> EgfSeries:
        return cls.of([1], order)

    @classmethod
    def constant(cls, c: Rational, order: int) -> EgfSeries:
        return cls.of([c], order)

    @classmethod
    def variable(cls, order: int) -> EgfSeries:
        """The series ``x``."""
        return cls.of([0, 1], order)

    @classmethod
    def exponential(cls, order: int, rate: Rational = 1) -> EgfSeries:
        """``exp(rate * x)``: coefficients ``rate**n``."""
        r = Fraction(rate)
        return cls(order, tuple(r**n for n in range(order + 1)))

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> EgfSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return EgfSeries(order, self.coeffs[: order + 1])

    def __add__(self, other: EgfSeries) -> EgfSeries:
        return add(self, other)

    def __sub__(self, other: EgfSeries) -> EgfSeries:
        return add(self, -other)

    def __neg__(self) -> EgfSeries:
        return EgfSeries(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other: EgfSeries | Rational) -> EgfSeries:
        if isinstance(other, EgfSeries):
            return multiply(self, other)
        k = Fraction(other)
        return EgfSeries(self.order, tuple(k * c for c in self.coeffs))

    __rmul__ = __mul__

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> EgfSeries:
        return cls(int(data["order"]), tuple(Fraction(c) for c in data["coeffs"]))

    @classmethod
    def from_json(cls, text: str) -> EgfSeries:
        return cls.from_dict(json.loads(text))


def add(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    n = min(f.order, g.order)
    return EgfSeries(n, tuple(f[i] + g[i] for i in range(n + 1)))


def multiply(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """Binomial convolution ``(fg)_n = sum_k C(n,k) f_k g_{n-k}``."""
    n = min(f.order, g.order)
    out = []
    for m in range(n + 1):
        out.append(sum((comb(m, k) * f[k] * g[m - k] for k in range(m + 1)), Fraction(0)))
    return EgfSeries(n, tuple(out))


def exp(f: EgfSeries) -> EgfSeries:
    """``exp(f)`` for ``f_0 == 0``.

    Uses ``F' = f' F``, i.e. ``F_{n+1} = sum_k C(n,k) f_{k+1} F_{n-k}``.
    """
    if f[0] != 0:
        raise ValueError("exp requires a zero constant term to stay rational")
    out = [Fraction(1)]
    for n in range(f.order):
        out.append(sum((comb(n, k) * f[k + 1] * out[n - k] for k in range(n + 1)), Fraction(0)))
    return EgfSeries(f.order, tuple(out))


def log(f: EgfSeries) -> EgfSeries:
    """Inverse of :func:`exp`; requires ``f_0 == 1``."""
    if f[0] != 1:
        raise ValueError("log requires constant term 1")
    g = [Fraction(0)]
    for n in range(f.order):
        # f_{n+1} = sum_k C(n,k) g_{k+1} f_{n-k}; the k = n term carries g_{n+1} f_0
        acc = f[n + 1] - sum(
            (comb(n, k) * g[k + 1] * f[n - k] for k in range(n)), Fraction(0)
        )
        g.append(acc)
    return EgfSeries(f.order, tuple(g))


def compose(g: EgfSeries, phi: EgfSeries) -> EgfSeries:
    """``g(phi(x))`` truncated; ``phi`` must have zero constant term."""
    if phi[0] != 0:
        raise ValueError("compose requires phi to have zero constant term")
    n = min(g.order, phi.order)
    phi = phi.truncate(n)
    result = EgfSeries.constant(g[0], n)
    power = EgfSeries.one(n)
    # g(phi) = sum_k g_k phi^k / k!; phi^k vanishes below x^k so k <= n suffices
    for k in range(1, n + 1):
        power = multiply(power, phi)
        if g[k]:
            result = add(result, power * (g[k] / factorial(k)))
    return result


def rational_power(f: EgfSeries, alpha: Rational) -> EgfSeries:
    """``f**alpha`` for ``f_0 == 1`` and rational ``alpha``.

    Solves ``f F' = alpha f' F`` coefficientwise.
    """
    if f[0] != 1:
        raise ValueError("rational_power requires constant term 1")
    a = Fraction(alpha)
    out = [Fraction(1)]
    for n in range(f.order):
        rhs = a * sum((comb(n, k) * f[k + 1] * out[n - k] for k in range(n + 1)), Fraction(0))
        rhs -= sum((comb(n, k) * f[k] * out[n + 1 - k] for k in range(1, n + 1)), Fraction(0))
        out.append(rhs)
    return EgfSeries(f.order, tuple(out))


def product_formula(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """``f(lambda d/dx) g(x)`` at ``x = 0``, as a series in lambda: coefficients ``f_n g_n``."""
    n = min(f.order, g.order)
    return EgfSeries(n, tuple(f[i] * g[i] for i in range(n + 1)))


def from_ordinary(coeffs: Sequence[Rational], order: int | None = None) -> EgfSeries:
    """Convert ordinary coefficients ``c_n`` (of ``sum c_n x**n``) to an EgfSeries."""
    s = EgfSeries.of(coeffs, order)
    return EgfSeries(s.order, tuple(c * factorial(n) for n, c in enumerate(s.coeffs)))


def to_ordinary(f: EgfSeries) -> list[Fraction]:
    return [c / factorial(n) for n, c in enumerate(f.coeffs)]


def shift_down(f: EgfSeries, k: int) -> EgfSeries:
    """Divide by ``x**k``; the low ``k`` coefficients must vanish. Order drops by ``k``."""
    if k > f.order:
        raise ValueError("shift larger than the series order")
    ordinary = to_ordinary(f)
    if any(ordinary[:k]):
        raise ValueError(f"series is not divisible by x^{k}")
    return from_ordinary(ordinary[k:])
