"""Bell polynomials and the integer sequences built from them.

Weight sequences ``h = (h_1, h_2, ...)`` are 1-indexed; ``h_0`` never appears.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable

from .egf import EgfSeries, Rational, exp

__all__ = [
    "WeightSequence",
    "BellTriangle",
    "bell_triangle",
    "complete_bell",
    "hermite_kdf",
    "idempotent_polynomial",
    "idempotent_pair_sequence",
    "modified_hermite",
    "bell_numbers",
    "involution_numbers",
    "idempotent_numbers",
    "restricted_bell_numbers",
    "PRESETS",
    "preset",
    "preset_names",
    "from_values",
    "gamma_ratio",
]


@dataclass(frozen=True)
class WeightSequence:
    """Weights ``h_1 .. h_N``; ``ws[n]`` is 1-based."""

    weights: tuple[Fraction, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    @classmethod
    def from_function(cls, fn: Callable[[int], Rational], order: int, label: str | None = None):
        return cls(tuple(Fraction(fn(n)) for n in range(1, order + 1)), label)

    @property
    def order(self) -> int:
        return len(self.weights)

    def __getitem__(self, n: int) -> Fraction:
        if n < 1:
            raise IndexError("weight sequences are indexed from 1")
        return self.weights[n - 1]

    def __len__(self) -> int:
        return len(self.weights)

    def padded(self, order: int) -> WeightSequence:
        """Cut or zero-pad to exactly ``order`` weights."""
        w = (self.weights + (Fraction(0),) * order)[:order]
        return WeightSequence(w, self.label)

    def series(self, order: int | None = None) -> EgfSeries:
        """``h(x) = sum_{n>=1} h_n x^n / n!`` as an EgfSeries."""
        order = self.order if order is None else order
        _check_order(self, order)
        return EgfSeries.of([0, *self.weights[:order]], order)

    def as_list(self) -> list[Fraction]:
        return list(self.weights)


@dataclass(frozen=True)
class BellTriangle:
    """``rows[n][k-1]`` is the partial Bell polynomial value for n, k (k = 1..n)."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __getitem__(self, nk: tuple[int, int]) -> Fraction:
        n, k = nk
        if n == 0:
            return Fraction(int(k == 0))
        if not 1 <= k <= n:
            return Fraction(0)
        return self.rows[n][k - 1]

    @property
    def order(self) -> int:
        return len(self.rows) - 1

    def row_polynomial(self, n: int, u: Rational) -> Fraction:
        """``sum_k u^k B_{n,k}``."""
        if n == 0:
            return Fraction(1)
        u = Fraction(u)
        return sum((u**k * self.rows[n][k - 1] for k in range(1, n + 1)), Fraction(0))


def _check_order(h: WeightSequence, n: int) -> None:
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > h.order:
        raise ValueError(f"order {n} exceeds the {h.order} weights available")


def bell_triangle(h: WeightSequence, N: int) -> BellTriangle:
    # Condition on the block holding element 1: it has size j, chosen in C(n-1, j-1) ways.
    _check_order(h, N)
    table: list[list[Fraction]] = [[Fraction(1)]]  # table[n][k], k = 0..n
    for n in range(1, N + 1):
        row = [Fraction(0)] * (n + 1)
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, n - k + 2):
                prev = table[n - j]
                if k - 1 < len(prev):
                    acc += comb(n - 1, j - 1) * h[j] * prev[k - 1]
            row[k] = acc
        table.append(row)
    return BellTriangle(tuple(tuple(r[1:]) for r in table))


def complete_bell(h: WeightSequence, N: int) -> list[Fraction]:
    """``B_0 .. B_N`` with ``B_0 = 1``; ``B_n`` is the n-th EGF coefficient of ``exp(h(x))``."""
    tri = bell_triangle(h, N)
    return [Fraction(1)] + [sum(tri.rows[n], Fraction(0)) for n in range(1, N + 1)]


def hermite_kdf(M: int, x: Rational, y: Rational, N: int) -> list[Fraction]:
    """Hermite-Kampe de Feriet values ``H_0^{(M)}(x,y) .. H_N^{(M)}(x,y)``.

    Closed form ``H_n = n! sum_r x^(n-Mr) y^r / ((n-Mr)! r!)``; generating
    function ``exp(x t + y t^M)``.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    if N < 0:
        raise ValueError("N must be nonnegative")
    x, y = Fraction(x), Fraction(y)
    out = []
    for n in range(N + 1):
        total = Fraction(0)
        for r in range(n // M + 1):
            total += Fraction(x ** (n - M * r) * y**r, factorial(n - M * r) * factorial(r))
        out.append(total * factorial(n))
    return out


def idempotent_polynomial(n: int, t: Rational) -> Fraction:
    """``I_n(t) = sum_k C(n,k) k^(n-k) t^k`` with ``0**0 == 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    t = Fraction(t)
    return sum((comb(n, k) * k ** (n - k) * t**k for k in range(n + 1)), Fraction(0))


def idempotent_pair_sequence(N: int) -> list[Fraction]:
    """EGF coefficients of ``exp(x sinh x)`` for n = 0..N.

    Splits ``x sinh x = (x e^x)/2 + (-x) e^(-x)/2``, so
    ``I_n^{(2)} = sum_k C(n,k) (-1)^k I_k(1/2) I_{n-k}(1/2)``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    half = Fraction(1, 2)
    vals = [idempotent_polynomial(k, half) for k in range(N + 1)]
    return [
        sum((comb(n, k) * (-1) ** k * vals[k] * vals[n - k] for k in range(n + 1)), Fraction(0))
        for n in range(N + 1)
    ]


def modified_hermite(n: int, x: Rational) -> Fraction:
    """``h_n(x)``: n-th EGF coefficient in t of ``exp(x t + t^2/2)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return hermite_kdf(2, x, Fraction(1, 2), n)[n]


# Named sequences (index 0 .. N).


def bell_numbers(N: int) -> list[Fraction]:
    return complete_bell(preset("ones", N), N)


def involution_numbers(N: int) -> list[Fraction]:
    """1, 1, 2, 4, 10, 26, ... starting at n = 0."""
    return hermite_kdf(2, 1, Fraction(1, 2), N)


def idempotent_numbers(N: int) -> list[Fraction]:
    return [idempotent_polynomial(n, 1) for n in range(N + 1)]


def restricted_bell_numbers(N: int) -> list[Fraction]:
    """Partitions without singleton blocks, via ``exp(e^x - 1 - x)``."""
    return list(exp(EgfSeries.of([0, 0] + [1] * N, N)).coeffs)


# Preset registry: name -> factory(order, param) -> WeightSequence.


def gamma_ratio(r: int, n: int) -> int:
    """``(r-1)^n Gamma(n + 1/(r-1)) / Gamma(1/(r-1))`` as the product ``prod_j (1 + (r-1) j)``."""
    out = 1
    for j in range(n):
        out *= 1 + (r - 1) * j
    return out


def _needs(param: int | None, name: str) -> int:
    if param is None:
        raise ValueError(f"preset {name!r} needs a parameter, e.g. {name}:2")
    return param


PRESETS: dict[str, Callable[[int, int | None], WeightSequence]] = {
    "ones": lambda N, p: WeightSequence.from_function(lambda n: 1, N, "ones"),
    "linear": lambda N, p: WeightSequence.from_function(lambda n: n, N, "linear"),
    "factorial": lambda N, p: WeightSequence.from_function(factorial, N, "factorial"),
    "no-singletons": lambda N, p: WeightSequence.from_function(
        lambda n: int(n >= 2), N, "no-singletons"
    ),
    "even-linear": lambda N, p: WeightSequence.from_function(
        lambda n: n if n % 2 == 0 else 0, N, "even-linear"
    ),
    "delta": lambda N, p: WeightSequence.from_function(
        lambda n: int(n == _needs(p, "delta")), N, f"delta:{p}"
    ),
    "one-plus-delta": lambda N, p: WeightSequence.from_function(
        lambda n: int(n == 1) + int(n == _needs(p, "one-plus-delta")), N, f"one-plus-delta:{p}"
    ),
    "gamma-ratio": lambda N, p: WeightSequence.from_function(
        lambda n: gamma_ratio(_needs(p, "gamma-ratio"), n), N, f"gamma-ratio:{p}"
    ),
}

_PARAMETRIC = {"delta", "one-plus-delta", "gamma-ratio"}


def preset_names() -> list[str]:
    return [f"{name}:N" if name in _PARAMETRIC else name for name in PRESETS]


def preset(name: str, order: int, param: int | None = None) -> WeightSequence:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; valid presets: {', '.join(preset_names())}")
    if name not in _PARAMETRIC and param is not None:
        raise ValueError(f"preset {name!r} takes no parameter")
    if name == "one-plus-delta" and param is not None and param < 2:
        raise ValueError("one-plus-delta needs M >= 2")
    if name == "gamma-ratio" and param is not None and param < 2:
        raise ValueError("gamma-ratio needs r >= 2")
    if name == "delta" and param is not None and param < 1:
        raise ValueError("delta needs M >= 1")
    return PRESETS[name](order, param)


def from_values(values: Iterable[Rational], label: str | None = None) -> WeightSequence:
    return WeightSequence(tuple(Fraction(v) for v in values), label)
