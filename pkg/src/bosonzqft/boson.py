"""Normal ordering of boson words.

Three independent routes to the same objects:

* a rewrite engine that applies ``a a+ -> a+ a + 1`` until nothing changes
  (the ground truth),
* the Bargmann model ``a -> d/dz``, ``a+ -> z`` acting on polynomials, used to
  check a claimed normal form,
* closed-form kernels for ``a+ a``, ``(a+)^r a`` and ``a + a+``.

Letters are encoded as ``CREATE = 1`` and ``ANNIHILATE = 0``.  In text, ``ad``
is the creation operator and ``a`` the annihilation operator.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .bell import WeightSequence, gamma_ratio
from .egf import Rational

__all__ = [
    "CREATE",
    "ANNIHILATE",
    "WordSpec",
    "BosonPolynomial",
    "KernelSeries",
    "normal_order_word",
    "normal_order_combination",
    "normal_order_exp",
    "gw_kernel_analytic",
    "v_sequence",
    "bargmann_apply",
    "bargmann_check",
]

CREATE = 1
ANNIHILATE = 0

_TOKENS = {"ad": CREATE, "a": ANNIHILATE}
_SUM_TEXT = "a+ad"


@dataclass(frozen=True)
class WordSpec:
    """A finite word over ``{a, a+}``, or the single symbol ``a + a+``."""

    letters: tuple[int, ...] = ()
    sum_mode: bool = False

    def __post_init__(self):
        if self.sum_mode:
            if self.letters:
                raise ValueError("sum mode carries no letters")
        elif not self.letters:
            raise ValueError("a word needs at least one letter")
        elif any(x not in (CREATE, ANNIHILATE) for x in self.letters):
            raise ValueError("letters must be CREATE or ANNIHILATE")

    @classmethod
    def parse(cls, text: str) -> WordSpec:
        """Parse ``"ad ad a"`` style text or the literal ``"a+ad"``."""
        if text.replace(" ", "") in (_SUM_TEXT, "ad+a"):
            return cls.sum()
        tokens = text.split()
        if not tokens:
            raise ValueError("empty word")
        try:
            return cls(tuple(_TOKENS[t] for t in tokens))
        except KeyError as exc:
            raise ValueError(f"unknown letter {exc.args[0]!r}; use 'a' or 'ad'") from None

    @classmethod
    def sum(cls) -> WordSpec:
        return cls(sum_mode=True)

    @classmethod
    def monomial(cls, r: int, s: int) -> WordSpec:
        """``(a+)^r a^s``."""
        return cls((CREATE,) * r + (ANNIHILATE,) * s)

    @property
    def excess(self) -> int | None:
        """``#a+ - #a``; undefined (``None``) for the sum ``a + a+``."""
        if self.sum_mode:
            return None
        return 2 * sum(self.letters) - len(self.letters)

    def __str__(self) -> str:
        if self.sum_mode:
            return _SUM_TEXT
        return " ".join("ad" if x == CREATE else "a" for x in self.letters)

    def power_combination(self, n: int) -> dict[tuple[int, ...], int]:
        """``w^n`` as an integer combination of plain words."""
        if self.sum_mode:
            # (a + a+)^n expands into all 2^n words
            return {word: 1 for word in itertools.product((ANNIHILATE, CREATE), repeat=n)}
        return {self.letters * n: 1}


class BosonPolynomial:
    """``sum c_pq (a+)^p a^q`` in normal form, keyed by ``(p, q)``.

    Multiplication treats ``a+`` and ``a`` as commuting symbols (the interior
    of the ``: :`` ordering symbol), so it is plain bivariate multiplication.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Rational] | None = None):
        clean = {}
        for (p, q), c in (terms or {}).items():
            if p < 0 or q < 0:
                raise ValueError("exponents must be nonnegative")
            c = Fraction(c)
            if c:
                clean[(int(p), int(q))] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def zero(cls) -> BosonPolynomial:
        return cls()

    @classmethod
    def one(cls) -> BosonPolynomial:
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, p: int, q: int, c: Rational = 1) -> BosonPolynomial:
        return cls({(p, q): c})

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def coeff(self, p: int, q: int) -> Fraction:
        return self._terms.get((p, q), Fraction(0))

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BosonPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other: BosonPolynomial) -> BosonPolynomial:
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return BosonPolynomial(out)

    def __neg__(self) -> BosonPolynomial:
        return BosonPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: BosonPolynomial) -> BosonPolynomial:
        return self + (-other)

    def __mul__(self, other: BosonPolynomial | Rational) -> BosonPolynomial:
        if not isinstance(other, BosonPolynomial):
            k = Fraction(other)
            return BosonPolynomial({key: k * c for key, c in self._terms.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (p1, q1), c1 in self._terms.items():
            for (p2, q2), c2 in other._terms.items():
                key = (p1 + p2, q1 + q2)
                out[key] = out.get(key, 0) + c1 * c2
        return BosonPolynomial(out)

    __rmul__ = __mul__

    def evaluate(self, z: Rational = 1, zbar: Rational = 1) -> Fraction:
        """Coherent-state value: ``a -> z``, ``a+ -> zbar``."""
        z, zbar = Fraction(z), Fraction(zbar)
        return sum((c * zbar**p * z**q for (p, q), c in self._terms.items()), Fraction(0))

    def to_list(self) -> list[dict]:
        return [{"p": p, "q": q, "c": str(c)} for (p, q), c in self._terms.items()]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_list(cls, data: Iterable[Mapping]) -> BosonPolynomial:
        out: dict[tuple[int, int], Fraction] = {}
        for item in data:
            key = (int(item["p"]), int(item["q"]))
            out[key] = out.get(key, 0) + Fraction(item["c"])
        return cls(out)

    @classmethod
    def from_json(cls, text: str) -> BosonPolynomial:
        return cls.from_list(json.loads(text))

    def __repr__(self) -> str:
        return f"BosonPolynomial({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (p, q), c in sorted(self._terms.items(), key=lambda kv: (-kv[0][0] - kv[0][1], kv[0])):
            mono = _power("ad", p) + _power("a", q)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(" ".join(mono))
            else:
                parts.append(f"{c} " + " ".join(mono))
        return " + ".join(parts)


def _power(sym: str, k: int) -> list[str]:
    if k == 0:
        return []
    return [sym if k == 1 else f"{sym}^{k}"]


def normal_order_combination(combo: Mapping[tuple[int, ...], Rational]) -> BosonPolynomial:
    """Normal-order a linear combination of words by rewriting.

    The leftmost ``a a+`` is replaced by ``a+ a + 1``; each step lowers the
    inversion count, so the loop terminates.  Equal words are merged as they
    appear.
    """
    pending: dict[tuple[int, ...], Fraction] = {}
    for word, c in combo.items():
        pending[word] = pending.get(word, 0) + Fraction(c)
    result: dict[tuple[int, int], Fraction] = {}
    while pending:
        word, c = pending.popitem()
        if not c:
            continue
        i = _leftmost_inversion(word)
        if i < 0:
            p = sum(word)
            key = (p, len(word) - p)
            result[key] = result.get(key, 0) + c
            continue
        swapped = word[:i] + (CREATE, ANNIHILATE) + word[i + 2 :]
        contracted = word[:i] + word[i + 2 :]
        pending[swapped] = pending.get(swapped, 0) + c
        pending[contracted] = pending.get(contracted, 0) + c
    return BosonPolynomial(result)


def _leftmost_inversion(word: tuple[int, ...]) -> int:
    for i in range(len(word) - 1):
        if word[i] == ANNIHILATE and word[i + 1] == CREATE:
            return i
    return -1


def normal_order_word(w: WordSpec) -> BosonPolynomial:
    return normal_order_combination(w.power_combination(1))


@dataclass(frozen=True)
class KernelSeries:
    """Order-by-order normal form of ``exp(x w)``.

    ``g[n]`` is the normal form of ``w^n`` (so ``g[0] == 1``); ``v[n]`` for
    ``n >= 1`` are the log coefficients, i.e. ``sum g_n x^n/n! = exp(sum v_n x^n/n!)``
    with ``a`` and ``a+`` commuting.  ``v[0]`` is the zero polynomial.
    """

    order: int
    g: tuple[BosonPolynomial, ...]
    v: tuple[BosonPolynomial, ...]

    def __post_init__(self):
        if len(self.g) != self.order + 1 or len(self.v) != self.order + 1:
            raise ValueError("kernel length does not match its order")

    @classmethod
    def from_g(cls, g: Iterable[BosonPolynomial]) -> KernelSeries:
        g = tuple(g)
        return cls(len(g) - 1, g, tuple(_series_log(g)))

    @classmethod
    def from_v(cls, v: Iterable[BosonPolynomial]) -> KernelSeries:
        v = tuple(v)
        return cls(len(v) - 1, tuple(_series_exp(v)), v)

    def is_consistent(self) -> bool:
        return tuple(_series_exp(self.v)) == self.g

    def v_values(self, z: Rational = 1, zbar: Rational = 1) -> WeightSequence:
        return WeightSequence(tuple(p.evaluate(z, zbar) for p in self.v[1:]))

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "g": [p.to_list() for p in self.g],
            "v": [p.to_list() for p in self.v[1:]],
        }


def _series_exp(v: tuple[BosonPolynomial, ...]) -> list[BosonPolynomial]:
    out = [BosonPolynomial.one()]
    for n in range(len(v) - 1):
        acc = BosonPolynomial.zero()
        for k in range(n + 1):
            if v[k + 1]:
                acc = acc + v[k + 1] * out[n - k] * comb(n, k)
        out.append(acc)
    return out


def _series_log(g: tuple[BosonPolynomial, ...]) -> list[BosonPolynomial]:
    if g[0] != BosonPolynomial.one():
        raise ValueError("kernel must start with the identity")
    out = [BosonPolynomial.zero()]
    for n in range(len(g) - 1):
        acc = g[n + 1]
        for k in range(n):
            if out[k + 1]:
                acc = acc - out[k + 1] * g[n - k] * comb(n, k)
        out.append(acc)
    return out


def normal_order_exp(w: WordSpec, N: int) -> KernelSeries:
    """Brute-force kernel: ``g_n`` is the rewritten normal form of ``w^n``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    g = [BosonPolynomial.one()]
    for n in range(1, N + 1):
        g.append(normal_order_combination(w.power_combination(n)))
    return KernelSeries.from_g(g)


def _analytic_shape(w: WordSpec) -> int | None:
    """Return r for words ``(a+)^r a`` (r >= 1), 0 for ``a + a+``, else None."""
    if w.sum_mode:
        return 0
    *head, last = w.letters
    if last == ANNIHILATE and head and all(x == CREATE for x in head):
        return len(head)
    return None


def gw_kernel_analytic(w: WordSpec, N: int) -> KernelSeries:
    """Closed-form kernels.

    * ``(a+)^r a``: ``v_n = prod_{j<n}(1 + (r-1) j) (a+)^{(r-1)n+1} a``; ``r = 1``
      gives ``v_n = a+ a`` for every n.
    * ``a + a+``: ``v_1 = a + a+``, ``v_2 = 1``, all later ``v_n = 0``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    r = _analytic_shape(w)
    if r is None:
        raise ValueError(
            f"no closed-form kernel for {str(w)!r}; use normal_order_exp for arbitrary words"
        )
    v = [BosonPolynomial.zero()]
    for n in range(1, N + 1):
        if r == 0:
            if n == 1:
                v.append(BosonPolynomial({(1, 0): 1, (0, 1): 1}))
            elif n == 2:
                v.append(BosonPolynomial.one())
            else:
                v.append(BosonPolynomial.zero())
        else:
            v.append(BosonPolynomial.monomial((r - 1) * n + 1, 1, gamma_ratio(r, n)))
    return KernelSeries.from_v(v)


def v_sequence(
    w: WordSpec,
    z: tuple[Rational, Rational] = (1, 1),
    N: int = 8,
    method: str = "auto",
) -> WeightSequence:
    """Vertex strengths ``V_n(z, zbar)`` for n = 1..N.

    ``method`` is ``"analytic"``, ``"brute"`` or ``"auto"`` (analytic when a
    closed form exists).
    """
    if method not in ("auto", "analytic", "brute"):
        raise ValueError(f"unknown method {method!r}")
    if method == "analytic" or (method == "auto" and _analytic_shape(w) is not None):
        kernel = gw_kernel_analytic(w, N)
    else:
        kernel = normal_order_exp(w, N)
    seq = kernel.v_values(*z)
    return WeightSequence(seq.weights, label=f"V[{w}]")


def bargmann_apply(w: WordSpec, poly: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Act with ``w`` on a polynomial in z (``{degree: coeff}``): ``a = d/dz``, ``a+ = z``."""
    if w.sum_mode:
        return _add_polys(_apply_letter(ANNIHILATE, poly), _apply_letter(CREATE, poly))
    out = dict(poly)
    for letter in reversed(w.letters):
        out = _apply_letter(letter, out)
    return out


def _apply_letter(letter: int, poly: Mapping[int, Fraction]) -> dict[int, Fraction]:
    if letter == CREATE:
        return {k + 1: c for k, c in poly.items()}
    return {k - 1: c * k for k, c in poly.items() if k > 0}


def _add_polys(*polys: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for poly in polys:
        for k, c in poly.items():
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _apply_normal(P: BosonPolynomial, k: int) -> dict[int, Fraction]:
    # (a+)^p a^q z^k = k!/(k-q)! z^(k-q+p)
    out: dict[int, Fraction] = {}
    for (p, q), c in P.items():
        if q > k:
            continue
        falling = 1
        for j in range(q):
            falling *= k - j
        deg = k - q + p
        out[deg] = out.get(deg, 0) + c * falling
    return {d: c for d, c in out.items() if c}


def bargmann_check(w: WordSpec, P: BosonPolynomial, degree: int, power: int = 1) -> bool:
    """True iff ``w^power`` and ``P`` act identically on ``z^k`` for all k <= degree."""
    for k in range(degree + 1):
        poly = {k: Fraction(1)}
        for _ in range(power):
            poly = bargmann_apply(w, poly)
        poly = {d: c for d, c in poly.items() if c}
        if poly != _apply_normal(P, k):
            return False
    return True
