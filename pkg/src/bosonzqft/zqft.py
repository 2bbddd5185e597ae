"""Counting series ``Z(L, V, lambda)`` of zero-dimensional field theories.

``A_n`` is computed three ways: as a product of complete Bell polynomials, as
the product formula applied to ``exp(L(x))`` and ``exp(V(x))``, and by
enumerating every pair of set partitions of the n labelled lines (origins and
vertices) and grouping the resulting bipartite multigraphs by isomorphism.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterator

from . import egf
from .bell import WeightSequence, complete_bell, modified_hermite, preset
from .egf import EgfSeries

__all__ = [
    "CountingProblem",
    "GraphClass",
    "GraphClassTable",
    "MAX_GRAPH_LINES",
    "set_partitions",
    "z_series_bell",
    "z_series_pf",
    "graph_oracle",
    "canonical_form",
    "closed_form_series",
    "hermite_route_series",
    "alternative_description",
]

MAX_GRAPH_LINES = 8


@dataclass(frozen=True)
class CountingProblem:
    L: WeightSequence
    V: WeightSequence
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        for name, seq in (("L", self.L), ("V", self.V)):
            if seq.order < self.order:
                raise ValueError(f"{name} has {seq.order} weights, order {self.order} needs more")

    @classmethod
    def build(cls, L: WeightSequence, V: WeightSequence, order: int) -> CountingProblem:
        """Zero-pad or cut both sequences to ``order``."""
        return cls(L.padded(order), V.padded(order), order)

    def swapped(self) -> CountingProblem:
        return CountingProblem(self.V, self.L, self.order)


def z_series_bell(p: CountingProblem) -> EgfSeries:
    """``A_n = B_n(L) * B_n(V)``."""
    bl = complete_bell(p.L, p.order)
    bv = complete_bell(p.V, p.order)
    return EgfSeries(p.order, tuple(x * y for x, y in zip(bl, bv)))


def z_series_pf(p: CountingProblem) -> EgfSeries:
    """``exp(sum L_m lambda^m/m! d^m/dx^m) exp(sum V_n x^n/n!)`` at ``x = 0``."""
    outer = egf.exp(p.L.series(p.order))
    inner = egf.exp(p.V.series(p.order))
    return egf.product_formula(outer, inner)


# Graph enumeration.


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of ``{0..n-1}`` as restricted-growth strings."""
    if n == 0:
        yield ()
        return
    a = [0] * n
    b = [1] * n  # b[i] = 1 + max(a[:i])
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] == b[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        nxt = b[i] + (a[i] == b[i])
        for j in range(i + 1, n):
            a[j] = 0
            b[j] = nxt


def _block_sizes(rgs: tuple[int, ...]) -> list[int]:
    sizes = [0] * (max(rgs) + 1 if rgs else 0)
    for x in rgs:
        sizes[x] += 1
    return sizes


def _structure_weight(sizes: list[int], w: WeightSequence) -> Fraction:
    out = Fraction(1)
    for s in sizes:
        out *= w[s]
        if not out:
            break
    return out


def canonical_form(rows: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Canonical biadjacency matrix of a bipartite multigraph.

    Rows are white dots, columns black dots, entries edge counts.  The result
    is the row-major lexicographic minimum over all row and column
    permutations that keep nodes sorted by their degree signature.  Columns
    are sorted for each row order, and row orders are searched level by level
    with equivalent partial states merged.
    """
    if not rows:
        return ()
    nr, nc = len(rows), len(rows[0])
    rdeg = [sum(r) for r in rows]
    cdeg = [sum(rows[i][j] for i in range(nr)) for j in range(nc)]
    rsig = [(rdeg[i], tuple(sorted((rows[i][j], cdeg[j]) for j in range(nc) if rows[i][j]))) for i in range(nr)]
    csig = [(cdeg[j], tuple(sorted((rows[i][j], rdeg[i]) for i in range(nr) if rows[i][j]))) for j in range(nc)]
    slots = sorted(rsig)

    def column_order(placed: tuple[int, ...]) -> list[int]:
        return sorted(range(nc), key=lambda j: (csig[j], tuple(rows[i][j] for i in placed), j))

    # state: (placed row indices, remaining row indices)
    states: list[tuple[tuple[int, ...], frozenset[int]]] = [((), frozenset(range(nr)))]
    for level in range(nr):
        best = None
        survivors: dict[tuple, tuple[tuple[int, ...], frozenset[int]]] = {}
        for placed, remaining in states:
            seen_vectors = set()
            for i in sorted(remaining):
                if rsig[i] != slots[level] or rows[i] in seen_vectors:
                    continue
                seen_vectors.add(rows[i])
                new_placed = placed + (i,)
                order = column_order(new_placed)
                prefix = tuple(rows[r][j] for r in new_placed for j in order)
                if best is not None and prefix > best:
                    continue
                if best is None or prefix < best:
                    best = prefix
                    survivors = {}
                rest = remaining - {i}
                key = (prefix, tuple(sorted(tuple(rows[r][j] for j in order) for r in rest)))
                survivors.setdefault(key, (new_placed, rest))
        states = list(survivors.values())
    placed = states[0][0]
    order = column_order(placed)
    return tuple(tuple(rows[r][j] for j in order) for r in placed)


@dataclass(frozen=True)
class GraphClass:
    white: tuple[int, ...]
    black: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    multiplicity: int
    weight: Fraction

    def to_dict(self) -> dict:
        return {
            "white": list(self.white),
            "black": list(self.black),
            "edges": [list(e) for e in self.edges],
            "multiplicity": self.multiplicity,
            "weight": str(self.weight),
        }

    @classmethod
    def from_dict(cls, data: dict) -> GraphClass:
        return cls(
            tuple(data["white"]),
            tuple(data["black"]),
            tuple(tuple(e) for e in data["edges"]),
            int(data["multiplicity"]),
            Fraction(data["weight"]),
        )


@dataclass(frozen=True)
class GraphClassTable:
    """Isomorphism classes of graphs with ``n`` labelled lines."""

    n: int
    classes: tuple[GraphClass, ...]
    total: Fraction = field(default=Fraction(0))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "classes": [c.to_dict() for c in self.classes],
            "total": str(self.total),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> GraphClassTable:
        return cls(
            int(data["n"]),
            tuple(GraphClass.from_dict(c) for c in data["classes"]),
            Fraction(data["total"]),
        )

    @classmethod
    def from_json(cls, text: str) -> GraphClassTable:
        return cls.from_dict(json.loads(text))


def graph_oracle(p: CountingProblem, n: int, keep_zero: bool = False) -> GraphClassTable:
    """Enumerate all (origin partition, vertex partition) pairs of n labelled lines.

    Line ``i`` runs from the origin holding ``i`` to the vertex holding ``i``.
    A pair's weight is ``prod L_m * prod V_k`` over block sizes.  Pairs are
    grouped by the isomorphism class of the bipartite multigraph they draw.
    Classes of zero weight are dropped unless ``keep_zero`` is set.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_GRAPH_LINES:
        raise ValueError(
            f"graph enumeration is limited to n <= {MAX_GRAPH_LINES} lines "
            f"(B_n^2 partition pairs); got n = {n}"
        )
    if n > p.order:
        raise ValueError(f"n = {n} exceeds the problem order {p.order}")
    if n == 0:
        empty = GraphClass((), (), (), 1, Fraction(1))
        return GraphClassTable(0, (empty,), Fraction(1))

    def weighted(stream, w):
        out = []
        for rgs in stream:
            sizes = _block_sizes(rgs)
            wt = _structure_weight(sizes, w)
            if wt or keep_zero:
                out.append((rgs, len(sizes), wt))
        return out

    origins = weighted(set_partitions(n), p.L)
    vertices = weighted(set_partitions(n), p.V)

    raw: Counter = Counter()
    for a, na, wa in origins:
        for b, nb, wb in vertices:
            cells = tuple(sorted(a[i] * nb + b[i] for i in range(n)))
            raw[(na, nb, cells)] += 1

    merged: dict[tuple, list] = {}
    for (na, nb, cells), count in raw.items():
        matrix = [[0] * nb for _ in range(na)]
        for c in cells:
            matrix[c // nb][c % nb] += 1
        canon = canonical_form(tuple(tuple(r) for r in matrix))
        entry = merged.setdefault(canon, [0])
        entry[0] += count

    classes = []
    total = Fraction(0)
    for canon, (mult,) in merged.items():
        white = tuple(sum(r) for r in canon)
        black = tuple(sum(col) for col in zip(*canon))
        per_graph = _structure_weight(list(white), p.L) * _structure_weight(list(black), p.V)
        weight = per_graph * mult
        if not weight and not keep_zero:
            continue
        edges = tuple(
            (i, j, c) for i, r in enumerate(canon) for j, c in enumerate(r) if c
        )
        classes.append(GraphClass(white, black, edges, mult, weight))
        total += weight
    classes.sort(key=lambda c: (c.white, c.black, c.edges))
    return GraphClassTable(n, tuple(classes), total)


# Closed forms for a + a+ with F(x) = exp(x^M / M!).


def _ordinary_monomial(k: int, order: int, c=1) -> EgfSeries:
    coeffs = [0] * (order + 1)
    if k <= order:
        coeffs[k] = c
    return egf.from_ordinary(coeffs)


def _catalan_phi(order: int) -> EgfSeries:
    """``(1 - sqrt(1 - 4 lambda^3)) / lambda^3``; equals ``2 sum C_k lambda^{3k}``."""
    big = order + 3
    root = egf.rational_power(EgfSeries.one(big) - _ordinary_monomial(3, big, 4), Fraction(1, 2))
    return egf.shift_down(EgfSeries.one(big) - root, 3)


def _hypergeometric_2f0(a: Fraction, b: Fraction, order: int) -> EgfSeries:
    """``2F0(a, b; ; u)`` as an EGF in u: coefficient ``(a)_k (b)_k``."""
    out = [Fraction(1)]
    pa = pb = Fraction(1)
    for k in range(order):
        pa *= a + k
        pb *= b + k
        out.append(pa * pb)
    return EgfSeries(order, tuple(out))


def closed_form_series(which: str, N: int) -> EgfSeries:
    """Formal expansions of ``Z1``, ``Z2`` and ``Z3`` to order N."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    one = EgfSeries.one(N)
    if which == "Z1":
        return egf.exp(egf.from_ordinary([0, 2, Fraction(1, 2)], N))
    if which == "Z2":
        lam2 = _ordinary_monomial(2, N)
        base = one - lam2
        inner = 2 * lam2 * egf.rational_power(base, -1)
        return egf.rational_power(base, Fraction(-1, 2)) * egf.exp(inner)
    if which == "Z3":
        phi = _catalan_phi(N)
        lam3 = _ordinary_monomial(3, N)
        lam6 = _ordinary_monomial(6, N)
        phi3 = phi * phi * phi
        arg = phi3 * lam3 * Fraction(1, 6) - phi3 * phi * lam6 * Fraction(1, 8)
        base = one - phi * lam3
        u = lam6 * egf.rational_power(base, -3) * Fraction(3, 2)
        f20 = _hypergeometric_2f0(Fraction(1, 6), Fraction(5, 6), N)
        return egf.exp(arg) * egf.rational_power(base, Fraction(-1, 2)) * egf.compose(f20, u)
    raise ValueError(f"unknown closed form {which!r}; expected Z1, Z2 or Z3")


def hermite_route_series(M: int, N: int) -> EgfSeries:
    """``A_{Mn} = (Mn)! / ((M!)^n n!) h_{Mn}(2)``, zero off multiples of M."""
    if M < 1:
        raise ValueError("M must be at least 1")
    coeffs = [Fraction(0)] * (N + 1)
    for n in range(N // M + 1):
        k = M * n
        coeffs[k] = Fraction(factorial(k), factorial(M) ** n * factorial(n)) * modified_hermite(k, 2)
    return EgfSeries(N, tuple(coeffs))


def example5_problem(M: int, N: int) -> CountingProblem:
    """``L = delta_{m,M}``, ``V = (2, 1, 0, 0, ...)``."""
    return CountingProblem.build(preset("delta", N, M), WeightSequence((2, 1)), N)


def alternative_description(Z: EgfSeries) -> CountingProblem:
    """Re-express ``Z`` with single-line origins: ``L_m = delta_{m,1}``.

    Since ``B_n(L) = 1`` then, ``V`` must satisfy ``B_n(V) = A_n``, solved one
    index at a time (``B_n`` is linear in ``V_n`` with coefficient 1).
    """
    if Z[0] != 1:
        raise ValueError("alternative description needs Z_0 = 1")
    N = Z.order
    values: list[Fraction] = []
    for n in range(1, N + 1):
        trial = WeightSequence(tuple(values) + (Fraction(0),))
        values.append(Z[n] - complete_bell(trial, n)[n])
    return CountingProblem(preset("delta", N, 1), WeightSequence(tuple(values)), N)
