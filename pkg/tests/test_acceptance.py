"""Exit criteria, one test per criterion; each prints a PASS/FAIL line in the summary.

Tolerance for every criterion is exact equality of rationals.
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from math import factorial

from bosonzqft import egf
from bosonzqft.bell import WeightSequence, bell_triangle, preset
from bosonzqft.boson import (
    WordSpec,
    bargmann_check,
    gw_kernel_analytic,
    normal_order_exp,
    normal_order_word,
    v_sequence,
)
from bosonzqft.egf import EgfSeries
from bosonzqft.zqft import (
    CountingProblem,
    alternative_description,
    closed_form_series,
    graph_oracle,
    hermite_route_series,
    set_partitions,
    z_series_bell,
    z_series_pf,
)

from conftest import ACCEPTANCE_LINES


@contextmanager
def criterion(number, text):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {text} ({elapsed:.2f}s)")


def get(spec, N):
    name, _, param = spec.partition(":")
    return preset(name, N, int(param) if param else None)


def both_routes(L, V, N):
    p = CountingProblem(get(L, N), get(V, N), N)
    bell, pf = z_series_bell(p), z_series_pf(p)
    assert bell == pf
    return [int(c) for c in bell]


def test_criterion_01_example1_m2():
    with criterion(1, "Example 1 (M=2) A_1..A_6 = 1,4,20,150,1352,15428, both routes, < 1 s"):
        start = time.perf_counter()
        A = both_routes("one-plus-delta:2", "ones", 6)
        assert A[1:] == [1, 4, 20, 150, 1352, 15428]
        assert time.perf_counter() - start < 1.0


def test_criterion_02_example1_m3():
    # The computed A_5 is 572 = (1 + C(5,3)) * B_5; the published list reads 527.
    with criterion(2, "Example 1 (M=3) A_1..A_6 = 1,2,10,75,527,6293"):
        A = both_routes("one-plus-delta:3", "ones", 6)
        assert A[1:] == [1, 2, 10, 75, 527, 6293]


def test_criterion_03_example2():
    with criterion(3, "Example 2 A_1..A_6 = 1,6,50,615,10192,214571"):
        A = both_routes("linear", "ones", 6)
        assert A[1:] == [1, 6, 50, 615, 10192, 214571]


def test_criterion_04_example3_end_to_end():
    with criterion(4, "Example 3 A_1..A_6 = 0,3,13,292,5511,166091; V from word (ad)^2 a"):
        N = 6
        A = both_routes("no-singletons", "factorial", N)
        assert A[1:] == [0, 3, 13, 292, 5511, 166091]
        w = WordSpec.parse("ad ad a")
        for method in ("brute", "analytic"):
            V = v_sequence(w, N=N, method=method)
            assert V.weights == tuple(factorial(n) for n in range(1, N + 1))
            p = CountingProblem(get("no-singletons", N), V, N)
            assert [int(c) for c in z_series_bell(p)][1:] == [0, 3, 13, 292, 5511, 166091]
            assert z_series_pf(p) == z_series_bell(p)


def test_criterion_05_example4():
    with criterion(5, "Example 4 A_1..A_8 = 0,4,0,240,0,49938,0,24608160"):
        A = both_routes("even-linear", "ones", 8)
        assert A[1:] == [0, 4, 0, 240, 0, 49938, 0, 24608160]


def test_criterion_06_example5_closed_forms():
    with criterion(6, "Example 5 Z1, Z2 coefficients; Z3 == Hermite route through lambda^12"):
        z1 = closed_form_series("Z1", 7)
        assert [int(c) for c in z1] == [1, 2, 5, 14, 43, 142, 499, 1850]
        z2 = closed_form_series("Z2", 10)
        assert [int(c) for c in z2.coeffs[::2]] == [1, 5, 129, 7485, 755265, 116338005]
        assert closed_form_series("Z3", 12) == hermite_route_series(3, 12)


def random_problem(rng, N):
    return CountingProblem(
        WeightSequence(tuple(rng.randint(0, 3) for _ in range(N))),
        WeightSequence(tuple(rng.randint(0, 3) for _ in range(N))),
        N,
    )


def test_criterion_07_three_route_agreement():
    with criterion(7, "bell == pf (n <= 10) and graph totals (n <= 6) for 5 examples + 20 random, < 5 min"):
        start = time.perf_counter()
        N = 10
        problems = [
            CountingProblem(get(L, N), get(V, N), N)
            for L, V in [
                ("one-plus-delta:2", "ones"),
                ("one-plus-delta:3", "ones"),
                ("linear", "ones"),
                ("no-singletons", "factorial"),
                ("even-linear", "ones"),
            ]
        ]
        problems.append(CountingProblem(get("delta:2", N), WeightSequence((2, 1)).padded(N), N))
        rng = random.Random(20240601)
        problems += [random_problem(rng, N) for _ in range(20)]
        for p in problems:
            bell = z_series_bell(p)
            assert z_series_pf(p) == bell
            for n in range(7):
                assert graph_oracle(p, n).total == bell[n]
        assert time.perf_counter() - start < 300


def test_criterion_08_kernel_oracles():
    with criterion(8, "analytic kernels == brute force; Bargmann checks for all words of length <= 6, degree <= 8"):
        cases = [(WordSpec.parse("ad a"), 8), (WordSpec.sum(), 8)]
        cases += [(WordSpec.monomial(r, 1), 6) for r in (2, 3, 4)]
        for w, N in cases:
            assert gw_kernel_analytic(w, N) == normal_order_exp(w, N)
        for length in range(1, 7):
            for letters in itertools.product((0, 1), repeat=length):
                w = WordSpec(letters)
                assert bargmann_check(w, normal_order_word(w), 8)


def test_criterion_09_property_suite():
    with criterion(9, "PF symmetry, exp/log, excess, Bell vs partitions (n <= 9), Example 4 parity, L<->V"):
        rng = random.Random(7)

        def rand_series(N, const=None):
            cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(N + 1)]
            if const is not None:
                cs[0] = Fraction(const)
            return EgfSeries.of(cs)

        for _ in range(20):
            f, g = rand_series(10), rand_series(10)
            assert egf.product_formula(f, g) == egf.product_formula(g, f)
            h = rand_series(8, const=0)
            assert egf.log(egf.exp(h)) == h
            k = rand_series(8, const=1)
            assert egf.exp(egf.log(k)) == k

        for length in range(1, 6):
            for letters in itertools.product((0, 1), repeat=length):
                w = WordSpec(letters)
                kernel = normal_order_exp(w, 2)
                for n in (1, 2):
                    assert all(p - q == n * w.excess for p, q in kernel.g[n].terms)

        tri = bell_triangle(preset("ones", 9), 9)
        for n in range(1, 10):
            blocks = [0] * (n + 1)
            for rgs in set_partitions(n):
                blocks[max(rgs) + 1] += 1
            assert list(tri.rows[n]) == blocks[1:]

        ex4 = both_routes("even-linear", "ones", 12)
        assert all(ex4[n] == 0 for n in range(1, 13, 2))

        for _ in range(10):
            p = random_problem(rng, 9)
            assert z_series_bell(p) == z_series_bell(p.swapped())
            assert z_series_pf(p) == z_series_pf(p.swapped())


def test_criterion_10_alternative_description():
    with criterion(10, "alternative description round trip for Z1, Z2 to order 10; V_2n = (4n+1)(2n-1)!"):
        for which in ("Z1", "Z2"):
            Z = closed_form_series(which, 10)
            alt = alternative_description(Z)
            assert alt.L == preset("delta", 10, 1)
            assert z_series_bell(alt) == Z
        V = alternative_description(closed_form_series("Z2", 10)).V
        for n in range(1, 6):
            assert V[2 * n] == (4 * n + 1) * factorial(2 * n - 1)
            assert V[2 * n - 1] == 0
