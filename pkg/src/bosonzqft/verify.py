"""Cross-check suite run by ``bosonzqft verify``.

Every check compares two independently computed exact values; any mismatch
marks the check failed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import data, egf
from .bell import WeightSequence, bell_triangle, complete_bell, preset
from .boson import (
    WordSpec,
    bargmann_check,
    gw_kernel_analytic,
    normal_order_exp,
    normal_order_word,
    v_sequence,
)
from .egf import EgfSeries
from .zqft import (
    CountingProblem,
    closed_form_series,
    graph_oracle,
    alternative_description,
    hermite_route_series,
    set_partitions,
    z_series_bell,
    z_series_pf,
)

GRAPH_LIMIT = 6


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def random_series(rng: random.Random, order: int, const: int | None = None) -> EgfSeries:
    cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order + 1)]
    if const is not None:
        cs[0] = Fraction(const)
    return EgfSeries.of(cs)


def random_problem(rng: random.Random, order: int) -> CountingProblem:
    def weights():
        return WeightSequence(tuple(rng.randint(0, 3) for _ in range(order)))

    return CountingProblem(weights(), weights(), order)


def parse_preset(spec: str, order: int):
    name, _, param = spec.partition(":")
    return preset(name, order, int(param) if param else None)


def example_problem(name: str, order: int) -> CountingProblem:
    L, V, _, _ = data.EXAMPLES[name]
    return CountingProblem(parse_preset(L, order), parse_preset(V, order), order)


def _check(suite, name, got, expected) -> CheckResult:
    ok = got == expected
    detail = "" if ok else f"got {got!r}, expected {expected!r}"
    return CheckResult(suite, name, ok, detail)


def check_egf(order: int, rng: random.Random) -> list[CheckResult]:
    out = []
    for trial in range(5):
        f, g = random_series(rng, order), random_series(rng, order)
        out.append(
            _check("pf-symmetry", f"random #{trial}", egf.product_formula(f, g), egf.product_formula(g, f))
        )
        h = random_series(rng, order, const=0)
        out.append(_check("exp-log", f"log(exp(h)) #{trial}", egf.log(egf.exp(h)), h))
        k = random_series(rng, order, const=1)
        out.append(_check("exp-log", f"exp(log(k)) #{trial}", egf.exp(egf.log(k)), k))
    return out


def check_z_routes(order: int, rng: random.Random, n_random: int = 20) -> list[CheckResult]:
    problems = [(name, example_problem(name, order)) for name in data.EXAMPLES]
    problems += [(f"random #{i}", random_problem(rng, order)) for i in range(n_random)]
    out = []
    for name, p in problems:
        bell = z_series_bell(p)
        out.append(_check("z-routes", f"{name}: bell == pf", z_series_pf(p), bell))
        out.append(_check("z-routes", f"{name}: L<->V swap", z_series_pf(p.swapped()), bell))
        totals = [graph_oracle(p, n).total for n in range(min(order, GRAPH_LIMIT) + 1)]
        out.append(_check("z-routes", f"{name}: graph totals", totals, list(bell.coeffs[: len(totals)])))
    return out


def check_kernels(order: int) -> list[CheckResult]:
    out = []
    cases = [(WordSpec.parse("ad a"), order), (WordSpec.sum(), order)]
    cases += [(WordSpec.monomial(r, 1), min(order, 6)) for r in (2, 3, 4)]
    for w, n in cases:
        out.append(_check("kernels", f"{w} N={n}", gw_kernel_analytic(w, n), normal_order_exp(w, n)))
    return out


def check_bargmann(max_len: int = 6, degree: int = 8) -> list[CheckResult]:
    failures = []
    count = 0
    for length in range(1, max_len + 1):
        for letters in itertools.product((0, 1), repeat=length):
            w = WordSpec(letters)
            count += 1
            if not bargmann_check(w, normal_order_word(w), degree):
                failures.append(str(w))
    return [CheckResult("bargmann", f"{count} words, length <= {max_len}, degree <= {degree}", not failures, ", ".join(failures))]


def check_paper_values() -> list[CheckResult]:
    out = []
    for name, (_, _, first, values) in data.EXAMPLES.items():
        n_max = first + len(values) - 1
        p = example_problem(name, n_max)
        got = [int(x) for x in z_series_bell(p).coeffs[first:]]
        out.append(_check("paper", name, got, values))
    z1 = closed_form_series("Z1", len(data.Z1) - 1)
    out.append(_check("paper", "Z1 closed form", [int(x) for x in z1], data.Z1))
    n2 = 2 * (len(data.Z2_EVEN) - 1)
    z2 = closed_form_series("Z2", n2)
    out.append(_check("paper", "Z2 closed form", [int(x) for x in z2.coeffs[::2]], data.Z2_EVEN))
    out.append(_check("paper", "Z3 closed form vs Hermite route", closed_form_series("Z3", 12), hermite_route_series(3, 12)))
    v = v_sequence(WordSpec.parse("ad ad a"), N=6)
    out.append(_check("paper", "V for (ad)^2 a is n!", v, preset("factorial", 6)))
    ones = preset("ones", 6)
    out.append(_check("paper", "Bell numbers", [int(x) for x in complete_bell(ones, 6)], data.BELL))
    return out


def check_bell(order: int) -> list[CheckResult]:
    ones = preset("ones", order)
    tri = bell_triangle(ones, order)
    counts = []
    for n in range(1, order + 1):
        by_blocks = [0] * (n + 1)
        for rgs in set_partitions(n):
            by_blocks[max(rgs) + 1] += 1
        counts.append(tri.rows[n] == tuple(by_blocks[1:]))
    return [CheckResult("bell", f"Stirling triangle vs partitions, n <= {order}", all(counts))]


def check_alternative(order: int) -> list[CheckResult]:
    out = []
    for which in ("Z1", "Z2"):
        Z = closed_form_series(which, order)
        out.append(_check("alt-description", f"{which} round trip", z_series_bell(alternative_description(Z)), Z))
    return out


def run_all(order: int = 8, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    results = []
    results += check_egf(order, rng)
    results += check_bell(order)
    results += check_z_routes(order, rng)
    results += check_kernels(order)
    results += check_bargmann()
    results += check_paper_values()
    results += check_alternative(order)
    return results
