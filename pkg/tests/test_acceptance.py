"""Exit criteria. Each test prints one PASS/FAIL line (also collected in the terminal summary)."""

import itertools
import random
import time
from math import comb

from patavoid.avoidance import S3, contains, count_avoiders_multiset, count_avoiding_compositions, enumerate_multiset_permutations
from patavoid.asymptotics import K_infinity, K_of_k, growth_check
from patavoid.bijection import match_parens, tau, tau_inverse, theta
from patavoid.core import CompositionQuery
from patavoid.genfun import composition_gf, f132_via_gf, g_k_series
from patavoid.series import MultiPoly, TruncSeries
from patavoid import verify

PAPER = [1, 2, 4, 8, 16, 31, 60, 114, 214, 398, 732, 1334, 2410]
EXAMPLE_IN = (7, 5, 6, 6, 4, 6, 6, 4, 6, 6, 4, 6, 5, 3, 2, 4, 1, 1, 4)
EXAMPLE_OUT = "7 5 6 6 5 6 6 5 6 6 4 6 5 3 2 5 1 1 4"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_ac1_sequence_reproduction(report):
    mismatches = []
    with Timer() as t:
        for n in range(1, 14):
            for p in S3:
                got = count_avoiding_compositions(CompositionQuery(n), p, jobs=1).value
                if got != PAPER[n - 1]:
                    mismatches.append((n, str(p), got))
    ok = not mismatches and t.seconds < 30
    report("AC1 sequence 1..2410 for all six patterns (78 checks)", ok, f"{t.seconds:.1f}s {mismatches[:3]}")
    assert ok


def test_ac2_gf_matches_brute_force(report):
    bad = []
    checks = 0
    with Timer() as t:
        for n in range(1, 14):
            for k in sorted({1, 2, 3, n}):
                coeff = composition_gf(n, k).coeff(n)
                for p in S3:
                    checks += 1
                    brute = count_avoiding_compositions(CompositionQuery(n, max_part=k), p).value
                    if brute != coeff:
                        bad.append((n, k, str(p), coeff, brute))
    ok = not bad and t.seconds < 10
    report("AC2 composition series == brute force, max_part in {1,2,3,n}", ok, f"{checks} checks {t.seconds:.1f}s {bad[:3]}")
    assert ok


def test_ac3_theorem2(report):
    with Timer() as t:
        res = verify.thm2(12)
    ok = res.ok and t.seconds < 60
    report("AC3 fixed-k compositions, both flavors, n <= 12", ok, f"{res.checks} (n,k,flavor) cases {t.seconds:.1f}s {res.counterexample}")
    assert ok


def test_ac4_theorem3_and_symmetry(report):
    with Timer() as t:
        table = verify.multiset_table(4, 10)
        pattern_res = verify.thm3(table=table)
        symmetry_res = verify.symmetry(table=table)
    ok = pattern_res.ok and symmetry_res.ok and t.seconds < 120
    detail = f"{len(table)} vectors, {symmetry_res.checks} rearrangements {t.seconds:.1f}s"
    report("AC4 multiset counts pattern-independent and symmetric (k<=4, <=10 letters)", ok, detail)
    assert ok, (pattern_res.counterexample, symmetry_res.counterexample)


def _poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return out


def _g3_closed_form(max_degree):
    """Series of the displayed g_3 by solving den * G = num degree by degree."""
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    zero = (0, 0, 0)
    num = {zero: 1, e1: -1, e2: -1, e3: -1, (1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1}
    den = {zero: 1}
    for a, b in ((e1, e2), (e1, e3), (e2, e3)):
        den = _poly_mul(den, {zero: 1, a: -1, b: -1})
    g = {}
    for d in range(max_degree + 1):
        for e in itertools.product(range(d + 1), repeat=3):
            if sum(e) != d:
                continue
            acc = num.get(e, 0)
            for t, c in den.items():
                if t != zero:
                    rest = tuple(x - y for x, y in zip(e, t))
                    if min(rest) >= 0:
                        acc -= c * g[rest]
            g[e] = acc
    return g


def test_ac5_multivariate_closed_forms(report):
    with Timer() as t:
        g2 = g_k_series(2, (6, 6))
        g2_ok = all(g2.coeff((a, b)) == comb(a + b, a) for a in range(7) for b in range(7) if a + b <= 6)
        g3 = g_k_series(3, (6, 6, 6))
        oracle = _g3_closed_form(6)
        g3_ok = all(g3.coeff(e) == c for e, c in oracle.items())
        f_bad = [a for a in itertools.product(range(4), repeat=3) if f132_via_gf(a).value != count_avoiders_multiset(a, "132").value]
    ok = g2_ok and g3_ok and not f_bad and t.seconds < 30
    report("AC5 g_2, g_3 expansions to degree 6 and f(a,132) via series == brute force", ok, f"{len(oracle)} g_3 terms {t.seconds:.1f}s {f_bad[:3]}")
    assert ok


def test_ac6_bijection(report):
    with Timer() as t:
        example_ok = " ".join(map(str, theta(EXAMPLE_IN, (2, 1, 1, 2, 5, 7, 1)))) == EXAMPLE_OUT
        sweep = verify.bijection(max_k=4, max_total=9, patterns=("123", "1234"))
        first = {"".join(map(str, w)) for w in enumerate_multiset_permutations((2, 1, 1)) if contains(w, "132")}
        second = {"".join(map(str, w)) for w in enumerate_multiset_permutations((1, 2, 1)) if contains(w, "132")}
        sets_ok = first == {"1132", "1312", "1321"} and second == {"2132", "1232", "1322"}
    ok = example_ok and sweep.ok and sets_ok and t.seconds < 120
    detail = f"(a) {example_ok} (b) {sweep.checks} images {sweep.counterexample} (c) {sets_ok}; {t.seconds:.1f}s"
    report("AC6 theta: worked example, bijectivity + 123/1234 preservation, 132 sets", ok, detail)
    assert ok


def test_ac7_asymptotics(report):
    with Timer() as t:
        printed = round(K_of_k(5), 5) == 9.95025 and round(K_of_k(10), 4) == 17.9099 and round(K_of_k(20), 4) == 18.9314
        limit = K_infinity(1e-7)
        ratio = growth_check(80, 5)
    ok = printed and abs(limit - 18.9399867) <= 1e-6 and abs(ratio - 1) < 0.01 and t.seconds < 10
    report("AC7 K(5), K(10), K(20), K(inf), c(80,5) ratio", ok, f"K(inf)={limit:.9f} ratio={ratio:.6f} {t.seconds:.2f}s")
    assert ok


def _rand_series(rng, order=10):
    offset = rng.randint(-3, 3)
    coeffs = [rng.randint(-5, 5) for _ in range(rng.randint(1, 6))]
    return TruncSeries.from_coeffs(coeffs, offset + order, offset)


def _agree(a, b):
    order = min(a.order, b.order)
    return a.truncate(order) == b.truncate(order)


def _rand_poly(rng, nvars=3, deg=2):
    terms = {tuple(rng.randint(0, deg) for _ in range(nvars)): rng.randint(-3, 3) for _ in range(rng.randint(1, 5))}
    return MultiPoly(nvars, terms)


def test_ac8_property_suites(report):
    rng = random.Random(20240601)
    n = 1000
    failures = {}

    def ring(_):
        a, b, c = (_rand_series(rng) for _ in range(3))
        return (
            _agree(a + b, b + a)
            and _agree(a * b, b * a)
            and _agree((a * b) * c, a * (b * c))
            and _agree(a * (b + c), a * b + a * c)
        )

    def inversion(_):
        offset = rng.randint(-3, 3)
        coeffs = [rng.choice((1, -1))] + [rng.randint(-5, 5) for _ in range(rng.randint(0, 5))]
        a = TruncSeries.from_coeffs(coeffs, offset + 10, offset)
        p = a * a.invert()
        return _agree(p, TruncSeries.one(p.order))

    def division(_):
        q, d = _rand_poly(rng), _rand_poly(rng)
        while not d:
            d = _rand_poly(rng)
        num = q * d
        return num.exact_div(d) * d == num and num.exact_div(d) == q

    def rand_word():
        return [rng.choice((1, 2, 3)) for _ in range(rng.randint(1, 16))]

    def tau_pair(_):
        while True:
            w = rand_word()
            if match_parens(w, 1).unmatched_opens:
                break
        ok = tau_inverse(tau(w, 1), 1) == tuple(w)
        while True:
            y = rand_word()
            if match_parens(y, 1).unmatched_closes:
                break
        return ok and tau(tau_inverse(y, 1), 1) == tuple(y)

    def stability(_):
        while True:
            w = rand_word()
            before = match_parens(w, 1)
            if before.unmatched_opens:
                break
        after = match_parens(tau(w, 1), 1)
        return set(before.match) <= set(after.match) and after.unmatched_opens == before.unmatched_opens[1:]

    suites = {"ring axioms": ring, "inversion": inversion, "exact division": division, "tau/tau^-1": tau_pair, "matching stability": stability}
    with Timer() as t:
        for name, prop in suites.items():
            failures[name] = sum(1 for i in range(n) if not prop(i))
    ok = not any(failures.values())
    report("AC8 property suites, 1000 random instances each", ok, f"failures {failures} {t.seconds:.1f}s")
    assert ok
