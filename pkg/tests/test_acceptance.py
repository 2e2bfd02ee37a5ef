"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line; ``conftest.py`` prints them at the
end of the run, and ``python tests/test_acceptance.py`` prints them directly.
"""

from __future__ import annotations

import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gen import random_cover, random_free_product  # noqa: E402
from hodgelab import fixtures  # noqa: E402
from hodgelab.covers import (  # noqa: E402
    CoverSpec,
    building_degrees,
    eigentable,
    genus,
    invariant_bicanonical_dim,
    inverted,
    pardini_check,
    quotient_genus,
    table_grid,
    twist_spec,
)
from hodgelab.errors import InputError  # noqa: E402
from hodgelab.families import (  # noqa: E402
    bicyclic_surface,
    classical_relabel,
    dimension_failure_surface,
    five_point_triple_cover,
    k_family,
)
from hodgelab.groups import GroupAutomorphism, char_pairing, subgroup, validate_automorphism  # noqa: E402
from hodgelab.remainders import unit_rescaling_to_d, verify_bound  # noqa: E402
from hodgelab.linalg import rref  # noqa: E402
from hodgelab.torelli import (  # noqa: E402
    Verdict,
    dphi1_report,
    freeness_check,
    hodge_summary,
    image_dim_bound,
    tensor_factor_recovery,
    torelli_report,
)

RESULTS: list[str] = []
PROPERTY_INSTANCES = 200


def record(number: int, title: str, failures: list[str], detail: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} [{status}] {title}"
    if detail:
        line += f" ({detail})"
    if failures:
        line += ": " + "; ".join(failures[:5])
    RESULTS.append(line)
    print(line)
    assert not failures, line


def test_criterion_1_dimension_failure_table():
    failures = []
    for d, g in fixtures.DIMENSION_FAILURE["cases"]:
        bound = image_dim_bound(dimension_failure_surface(d, g), 1)
        expected = fixtures.dimension_failure_closed_form(d, g)
        if bound != expected or not bound < 3 * g - 3:
            failures.append(f"d={d} g'={g}: bound {bound}, closed form {expected}, target {3 * g - 3}")
    record(1, "image bound below 3g'-3 with closed-form values", failures,
           f"{len(fixtures.DIMENSION_FAILURE['cases'])} configurations")


def test_criterion_2_five_point_cover():
    spec = five_point_triple_cover()
    failures = []
    if genus(spec) != 3:
        failures.append(f"genus {genus(spec)}")
    t = eigentable(spec)
    if t.multiset() != [0, 1, 2]:
        failures.append(f"dims {t.multiset()}")
    bd = building_degrees(spec)
    if sorted(bd.L_degrees.values()) != [0, 2, 3]:
        failures.append(f"degrees {sorted(bd.L_degrees.values())}")
    if sorted(inverted(t).dims.values()) != [0, 1, 2]:
        failures.append("inversion changed the multiset")
    if not pardini_check(bd)[0]:
        failures.append("building data equivalences fail")
    record(2, "Z/3 five-point cover: genus 3, dims {0,1,2}, degrees {0,2,3}", failures)


def test_criterion_3_k_family():
    failures = []
    for k in range(2, 11):
        ps = k_family(k)
        hs = hodge_summary(ps)
        got = (hs.p_g, hs.h11, hs.h1_theta, invariant_bicanonical_dim(ps.factor(2)))
        want = (6 * k - 6, 12 * k - 10, 3 * k + 2, 3 * k - 4)
        if got != want:
            failures.append(f"k={k}: {got} != {want}")
        rep = torelli_report(ps)
        f1 = rep.factors[0]
        if rep.kernel_lower_bound < 2 or f1.image_bound != 4 or f1.target != 6:
            failures.append(f"k={k}: kernel {rep.kernel_lower_bound}, bound {f1.image_bound}, target {f1.target}")
    record(3, "k-family Hodge numbers and factor-1 dimension failure", failures, "k = 2..10")


def test_criterion_4_lemma_sweep():
    failures, checked = [], 0
    t0 = time.perf_counter()
    for d_max, rs in [(40, [4]), (24, [4, 5, 6])]:
        rep = verify_bound(d_max, rs, jobs=4)
        checked += rep.checked
        if rep.violations:
            failures.append(f"d_max={d_max} r={rs}: {len(rep.violations)} violations")
    elapsed = time.perf_counter() - t0
    if checked < 10**5:
        failures.append(f"only {checked} instances")
    if elapsed >= 60:
        failures.append(f"{elapsed:.1f} s")
    record(4, "remainder-sum bound, exhaustive", failures, f"{checked} compositions, {elapsed:.2f} s, 4 workers")


def test_criterion_5_bicyclic_tables():
    failures = []
    for d, r in fixtures.BICYCLIC["cases"]:
        relabel = classical_relabel(d)
        plain, twisted = bicyclic_surface(d), bicyclic_surface(d, r)
        c1 = table_grid(eigentable(plain.factor(1)), relabel)
        c2 = table_grid(eigentable(plain.factor(2)), relabel)
        tw = table_grid(eigentable(twisted.factor(2)), relabel)
        if c2 != [[int(a != 0 and b != 0) for a in range(d)] for b in range(d)]:
            failures.append(f"d={d}: untwisted C2 pattern")
        rows = [sorted(row) for row in c1]
        if rows[0] != sorted([0] + list(range(d - 1))) or any(row != list(range(d)) for row in rows[1:]):
            failures.append(f"d={d}: C1 row multisets")
        if c1 != fixtures.bicyclic_c1_grid(d):
            failures.append(f"d={d}: C1 grid")
        zeros = {(a, b) for b in range(d) for a in range(d) if tw[b][a] == 0}
        line1 = {(n, n) for n in range(d)}
        line2 = {(n * r % d, n) for n in range(d)}
        if len(zeros) != 2 * d - 1 or zeros != line1 | line2 or line1 & line2 != {(0, 0)}:
            failures.append(f"d={d} r={r}: twisted zeros {sorted(zeros)}")
        f2 = torelli_report(twisted, exact=True).factors[1]
        if (f2.exact_rank, f2.target, f2.verdict) != (1, 1, Verdict.SURJECTIVE_EXACT):
            failures.append(f"d={d} r={r}: factor 2 {f2.exact_rank}/{f2.target} {f2.verdict.value}")
    record(5, "bicyclic tables, twisted zeros, factor-2 exact rank", failures,
           ", ".join(f"d={d} r={r}" for d, r in fixtures.BICYCLIC["cases"]))


def _random_automorphism(rng, G):
    while True:
        phi = GroupAutomorphism(tuple(tuple(rng.randrange(G.exponent) for _ in range(G.rank)) for _ in range(G.rank)))
        if validate_automorphism(phi, G)[0]:
            return phi


def _applicable_cyclic(rng):
    while True:
        d = rng.randint(4, 40)
        r = rng.randint(4, min(d, 8))
        cuts = sorted(rng.sample(range(1, d), r - 1))
        m = [b - a for a, b in zip([0] + cuts, cuts + [d])]
        u = rng.choice([x for x in range(1, d) if math.gcd(x, d) == 1])
        try:
            return CoverSpec.build([d], 0, [u * x % d for x in m])
        except InputError:
            continue


def _property_failures() -> dict[str, int]:
    counts = {}

    def suite(name, check):
        bad = 0
        for seed in range(PROPERTY_INSTANCES):
            if not check(random.Random(seed)):
                bad += 1
        counts[name] = bad

    def genus_sum(rng):
        spec = random_cover(rng)
        return sum(eigentable(spec).dims.values()) == genus(spec)

    def serre(rng):
        spec = random_cover(rng)
        t, G = eigentable(spec), spec.group
        return all(
            t[c] + t.dual(c) == 2 * spec.quotient_genus - 2 + sum(1 for g in spec.monodromies if char_pairing(G, c, g))
            for c in G.characters() if any(c)
        )

    def twist(rng):
        spec = random_cover(rng)
        G = spec.group
        phi = _random_automorphism(rng, G)
        t, tt = eigentable(spec), eigentable(twist_spec(spec, phi))
        return all(tt[c] == t[phi.pullback_character(G, c)] for c in G.characters())

    def euler(rng):
        hs = hodge_summary(random_free_product(rng))
        return hs.chi_O == 1 - hs.q + hs.p_g and hs.euler == 2 - 4 * hs.q + 2 * hs.p_g + hs.h11

    def part1(rng):
        gY = rng.choice([1, 2, 3])
        spec = random_cover(rng, quotient_genus=gY, cyclic=gY == 1)
        t = eigentable(spec)
        if gY >= 2:
            return all(n >= gY - 1 >= 1 for n in t.dims.values())
        if genus(spec) < 2:
            return True
        d = spec.group.order
        return all(t[(i,)] >= 1 for i in range(1, d) if math.gcd(i, d) == 1)

    def part2(rng):
        spec = random_cover(rng, quotient_genus=0, cyclic=True, max_branch=7)
        G, t = spec.group, eigentable(spec)
        for c in G.characters():
            if not any(c):
                continue
            h = quotient_genus(spec, subgroup(G, [g for g in G.elements() if char_pairing(G, c, g) == 0]))
            if h == 0 and (t[c] or t.dual(c)):
                return False
            if h >= 2 and not (t[c] or t.dual(c)):
                return False
        return True

    def part3(rng):
        spec = _applicable_cyclic(rng)
        d = spec.group.order
        assert unit_rescaling_to_d(d, [g[0] for g in spec.monodromies]) is not None
        zeros = sum(1 for c, n in eigentable(spec).dims.items() if any(c) and n == 0)
        return 2 * zeros < d - 1

    def tensor(rng):
        n, m = rng.randint(2, 4), rng.randint(2, 4)

        def sub(size, k):
            while True:
                rows = [[Fraction(rng.randint(-5, 5)) for _ in range(size)] for _ in range(k)]
                if len(rref(rows)) == k:
                    return rows

        Up, Vp = sub(n, rng.randint(1, n)), sub(m, rng.randint(1, m))
        L = [[[a * b for b in v] for a in u] for u in Up for v in Vp]
        U, V = tensor_factor_recovery(L)
        return U == rref(Up) and V == rref(Vp)

    for name, check in [("genus sum", genus_sum), ("Serre duality", serre), ("twist equivariance", twist),
                        ("Euler and chi(O)", euler), ("nonvanishing, high quotient genus", part1),
                        ("kernel-quotient dichotomy", part2), ("zero-count bound", part3),
                        ("tensor recovery", tensor)]:
        suite(name, check)
    return counts


def test_criterion_6_property_suites():
    counts = _property_failures()
    failures = [f"{name}: {bad} failures" for name, bad in counts.items() if bad]
    record(6, "property suites", failures, f"{len(counts)} suites x {PROPERTY_INSTANCES} seeded instances")


def test_criterion_7_freeness():
    failures = []
    for d, r in fixtures.BICYCLIC["cases"]:
        free, witness = freeness_check(bicyclic_surface(d))
        if free or witness is None:
            failures.append(f"d={d} untwisted reported free")
        if not freeness_check(bicyclic_surface(d, r))[0]:
            failures.append(f"d={d} r={r} twisted not free")
    for k in range(2, 11):
        if not freeness_check(k_family(k))[0]:
            failures.append(f"k={k} not free")
    record(7, "freeness of bicyclic and k-family actions", failures)


def test_criterion_8_dphi1():
    failures = []
    for k in range(2, 11):
        d1, d2 = dphi1_report(k_family(k))
        if (d2.q, d2.target, d2.verdict) != (0, 3 * k - 4, Verdict.FAILS_BY_DIMENSION):
            failures.append(f"k={k} factor 2 {d2}")
        if (d1.source, d1.target, d1.verdict) != (6, 6, Verdict.UNDETERMINED_BY_DIMENSION):
            failures.append(f"k={k} factor 1 {d1}")
    record(8, "dPhi1 dimension report on the k-family", failures, "k = 2..10")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
