import random
from dataclasses import replace
from fractions import Fraction

import pytest

from gen import random_free_product
from hodgelab.covers import CoverSpec, eigentable, genus, inverted
from hodgelab.errors import InputError, NotAProductError
from hodgelab.families import (
    bicyclic_surface,
    dimension_failure_surface,
    etale_cyclic_cover,
    k_family,
)
from hodgelab.linalg import rref
from hodgelab.torelli import (
    HypothesisStatus,
    ProductSurfaceSpec,
    Verdict,
    dphi1_report,
    freeness_check,
    hodge_summary,
    image_dim_bound,
    tensor_factor_recovery,
    double_torelli_hypothesis,
    torelli_report,
)
import hodgelab.torelli as torelli_mod


class TestFreeness:
    @pytest.mark.parametrize("k", [2, 3, 6])
    def test_k_family_free(self, k):
        assert freeness_check(k_family(k)) == (True, None)

    @pytest.mark.parametrize("d,r", [(3, 2), (5, 2), (5, 3), (7, 2), (7, 3), (11, 5)])
    def test_twisted_free(self, d, r):
        assert freeness_check(bicyclic_surface(d, r))[0]

    @pytest.mark.parametrize("d", [3, 5, 7])
    def test_untwisted_not_free(self, d):
        assert freeness_check(bicyclic_surface(d)) == (False, (1, 0))

    def test_group_mismatch(self):
        with pytest.raises(InputError):
            ProductSurfaceSpec(etale_cyclic_cover(3, 2), etale_cyclic_cover(5, 2))

    def test_not_free_rejected_by_reports(self):
        with pytest.raises(InputError):
            hodge_summary(bicyclic_surface(5))


class TestHodge:
    def test_k2(self):
        hs = hodge_summary(k_family(2))
        assert (hs.q, hs.p_g, hs.h11, hs.h1_theta) == (3, 6, 14, 8)
        assert hs.euler == 16 == 2 - 4 * hs.q + 2 * hs.p_g + hs.h11

    def test_k5(self):
        hs = hodge_summary(k_family(5))
        assert (hs.p_g, hs.h11, hs.h1_theta) == (24, 50, 17)

    def test_identities_random(self):
        rng = random.Random(2024)
        for _ in range(200):
            hs = hodge_summary(random_free_product(rng))
            assert hs.chi_O == 1 - hs.q + hs.p_g
            assert hs.euler == 2 - 4 * hs.q + 2 * hs.p_g + hs.h11
            assert hs.h1_theta == hs.t1 + hs.t2

    def test_low_genus_rejected(self):
        ps = ProductSurfaceSpec(etale_cyclic_cover(2, 2), CoverSpec.build([2], 0, [1, 1]))
        with pytest.raises(InputError):
            hodge_summary(ps)


class TestBounds:
    @pytest.mark.parametrize("d,g", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 2), (4, 2), (5, 2), (6, 3), (7, 2)])
    def test_closed_forms(self, d, g):
        expected = (d // 2 - 1) * (g - 1) ** 2 + g * (g - 1) // 2 if d % 2 == 0 else (d - 1) // 2 * (g - 1) ** 2
        bound = image_dim_bound(dimension_failure_surface(d, g), 1)
        assert bound == min(expected, 3 * g - 3)

    def test_k_family_factor_one(self):
        rep = torelli_report(k_family(4))
        f1 = rep.factors[0]
        assert (f1.image_bound, f1.target, f1.verdict) == (4, 6, Verdict.FAILS_BY_DIMENSION)
        assert rep.kernel_lower_bound >= 2

    def test_bicyclic_d5(self):
        rep = torelli_report(bicyclic_surface(5, 2), exact=True)
        assert all(f.image_bound >= f.target for f in rep.factors)
        f2 = rep.factors[1]
        assert (f2.exact_rank, f2.target, f2.verdict) == (1, 1, Verdict.SURJECTIVE_EXACT)
        assert rep.kernel_lower_bound == 0

    def test_bicyclic_d3_factor_one_too_small(self):
        f1 = torelli_report(bicyclic_surface(3, 2), exact=True).factors[0]
        assert f1.image_bound < f1.target and f1.verdict == Verdict.FAILS_BY_DIMENSION

    def test_exact_on_positive_genus_warns(self, caplog):
        rep = torelli_report(k_family(2), exact=True)
        f1, f2 = rep.factors
        assert f1.exact_rank is None and f1.warning
        assert f2.exact_rank == f2.target == 2 and f2.verdict == Verdict.SURJECTIVE_EXACT
        assert "rational quotient" in caplog.text

    def test_empty_admissible_set(self, monkeypatch):
        monkeypatch.setattr(torelli_mod, "admissible_characters", lambda ps, factor: [])
        rep = torelli_report(k_family(2))
        assert all(f.image_bound == 0 and f.verdict == Verdict.FAILS_BY_DIMENSION for f in rep.factors)

    def test_kernel_bound_uses_exact_ranks(self):
        for k in (2, 3):
            rep = torelli_report(k_family(k), exact=True)
            deficits = [f.target - (f.exact_rank if f.exact_rank is not None else f.image_bound) for f in rep.factors]
            assert rep.kernel_lower_bound == sum(max(0, x) for x in deficits)
            f2 = rep.factors[1]
            assert rep.kernel_lower_bound >= f2.target - f2.exact_rank

    def test_inversion_invariance(self):
        rng = random.Random(99)
        for _ in range(40):
            ps = random_free_product(rng)
            G = ps.group
            flipped = ProductSurfaceSpec(
                replace(ps.spec1, branch=tuple(replace(b, monodromy=G.neg(b.monodromy)) for b in ps.spec1.branch)),
                replace(ps.spec2, branch=tuple(replace(b, monodromy=G.neg(b.monodromy)) for b in ps.spec2.branch)),
            )
            for i in (1, 2):
                assert eigentable(flipped.factor(i)).dims == inverted(eigentable(ps.factor(i))).dims
            assert hodge_summary(flipped) == hodge_summary(ps)
            assert torelli_report(flipped).to_json()["kernel_lower_bound"] == torelli_report(ps).kernel_lower_bound
            for a, b in zip(torelli_report(flipped).factors, torelli_report(ps).factors):
                assert (a.image_bound, a.target, a.verdict) == (b.image_bound, b.target, b.verdict)


class TestDphi1:
    @pytest.mark.parametrize("k", [2, 4, 7])
    def test_k_family(self, k):
        d1, d2 = dphi1_report(k_family(k))
        assert (d1.source, d1.target, d1.verdict) == (6, 6, Verdict.UNDETERMINED_BY_DIMENSION)
        assert (d2.q, d2.target, d2.verdict) == (0, 3 * k - 4, Verdict.FAILS_BY_DIMENSION)

    def test_no_invariant_forms(self):
        ps = ProductSurfaceSpec(CoverSpec.build([2], 0, [1] * 6), etale_cyclic_cover(2, 2))
        d1 = dphi1_report(ps)[0]
        assert (d1.q, d1.target, d1.verdict) == (0, 3, Verdict.FAILS_BY_DIMENSION)

    def test_vacuous(self):
        # three branch points on the line: no invariant quadratic differentials
        ps = ProductSurfaceSpec(CoverSpec.build([7], 0, [1, 2, 4]), etale_cyclic_cover(7, 2))
        d1 = dphi1_report(ps)[0]
        assert (d1.q, d1.target, d1.verdict) == (0, 0, Verdict.VACUOUSLY_SURJECTIVE)


class TestHypothesis:
    def test_k_family(self):
        c1, c2 = double_torelli_hypothesis(k_family(2))
        assert c1.status == HypothesisStatus.SATISFIED
        assert c2.status == HypothesisStatus.VIOLATED and c2.reason == "quotient genus 0"

    def test_both_high_genus(self):
        ps = ProductSurfaceSpec(etale_cyclic_cover(2, 2), CoverSpec.build([2], 2, [1, 1]))
        assert [c.status for c in double_torelli_hypothesis(ps)] == [HypothesisStatus.SATISFIED] * 2

    def test_elliptic_prime_order(self):
        ps = ProductSurfaceSpec(CoverSpec.build([5], 1, [1, 4]), etale_cyclic_cover(5, 2))
        assert double_torelli_hypothesis(ps)[0].status == HypothesisStatus.SATISFIED

    def test_elliptic_intermediate_quotient(self):
        # Z/4 acting with inertia <2>: the quotient by <2> is an etale double cover of an elliptic curve
        ps = ProductSurfaceSpec(CoverSpec.build([4], 1, [2, 2]), etale_cyclic_cover(4, 2))
        c1 = double_torelli_hypothesis(ps)[0]
        assert c1.status == HypothesisStatus.VIOLATED and c1.witness

    def test_not_free(self):
        assert all(c.status == HypothesisStatus.NOT_APPLICABLE for c in double_torelli_hypothesis(bicyclic_surface(5)))


def _random_subspace(rng, n, k):
    while True:
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(k)]
        if len(rref(rows)) == k:
            return rows


def _outer(u, v):
    return [[a * b for b in v] for a in u]


class TestTensorRecovery:
    def test_pure_tensor(self):
        U, V = tensor_factor_recovery([_outer([1, 0], [0, 1, 0])])
        assert U == [[1, 0]] and V == [[0, 1, 0]]

    def test_everything(self):
        basis = [_outer(e, f) for e in ([1, 0], [0, 1]) for f in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]
        U, V = tensor_factor_recovery(basis)
        assert len(U) == 2 and len(V) == 3

    def test_round_trip(self):
        rng = random.Random(17)
        for _ in range(200):
            n, m = rng.randint(2, 4), rng.randint(2, 4)
            Up, Vp = _random_subspace(rng, n, rng.randint(1, n)), _random_subspace(rng, m, rng.randint(1, m))
            L = [_outer(u, v) for u in Up for v in Vp]
            # mix the spanning set so the recovery does not see the generating vectors
            mixed = []
            for _ in range(len(L) + 1):
                coeffs = [rng.randint(-2, 2) for _ in L]
                mixed.append([[sum(c * M[i][j] for c, M in zip(coeffs, L)) for j in range(m)] for i in range(n)])
            U, V = tensor_factor_recovery(mixed + L)
            assert U == rref(Up) and V == rref(Vp)

    def test_not_a_product(self):
        L = [[[1, 0], [0, 1]]]  # e1 (x) f1 + e2 (x) f2
        with pytest.raises(NotAProductError):
            tensor_factor_recovery(L)

    def test_zero(self):
        with pytest.raises(NotAProductError):
            tensor_factor_recovery([[[0, 0], [0, 0]]])


def test_genus_of_random_free_products_at_least_two():
    rng = random.Random(1)
    for _ in range(30):
        ps = random_free_product(rng)
        assert genus(ps.factor(1)) >= 2 and genus(ps.factor(2)) >= 2
