"""Surfaces ``S = (C_1 x C_2)/G`` with ``G`` abelian acting freely and diagonally.

Hodge numbers come from the Kunneth decomposition of the product into
character pieces.  The dual of the weight-2 infinitesimal period map is
surjective iff, for each factor ``i``, the products
``H^0(K)^chi x H^0(K)^{chi*}`` over characters ``chi`` that are admissible
(nonzero eigenspace on the *other* factor) span the invariant quadratic
differentials of ``C_i``.  This module bounds that span by counting and,
over a rational quotient, computes it exactly.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .covers import (
    CoverSpec,
    EigenTable,
    eigentable,
    genus,
    inertia_subgroups,
    invariant_bicanonical_dim,
    quotient_genus,
    twist_spec,
)
from .errors import InputError, NotAProductError
from .groups import Character, Element, GroupAutomorphism, subgroups
from .linalg import rank, rref, transpose
from .rrspace import eigenform_pairs, invariant_bicanonical_target, multiplication_rank

log = logging.getLogger(__name__)


class Verdict(str, Enum):
    FAILS_BY_DIMENSION = "FAILS_BY_DIMENSION"
    NECESSARY_CONDITION_HOLDS = "NECESSARY_CONDITION_HOLDS"
    SURJECTIVE_EXACT = "SURJECTIVE_EXACT"
    RANK_DEFICIENT = "RANK_DEFICIENT"
    UNDETERMINED_BY_DIMENSION = "UNDETERMINED_BY_DIMENSION"
    VACUOUSLY_SURJECTIVE = "VACUOUSLY_SURJECTIVE"


class HypothesisStatus(str, Enum):
    SATISFIED = "SATISFIED"
    VIOLATED = "VIOLATED"
    NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class ProductSurfaceSpec:
    spec1: CoverSpec
    spec2: CoverSpec
    twist: Optional[GroupAutomorphism] = None

    def __post_init__(self):
        if self.spec1.group != self.spec2.group:
            raise InputError(f"factor groups differ: {self.spec1.group} vs {self.spec2.group}")

    @property
    def group(self):
        return self.spec1.group

    def factor(self, i: int) -> CoverSpec:
        """Factor ``i`` (1 or 2) with the twist applied to the second one."""
        if i == 1:
            return self.spec1
        if i == 2:
            return twist_spec(self.spec2, self.twist) if self.twist is not None else self.spec2
        raise InputError(f"factor must be 1 or 2, got {i}")

    def tables(self) -> tuple[EigenTable, EigenTable]:
        return eigentable(self.factor(1)), eigentable(self.factor(2))


def _check_genera(ps: ProductSurfaceSpec):
    for i in (1, 2):
        g = genus(ps.factor(i))
        if g < 2:
            raise InputError(f"factor {i} has genus {g}; both curves need genus >= 2")


def freeness_check(ps: ProductSurfaceSpec) -> tuple[bool, Optional[Element]]:
    """``(True, None)`` if the diagonal action is free, else ``(False, g)`` with a
    nonzero ``g`` fixing points on both factors."""
    H2 = set().union(*(H.elements for H in inertia_subgroups(ps.factor(2))))
    G = ps.group
    # first branch point of factor 1 (in order) whose inertia meets factor 2 gives the witness
    for g in ps.factor(1).monodromies:
        x = g
        while any(x):
            if x in H2:
                return False, x
            x = G.add(x, g)
    return True, None


def _require_free(ps: ProductSurfaceSpec):
    free, witness = freeness_check(ps)
    if not free:
        raise InputError(f"the action is not free: {witness} has fixed points on both factors")
    _check_genera(ps)


@dataclass(frozen=True)
class HodgeSummary:
    q: int
    p_g: int
    h11: int
    t1: int
    t2: int
    h1_theta: int
    euler: int
    chi_O: int
    g1: int
    g2: int

    def to_json(self) -> dict:
        return asdict(self)


def hodge_summary(ps: ProductSurfaceSpec) -> HodgeSummary:
    _require_free(ps)
    G = ps.group
    T1, T2 = ps.tables()
    zero = G.zero
    q = T1[zero] + T2[zero]
    p_g = sum(n * T2.dual(chi) for chi, n in T1.dims.items())
    # H^0(K_1)^chi (x) H^1(O_2)^{chi*} and H^1(O_1)^chi (x) H^0(K_2)^{chi*} both give sum d1 d2
    h11 = 2 + 2 * sum(n * T2[chi] for chi, n in T1.dims.items())
    t1 = invariant_bicanonical_dim(ps.factor(1))
    t2 = invariant_bicanonical_dim(ps.factor(2))
    g1, g2 = T1.genus, T2.genus
    num = (2 - 2 * g1) * (2 - 2 * g2)
    if num % G.order or ((g1 - 1) * (g2 - 1)) % G.order:
        raise InputError("|G| does not divide the Euler number of the product; action cannot be free")
    return HodgeSummary(q, p_g, h11, t1, t2, t1 + t2, num // G.order, (g1 - 1) * (g2 - 1) // G.order, g1, g2)


def admissible_characters(ps: ProductSurfaceSpec, factor: int) -> list[Character]:
    other = ps.tables()[2 - factor]
    return sorted(chi for chi, n in other.dims.items() if n)


def _pair_bound(table: EigenTable, admissible: Sequence[Character]) -> int:
    G = table.group
    seen, total = set(), 0
    for chi in admissible:
        dual = G.dual(chi)
        key = frozenset({chi, dual})
        if key in seen:
            continue
        seen.add(key)
        a = table[chi]
        if chi == dual:
            total += a * (a + 1) // 2
        else:
            total += a * table[dual]
    return total


def image_dim_bound(ps: ProductSurfaceSpec, factor: int) -> int:
    """Upper bound for the image of the factor's multiplication map."""
    table = ps.tables()[factor - 1]
    bound = _pair_bound(table, admissible_characters(ps, factor))
    return min(bound, invariant_bicanonical_dim(ps.factor(factor)))


@dataclass
class FactorReport:
    factor: int
    admissible: list[Character]
    image_bound: int
    target: int
    verdict: Verdict
    exact_rank: Optional[int] = None
    warning: Optional[str] = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["admissible"] = [list(c) for c in self.admissible]
        d["verdict"] = self.verdict.value
        return d


@dataclass
class Dphi1Factor:
    factor: int
    q: int
    source: int
    target: int
    verdict: Verdict

    def to_json(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d


@dataclass
class TorelliReport:
    factors: list[FactorReport]
    kernel_lower_bound: int
    dphi1: list[Dphi1Factor] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "factors": [f.to_json() for f in self.factors],
            "kernel_lower_bound": self.kernel_lower_bound,
            "dphi1": [f.to_json() for f in self.dphi1],
        }


def exact_rank(ps: ProductSurfaceSpec, factor: int) -> int:
    spec = ps.factor(factor)
    pairs = eigenform_pairs(spec, admissible_characters(ps, factor))
    return multiplication_rank(pairs, invariant_bicanonical_target(spec))


def torelli_report(ps: ProductSurfaceSpec, exact: bool = False) -> TorelliReport:
    _require_free(ps)
    reports = []
    for i in (1, 2):
        bound = image_dim_bound(ps, i)
        target = invariant_bicanonical_dim(ps.factor(i))
        rep = FactorReport(i, admissible_characters(ps, i), bound, target, Verdict.NECESSARY_CONDITION_HOLDS)
        if bound < target:
            rep.verdict = Verdict.FAILS_BY_DIMENSION
        if exact:
            if ps.factor(i).quotient_genus != 0:
                rep.warning = "exact rank needs a rational quotient; reporting the dimension bound only"
                log.warning("factor %d: %s", i, rep.warning)
            else:
                rep.exact_rank = exact_rank(ps, i)
                if rep.exact_rank == target:
                    rep.verdict = Verdict.SURJECTIVE_EXACT
                elif bound >= target:
                    rep.verdict = Verdict.RANK_DEFICIENT
        reports.append(rep)
    kernel = sum(max(0, r.target - (r.exact_rank if r.exact_rank is not None else r.image_bound)) for r in reports)
    return TorelliReport(reports, kernel, dphi1_report(ps))


def dphi1_report(ps: ProductSurfaceSpec) -> list[Dphi1Factor]:
    """Dimension count for ``Sym^2 H^0(K_i)^G -> H^0(2K_i)^G``."""
    _require_free(ps)
    out = []
    for i, table in zip((1, 2), ps.tables()):
        q = table[ps.group.zero]
        source = q * (q + 1) // 2
        target = invariant_bicanonical_dim(ps.factor(i))
        if target == 0:
            verdict = Verdict.VACUOUSLY_SURJECTIVE
        elif source < target:
            verdict = Verdict.FAILS_BY_DIMENSION
        else:
            verdict = Verdict.UNDETERMINED_BY_DIMENSION
        out.append(Dphi1Factor(i, q, source, target, verdict))
    return out


@dataclass
class HypothesisCheck:
    factor: int
    status: HypothesisStatus
    reason: str = ""
    witness: Optional[list[Element]] = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["status"] = self.status.value
        if self.witness is not None:
            d["witness"] = [list(g) for g in self.witness]
        return d


def double_torelli_hypothesis(ps: ProductSurfaceSpec) -> list[HypothesisCheck]:
    """Per factor: quotient genus >= 2, or genus 1 with no proper nontrivial
    subgroup ``H`` giving an elliptic ``C/H``."""
    if not freeness_check(ps)[0]:
        return [HypothesisCheck(i, HypothesisStatus.NOT_APPLICABLE, "action is not free") for i in (1, 2)]
    out = []
    for i in (1, 2):
        spec = ps.factor(i)
        gY = spec.quotient_genus
        if gY >= 2:
            out.append(HypothesisCheck(i, HypothesisStatus.SATISFIED, f"quotient genus {gY} >= 2"))
        elif gY == 0:
            out.append(HypothesisCheck(i, HypothesisStatus.VIOLATED, "quotient genus 0"))
        else:
            bad = next(
                (H for H in subgroups(spec.group)
                 if not H.is_trivial() and not H.is_full() and quotient_genus(spec, H) == 1),
                None,
            )
            if bad is None:
                out.append(HypothesisCheck(i, HypothesisStatus.SATISFIED, "no proper subgroup has an elliptic quotient"))
            else:
                out.append(HypothesisCheck(i, HypothesisStatus.VIOLATED, "elliptic intermediate quotient",
                                           witness=list(bad.generators)))
    return out


def tensor_factor_recovery(L: Sequence[Sequence[Sequence]]) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """Recover ``(U', V')`` from a subspace ``L = U' (x) V'`` of ``U (x) V``.

    Elements of ``L`` are ``dim U x dim V`` matrices.  Contracting with all of
    ``V^dual`` gives the column span, with ``U^dual`` the row span.  Bases are
    returned in reduced row echelon form.
    """
    mats = [[[Fraction(a) for a in row] for row in M] for M in L]
    if not mats or rank([sum(M, []) for M in mats]) == 0:
        raise NotAProductError("L is zero")
    U = rref([col for M in mats for col in transpose(M)])
    V = rref([row for M in mats for row in M])
    dim_L = rank([sum(M, []) for M in mats])
    if dim_L != len(U) * len(V):
        raise NotAProductError(f"dim L = {dim_L} but dim U' * dim V' = {len(U)} * {len(V)}")
    return U, V
