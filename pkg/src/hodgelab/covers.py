"""Abelian branched covers of curves and their eigenspace decompositions.

A cover ``C -> Y = C/G`` is described by the genus of ``Y`` and the local
monodromy at each branch point.  The dimension of the ``chi``-eigenspace of
holomorphic 1-forms on ``C`` is ``g(Y) - 1 + sum_j <chi, g_j>`` for ``chi != 0``,
where ``<chi, g>`` is the rotation number in ``[0, 1)``; the trivial
character gives ``g(Y)``.

Orientation convention: this is the inverse of the labelling in which the
``chi``-forms are ``Omega_Y (x) L_{chi^{-1}}``.  Everything downstream pairs
``chi`` with its dual, so reports do not depend on the choice; use
:func:`inverted` to compare with tables written in the other convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import InputError
from .groups import (
    Character,
    Element,
    FiniteAbelianGroup,
    GroupAutomorphism,
    Subgroup,
    char_pairing,
    element_order,
    subgroup,
    validate_automorphism,
)

INFINITY = "inf"
Coordinate = Union[Fraction, str, None]


def parse_coordinate(value) -> Coordinate:
    if value is None:
        return None
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
        return INFINITY
    try:
        return Fraction(value) if not isinstance(value, float) else Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad branch point coordinate {value!r}") from None


@dataclass(frozen=True)
class BranchPoint:
    label: str
    monodromy: Element
    coordinate: Coordinate = None


@dataclass(frozen=True)
class CoverSpec:
    group: FiniteAbelianGroup
    quotient_genus: int
    branch: tuple[BranchPoint, ...] = ()
    # for g_Y >= 1 the handle monodromies are not modelled; connectedness is assumed
    connected_assumed: bool = field(default=False, compare=False)

    @classmethod
    def build(cls, factors: Sequence[int], quotient_genus: int, monodromies: Iterable[Sequence[int] | int],
              coordinates: Sequence | None = None) -> "CoverSpec":
        """Convenience constructor; integer monodromies are allowed for cyclic groups."""
        G = FiniteAbelianGroup(tuple(factors))
        monos = [(m,) if isinstance(m, int) else tuple(m) for m in monodromies]
        coords = list(coordinates) if coordinates is not None else [None] * len(monos)
        if len(coords) != len(monos):
            raise InputError("one coordinate per branch point is required")
        branch = tuple(
            BranchPoint(f"P{j + 1}", G.element(m), parse_coordinate(c))
            for j, (m, c) in enumerate(zip(monos, coords))
        )
        return validate_spec(cls(G, quotient_genus, branch))

    @property
    def monodromies(self) -> list[Element]:
        return [b.monodromy for b in self.branch]

    @property
    def inertia_orders(self) -> list[int]:
        return [element_order(self.group, g) for g in self.monodromies]

    def cyclic_bookkeeping(self) -> list[dict]:
        """Per-branch-point ``(m_j, r_j, d'_j, m'_j)`` for a cyclic group ``Z/d``."""
        if self.group.rank != 1:
            raise InputError("cyclic bookkeeping needs a single cyclic factor")
        d = self.group.order
        out = []
        for g in self.monodromies:
            m = g[0]
            r = math.gcd(m, d)
            out.append({"m": m, "r": r, "d_prime": d // r, "m_prime": m // r})
        return out


def validate_spec(spec: CoverSpec) -> CoverSpec:
    """Check the monodromy relation and connectedness; return a normalized spec."""
    G = spec.group
    if spec.quotient_genus < 0:
        raise InputError("quotient genus must be >= 0")
    branch = []
    for b in spec.branch:
        g = G.element(b.monodromy)
        if not any(g):
            raise InputError(f"zero monodromy at branch point {b.label}")
        branch.append(replace(b, monodromy=g, coordinate=parse_coordinate(b.coordinate)))
    coords = [b.coordinate for b in branch if b.coordinate is not None]
    if len(coords) != len(set(coords)):
        raise InputError("branch point coordinates must be pairwise distinct")
    if any(G.sum(b.monodromy for b in branch)):
        raise InputError("monodromy sum nonzero")
    if spec.quotient_genus == 0:
        if len(G.span(b.monodromy for b in branch)) != G.order:
            raise InputError("disconnected (g_Y=0, monodromies do not generate)")
    out = CoverSpec(G, spec.quotient_genus, tuple(branch), connected_assumed=spec.quotient_genus >= 1)
    if genus(out) < 0:
        raise InputError("negative genus")
    return out


def _hurwitz(order: int, quotient_genus: int, inertia: Iterable[int]) -> int:
    twice = order * (2 * quotient_genus - 2) + sum((order // e) * (e - 1) for e in inertia)
    if twice % 2:
        raise InputError("Riemann-Hurwitz gives a non-integral genus")
    return twice // 2 + 1


def genus(spec: CoverSpec) -> int:
    """Genus of the cover, by Riemann-Hurwitz.

    >>> genus(CoverSpec.build([3], 0, [1, 1, 1, 1, 2]))
    3
    """
    return _hurwitz(spec.group.order, spec.quotient_genus, spec.inertia_orders)


def quotient_genus(spec: CoverSpec, H: Subgroup | Iterable[Sequence[int]]) -> int:
    """Genus of ``C/H``, seen as a ``G/H``-cover of ``C/G``."""
    G = spec.group
    if not isinstance(H, Subgroup):
        H = subgroup(G, H)
    index = G.order // H.order
    inertia = []
    for g in spec.monodromies:
        k, x = 1, g
        while x not in H:
            k, x = k + 1, G.add(x, g)
        inertia.append(k)
    return _hurwitz(index, spec.quotient_genus, inertia)


@dataclass(frozen=True)
class EigenTable:
    group: FiniteAbelianGroup
    dims: Mapping[Character, int]
    genus: int
    quotient_genus: int

    def __getitem__(self, chi) -> int:
        return self.dims[self.group.character(chi)]

    def dual(self, chi) -> int:
        return self.dims[self.group.dual(self.group.character(chi))]

    def nonzero(self) -> list[Character]:
        return [chi for chi, n in self.dims.items() if n]

    def multiset(self) -> list[int]:
        return sorted(self.dims.values())

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "genus": self.genus,
            "quotient_genus": self.quotient_genus,
            "dims": [{"character": list(chi), "dim": n} for chi, n in sorted(self.dims.items())],
        }


def pairing_sum(spec: CoverSpec, chi: Character) -> Fraction:
    return sum((char_pairing(spec.group, chi, g) for g in spec.monodromies), Fraction(0))


def eigentable(spec: CoverSpec) -> EigenTable:
    G = spec.group
    gY = spec.quotient_genus
    dims = {}
    for chi in G.characters():
        if not any(chi):
            dims[chi] = gY
            continue
        total = pairing_sum(spec, chi)
        if total.denominator != 1:
            raise InputError("pairing sum is not an integer; monodromies do not sum to zero")
        if gY == 0 and total == 0:
            raise InputError(f"character {chi} is trivial on every monodromy of a connected rational cover")
        dims[chi] = gY - 1 + int(total)
    return EigenTable(G, dims, genus(spec), gY)


def inverted(table: EigenTable) -> EigenTable:
    """Relabel ``chi -> chi*``."""
    G = table.group
    return replace(table, dims={G.dual(chi): n for chi, n in table.dims.items()})


def reduced_branch_degree(spec: CoverSpec) -> int:
    return len(spec.branch)


def invariant_bicanonical_dim(spec: CoverSpec) -> int:
    """``h^0(Y, 2K_Y + B_red)``: the dimension of G-invariant quadratic differentials."""
    gY, r = spec.quotient_genus, reduced_branch_degree(spec)
    if gY == 0:
        return max(0, r - 3)
    if gY == 1:
        return r if r else 1
    return 3 * gY - 3 + r


@dataclass(frozen=True)
class BuildingData:
    """Degrees of Pardini building data over the projective line.

    ``D_divisors`` is keyed by the branch monodromy ``g``: it determines the
    inertia subgroup ``H = <g>`` and the generator ``psi`` of ``H*`` with
    ``psi(g) = exp(2 pi i / |H|)``, and conversely.
    """

    group: FiniteAbelianGroup
    L_degrees: Mapping[Character, int]
    D_divisors: Mapping[Element, int]

    def epsilon(self, g: Element, chi: Character, chi2: Character) -> int:
        m = element_order(self.group, g)
        i1 = int(m * char_pairing(self.group, chi, g))
        i2 = int(m * char_pairing(self.group, chi2, g))
        return 0 if i1 + i2 < m else 1

    def inertia(self, g: Element) -> tuple[list[Element], int]:
        """Elements of the inertia subgroup and the order ``m_H``."""
        H = subgroup(self.group, [g])
        return H.sorted_elements(), H.order

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "L_degrees": [{"character": list(c), "degree": n} for c, n in sorted(self.L_degrees.items())],
            "D_divisors": [
                {"inertia_generator": list(g), "inertia_order": element_order(self.group, g), "degree": n}
                for g, n in sorted(self.D_divisors.items())
            ],
        }


def building_degrees(spec: CoverSpec) -> BuildingData:
    if spec.quotient_genus != 0:
        raise InputError("building data degrees need a rational quotient (g_Y = 0)")
    G = spec.group
    L = {}
    for chi in G.characters():
        total = pairing_sum(spec, chi)
        if total.denominator != 1:
            raise InputError("monodromies do not sum to zero")
        L[chi] = int(total)
    D: dict[Element, int] = {}
    for g in spec.monodromies:
        D[g] = D.get(g, 0) + 1
    return BuildingData(G, L, D)


def pardini_check(bd: BuildingData) -> tuple[bool, list[dict]]:
    """Check ``L_chi + L_chi' = L_{chi chi'} + sum eps * D`` for all pairs of characters."""
    G = bd.group
    violations = []
    chars = list(G.characters())
    for chi in chars:
        for chi2 in chars:
            lhs = bd.L_degrees[chi] + bd.L_degrees[chi2]
            rhs = bd.L_degrees[G.add(chi, chi2)] + sum(
                bd.epsilon(g, chi, chi2) * deg for g, deg in bd.D_divisors.items()
            )
            if lhs != rhs:
                violations.append({"chi": list(chi), "chi_prime": list(chi2), "lhs": lhs, "rhs": rhs})
    return not violations, violations


def twist_spec(spec: CoverSpec, phi: GroupAutomorphism) -> CoverSpec:
    """Replace every monodromy ``g`` by ``phi(g)``."""
    ok, reason = validate_automorphism(phi, spec.group)
    if not ok:
        raise InputError(f"invalid automorphism: {reason}")
    branch = tuple(replace(b, monodromy=phi.apply(spec.group, b.monodromy)) for b in spec.branch)
    return replace(spec, branch=branch)


def inertia_subgroups(spec: CoverSpec) -> list[Subgroup]:
    seen, out = set(), []
    for g in spec.monodromies:
        H = subgroup(spec.group, [g])
        if H.elements not in seen:
            seen.add(H.elements)
            out.append(H)
    return out


def render_table(table: EigenTable, relabel=None, title: str | None = None) -> str:
    """Markdown grid for a group ``Z/d + Z/d``: rows ``b``, columns ``a``.

    ``relabel(a, b)`` gives the character whose dimension goes in cell ``(a, b)``;
    by default that is ``(a, b)`` itself.
    """
    G = table.group
    if G.rank != 2 or G.factors[0] != G.factors[1]:
        raise InputError("table rendering needs a group Z/d + Z/d")
    d = G.factors[0]
    relabel = relabel or (lambda a, b: (a, b))
    lines = []
    if title:
        lines += [f"**{title}**", ""]
    lines.append("| | " + " | ".join(f"a = {a}" for a in range(d)) + " |")
    lines.append("|---|" + "---|" * d)
    for b in range(d):
        row = [str(table[relabel(a, b)]) for a in range(d)]
        lines.append(f"| b = {b} | " + " | ".join(row) + " |")
    return "\n".join(lines)


def table_grid(table: EigenTable, relabel=None) -> list[list[int]]:
    d = table.group.factors[0]
    relabel = relabel or (lambda a, b: (a, b))
    return [[table[relabel(a, b)] for a in range(d)] for b in range(d)]
