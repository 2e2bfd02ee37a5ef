"""Finite abelian groups given by a list of cyclic factor orders.

Elements and characters are plain tuples of residues.  The dual group is
identified with the group through the chosen presentation: the character
``a`` sends ``g`` to ``exp(2 pi i * sum_k a_k g_k / n_k)``.

>>> G = FiniteAbelianGroup((5, 5))
>>> G.pairing((1, 1), (1, 0))
Fraction(1, 5)
>>> len(subgroups(G))
8
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, InputError, capacity_guard

Element = tuple[int, ...]
Character = tuple[int, ...]

DEFAULT_GUARD = 10**6


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        if not factors:
            raise InputError("a group needs at least one cyclic factor")
        if any(n < 2 for n in factors):
            raise InputError(f"cyclic factor orders must be >= 2, got {factors}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls((n,))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.factors)

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def is_cyclic(self) -> bool:
        return all(math.gcd(a, b) == 1 for a, b in itertools.combinations(self.factors, 2))

    def element(self, residues: Iterable[int]) -> Element:
        res = tuple(int(a) for a in residues)
        if len(res) != self.rank:
            raise InputError(f"expected {self.rank} residues for group {self.factors}, got {res}")
        return tuple(a % n for a, n in zip(res, self.factors))

    character = element

    def contains(self, g: Sequence[int]) -> bool:
        return len(g) == self.rank and all(0 <= a < n for a, n in zip(g, self.factors))

    def add(self, g: Element, h: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.factors))

    def neg(self, g: Element) -> Element:
        return tuple((-a) % n for a, n in zip(g, self.factors))

    def scale(self, k: int, g: Element) -> Element:
        return tuple((k * a) % n for a, n in zip(g, self.factors))

    def sum(self, elements: Iterable[Element]) -> Element:
        total = self.zero
        for g in elements:
            total = self.add(total, g)
        return total

    def elements(self) -> Iterator[Element]:
        self._check_guard()
        return itertools.product(*(range(n) for n in self.factors))

    characters = elements

    def dual(self, chi: Character) -> Character:
        """The inverse character."""
        return self.neg(chi)

    def pairing(self, chi: Character, g: Element) -> Fraction:
        return char_pairing(self, chi, g)

    def span(self, gens: Iterable[Element]) -> frozenset[Element]:
        """The subgroup generated by ``gens``, as a set of elements."""
        span = {self.zero}
        for g in gens:
            g = self.element(g)
            if g in span:
                continue
            multiples = [self.scale(k, g) for k in range(element_order(self, g))]
            span = {self.add(s, m) for s in span for m in multiples}
            if len(span) > self._guard():
                raise CapacityError(f"span exceeds guard of {self._guard()} elements")
        return frozenset(span)

    def _guard(self) -> int:
        return capacity_guard(DEFAULT_GUARD)

    def _check_guard(self):
        if self.order > self._guard():
            raise CapacityError(f"group of order {self.order} exceeds enumeration guard {self._guard()}")

    def to_json(self) -> dict:
        return {"factors": list(self.factors)}

    def __str__(self):
        return " + ".join(f"Z/{n}" for n in self.factors)


def char_pairing(G: FiniteAbelianGroup, chi: Sequence[int], g: Sequence[int]) -> Fraction:
    """Fractional part of ``sum_k chi_k g_k / n_k``; it is 0 iff ``chi(g) == 1``.

    >>> char_pairing(FiniteAbelianGroup((3,)), (1,), (2,))
    Fraction(2, 3)
    """
    if len(chi) != G.rank or len(g) != G.rank:
        raise InputError(f"character {tuple(chi)} and element {tuple(g)} do not both live in {G.factors}")
    e = G.exponent
    total = sum(a * b * (e // n) for a, b, n in zip(chi, g, G.factors))
    return Fraction(total % e, e)


def element_order(G: FiniteAbelianGroup, g: Sequence[int]) -> int:
    return math.lcm(*(n // math.gcd(a, n) for a, n in zip(g, G.factors)))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, stored as its full element set plus a small generating set."""

    group: FiniteAbelianGroup
    elements: frozenset[Element]
    generators: tuple[Element, ...] = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_full(self) -> bool:
        return self.order == self.group.order

    def __contains__(self, g) -> bool:
        return tuple(g) in self.elements

    def sorted_elements(self) -> list[Element]:
        return sorted(self.elements)


def subgroup(G: FiniteAbelianGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    gens = tuple(G.element(g) for g in gens)
    return Subgroup(G, G.span(gens), tuple(g for g in gens if any(g)))


def character_kernel(G: FiniteAbelianGroup, chi: Character) -> Subgroup:
    elems = frozenset(g for g in G.elements() if char_pairing(G, chi, g) == 0)
    return Subgroup(G, elems, _minimal_generators(G, elems))


def _minimal_generators(G: FiniteAbelianGroup, elems: frozenset[Element]) -> tuple[Element, ...]:
    # greedy: add the highest-order element not yet covered
    gens: list[Element] = []
    covered = frozenset({G.zero})
    for g in sorted(elems, key=lambda x: (-element_order(G, x), x)):
        if g not in covered:
            gens.append(g)
            covered = G.span(gens)
            if covered == elems:
                break
    return tuple(gens)


def subgroups(G: FiniteAbelianGroup) -> list[Subgroup]:
    """All subgroups of ``G``, trivial and full included, without duplicates.

    Every subgroup is a join of cyclic subgroups, so we close the set of cyclic
    subgroups under joins.
    """
    G._check_guard()
    cyclic: dict[frozenset, Element] = {}
    for g in G.elements():
        span = G.span([g])
        if span not in cyclic:
            cyclic[span] = g
    found: dict[frozenset, tuple[Element, ...]] = {frozenset({G.zero}): ()}
    frontier = list(found)
    while frontier:
        new = []
        for S in frontier:
            gens = found[S]
            for C, c in cyclic.items():
                if C <= S:
                    continue
                joined = frozenset(G.add(s, x) for s in S for x in C)
                if joined not in found:
                    found[joined] = gens + (c,)
                    new.append(joined)
        frontier = new
    result = [Subgroup(G, S, gens) for S, gens in found.items()]
    result.sort(key=lambda H: (H.order, H.sorted_elements()))
    return result


@dataclass(frozen=True)
class GroupAutomorphism:
    """Endomorphism given by an integer matrix; column ``j`` is the image of the
    ``j``-th standard generator."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(a) for a in row) for row in self.matrix))

    @classmethod
    def from_images(cls, images: Sequence[Sequence[int]]) -> "GroupAutomorphism":
        """Build from the images of the standard generators."""
        m = len(images)
        return cls(tuple(tuple(images[j][i] for j in range(m)) for i in range(m)))

    @classmethod
    def identity(cls, m: int) -> "GroupAutomorphism":
        return cls(tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))

    def image_of_generator(self, G: FiniteAbelianGroup, j: int) -> Element:
        return G.element(row[j] for row in self.matrix)

    def apply(self, G: FiniteAbelianGroup, g: Sequence[int]) -> Element:
        return G.element(sum(a * b for a, b in zip(row, g)) for row in self.matrix)

    def pullback_character(self, G: FiniteAbelianGroup, chi: Character) -> Character:
        """The character ``chi o phi``."""
        return tuple(
            int(n * char_pairing(G, chi, self.image_of_generator(G, j))) for j, n in enumerate(G.factors)
        )

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """``self o other``."""
        m = len(self.matrix)
        return GroupAutomorphism(
            tuple(
                tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(m)) for j in range(m))
                for i in range(m)
            )
        )

    def inverse(self, G: FiniteAbelianGroup) -> "GroupAutomorphism":
        ok, reason = validate_automorphism(self, G)
        if not ok:
            raise InputError(f"not invertible: {reason}")
        table = {self.apply(G, g): g for g in G.elements()}
        basis = [tuple(int(i == j) for i in range(G.rank)) for j in range(G.rank)]
        return GroupAutomorphism.from_images([table[e] for e in basis])

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.matrix]


def validate_automorphism(phi: GroupAutomorphism, G: FiniteAbelianGroup) -> tuple[bool, str]:
    """Return ``(True, "")`` if ``phi`` induces a bijection of ``G``, else
    ``(False, reason)``."""
    m = G.rank
    if len(phi.matrix) != m or any(len(row) != m for row in phi.matrix):
        return False, f"matrix shape does not match {m} cyclic factors"
    images = [phi.image_of_generator(G, j) for j in range(m)]
    for j, (img, n) in enumerate(zip(images, G.factors)):
        if n % element_order(G, img) != 0:
            return False, f"image {img} of generator {j} has order not dividing {n}; map is not well defined"
    span = G.span(images)
    if len(span) != G.order:
        return False, f"images {images} generate a subgroup of order {len(span)} < {G.order}"
    return True, ""
