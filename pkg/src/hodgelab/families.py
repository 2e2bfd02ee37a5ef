"""Ready-made covers and product surfaces used by the reproduction targets."""

from __future__ import annotations

from .covers import CoverSpec
from .errors import InputError
from .groups import GroupAutomorphism
from .torelli import ProductSurfaceSpec


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def etale_cyclic_cover(d: int, base_genus: int) -> CoverSpec:
    """Connected unramified ``Z/d``-cover of a curve of genus ``base_genus``."""
    if base_genus < 1:
        raise InputError("an unramified connected cover needs base genus >= 1")
    return CoverSpec.build([d], base_genus, [])


def five_point_triple_cover() -> CoverSpec:
    """``Z/3``-cover of the line branched in ``P1 + P2 + P3 + P4 + 2 P5``."""
    return CoverSpec.build([3], 0, [1, 1, 1, 1, 2])


def triple_cover_family(k: int) -> CoverSpec:
    """``Z/3``-cover of the line with ``3k-2`` points of monodromy 1 and one of monodromy 2."""
    if k < 2:
        raise InputError("k must be >= 2")
    return CoverSpec.build([3], 0, [1] * (3 * k - 2) + [2])


def k_family(k: int) -> ProductSurfaceSpec:
    """``S_k = (C_1 x C_k)/(Z/3)`` with ``C_1`` etale over a genus 3 curve."""
    return ProductSurfaceSpec(etale_cyclic_cover(3, 3), triple_cover_family(k))


def rational_all_admissible(d: int) -> CoverSpec:
    """A ``Z/d``-cover of the line of genus >= 2 with every nontrivial eigenspace nonzero:
    ``3d`` branch points of monodromy 1."""
    return CoverSpec.build([d], 0, [1] * (3 * d))


def dimension_failure_surface(d: int, base_genus: int) -> ProductSurfaceSpec:
    """Free cyclic factor over a curve of genus ``base_genus`` times a rational
    cyclic cover on which every nontrivial character occurs."""
    return ProductSurfaceSpec(etale_cyclic_cover(d, base_genus), rational_all_admissible(d))


def bicyclic_c1(d: int) -> CoverSpec:
    """``(Z/d)^2``-cover branched at ``P, P'`` with monodromy ``(1,0), (-1,0)`` and at
    ``d`` further points with monodromy ``(0,1)``."""
    return CoverSpec.build([d, d], 0, [(1, 0), (d - 1, 0)] + [(0, 1)] * d)


def bicyclic_c2(d: int) -> CoverSpec:
    """``(Z/d)^2``-cover branched in four points with monodromies
    ``(1,0), (-1,0), (0,1), (0,-1)``; coordinates ``0, inf, 1, -1``."""
    return CoverSpec.build([d, d], 0, [(1, 0), (d - 1, 0), (0, 1), (0, d - 1)], coordinates=["0", "inf", "1", "-1"])


def bicyclic_twist(d: int, r: int) -> GroupAutomorphism:
    """``(1,0) -> (1,1)``, ``(0,1) -> (r,1)``."""
    return GroupAutomorphism.from_images([(1, 1), (r % d, 1)])


def bicyclic_surface(d: int, r: int | None = None) -> ProductSurfaceSpec:
    """``C_1 x C_2`` over ``(Z/d)^2``, second factor twisted by :func:`bicyclic_twist`
    unless ``r`` is None."""
    twist = None if r is None else bicyclic_twist(d, r)
    return ProductSurfaceSpec(bicyclic_c1(d), bicyclic_c2(d), twist)


def classical_relabel(d: int):
    """Map a cell ``(a, b)`` of the classical bicyclic tables to our character ``(-b, a)``."""
    return lambda a, b: ((-b) % d, a % d)
