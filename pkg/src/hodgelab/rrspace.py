"""Riemann-Roch spaces on the projective line and explicit eigenform models.

A 1-form on a cover of the line in the ``chi``-eigenspace is written as
``phi(x) * prod_j (x - p_j)^(-c_j) dx`` with ``c_j = <chi, g_j>`` and ``phi``
an honest rational function; a :class:`FunctionBasis` stores the ``phi`` and
the exponents ``c_j`` (its *twist*).  Multiplying a ``chi``-form by a
``chi*``-form lands in the invariant quadratic differentials, which are
``psi(x) dx^2`` with ``psi`` in ``L(B_red + 2K)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .covers import INFINITY, CoverSpec, eigentable
from .errors import InconsistencyError, InputError
from .groups import Character, char_pairing, element_order
from .linalg import rank

Point = Union[Fraction, str]
Poly = tuple[Fraction, ...]  # coefficients, constant term first


def _trim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + len(q) - 1] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                rem[k + j] -= c * b
    return _trim(quot), _trim(rem[: len(q) - 1])


def linear_power(p: Fraction, n: int) -> Poly:
    """``(x - p)^n`` for ``n >= 0``."""
    out: Poly = (Fraction(1),)
    for _ in range(n):
        out = poly_mul(out, (-Fraction(p), Fraction(1)))
    return out


def _root_multiplicity(poly: Poly, p: Fraction) -> int:
    k = 0
    while poly:
        q, rem = poly_divmod(poly, (-p, Fraction(1)))
        if rem:
            break
        poly, k = q, k + 1
    return k


@dataclass(frozen=True)
class RationalFunction:
    num: Poly
    den: Poly = (Fraction(1),)

    def __post_init__(self):
        object.__setattr__(self, "num", _trim(Fraction(a) for a in self.num))
        object.__setattr__(self, "den", _trim(Fraction(a) for a in self.den))
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def monomial_times(cls, k: int, factors: Mapping[Fraction, int]) -> "RationalFunction":
        """``x^k * prod (x - p)^{e_p}``."""
        num: Poly = (Fraction(0),) * k + (Fraction(1),)
        den: Poly = (Fraction(1),)
        for p, e in factors.items():
            if e > 0:
                num = poly_mul(num, linear_power(p, e))
            elif e < 0:
                den = poly_mul(den, linear_power(p, -e))
        return cls(num, den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    def is_zero(self) -> bool:
        return not self.num

    def order_at(self, point: Point) -> int:
        if self.is_zero():
            raise InputError("order of the zero function is infinite")
        if point == INFINITY:
            return (len(self.den) - 1) - (len(self.num) - 1)
        return _root_multiplicity(self.num, Fraction(point)) - _root_multiplicity(self.den, Fraction(point))

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        ev = lambda p: sum((c * x**i for i, c in enumerate(p)), Fraction(0))
        return ev(self.num) / ev(self.den)

    def to_json(self) -> dict:
        pair = lambda a: [a.numerator, a.denominator]
        return {"num": [pair(a) for a in self.num], "den": [pair(a) for a in self.den]}


@dataclass(frozen=True)
class RationalDivisor:
    coefficients: Mapping[Point, int]

    def __post_init__(self):
        clean = {}
        for p, n in self.coefficients.items():
            p = INFINITY if p == INFINITY else Fraction(p)
            if n:
                clean[p] = clean.get(p, 0) + int(n)
        object.__setattr__(self, "coefficients", {p: n for p, n in clean.items() if n})

    @property
    def degree(self) -> int:
        return sum(self.coefficients.values())

    def finite_part(self) -> dict[Fraction, int]:
        return {p: n for p, n in self.coefficients.items() if p != INFINITY}

    def __add__(self, other: "RationalDivisor") -> "RationalDivisor":
        out = dict(self.coefficients)
        for p, n in other.coefficients.items():
            out[p] = out.get(p, 0) + n
        return RationalDivisor(out)

    def to_json(self) -> list:
        return [{"point": str(p), "coefficient": n} for p, n in sorted(self.coefficients.items(), key=lambda t: str(t[0]))]


@dataclass(frozen=True)
class FunctionBasis:
    elements: tuple[RationalFunction, ...]
    bound: RationalDivisor
    twist: Mapping[Fraction, Fraction] = field(default_factory=dict)
    form_degree: int = 0

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "elements": [f.to_json() for f in self.elements],
            "bound": self.bound.to_json(),
            "twist": [{"point": str(p), "exponent": str(c)} for p, c in sorted(self.twist.items())],
            "form_degree": self.form_degree,
        }


def rr_basis(D: RationalDivisor) -> FunctionBasis:
    """Basis of ``L(D) = {f : div(f) + D >= 0}``.

    ``L(D)`` is ``prod_p (x - p)^(-n_p)`` times the polynomials of degree at
    most ``deg D``, with ``p`` running over the finite points of ``D``.
    """
    base = {p: -n for p, n in D.finite_part().items()}
    elements = tuple(RationalFunction.monomial_times(k, base) for k in range(D.degree + 1))
    return FunctionBasis(elements, D)


def coordinates(f: RationalFunction, D: RationalDivisor) -> list[Fraction]:
    """Coordinates of ``f`` in the basis :func:`rr_basis` of ``L(D)``."""
    num, den = f.num, f.den
    for p, n in D.finite_part().items():
        if n > 0:
            num = poly_mul(num, linear_power(p, n))
        else:
            den = poly_mul(den, linear_power(p, -n))
    q, rem = poly_divmod(num, den)
    if rem or len(q) - 1 > D.degree:
        raise InconsistencyError("function does not lie in L(D)")
    return list(q) + [Fraction(0)] * (D.degree + 1 - len(q))


def affine_chart(spec: CoverSpec) -> list[Fraction]:
    """Finite coordinates for the branch points.

    Missing coordinates default to ``0, 1, 2, ...`` with the last point at
    infinity.  A branch point at infinity is moved into the affine line by
    ``x -> 1/(x - a)`` with ``a`` the least non-negative integer that is not a
    coordinate; ranks of multiplication maps are unchanged by this.
    """
    coords = [b.coordinate for b in spec.branch]
    if all(c is None for c in coords):
        coords = [Fraction(j) for j in range(len(coords))]
        if coords:
            coords[-1] = INFINITY
    elif any(c is None for c in coords):
        raise InputError("either all or none of the branch points need coordinates")
    if INFINITY not in coords:
        return list(coords)
    finite = {c for c in coords if c != INFINITY}
    a = next(n for n in range(len(coords) + 1) if Fraction(n) not in finite)
    return [Fraction(0) if c == INFINITY else 1 / (c - a) for c in coords]


def _rational_quotient_spec(spec: CoverSpec):
    if spec.quotient_genus != 0:
        raise InputError("explicit section models exist only for rational quotients (g_Y = 0)")


def eigenform_model(spec: CoverSpec, chi: Character) -> FunctionBasis:
    """Functions ``phi`` such that ``phi * prod (x-p_j)^(-c_j) dx`` span the ``chi``-forms."""
    _rational_quotient_spec(spec)
    G = spec.group
    chi = G.character(chi)
    points = affine_chart(spec)
    if not any(chi):
        return FunctionBasis((), RationalDivisor({}), {}, 1)
    n = element_order(G, chi)
    bound: dict[Point, int] = {}
    twist: dict[Fraction, Fraction] = {}
    total = Fraction(0)
    for p, g in zip(points, spec.monodromies):
        a = int(n * char_pairing(G, chi, g))
        r = math.gcd(a, n)
        correction = -((-(a + r)) // n) - 1  # ceil((a + r)/n) - 1
        bound[p] = bound.get(p, 0) - correction
        if a:
            twist[p] = Fraction(a, n)
        total += Fraction(a, n)
    if total.denominator != 1:
        raise InconsistencyError("rotation numbers do not sum to an integer")
    bound[INFINITY] = int(total) - 2
    D = RationalDivisor(bound)
    return FunctionBasis(rr_basis(D).elements, D, twist, 1)


def invariant_bicanonical_target(spec: CoverSpec) -> RationalDivisor:
    """``B_red + 2K`` on the line, for invariant quadratic differentials ``psi dx^2``."""
    _rational_quotient_spec(spec)
    D = {p: 1 for p in affine_chart(spec)}
    D[INFINITY] = -4
    return RationalDivisor(D)


def multiplication_rank(pairs: Iterable[tuple[FunctionBasis, FunctionBasis]], target: RationalDivisor,
                        target_twist: Mapping[Fraction, Fraction] | None = None) -> int:
    """Rank of the span of all products ``f * g`` (``f`` in the first basis, ``g``
    in the second of some pair) inside ``L(target)``."""
    target_twist = dict(target_twist or {})
    rows = []
    for B1, B2 in pairs:
        points = set(B1.twist) | set(B2.twist) | set(target_twist)
        shift = {}
        for p in points:
            delta = target_twist.get(p, Fraction(0)) - B1.twist.get(p, Fraction(0)) - B2.twist.get(p, Fraction(0))
            if delta.denominator != 1:
                raise InconsistencyError(f"product twist at {p} differs from the target by {delta}")
            if delta:
                shift[p] = int(delta)
        correction = RationalFunction.monomial_times(0, shift)
        for f in B1.elements:
            for g in B2.elements:
                rows.append(coordinates(f * g * correction, target))
    return rank(rows)


def eigenform_pairs(spec: CoverSpec, characters: Iterable[Character]):
    """``(chi, chi*)`` model pairs, one per unordered pair ``{chi, chi*}``."""
    G = spec.group
    seen = set()
    out = []
    for chi in characters:
        chi = G.character(chi)
        key = frozenset({chi, G.dual(chi)})
        if key in seen:
            continue
        seen.add(key)
        out.append((eigenform_model(spec, chi), eigenform_model(spec, G.dual(chi))))
    return out


def check_model_sizes(spec: CoverSpec) -> bool:
    table = eigentable(spec)
    return all(len(eigenform_model(spec, chi)) == n for chi, n in table.dims.items() if any(chi))
