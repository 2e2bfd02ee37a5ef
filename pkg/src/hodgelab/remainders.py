"""Remainder sums ``lambda(i)`` and the exhaustive check of the bound on their ones.

For ``m_1 + ... + m_r = d`` put ``lambda(i) d = sum_j (i m_j mod d)``.  For
``r >= 4`` the number of ``i`` in ``1..d-1`` with ``lambda(i) = 1`` is claimed to
be strictly below ``(d-1)/2``; :func:`verify_bound` checks every composition.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .covers import CoverSpec, eigentable
from .errors import CapacityError, InputError, capacity_guard

DEFAULT_GUARD = 5 * 10**7
CHUNK = 20_000


@dataclass(frozen=True)
class LambdaProfile:
    d: int
    m: tuple[int, ...]
    lambdas: tuple[int, ...]
    count_ones: int

    def to_json(self) -> dict:
        return asdict(self)


def lambda_values(d: int, m: Sequence[int]) -> tuple[int, ...]:
    """``lambda(i)`` for ``i = 1..d-1``; needs ``sum(m) = 0 mod d``."""
    out = []
    for i in range(1, d):
        s = sum((i * mj) % d for mj in m)
        if s % d:
            raise InputError(f"remainder sum {s} at i={i} is not a multiple of d={d}")
        out.append(s // d)
    return tuple(out)


def lambda_profile(d: int, m: Sequence[int]) -> LambdaProfile:
    """
    >>> lambda_profile(5, (1, 1, 1, 2)).lambdas
    (1, 2, 2, 3)
    """
    m = tuple(int(x) for x in m)
    if d < 1 or any(x < 1 for x in m):
        raise InputError("need d >= 1 and positive parts")
    if sum(m) != d:
        raise InputError(f"parts sum to {sum(m)}, not d = {d}")
    lam = lambda_values(d, m)
    return LambdaProfile(d, m, lam, sum(1 for v in lam if v == 1))


def bound_holds(d: int, count_ones: int) -> bool:
    return 2 * count_ones < d - 1


def _ones_per_composition(d: int, parts: np.ndarray) -> np.ndarray:
    ones = np.zeros(len(parts), dtype=np.int64)
    for i in range(1, d):
        s = ((i * parts) % d).sum(axis=1)
        ones += s == d
    return ones


def _check_chunk(task: tuple[int, int, int, int]) -> tuple[int, list[dict]]:
    d, r, start, stop = task
    cuts = list(itertools.islice(itertools.combinations(range(1, d), r - 1), start, stop))
    if not cuts:
        return 0, []
    cuts = np.array(cuts, dtype=np.int64).reshape(len(cuts), r - 1)
    n = len(cuts)
    bounds = np.hstack([np.zeros((n, 1), dtype=np.int64), cuts, np.full((n, 1), d, dtype=np.int64)])
    parts = np.diff(bounds, axis=1)
    ones = _ones_per_composition(d, parts)
    bad = np.nonzero(2 * ones >= d - 1)[0]
    violations = [{"d": d, "m": parts[k].tolist(), "count_ones": int(ones[k])} for k in bad]
    return n, violations


def _tasks(d_max: int, rs: Sequence[int], chunk: int) -> list[tuple[int, int, int, int]]:
    tasks = []
    for r in rs:
        for d in range(r, d_max + 1):
            total = math.comb(d - 1, r - 1)
            tasks += [(d, r, s, min(s + chunk, total)) for s in range(0, total, chunk)]
    return tasks


@dataclass
class BoundReport:
    d_max: int
    r_values: list[int]
    checked: int
    checked_by_r: dict[int, int]
    violations: list[dict] = field(default_factory=list)
    skipped_r: list[int] = field(default_factory=list)
    wall_time_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["checked_by_r"] = {str(k): v for k, v in self.checked_by_r.items()}
        if not timing:
            d.pop("wall_time_ms")
        return d


def verify_bound(d_max: int, r_range: Iterable[int], jobs: int = 1, chunk: int = CHUNK) -> BoundReport:
    """Check the bound over every composition of every ``d <= d_max`` into ``r`` parts.

    Values ``r < 4`` lie outside the hypothesis and are skipped.  Violations
    are collected, not raised.
    """
    t0 = time.perf_counter()
    r_values = sorted(set(int(r) for r in r_range))
    rs = [r for r in r_values if r >= 4]
    total = sum(math.comb(d_max, r) for r in rs)  # sum_{d<=d_max} C(d-1, r-1)
    guard = capacity_guard(DEFAULT_GUARD)
    if total > guard:
        raise CapacityError(f"{total} compositions exceed the guard of {guard}; set HODGELAB_GUARD to raise it")
    tasks = _tasks(d_max, rs, chunk)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_chunk, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_check_chunk(t) for t in tasks]
    by_r = {r: 0 for r in rs}
    violations = []
    for (d, r, _, _), (n, bad) in zip(tasks, results):
        by_r[r] += n
        violations += bad
    return BoundReport(
        d_max=d_max,
        r_values=r_values,
        checked=sum(by_r.values()),
        checked_by_r=by_r,
        violations=violations,
        skipped_r=[r for r in r_values if r < 4],
        wall_time_ms=round((time.perf_counter() - t0) * 1000, 1),
    )


def unit_rescaling_to_d(d: int, m: Sequence[int]) -> tuple[int, ...] | None:
    """A rescaling ``(u m_j mod d)`` by a unit ``u`` whose parts are positive and sum
    to exactly ``d``, if one exists."""
    for u in range(1, d):
        if math.gcd(u, d) != 1:
            continue
        scaled = tuple((u * x) % d for x in m)
        if all(scaled) and sum(scaled) == d:
            return scaled
    return None


def zero_character_link(spec: CoverSpec) -> dict:
    """Compare vanishing eigenspaces of a cyclic cover of the line with ``lambda = 1``.

    Hypothesis problems are reported in ``issues``, never raised.
    """
    issues = []
    G = spec.group
    if G.rank != 1:
        issues.append("group is not presented as a single cyclic factor")
    if spec.quotient_genus != 0:
        issues.append("quotient genus is not 0")
    if issues:
        return {"ok": False, "issues": issues}
    d = G.order
    m = [g[0] for g in spec.monodromies]
    table = eigentable(spec)
    zero_chars = sorted(i for (i,), n in table.dims.items() if i and n == 0)
    lam = lambda_values(d, m)
    lambda_ones = sorted(i for i, v in enumerate(lam, start=1) if v == 1)
    link = zero_chars == lambda_ones
    report = {
        "d": d,
        "m": m,
        "zero_characters": zero_chars,
        "lambda_ones": lambda_ones,
        "link_holds": link,
        "branch_points": len(m),
        "bound": None,
        "bound_applicable": None,
        "issues": issues,
    }
    if len(m) >= 4:
        scaled = unit_rescaling_to_d(d, m)
        report["bound_applicable"] = scaled is not None
        report["bound"] = bound_holds(d, len(zero_chars))
        if scaled is None:
            issues.append("no unit rescaling of the residues sums to d; the counting bound is not guaranteed")
        elif not report["bound"]:
            issues.append("counting bound violated")
    else:
        issues.append("fewer than 4 branch points; only the link identity is checked")
    report["ok"] = link and (report["bound"] is not False or not report["bound_applicable"])
    return report
