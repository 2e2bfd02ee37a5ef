"""Expected values for the reproduction targets.

``kind`` is ``closed-form`` for values given by a formula in the family
parameters and ``derived`` for values obtained independently of the code under
test (hand computation or exhaustive enumeration).
"""

K_FAMILY = {
    "kind": "closed-form",
    "p_g": lambda k: 6 * k - 6,
    "h11": lambda k: 12 * k - 10,
    "h1_theta": lambda k: 3 * k + 2,
    "t2": lambda k: 3 * k - 4,
    "q": lambda k: 3,
    "bound1": lambda k: 4,
    "t1": lambda k: 6,
    "kernel_min": 2,
    "dims_C1": [3, 2, 2],
    "dims_Ck_multiset": lambda k: sorted([0, 2 * k - 2, k - 1]),
    "moduli": lambda k: 3 * k + 2,
}


def dimension_failure_closed_form(d: int, g: int) -> int:
    if d % 2 == 0:
        return (d // 2 - 1) * (g - 1) ** 2 + g * (g - 1) // 2
    return (d - 1) // 2 * (g - 1) ** 2


DIMENSION_FAILURE = {
    "kind": "closed-form",
    "cases": [(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 2), (4, 2), (5, 2)],
    "bound": dimension_failure_closed_form,
    "target": lambda d, g: 3 * g - 3,
}


def bicyclic_c1_grid(d: int) -> list[list[int]]:
    """Row ``b``, column ``a``: ``a - 1`` on the row ``b = 0`` (``0`` at ``a = 0``), ``a`` elsewhere."""
    return [[max(a - 1, 0) if b == 0 else a for a in range(d)] for b in range(d)]


def bicyclic_c2_grid(d: int) -> list[list[int]]:
    return [[int(a != 0 and b != 0) for a in range(d)] for b in range(d)]


def bicyclic_twisted_grid(d: int, r: int) -> list[list[int]]:
    """Zero on the diagonal and at ``(n r, n)``, one elsewhere."""
    return [[0 if (a - b) % d == 0 or (a - r * b) % d == 0 else 1 for a in range(d)] for b in range(d)]


BICYCLIC = {
    "kind": "closed-form",
    "cases": [(3, 2), (5, 2), (7, 2), (7, 3)],
    "c1": bicyclic_c1_grid,
    "c2": bicyclic_c2_grid,
    "twisted": bicyclic_twisted_grid,
    "twisted_zero_count": lambda d: 2 * d - 1,
    "t2": 1,
}

FIVE_POINT = {
    "kind": "closed-form",
    "genus": 3,
    "dims_multiset": [0, 1, 2],
    "L_degrees": [0, 2, 3],
    "model_sizes": [1, 2],
}

SWEEP = {
    "kind": "derived",
    "runs": [(40, (4,)), (24, (4, 5, 6))],
    "min_checked": 10**5,
    "violations": 0,
}
