"""Finite-group predicates on holonomy groups.

These back the two classification shortcuts: a non-solvable holonomy group
forces non-diffuseness, and all-cyclic Sylow subgroups force diffuseness.
Both predicates work directly on the matrix group, no abstract group theory
machinery needed at these orders.
"""

from __future__ import annotations

from .affine import HolonomyGroup
from .linalg import IntMatrix, identity, inverse_unimodular, mat_mul


def _close_subgroup(dimension: int, seed: set[IntMatrix]) -> set[IntMatrix]:
    ident = identity(dimension)
    elems = {ident} | set(seed)
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(elems):
                for p in (mat_mul(a, b), mat_mul(b, a)):
                    if p not in elems:
                        elems.add(p)
                        nxt.append(p)
        frontier = nxt
    return elems


def derived_subgroup(dimension: int, elements) -> set[IntMatrix]:
    comms = set()
    elems = list(elements)
    for a in elems:
        a_inv = inverse_unimodular(a)
        for b in elems:
            b_inv = inverse_unimodular(b)
            comms.add(mat_mul(mat_mul(a_inv, b_inv), mat_mul(a, b)))
    return _close_subgroup(dimension, comms)


def is_solvable(H: HolonomyGroup) -> bool:
    """Derived series reaches the trivial group."""
    current: set[IntMatrix] = set(H.elements)
    for _ in range(max(H.order, 1)):
        if len(current) == 1:
            return True
        nxt = derived_subgroup(H.dimension, current)
        if len(nxt) == len(current):
            return False
        current = nxt
    return len(current) == 1


def is_abelian(dimension: int, elements) -> bool:
    elems = list(elements)
    return all(
        mat_mul(a, b) == mat_mul(b, a) for i, a in enumerate(elems) for b in elems[i + 1:]
    )


def sylow_all_cyclic(H: HolonomyGroup) -> bool:
    """True iff every Sylow subgroup of H is cyclic.

    A Sylow p-subgroup is cyclic iff some element has order equal to the full
    p-part of |H|, so maximal element orders decide the question without
    constructing any subgroup.
    """
    order = H.order
    if order == 1:
        return True
    element_orders = {H.element_order(h) for h in H.elements}
    for p in _prime_factors(order):
        p_part = 1
        while order % (p_part * p) == 0:
            p_part *= p
        if not any(o == p_part for o in element_orders):
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
