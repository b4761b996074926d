"""Extremal points and non-extremal-set certificates.

A group is diffuse when every finite non-empty subset has an extremal point:
some a in A such that for every nontrivial g either g*a or g^-1*a falls
outside A. A non-empty finite set without extremal points is therefore a
sound certificate of non-diffuseness. The quantifier over the whole group
collapses to the finite difference set A*a^-1, since g*a in A already forces
g in A*a^-1.

The peeling search (iterated removal of extremal points) is best effort: a
non-empty fixed point is automatically a certificate, but emptiness proves
nothing. Verdicts never depend on this module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .affine import (
    AffineElement,
    GroupSpec,
    affine_identity,
    compose,
    coset_equal,
    holonomy_closure,
    inverse,
    translation,
)

DEFAULT_BALL_CAP = 200_000


@dataclass(frozen=True)
class ElementSet:
    dimension: int
    elements: tuple[AffineElement, ...]

    def __post_init__(self):
        seen = []
        for e in self.elements:
            if e.dimension != self.dimension:
                raise ValueError("element dimension mismatch")
            if e not in seen:
                seen.append(e)
        object.__setattr__(self, "elements", tuple(seen))

    def __len__(self) -> int:
        return len(self.elements)


def extremal_points(A: ElementSet) -> ElementSet:
    """Subset of elements that are extremal in A."""
    if not A.elements:
        raise ValueError("extremal_points requires a non-empty set")
    elems = set(A.elements)
    out = []
    for a in A.elements:
        a_inv = inverse(a)
        extremal = True
        for b in A.elements:
            g = compose(b, a_inv)
            if g.is_identity():
                continue
            if compose(g, a) in elems and compose(inverse(g), a) in elems:
                extremal = False
                break
        if extremal:
            out.append(a)
    return ElementSet(A.dimension, tuple(out))


def peel(A: ElementSet) -> ElementSet:
    """Remove extremal points until a fixed point.

    The result is either empty or a set without extremal points.
    """
    current = A
    while current.elements:
        ext = extremal_points(current)
        if not ext.elements:
            return current
        remaining = tuple(e for e in current.elements if e not in set(ext.elements))
        current = ElementSet(A.dimension, remaining)
    return current


def verify_no_extremal_certificate(spec: GroupSpec, A: ElementSet) -> bool:
    """True iff A is a valid certificate that the group is not diffuse.

    Checks membership first: every element's linear part must be in the
    holonomy and its translation must agree with the stored lift modulo Z^n.
    """
    H = holonomy_closure(spec)
    for e in A.elements:
        if e.linear not in H.lifts:
            raise ValueError("set element has a linear part outside the holonomy")
        if not coset_equal(e, H.lift(e.linear)):
            raise ValueError("set element translation is not coset-consistent")
    if not A.elements:
        return False
    return len(extremal_points(A)) == 0


def ball(spec: GroupSpec, radius: int, max_size: int = DEFAULT_BALL_CAP) -> ElementSet:
    """All products of at most `radius` factors from the symmetric generating set.

    The generating set is the spec generators, their inverses, and the 2n
    signed unit lattice translations.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    n = spec.dimension
    gens: list[AffineElement] = []
    for g in spec.generators:
        gens.append(g)
        gens.append(inverse(g))
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        gens.append(translation(e))
        gens.append(translation(tuple(-x for x in e)))
    elems = {affine_identity(n)}
    frontier = list(elems)
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for g in gens:
                p = compose(w, g)
                if p not in elems:
                    elems.add(p)
                    nxt.append(p)
                    if len(elems) > max_size:
                        raise RuntimeError(
                            f"ball exceeds the size cap of {max_size} elements"
                        )
        frontier = nxt
    ordered = sorted(
        elems, key=lambda e: (e.linear, tuple(e.translation))
    )
    return ElementSet(n, tuple(ordered))
