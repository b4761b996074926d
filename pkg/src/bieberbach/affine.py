"""Affine group elements, group specifications and holonomy closure.

A crystallographic group is given here by a finite list of affine generators
together with the implicit standard lattice Z^n of pure integer translations.
Elements are (A, a) with A an integer matrix of determinant +-1 and a a
rational translation vector, acting as v -> A*v + a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .linalg import (
    DioSolution,
    IntMatrix,
    RatVector,
    identity,
    is_integral_matrix,
    is_integral_vector,
    mat_mul,
    mat_vec,
    rational_kernel,
    solve_diophantine,
    to_int_matrix,
    vec_add,
    vec_neg,
    vec_sub,
)

DEFAULT_CLOSURE_BOUND = 50_000


class DimensionMismatch(ValueError):
    pass


class HolonomyNotFinite(RuntimeError):
    """Holonomy closure exceeded its element bound."""


class NonStandardLattice(RuntimeError):
    """The group's translation lattice is strictly larger than Z^n.

    Detected when two words with the same linear part differ by a
    non-integral translation: the group then contains a non-integral pure
    translation and is not in the standard form this package assumes.
    """


@dataclass(frozen=True)
class AffineElement:
    linear: IntMatrix
    translation: RatVector

    def __post_init__(self):
        lin = linalg.freeze(self.linear)
        tr = tuple(Fraction(t) for t in self.translation)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tr)
        n = len(lin)
        if any(len(row) != n for row in lin) or len(tr) != n:
            raise DimensionMismatch("linear part must be n x n with length-n translation")
        if not is_integral_matrix(lin):
            raise ValueError("linear part must be integral")
        object.__setattr__(self, "linear", to_int_matrix(lin))
        if abs(linalg.det(self.linear)) != 1:
            raise ValueError("linear part must have determinant +-1")

    @property
    def dimension(self) -> int:
        return len(self.linear)

    def is_identity(self) -> bool:
        return self.linear == identity(self.dimension) and all(
            t == 0 for t in self.translation
        )

    def apply(self, v):
        return vec_add(mat_vec(self.linear, v), self.translation)


def affine_identity(n: int) -> AffineElement:
    return AffineElement(identity(n), (Fraction(0),) * n)


def translation(v) -> AffineElement:
    return AffineElement(identity(len(v)), tuple(Fraction(e) for e in v))


def compose(g: AffineElement, h: AffineElement) -> AffineElement:
    """Product g*h: first apply h, then g."""
    if g.dimension != h.dimension:
        raise DimensionMismatch("cannot compose elements of different dimension")
    return AffineElement(
        mat_mul(g.linear, h.linear),
        vec_add(g.translation, mat_vec(g.linear, h.translation)),
    )


def inverse(g: AffineElement) -> AffineElement:
    lin_inv = linalg.inverse_unimodular(g.linear)
    return AffineElement(lin_inv, vec_neg(mat_vec(lin_inv, g.translation)))


def conjugate(g: AffineElement, q: AffineElement) -> AffineElement:
    """q^-1 * g * q; q must have unimodular integral linear part."""
    return compose(compose(inverse(q), g), q)


def coset_equal(g: AffineElement, h: AffineElement) -> bool:
    """Equal linear parts and integral translation difference (same coset of Z^n)."""
    return g.linear == h.linear and is_integral_vector(
        vec_sub(g.translation, h.translation)
    )


@dataclass(frozen=True)
class GroupSpec:
    """A crystallographic group <generators> * Z^n with the lattice implicit."""

    dimension: int
    generators: tuple[AffineElement, ...]
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.dimension != self.dimension:
                raise DimensionMismatch(
                    f"generator dimension {g.dimension} != group dimension {self.dimension}"
                )


@dataclass(frozen=True)
class HolonomyGroup:
    """Finite group of linear parts, each with a witness affine lift."""

    dimension: int
    elements: tuple[IntMatrix, ...]
    lifts: dict[IntMatrix, AffineElement] = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def lift(self, h: IntMatrix) -> AffineElement:
        return self.lifts[h]

    def element_order(self, h: IntMatrix) -> int:
        e = identity(self.dimension)
        cur = h
        k = 1
        while cur != e:
            cur = mat_mul(cur, h)
            k += 1
            if k > self.order:
                raise RuntimeError("element order exceeds group order")
        return k


def holonomy_closure(
    spec: GroupSpec, max_order: int = DEFAULT_CLOSURE_BOUND
) -> HolonomyGroup:
    """Multiplicative closure of the generator linear parts.

    Lifts are the first word found in breadth-first product order, which makes
    the result deterministic. Raises HolonomyNotFinite past max_order and
    NonStandardLattice if two words with equal linear part disagree modulo Z^n.
    """
    n = spec.dimension
    ident = identity(n)
    lifts: dict[IntMatrix, AffineElement] = {ident: affine_identity(n)}
    order_list = [ident]
    queue = [affine_identity(n)]
    gens = list(spec.generators)
    while queue:
        nxt: list[AffineElement] = []
        for w in queue:
            for g in gens:
                prod = compose(w, g)
                key = prod.linear
                if key in lifts:
                    if not is_integral_vector(
                        vec_sub(prod.translation, lifts[key].translation)
                    ):
                        raise NonStandardLattice(
                            "two words with the same linear part differ by a "
                            "non-integral translation; lattice is not Z^n"
                        )
                    continue
                lifts[key] = prod
                order_list.append(key)
                nxt.append(prod)
                if len(order_list) > max_order:
                    raise HolonomyNotFinite(
                        f"holonomy not finite within bound {max_order}"
                    )
        queue = nxt
    return HolonomyGroup(n, tuple(order_list), lifts)


def fixed_space_rank(H: HolonomyGroup) -> int:
    """Dimension of the common fixed space of all holonomy elements.

    Equals the first Betti number of the group.
    """
    n = H.dimension
    if n == 0:
        return 0
    rows = []
    for h in H.elements:
        diff = linalg.mat_sub(h, identity(n))
        rows.extend(diff)
    if not rows:
        return n
    return len(rational_kernel(tuple(rows)))


def coinvariant_rank(H: HolonomyGroup) -> int:
    """Dimension of Z^n tensor Q modulo the span of all (h - I) images.

    Independent cross-check for fixed_space_rank.
    """
    n = H.dimension
    if n == 0:
        return 0
    cols = []
    for h in H.elements:
        diff = linalg.mat_sub(h, identity(n))
        cols.extend(tuple(zip(*diff)))
    if not cols:
        return n
    return n - linalg.rational_rank(tuple(cols))


def is_torsion_free(spec: GroupSpec, H: HolonomyGroup) -> bool:
    """Standard coset criterion.

    A torsion element with linear part h exists iff N_h*(a + l) = 0 has an
    integer solution l, where (h, a) is any lift and N_h = sum of powers of h
    over one full period.
    """
    n = spec.dimension
    ident = identity(n)
    for h in H.elements:
        if h == ident:
            continue
        m = H.element_order(h)
        N = identity(n)
        power = h
        for _ in range(m - 1):
            N = linalg.mat_add(N, power)
            power = mat_mul(power, h)
        a = H.lift(h).translation
        rhs = vec_neg(mat_vec(N, a))
        if isinstance(solve_diophantine(N, rhs), DioSolution):
            return False
    return True


@dataclass(frozen=True)
class ValidationReport:
    holonomy_finite: bool
    holonomy_order: int
    torsion_free: bool
    failures: tuple[str, ...]

    @property
    def accepted(self) -> bool:
        return self.holonomy_finite and self.torsion_free and not self.failures


def validate(
    spec: GroupSpec, max_order: int = DEFAULT_CLOSURE_BOUND
) -> ValidationReport:
    """Check that spec defines a Bieberbach group in standard form."""
    failures: list[str] = []
    try:
        H = holonomy_closure(spec, max_order)
    except HolonomyNotFinite as exc:
        return ValidationReport(False, 0, False, (str(exc),))
    except NonStandardLattice as exc:
        return ValidationReport(False, 0, False, (str(exc),))
    torsion_free = is_torsion_free(spec, H)
    if not torsion_free:
        failures.append("group has torsion (not a Bieberbach group)")
    return ValidationReport(True, H.order, torsion_free, tuple(failures))
