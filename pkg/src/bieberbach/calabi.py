"""Calabi reduction: basis change to block form and kernel extraction.

For a Bieberbach group with first Betti number k > 0 there is an epimorphism
onto Z^k (read off the last k coordinates of the translation after a suitable
unimodular change of basis). Its kernel, with the fixed coordinates dropped,
is a Bieberbach group of dimension n - k. Recursing on the kernel is what
drives the diffuseness decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .affine import (
    AffineElement,
    GroupSpec,
    HolonomyGroup,
    affine_identity,
    conjugate,
    fixed_space_rank,
    holonomy_closure,
    validate,
)
from .linalg import (
    IntMatrix,
    complete_basis,
    identity,
    mat_sub,
    saturate,
)


class BlockFormError(RuntimeError):
    """Conjugation failed to produce the expected block form (internal bug)."""


@dataclass(frozen=True)
class Reduction:
    """Record of one Calabi reduction step."""

    q: AffineElement              # unimodular conjugator, zero translation
    k: int                        # first Betti number of the input
    kernel: GroupSpec             # dimension n - k
    image_rank: int


def splitting_basis(H: HolonomyGroup) -> IntMatrix:
    """Unimodular Q such that Q^-1 h Q = [[A, B], [0, I_k]] for all h in H.

    The first n - k columns of Q are a basis of the saturation of the span of
    all (h - I) images; that sublattice is invariant and h acts trivially on
    the quotient, which is exactly the block condition.
    """
    n = H.dimension
    vectors = []
    for h in H.elements:
        diff = mat_sub(h, identity(n))
        for col in zip(*diff):
            vectors.append(tuple(col))
    sat = saturate(vectors, n)
    Q = complete_basis(sat)
    k = n - linalg.ncols(sat)
    for h in H.elements:
        conj = linalg.mat_mul(linalg.mat_mul(linalg.inverse_unimodular(Q), h), Q)
        if not _is_block_form(conj, n - k, k):
            raise BlockFormError("conjugated holonomy element not in block form")
    return Q


def _is_block_form(M: IntMatrix, r: int, k: int) -> bool:
    for i in range(r, r + k):
        for j in range(r):
            if M[i][j] != 0:
                return False
        for j in range(r, r + k):
            if M[i][j] != (1 if i == j else 0):
                return False
    return True


def calabi_map(g: AffineElement, k: int) -> tuple[Fraction, ...]:
    """Last k translation entries of an element already in block coordinates."""
    n = g.dimension
    return g.translation[n - k:]


def kernel_group(spec: GroupSpec, max_order: int | None = None) -> Reduction:
    """Extract ker f as a Bieberbach group of dimension n - k.

    Requires a validated input with k >= 1. The kernel generators are the
    reduced lifts of every holonomy element whose Calabi image is integral;
    redundancy is harmless and the implicit lattice supplies the rest.
    """
    kwargs = {} if max_order is None else {"max_order": max_order}
    H = holonomy_closure(spec, **kwargs)
    n = spec.dimension
    k = fixed_space_rank(H)
    if k < 1:
        raise ValueError("kernel_group requires first Betti number >= 1")
    if k == n:
        kernel = GroupSpec(0, (), name=_kernel_name(spec))
        return Reduction(affine_identity(n), k, kernel, k)
    Q = splitting_basis(H)
    q = AffineElement(Q, (Fraction(0),) * n)
    generators = []
    ident = identity(n)
    for h in H.elements:
        if h == ident:
            continue
        lift = conjugate(H.lift(h), q)
        image = calabi_map(lift, k)
        if not all(v.denominator == 1 for v in image):
            continue
        # shift by an integer lattice vector so the Calabi image is exactly 0
        shift = (0,) * (n - k) + tuple(int(v) for v in image)
        reduced_tr = linalg.vec_sub(lift.translation, shift)
        reduced = AffineElement(lift.linear, reduced_tr)
        # F: drop the last k coordinates
        small_lin = tuple(row[: n - k] for row in reduced.linear[: n - k])
        small_tr = reduced.translation[: n - k]
        generators.append(AffineElement(small_lin, small_tr))
    kernel = GroupSpec(n - k, tuple(generators), name=_kernel_name(spec))
    report = validate(kernel)
    if not report.accepted:
        raise BlockFormError(
            f"Calabi kernel failed validation: {report.failures}"
        )
    return Reduction(q, k, kernel, k)


def _kernel_name(spec: GroupSpec) -> str | None:
    return f"{spec.name}:kernel" if spec.name else None
