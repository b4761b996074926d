"""Hantzsche-Wendt subgroup detection.

Decides whether a Bieberbach group contains a subgroup isomorphic to the
3-dimensional Hantzsche-Wendt group

    < x, y | x^-1 y^2 x = y^-2,  y^-1 x^2 y = x^-2 >.

Candidate generator images are enumerated at the holonomy level (linear
parts), then the two relators are written as integer-linear systems over the
unknown lattice offsets of the generators within their cosets. Infeasibility
of every candidate system certifies non-containment; a feasible system gives
concrete candidates that are verified as honest embeddings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .affine import (
    AffineElement,
    GroupSpec,
    HolonomyGroup,
    affine_identity,
    compose,
    holonomy_closure,
    inverse,
    validate,
)
from .decider import ValidationFailure
from .finite_groups import _close_subgroup, is_abelian
from .linalg import (
    DioSolution,
    Infeasible,
    IntMatrix,
    identity,
    inverse_unimodular,
    mat_mul,
    mat_vec,
    rational_rank,
    solve_diophantine,
    vec_add,
    vec_neg,
)

DEFAULT_EXPLORE_BOUND = 729  # 3^6 offset instantiations per feasible system

_ORDER_CAP = 10_000


def hw_standard() -> GroupSpec:
    """The standard 3-dimensional Hantzsche-Wendt group."""
    half = Fraction(1, 2)
    x = AffineElement(((1, 0, 0), (0, -1, 0), (0, 0, -1)), (half, half, 0))
    y = AffineElement(((-1, 0, 0), (0, 1, 0), (0, 0, -1)), (0, half, half))
    return GroupSpec(3, (x, y), name="hw_standard")


def _power(g: AffineElement, k: int) -> AffineElement:
    result = affine_identity(g.dimension)
    base = g
    if k < 0:
        base = inverse(g)
        k = -k
    for _ in range(k):
        result = compose(result, base)
    return result


def _relators(alpha: AffineElement, beta: AffineElement) -> tuple[AffineElement, AffineElement]:
    r1 = compose(
        compose(compose(inverse(alpha), _power(beta, 2)), alpha), _power(beta, 2)
    )
    r2 = compose(
        compose(compose(inverse(beta), _power(alpha, 2)), beta), _power(alpha, 2)
    )
    return r1, r2


def _mat_power(h: IntMatrix, k: int) -> IntMatrix:
    result = identity(len(h))
    for _ in range(k):
        result = mat_mul(result, h)
    return result


def candidate_pairs(H: HolonomyGroup) -> list[tuple[IntMatrix, IntMatrix]]:
    """Ordered holonomy pairs passing the necessary linear-level filters.

    (i) both relators are trivial on linear parts; (ii) the subgroup generated
    by the three squares is abelian; (iii) the quotient of <h1, h2> by it is
    Klein four (index 4, every element squares into it).
    """
    n = H.dimension
    ident = identity(n)
    pairs = []
    for h1, h2 in itertools.product(H.elements, repeat=2):
        h1_inv = inverse_unimodular(h1)
        h2_inv = inverse_unimodular(h2)
        h2sq = mat_mul(h2, h2)
        h1sq = mat_mul(h1, h1)
        rel1 = mat_mul(mat_mul(mat_mul(h1_inv, h2sq), h1), h2sq)
        rel2 = mat_mul(mat_mul(mat_mul(h2_inv, h1sq), h2), h1sq)
        if rel1 != ident or rel2 != ident:
            continue
        prod_sq = mat_mul(mat_mul(h1, h2), mat_mul(h1, h2))
        N = _close_subgroup(n, {h1sq, h2sq, prod_sq})
        if not is_abelian(n, N):
            continue
        G = _close_subgroup(n, {h1, h2})
        if len(G) != 4 * len(N):
            continue
        if any(mat_mul(g, g) not in N for g in G):
            continue
        if not all(
            mat_mul(mat_mul(inverse_unimodular(g), m), g) in N for g in G for m in N
        ):
            continue
        pairs.append((h1, h2))
    return pairs


@dataclass(frozen=True)
class _SymbolicAffine:
    """Affine element whose translation is affine-linear in 2n integer unknowns.

    translation = coeff * (x, y) + const, with coeff an integer n x 2n matrix.
    """

    linear: IntMatrix
    coeff: IntMatrix
    const: tuple[Fraction, ...]

    def mul(self, other: "_SymbolicAffine") -> "_SymbolicAffine":
        lin = mat_mul(self.linear, other.linear)
        coeff = tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.coeff, mat_mul(self.linear, other.coeff))
        )
        const = vec_add(self.const, mat_vec(self.linear, other.const))
        return _SymbolicAffine(lin, coeff, const)

    def inv(self) -> "_SymbolicAffine":
        lin_inv = inverse_unimodular(self.linear)
        coeff = tuple(tuple(-e for e in row) for row in mat_mul(lin_inv, self.coeff))
        return _SymbolicAffine(lin_inv, coeff, vec_neg(mat_vec(lin_inv, self.const)))

    def sq(self) -> "_SymbolicAffine":
        return self.mul(self)


@dataclass(frozen=True)
class RelatorSystem:
    """Both relators' translation parts as one stacked integer-linear system.

    Unknowns are (x, y) in Z^2n, the lattice offsets of the two candidate
    generators within their holonomy cosets; a solution makes both relators
    the identity.
    """

    pair: tuple[IntMatrix, IntMatrix]
    coefficient: IntMatrix          # 2n x 2n
    constant: tuple[Fraction, ...]  # length 2n


def build_relator_system(
    lift1: AffineElement, lift2: AffineElement
) -> RelatorSystem:
    """Symbolic relator translations for generators in the given cosets.

    The pair of linear parts must already pass the candidate filter, so both
    relators have identity linear part and their translations are affine in
    the offsets.
    """
    n = lift1.dimension
    zero = tuple(tuple(0 for _ in range(2 * n)) for _ in range(n))
    cx = tuple(
        tuple(1 if j == i else 0 for j in range(2 * n)) for i in range(n)
    )
    cy = tuple(
        tuple(1 if j == n + i else 0 for j in range(2 * n)) for i in range(n)
    )
    alpha = _SymbolicAffine(lift1.linear, cx, lift1.translation)
    beta = _SymbolicAffine(lift2.linear, cy, lift2.translation)
    r1 = alpha.inv().mul(beta.sq()).mul(alpha).mul(beta.sq())
    r2 = beta.inv().mul(alpha.sq()).mul(beta).mul(alpha.sq())
    ident = identity(n)
    if r1.linear != ident or r2.linear != ident:
        raise ValueError("pair does not satisfy the relators at the linear level")
    coefficient = r1.coeff + r2.coeff
    constant = r1.const + r2.const
    return RelatorSystem((lift1.linear, lift2.linear), coefficient, constant)


def verify_embedding(alpha: AffineElement, beta: AffineElement) -> bool:
    """Check that alpha, beta generate an honest Hantzsche-Wendt subgroup.

    Requires: the two presentation relators hold; the nine consequence
    relations on a = alpha^2, b = beta^2, c = (alpha*beta)^2 hold; and the
    translation vectors of a^e, b^e, c^e (e = lcm of the linear-part orders)
    are rationally independent. The last condition is injectivity on the
    maximal abelian subgroup <a, b, c>, which is what makes the homomorphism
    from the Hantzsche-Wendt group an embedding.
    """
    if alpha.dimension != beta.dimension:
        raise ValueError("dimension mismatch")
    r1, r2 = _relators(alpha, beta)
    if not (r1.is_identity() and r2.is_identity()):
        return False
    a = _power(alpha, 2)
    b = _power(beta, 2)
    c = _power(compose(alpha, beta), 2)
    for u, v in ((a, b), (a, c), (b, c)):
        if compose(u, v) != compose(v, u):
            return False
    for u, conj_by in ((a, beta), (a, compose(alpha, beta)),
                       (b, alpha), (b, compose(alpha, beta)),
                       (c, alpha), (c, beta)):
        conjugated = compose(compose(inverse(conj_by), u), conj_by)
        if conjugated != inverse(u):
            return False
    orders = []
    for u in (a, b, c):
        o = _linear_order(u.linear)
        if o is None:
            return False
        orders.append(o)
    e = 1
    for o in orders:
        e = e * o // _gcd(e, o)
    rows = tuple(_power(u, e).translation for u in (a, b, c))
    return rational_rank(rows) == 3


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _linear_order(h: IntMatrix) -> int | None:
    ident = identity(len(h))
    cur = h
    for k in range(1, _ORDER_CAP + 1):
        if cur == ident:
            return k
        cur = mat_mul(cur, h)
    return None


@dataclass(frozen=True)
class HWReport:
    """Outcome of the containment search.

    outcome is one of "contained", "not-contained", "undetermined".
    """

    outcome: str
    alpha: AffineElement | None = None
    beta: AffineElement | None = None
    infeasible_witnesses: tuple[Infeasible, ...] = ()
    feasible_unverified: int = 0
    candidate_count: int = 0


def hw_search(
    spec: GroupSpec, explore_bound: int = DEFAULT_EXPLORE_BOUND
) -> HWReport:
    """Search for a Hantzsche-Wendt subgroup.

    Every candidate pair's relator system is solved exactly. All systems
    infeasible -> not contained (with the witnesses). A feasible system gives
    a particular solution whose instantiation is verified; failing that,
    nearby lattice offsets (homogeneous-basis combinations with coefficients
    in {-1, 0, 1}) are tried up to explore_bound instantiations.
    """
    report = validate(spec)
    if not report.accepted:
        raise ValidationFailure(report)
    H = holonomy_closure(spec)
    n = spec.dimension
    witnesses: list[Infeasible] = []
    feasible_unverified = 0
    pairs = candidate_pairs(H)
    for h1, h2 in pairs:
        system = build_relator_system(H.lift(h1), H.lift(h2))
        sol = solve_diophantine(system.coefficient, vec_neg(system.constant))
        if isinstance(sol, Infeasible):
            witnesses.append(sol)
            continue
        found = _try_instantiations(
            H.lift(h1), H.lift(h2), sol, n, explore_bound
        )
        if found is not None:
            return HWReport(
                "contained", found[0], found[1], candidate_count=len(pairs)
            )
        feasible_unverified += 1
    if feasible_unverified:
        return HWReport(
            "undetermined",
            feasible_unverified=feasible_unverified,
            infeasible_witnesses=tuple(witnesses),
            candidate_count=len(pairs),
        )
    return HWReport(
        "not-contained",
        infeasible_witnesses=tuple(witnesses),
        candidate_count=len(pairs),
    )


def _try_instantiations(lift1, lift2, sol: DioSolution, n, explore_bound):
    basis = sol.homogeneous_basis
    tried = 0
    for combo in _offset_combos(len(basis)):
        offset = list(sol.particular)
        for coeff, vec in zip(combo, basis):
            if coeff:
                offset = [o + coeff * v for o, v in zip(offset, vec)]
        alpha = AffineElement(
            lift1.linear, vec_add(lift1.translation, tuple(offset[:n]))
        )
        beta = AffineElement(
            lift2.linear, vec_add(lift2.translation, tuple(offset[n:]))
        )
        if verify_embedding(alpha, beta):
            return alpha, beta
        tried += 1
        if tried >= explore_bound:
            break
    return None


def _offset_combos(k: int):
    """(0,...,0) first, then all {-1,0,1} combinations."""
    yield (0,) * k
    for combo in itertools.product((0, 1, -1), repeat=k):
        if any(combo):
            yield combo
