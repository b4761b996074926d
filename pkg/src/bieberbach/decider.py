"""The diffuseness decision procedure.

Trivial center (first Betti number 0) means non-diffuse; otherwise reduce via
Calabi and recurse — the kernel is a subgroup (its verdict is inherited
upward when non-diffuse) and extensions of diffuse by diffuse are diffuse
(kernel diffuse plus Z^k gives diffuse). The recursion terminates because
each Calabi step strictly reduces the dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .affine import GroupSpec, HolonomyGroup, fixed_space_rank, holonomy_closure, validate
from .calabi import kernel_group
from .finite_groups import is_solvable, sylow_all_cyclic


class Outcome(str, Enum):
    DIFFUSE = "diffuse"
    NON_DIFFUSE = "non-diffuse"


class ShortcutOutcome(str, Enum):
    DIFFUSE = "diffuse"
    NON_DIFFUSE = "non-diffuse"
    INCONCLUSIVE = "inconclusive"


TRIVIAL_CENTER = "TrivialCenter"
CALABI_REDUCE = "CalabiReduce"
TRIVIAL_GROUP = "TrivialGroup"


@dataclass(frozen=True)
class ChainStep:
    dimension: int
    betti: int
    action: str

    def __str__(self) -> str:
        return f"{self.dimension}:{self.betti}:{self.action}"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    chain: tuple[ChainStep, ...]
    reductions: tuple = ()  # full Reduction records, one per CalabiReduce step

    def chain_text(self) -> str:
        return ";".join(str(step) for step in self.chain)


class ValidationFailure(ValueError):
    def __init__(self, report):
        super().__init__("; ".join(report.failures) or "validation failed")
        self.report = report


def decide(spec: GroupSpec, check: bool = True) -> Verdict:
    """Total decision procedure for a valid Bieberbach group."""
    if check:
        report = validate(spec)
        if not report.accepted:
            raise ValidationFailure(report)
    steps: list[ChainStep] = []
    reductions = []
    current = spec
    while True:
        n = current.dimension
        if n == 0:
            steps.append(ChainStep(0, 0, TRIVIAL_GROUP))
            return Verdict(Outcome.DIFFUSE, tuple(steps), tuple(reductions))
        H = holonomy_closure(current)
        k = fixed_space_rank(H)
        if k == 0:
            steps.append(ChainStep(n, 0, TRIVIAL_CENTER))
            return Verdict(Outcome.NON_DIFFUSE, tuple(steps), tuple(reductions))
        if k == n:
            # free abelian: fully reduced without a degenerate kernel step
            steps.append(ChainStep(n, n, TRIVIAL_GROUP))
            return Verdict(Outcome.DIFFUSE, tuple(steps), tuple(reductions))
        red = kernel_group(current)
        steps.append(ChainStep(n, k, CALABI_REDUCE))
        reductions.append(red)
        current = red.kernel


def shortcut_verdict(H: HolonomyGroup) -> ShortcutOutcome:
    """KRD-style holonomy shortcuts; advisory only, the recursion is total."""
    if not is_solvable(H):
        return ShortcutOutcome.NON_DIFFUSE
    if sylow_all_cyclic(H):
        return ShortcutOutcome.DIFFUSE
    return ShortcutOutcome.INCONCLUSIVE
