import pytest

from bieberbach.affine import GroupSpec, holonomy_closure
from bieberbach.calabi import kernel_group
from bieberbach.decider import (
    CALABI_REDUCE,
    TRIVIAL_CENTER,
    Outcome,
    ShortcutOutcome,
    ValidationFailure,
    decide,
    shortcut_verdict,
)
from bieberbach.catalog import bundled_catalog_dir, load_catalog
from conftest import load_fixture
from test_finite_groups import alternating_five, cyclic_six


class TestDecide:
    def test_free_abelian(self):
        v = decide(GroupSpec(4, ()))
        assert v.outcome == Outcome.DIFFUSE
        assert len(v.chain) == 1

    def test_hw(self, hw_spec):
        v = decide(hw_spec)
        assert v.outcome == Outcome.NON_DIFFUSE
        assert [(s.dimension, s.betti, s.action) for s in v.chain] == [
            (3, 0, TRIVIAL_CENTER)
        ]

    def test_min88(self, min88_spec):
        v = decide(min88_spec)
        assert v.outcome == Outcome.NON_DIFFUSE
        assert v.chain_text() == "5:0:TrivialCenter"

    def test_example_group(self, example_spec):
        v = decide(example_spec)
        assert v.outcome == Outcome.NON_DIFFUSE
        assert v.chain_text() == "4:1:CalabiReduce;3:0:TrivialCenter"

    def test_rejects_invalid(self):
        with pytest.raises(ValidationFailure):
            decide(load_fixture("infinite_dihedral"))

    def test_chain_replay(self):
        # recomputing each reduction reproduces the recorded steps
        from bieberbach.affine import fixed_space_rank
        for name in ("example_05010606", "klein_bottle", "hw_standard"):
            spec = load_fixture(name)
            v = decide(spec)
            current = spec
            for step in v.chain:
                assert step.dimension == current.dimension
                if current.dimension == 0:
                    assert step.action != CALABI_REDUCE
                    break
                k = fixed_space_rank(holonomy_closure(current))
                assert step.betti == k
                if step.action == CALABI_REDUCE:
                    current = kernel_group(current).kernel
                else:
                    break

    def test_monotonicity_of_chains(self):
        cat = load_catalog(bundled_catalog_dir())
        for _, spec in cat.entries:
            v = decide(spec)
            has_trivial_center = any(s.action == TRIVIAL_CENTER for s in v.chain)
            assert (v.outcome == Outcome.NON_DIFFUSE) == has_trivial_center
            for a, b in zip(v.chain, v.chain[1:]):
                assert a.action == CALABI_REDUCE
                assert b.dimension == a.dimension - a.betti


class TestShortcut:
    def test_cyclic_six(self):
        assert shortcut_verdict(cyclic_six()) == ShortcutOutcome.DIFFUSE

    def test_klein_four_inconclusive(self, hw_spec):
        assert (
            shortcut_verdict(holonomy_closure(hw_spec))
            == ShortcutOutcome.INCONCLUSIVE
        )

    def test_a5_non_diffuse(self):
        assert shortcut_verdict(alternating_five()) == ShortcutOutcome.NON_DIFFUSE

    def test_consistent_with_decider_on_catalog(self):
        cat = load_catalog(bundled_catalog_dir())
        for _, spec in cat.entries:
            sv = shortcut_verdict(holonomy_closure(spec))
            if sv == ShortcutOutcome.INCONCLUSIVE:
                continue
            assert sv.value == decide(spec).outcome.value


def test_dim_le_3_uniqueness():
    # the only non-diffuse group of dimension <= 3 is Hantzsche-Wendt
    cat = load_catalog(bundled_catalog_dir())
    non_diffuse = [
        (name, spec) for name, spec in cat.entries
        if decide(spec).outcome == Outcome.NON_DIFFUSE
    ]
    assert len(non_diffuse) == 1
    name, spec = non_diffuse[0]
    assert spec.dimension == 3
    from bieberbach.affine import fixed_space_rank
    assert fixed_space_rank(holonomy_closure(spec)) == 0
