import itertools

from bieberbach.affine import AffineElement, GroupSpec, HolonomyGroup, holonomy_closure
from bieberbach.finite_groups import is_abelian, is_solvable, sylow_all_cyclic
from conftest import load_fixture


def matrix_group(elements, dimension):
    lifts = {e: AffineElement(e, (0,) * dimension) for e in elements}
    return HolonomyGroup(dimension, tuple(elements), lifts)


def alternating_five():
    def permmat(p):
        return tuple(tuple(1 if j == p[i] else 0 for j in range(5)) for i in range(5))

    def sign(p):
        s = 1
        for i in range(5):
            for j in range(i + 1, 5):
                if p[i] > p[j]:
                    s = -s
        return s

    elems = [permmat(p) for p in itertools.permutations(range(5)) if sign(p) == 1]
    return matrix_group(elems, 5)


def cyclic_six():
    gen = AffineElement(((0, -1), (1, 1)), (0, 0))
    return holonomy_closure(GroupSpec(2, (gen,)))


class TestSolvable:
    def test_klein_four_abelian(self):
        H = holonomy_closure(load_fixture("hw_standard"))
        assert is_solvable(H)

    def test_dihedral_eight(self):
        H = holonomy_closure(load_fixture("min88"))
        assert H.order == 8
        assert is_solvable(H)

    def test_a5_not_solvable(self):
        assert not is_solvable(alternating_five())

    def test_prime_power_always_solvable(self):
        H = holonomy_closure(load_fixture("example_05010606"))
        assert is_solvable(H)


class TestSylowAllCyclic:
    def test_cyclic_six(self):
        H = cyclic_six()
        assert H.order == 6
        assert sylow_all_cyclic(H)

    def test_klein_four(self):
        H = holonomy_closure(load_fixture("hw_standard"))
        assert not sylow_all_cyclic(H)

    def test_dihedral_eight(self):
        H = holonomy_closure(load_fixture("min88"))
        assert not sylow_all_cyclic(H)

    def test_trivial_group(self):
        H = holonomy_closure(GroupSpec(2, ()))
        assert sylow_all_cyclic(H)

    def test_a5_has_cyclic_sylows(self):
        # |A5| = 60 = 2^2 * 3 * 5; Sylow 2-subgroup is Klein four
        assert not sylow_all_cyclic(alternating_five())


def test_is_abelian_helper():
    H = holonomy_closure(load_fixture("min88"))
    assert not is_abelian(5, H.elements)
    K = holonomy_closure(load_fixture("hw_standard"))
    assert is_abelian(3, K.elements)
