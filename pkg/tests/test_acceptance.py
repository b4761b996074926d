"""Acceptance suite: one test per acceptance criterion.

Run with ``pytest -v tests/test_acceptance.py`` to get exactly one pass/fail
line per criterion. Criteria 2 and 3 need a 74-group dimension-4 catalog that
is not bundled; point BIEBERBACH_CATALOG_DIM4 at a directory of AGS files to
supply it (and similarly BIEBERBACH_CATALOG_DIM5 / _DIM6 for the conditional
criterion 8, which is skipped as waived when those catalogs are absent).

All tolerances are exact: every comparison below is integer or rational
equality, never approximate.
"""

import itertools
import os
import random
from fractions import Fraction
from pathlib import Path

import pytest

from bieberbach.affine import (
    AffineElement,
    GroupSpec,
    compose,
    conjugate,
    fixed_space_rank,
    holonomy_closure,
    translation,
)
from bieberbach.calabi import calabi_map, kernel_group, splitting_basis
from bieberbach.catalog import (
    bundled_catalog_dir,
    bundled_fixture,
    classify_catalog,
    load_catalog,
    serialize_affine,
)
from bieberbach.decider import Outcome, ShortcutOutcome, decide, shortcut_verdict
from bieberbach.hw import hw_search, hw_standard, verify_embedding
from bieberbach.linalg import (
    Infeasible,
    identity,
    inverse_unimodular,
    mat_mul,
    solve_diophantine,
)
from bieberbach.witness import ElementSet, ball, extremal_points
from conftest import bundled_specs, load_fixture

from test_hw import _direct_sum_with_lattice
from test_linalg import brute_force_solutions
from test_witness import naive_extremal


def external_catalog(var):
    path = os.environ.get(var)
    return Path(path) if path else None


def test_criterion_1_dims_1_to_3_classification():
    """Totals (1, 2, 10) and non-diffuse counts (0, 0, 1), exactly."""
    table = classify_catalog(load_catalog(bundled_catalog_dir()))
    assert not table.invalid
    assert table.per_dimension() == [
        (1, 1, 0, 1),
        (2, 2, 0, 2),
        (3, 10, 1, 9),
    ]


def test_criterion_2_dim4_non_diffuse_count():
    """74-group dimension-4 catalog classifies to exactly 17 non-diffuse."""
    directory = external_catalog("BIEBERBACH_CATALOG_DIM4")
    assert directory is not None and directory.is_dir(), (
        "no dimension-4 catalog available: the 74-group catalog is not "
        "bundled and no generator data for it exists in this environment; "
        "set BIEBERBACH_CATALOG_DIM4 to a directory of AGS files to run "
        "this criterion"
    )
    table = classify_catalog(load_catalog(directory), jobs=os.cpu_count() or 1)
    assert not table.invalid
    assert table.per_dimension() == [(4, 74, 17, 57)]


def test_criterion_3_minimal_dimension_is_5():
    """hw-check: contained for all 17 non-diffuse dim-4 groups, and
    not-contained for min.88.1.1.15; no undetermined outcomes."""
    # the unconditional half: the 5-dimensional group with trivial center
    # does not contain the 3-dimensional one
    report = hw_search(load_fixture("min88"))
    assert report.outcome == "not-contained"

    directory = external_catalog("BIEBERBACH_CATALOG_DIM4")
    assert directory is not None and directory.is_dir(), (
        "min.88.1.1.15 verified not-contained, but the 17 dimension-4 "
        "containment checks need the external 74-group catalog; set "
        "BIEBERBACH_CATALOG_DIM4 to run them"
    )
    catalog = load_catalog(directory)
    non_diffuse = [
        (name, spec)
        for name, spec in catalog.entries
        if decide(spec).outcome == Outcome.NON_DIFFUSE
    ]
    assert len(non_diffuse) == 17
    for name, spec in non_diffuse:
        result = hw_search(spec)
        assert result.outcome == "contained", name


def test_criterion_4_example_regression():
    """Conjugation by Q reproduces the expected affine matrices byte-exactly;
    the reduction has k = 1 and a 3-dimensional kernel with trivial center
    and holonomy of order 4."""
    spec = load_fixture("example_05010606")
    A, B = spec.generators
    Q = AffineElement(
        ((1, 1, 0, 0), (0, 1, 0, 0), (1, 0, 0, 1), (0, 0, 1, 0)),
        (0, 0, 0, 0),
    )
    half = Fraction(1, 2)
    expected_AQ = AffineElement(
        ((1, 0, 0, 0), (0, -1, 0, 1), (0, 0, -1, 0), (0, 0, 0, 1)),
        (half, 0, half, 0),
    )
    expected_BQ = AffineElement(
        ((-1, 0, 0, -1), (0, 1, 0, 0), (0, 0, -1, 0), (0, 0, 0, 1)),
        (0, half, 0, 0),
    )
    assert serialize_affine(conjugate(A, Q)) == serialize_affine(expected_AQ)
    assert serialize_affine(conjugate(B, Q)) == serialize_affine(expected_BQ)

    red = kernel_group(spec)
    assert red.k == 1
    assert red.kernel.dimension == 3
    Hk = holonomy_closure(red.kernel)
    assert fixed_space_rank(Hk) == 0
    assert Hk.order == 4


def test_criterion_5_min88_regression():
    """decide gives non-diffuse with chain [(5, 0, TrivialCenter)]; holonomy
    order 8; every candidate relator system is infeasible, with at least one
    witness equation of constant 2 mod 4 against coefficients divisible by 4."""
    spec = load_fixture("min88")
    verdict = decide(spec)
    assert verdict.outcome == Outcome.NON_DIFFUSE
    assert [(s.dimension, s.betti, s.action) for s in verdict.chain] == [
        (5, 0, "TrivialCenter")
    ]
    assert holonomy_closure(spec).order == 8

    report = hw_search(spec)
    assert report.outcome == "not-contained"
    assert report.feasible_unverified == 0
    assert report.candidate_count > 0
    assert len(report.infeasible_witnesses) == report.candidate_count
    assert any(
        w.constant % 4 == 2 and all(c % 4 == 0 for c in w.coefficients)
        for w in report.infeasible_witnesses
    )


def test_criterion_6_lemma_suite():
    """verify_embedding on the standard generators, including all nine
    consequence relations on a, b, c."""
    x, y = hw_standard().generators
    assert verify_embedding(x, y)

    g = compose(x, y)
    a, b, c = (compose(u, u) for u in (x, y, g))
    # the three commutators
    for u, v in ((a, b), (a, c), (b, c)):
        assert compose(u, v) == compose(v, u)
    # the six inversion relations a^y = a^-1, a^g = a^-1, b^x = b^-1,
    # b^g = b^-1, c^x = c^-1, c^y = c^-1
    from bieberbach.affine import inverse

    for u, t in ((a, y), (a, g), (b, x), (b, g), (c, x), (c, y)):
        assert conjugate(u, t) == inverse(u)


def test_criterion_7_property_suites():
    """(a) Diophantine vs brute force, (b) homomorphism law, (c) block form,
    (d) shortcut consistency, (e) extremal oracle, (f) injected positives."""
    rng = random.Random(20230817)

    # (a) 500 random small systems against the box oracle
    for _ in range(500):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 3)
        M = tuple(
            tuple(rng.randint(-4, 4) for _ in range(cols)) for _ in range(rows)
        )
        c = tuple(rng.randint(-6, 6) for _ in range(rows))
        sol = solve_diophantine(M, c)
        hits = brute_force_solutions(M, c, box=6)
        if isinstance(sol, Infeasible):
            assert hits == []
        else:
            x = sol.particular
            assert all(
                sum(M[i][j] * x[j] for j in range(cols)) == c[i]
                for i in range(rows)
            )
            # every box solution lies on the affine lattice
            # particular + span_Z(homogeneous basis)
            basis_cols = tuple(
                tuple(vec[i] for vec in sol.homogeneous_basis)
                for i in range(cols)
            )
            for h in hits:
                diff = tuple(hv - xv for hv, xv in zip(h, x))
                if not sol.homogeneous_basis:
                    assert all(d == 0 for d in diff)
                else:
                    assert not isinstance(
                        solve_diophantine(basis_cols, diff), Infeasible
                    )

    # (b) homomorphism law: 200 random word pairs per bundled group
    for spec in bundled_specs():
        H = holonomy_closure(spec)
        k = fixed_space_rank(H)
        if k == 0 or not spec.generators:
            continue
        Q = splitting_basis(H)
        q = AffineElement(Q, (0,) * spec.dimension)
        alphabet = [conjugate(g, q) for g in spec.generators] + [
            translation(tuple(1 if j == i else 0 for j in range(spec.dimension)))
            for i in range(spec.dimension)
        ]

        def word():
            w = AffineElement(identity(spec.dimension), (0,) * spec.dimension)
            for _ in range(rng.randint(0, 5)):
                w = compose(w, rng.choice(alphabet))
            return w

        for _ in range(200):
            w1, w2 = word(), word()
            assert calabi_map(compose(w1, w2), k) == tuple(
                u + v for u, v in zip(calabi_map(w1, k), calabi_map(w2, k))
            )

    # (c) exact block form after the splitting basis, on every bundled group
    for spec in bundled_specs():
        H = holonomy_closure(spec)
        Q = splitting_basis(H)
        Qinv = inverse_unimodular(Q)
        n, k = spec.dimension, fixed_space_rank(H)
        r = n - k
        for h in H.elements:
            conj = mat_mul(mat_mul(Qinv, h), Q)
            for i in range(r, n):
                assert conj[i][:r] == (0,) * r
                assert conj[i][r:] == tuple(
                    1 if i == j else 0 for j in range(r, n)
                )

    # (d) shortcut/decider consistency over the full bundled catalog
    for _, spec in load_catalog(bundled_catalog_dir()).entries:
        sv = shortcut_verdict(holonomy_closure(spec))
        if sv != ShortcutOutcome.INCONCLUSIVE:
            assert sv.value == decide(spec).outcome.value

    # (e) extremal_points against the naive oracle on 200 random sets
    words = ball(load_fixture("hw_standard"), 2).elements
    for _ in range(200):
        chosen = tuple(rng.sample(words, rng.randint(1, 12)))
        A = ElementSet(3, chosen)
        assert set(extremal_points(A).elements) == set(naive_extremal(A))

    # (f) injected positives: the 3-dimensional group direct-summed with Z^m
    for m in (1, 2, 3):
        report = hw_search(_direct_sum_with_lattice(hw_standard(), m))
        assert report.outcome == "contained", f"m={m}"
        assert verify_embedding(report.alpha, report.beta)


def test_criterion_8_dims_5_and_6_conditional():
    """Conditional: dims 5-6 classification counts, given external catalogs."""
    dirs = [external_catalog(v) for v in
            ("BIEBERBACH_CATALOG_DIM5", "BIEBERBACH_CATALOG_DIM6")]
    expected = [(5, 1060, 352, 708), (6, 38746, 19256, 19490)]
    supplied = [(d, e) for d, e in zip(dirs, expected) if d is not None]
    if not supplied:
        pytest.skip(
            "waived: no dimension 5/6 catalogs supplied "
            "(BIEBERBACH_CATALOG_DIM5 / BIEBERBACH_CATALOG_DIM6 unset)"
        )
    for directory, row in supplied:
        table = classify_catalog(
            load_catalog(directory), jobs=os.cpu_count() or 1
        )
        assert not table.invalid
        assert table.per_dimension() == [row]
