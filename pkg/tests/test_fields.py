import json
from fractions import Fraction

import pytest

from nilgeom.algebra import StructureConstants, new_metric_lie_algebra
from nilgeom.catalog import (
    NILMANIFOLD_FAMILIES,
    abelian,
    family_center1,
    family_center2,
    family_center3,
    grid_algebras,
    heisenberg3,
)
from nilgeom.connection import christoffel
from nilgeom.exact_linalg import RationalMatrix, SolutionSpace, nullspace, rank, rref, unit_vector
from nilgeom.fields import (
    FieldClass,
    NotComputed,
    ad_skew_space,
    affine_space,
    affine_system,
    classify,
    concurrent_solve,
    concurrent_system,
    conformal_space,
    conformal_system,
    delta_d_flat_expansion,
    describe_space,
    expansion_harmonic_space,
    harmonic_space,
    killing_space,
    killing_system,
    projective_space,
    projective_system,
    units,
)


def setup(alg):
    return alg, christoffel(alg)


def test_killing_examples():
    assert killing_space(*setup(abelian(5))).dimension == 5
    assert killing_space(*setup(family_center3(1))) == units(5, [3, 4, 5])
    assert killing_space(*setup(family_center1(2, 1))) == units(5, [5])


def test_ad_skew_examples():
    assert ad_skew_space(abelian(5)).dimension == 5
    assert ad_skew_space(family_center2(1, 1)) == units(5, [4, 5])
    assert ad_skew_space(family_center1(3, 2)) == units(5, [5])


def test_ad_skew_brute_force(catalog_algebras):
    # brute force over all basis pairs for each basis-field combination in the space
    for alg in catalog_algebras[::5]:
        n = alg.dim
        space = ad_skew_space(alg)
        for v in space.basis:
            ad = alg.ad_matrix(v)
            for u in range(n):
                for w in range(n):
                    assert ad[w, u] + ad[u, w] == 0


def test_conformal_examples():
    for alg in (family_center1(2, 1), family_center2(3, 1), family_center3(1)):
        a, g = setup(alg)
        assert conformal_space(a, g) == killing_space(a, g)
    assert conformal_space(*setup(abelian(5))).dimension == 5
    system = conformal_system(christoffel(family_center2(1, 1)))
    assert all(x == 0 for x in system.apply(unit_vector(5, 3)))


def test_affine_examples():
    assert affine_space(*setup(family_center1(1, 1))) == units(5, [5])
    assert affine_space(*setup(abelian(5))).dimension == 5
    assert affine_space(*setup(family_center2(1, 1))) == units(5, [4, 5])


def test_projective_examples():
    sol = projective_space(*setup(family_center1(2, 1)))
    assert sol.x_projection == units(5, [5]) and sol.alpha_forced_zero
    flat_case = projective_space(*setup(abelian(5)))
    assert flat_case.x_projection.dimension == 5 and flat_case.alpha_forced_zero
    sol3 = projective_space(*setup(family_center3(1)))
    assert sol3.x_projection == units(5, [3, 4, 5]) and sol3.alpha_forced_zero


def test_concurrent_examples():
    for alg in (family_center1(1, 1), abelian(5), family_center3(1)):
        sol = concurrent_solve(*setup(alg))
        assert not sol.feasible and sol.witness_row is not None


def test_concurrent_center3_block_for_e4():
    # nabla_{e_4} X = 0 for every X, so the rows for i = 4 read 0 = e_4
    g = christoffel(family_center3(1))
    for k in range(5):
        assert all(x == 0 for x in g.gamma[3][k])


def test_harmonic_examples():
    for lam, mu in ((1, 1), (3, 1), (Fraction(3, 2), Fraction(1, 2))):
        assert harmonic_space(*setup(family_center1(lam, mu))) == units(5, [1, 2, 3, 4])
        assert harmonic_space(*setup(family_center2(lam, mu))) == units(5, [1, 2, 3])
    assert harmonic_space(*setup(family_center3(2))) == units(5, [1, 2, 4, 5])


def test_expansion_values():
    # term-by-term evaluation; printed scalars differ, see the verify notes
    alg, g = setup(family_center2(1, 1))
    assert delta_d_flat_expansion(alg, g, unit_vector(5, 3)).coords == (0, 0, 0, 1, 0)
    alg, g = setup(family_center3(1))
    assert delta_d_flat_expansion(alg, g, unit_vector(5, 0)).coords == (0,) * 5
    alg, g = setup(family_center1(1, 1))
    assert delta_d_flat_expansion(alg, g, unit_vector(5, 4)).coords[4] == 2


def test_classify_center1():
    report = classify(*setup(family_center1(2, 1)))
    dims = {cls: report.dimension(cls) for cls in FieldClass}
    assert dims[FieldClass.KILLING] == dims[FieldClass.CONFORMAL] == dims[FieldClass.AFFINE] == 1
    assert dims[FieldClass.PROJECTIVE] == 1
    assert report.per_class[FieldClass.PROJECTIVE].alpha_forced_zero
    assert not report.per_class[FieldClass.CONCURRENT].feasible
    assert dims[FieldClass.HARMONIC] == 4
    assert len(report.expectations) == 7


def test_classify_abelian():
    report = classify(*setup(abelian(5)))
    for cls in (FieldClass.KILLING, FieldClass.CONFORMAL, FieldClass.AFFINE,
                FieldClass.PROJECTIVE, FieldClass.HARMONIC):
        assert report.dimension(cls) == 5
    assert not report.per_class[FieldClass.CONCURRENT].feasible
    assert report.expectations == ()


def test_classify_center2():
    report = classify(*setup(family_center2(1, 1)))
    assert report.dimension(FieldClass.HARMONIC) == 3
    assert report.dimension(FieldClass.AFFINE) == 2


def test_classify_non_unimodular():
    s = new_metric_lie_algebra(StructureConstants.from_brackets(2, {(1, 2): {2: 1}}))
    report = classify(*setup(s))
    assert report.per_class[FieldClass.HARMONIC] == NotComputed("NotUnimodular")
    assert report.dimension(FieldClass.KILLING) is not None
    payload = report.to_json()
    assert payload["classes"]["Harmonic"] == {"not_computed": "NotUnimodular"}


def test_concurrent_infeasible_on_solvable():
    s = new_metric_lie_algebra(StructureConstants.from_brackets(2, {(1, 2): {2: 1}}))
    g = christoffel(s)
    sol = concurrent_solve(s, g)
    assert not sol.feasible
    m, rhs = concurrent_system(g)
    _, pivots = rref(m.hstack(RationalMatrix.from_rows([[x] for x in rhs], cols=1)))
    assert pivots[sol.witness_row] == m.cols


def test_report_json_shape():
    payload = classify(*setup(family_center3(1))).to_json()
    assert set(payload["classes"]) == {c.value for c in FieldClass}
    assert payload["classes"]["Concurrent"]["infeasible"] is True
    assert "witness_row" in payload["classes"]["Concurrent"]
    assert payload["parameters"] == {"lambda": "1"}
    for row in payload["expectations"]:
        assert set(row) == {"source", "claim", "expected", "computed", "verdict"}
    assert json.loads(json.dumps(payload)) == payload


def test_describe_space():
    assert describe_space(units(5, [1, 3])) == "span{e1, e3}"
    assert describe_space(SolutionSpace.zero(3)) == "{0}"
    assert describe_space(SolutionSpace.span([(1, 1, 0)], 3)) == "span{(1, 1, 0)}"


# --- properties -----------------------------------------------------------------

def test_two_path_killing(catalog_algebras, fuzzed_nilpotent, fuzzed_solvable):
    for alg in catalog_algebras + fuzzed_nilpotent + fuzzed_solvable:
        assert killing_space(*setup(alg)) == ad_skew_space(alg)


def test_conformal_collapse(catalog_algebras, fuzzed_nilpotent, fuzzed_solvable):
    for alg in catalog_algebras + fuzzed_nilpotent:
        a, g = setup(alg)
        assert conformal_space(a, g) == killing_space(a, g)
    for alg in fuzzed_solvable:
        a, g = setup(alg)
        assert killing_space(a, g).issubspace(conformal_space(a, g))


def test_killing_fields_are_affine(catalog_algebras, fuzzed_nilpotent, fuzzed_solvable):
    for alg in catalog_algebras + fuzzed_nilpotent + fuzzed_solvable:
        a, g = setup(alg)
        assert killing_space(a, g).issubspace(affine_space(a, g))


def test_projective_affine_consistency(catalog_algebras, fuzzed_nilpotent):
    for alg in catalog_algebras + fuzzed_nilpotent[:60]:
        a, g = setup(alg)
        n = a.dim
        sol = projective_space(a, g)
        alpha_zero = RationalMatrix.from_rows(
            [unit_vector(2 * n, n + i) for i in range(n)], cols=2 * n)
        restricted = nullspace(projective_system(a, g).vstack(alpha_zero))
        assert SolutionSpace.span([v[:n] for v in restricted.basis], n) == affine_space(a, g)
        if sol.alpha_forced_zero:
            assert sol.x_projection == affine_space(a, g)


def test_center_inclusion(catalog_algebras):
    for alg in catalog_algebras:
        a, g = setup(alg)
        assert alg.center_basis.issubspace(affine_space(a, g))
        assert alg.center_basis.issubspace(killing_space(a, g))


@pytest.mark.parametrize("family", NILMANIFOLD_FAMILIES)
def test_harmonic_two_path(family):
    for alg in grid_algebras(family):
        a, g = setup(alg)
        assert expansion_harmonic_space(a, g) == harmonic_space(a, g)


@pytest.mark.parametrize("family", NILMANIFOLD_FAMILIES)
def test_grid_stability(family):
    reports = [classify(*setup(alg)).to_json()["classes"] for alg in grid_algebras(family)]
    assert all(r == reports[0] for r in reports)


def test_rank_nullity_of_systems(catalog_algebras, fuzzed_nilpotent):
    for alg in catalog_algebras + fuzzed_nilpotent:
        a, g = setup(alg)
        for m in (killing_system(g), conformal_system(g), affine_system(a, g), projective_system(a, g)):
            assert rank(m) + nullspace(m).dimension == m.cols


def test_heisenberg_classification():
    report = classify(*setup(heisenberg3(1)))
    assert report.per_class[FieldClass.KILLING] == units(3, [3])
    assert report.per_class[FieldClass.HARMONIC] == units(3, [1, 2])
