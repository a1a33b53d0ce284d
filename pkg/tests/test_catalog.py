import pytest

from antiprelie import (QQ, ConstraintError, Field, Matrix, cast_pair,
                        automorphism_of,
                        check_compatible_lie, check_compatible_pair,
                        check_identity, cocycle_families_of, commutator_pair,
                        family_names, get_family, instantiate, pencil,
                        verify_catalog)
from antiprelie.catalog import cocycle_cases_of
from conftest import random_instance


def test_get_family_a5_table():
    fam = get_family("A5")
    assert set(fam.circ_entries) == {(1, 1, 2, "-1"), (2, 1, 1, "-1")}
    assert fam.star_entries is None


def test_get_family_ca26_star():
    fam = get_family("CA26")
    star = {(i, j, k): c for i, j, k, c in fam.star_entries}
    assert star[(2, 1, 1)] == "1" and star[(2, 2, 2)] == "1"


def test_get_family_unknown():
    with pytest.raises(KeyError):
        get_family("CA99")


def test_family_names_complete():
    names = family_names()
    assert len(names) == 54
    assert names[0] == "A1" and names[-1] == "CA45"


def test_instantiate_a8_constraint():
    fam = get_family("A8")
    with pytest.raises(ConstraintError):
        instantiate(fam, {"lambda": -1})
    pair = instantiate(fam, {"lambda": 2})
    assert check_identity(pair.circ, "anti_pre_lie").passed


def test_instantiate_ca16_constraint():
    fam = get_family("CA16")
    with pytest.raises(ConstraintError):
        instantiate(fam, {"gamma": 1})


def test_instantiate_ca10_pinned_table():
    pair = instantiate(get_family("CA10"), {"alpha": 0, "beta": 0})
    assert pair.circ.sc[0][0][0] == QQ.one()
    star = pair.star
    assert star.sc[1][0][0] == QQ.one()    # e2 * e1 = e1
    assert star.sc[0][1][0] == QQ.one()    # e1 * e2 = e1
    assert star.sc[1][1][1] == QQ.one()    # e2 * e2 = e2
    assert star.sc[0][0][0].is_zero() and star.sc[0][0][1].is_zero()


def test_instantiate_ca1_zero():
    pair = instantiate(get_family("CA1"))
    assert pair.circ.is_zero() and pair.star.is_zero()


def test_instantiate_requires_params_and_branch():
    with pytest.raises(ConstraintError):
        instantiate(get_family("CA10"), {"alpha": 1})
    with pytest.raises(ConstraintError):
        instantiate(get_family("CA11"), {"alpha": 1})   # branch missing
    with pytest.raises(ConstraintError):
        instantiate(get_family("CA11"), {"alpha": 1}, branch=2)


def test_every_instantiation_is_compatible(rng):
    for name in family_names():
        if name.startswith("A"):
            continue
        for _ in range(3):
            pair = random_instance(name, rng)
            assert check_compatible_pair(pair).passed, name


def test_projections_are_anti_pre_lie(rng):
    # both products of every pair instance satisfy the single-product
    # identities at 5 random parameter points
    for name in family_names():
        if name.startswith("A"):
            continue
        for _ in range(5):
            pair = random_instance(name, rng)
            assert check_identity(pair.circ, "anti_pre_lie").passed
            assert check_identity(pair.star, "anti_pre_lie").passed


def test_automorphism_a3_example():
    theta = automorphism_of("A3", {"a": 2, "b": 3})
    assert theta == Matrix.from_rows(QQ, [[2, 0], [3, 4]])


def test_automorphism_a2_zero_rejected():
    with pytest.raises(ConstraintError):
        automorphism_of("A2", {"a": 0})


def test_automorphism_identity_members():
    for name in ("A4", "A5"):
        assert automorphism_of(name, {}, index=0) == Matrix.identity(QQ, 2)


def test_automorphism_a1_determinant_constraint():
    with pytest.raises(ConstraintError):
        automorphism_of("A1", {"a": 1, "b": 2, "c": 2, "d": 4})
    theta = automorphism_of("A1", {"a": 1, "b": 0, "c": 1, "d": 1})
    assert not theta.det().is_zero()


def test_cocycle_families_counts():
    assert len(cocycle_families_of("A2")) == 3
    assert len(cocycle_families_of("A3")) == 4
    assert len(cocycle_families_of("A4")) == 1
    assert len(cocycle_families_of("A5")) == 2
    assert len(cocycle_families_of("A9")) == 1
    assert len(cocycle_families_of("A6", "0")) == 3
    assert len(cocycle_families_of("A6", "generic")) == 1
    assert len(cocycle_families_of("A8", "0")) == 3


def test_cocycle_families_a4_shape():
    fam, = cocycle_families_of("A4")
    ring = fam.field
    # leading coefficient of phi(e1,e1) is beta+gamma+delta on the
    # deformation variety (three free parameters)
    assert set(ring.variables) == {"beta", "gamma", "delta"}
    assert fam.sc[0][0][0] == ring.parse("beta+gamma+delta")
    assert fam.sc[0][0][1] == ring.parse("-beta")


def test_cocycle_families_a9_shape():
    fam, = cocycle_families_of("A9")
    ring = fam.field
    assert fam.sc[1][0][0] == ring.parse("alpha+beta")
    assert fam.sc[0][1][0] == ring.parse("2*alpha")


def test_cocycle_case_handling():
    with pytest.raises(ConstraintError):
        cocycle_families_of("A6")
    with pytest.raises(ConstraintError):
        cocycle_families_of("A2", "generic")
    with pytest.raises(KeyError):
        cocycle_families_of("A1")
    assert set(cocycle_cases_of("A8")) == {"0", "-2", "generic"}


@pytest.mark.parametrize("scope", ["A-families", "CA-families",
                                   "automorphisms", "cocycles",
                                   "transformations", "internal-isos"])
def test_verify_catalog_scopes(scope):
    report = verify_catalog(scope)
    assert report.passed, [it.name for it in report.failures()]


def test_verify_catalog_all_counts():
    report = verify_catalog("all")
    assert report.passed
    scopes = {it.scope for it in report.items}
    assert scopes == {"A-families", "CA-families", "automorphisms",
                      "cocycles", "transformations", "internal-isos"}
    assert sum(it.scope == "CA-families" for it in report.items) == 45
    assert sum(it.scope == "A-families" for it in report.items) == 9


def test_verify_catalog_unknown_scope():
    with pytest.raises(ValueError):
        verify_catalog("everything")


def _all_symbolic_pairs():
    for name in family_names():
        if name.startswith("A"):
            continue
        fam = get_family(name)
        for bv in fam.branch_values:
            yield name, bv, fam.symbolic_pair(branch_value=bv)


def test_subadjacent_jacobi_symbolic():
    # commutators of anti-pre-Lie products satisfy Jacobi, symbolically
    from antiprelie import commutator
    for name in family_names():
        fam = get_family(name)
        for bv in fam.branch_values:
            pair = fam.symbolic_pair(branch_value=bv)
            assert check_identity(commutator(pair.circ), "jacobi").passed, name
            assert check_identity(commutator(pair.star), "jacobi").passed, name


def test_commutator_pairs_compatible_lie_symbolic():
    for name, bv, pair in _all_symbolic_pairs():
        assert check_compatible_lie(commutator_pair(pair)).passed, (name, bv)


def test_symbolic_pencil_is_anti_pre_lie():
    # k1*circ + k2*star with symbolic k1, k2 satisfies both identities as
    # a polynomial identity, for every family and branch
    for name, bv, pair in _all_symbolic_pairs():
        old = pair.field
        vars_ = (list(old.variables) if old.kind == "poly" else []) \
            + ["k1", "k2"]
        ring = Field("poly", variables=vars_)
        lifted = cast_pair(pair, ring)
        star = pencil(lifted, ring.variable("k1"), ring.variable("k2"))
        assert check_identity(star, "anti_pre_lie").passed, (name, bv)
