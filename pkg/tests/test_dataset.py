import pytest

from oracles import brute_force_datasets, egcd_inverse, harvey_dimension, rh_genus
from surface_cyclic.dataset import (
    DataSet,
    InvalidDataSet,
    OutOfDomain,
    canonicalize,
    classify,
    enumerate_datasets,
    fix_dimension_harvey,
    is_irreducible,
    orbit_structure,
    reduction_orbit_counts,
    validate,
)
from surface_cyclic.fixtures import ORDER42_BEADS, ORDER42_LISTING

D1 = ORDER42_BEADS[0]


def test_validate_examples():
    assert validate((42, 0, 0, ((2, 21), (19, 42), (19, 42)))).valid
    assert validate((4, 0, 0, ((1, 2), (1, 2), (1, 4), (3, 4)))).valid
    assert validate((5, 1, 2, ())).valid
    report = validate((6, 0, 0, ((1, 2), (1, 3))))
    assert not report.valid
    assert {"iv", "v"} <= set(report.violations)


@pytest.mark.parametrize("candidate, violation", [
    ((6, 0, 0, ((1, 4), (3, 4))), "ii"),  # period does not divide n
    ((6, 0, 0, ((2, 6), (4, 6))), "iii"),  # residue not a unit
    ((6, 0, 0, ((1, 1), (5, 6))), "ii"),
    ((5, 1, 5, ()), "i"),
    ((5, 1, 1, ((1, 5), (4, 5))), "i"),  # rotation number together with cone points
])
def test_validate_flags_each_condition(candidate, violation):
    report = validate(candidate)
    assert not report.valid
    assert violation in report.violations


def test_single_cone_point_rejected():
    assert not validate((5, 0, 0, ((1, 5),))).valid
    assert not validate((5, 1, 0, ((1, 5),))).valid


def test_invalid_construction_raises_with_violations():
    with pytest.raises(InvalidDataSet) as info:
        DataSet(6, 0, ((1, 2), (1, 3)))
    assert "v" in info.value.violations
    assert info.value.to_json()["error"] == "invalid_dataset"


@pytest.mark.parametrize("D, g", [
    (D1, 20),
    (DataSet(42, 4, ((5, 6), (1, 6))), 162),
    (DataSet(42, 1, ((5, 6), (1, 6))), 36),
    (DataSet(5, 1, (), 2), 1),
    (DataSet(5, 3, (), 2), 11),
])
def test_genus_against_rh_oracle(D, g):
    assert D.genus == g == rh_genus(D.n, D.g0, D.periods)


def test_classify_examples():
    assert classify(D1).kind == "type1" and classify(D1).spherical
    rot = classify(DataSet(6, 2, ((1, 6), (5, 6))))
    assert rot.kind == "rotational" and rot.rotational_form == "paired"
    assert classify(DataSet(42, 0, ORDER42_LISTING)).kind == "type2"
    assert classify(DataSet(5, 2, (), 2)).rotational_form == "free"


def test_order_two_rotations():
    # for n = 2 any even number of (1,2) pairs is a paired rotation
    assert classify(DataSet(2, 0, ((1, 2),) * 6)).kind == "rotational"
    assert classify(DataSet(2, 1, ((1, 2),) * 2)).kind == "rotational"


def test_irreducibility_examples():
    assert is_irreducible(DataSet(6, 0, ((2, 3), (1, 6), (1, 6))))
    assert not is_irreducible(DataSet(4, 0, ((1, 2), (1, 2), (1, 4), (3, 4))))
    assert not is_irreducible(DataSet(42, 1, ((5, 6), (1, 6))))


def test_harvey_dimension_examples():
    assert fix_dimension_harvey(DataSet(42, 1, ((5, 6), (1, 6)))) == 4
    assert fix_dimension_harvey(D1) == 0
    assert fix_dimension_harvey(DataSet(2, 0, ((1, 2),) * 6)) == 6
    with pytest.raises(OutOfDomain):
        fix_dimension_harvey(DataSet(3, 0, ((1, 3), (1, 3), (1, 3))))  # torus


def test_orbit_structure_examples():
    orbits = orbit_structure(D1)
    first = orbits[0]
    assert (first.orbit_size, first.cone_order, first.rotation_numerator) == (2, 21, 11)
    assert orbit_structure(DataSet(4, 0, ((1, 2), (1, 2), (1, 4), (3, 4))))[-1].rotation_numerator == 3
    for D in enumerate_datasets(12, 5):
        for pair, datum in zip(D.pairs, orbit_structure(D)):
            assert datum.orbit_size * datum.cone_order == D.n
            assert datum.rotation_numerator == egcd_inverse(pair.c, pair.m)


def test_reduction_orbit_counts():
    assert reduction_orbit_counts(DataSet(42, 1, ((5, 6), (1, 6)))) == (2, 2)
    assert reduction_orbit_counts(DataSet(2, 0, ((1, 2),) * 6)) == (3, 4)
    assert reduction_orbit_counts(DataSet(42, 4, ((5, 6), (1, 6)))) == (11, 8)
    with pytest.raises(OutOfDomain):
        reduction_orbit_counts(D1)


def test_canonicalize_sorts_and_is_idempotent():
    raw = (42, 0, 0, ((19, 42), (2, 21), (19, 42)))
    D = canonicalize(raw)
    assert [tuple(p) for p in D.pairs] == [(2, 21), (19, 42), (19, 42)]
    assert canonicalize(D) == D
    a = DataSet(42, 0, ORDER42_LISTING)
    b = DataSet(42, 0, tuple(reversed(ORDER42_LISTING)))
    assert a == b


def test_json_round_trip():
    for D in (D1, DataSet(5, 2, (), 2), DataSet(42, 1, ((5, 6), (1, 6)))):
        assert DataSet.from_json(D.to_json()) == D


def test_enumerate_small_cases():
    assert [D.notation() for D in enumerate_datasets(2, 2)] == [
        "(2,0;(1,2),(1,2),(1,2),(1,2),(1,2),(1,2))", "(2,1;(1,2),(1,2))"]
    assert DataSet(6, 0, ((2, 3), (1, 6), (1, 6))) in enumerate_datasets(6, 2)
    assert enumerate_datasets(1, 4) == [DataSet(1, 4, ())]


@pytest.mark.parametrize("n, g", [(2, 2), (4, 2), (6, 2), (3, 4), (5, 3), (8, 3), (12, 4), (9, 5)])
def test_enumerate_matches_brute_force(n, g):
    ours = {(D.n, D.g0, D.rot, tuple(tuple(p) for p in D.pairs)) for D in enumerate_datasets(n, g)}
    assert ours == brute_force_datasets(n, g)


def test_enumerate_parallel_is_identical():
    assert enumerate_datasets(12, 6, jobs=3) == enumerate_datasets(12, 6)


def test_census_integrality_and_consistency():
    for n in range(1, 13):
        for g in range(0, 11):
            for D in enumerate_datasets(n, g):
                assert rh_genus(D.n, D.g0, D.periods) == g
                if g >= 2:
                    assert is_irreducible(D) == (fix_dimension_harvey(D) == 0)
                    assert fix_dimension_harvey(D) == harvey_dimension(D.g0, D.cone_count)


def test_irreducible_order_bounds():
    for g in range(2, 9):
        for n in range(2, 4 * g + 6):
            for D in enumerate_datasets(n, g):
                if is_irreducible(D):
                    assert 2 * g + 1 <= n <= 4 * g + 2
