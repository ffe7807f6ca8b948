import random

import pytest

from oracles import harvey_dimension, rh_genus
from surface_cyclic.compatibility import IncompatibleSites, InsufficientOrbifoldGenus, toral_subtract
from surface_cyclic.dataset import DataSet, OutOfDomain, enumerate_datasets
from surface_cyclic.fixtures import (
    ORDER5_TARGET,
    ORDER42_BEAD_GENERA,
    ORDER42_BEADS,
    ORDER42_RESULT,
    ORDER42_TRACE,
    order5_necklace_1,
    order5_necklace_2,
    order42_chain,
    order42_necklace,
)
from surface_cyclic.necklace import (
    LinearChain,
    Necklace,
    NecklaceError,
    chain_listing,
    compose_chain,
    decompose,
    fix_descriptor,
    fix_dimension_necklace,
    max_reduction_system_size,
    random_necklace,
    realize,
    reindex_sites,
)


def test_chain_trace_is_stepwise_rh():
    R = realize(Necklace(order42_chain()))
    assert [g for _, g in R.steps] == [20, 37, 57, 115, 135, 155, 155]
    for B, g in zip(ORDER42_BEADS, ORDER42_BEAD_GENERA):
        assert rh_genus(B.n, B.g0, B.periods) == g


def test_realize_order42_necklace():
    N = order42_necklace()
    R = realize(N)
    assert R.dataset == ORDER42_RESULT
    assert R.genus_trace == ORDER42_TRACE
    assert N.self_pairs == ((5, 6), (8, 9), (3, 4), (7, 10))


def test_two_necklaces_same_action():
    assert realize(order5_necklace_1()).dataset == ORDER5_TARGET
    assert realize(order5_necklace_2()).dataset == ORDER5_TARGET
    assert realize(decompose(ORDER5_TARGET)).dataset == ORDER5_TARGET


def test_reindex_matches_repeated_pairs_in_order():
    listing = [(1, 5), (1, 5), (4, 5), (2, 5), (2, 5)]
    canonical = DataSet(5, 0, listing).pairs
    assert reindex_sites(listing, canonical, ((1, 3), (2, 4))) == ((1, 5), (2, 3))
    with pytest.raises(NecklaceError):
        reindex_sites(listing[:-1] + [(3, 5)], canonical, ((1, 2),))


def test_chain_listing_of_order5_chain():
    chain = order5_necklace_2().chain
    assert [tuple(p) for p in chain_listing(chain)] == [(1, 5), (1, 5), (4, 5), (2, 5), (2, 5)]


def test_necklace_structure_checks():
    chain = order42_chain()
    with pytest.raises(NecklaceError):
        Necklace(chain, ((1, 2), (2, 3)))
    with pytest.raises(NecklaceError):
        Necklace(chain, (), 0, 1)  # g'' > g' + m
    with pytest.raises(NecklaceError):
        LinearChain(ORDER42_BEADS, ((3, 3),))
    with pytest.raises(NecklaceError):
        LinearChain((DataSet(42, 1, ((5, 6), (1, 6))),))


def test_realize_reports_failing_step():
    chain = LinearChain(ORDER42_BEADS[:2], ((1, 1),))
    with pytest.raises(IncompatibleSites) as info:
        realize(Necklace(chain))
    assert info.value.step == "link 1"
    with pytest.raises(InsufficientOrbifoldGenus):
        toral_subtract(ORDER42_BEADS[0], 1)


def test_closing_link():
    b1 = DataSet(5, 0, ((1, 5), (1, 5), (3, 5)))
    b2 = DataSet(5, 0, ((2, 5), (4, 5), (4, 5)))
    open_chain = LinearChain((b1, b2), ((3, 1),))
    closed = LinearChain((b1, b2), ((3, 1),), (2, 1))  # pair 2 (4,5) of b2 with pair 1 (1,5) of b1
    a, b = compose_chain(open_chain), compose_chain(closed)
    assert b.g0 == a.g0 + 1 and b.genus == a.genus + 1


def test_normalization_keeps_realization():
    N = order42_necklace()
    shifted = Necklace(N.chain, N.self_pairs, N.g_add + 2, N.g_sub + 2)
    assert realize(shifted).dataset == realize(N).dataset
    assert shifted.normalized() == N


def test_fix_descriptor_order42():
    d = fix_descriptor(order42_necklace())
    assert (d.points, d.num_bounded, d.num_free, d.den_bounded, d.den_free, d.dim) == (6, 10, 0, 3, 5, 4)
    dim = fix_dimension_necklace(order42_necklace())
    assert dim == (4, 4, True)


def test_fix_descriptor_single_bead_is_a_point():
    d = fix_descriptor(Necklace(LinearChain((ORDER42_BEADS[0],))))
    assert (d.points, d.num_bounded, d.num_free, d.den_bounded, d.den_free, d.dim) == (1, 0, 0, 0, 0, 0)
    assert fix_dimension_necklace(Necklace(LinearChain((ORDER42_BEADS[0],)))).closed_formula == 0


def test_fix_descriptor_chain_only():
    N = Necklace(order42_chain())
    d = fix_descriptor(N)
    assert d.points == 6 and d.num_bounded == 6 and d.dim == 14
    assert fix_dimension_necklace(N) == (14, 14, True)


def test_max_reduction_system_size():
    assert max_reduction_system_size(Necklace(order42_chain())) == 155 - 112 + 5
    bead = ORDER42_BEADS[0]
    N = Necklace(LinearChain((bead,)), (), 1, 0)
    assert realize(N).dataset.genus == bead.genus + 42
    assert max_reduction_system_size(N) == 42 + 42 * (2 * 1 - 1)
    with pytest.raises(OutOfDomain):
        max_reduction_system_size(order42_necklace())


@pytest.mark.parametrize("D", [
    DataSet(42, 1, ((5, 6), (1, 6))),
    DataSet(6, 1, ((1, 2), (1, 2))),
    DataSet(5, 3, (), 2),
    DataSet(2, 0, ((1, 2),) * 6),
    DataSet(30, 0, ((1, 6), (3, 10), (8, 15))),
    DataSet(1, 3, ()),
])
def test_decompose_round_trip_examples(D):
    N = decompose(D)
    assert realize(N).dataset == D


def test_decompose_type1_is_single_bead():
    N = decompose(ORDER42_BEADS[2])
    assert N.k == 1 and N.m == 0 and (N.g_add, N.g_sub) == (0, 0)


def test_decompose_census():
    for n in range(1, 11):
        for g in range(2, 7):
            for D in enumerate_datasets(n, g):
                assert realize(decompose(D)).dataset == D


def test_decompose_larger_orders():
    for n in (12, 15, 16, 18, 20, 24):
        for g in range(2, 9):
            for D in enumerate_datasets(n, g):
                assert realize(decompose(D)).dataset == D


def test_dimension_coherence_on_random_necklaces():
    rng = random.Random(7)
    for _ in range(200):
        N = random_necklace(rng).normalized()
        D = realize(N).dataset
        assert D.g0 == N.g_add - N.g_sub + N.m
        assert D.cone_count == N.k + 2 * N.f - 2 * N.m + 2
        assert fix_dimension_necklace(N).closed_formula == harvey_dimension(D.g0, D.cone_count)


def test_factor_count_agrees_when_handles_removed():
    rng = random.Random(11)
    seen = 0
    for _ in range(400):
        N = random_necklace(rng).normalized()
        if N.g_add == 0 and N.g_sub > 0:
            d = fix_descriptor(N)
            assert d.factor_dimension() == d.dim
            seen += 1
    assert seen > 10


def test_necklace_json_round_trip():
    N = order42_necklace()
    assert Necklace.from_json(N.to_json()) == N
    with pytest.raises(NecklaceError):
        Necklace.from_json({"links": []})


def test_structural_warnings_flag_index_bound():
    warnings = order42_necklace().structural_warnings()
    assert any("floor((k+2+f)/2)" in w for w in warnings)
