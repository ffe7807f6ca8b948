import random

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import harvey_dimension, rh_genus
from surface_cyclic.compatibility import compose_pair, compose_self, toral_add, toral_subtract
from surface_cyclic.dataset import DataSet, InvalidDataSet, classify, enumerate_datasets, validate
from surface_cyclic.fatgraph import FatGraph, automorphisms, boundary_walks, induced_signature
from surface_cyclic.hyperbolic import pairing_word, polygon_spec
from surface_cyclic.necklace import decompose, fix_dimension_necklace, random_necklace, realize, spherical_type1_beads

ORDERS = st.sampled_from([2, 3, 4, 5, 6, 7, 8, 9, 10, 12])


@st.composite
def datasets(draw, min_genus=2):
    n = draw(ORDERS)
    g = draw(st.integers(min_genus, 6))
    found = enumerate_datasets(n, g)
    assume(found)
    return draw(st.sampled_from(found))


@given(datasets(), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_canonical_form_ignores_listing_order(D, rnd):
    pairs = list(D.pairs)
    rnd.shuffle(pairs)
    E = DataSet(D.n, D.g0, pairs, D.rot)
    assert E == D and E.notation() == D.notation()
    assert DataSet.from_json(D.to_json()) == D


@given(datasets())
@settings(max_examples=60, deadline=None)
def test_genus_matches_oracle(D):
    assert D.genus == rh_genus(D.n, D.g0, D.periods)
    assert validate(D).valid


@given(st.integers(2, 12), st.integers(0, 3), st.lists(st.tuples(st.integers(1, 12), st.integers(2, 12)), max_size=5))
def test_validate_matches_constructor(n, g0, raw):
    report = validate((n, g0, 0, tuple(raw)))
    try:
        DataSet(n, g0, raw)
        built = True
    except InvalidDataSet:
        built = False
    assert built == report.valid


@given(datasets(), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_toral_round_trip(D, k):
    up = toral_add(D, k)
    assert up.genus == D.genus + k * D.n
    assert toral_subtract(up, k) == D


@st.composite
def compatible_beads(draw):
    n = draw(st.sampled_from([3, 4, 5, 6, 7, 8, 9, 10, 12]))
    pool = spherical_type1_beads(n, 6)
    assume(pool)
    A = draw(st.sampled_from(pool))
    i = draw(st.integers(1, 3))
    p = A.pairs[i - 1]
    options = [(B, j) for B in pool for j, q in enumerate(B.pairs, 1) if q.m == p.m and (p.c + q.c) % p.m == 0]
    assume(options)
    B, j = draw(st.sampled_from(options))
    return A, B, i, j


@given(compatible_beads())
@settings(max_examples=80, deadline=None)
def test_pair_composition_bookkeeping(case):
    A, B, i, j = case
    r = compose_pair(A, B, (i, j))
    m = A.pairs[i - 1].m
    assert r.result.genus == A.genus + B.genus + A.n // m - 1
    assert r.result.genus == rh_genus(r.result.n, r.result.g0, r.result.periods)
    assert compose_pair(B, A, (j, i)).result == r.result


@given(compatible_beads())
@settings(max_examples=40, deadline=None)
def test_self_composition_adds_orbit(case):
    A, B, i, j = case
    T = compose_pair(A, B, (i, j)).result
    pairs = list(T.pairs)
    hits = [(r, s) for r in range(1, len(pairs) + 1) for s in range(r + 1, len(pairs) + 1)
            if pairs[r - 1].m == pairs[s - 1].m and (pairs[r - 1].c + pairs[s - 1].c) % pairs[r - 1].m == 0]
    assume(hits and len(pairs) >= 4)
    r, s = hits[0]
    out = compose_self(T, r, s)
    assert out.result.g0 == T.g0 + 1
    assert out.result.genus == T.genus + T.n // pairs[r - 1].m


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_necklace_invariants(seed):
    N = random_necklace(random.Random(seed))
    M = N.normalized()
    D = realize(N).dataset
    assert realize(M).dataset == D
    assert M.g_add == 0 or M.g_sub == 0
    assert D.g0 == M.g_add - M.g_sub + M.m
    assert D.cone_count == M.k + 2 * M.f - 2 * M.m + 2
    dim = fix_dimension_necklace(N)
    assert dim.consistent and dim.closed_formula == harvey_dimension(D.g0, D.cone_count)


@given(datasets())
@settings(max_examples=60, deadline=None)
def test_decompose_round_trip(D):
    assert realize(decompose(D)).dataset == D


@given(st.integers(3, 20), st.data())
@settings(max_examples=40, deadline=None)
def test_pairing_is_equivariant(n, data):
    pool = [B for B in spherical_type1_beads(n, 8) if B.genus >= 2]
    assume(pool)
    D = data.draw(st.sampled_from(pool))
    assert classify(D).kind == "type1"
    assert pairing_word(D).is_equivariant(polygon_spec(D).rotation_steps)


@st.composite
def fat_graphs(draw):
    E = draw(st.integers(1, 6))
    H = 2 * E
    perm = draw(st.permutations(range(H)))
    cuts = sorted(draw(st.sets(st.integers(1, H - 1), max_size=min(H - 1, 4))))
    bounds = [0] + cuts + [H]
    vertices = [perm[a:b] for a, b in zip(bounds, bounds[1:])]
    edges = [[2 * i, 2 * i + 1] for i in range(E)]
    G = FatGraph.build(vertices, edges)
    assume(G.is_connected())
    return G


@given(fat_graphs())
@settings(max_examples=80, deadline=None)
def test_fat_graph_euler_and_reconstruction(G):
    chi = len(G.vertices) - len(G.edges) + len(G.faces)
    assert chi % 2 == 0 and chi <= 2
    assert G.genus == (2 - chi) // 2
    H = FatGraph.from_boundary_words(boundary_walks(G))
    assert (len(H.vertices), len(H.faces), H.genus) == (len(G.vertices), len(G.faces), G.genus)
    assert sorted(H.degrees) == sorted(G.degrees)


@given(fat_graphs())
@settings(max_examples=60, deadline=None)
def test_automorphisms_form_a_group(G):
    auts = automorphisms(G)
    perms = {a.perm for a in auts}
    assert len(perms) == len(auts)
    assert all(a.is_automorphism_of(G) for a in auts)
    assert all((a * b).perm in perms for a in auts for b in auts)
    for h in auts:
        if h.order < 2:
            continue
        sig = induced_signature(G, h)
        chi = 2 - 2 * G.genus
        orbifold = 2 - 2 * sig.quotient_genus - sum(1 - 1 / m for m in sig.cone_orders)
        assert abs(chi - h.order * orbifold) < 1e-9
        assert all(h.order % m == 0 for m in sig.cone_orders)
