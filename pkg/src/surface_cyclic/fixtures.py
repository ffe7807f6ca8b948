"""Worked examples used by the verification suite and the tests."""

from __future__ import annotations

from surface_cyclic.dataset import DataSet
from surface_cyclic.fatgraph import FatGraph
from surface_cyclic.necklace import LinearChain, Necklace, chain_listing, realize, reindex_sites

# Six order-42 beads and the links joining them.
ORDER42_BEADS = (
    DataSet(42, 0, ((2, 21), (19, 42), (19, 42))),
    DataSet(42, 0, ((5, 6), (13, 21), (23, 42))),
    DataSet(42, 0, ((1, 14), (8, 21), (23, 42))),
    DataSet(42, 0, ((1, 6), (11, 21), (13, 42))),
    DataSet(42, 0, ((13, 14), (10, 21), (25, 42))),
    DataSet(42, 0, ((19, 21), (17, 42), (29, 42))),
)
ORDER42_LINKS = ((3, 3), (2, 2), (0, 0), (2, 2), (3, 2))
ORDER42_BEAD_GENERA = (20, 17, 19, 17, 19, 20)

# The composed chain as printed, in the printed pair order; self-pair indices
# of the necklace below refer to this listing.
ORDER42_LISTING = ((2, 21), (19, 42), (5, 6), (23, 42), (1, 14), (1, 6), (13, 42), (13, 14), (19, 21), (29, 42))
ORDER42_CHAIN_RESULT = DataSet(42, 0, ORDER42_LISTING)
ORDER42_CHAIN_GENUS = 155

ORDER42_PRINTED_SELF_PAIRS = ((1, 9), (2, 4), (5, 8), (7, 10))
ORDER42_HANDLES = (0, 3)
ORDER42_RESULT = DataSet(42, 1, ((5, 6), (1, 6)))
ORDER42_TRACE = (155, 157, 158, 161, 162, 120, 78, 36)


def order42_chain() -> LinearChain:
    return LinearChain(ORDER42_BEADS, ORDER42_LINKS)


def order42_necklace() -> Necklace:
    chain = order42_chain()
    D_T = realize(Necklace(chain)).dataset
    sites = reindex_sites(ORDER42_LISTING, D_T.pairs, ORDER42_PRINTED_SELF_PAIRS)
    return Necklace(chain, sites, *ORDER42_HANDLES)


# Two necklaces for one order-5 action on a genus 7 surface.
ORDER5_TARGET = DataSet(5, 1, ((1, 5), (2, 5), (2, 5)))
ORDER5_CORE = DataSet(5, 0, ((1, 5), (2, 5), (2, 5)))
ORDER5_BEAD_1 = DataSet(5, 0, ((1, 5), (1, 5), (3, 5)))
ORDER5_BEAD_2 = DataSet(5, 0, ((2, 5), (4, 5), (4, 5)))
ORDER5_LINKS = ((3, 1), (2, 1))
# index pair into the bead-by-bead listing of the surviving pairs
ORDER5_PRINTED_SELF_PAIR = (1, 3)


def order5_necklace_1() -> Necklace:
    return Necklace(LinearChain((ORDER5_CORE,)), (), 1, 0)


def order5_necklace_2() -> Necklace:
    chain = LinearChain((ORDER5_BEAD_1, ORDER5_BEAD_2, ORDER5_CORE), ORDER5_LINKS)
    D_T = realize(Necklace(chain)).dataset
    sites = reindex_sites(chain_listing(chain), D_T.pairs, (ORDER5_PRINTED_SELF_PAIR,))
    return Necklace(chain, sites, 0, 0)


# Regular hyperbolic 14-gon with opposite sides glued.
REGULAR_14GON = DataSet(14, 0, ((1, 2), (1, 7), (5, 14)))
OCTAGON_WORD = "a b a^-1 b^-1 c d c^-1 d^-1"

GAMMA_1_WORD = "e1 e2^-1 e3 e6^-1 e3^-1 e4 e1^-1 e2 e5^-1 e6 e5 e4^-1"
GAMMA_2_WORD = "f1 f3 f5 f6^-1 f5^-1 f2^-1 f1^-1 f2 f4 f6 f4^-1 f3^-1"


def gamma_1() -> FatGraph:
    return FatGraph.from_boundary_words(GAMMA_1_WORD)


def gamma_2() -> FatGraph:
    return FatGraph.from_boundary_words(GAMMA_2_WORD)


def torus_graph() -> FatGraph:
    """One vertex with rotation (a, b, a^-1, b^-1): two curves filling the torus."""
    return FatGraph.build([[0, 1, 2, 3]], [[0, 2], [1, 3]], ["a", "b"])


# A hypothetical order-12 action on genus 5 filled by a one-faced graph.
GENUS5_ORDER12_CASE = {"g": 5, "n": 12, "cone_orders": (6, 12, 12), "b": 1}
