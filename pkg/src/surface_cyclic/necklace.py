"""Necklaces: chains of irreducible beads closed up by self-compatibilities.

A necklace ``((D_1..D_k); ((x_1,y_1)..(x_m,y_m)); (g', g''))`` is realized by
composing the beads left to right along the chain links, applying the ``m``
self-compatibilities, adding ``g'`` handles and removing ``g''`` handles.

Index conventions:

* a chain link ``(r, s)`` between beads ``j`` and ``j+1`` names pair ``r`` of
  bead ``j`` and pair ``s`` of bead ``j+1``, in each bead's canonical order;
* self pairs index the canonical pair order of the composed chain ``D_T`` and
  are all resolved against ``D_T`` before any of them is applied.

:func:`reindex_sites` translates indices given against some other listing of
the same pairs (for example a hand-written one) into this convention.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Sequence

from surface_cyclic.compatibility import (
    CompatSite,
    IncompatibleSites,
    compose_full,
    compose_pair,
    compose_self,
    toral_add,
    toral_subtract,
)
from surface_cyclic.dataset import (
    ConePair,
    DataSet,
    InvalidDataSet,
    OutOfDomain,
    classify,
    enumerate_datasets,
    fix_dimension_harvey,
    is_irreducible,
    lcm,
    units,
    validate,
)
from surface_cyclic.errors import SurfaceCyclicError

log = logging.getLogger(__name__)


class NecklaceError(SurfaceCyclicError):
    code = "invalid_necklace"


class DecompositionError(SurfaceCyclicError):
    code = "decomposition_failed"


def bead_kind(D: DataSet) -> str | None:
    """Which kind of bead ``D`` can serve as, or ``None``.

    ``"type1"`` and ``"rotation"`` are the beads of the original construction;
    ``"trivial"`` (the identity of the sphere) and ``"irreducible"`` (three cone
    points, none of full order) extend it to actions it cannot reach.
    """
    if D.g0 != 0 or D.rot:
        return None
    if D.n == 1 and not D.pairs:
        return "trivial"
    kind = classify(D)
    if kind.kind == "type1":
        return "type1"
    if kind.kind == "rotational" and kind.rotational_form == "paired":
        return "rotation"
    if is_irreducible(D):
        return "irreducible"
    return None


@dataclass(frozen=True)
class LinearChain:
    beads: tuple[DataSet, ...]
    links: tuple[CompatSite, ...] = ()
    closing_link: CompatSite | None = None

    def __post_init__(self):
        object.__setattr__(self, "beads", tuple(self.beads))
        object.__setattr__(self, "links", tuple(CompatSite.of(s) for s in self.links))
        if self.closing_link is not None:
            object.__setattr__(self, "closing_link", CompatSite.of(self.closing_link))
        if not self.beads:
            raise NecklaceError("a chain needs at least one bead")
        if len(self.links) != len(self.beads) - 1:
            raise NecklaceError(f"{len(self.beads)} beads need {len(self.beads) - 1} links, got {len(self.links)}")
        if len({D.n for D in self.beads}) != 1:
            raise NecklaceError("all beads must have the same order")
        for i, D in enumerate(self.beads, 1):
            if bead_kind(D) is None:
                raise NecklaceError(f"bead {i} {D} is not a spherical irreducible action or sphere rotation")
        if self.closing_link is not None and (self.closing_link.is_full or len(self.beads) < 2):
            raise NecklaceError("a closing link needs two beads and a (r, s) site")

    @property
    def k(self) -> int:
        return len(self.beads)

    @property
    def f(self) -> int:
        """Number of full ``(0, 0)`` links."""
        return sum(1 for s in self.links if s.is_full)

    @property
    def n(self) -> int:
        return self.beads[0].n

    @property
    def is_closed(self) -> bool:
        return self.closing_link is not None


@dataclass(frozen=True)
class Necklace:
    chain: LinearChain
    self_pairs: tuple[tuple[int, int], ...] = ()
    g_add: int = 0
    g_sub: int = 0

    def __post_init__(self):
        pairs = tuple((int(x), int(y)) for x, y in self.self_pairs)
        object.__setattr__(self, "self_pairs", pairs)
        if self.g_add < 0 or self.g_sub < 0:
            raise NecklaceError("handle counts must be non-negative")
        if self.g_sub > self.g_add + self.m:
            raise NecklaceError(f"g'' = {self.g_sub} exceeds g' + m = {self.g_add + self.m}")
        flat = [i for xy in pairs for i in xy]
        if any(i < 1 for i in flat):
            raise NecklaceError("self-pair indices are 1-based")
        if len(set(flat)) != len(flat):
            raise NecklaceError("self pairs must use pairwise distinct indices")

    @property
    def k(self) -> int:
        return self.chain.k

    @property
    def m(self) -> int:
        return len(self.self_pairs)

    @property
    def f(self) -> int:
        return self.chain.f

    @property
    def n(self) -> int:
        return self.chain.n

    def normalized(self) -> "Necklace":
        p = min(self.g_add, self.g_sub)
        return Necklace(self.chain, self.self_pairs, self.g_add - p, self.g_sub - p)

    def structural_warnings(self) -> list[str]:
        """Soft conditions of the original definition that this necklace breaks."""
        out = []
        bound = (self.k + 2 + self.f) // 2
        if any(i > bound for xy in self.self_pairs for i in xy):
            out.append(f"self-pair indices exceed floor((k+2+f)/2) = {bound}")
        if self.self_pairs:
            out.append("closed-subchain amalgam condition on self pairs not checked")
        if self.k >= 2 and any(bead_kind(D) != "type1" for D in self.chain.beads):
            out.append("multi-bead chain uses beads that are not Type 1")
        if self.k == 1 and bead_kind(self.chain.beads[0]) not in ("type1", "rotation"):
            out.append("single bead is neither Type 1 nor a sphere rotation")
        return out

    @property
    def is_standard(self) -> bool:
        """True when every bead is of a kind the closed dimension formula covers."""
        kinds = [bead_kind(D) for D in self.chain.beads]
        return all(kind == "type1" for kind in kinds)

    def to_json(self):
        out = {
            "beads": [D.to_json() for D in self.chain.beads],
            "links": [[s.left, s.right] for s in self.chain.links],
            "self_pairs": [list(xy) for xy in self.self_pairs],
            "g_add": self.g_add,
            "g_sub": self.g_sub,
        }
        if self.chain.closing_link is not None:
            out["closing_link"] = [self.chain.closing_link.left, self.chain.closing_link.right]
        return out

    @classmethod
    def from_json(cls, data) -> "Necklace":
        try:
            beads = tuple(DataSet.from_json(b) for b in data["beads"])
            closing = data.get("closing_link")
            chain = LinearChain(beads, tuple(tuple(s) for s in data.get("links", [])),
                                tuple(closing) if closing else None)
            return cls(chain, tuple(tuple(p) for p in data.get("self_pairs", [])),
                       int(data.get("g_add", 0)), int(data.get("g_sub", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise NecklaceError(f"malformed necklace JSON: {exc}") from exc


# --- realization ---------------------------------------------------------

class Realization(NamedTuple):
    dataset: DataSet
    chain_dataset: DataSet
    steps: tuple[tuple[str, int], ...]  # (label, genus after the step)

    @property
    def genus_trace(self) -> tuple[int, ...]:
        """Genera from the composed chain ``D_T`` to the final action."""
        start = next(i for i, (label, _) in enumerate(self.steps) if label == "chain")
        return tuple(g for _, g in self.steps[start:])


def _tag(exc: SurfaceCyclicError, label: str):
    exc.step = label
    exc.args = (f"[{label}] {exc.args[0] if exc.args else ''}",) + exc.args[1:]
    return exc


def _position(D: DataSet, value: ConePair, taken=()) -> int:
    for i, p in enumerate(D.pairs, 1):
        if p == value and i not in taken:
            return i
    raise IncompatibleSites(f"pair {tuple(value)} not available in {D}")


def _compose_chain(chain: LinearChain):
    beads = chain.beads
    acc = beads[0]
    alive = {(1, i): p for i, p in enumerate(acc.pairs, 1)}
    steps = [("bead 1", acc.genus)]
    for j, site in enumerate(chain.links, 1):
        nxt = beads[j]
        label = f"link {j}"
        try:
            if site.is_full:
                acc = compose_full(acc, nxt).result
                alive.update({(j + 1, i): p for i, p in enumerate(nxt.pairs, 1)})
            else:
                left = alive.get((j, site.left))
                if left is None:
                    raise IncompatibleSites(f"pair {site.left} of bead {j} is missing or already used")
                if not 1 <= site.right <= len(nxt.pairs):
                    raise IncompatibleSites(f"bead {j + 1} has no pair {site.right}")
                acc = compose_pair(acc, nxt, (_position(acc, left), site.right)).result
                del alive[(j, site.left)]
                alive.update({(j + 1, i): p for i, p in enumerate(nxt.pairs, 1) if i != site.right})
        except SurfaceCyclicError as exc:
            raise _tag(exc, label)
        steps.append((label, acc.genus))
    if chain.closing_link is not None:
        site, k = chain.closing_link, chain.k
        try:
            a, b = alive.get((k, site.left)), alive.get((1, site.right))
            if a is None or b is None:
                raise IncompatibleSites("closing link refers to a missing or used pair")
            ia = _position(acc, a)
            acc = compose_self(acc, ia, _position(acc, b, taken=(ia,))).result
        except SurfaceCyclicError as exc:
            raise _tag(exc, "closing link")
        steps.append(("closing link", acc.genus))
    steps.append(("chain", acc.genus))
    return acc, steps


def compose_chain(chain: LinearChain) -> DataSet:
    """The data set ``D_T`` of a chain (links and closing link applied)."""
    return _compose_chain(chain)[0]


def realize(N: Necklace) -> Realization:
    """Build the data set ``D_N`` of a necklace with its genus trace."""
    D_T, steps = _compose_chain(N.chain)
    for x, y in N.self_pairs:
        if max(x, y) > len(D_T.pairs):
            raise _tag(IncompatibleSites(f"D_T = {D_T} has only {len(D_T.pairs)} pairs"), f"self ({x},{y})")
    acc = D_T
    for x, y in N.self_pairs:
        label = f"self ({x},{y})"
        try:
            a, b = D_T.pairs[x - 1], D_T.pairs[y - 1]
            ia = _position(acc, a)
            acc = compose_self(acc, ia, _position(acc, b, taken=(ia,))).result
        except SurfaceCyclicError as exc:
            raise _tag(exc, label)
        steps.append((label, acc.genus))
    for i in range(N.g_add):
        acc = toral_add(acc, 1)
        steps.append((f"add {i + 1}", acc.genus))
    for i in range(N.g_sub):
        try:
            acc = toral_subtract(acc, 1)
        except SurfaceCyclicError as exc:
            raise _tag(exc, f"subtract {i + 1}")
        steps.append((f"subtract {i + 1}", acc.genus))
    return Realization(acc, D_T, tuple(steps))


def chain_listing(chain: LinearChain) -> list[ConePair]:
    """Surviving pairs of ``D_T`` listed bead by bead, in each bead's order."""
    used = set()
    for j, site in enumerate(chain.links, 1):
        if not site.is_full:
            used.add((j, site.left))
            used.add((j + 1, site.right))
    if chain.closing_link is not None:
        used.add((chain.k, chain.closing_link.left))
        used.add((1, chain.closing_link.right))
    return [p for j, D in enumerate(chain.beads, 1) for i, p in enumerate(D.pairs, 1) if (j, i) not in used]


def reindex_sites(listing: Sequence, canonical: Sequence, sites) -> tuple[tuple[int, int], ...]:
    """Translate 1-based index pairs from ``listing`` into ``canonical`` order.

    Both sequences must hold the same multiset of pairs; repeated pairs are
    matched in order of appearance.
    """
    listing = [ConePair(*p) for p in listing]
    canonical = [ConePair(*p) for p in canonical]
    if sorted(listing) != sorted(canonical):
        raise NecklaceError("listing and canonical order hold different pairs")
    position = {}
    used = set()
    for i, p in enumerate(listing, 1):
        j = next(j for j, q in enumerate(canonical, 1) if q == p and j not in used)
        used.add(j)
        position[i] = j
    return tuple((position[x], position[y]) for x, y in sites)


# --- Fix locus -----------------------------------------------------------

@dataclass(frozen=True)
class FixDescriptor:
    """Factor counts of ``Fix = M1 / M2``.

    ``num_bounded``/``den_bounded`` count factors ``(0, l] x R`` whose length
    bound is a positive constant fixed by the action (kept symbolic);
    ``num_free``/``den_free`` count factors ``R_+ x R``.
    """

    points: int
    num_bounded: int
    num_free: int
    den_bounded: int
    den_free: int
    dim: int

    def factor_dimension(self) -> int:
        return 2 * (self.num_bounded + self.num_free - self.den_bounded - self.den_free)

    def to_json(self):
        return {"points": self.points, "num_bounded": self.num_bounded, "num_free": self.num_free,
                "den_bounded": self.den_bounded, "den_free": self.den_free, "dim": self.dim}


def _self_count(N: Necklace) -> int:
    # A closing link glues the chain to itself like one more self pair.
    return N.m + (1 if N.chain.is_closed else 0)


def fix_descriptor(N: Necklace) -> FixDescriptor:
    N = N.normalized()
    D = realize(N).dataset
    k, f, m = N.k, N.f, _self_count(N)
    ga, gs = N.g_add, N.g_sub
    return FixDescriptor(
        points=k,
        num_bounded=max(ga + k + 2 * f + m - 2, 0),
        num_free=max(2 * ga - 1, 0),
        den_bounded=gs,
        den_free=max(2 * gs - 1, 0),
        dim=fix_dimension_harvey(D),
    )


class NecklaceDimension(NamedTuple):
    dimension: int  # from the realized data set
    closed_formula: int
    consistent: bool


def closed_dimension(N: Necklace) -> int:
    N = N.normalized()
    return 6 * (N.g_add - N.g_sub) + 2 * N.k + 4 * N.f + 2 * _self_count(N) - 2


def fix_dimension_necklace(N: Necklace) -> NecklaceDimension:
    harvey = fix_dimension_harvey(realize(N).dataset)
    closed = closed_dimension(N)
    return NecklaceDimension(harvey, closed, harvey == closed)


def max_reduction_system_size(N: Necklace) -> int:
    """Size of a maximal reduction system read off a necklace with ``g'' = 0``."""
    N = N.normalized()
    if N.g_sub:
        raise OutOfDomain("the reduction-system count needs a necklace without handle removals")
    D = realize(N).dataset
    if is_irreducible(D):
        raise OutOfDomain(f"{D} is irreducible")
    size = D.genus - sum(B.genus for B in N.chain.beads) + N.k - 1
    if N.g_add:
        size += N.n * (2 * N.g_add - 1)
    return size


# --- decomposition -------------------------------------------------------

def _contribution(p: ConePair, n: int) -> int:
    return (n // p.m) * p.c % n


def _aux(t: int, n: int) -> ConePair:
    """The cone pair whose contribution to the residue sum is ``t`` (mod n)."""
    t %= n
    g = math.gcd(t, n)
    return ConePair(t // g, n // g)


def _bead(pairs, n) -> DataSet | None:
    if not any(p.m == n for p in pairs):
        return None
    report = validate((n, 0, 0, pairs))
    if not report.valid:
        return None
    return DataSet(n, 0, tuple(pairs))


def _remove(R: tuple, *items) -> tuple:
    R = list(R)
    for it in items:
        R.remove(it)
    return tuple(R)


def _search_segments(payload: tuple, n: int):
    """Split ``payload`` into linked segments of Type 1 beads.

    Returns a list of segments; each segment is a list of ``(left_aux, bead,
    right_aux)`` triples, where the auxiliary pairs are consumed by the links.
    Returns ``None`` when no arrangement exists.
    """
    c = lambda p: _contribution(p, n)  # noqa: E731

    @lru_cache(maxsize=None)
    def dfs(R: tuple, S):
        uniq = sorted(set(R), key=ConePair.sort_key)
        if S is None:
            if not R:
                return ()
            for a_i, a in enumerate(uniq):
                for b in uniq[a_i:]:
                    try:
                        rest = _remove(R, a, b)
                    except ValueError:
                        continue
                    # whole segment in one bead
                    for q in sorted(set(rest), key=ConePair.sort_key):
                        if (c(a) + c(b) + c(q)) % n:
                            continue
                        B = _bead((a, b, q), n)
                        if B is not None:
                            tail = dfs(_remove(rest, q), None)
                            if tail is not None:
                                return (((None, B, None),),) + tail
                    S2 = (c(a) + c(b)) % n
                    if S2 == 0:
                        continue
                    right = _aux(-S2, n)
                    B = _bead((a, b, right), n)
                    if B is None:
                        continue
                    tail = dfs(rest, S2)
                    if tail is not None:
                        first, *others = tail
                        return (((None, B, right),) + first,) + tuple(others)
            return None
        left = _aux(S, n)
        for a_i, a in enumerate(uniq):
            rest = _remove(R, a)
            for b in sorted(set(rest), key=ConePair.sort_key):
                if (S + c(a) + c(b)) % n:
                    continue
                B = _bead((left, a, b), n)
                if B is not None:
                    tail = dfs(_remove(rest, b), None)
                    if tail is not None:
                        return (((left, B, None),),) + tail
        for a in uniq:
            S2 = (S + c(a)) % n
            if S2 == 0:
                continue
            right = _aux(-S2, n)
            B = _bead((left, a, right), n)
            if B is None:
                continue
            tail = dfs(_remove(R, a), S2)
            if tail is not None:
                first, *others = tail
                return (((left, B, right),) + first,) + tuple(others)
        return None

    return dfs(tuple(sorted(payload, key=ConePair.sort_key)), None)


def _chain_from_segments(segments) -> LinearChain:
    beads, links = [], []
    prev_right_index = None
    for seg_no, segment in enumerate(segments):
        for bead_no, (left, B, right) in enumerate(segment):
            left_index = _position(B, left) if left is not None else None
            right_index = _position(B, right, taken=(left_index,)) if right is not None else None
            if beads:
                if bead_no == 0:
                    links.append(CompatSite(0, 0))
                else:
                    links.append(CompatSite(prev_right_index, left_index))
            beads.append(B)
            prev_right_index = right_index
    return LinearChain(tuple(beads), tuple(links))


def _complementary_candidates(n: int):
    out = []
    for m in sorted((d for d in range(2, n + 1) if n % d == 0), reverse=True):
        for u in units(m):
            if u <= m - u:
                out.append((ConePair(u, m), ConePair(m - u, m)))
    return out


def _self_sites(D_T: DataSet, extras) -> tuple[tuple[int, int], ...]:
    taken: list[int] = []
    sites = []
    for a, b in extras:
        x = _position(D_T, a, taken)
        taken.append(x)
        y = _position(D_T, b, taken)
        taken.append(y)
        sites.append((x, y))
    return tuple(sites)


def _verified(N: Necklace, D: DataSet) -> Necklace | None:
    try:
        if realize(N).dataset == D:
            return N
    except SurfaceCyclicError:
        pass
    return None


def _decompose_general(D: DataSet, max_extra: int) -> Necklace | None:
    import itertools

    n = D.n
    candidates = _complementary_candidates(n)
    for e in range(0, max_extra + 1):
        for extras in itertools.combinations_with_replacement(candidates, e):
            payload = tuple(D.pairs) + tuple(p for pair in extras for p in pair)
            if lcm(p.m for p in payload) != n or len(payload) < 3:
                continue
            segments = _search_segments(payload, n)
            if segments is None:
                continue
            chain = _chain_from_segments(segments)
            D_T, _ = _compose_chain(chain)
            N = Necklace(chain, _self_sites(D_T, extras), max(D.g0 - e, 0), max(e - D.g0, 0))
            if _verified(N, D):
                return N
    return None


def decompose(D: DataSet, max_extra: int | None = None) -> Necklace:
    """Find a necklace whose realization is ``D``.

    Type 1 and rotational actions get the direct single-bead necklaces. Other
    actions are arranged into a chain of Type 1 beads whose links consume
    auxiliary cone pairs; when the cone pairs alone cannot be arranged, extra
    complementary pairs are added and later closed up by self-compatibilities.
    """
    n = D.n
    kind = classify(D)
    if n == 1:
        return Necklace(LinearChain((DataSet(1, 0, ()),)), (), D.g0, 0)
    if kind.kind == "type1" or (D.g0 == 0 and is_irreducible(D)):
        bead = DataSet(n, 0, D.pairs)
        return Necklace(LinearChain((bead,)), (), D.g0, 0)
    if kind.kind == "rotational" and kind.rotational_form == "free":
        r = D.rot
        bead = DataSet(n, 0, ((r, n), (n - r, n)))
        x = _position(bead, ConePair(r, n))
        y = _position(bead, ConePair(n - r, n), taken=(x,))
        return Necklace(LinearChain((bead,)), ((x, y),), D.g0 - 1, 0)
    if kind.kind == "rotational":
        s = kind.s
        bead = DataSet(n, 0, ((s, n), (n - s, n)))
        beads = (bead,) * kind.k
        links = (CompatSite(0, 0),) * (kind.k - 1)
        return Necklace(LinearChain(beads, links), (), D.g0, 0)
    limit = max_extra if max_extra is not None else max(D.g0, 1) + 2
    N = _decompose_general(D, limit)
    if N is None:
        raise DecompositionError(
            f"no necklace found for {D} (genus {D.genus}) with up to {limit} extra complementary pairs"
        )
    return N


# --- random necklaces ----------------------------------------------------

@lru_cache(maxsize=None)
def spherical_type1_beads(n: int, max_genus: int) -> tuple[DataSet, ...]:
    out = []
    for g in range(0, max_genus + 1):
        out.extend(D for D in enumerate_datasets(n, g) if D.g0 == 0 and bead_kind(D) == "type1")
    return tuple(out)


def random_necklace(rng: random.Random, orders=range(3, 13), max_bead_genus: int = 6,
                    max_beads: int = 5, max_handles: int = 3, attempts: int = 200) -> Necklace:
    """Draw a valid necklace of Type 1 beads realizing an action of genus >= 2."""
    for _ in range(attempts):
        n = rng.choice(list(orders))
        beads_pool = spherical_type1_beads(n, max_bead_genus)
        if not beads_pool:
            continue
        k = rng.randint(1, max_beads)
        beads = [rng.choice(beads_pool)]
        alive = [(1, i) for i in range(1, 4)]
        links = []
        ok = True
        for j in range(1, k):
            cur = beads[-1]
            free_here = [i for (b, i) in alive if b == j]
            options = []
            for i in free_here:
                p = cur.pairs[i - 1]
                for B in beads_pool:
                    for s, q in enumerate(B.pairs, 1):
                        if q.m == p.m and (p.c + q.c) % p.m == 0:
                            options.append((i, B, s))
            if options and rng.random() < 0.75:
                i, B, s = rng.choice(options)
                links.append(CompatSite(i, s))
                alive.remove((j, i))
                alive.extend((j + 1, t) for t in range(1, 4) if t != s)
            else:
                B = rng.choice(beads_pool)
                links.append(CompatSite(0, 0))
                alive.extend((j + 1, t) for t in range(1, 4))
            beads.append(B)
        if not ok:
            continue
        chain = LinearChain(tuple(beads), tuple(links))
        try:
            D_T, _ = _compose_chain(chain)
        except SurfaceCyclicError:
            continue
        # pick disjoint compatible self pairs while at least four pairs remain
        pool = list(range(1, len(D_T.pairs) + 1))
        rng.shuffle(pool)
        self_pairs = []
        remaining = len(D_T.pairs)
        want = rng.randint(0, max(0, (remaining - 2) // 2))
        used = set()
        for x in pool:
            if len(self_pairs) >= want or remaining < 4:
                break
            if x in used:
                continue
            a = D_T.pairs[x - 1]
            partners = [y for y in pool if y != x and y not in used and D_T.pairs[y - 1].m == a.m
                        and (a.c + D_T.pairs[y - 1].c) % a.m == 0]
            if partners:
                y = partners[0]
                used.update((x, y))
                self_pairs.append((min(x, y), max(x, y)))
                remaining -= 2
        m = len(self_pairs)
        g_add = rng.randint(0, max_handles)
        g_sub = rng.randint(0, g_add + m) if g_add == 0 else 0
        N = Necklace(chain, tuple(self_pairs), g_add, g_sub)
        try:
            D = realize(N).dataset
        except (SurfaceCyclicError, InvalidDataSet):
            continue
        if D.genus >= 2:
            return N
    raise NecklaceError("could not draw a random necklace")
