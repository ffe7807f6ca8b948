"""Fat graphs as rotation systems, their automorphisms and induced actions.

A fat graph on half-edges ``0..H-1`` is a pair of permutations: ``sigma``
(cyclic order at each vertex) and the fixed-point-free involution ``alpha``
(pairing half-edges into edges). Boundary walks are the cycles of
``phi = sigma . alpha`` (apply ``alpha`` first).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from surface_cyclic.errors import SurfaceCyclicError
from surface_cyclic.words import parse_word


class InconsistentRotation(SurfaceCyclicError):
    code = "inconsistent_rotation"


class DanglingHalfEdge(SurfaceCyclicError):
    code = "dangling_half_edge"


class DisconnectedGraph(SurfaceCyclicError):
    code = "disconnected_graph"


class NonIntegralQuotient(SurfaceCyclicError):
    code = "non_integral_quotient"


class NotFourRegular(SurfaceCyclicError):
    code = "not_four_regular"


def cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


def _compose(p, q):
    """``p . q``: apply ``q`` first."""
    return tuple(p[q[i]] for i in range(len(q)))


@dataclass(frozen=True)
class FatGraph:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    edge_labels: tuple[str, ...] | None = None  # indexed by edge number

    def __post_init__(self):
        H = len(self.sigma)
        if len(self.alpha) != H or sorted(self.sigma) != list(range(H)) or sorted(self.alpha) != list(range(H)):
            raise InconsistentRotation("sigma and alpha must be permutations of the same half-edges")
        if any(self.alpha[h] == h or self.alpha[self.alpha[h]] != h for h in range(H)):
            raise DanglingHalfEdge("alpha must pair every half-edge with a different one")

    @classmethod
    def build(cls, vertices: Sequence[Sequence[int]], edges: Sequence[Sequence[int]],
              labels: Sequence[str] | None = None) -> "FatGraph":
        """Build from per-vertex rotations and half-edge pairs (arbitrary integer ids)."""
        in_vertices = [h for rot in vertices for h in rot]
        in_edges = [h for e in edges for h in e]
        if any(len(e) != 2 for e in edges):
            raise DanglingHalfEdge("every edge needs exactly two half-edges")
        if len(set(in_vertices)) != len(in_vertices):
            raise InconsistentRotation("a half-edge appears twice in the rotations")
        if len(set(in_edges)) != len(in_edges):
            raise InconsistentRotation("a half-edge belongs to two edges")
        missing = set(in_vertices) ^ set(in_edges)
        if missing:
            raise DanglingHalfEdge(f"half-edges not both at a vertex and on an edge: {sorted(missing)}")
        index = {h: i for i, h in enumerate(sorted(in_vertices))}
        H = len(index)
        sigma, alpha = [0] * H, [0] * H
        for rot in vertices:
            for a, b in zip(rot, list(rot[1:]) + list(rot[:1])):
                sigma[index[a]] = index[b]
        for a, b in edges:
            alpha[index[a]], alpha[index[b]] = index[b], index[a]
        if labels is not None and len(labels) != len(edges):
            raise InconsistentRotation("one label per edge")
        G = cls(tuple(sigma), tuple(alpha))
        if labels is not None:
            by_half = {index[e[0]]: lab for e, lab in zip(edges, labels)}
            G = cls(G.sigma, G.alpha, tuple(by_half[min(e)] if min(e) in by_half else by_half[max(e)]
                                            for e in G.edges))
        return G

    @classmethod
    def from_boundary_words(cls, words) -> "FatGraph":
        """The fat graph whose boundary walks read the given words.

        Each edge label must occur exactly twice over all words, once with each
        exponent. Half-edge ``2i`` is the tail of edge ``i`` and ``2i+1`` its head;
        the traversal ``x`` is identified with the half-edge it starts from.
        """
        if isinstance(words, str):
            words = [words]
        parsed = [parse_word(w) for w in words]
        labels: list[str] = []
        for letters in parsed:
            for label, _ in letters:
                if label not in labels:
                    labels.append(label)
        idx = {label: i for i, label in enumerate(labels)}
        H = 2 * len(labels)
        phi = [-1] * H
        seen = set()
        for letters in parsed:
            darts = []
            for label, e in letters:
                d = 2 * idx[label] + (0 if e == 1 else 1)
                if d in seen:
                    raise InconsistentRotation(f"traversal {label}^{e} occurs twice")
                seen.add(d)
                darts.append(d)
            for a, b in zip(darts, darts[1:] + darts[:1]):
                phi[a] = b
        if len(seen) != H:
            raise DanglingHalfEdge("every edge must be traversed once in each direction")
        alpha = tuple(h ^ 1 for h in range(H))
        sigma = _compose(phi, alpha)
        return cls(sigma, alpha, tuple(labels))

    @classmethod
    def from_json(cls, data) -> "FatGraph":
        try:
            return cls.build(data["vertices"], data["edges"], data.get("labels"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InconsistentRotation(f"malformed fat graph JSON: {exc}") from exc

    def to_json(self):
        out = {"vertices": [list(v) for v in self.vertices], "edges": [list(e) for e in self.edges]}
        if self.edge_labels is not None:
            out["labels"] = list(self.edge_labels)
        return out

    @property
    def half_edges(self) -> int:
        return len(self.sigma)

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        return cycles(self.sigma)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(h, self.alpha[h]), max(h, self.alpha[h])) for h in range(self.half_edges)})

    @property
    def phi(self) -> tuple[int, ...]:
        return _compose(self.sigma, self.alpha)

    @property
    def faces(self) -> list[tuple[int, ...]]:
        return cycles(self.phi)

    @property
    def degrees(self) -> list[int]:
        return [len(v) for v in self.vertices]

    def is_connected(self) -> bool:
        H = self.half_edges
        if H == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            h = queue.popleft()
            for x in (self.sigma[h], self.alpha[h]):
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        return len(seen) == H

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    @property
    def genus(self) -> int:
        if not self.is_connected():
            raise DisconnectedGraph("genus is defined for connected fat graphs only")
        return (2 - self.euler_characteristic()) // 2

    def summary(self):
        return {"V": len(self.vertices), "E": len(self.edges), "b": len(self.faces),
                "genus": self.genus, "degrees": sorted(self.degrees)}

    def letter(self, h: int) -> str:
        e = min(h, self.alpha[h])
        num = self.edges.index((e, self.alpha[e] if self.alpha[e] > e else e))
        label = self.edge_labels[num] if self.edge_labels else f"e{num + 1}"
        return label if h == e else f"{label}^-1"


def boundary_walks(G: FatGraph) -> list[str]:
    """Boundary words, each rotated to start at its smallest half-edge, sorted."""
    if not G.is_connected():
        raise DisconnectedGraph("boundary walks requested for a disconnected graph")
    walks = []
    for face in G.faces:
        start = face.index(min(face))
        walks.append(tuple(face[start:] + face[:start]))
    return [" ".join(G.letter(h) for h in w) for w in sorted(walks)]


@dataclass(frozen=True)
class FatGraphAut:
    perm: tuple[int, ...]

    @property
    def order(self) -> int:
        k, p = 1, self.perm
        identity = tuple(range(len(p)))
        while p != identity:
            p = _compose(self.perm, p)
            k += 1
        return k

    def __mul__(self, other: "FatGraphAut") -> "FatGraphAut":
        return FatGraphAut(_compose(self.perm, other.perm))

    def power(self, k: int) -> "FatGraphAut":
        out = tuple(range(len(self.perm)))
        for _ in range(k % self.order):
            out = _compose(self.perm, out)
        return FatGraphAut(out)

    def is_automorphism_of(self, G: FatGraph) -> bool:
        return (_compose(self.perm, G.sigma) == _compose(G.sigma, self.perm)
                and _compose(self.perm, G.alpha) == _compose(G.alpha, self.perm))


def _extend(G: FatGraph, target: int) -> tuple[int, ...] | None:
    """The unique automorphism sending half-edge 0 to ``target``, if any."""
    H = G.half_edges
    perm = [-1] * H
    perm[0] = target
    queue = deque([0])
    while queue:
        h = queue.popleft()
        for gen in (G.sigma, G.alpha):
            x, y = gen[h], gen[perm[h]]
            if perm[x] == -1:
                perm[x] = y
                queue.append(x)
            elif perm[x] != y:
                return None
    if -1 in perm or len(set(perm)) != H:
        return None
    return tuple(perm)


def automorphisms(G: FatGraph) -> list[FatGraphAut]:
    """All orientation-preserving automorphisms, identity first.

    For a connected graph an automorphism is fixed by the image of one half-edge,
    so each candidate image is propagated along ``sigma`` and ``alpha``.
    """
    if not G.is_connected():
        raise DisconnectedGraph("automorphisms are computed for connected graphs")
    found = []
    for t in range(G.half_edges):
        p = _extend(G, t)
        if p is not None:
            found.append(FatGraphAut(p))
    group = set(a.perm for a in found)
    for a, b in itertools.product(found, repeat=2):
        if (a * b).perm not in group:
            raise SurfaceCyclicError("automorphism set is not closed under composition")
    return sorted(found, key=lambda a: (a.order, a.perm))


def is_cyclic_group(auts: Sequence[FatGraphAut]) -> bool:
    return any(a.order == len(auts) for a in auts)


def generator_of_order(auts: Sequence[FatGraphAut], n: int) -> FatGraphAut:
    for a in auts:
        if a.order == n:
            return a
    raise SurfaceCyclicError(f"no automorphism of order {n}")


@dataclass(frozen=True)
class InducedSignature:
    order: int
    quotient_genus: int
    cone_orders: tuple[int, ...]
    sources: tuple[str, ...]  # cell type carrying each cone point

    def notation(self) -> str:
        cones = ",".join(str(m) for m in self.cone_orders)
        return f"({self.quotient_genus}; {cones})"

    def to_json(self):
        return {"order": self.order, "g0": self.quotient_genus, "cone_orders": list(self.cone_orders),
                "sources": list(self.sources)}


def _orbits(cells: list[tuple[int, ...]], h: FatGraphAut) -> list[list[int]]:
    """Orbits of ``<h>`` on cells given as half-edge tuples."""
    owner = {}
    for i, cell in enumerate(cells):
        for x in cell:
            owner[x] = i
    seen, out = set(), []
    for i in range(len(cells)):
        if i in seen:
            continue
        orbit, j = [], i
        while j not in seen:
            seen.add(j)
            orbit.append(j)
            j = owner[h.perm[cells[j][0]]]
        out.append(orbit)
    return out


def induced_signature(G: FatGraph, h: FatGraphAut) -> InducedSignature:
    """Quotient orbifold signature of the action of ``h`` on the filled surface.

    Cone points sit at cells with nontrivial stabilizer: vertices, edge
    midpoints (an edge can only be flipped, giving order 2) and face centers.
    """
    if not G.is_connected():
        raise DisconnectedGraph("induced signature needs a connected graph")
    if not h.is_automorphism_of(G):
        raise NonIntegralQuotient("permutation is not an automorphism of the graph")
    n = h.order
    if n < 2:
        raise NonIntegralQuotient("the identity induces no action")
    cones, sources = [], []
    counts = {}
    for kind, cells in (("vertex", G.vertices), ("edge", G.edges), ("face", G.faces)):
        orbits = _orbits(list(cells), h)
        counts[kind] = len(orbits)
        for orbit in orbits:
            stab = n // len(orbit)
            if stab > 1:
                cones.append(stab)
                sources.append(kind)
    chi = G.euler_characteristic()
    # orbifold Euler characteristic identity
    rhs = Fraction(chi, n) + sum(1 - Fraction(1, m) for m in cones)
    g0 = (2 - rhs) / 2
    # direct cell count of the quotient; a flipped edge folds to a half-edge
    flipped = sum(1 for m, s in zip(cones, sources) if s == "edge")
    chi_quotient = counts["vertex"] + flipped - counts["edge"] + counts["face"]
    if g0.denominator != 1 or g0 < 0 or (2 - chi_quotient) != 2 * g0:
        raise NonIntegralQuotient(f"quotient genus {g0} is not a non-negative integer matching the cell count")
    order = sorted(range(len(cones)), key=lambda i: (cones[i], sources[i]))
    return InducedSignature(n, int(g0), tuple(cones[i] for i in order), tuple(sources[i] for i in order))


# --- orbit feasibility ---------------------------------------------------

@dataclass(frozen=True)
class FeasibilityCertificate:
    """Result of distributing cone orbits over cells of a filling graph."""

    g: int
    n: int
    b: int
    cells: dict
    cone_orders: tuple[int, ...]
    feasible: bool
    lines: tuple[str, ...]

    def to_json(self):
        return {"g": self.g, "n": self.n, "b": self.b, "cells": self.cells,
                "cone_orders": list(self.cone_orders), "feasible": self.feasible, "lines": list(self.lines)}


def _orbit_sum(n: int, orders) -> str:
    return " + ".join(f"{n}/{m}" for m in orders)


def orbit_feasibility(g: int, n: int, cone_orders: Sequence[int], b: int = 1, degree: int = 4) -> FeasibilityCertificate:
    """Can an order-``n`` action with these cone orders act on a filling graph?

    The graph is ``degree``-regular of genus ``g`` with ``b`` faces. Every cone
    point must be an orbit of vertices, edge midpoints or face centers, of size
    ``n/m``; all other cells fall into free orbits of size ``n``. Each way of
    placing the cone points is tested and the failing arithmetic recorded.
    """
    V = (2 * (2 * g - 2 + b)) // (degree - 2) if degree > 2 else 0
    E = degree * V // 2
    cells = {"vertex": V, "edge": E, "face": b}
    lines = [f"cells: |V| = {V}, |E| = {E}, faces = {b}; order {n}"]
    feasible = False
    kinds = ("vertex", "edge", "face")
    seen = set()
    for placement in itertools.product(kinds, repeat=len(cone_orders)):
        key = tuple(sorted(zip(placement, cone_orders)))
        if key in seen:
            continue
        seen.add(key)
        ok = True
        parts = []
        for kind in kinds:
            orders = sorted(m for k, m in key if k == kind)
            total = sum(n // m for m in orders)
            rest = cells[kind] - total
            reasons = []
            if kind == "edge" and any(m != 2 for m in orders):
                reasons.append("edge stabilizers have order 2")
            if kind == "vertex" and any(degree % m for m in orders):
                reasons.append(f"vertex stabilizers divide {degree}")
            if rest < 0 or rest % n:
                reasons.append(f"remaining {rest} is not a multiple of {n}")
            if orders:
                shown = f"{_orbit_sum(n, orders)} = {total}"
            else:
                shown = "0"
            relation = "=" if total == cells[kind] else "≠"
            parts.append(f"{kind}: {shown} {relation} {cells[kind]}" + (f" ({'; '.join(reasons)})" if reasons else ""))
            ok = ok and not reasons
        lines.append(("feasible  " if ok else "infeasible") + " | " + " | ".join(parts))
        feasible = feasible or ok
    return FeasibilityCertificate(g, n, b, cells, tuple(cone_orders), feasible, tuple(lines))


def filling_irreducibility_check(G: FatGraph, h: FatGraphAut):
    """Irreducibility of the action of ``h`` on the surface filled by ``G``.

    Returns ``(irreducible, report)``; irreducible means the quotient is a
    sphere with exactly three cone points.
    """
    if any(d != 4 for d in G.degrees):
        raise NotFourRegular(f"vertex degrees {sorted(G.degrees)}; a filling graph is 4-regular")
    sig = induced_signature(G, h)
    g, n, b, V = G.genus, sig.order, len(G.faces), len(G.vertices)
    irreducible = sig.quotient_genus == 0 and len(sig.cone_orders) == 3
    vertex_orbits = [len(o) for o in _orbits(G.vertices, h)]
    report = {
        "genus": g,
        "b": b,
        "order": n,
        "signature": sig.to_json(),
        "irreducible": irreducible,
        "predicted_irreducible": (g, n) == (1, 4),
        "divides_half_edges": (4 * (2 * g - 2 + b)) % n == 0,
        "half_edges": 4 * (2 * g - 2 + b),
        "irreducible_order_bounds": [2 * g + 1, 4 * g + 2],
        "vertex_orbit_sizes": vertex_orbits,
        "vertex_count": V,
        "vertex_orbits_cover": sum(vertex_orbits) == V,
        "orbit_feasibility": orbit_feasibility(g, n, sig.cone_orders, b).feasible,
    }
    report["agrees_with_prediction"] = report["predicted_irreducible"] == irreducible
    return irreducible, report
