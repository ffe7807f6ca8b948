"""Composition moves between data sets.

Site indices are 1-based positions into the canonical pair order of each
operand. Residues are compared modulo the period at the site.
"""

from __future__ import annotations

from dataclasses import dataclass

from surface_cyclic.dataset import ConePair, DataSet
from surface_cyclic.errors import SurfaceCyclicError


class IncompatibleSites(SurfaceCyclicError):
    code = "incompatible_sites"


class OrderMismatch(SurfaceCyclicError):
    code = "order_mismatch"


class TooFewConePoints(SurfaceCyclicError):
    code = "too_few_cone_points"


class InsufficientOrbifoldGenus(SurfaceCyclicError):
    code = "insufficient_orbifold_genus"


@dataclass(frozen=True)
class CompatSite:
    """``(left, right)`` pair indices; ``(0, 0)`` means full compatibility."""

    left: int
    right: int

    def __post_init__(self):
        if (self.left, self.right) != (0, 0) and (self.left < 1 or self.right < 1):
            raise IncompatibleSites(f"site {self.left, self.right} must be (0, 0) or have both indices >= 1")

    @property
    def is_full(self) -> bool:
        return (self.left, self.right) == (0, 0)

    @classmethod
    def of(cls, site) -> "CompatSite":
        if isinstance(site, CompatSite):
            return site
        r, s = site
        return cls(int(r), int(s))


@dataclass(frozen=True)
class CompositionResult:
    result: DataSet
    amalgam: int
    curves_glued: int
    genus_trace: tuple[int, ...]  # operand genera followed by the result genus

    @property
    def genus(self) -> int:
        return self.result.genus


def _pick(D: DataSet, index: int, label: str) -> ConePair:
    if not 1 <= index <= len(D.pairs):
        raise IncompatibleSites(f"{label} index {index} out of range for {D} ({len(D.pairs)} pairs)")
    return D.pairs[index - 1]


def _without(pairs, *indices):
    drop = {i - 1 for i in indices}
    return tuple(p for i, p in enumerate(pairs) if i not in drop)


def _check_sites(a: ConePair, b: ConePair, where: str):
    if a.m != b.m:
        raise IncompatibleSites(f"{where}: periods differ ({a.m} vs {b.m})")
    if (a.c + b.c) % a.m:
        raise IncompatibleSites(f"{where}: residues {a.c} + {b.c} are not 0 mod {a.m}")


def _require_same_order(D1: DataSet, D2: DataSet):
    if D1.n != D2.n:
        raise OrderMismatch(f"cannot compose actions of order {D1.n} and {D2.n}")


def compose_pair(D1: DataSet, D2: DataSet, site) -> CompositionResult:
    """Glue ``D1`` and ``D2`` along compatible orbits of size ``n/m``."""
    site = CompatSite.of(site)
    if site.is_full:
        return compose_full(D1, D2)
    _require_same_order(D1, D2)
    a = _pick(D1, site.left, "left")
    b = _pick(D2, site.right, "right")
    _check_sites(a, b, f"site ({site.left},{site.right})")
    result = DataSet(D1.n, D1.g0 + D2.g0, _without(D1.pairs, site.left) + _without(D2.pairs, site.right))
    glued = D1.n // a.m
    if result.genus != D1.genus + D2.genus + glued - 1:
        raise SurfaceCyclicError(f"genus bookkeeping failed composing {D1} and {D2}")
    return CompositionResult(result, glued, glued, (D1.genus, D2.genus, result.genus))


def compose_full(D1: DataSet, D2: DataSet) -> CompositionResult:
    """Glue ``D1`` and ``D2`` along free orbits of size ``n``."""
    _require_same_order(D1, D2)
    rot = 0
    if not D1.pairs and not D2.pairs:
        if D1.rot != D2.rot:
            raise IncompatibleSites(f"free rotations {D1.rot} and {D2.rot} do not match")
        rot = D1.rot
    result = DataSet(D1.n, D1.g0 + D2.g0, D1.pairs + D2.pairs, rot)
    if result.genus != D1.genus + D2.genus + D1.n - 1:
        raise SurfaceCyclicError(f"genus bookkeeping failed composing {D1} and {D2}")
    return CompositionResult(result, D1.n - 1, D1.n, (D1.genus, D2.genus, result.genus))


def compose_self(D: DataSet, r: int, s: int) -> CompositionResult:
    """Glue two compatible orbits of the same action, raising ``g0`` by one.

    Normally needs at least four cone points. A sphere rotation
    ``(n,0;(s,n),(n-s,n))`` may also be closed up into a free rotation of the
    torus; its rotation number is the residue at site ``r``.
    """
    if r == s:
        raise IncompatibleSites(f"self-compatibility needs two distinct sites, got ({r},{s})")
    a = _pick(D, r, "first")
    b = _pick(D, s, "second")
    ell = len(D.pairs)
    closes_rotation = ell == 2 and a.m == D.n
    if ell < 4 and not closes_rotation:
        raise TooFewConePoints(f"{D} has {ell} cone points; self-compatibility needs at least 4")
    _check_sites(a, b, f"self site ({r},{s})")
    rot = a.c if closes_rotation else 0
    result = DataSet(D.n, D.g0 + 1, _without(D.pairs, r, s), rot)
    glued = D.n // a.m
    if result.genus != D.genus + glued:
        raise SurfaceCyclicError(f"genus bookkeeping failed for self-compatibility of {D}")
    return CompositionResult(result, glued, glued, (D.genus, result.genus))


def toral_add(D: DataSet, g_add: int) -> DataSet:
    """Attach ``n`` cyclically permuted copies of a genus ``g_add`` one-holed surface."""
    if g_add < 0:
        raise ValueError("g_add must be non-negative")
    if g_add == 0:
        return D
    return DataSet(D.n, D.g0 + g_add, D.pairs, D.rot)


def toral_subtract(D: DataSet, g_sub: int) -> DataSet:
    if g_sub < 0:
        raise ValueError("g_sub must be non-negative")
    if g_sub == 0:
        return D
    if D.g0 < g_sub:
        raise InsufficientOrbifoldGenus(f"cannot remove {g_sub} handles from {D} (g0 = {D.g0})")
    return DataSet(D.n, D.g0 - g_sub, D.pairs, D.rot)
