"""Data sets encoding conjugacy classes of cyclic actions on closed surfaces.

A data set ``(n, g0, r; (c_1, n_1), ..., (c_l, n_l))`` records the order
``n`` of the action, the genus ``g0`` of the quotient orbifold, the
free-rotation parameter ``r`` and one cone pair ``(c_i, n_i)`` per cone point.
Everything here is exact integer/rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

from surface_cyclic.errors import SurfaceCyclicError


class InvalidDataSet(SurfaceCyclicError):
    code = "invalid_dataset"

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)

    def to_json(self):
        out = super().to_json()
        out["violations"] = list(self.violations)
        return out


class OutOfDomain(SurfaceCyclicError):
    code = "out_of_domain"


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def units(m: int) -> list[int]:
    """Residues in ``[0, m)`` coprime to ``m`` (``[0]`` when ``m == 1``)."""
    return [c for c in range(m) if math.gcd(c, m) == 1]


class ConePair(NamedTuple):
    c: int
    m: int

    def sort_key(self):
        return (self.m, self.c)


def _as_pairs(pairs) -> tuple[ConePair, ...]:
    return tuple(sorted((ConePair(int(c), int(m)) for c, m in pairs), key=ConePair.sort_key))


def riemann_hurwitz_genus(n: int, g0: int, periods: Sequence[int]) -> Fraction:
    """Solve ``(2 - 2g)/n = 2 - 2 g0 + sum(1/m - 1)`` for ``g`` exactly."""
    rhs = Fraction(2 - 2 * g0) + sum((Fraction(1, m) - 1 for m in periods), Fraction(0))
    return 1 - n * rhs / 2


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[str, ...] = ()
    genus: Fraction | None = None

    def to_json(self):
        return {"valid": self.valid, "violations": list(self.violations)}


def validate(candidate) -> ValidationReport:
    """Check a raw ``(n, g0, rot, pairs)`` tuple against the data-set conditions.

    Every violated condition is listed, using the labels ``"i"`` .. ``"v"`` and
    ``"genus"``. A :class:`DataSet` may also be passed.
    """
    if isinstance(candidate, DataSet):
        n, g0, rot, pairs = candidate.n, candidate.g0, candidate.rot, candidate.pairs
    else:
        n, g0, rot, pairs = candidate
    pairs = [(int(c), int(m)) for c, m in pairs]
    violations = []
    if n < 1 or g0 < 0:
        return ValidationReport(False, ("n",) if n < 1 else ("genus",))

    # (i); the identity action (n = 1) has neither rotation nor cone points.
    ok_i = 0 <= rot < n
    if ok_i and n > 1:
        ok_i = (rot > 0) == (len(pairs) == 0)
        if rot > 0:
            ok_i = ok_i and math.gcd(rot, n) == 1
    if not ok_i:
        violations.append("i")
    # (ii); a period of 1 is not a cone point.
    if any(m < 2 or n % m for _, m in pairs):
        violations.append("ii")
    if any(not 0 <= c < m or math.gcd(c, m) != 1 for c, m in pairs if m >= 1):
        violations.append("iii")
    periods = [m for _, m in pairs if m >= 1]
    full = lcm(periods)
    ok_iv = all(lcm(periods[:i] + periods[i + 1:]) == full for i in range(len(periods)))
    if g0 == 0 and full != n:
        ok_iv = False
    if not ok_iv:
        violations.append("iv")
    divisible = all(m >= 1 and n % m == 0 for _, m in pairs)
    if divisible and sum((n // m) * c for c, m in pairs) % n:
        violations.append("v")
    g = riemann_hurwitz_genus(n, g0, [m for _, m in pairs if m >= 1])
    if g.denominator != 1 or g < 0:
        violations.append("genus")
    return ValidationReport(not violations, tuple(violations), g)


@dataclass(frozen=True)
class DataSet:
    """A validated data set with its cone pairs in canonical order.

    Instances are immutable; two data sets describe conjugate actions exactly
    when they compare equal.
    """

    n: int
    g0: int
    pairs: tuple[ConePair, ...] = ()
    rot: int = 0
    genus: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "pairs", _as_pairs(self.pairs))
        report = validate((self.n, self.g0, self.rot, self.pairs))
        if not report.valid:
            raise InvalidDataSet(
                f"{self.notation()} violates condition(s) {', '.join(report.violations)}",
                report.violations,
            )
        object.__setattr__(self, "genus", int(report.genus))

    @property
    def periods(self) -> tuple[int, ...]:
        return tuple(p.m for p in self.pairs)

    @property
    def cone_count(self) -> int:
        return len(self.pairs)

    @property
    def is_spherical(self) -> bool:
        return self.g0 == 0

    @property
    def is_free(self) -> bool:
        return self.rot != 0

    def sort_key(self):
        return (self.g0, self.rot, len(self.pairs), tuple(p.sort_key() for p in self.pairs))

    def notation(self) -> str:
        body = ",".join(f"({c},{m})" for c, m in self.pairs)
        head = f"{self.n},{self.g0}" + (f",{self.rot}" if self.rot else "")
        return f"({head};{body})"

    def __str__(self):
        return self.notation()

    def to_json(self):
        return {"n": self.n, "g0": self.g0, "rot": self.rot, "pairs": [[c, m] for c, m in self.pairs]}

    @classmethod
    def from_json(cls, data) -> "DataSet":
        try:
            return cls(int(data["n"]), int(data["g0"]), tuple(tuple(p) for p in data.get("pairs", [])),
                       int(data.get("rot", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidDataSet(f"malformed data set JSON: {exc}", ("format",)) from exc


def genus(D: DataSet) -> int:
    return D.genus


def canonicalize(D) -> DataSet:
    """Return the canonical form of a data set or raw ``(n, g0, rot, pairs)`` tuple."""
    if isinstance(D, DataSet):
        return D
    n, g0, rot, pairs = D
    return DataSet(n, g0, tuple(pairs), rot)


@dataclass(frozen=True)
class ActionClass:
    kind: str  # "rotational" | "type1" | "type2"
    spherical: bool
    rotational_form: str | None = None  # "free" | "paired"
    k: int | None = None
    s: int | None = None

    def to_json(self):
        out = {"kind": self.kind, "spherical": self.spherical}
        if self.kind == "rotational":
            out.update(form=self.rotational_form, k=self.k, s=self.s)
        return out


def _paired_rotation(D: DataSet):
    """Return ``(k, s)`` when the cone pairs are k copies of {(s, n), (n-s, n)}."""
    n, pairs = D.n, D.pairs
    if not pairs or len(pairs) % 2 or any(m != n for _, m in pairs):
        return None
    k = len(pairs) // 2
    # More than one pair of cone points only occurs for involutions.
    if n > 2 and k != 1:
        return None
    s = pairs[0].c
    expected = sorted([s, n - s] * k)
    if sorted(c for c, _ in pairs) != expected:
        return None
    return k, s


def classify(D: DataSet) -> ActionClass:
    sph = D.is_spherical
    if D.rot:
        return ActionClass("rotational", sph, "free", 0, D.rot)
    paired = _paired_rotation(D)
    if paired:
        return ActionClass("rotational", sph, "paired", *paired)
    if len(D.pairs) == 3 and D.n in D.periods:
        return ActionClass("type1", sph)
    return ActionClass("type2", sph)


def is_spherical_type1(D: DataSet) -> bool:
    return D.g0 == 0 and classify(D).kind == "type1"


def is_irreducible(D: DataSet) -> bool:
    """Gilman's criterion: quotient sphere with exactly three cone points."""
    return D.g0 == 0 and len(D.pairs) == 3


def fix_dimension_harvey(D: DataSet) -> int:
    """Dimension of the fixed locus in Teichmuller space, ``6 g0 + 2c - 6``."""
    if D.genus < 2:
        raise OutOfDomain(f"{D} acts on a surface of genus {D.genus} < 2")
    dim = 6 * D.g0 + 2 * len(D.pairs) - 6
    if dim < 0:
        raise OutOfDomain(f"fixed-locus dimension formula is negative for {D}")
    return dim


@dataclass(frozen=True)
class OrbitDatum:
    orbit_size: int
    cone_order: int
    rotation_numerator: int


def orbit_structure(D: DataSet) -> list[OrbitDatum]:
    """Orbit size and local rotation ``2*pi*c^-1/m`` above each cone point."""
    return [OrbitDatum(D.n // m, m, pow(c, -1, m) if m > 1 else 0) for c, m in D.pairs]


def reduction_orbit_counts(D: DataSet) -> tuple[int, int]:
    """Orbits of curves and of complementary pieces for a maximal reduction system."""
    if is_irreducible(D):
        raise OutOfDomain(f"{D} is irreducible and has no reduction system")
    if D.genus < 2:
        raise OutOfDomain(f"{D} acts on a surface of genus {D.genus} < 2")
    c = len(D.pairs)
    return 3 * D.g0 - 3 + c, 2 * D.g0 - 2 + c


# --- enumeration ---------------------------------------------------------

def _period_multisets(n: int, target: int, periods: list[int], start: int = 0):
    """Non-decreasing period tuples whose weights ``n - n/m`` sum to ``target``."""
    if target == 0:
        yield ()
        return
    for i in range(start, len(periods)):
        w = n - n // periods[i]
        if w > target:
            break
        for rest in _period_multisets(n, target - w, periods, i):
            yield (periods[i],) + rest


def _residue_choices(periods: tuple[int, ...]):
    groups = [(m, len(list(grp))) for m, grp in itertools.groupby(periods)]
    per_group = [list(itertools.combinations_with_replacement(units(m), k)) for m, k in groups]
    for combo in itertools.product(*per_group):
        pairs = []
        for (m, _), cs in zip(groups, combo):
            pairs.extend((c, m) for c in cs)
        yield tuple(pairs)


def _enumerate_g0(n: int, g: int, g0: int) -> list[DataSet]:
    target = n * (2 - 2 * g0) - (2 - 2 * g)
    if target < 0:
        return []
    found = []
    if target == 0:
        for r in units(n):
            if r and not validate((n, g0, r, ())).violations:
                found.append(DataSet(n, g0, (), r))
        return found
    # Weights are ordered by period, so the search can stop early.
    periods = [d for d in divisors(n) if d >= 2]
    for period_tuple in _period_multisets(n, target, periods):
        if g0 == 0 and lcm(period_tuple) != n:
            continue
        for pairs in _residue_choices(period_tuple):
            if sum((n // m) * c for c, m in pairs) % n:
                continue
            if not validate((n, g0, 0, pairs)).violations:
                found.append(DataSet(n, g0, pairs))
    return found


def max_quotient_genus(n: int, g: int) -> int:
    return (n - 1 + g) // n


def enumerate_datasets(n: int, g: int, jobs: int = 1) -> list[DataSet]:
    """All canonical data sets of degree ``n`` and genus ``g``, sorted.

    The search is split by quotient genus; with ``jobs > 1`` the pieces run in
    worker processes and are merged back into the same sorted order.
    """
    if n < 1 or g < 0:
        return []
    if n == 1:
        return [DataSet(1, g, ())]
    g0_values = range(max_quotient_genus(n, g) + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_enumerate_g0, itertools.repeat(n), itertools.repeat(g), g0_values))
    else:
        parts = [_enumerate_g0(n, g, g0) for g0 in g0_values]
    return sorted((D for part in parts for D in part), key=DataSet.sort_key)
