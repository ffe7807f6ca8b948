"""Hyperbolic polygons realizing spherical Type 1 actions.

A spherical Type 1 action ``(n,0;(c1,n1),(c2,n2),(c3,n))`` is the rotation by
``2*pi/n`` of a hyperbolic polygon with ``2n`` sides (``n`` sides when one of
``n1, n2`` is 2), whose sides are glued in pairs to give the surface.

Sides and vertices are numbered ``1..k``; side ``i`` runs from vertex ``i-1``
to vertex ``i`` (vertex 0 is vertex ``k``).
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass
from typing import NamedTuple

from surface_cyclic.dataset import ConePair, DataSet, classify
from surface_cyclic.errors import SurfaceCyclicError
from surface_cyclic.words import MalformedWord, parse_word

TOL = 1e-9


class NotSphericalType1(SurfaceCyclicError):
    code = "not_spherical_type1"


class NonHyperbolic(SurfaceCyclicError):
    code = "non_hyperbolic"


class NoValidInterpretation(SurfaceCyclicError):
    code = "no_valid_interpretation"


class NonOrientableOrInvalid(SurfaceCyclicError):
    code = "non_orientable_or_invalid"


def split_cones(D: DataSet) -> tuple[ConePair, ConePair, ConePair]:
    """Return ``(p1, p2, p3)``: ``p3`` has period ``n`` and ``p1.m <= p2.m``.

    ``p3`` is the last period-``n`` pair in canonical order.
    """
    if D.g0 != 0 or classify(D).kind != "type1":
        raise NotSphericalType1(f"{D} is not a spherical Type 1 action")
    pairs = list(D.pairs)
    i3 = max(i for i, p in enumerate(pairs) if p.m == D.n)
    p3 = pairs.pop(i3)
    p1, p2 = pairs
    return p1, p2, p3


@dataclass(frozen=True)
class PolygonSpec:
    sides: int
    rotation_steps: int
    corner_angles: tuple[float, ...]  # at vertices 1..sides
    theta: float
    n: int
    genus: int
    cone_orders: tuple[int, int]  # (n1, n2)

    @property
    def angle_sum(self) -> float:
        return math.fsum(self.corner_angles)

    def to_json(self):
        return {"sides": self.sides, "rotation_steps": self.rotation_steps, "theta": self.theta,
                "angles": list(self.corner_angles), "n": self.n, "genus": self.genus}


def polygon_spec(D: DataSet) -> PolygonSpec:
    p1, p2, _ = split_cones(D)
    n, n1, n2 = D.n, p1.m, p2.m
    if D.genus < 2:
        raise NonHyperbolic(f"{D} acts on a surface of genus {D.genus}; no hyperbolic polygon")
    if n1 != 2 and n2 != 2:
        sides, step = 2 * n, 2
        # vertex 1 carries the n1 corner, vertex 2 the n2 corner, and so on
        angles = tuple(2 * math.pi / (n1 if i % 2 else n2) for i in range(1, sides + 1))
    else:
        sides, step = n, 1
        other = n2 if n1 == 2 else n1
        angles = (2 * math.pi / other,) * sides
    spec = PolygonSpec(sides, step, angles, 2 * math.pi / n, n, D.genus, (n1, n2))
    if spec.angle_sum >= (sides - 2) * math.pi - TOL:
        raise NonHyperbolic(f"angle sum {spec.angle_sum:.6f} is not below {(sides - 2)} pi")
    return spec


@dataclass(frozen=True)
class PolygonMetrics:
    side_length: float
    radii: tuple[float, ...]  # distinct |OP_i|, vertex 1 first
    area: float
    apex_sum: float
    side_residual: float  # side length rebuilt from the radii, minus side_length

    def to_json(self):
        return {"side_length": self.side_length, "radii": list(self.radii), "area": self.area,
                "apex_sum": self.apex_sum, "side_residual": self.side_residual}


def solve_metrics(spec: PolygonSpec) -> PolygonMetrics:
    """Solve the polygon by cutting it into ``sides`` triangles at the center.

    Each triangle has apex angle ``2*pi/sides`` and base angles equal to half
    the corner angles at its two vertices.
    """
    if spec.angle_sum >= (spec.sides - 2) * math.pi - TOL:
        raise NonHyperbolic("polygon angle sum too large")
    C = 2 * math.pi / spec.sides
    A = spec.corner_angles[0] / 2  # at vertex 1
    B = spec.corner_angles[1 % spec.sides] / 2  # at vertex 2
    cosh_side = (math.cos(A) * math.cos(B) + math.cos(C)) / (math.sin(A) * math.sin(B))
    # |OP_1| is opposite the angle at P_2, and vice versa
    cosh_r1 = (math.cos(A) * math.cos(C) + math.cos(B)) / (math.sin(A) * math.sin(C))
    cosh_r2 = (math.cos(B) * math.cos(C) + math.cos(A)) / (math.sin(B) * math.sin(C))
    side, r1, r2 = math.acosh(cosh_side), math.acosh(cosh_r1), math.acosh(cosh_r2)
    rebuilt = math.acosh(math.cosh(r1) * math.cosh(r2) - math.sinh(r1) * math.sinh(r2) * math.cos(C))
    # every triangle is congruent to the first, so area and apex sum scale by sides
    area = spec.sides * (math.pi - A - B - C)
    radii = (r1,) if abs(r1 - r2) < TOL else (r1, r2)
    return PolygonMetrics(side, radii, area, spec.sides * C, rebuilt - side)


def gauss_bonnet_area(spec: PolygonSpec) -> float:
    return (spec.sides - 2) * math.pi - spec.angle_sum


# --- side pairings -------------------------------------------------------

@dataclass(frozen=True)
class PairingWord:
    """Side pairing: ``partner[i-1]`` is glued to side ``i``.

    ``reversed_[i-1]`` is True when the gluing reverses the boundary direction,
    which is what an orientable quotient needs.
    """

    partner: tuple[int, ...]
    reversed_: tuple[bool, ...]
    interpretation: str | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        k = len(self.partner)
        for i, j in enumerate(self.partner, 1):
            if not 1 <= j <= k or j == i or self.partner[j - 1] != i:
                raise NonOrientableOrInvalid(f"side pairing is not a fixed-point-free involution at side {i}")
            if self.reversed_[i - 1] != self.reversed_[j - 1]:
                raise NonOrientableOrInvalid(f"sides {i} and {j} disagree on gluing direction")

    @property
    def sides(self) -> int:
        return len(self.partner)

    def is_equivariant(self, step: int) -> bool:
        k = self.sides
        return all((self.partner[(i - 1 + step) % k] - 1) % k == (j - 1 + step) % k
                   for i, j in enumerate(self.partner, 1))

    def side_labels(self) -> tuple[str, ...]:
        if self.labels is not None:
            return self.labels
        names, out = {}, []
        for i, j in enumerate(self.partner, 1):
            key = min(i, j)
            if key not in names:
                names[key] = _letter(len(names))
            out.append(names[key])
        return tuple(out)

    def word(self) -> str:
        labels, seen, out = self.side_labels(), set(), []
        for label in labels:
            out.append(label if label not in seen else f"{label}^-1")
            seen.add(label)
        return " ".join(out)

    def to_json(self):
        return {"word": self.word(), "partner": list(self.partner),
                "interpretation": self.interpretation}


def _letter(i: int) -> str:
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def pairing_from_word(word: str) -> PairingWord:
    """Build a pairing from a word in which every letter occurs exactly twice."""
    letters = parse_word(word)
    where: dict[str, list[int]] = {}
    for i, (label, _) in enumerate(letters, 1):
        where.setdefault(label, []).append(i)
    partner = [0] * len(letters)
    rev = [False] * len(letters)
    for label, idx in where.items():
        if len(idx) != 2:
            raise MalformedWord(f"letter {label} occurs {len(idx)} times")
        i, j = idx
        partner[i - 1], partner[j - 1] = j, i
        flip = letters[i - 1][1] != letters[j - 1][1]
        rev[i - 1] = rev[j - 1] = flip
    return PairingWord(tuple(partner), tuple(rev), labels=tuple(label for label, _ in letters))


class QuotientReport(NamedTuple):
    genus: int
    vertex_classes: tuple[int, ...]  # class sizes, sorted
    classes: tuple[tuple[int, ...], ...]  # vertex numbers per class


def quotient_check(word: PairingWord, sides: int | None = None) -> QuotientReport:
    """Genus of the surface obtained by gluing the polygon sides as ``word`` says."""
    k = word.sides
    if sides is not None and sides != k:
        raise NonOrientableOrInvalid(f"pairing has {k} sides, expected {sides}")
    if not all(word.reversed_):
        raise NonOrientableOrInvalid("a side is glued without reversing direction; quotient is not orientable")
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def vertex(v):  # vertex v in 0..k, vertex 0 == vertex k
        return v % k

    for i, j in enumerate(word.partner, 1):
        for a, b in ((vertex(i - 1), vertex(j)), (vertex(i), vertex(j - 1))):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in range(k):
        groups.setdefault(find(v), []).append(v if v else k)
    V = len(groups)
    chi = V - k // 2 + 1
    if k % 2 or (2 - chi) % 2 or chi > 2:
        raise NonOrientableOrInvalid(f"Euler characteristic {chi} gives no orientable genus")
    classes = tuple(sorted(tuple(sorted(g)) for g in groups.values()))
    return QuotientReport((2 - chi) // 2, tuple(sorted(len(c) for c in classes)), classes)


# Interpretations of the unbound residue ``c`` in ``q = (n/n2) c^-1``: which
# cone's residue, and the modulus of the inverse. The last two are not in the
# original ambiguity space; they are the ones that work for every action.
INTERPRETATIONS = (
    ("c2", "n2"), ("c2", "n"), ("c1", "n2"), ("c1", "n"), ("c3", "n2"), ("c3", "n"),
)


def formula_pairing(D: DataSet, interpretation: tuple[str, str]) -> PairingWord | None:
    """Side pairing ``z = m + q*j (mod n)`` for one interpretation, or ``None``."""
    p1, p2, p3 = split_cones(D)
    n, n2 = D.n, p2.m
    which, modulus = interpretation
    c = {"c1": p1.c, "c2": p2.c, "c3": p3.c}[which]
    mod = n2 if modulus == "n2" else n
    try:
        inv = pow(c, -1, mod)
    except ValueError:
        return None
    q = (n // n2) * inv
    j = n2 - p2.c
    spec_sides = 2 * n if 2 not in (p1.m, p2.m) else n
    partner = [0] * spec_sides
    for m in range(n):
        z = (m + q * j) % n
        if spec_sides == 2 * n:
            a, b = 2 * m + 1, 2 * z if z else 2 * n
        else:
            a, b = m + 1, z if z else n
        for x, y in ((a, b), (b, a)):
            if partner[x - 1] not in (0, y):
                return None
            partner[x - 1] = y
    if 0 in partner:
        return None
    try:
        return PairingWord(tuple(partner), (True,) * spec_sides, f"{which}/{modulus}")
    except NonOrientableOrInvalid:
        return None


def _angles_close(spec: PolygonSpec, report: QuotientReport) -> bool:
    # every vertex class must carry total angle 2*pi
    return all(abs(math.fsum(spec.corner_angles[v - 1] for v in cls) - 2 * math.pi) < 1e-9
               for cls in report.classes)


def pairing_word(D: DataSet) -> PairingWord:
    """The side pairing of the polygon of ``D``, with the interpretation used.

    Interpretations are tried in order; the first whose quotient has genus
    ``g(D)`` and whose vertex classes each close up to angle ``2*pi`` wins.
    """
    spec = polygon_spec(D)
    tried = []
    for interp in INTERPRETATIONS:
        word = formula_pairing(D, interp)
        tried.append("/".join(interp))
        if word is None:
            continue
        try:
            report = quotient_check(word, spec.sides)
        except NonOrientableOrInvalid:
            continue
        if report.genus == D.genus and _angles_close(spec, report) and word.is_equivariant(spec.rotation_steps):
            return word
    raise NoValidInterpretation(f"no interpretation of the pairing formula works for {D}; tried {tried}")


# --- rendering -----------------------------------------------------------

def _vertices(spec: PolygonSpec, metrics: PolygonMetrics) -> list[tuple[float, float]]:
    radii = metrics.radii if len(metrics.radii) == 2 else metrics.radii * 2
    step = 2 * math.pi / spec.sides
    out = []
    for v in range(1, spec.sides + 1):
        R = radii[(v - 1) % 2] if spec.rotation_steps == 2 else radii[0]
        r = math.tanh(R / 2)
        phi = math.pi / 2 - (v - 1) * step
        out.append((r * math.cos(phi), r * math.sin(phi)))
    return out


def _geodesic(p, q):
    """Circle ``(cx, cy, radius)`` orthogonal to the unit circle through p, q, or None for a diameter."""
    (x1, y1), (x2, y2) = p, q
    d = 2 * (x1 * y2 - x2 * y1)
    if abs(d) < 1e-12:
        return None
    a = x1 * x1 + y1 * y1 + 1
    b = x2 * x2 + y2 * y2 + 1
    cx = (a * y2 - b * y1) / d
    cy = (b * x1 - a * x2) / d
    return cx, cy, math.sqrt(cx * cx + cy * cy - 1)


def _color(i: int, total: int) -> str:
    r, g, b = colorsys.hls_to_rgb(i / max(total, 1), 0.42, 0.65)
    return f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}"


def render_svg(spec: PolygonSpec, metrics: PolygonMetrics | None, word: PairingWord, size: int = 480) -> str:
    """Poincare-disk picture of the polygon; output is byte-stable for fixed input."""
    if metrics is None:
        raise NonHyperbolic("solve the polygon metrics before rendering")
    if word.sides != spec.sides:
        raise NonOrientableOrInvalid("pairing and polygon have different side counts")
    half = size / 2
    scale = half * 0.92

    def pt(p):
        return f"{half + scale * p[0]:.4f} {half - scale * p[1]:.4f}"

    verts = _vertices(spec, metrics)
    labels = word.side_labels()
    order = sorted(set(labels), key=labels.index)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<circle cx="{half:.4f}" cy="{half:.4f}" r="{scale:.4f}" fill="none" stroke="#999" stroke-width="1"/>',
    ]
    for i in range(1, spec.sides + 1):
        p, q = verts[i - 2], verts[i - 1]  # side i runs from vertex i-1 to vertex i
        color = _color(order.index(labels[i - 1]), len(order))
        circle = _geodesic(p, q)
        if circle is None:
            path = f"M {pt(p)} L {pt(q)}"
        else:
            cx, cy, rad = circle
            cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
            sweep = 0 if cross > 0 else 1  # SVG y axis points down
            path = f"M {pt(p)} A {scale * rad:.4f} {scale * rad:.4f} 0 0 {sweep} {pt(q)}"
        lines.append(f'<path class="side" d="{path}" fill="none" stroke="{color}" stroke-width="2.5"/>')
        mx, my = (p[0] + q[0]) / 2, (p[1] + q[1]) / 2
        norm = math.hypot(mx, my) or 1.0
        lx, ly = mx + 0.07 * mx / norm, my + 0.07 * my / norm
        lines.append(f'<text class="label" x="{half + scale * lx:.4f}" y="{half - scale * ly:.4f}" '
                     f'font-size="13" text-anchor="middle" dominant-baseline="middle" fill="{color}">{labels[i - 1]}</text>')
    for v, p in enumerate(verts, 1):
        x, y = pt(p).split()
        if spec.rotation_steps == 2 and v % 2 == 0:
            lines.append(f'<rect class="vertex" x="{float(x) - 3:.4f}" y="{float(y) - 3:.4f}" width="6" height="6" fill="#222"/>')
        else:
            lines.append(f'<circle class="vertex" cx="{x}" cy="{y}" r="3" fill="#222"/>')
    lines.append(f'<circle class="center" cx="{half:.4f}" cy="{half:.4f}" r="3.5" fill="none" stroke="#000"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
