"""The acceptance checks, runnable from the CLI and from the test suite."""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from surface_cyclic import fixtures as fx
from surface_cyclic.dataset import classify, enumerate_datasets, fix_dimension_harvey, is_irreducible, validate
from surface_cyclic.fatgraph import (
    automorphisms,
    filling_irreducibility_check,
    generator_of_order,
    induced_signature,
    is_cyclic_group,
    orbit_feasibility,
)
from surface_cyclic.hyperbolic import pairing_word, polygon_spec, quotient_check, solve_metrics
from surface_cyclic.necklace import (
    compose_chain,
    decompose,
    fix_descriptor,
    fix_dimension_necklace,
    random_necklace,
    realize,
)

AUDIT_SEED = 20240501
AUDIT_SIZE = 1000


@dataclass
class CheckResult:
    number: str
    title: str
    passed: bool
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0
    budget: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:>2}  {self.title}  ({self.seconds:.2f}s)"

    def to_json(self):
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "details": self.details, "seconds": round(self.seconds, 3)}


def _timed(budget):
    def wrap(fn):
        def run():
            t = time.perf_counter()
            result = fn()
            result.seconds = time.perf_counter() - t
            result.budget = budget
            if budget is not None and result.seconds > budget:
                result.passed = False
                result.details.append(f"took {result.seconds:.2f}s, budget {budget}s")
            return result
        run.__name__ = fn.__name__
        return run
    return wrap


@_timed(1.0)
def check_chain_composition() -> CheckResult:
    res = compose_chain(fx.order42_chain())
    ok = res == fx.ORDER42_CHAIN_RESULT and res.genus == fx.ORDER42_CHAIN_GENUS
    genera = tuple(B.genus for B in fx.ORDER42_BEADS)
    ok = ok and genera == fx.ORDER42_BEAD_GENERA
    return CheckResult("1", "order-42 chain of six beads composes to the 10-pair action on genus 155", ok,
                       [f"result {res.notation()} genus {res.genus}", f"bead genera {genera}"])


@_timed(1.0)
def check_necklace_realization() -> CheckResult:
    N = fx.order42_necklace()
    R = realize(N)
    ok = R.dataset == fx.ORDER42_RESULT and R.genus_trace == fx.ORDER42_TRACE
    return CheckResult("2", "order-42 necklace realizes (42,1;(1,6),(5,6)) with the expected genus trace", ok,
                       [f"self pairs (canonical) {N.self_pairs}", f"result {R.dataset.notation()}",
                        "trace " + " -> ".join(map(str, R.genus_trace))])


@_timed(None)
def check_fix_descriptor() -> CheckResult:
    N = fx.order42_necklace()
    d = fix_descriptor(N)
    harvey = fix_dimension_harvey(realize(N).dataset)
    ok = (d.points, d.num_bounded, d.num_free, d.den_bounded, d.den_free, d.dim) == (6, 10, 0, 3, 5, 4) and harvey == 4
    return CheckResult("3", "Fix descriptor of the order-42 necklace: 6 points, 10 bounded / 3 bounded, 5 free; dim 4",
                       ok, [str(d.to_json()), f"harvey {harvey}"])


@_timed(None)
def check_two_necklaces() -> CheckResult:
    N1, N2 = fx.order5_necklace_1(), fx.order5_necklace_2()
    D1, D2 = realize(N1).dataset, realize(N2).dataset
    back = realize(decompose(fx.ORDER5_TARGET)).dataset
    ok = D1 == D2 == back == fx.ORDER5_TARGET
    ok = ok and fix_dimension_necklace(N1).dimension == fix_dimension_necklace(N2).dimension
    return CheckResult("4", "two different necklaces realize (5,1;(1,5),(2,5),(2,5)); decompose round-trips", ok,
                       [f"N1 -> {D1.notation()}", f"N2 -> {D2.notation()} (self pairs {N2.self_pairs})",
                        f"decompose -> {back.notation()}"])


def _census_slice(n: int):
    problems, count = [], 0
    for g in range(2, 7):
        for D in enumerate_datasets(n, g):
            count += 1
            if not validate(D).valid or D.genus != g:
                problems.append(f"{D.notation()} invalid or wrong genus")
            if is_irreducible(D) != (fix_dimension_harvey(D) == 0):
                problems.append(f"{D.notation()} irreducibility disagrees with dimension")
            if realize(decompose(D)).dataset != D:
                problems.append(f"{D.notation()} does not round-trip")
            if is_irreducible(D) and not (2 * g + 1 <= n <= 4 * g + 2):
                problems.append(f"{D.notation()} irreducible outside 2g+1 <= n <= 4g+2")
    return count, problems


def check_census(jobs: int = 1) -> CheckResult:
    t = time.perf_counter()
    ns = range(1, 11)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_census_slice, ns))
    else:
        parts = [_census_slice(n) for n in ns]
    count = sum(c for c, _ in parts)
    problems = [p for _, ps in parts for p in ps]
    r = CheckResult("5", "census n <= 10, 2 <= g <= 6: validity, irreducibility, round trip, order bounds",
                    not problems, [f"{count} data sets checked"] + problems[:20])
    r.seconds = time.perf_counter() - t
    if r.seconds > 60:
        r.passed = False
    return r


@_timed(10.0)
def check_polygons() -> CheckResult:
    problems, count = [], 0
    for n in range(2, 21):
        for g in range(2, (n + 1) // 2 + 2):
            for D in enumerate_datasets(n, g):
                if D.g0 or classify(D).kind != "type1":
                    continue
                count += 1
                spec = polygon_spec(D)
                m = solve_metrics(spec)
                if abs(m.area - 2 * math.pi * (2 * g - 2)) >= 1e-9:
                    problems.append(f"{D.notation()} area {m.area}")
                if abs(m.apex_sum - 2 * math.pi) >= 1e-9 or abs(m.side_residual) >= 1e-9:
                    problems.append(f"{D.notation()} triangles do not close")
                if quotient_check(pairing_word(D), spec.sides).genus != g:
                    problems.append(f"{D.notation()} pairing gives wrong genus")
    spec = polygon_spec(fx.REGULAR_14GON)
    m = solve_metrics(spec)
    angle_ok = all(abs(a - 2 * math.pi / 7) < 1e-12 for a in spec.corner_angles)
    fourteen = spec.sides == 14 and angle_ok and abs(m.area - 8 * math.pi) < 1e-9
    if not fourteen:
        problems.append("14-gon angles or area wrong")
    return CheckResult("6", "hyperbolic polygons for spherical Type 1 actions with n <= 20", not problems,
                       [f"{count} actions certified", f"14-gon: angle 2pi/7, area {m.area / math.pi:.12f} pi"] + problems[:20])


@_timed(5.0)
def check_fat_graphs() -> CheckResult:
    out, ok = [], True
    cases = (
        ("Gamma_1", fx.gamma_1(), 2, (2,) * 6, False, 2),
        ("Gamma_2", fx.gamma_2(), 4, (2, 2, 4, 4), False, 4),
        ("torus", fx.torus_graph(), 4, (2, 4, 4), True, None),
    )
    for name, G, order, cones, irreducible, group_order in cases:
        auts = automorphisms(G)
        h = generator_of_order(auts, order)
        sig = induced_signature(G, h)
        verdict, report = filling_irreducibility_check(G, h)
        good = sig.quotient_genus == 0 and sig.cone_orders == cones and verdict == irreducible
        good = good and report["agrees_with_prediction"]
        s = G.summary()
        if name != "torus":
            good = good and (s["genus"], s["b"]) == (2, 1) and len(auts) == group_order and is_cyclic_group(auts)
        else:
            good = good and (s["genus"], s["b"]) == (1, 1)
        ok = ok and good
        out.append(f"{name}: genus {s['genus']}, b {s['b']}, |Aut| {len(auts)}, signature {sig.notation()}, "
                   f"{'irreducible' if verdict else 'reducible'}")
    return CheckResult("7", "fat-graph fixtures: automorphism groups, induced signatures, irreducibility verdicts",
                       ok, out)


@_timed(None)
def check_orbit_certificate() -> CheckResult:
    case = fx.GENUS5_ORDER12_CASE
    cert = orbit_feasibility(case["g"], case["n"], case["cone_orders"], case["b"])
    two_orbit = any("vertex: 12/6 + 12/12 = 3 ≠ 9" in line and "face: 12/12 = 1 = 1" in line for line in cert.lines)
    three = any("vertex: 12/6 + 12/12 + 12/12 = 4 ≠ 9" in line for line in cert.lines)
    ok = not cert.feasible and cert.cells["vertex"] == 9 and two_orbit and three
    return CheckResult("8", "genus 5, order 12 filling action: |V| = 9 cannot be split into cone orbits", ok,
                       list(cert.lines))


def audit_necklaces(seed: int = AUDIT_SEED, size: int = AUDIT_SIZE):
    """Closed dimension formula vs. Harvey, and raw factor counts on the g' = 0 subset."""
    rng = random.Random(seed)
    closed_bad, factor_total, factor_bad = [], 0, []
    for _ in range(size):
        N = random_necklace(rng)
        d = fix_dimension_necklace(N)
        if not d.consistent:
            closed_bad.append(N)
        M = N.normalized()
        if M.g_add == 0:
            factor_total += 1
            fd = fix_descriptor(M)
            if fd.factor_dimension() != fd.dim:
                factor_bad.append((M, fd))
    return closed_bad, factor_total, factor_bad


@_timed(None)
def check_necklace_audit() -> CheckResult:
    closed_bad, total, factor_bad = audit_necklaces()
    details = [
        f"closed formula = Harvey: {AUDIT_SIZE - len(closed_bad)}/{AUDIT_SIZE}",
        f"raw factor count = dimension on g' = 0: {total - len(factor_bad)}/{total}",
    ]
    if factor_bad:
        M, fd = factor_bad[0]
        details.append(f"first mismatch: k={M.k}, f={M.f}, m={M.m}, g''={M.g_sub}: factors give "
                       f"{fd.factor_dimension()}, dimension is {fd.dim}")
        shapes = sorted({(M.g_sub == 0, M.k + 2 * M.f + M.m >= 2) for M, _ in factor_bad})
        details.append(f"mismatches all have g'' = 0 and k+2f+m >= 2: {shapes == [(True, True)]}")
    return CheckResult("9", "random necklace audit: closed formula and factor counts against Harvey",
                       not closed_bad and not factor_bad, details)


def run_all(jobs: int = 1) -> list[CheckResult]:
    checks = [check_chain_composition, check_necklace_realization, check_fix_descriptor, check_two_necklaces]
    results = [c() for c in checks]
    results.append(check_census(jobs))
    results += [check_polygons(), check_fat_graphs(), check_orbit_certificate(), check_necklace_audit()]
    return results


def format_table(results) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
