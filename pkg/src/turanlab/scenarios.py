"""Named verification scenarios shared by the acceptance test suite and
the `verify` CLI command.

Each suite returns a list of Check records.  A check with passed=None is
informational (typically a solver timeout): it is reported but does not
fail the suite.  Solver results are cached process-wide (see extremal),
so overlapping suites do not repeat work.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from turanlab import families as fam
from turanlab.hypercore import (
    automorphism_count,
    blow_up,
    blow_up_vertex,
    canonical_form,
    complete_kgraph,
    complete_multipartite,
    near_balanced_sizes,
    new_hypergraph,
)
from turanlab.morphisms import (
    UNKNOWN,
    assemble_glz_hom,
    cycle_multiply,
    find_embedding,
    find_homomorphism,
    lz_contraction_hom,
    verify_homomorphism,
)
from turanlab.extremal import (
    DensityPoint,
    blowup_monotonicity_check,
    density_series,
    ex_exact,
    ex_hom_exact,
    mubayi_density,
    verify_monotone,
)

# give the one genuinely open-ended solve a short leash; everything else
# is expected to prove out well inside this
SOLVE_TIME_LIMIT = 60.0
HARD_POINT_TIME_LIMIT = 10.0


@dataclass
class Check:
    name: str
    passed: bool | None
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else ("unknown" if self.passed is None else "FAIL")
        return f"  [{tag}] {self.name}" + (f": {self.detail}" if self.detail else "")


def _check(name, cond, detail="") -> Check:
    return Check(name, bool(cond), detail)


# ---------------------------------------------------------------------------
# Part I: the partite base construction and the T-augmentation


def suite_part1_base_freeness() -> list[Check]:
    checks = []
    gl2 = fam.glued_ladders(3, 4, [2] * 6).graph
    for n in range(3, 16):
        base = fam.base_construction(3, 4, n)
        hit = find_embedding(gl2, base)
        checks.append(_check(f"base(3,4,{n}) GL(s=4,l=2)-free", hit is None))
        checks.append(_check(
            f"base(3,4,{n}) edge count",
            base.m == fam.base_edge_count(3, 4, n),
            f"{base.m} edges",
        ))

    # augmentation instances: hosts built so that no (k-1)-subset of the
    # blown-up terminal set lies in a pre-existing edge
    instances = []
    e3 = new_hypergraph(3, 3, [(0, 1, 2)])
    h0 = blow_up_vertex(e3, 2, 7)
    instances.append(("edge-blown", h0, [2] + list(range(3, 9)), None))
    g1 = fam.glued_ladders(3, 4, [1] * 6)
    term = g1.labels["t[1-2]"]
    h1 = blow_up_vertex(g1.graph, term, 5)
    gl_mixed = fam.glued_ladders(3, 4, [2, 1, 1, 1, 1, 1]).graph
    instances.append(("ladder-blown", h1, [term] + list(range(10, 14)), gl_mixed))

    exp34 = fam.expansion_complete(3, 4).graph
    for tag, host, T, mixed in instances:
        # hypothesis of the augmentation step
        pre = all(
            not any(set(pair) <= set(e) for e in host.edges)
            for pair in combinations(sorted(T), 2)
        )
        checks.append(_check(f"{tag}: no (k-1)-subset of T in a host edge", pre))
        if mixed is None:
            # host contains no homomorphic image of the expansion
            checks.append(_check(
                f"{tag}: host admits no expansion hom",
                find_homomorphism(exp34, host) is None,
            ))
        else:
            # host contains the all-lengths-1 glued ladders with a blown
            # terminal yet admits no hom from the once-lengthened family
            checks.append(_check(
                f"{tag}: host admits no hom from the (2,1,...,1) glued ladders",
                find_homomorphism(mixed, host) is None,
            ))
        aug, parts = fam.add_kpartite_on(host, T)
        inside = False
        for part in parts:
            pset = set(part)
            for sub in combinations(sorted(pset), aug.k - 1):
                for w in pset - set(sub):
                    if tuple(sorted(sub + (w,))) in aug.edge_set:
                        inside = True
        checks.append(_check(
            f"{tag}: no (k-1)-subset of a part shares an edge with its part",
            not inside,
        ))
        checks.append(_check(
            f"{tag}: augmented graph GL(s=4,l=2)-free",
            find_embedding(gl2, aug) is None,
        ))
        if mixed is not None:
            # the added transversal edges extend exactly one pair's ladder:
            # the mixed-length glued ladders appear, all-length-2 do not
            checks.append(_check(
                f"{tag}: augmentation creates the mixed-length ladders",
                find_embedding(mixed, aug) is not None,
            ))
    return checks


# ---------------------------------------------------------------------------
# Part II: the blow-up / project / close pipeline and the cycling laws


def suite_part2_pipeline() -> list[Check]:
    checks = []
    res = assemble_glz_hom(complete_kgraph(3, 6), s=4, blow_factor=34,
                           time_limit=SOLVE_TIME_LIMIT)
    if res is UNKNOWN or res is None:
        checks.append(Check("pipeline on K6^(3)", None if res is UNKNOWN else False,
                            "embedding step did not finish"))
        return checks
    checks.append(_check(
        "pipeline hom verifies",
        verify_homomorphism(res.glz.graph, complete_kgraph(3, 6), res.hom),
        f"GLZ(4,{res.ladder_len},{res.cycle_len}) -> K6^(3)",
    ))
    checks.append(_check("ladder length is C(6,2)+1", res.ladder_len == math.comb(6, 2) + 1))
    checks.append(_check(
        "cycle length is the lcm of pair cycles",
        res.cycle_len == math.lcm(*res.pair_cycle_lengths.values()),
        f"lcm{sorted(res.pair_cycle_lengths.values())} = {res.cycle_len}",
    ))
    starts_ok = all(
        res.pair_start_images[(i, j)] == {res.x_images[i - 1], res.x_images[j - 1]}
        for (i, j) in res.pair_start_images
    )
    checks.append(_check("starting sets map onto the X-images", starts_ok))

    # GL -> GLZ homomorphisms across the stated grid
    grid_ok = True
    for l in (1, 2, 3, 4):
        gl = fam.glued_ladders(3, 4, [l] * 6).graph
        for i in (1, 2, 3):
            for m in (2, 3):
                glz = fam.glued_ladder_zycles(3, 4, i, m).graph
                hom = find_homomorphism(gl, glz, time_limit=SOLVE_TIME_LIMIT)
                if hom is None or hom is UNKNOWN:
                    grid_ok = False
    checks.append(_check("GL(3,4,[l]x6) -> GLZ(3,4,i,m) for l<=4, i<=3, m<=3", grid_ok))

    # cycling laws on random hosts
    rng = random.Random(9)
    found = 0
    laws_ok = True
    for trial in range(50):
        k = rng.choice((2, 3))
        n = rng.randint(4, 7)
        pool = list(combinations(range(n), k))
        g = new_hypergraph(k, n, rng.sample(pool, rng.randint(1, len(pool))))
        for j in range(2, 7):
            z = find_homomorphism(fam.zycle(k, j).graph, g, time_limit=5)
            if z is None or z is UNKNOWN:
                continue
            found += 1
            start = [z.image[v] for v in fam.zycle(k, j).starting_sets[0]]
            for r in (2, 3, 4):
                zz = cycle_multiply(z, r)
                big = fam.zycle(k, j * r)
                if not verify_homomorphism(zz.source, g, zz):
                    laws_ok = False
                if [zz.image[v] for v in big.starting_sets[0]] != start:
                    laws_ok = False
    checks.append(_check("cycle_multiply verifies and preserves starting sets",
                         laws_ok and found > 0, f"{found} zycle homs found"))
    contr_ok = True
    for L in (2, 3):
        for jp in range(1, 5):
            for j in range(1, jp + 1):
                vm = lz_contraction_hom(3, j, jp, L)
                if not verify_homomorphism(vm.source, vm.target, vm):
                    contr_ok = False
    checks.append(_check("lz_contraction_hom verifies for j <= j' <= 4, L in {2,3}", contr_ok))
    return checks


# ---------------------------------------------------------------------------
# the Mubayi density bracket for the expansion


def suite_mubayi_bracket() -> list[Check]:
    checks = []
    exp34 = fam.expansion_complete(3, 4).graph
    target = mubayi_density(4, 3)
    checks.append(_check("closed form pi(G_4^(3)) = 2/9", target == Fraction(2, 9)))
    pts = density_series([exp34], 4, 9, time_limit=SOLVE_TIME_LIMIT)
    hard = ex_exact(10, [exp34], time_limit=HARD_POINT_TIME_LIMIT)
    pts.append(DensityPoint(10, hard.value,
                            Fraction(hard.value, math.comb(10, 3)),
                            hard.proven_optimal))
    checks.append(_check("series non-increasing over proven points", verify_monotone(pts)))
    proven = [p for p in pts if p.proven]
    checks.append(_check(
        "every proven density >= 2/9",
        all(p.density >= target for p in proven),
        f"{len(proven)}/{len(pts)} points proven",
    ))
    for p in pts:
        if not p.proven:
            checks.append(Check(f"ex({p.n}) solve", None,
                                f"timed out at incumbent {p.ex_value}; excluded from bracket"))
    lb_ok = True
    for n in range(4, 11):
        host = complete_multipartite(3, near_balanced_sizes(n, 3))
        if find_embedding(exp34, host) is not None:
            lb_ok = False
        if Fraction(host.m, math.comb(n, 3)) < target:
            lb_ok = False
    checks.append(_check("3-partite construction is expansion-free with density >= 2/9", lb_ok))
    return checks


# ---------------------------------------------------------------------------
# Turan oracle + monotonicity + blow-up invariance


def suite_monotonicity() -> list[Check]:
    checks = []
    K3 = complete_kgraph(2, 3)
    K4 = complete_kgraph(2, 4)
    ok3 = True
    pts3 = density_series([K3], 3, 8, time_limit=SOLVE_TIME_LIMIT)
    for p in pts3:
        if not p.proven or p.ex_value != p.n * p.n // 4:
            ok3 = False
    checks.append(_check("ex(n,[K3]) = floor(n^2/4) for 3 <= n <= 8", ok3))

    def turan_count(n: int, parts: int) -> int:
        sizes = near_balanced_sizes(n, parts)
        return (n * n - sum(s * s for s in sizes)) // 2

    ok4 = True
    pts4 = density_series([K4], 4, 8, time_limit=SOLVE_TIME_LIMIT)
    for p in pts4:
        if not p.proven or p.ex_value != turan_count(p.n, 3):
            ok4 = False
    checks.append(_check("ex(n,[K4]) matches the 3-partite Turan count for 4 <= n <= 8", ok4))

    checks.append(_check("K3 series monotone", verify_monotone(pts3)))
    checks.append(_check("K4 series monotone", verify_monotone(pts4)))

    e3 = new_hypergraph(3, 3, [(0, 1, 2)])
    z32 = fam.zycle(3, 2).graph
    for F, n, tag in ((K3, 8, "K3"), (e3, 6, "single 3-edge"), (z32, 6, "zycle(3,2)")):
        checks.append(_check(
            f"ex({n},[{tag}]) <= ex({n},[blow-up x2])",
            blowup_monotonicity_check(n, F, 2, time_limit=SOLVE_TIME_LIMIT),
        ))
    return checks


# ---------------------------------------------------------------------------
# hom-extremal crosscheck


def battery_3graphs_5verts(max_edges: int = 4):
    """All non-isomorphic 3-graphs on a 5-vertex canvas with 1..max_edges
    edges.  Padding with isolated vertices does not change hom-extremal
    numbers, so this canvas covers every pattern on at most 5 vertices."""
    pool = list(combinations(range(5), 3))
    seen = {}
    for m in range(1, max_edges + 1):
        for sub in combinations(pool, m):
            g = new_hypergraph(3, 5, sub)
            seen.setdefault(canonical_form(g).digest, g)
    return sorted(seen.values(), key=lambda g: (g.m, g.edges))


def suite_homfamily_crosscheck() -> list[Check]:
    checks = []
    battery = battery_3graphs_5verts()
    agree = True
    solved = 0
    for F in battery:
        for t in (4, 5, 6):
            a = ex_hom_exact(t, F, method="family", time_limit=SOLVE_TIME_LIMIT)
            b = ex_hom_exact(t, F, method="direct", time_limit=SOLVE_TIME_LIMIT)
            if not (a.proven_optimal and b.proven_optimal and a.value == b.value):
                agree = False
            solved += 1
    checks.append(_check(
        "ex_hom via minimal hom-images = direct hom-free solve",
        agree,
        f"{len(battery)} patterns x 3 host sizes = {solved} pairs",
    ))
    return checks


SUITES = {
    "part1-base-freeness": suite_part1_base_freeness,
    "part2-pipeline": suite_part2_pipeline,
    "mubayi-bracket": suite_mubayi_bracket,
    "monotonicity": suite_monotonicity,
    "homfamily-crosscheck": suite_homfamily_crosscheck,
}
