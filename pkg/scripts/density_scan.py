#!/usr/bin/env python3
"""Scan the Turan density sequence for a forbidden family.

Usage: python3 scripts/density_scan.py [SPEC] [N_MIN] [N_MAX] [SECONDS_PER_POINT]
Defaults: exp(k=3,s=4) over 4..10 with 10 s per solve.

Points the solver cannot close in time are printed with a trailing '?'
and the incumbent value; everything proven is exact.
"""

import sys
import time
from fractions import Fraction
from math import comb

from turanlab.extremal import ex_exact, mubayi_density
from turanlab.families import build_graph, parse_family_spec

spec = sys.argv[1] if len(sys.argv) > 1 else "exp(k=3,s=4)"
n_min = int(sys.argv[2]) if len(sys.argv) > 2 else 4
n_max = int(sys.argv[3]) if len(sys.argv) > 3 else 10
budget = float(sys.argv[4]) if len(sys.argv) > 4 else 10.0

F = build_graph(parse_family_spec(spec))
print(f"# forbidden: {spec}  ({F.n} vertices, {F.m} edges, k={F.k})")
print(f"{'n':>3} {'ex':>6} {'density':>10} {'':>2} {'time':>7}")

for n in range(n_min, n_max + 1):
    t0 = time.perf_counter()
    r = ex_exact(n, [F], time_limit=budget)
    dt = time.perf_counter() - t0
    d = Fraction(r.value, comb(n, F.k))
    flag = "" if r.proven_optimal else "?"
    print(f"{n:>3} {r.value:>6}{flag:<1} {str(d):>10} {'':>1} {dt:>6.2f}s")

if spec == "exp(k=3,s=4)":
    print(f"# Mubayi limit for this family: {mubayi_density(4, 3)}")
