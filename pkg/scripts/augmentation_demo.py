#!/usr/bin/env python3
"""Walk through the terminal-blow-up augmentation step on a real instance.

Host: the glued ladders GL(3,4,[1]^6) with the pair-(1,2) terminal blown
up to 5 copies (14 vertices).  The host satisfies the step's hypothesis
(no 2-subset of T lies in an edge) and admits no homomorphism from the
once-lengthened family GL(3,4,(2,1,1,1,1,1)) -- a genuine search, the
pattern has only 12 vertices.  Adding a complete balanced 3-partite graph
on T extends exactly that one pair's ladder: afterwards the mixed-length
family embeds while GL(3,4,[2]^6) still does not.
"""

from itertools import combinations

from turanlab import families as fam
from turanlab.hypercore import blow_up_vertex
from turanlab.morphisms import find_embedding, find_homomorphism

g1 = fam.glued_ladders(3, 4, [1] * 6)
term = g1.labels["t[1-2]"]
host = blow_up_vertex(g1.graph, term, 5)
T = [term] + list(range(g1.graph.n, host.n))
print(f"host: GL(3,4,[1]^6) with terminal t[1-2] blown to {len(T)} copies "
      f"-> {host.n} vertices, {host.m} edges")

pairs_inside = [p for p in combinations(sorted(T), 2)
                if any(set(p) <= set(e) for e in host.edges)]
print(f"2-subsets of T inside a host edge: {len(pairs_inside)} (hypothesis needs 0)")

mixed = fam.glued_ladders(3, 4, [2, 1, 1, 1, 1, 1]).graph
print(f"hom from GL(3,4,(2,1,1,1,1,1)) into host: "
      f"{'found' if find_homomorphism(mixed, host) else 'absent'}")

aug, parts = fam.add_kpartite_on(host, T)
print(f"augmented on parts {[sorted(p) for p in parts]}: "
      f"{aug.m - host.m} new transversal edges")

bad = sum(
    1
    for part in parts
    for sub in combinations(sorted(part), 2)
    for w in set(part) - set(sub)
    if tuple(sorted(sub + (w,))) in aug.edge_set
)
print(f"edges inside a single part: {bad} (property needs 0)")

print(f"mixed-length family in augmented host: "
      f"{'found' if find_embedding(mixed, aug) else 'absent'}")
gl2 = fam.glued_ladders(3, 4, [2] * 6).graph
print(f"GL(3,4,[2]^6) in augmented host: "
      f"{'found' if find_embedding(gl2, aug) else 'absent'}")
