"""Core k-uniform hypergraph type and the base machinery everything else
leans on: blow-ups, partite constructions, canonical labeling, and the
plain-text serialization format.

Vertices are always 0..n-1.  Edges are sorted k-tuples of distinct
vertices, and the edge list of a Hypergraph is itself sorted, so equal
graphs compare (and hash) equal as dataclasses.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache


@dataclass(frozen=True)
class Hypergraph:
    """Immutable k-uniform hypergraph on vertex set {0, ..., n-1}.

    Build instances through new_hypergraph, which normalizes and validates;
    the raw constructor trusts its arguments.
    """

    k: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    @cached_property
    def pair_shadow(self) -> frozenset[tuple[int, int]]:
        """All unordered vertex pairs that lie together in some edge."""
        out: set[tuple[int, int]] = set()
        for e in self.edges:
            out.update(itertools.combinations(e, 2))
        return frozenset(out)

    def __repr__(self) -> str:
        return f"Hypergraph(k={self.k}, n={self.n}, m={len(self.edges)})"


def new_hypergraph(k: int, n: int, edges) -> Hypergraph:
    """Validate and normalize raw edge data into a Hypergraph.

    Each edge is sorted, the edge list is sorted, and a duplicate edge
    (after sorting) is an error rather than silently dropped: the
    constructions in this package are supposed to produce each edge once,
    so a collision means a bug upstream.  Constructions whose definition
    is a set union deduplicate before calling this.
    """
    if k < 2:
        raise ValueError(f"uniformity k must be at least 2, got {k}")
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    norm = []
    for e in edges:
        t = tuple(sorted(e))
        if len(t) != k or len(set(t)) != k:
            raise ValueError(f"edge {tuple(e)} is not a set of {k} distinct vertices")
        if t[0] < 0 or t[-1] >= n:
            raise ValueError(f"edge {t} has a vertex outside range({n})")
        norm.append(t)
    norm.sort()
    for a, b in zip(norm, norm[1:]):
        if a == b:
            raise ValueError(f"duplicate edge {a}")
    return Hypergraph(k, n, tuple(norm))


def relabel(H: Hypergraph, perm) -> Hypergraph:
    """Rename vertices; perm[v] is the new name of v."""
    perm = tuple(perm)
    if sorted(perm) != list(range(H.n)):
        raise ValueError("perm is not a permutation of range(n)")
    return new_hypergraph(H.k, H.n, [tuple(perm[v] for v in e) for e in H.edges])


def induced_subgraph(H: Hypergraph, vertices) -> Hypergraph:
    """Subgraph induced on the given vertices, relabeled to 0..len-1 in
    sorted vertex order."""
    vs = sorted(set(vertices))
    if vs and (vs[0] < 0 or vs[-1] >= H.n):
        raise ValueError("vertex outside range(n)")
    pos = {v: i for i, v in enumerate(vs)}
    keep = [tuple(pos[v] for v in e) for e in H.edges if all(v in pos for v in e)]
    return new_hypergraph(H.k, len(vs), keep)


# ---------------------------------------------------------------------------
# stock constructions


def complete_kgraph(k: int, n: int) -> Hypergraph:
    """Complete k-graph: every k-subset of {0..n-1} is an edge."""
    return new_hypergraph(k, n, itertools.combinations(range(n), k))


def near_balanced_sizes(n: int, parts: int) -> list[int]:
    """Split n into part sizes differing by at most one, larger parts first."""
    if parts < 1:
        raise ValueError("need at least one part")
    q, r = divmod(n, parts)
    return [q + 1] * r + [q] * (parts - r)


def complete_multipartite(k: int, sizes) -> Hypergraph:
    """Complete multipartite k-graph.

    Classes occupy consecutive vertex blocks of the given sizes; the edges
    are exactly the rainbow k-sets, one vertex from each of k distinct
    classes.  With fewer than k classes the graph has no edges.
    """
    sizes = list(sizes)
    if any(s < 0 for s in sizes):
        raise ValueError("negative class size")
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    blocks = [range(starts[i], starts[i + 1]) for i in range(len(sizes))]
    edges: list[tuple[int, ...]] = []
    for picked in itertools.combinations(blocks, k):
        edges.extend(itertools.product(*picked))
    return new_hypergraph(k, starts[-1], edges)


def blow_up(H: Hypergraph, t: int) -> Hypergraph:
    """Replace each vertex v by t clones t*v..t*v+t-1 and each edge by all
    t**k transversals through the clone classes.  Collapsing clones via
    v -> v // t is then a homomorphism back onto H."""
    if t < 1:
        raise ValueError("blow-up factor must be positive")
    edges: list[tuple[int, ...]] = []
    for e in H.edges:
        edges.extend(itertools.product(*(range(v * t, v * t + t) for v in e)))
    return new_hypergraph(H.k, H.n * t, edges)


def blow_up_vertex(H: Hypergraph, v: int, t: int) -> Hypergraph:
    """Clone one vertex t-fold.  v keeps its name, the t-1 new clones get
    names n, n+1, ...; no edge contains two clones of v afterwards."""
    if not 0 <= v < H.n:
        raise ValueError("vertex outside range(n)")
    if t < 1:
        raise ValueError("blow-up factor must be positive")
    copies = [v] + list(range(H.n, H.n + t - 1))
    edges: list[tuple[int, ...]] = []
    for e in H.edges:
        if v in e:
            rest = [u for u in e if u != v]
            edges.extend(tuple(rest + [c]) for c in copies)
        else:
            edges.append(e)
    return new_hypergraph(H.k, H.n + t - 1, edges)


# ---------------------------------------------------------------------------
# canonical labeling
#
# Plain individualization-refinement.  A leaf of the search tree is a
# discrete coloring, read as a labeling V -> {0..n-1}; the canonical form
# is the lexicographically least relabeled edge list over all leaves, and
# the leaves achieving it are exactly the |Aut(H)| labelings onto the
# canonical copy.  A node invariant (refined class sizes along the path)
# prunes branches that can no longer reach the best leaf.


@dataclass(frozen=True)
class CanonicalForm:
    """Canonically labeled copy of a hypergraph plus a content digest."""

    k: int
    n: int
    edges: tuple[tuple[int, ...], ...]
    digest: str


def _edges_by_vertex(n: int, edges) -> list[list[tuple[int, ...]]]:
    ebv: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            ebv[v].append(e)
    return ebv


def _refine(n, ebv, colors):
    # Iterated color refinement.  A vertex signature is its own color plus
    # the sorted multiset of incident edge color patterns; classes only
    # ever split, so stability is "class count did not grow".
    colors = tuple(colors)
    while True:
        sigs = []
        for v in range(n):
            prof = sorted(tuple(sorted(colors[u] for u in e)) for e in ebv[v])
            sigs.append((colors[v], tuple(prof)))
        remap = {s: c for c, s in enumerate(sorted(set(sigs)))}
        new = tuple(remap[s] for s in sigs)
        if len(remap) == len(set(colors)):
            return new
        colors = new


def _canonical_search(H: Hypergraph):
    """Return (canonical edge tuple, set of optimal labelings)."""
    n = H.n
    ebv = _edges_by_vertex(n, H.edges)
    best_code = None
    best_inv: list | None = None
    best_labelings: set[tuple[int, ...]] = set()
    path: list[tuple[int, ...]] = []

    def leaf_code(colors):
        return tuple(sorted(tuple(sorted(colors[u] for u in e)) for e in H.edges))

    def dfs(colors, depth):
        nonlocal best_code, best_inv, best_labelings
        colors = _refine(n, ebv, colors)
        hist = [0] * (max(colors) + 1)
        for c in colors:
            hist[c] += 1
        inv = tuple(hist)
        if best_inv is not None:
            # equal invariant prefixes reach leaves together, so the best
            # path always extends at least this deep
            assert depth < len(best_inv)
            if inv > best_inv[depth]:
                return
            if inv < best_inv[depth]:
                best_code = None
                best_inv = None
                best_labelings = set()
        path.append(inv)
        try:
            if len(hist) == n:
                code = leaf_code(colors)
                if best_code is None or code < best_code:
                    best_code = code
                    best_inv = list(path)
                    best_labelings = {colors}
                elif code == best_code:
                    best_labelings.add(colors)
                return
            target = next(c for c in range(len(hist)) if hist[c] > 1)
            cell = [v for v in range(n) if colors[v] == target]
            for v in cell:
                child = list(colors)
                child[v] = n  # fresh color, rekeyed by the next refine
                dfs(tuple(child), depth + 1)
        finally:
            path.pop()

    dfs((0,) * n, 0)
    assert best_code is not None
    return best_code, best_labelings


def _digest(k: int, n: int, edges) -> str:
    text = f"{k} {n} {len(edges)}\n" + "".join(
        " ".join(str(v) for v in e) + "\n" for e in edges
    )
    return hashlib.sha256(text.encode("ascii")).hexdigest()


@lru_cache(maxsize=None)
def _canonical_data(H: Hypergraph):
    if H.n == 0:
        return CanonicalForm(H.k, 0, (), _digest(H.k, 0, ())), ((),)
    code, labelings = _canonical_search(H)
    lams = sorted(labelings)
    lam0_inv = [0] * H.n
    for v, c in enumerate(lams[0]):
        lam0_inv[c] = v
    auts = tuple(tuple(lam0_inv[lam[v]] for v in range(H.n)) for lam in lams)
    return CanonicalForm(H.k, H.n, code, _digest(H.k, H.n, code)), auts


def canonical_form(H: Hypergraph) -> CanonicalForm:
    """Canonical relabeled copy; equal results iff the graphs are isomorphic."""
    return _canonical_data(H)[0]


def is_isomorphic(G: Hypergraph, H: Hypergraph) -> bool:
    if G.k != H.k or G.n != H.n or len(G.edges) != len(H.edges):
        return False
    if sorted(G.degrees) != sorted(H.degrees):
        return False
    return canonical_form(G).edges == canonical_form(H).edges


def automorphism_count(H: Hypergraph) -> int:
    return len(_canonical_data(H)[1])


def automorphisms(H: Hypergraph) -> list[tuple[int, ...]]:
    """All vertex automorphisms of H, as permutation tuples."""
    return list(_canonical_data(H)[1])


# ---------------------------------------------------------------------------
# rainbow colorings


def proper_coloring(H: Hypergraph, num_colors: int):
    """Strong coloring: no two vertices sharing an edge get equal colors,
    i.e. every edge is rainbow.  Returns a tuple of colors or None.

    Exact backtracking on the pair shadow; colors are introduced in
    increasing order so color permutations are not retried.
    """
    if num_colors < 0:
        raise ValueError("negative color count")
    adj: list[set[int]] = [set() for _ in range(H.n)]
    for u, w in H.pair_shadow:
        adj[u].add(w)
        adj[w].add(u)
    order = sorted(range(H.n), key=lambda v: -len(adj[v]))
    col = [-1] * H.n

    def place(i: int, used: int) -> bool:
        if i == H.n:
            return True
        v = order[i]
        taken = {col[u] for u in adj[v] if col[u] >= 0}
        for c in range(min(used + 1, num_colors)):
            if c in taken:
                continue
            col[v] = c
            if place(i + 1, max(used, c + 1)):
                return True
            col[v] = -1
        return False

    return tuple(col) if place(0, 0) else None


# ---------------------------------------------------------------------------
# serialization


def to_khg(H: Hypergraph) -> str:
    """Plain text format: a "k n m" header line, then m sorted edge lines."""
    lines = [f"{H.k} {H.n} {len(H.edges)}"]
    lines.extend(" ".join(str(v) for v in e) for e in H.edges)
    return "\n".join(lines) + "\n"


def _parse_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise ValueError(f"bad integer {s!r}") from None
    if str(v) != s:
        raise ValueError(f"bad integer {s!r}")
    return v


def from_khg(text: str) -> Hypergraph:
    """Strict parser for the to_khg format; valid text round-trips byte for
    byte, anything else (unsorted edges, padded numbers, missing final
    newline) is rejected."""
    lines = text.split("\n")
    if not lines or lines[-1] != "":
        raise ValueError("khg text must end with a newline")
    lines = lines[:-1]
    if not lines:
        raise ValueError("empty khg text")
    head = lines[0].split(" ")
    if len(head) != 3:
        raise ValueError(f"bad header {lines[0]!r}")
    k, n, m = (_parse_int(x) for x in head)
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split(" ")
        if len(parts) != k:
            raise ValueError(f"edge line {ln!r} does not have {k} vertices")
        e = tuple(_parse_int(x) for x in parts)
        if any(a >= b for a, b in zip(e, e[1:])):
            raise ValueError(f"edge line {ln!r} is not strictly increasing")
        edges.append(e)
    for a, b in zip(edges, edges[1:]):
        if a >= b:
            raise ValueError("edge lines out of order")
    return new_hypergraph(k, n, edges)


def to_json_obj(H: Hypergraph) -> dict:
    return {"k": H.k, "n": H.n, "edges": [list(e) for e in H.edges]}


def from_json_obj(obj) -> Hypergraph:
    return new_hypergraph(int(obj["k"]), int(obj["n"]), [tuple(e) for e in obj["edges"]])
