"""Constructors for the gadget families: ladders, zycles, glued variants,
expansions, the partite base construction, and hom-image families.

Every labeled constructor returns a LabeledGraph carrying the structural
coordinates (x[i], v[...], w[...], t[...]) alongside the plain Hypergraph,
plus the starting set of each ladder/zycle gadget.  Vertex numbering is
deterministic: shared x vertices first, then per-pair gadget vertices in
pair order.

Row/slot indices in labels are 1-based to match the usual coordinates;
pairs are enumerated in lexicographic order over {1..s}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from turanlab.hypercore import (
    Hypergraph,
    canonical_form,
    complete_kgraph,
    near_balanced_sizes,
    new_hypergraph,
)


# ---------------------------------------------------------------------------
# family specs and their string syntax


@dataclass(frozen=True)
class Ladder:
    k: int
    l: int

    def to_string(self) -> str:
        return f"L(k={self.k},l={self.l})"


@dataclass(frozen=True)
class Zycle:
    k: int
    l: int

    def to_string(self) -> str:
        return f"Z(k={self.k},l={self.l})"


@dataclass(frozen=True)
class LadderZycle:
    k: int
    m: int
    l: int

    def to_string(self) -> str:
        return f"LZ(k={self.k},m={self.m},l={self.l})"


@dataclass(frozen=True)
class Expansion:
    k: int
    s: int

    def to_string(self) -> str:
        return f"exp(k={self.k},s={self.s})"


@dataclass(frozen=True)
class GluedLadders:
    k: int
    s: int
    lengths: tuple[int, ...]

    def to_string(self) -> str:
        ls = set(self.lengths)
        body = str(self.lengths[0]) if len(ls) == 1 else ":".join(map(str, self.lengths))
        return f"GL(k={self.k},s={self.s},l={body})"


@dataclass(frozen=True)
class GluedLadderZycles:
    k: int
    s: int
    m: int
    l: int

    def to_string(self) -> str:
        return f"GLZ(k={self.k},s={self.s},m={self.m},l={self.l})"


@dataclass(frozen=True)
class BaseConstruction:
    k: int
    s: int
    n: int

    def to_string(self) -> str:
        return f"base(k={self.k},s={self.s},n={self.n})"


@dataclass(frozen=True)
class CompleteK:
    k: int
    n: int

    def to_string(self) -> str:
        return f"K(k={self.k},n={self.n})"


FamilySpec = (
    Ladder
    | Zycle
    | LadderZycle
    | Expansion
    | GluedLadders
    | GluedLadderZycles
    | BaseConstruction
    | CompleteK
)

_TAG_PARAMS = {
    "L": ("k", "l"),
    "Z": ("k", "l"),
    "LZ": ("k", "m", "l"),
    "exp": ("k", "s"),
    "GL": ("k", "s", "l"),
    "GLZ": ("k", "s", "m", "l"),
    "base": ("k", "s", "n"),
    "K": ("k", "n"),
}


class SpecParseError(ValueError):
    """Parse failure; carries the 0-based offset of the offending character."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_family_spec(text: str) -> FamilySpec:
    """Parse the CLI family syntax, e.g. GL(k=3,s=4,l=2) or GL(k=3,s=4,l=2:2:1).

    The grammar is tag(...)-style with named integer parameters; GL accepts
    either a scalar length (uniform ladders) or a colon-separated list with
    one entry per pair.  parse(to_string(spec)) == spec for every spec.
    """
    s = text.strip()
    open_at = s.find("(")
    if open_at <= 0:
        raise SpecParseError("expected TAG(...)", 0 if open_at < 0 else open_at)
    tag = s[:open_at]
    if tag not in _TAG_PARAMS:
        raise SpecParseError(f"unknown family tag {tag!r}", 0)
    if not s.endswith(")"):
        raise SpecParseError("expected closing ')'", len(s))
    body = s[open_at + 1 : -1]
    params: dict[str, object] = {}
    pos = open_at + 1
    for chunk in body.split(","):
        eq = chunk.find("=")
        if eq < 0:
            raise SpecParseError(f"expected name=value, got {chunk!r}", pos)
        name, value = chunk[:eq], chunk[eq + 1 :]
        if name not in _TAG_PARAMS[tag]:
            raise SpecParseError(f"unknown parameter {name!r} for {tag}", pos)
        if name in params:
            raise SpecParseError(f"duplicate parameter {name!r}", pos)
        try:
            if tag == "GL" and name == "l":
                params[name] = tuple(int(x) for x in value.split(":"))
            else:
                params[name] = int(value)
        except ValueError:
            raise SpecParseError(f"bad integer value {value!r}", pos + eq + 1) from None
        pos += len(chunk) + 1
    missing = [p for p in _TAG_PARAMS[tag] if p not in params]
    if missing:
        raise SpecParseError(f"missing parameter(s) {', '.join(missing)} for {tag}", len(s))

    if tag == "L":
        return Ladder(params["k"], params["l"])
    if tag == "Z":
        return Zycle(params["k"], params["l"])
    if tag == "LZ":
        return LadderZycle(params["k"], params["m"], params["l"])
    if tag == "exp":
        return Expansion(params["k"], params["s"])
    if tag == "GL":
        k, s_, lens = params["k"], params["s"], params["l"]
        if len(lens) == 1:
            lens = lens * math.comb(s_, 2)
        return GluedLadders(k, s_, lens)
    if tag == "GLZ":
        return GluedLadderZycles(params["k"], params["s"], params["m"], params["l"])
    if tag == "base":
        return BaseConstruction(params["k"], params["s"], params["n"])
    return CompleteK(params["k"], params["n"])


# ---------------------------------------------------------------------------
# labeled graphs


@dataclass(eq=False)
class LabeledGraph:
    """A Hypergraph plus the structural coordinates of its vertices.

    labels maps names like "x[2]", "v[1-3,2,1]", "t[1-2]" bijectively onto
    0..n-1.  starting_sets maps each gadget key (a pair (i,j) for glued
    families, 0 for single-gadget families) to its first row in slot order.
    """

    graph: Hypergraph
    labels: dict[str, int]
    starting_sets: dict = field(default_factory=dict)
    spec: object | None = None

    def vertex(self, name: str) -> int:
        return self.labels[name]

    def name_of(self, vertex: int) -> str:
        for name, v in self.labels.items():
            if v == vertex:
                return name
        raise KeyError(vertex)


def _check(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def pairs_of(s: int) -> list[tuple[int, int]]:
    """The C(s,2) pairs of {1..s} in lexicographic order."""
    return list(itertools.combinations(range(1, s + 1), 2))


def _ladder_edges(rows: list[tuple[int, ...]], terminal: int | None):
    """Edges of the ladder pattern over the given rows: row i together with
    each vertex of row i+1, and, if a terminal is given, the last row with
    the terminal."""
    edges = []
    for a, b in zip(rows, rows[1:]):
        for v in b:
            edges.append(a + (v,))
    if terminal is not None:
        edges.append(rows[-1] + (terminal,))
    return edges


def _cyclic_edges(rows: list[tuple[int, ...]]):
    """Edges of the zycle pattern: row i with each vertex of row i+1 mod l."""
    edges = []
    l = len(rows)
    for i in range(l):
        for v in rows[(i + 1) % l]:
            edges.append(rows[i] + (v,))
    return edges


def ladder(k: int, l: int) -> LabeledGraph:
    """Ladder of length l: l rows of k-1 fresh vertices plus a terminal."""
    _check(k >= 2, "uniformity must be at least 2")
    _check(l >= 1, "ladder length must be >= 1")
    rows = [tuple((p - 1) * (k - 1) + a for a in range(k - 1)) for p in range(1, l + 1)]
    t = l * (k - 1)
    labels = {f"v[{p},{a}]": rows[p - 1][a - 1] for p in range(1, l + 1) for a in range(1, k)}
    labels["t"] = t
    g = new_hypergraph(k, t + 1, _ladder_edges(rows, t))
    return LabeledGraph(g, labels, {0: rows[0]}, Ladder(k, l))


def zycle(k: int, l: int) -> LabeledGraph:
    """Zycle of length l: l rows indexed cyclically, no terminal."""
    _check(k >= 2, "uniformity must be at least 2")
    _check(l >= 2, "zycle length must be >= 2")
    rows = [tuple((p - 1) * (k - 1) + a for a in range(k - 1)) for p in range(1, l + 1)]
    labels = {f"v[{p},{a}]": rows[p - 1][a - 1] for p in range(1, l + 1) for a in range(1, k)}
    # ZZ/2 wraps both ways onto the same pair of rows; the definition is a
    # set union, so collapse coincidences rather than erroring
    edges = sorted(set(tuple(sorted(e)) for e in _cyclic_edges(rows)))
    g = new_hypergraph(k, l * (k - 1), edges)
    return LabeledGraph(g, labels, {0: rows[0]}, Zycle(k, l))


def ladder_zycle(k: int, m: int, l: int) -> LabeledGraph:
    """Ladder of length m whose last row is closed into a zycle of length l
    (the zycle's first row is the ladder's last row)."""
    _check(k >= 2, "uniformity must be at least 2")
    _check(m >= 1, "ladder length must be >= 1")
    _check(l >= 2, "zycle length must be >= 2")
    vrows = [tuple((p - 1) * (k - 1) + a for a in range(k - 1)) for p in range(1, m + 1)]
    wrows = [tuple((m + q - 2) * (k - 1) + a for a in range(k - 1)) for q in range(2, l + 1)]
    labels = {f"v[{p},{a}]": vrows[p - 1][a - 1] for p in range(1, m + 1) for a in range(1, k)}
    labels.update(
        {f"w[{q},{a}]": wrows[q - 2][a - 1] for q in range(2, l + 1) for a in range(1, k)}
    )
    edges = _ladder_edges(vrows, None) + _cyclic_edges([vrows[-1]] + wrows)
    edges = sorted(set(tuple(sorted(e)) for e in edges))
    g = new_hypergraph(k, (m + l - 1) * (k - 1), edges)
    return LabeledGraph(g, labels, {0: vrows[0]}, LadderZycle(k, m, l))


def expansion_complete(k: int, s: int) -> LabeledGraph:
    """The expansion of K_s: each pair of the s-set becomes a k-edge by
    adding k-2 fresh vertices."""
    _check(s > k, "expansion requires s > k")
    _check(k >= 2, "uniformity must be at least 2")
    labels = {f"x[{i}]": i - 1 for i in range(1, s + 1)}
    edges = []
    starting = {}
    nxt = s
    for (i, j) in pairs_of(s):
        fresh = tuple(range(nxt, nxt + k - 2))
        nxt += k - 2
        for c, v in enumerate(fresh, start=1):
            labels[f"y[{i}-{j},{c}]"] = v
        edges.append((i - 1, j - 1) + fresh)
        # mirror the GL(s,1) starting-set convention: k-3 fresh slots, then
        # x_i, x_j (for k=2 just x_j)
        if k >= 3:
            starting[(i, j)] = fresh[: k - 3] + (i - 1, j - 1)
        else:
            starting[(i, j)] = (j - 1,)
    g = new_hypergraph(k, s + math.comb(s, 2) * (k - 2), edges)
    return LabeledGraph(g, labels, starting, Expansion(k, s))


class _Alloc:
    """Sequential fresh-vertex allocator for the glued constructions."""

    def __init__(self, start: int):
        self.next = start

    def take(self, count: int) -> tuple[int, ...]:
        out = tuple(range(self.next, self.next + count))
        self.next += count
        return out


def _glued_first_row(k, i, j, alloc, labels, pair_key):
    """Row 1 of the pair (i,j) gadget: k-3 fresh slots, then x_i, x_j.
    For k=2 the single slot is x_j (x_i enters as the terminal in GL and
    not at all in GLZ)."""
    if k == 2:
        return (j - 1,)
    fresh = alloc.take(k - 3)
    for a, v in enumerate(fresh, start=1):
        labels[f"v[{pair_key},1,{a}]"] = v
    return fresh + (i - 1, j - 1)


def _glued_fresh_row(k, alloc, labels, pair_key, kind, p):
    row = alloc.take(k - 1)
    for a, v in enumerate(row, start=1):
        labels[f"{kind}[{pair_key},{p},{a}]"] = v
    return row


def glued_ladders(k: int, s: int, lengths) -> LabeledGraph:
    """An s-set X with a ladder of length lengths[r] glued onto the r-th
    pair of X (lexicographic pair order), ladders disjoint outside X.

    Row 1 of each pair's ladder holds x_i and x_j in its last two slots.
    Lengths must be non-increasing; reordering silently would desynchronize
    the pair labels, so anything else is rejected.
    """
    lengths = tuple(lengths)
    _check(s > k, "glued ladders require s > k")
    _check(len(lengths) == math.comb(s, 2), f"need exactly C({s},2) lengths")
    _check(all(l >= 1 for l in lengths), "ladder lengths must be >= 1")
    _check(
        all(a >= b for a, b in zip(lengths, lengths[1:])),
        "lengths must be non-increasing over the pair enumeration",
    )
    labels = {f"x[{i}]": i - 1 for i in range(1, s + 1)}
    alloc = _Alloc(s)
    edges = []
    starting = {}
    for r, (i, j) in enumerate(pairs_of(s)):
        key = f"{i}-{j}"
        rows = [_glued_first_row(k, i, j, alloc, labels, key)]
        for p in range(2, lengths[r] + 1):
            rows.append(_glued_fresh_row(k, alloc, labels, key, "v", p))
        if k >= 3:
            (term,) = alloc.take(1)
            labels[f"t[{key}]"] = term
        else:
            term = i - 1  # k=2: the path runs from x_j back into x_i
        starting[(i, j)] = rows[0]
        edges.extend(_ladder_edges(rows, term))
    g = new_hypergraph(k, alloc.next, edges)
    return LabeledGraph(g, labels, starting, GluedLadders(k, s, lengths))


def glued_ladder_zycles(k: int, s: int, m: int, l: int) -> LabeledGraph:
    """GL with every ladder's far end closed into a zycle: per pair, a
    ladder of length m sharing X as in glued_ladders, whose last row starts
    a zycle of length l.  No terminals."""
    _check(s > k, "glued ladder-zycles require s > k")
    _check(m >= 1, "ladder length must be >= 1")
    _check(l >= 2, "zycle length must be >= 2")
    labels = {f"x[{i}]": i - 1 for i in range(1, s + 1)}
    alloc = _Alloc(s)
    edges = []
    starting = {}
    for (i, j) in pairs_of(s):
        key = f"{i}-{j}"
        vrows = [_glued_first_row(k, i, j, alloc, labels, key)]
        for p in range(2, m + 1):
            vrows.append(_glued_fresh_row(k, alloc, labels, key, "v", p))
        wrows = [_glued_fresh_row(k, alloc, labels, key, "w", q) for q in range(2, l + 1)]
        starting[(i, j)] = vrows[0]
        edges.extend(_ladder_edges(vrows, None))
        edges.extend(_cyclic_edges([vrows[-1]] + wrows))
    edges = sorted(set(tuple(sorted(e)) for e in edges))
    g = new_hypergraph(k, alloc.next, edges)
    return LabeledGraph(g, labels, starting, GluedLadderZycles(k, s, m, l))


# ---------------------------------------------------------------------------
# extremal constructions


def _rainbow_edges(blocks: list[range], k: int):
    edges = []
    for picked in itertools.combinations(blocks, k):
        edges.extend(itertools.product(*picked))
    return edges


def base_construction(k: int, s: int, n: int) -> Hypergraph:
    """Balanced complete (s-1)-partite k-graph on [n] with a balanced
    complete k-partite k-graph added inside each partition class.

    Classes (and the inner subclasses) are consecutive blocks, larger
    blocks first.
    """
    _check(s > k, "requires s > k")
    _check(n >= s - 1, "need at least one vertex per class")
    sizes = near_balanced_sizes(n, s - 1)
    starts = [0]
    for sz in sizes:
        starts.append(starts[-1] + sz)
    blocks = [range(starts[i], starts[i + 1]) for i in range(s - 1)]
    edges = _rainbow_edges(blocks, k)
    for blk in blocks:
        inner_sizes = near_balanced_sizes(len(blk), k)
        inner_starts = [blk.start]
        for sz in inner_sizes:
            inner_starts.append(inner_starts[-1] + sz)
        inner = [range(inner_starts[i], inner_starts[i + 1]) for i in range(k)]
        edges.extend(_rainbow_edges(inner, k))
    return new_hypergraph(k, n, edges)


def base_edge_count(k: int, s: int, n: int) -> int:
    """Closed-form edge count of base_construction: rainbow products across
    the classes plus the inner k-partite products."""
    sizes = near_balanced_sizes(n, s - 1)
    total = 0
    for picked in itertools.combinations(sizes, k):
        total += math.prod(picked)
    for sz in sizes:
        total += math.prod(near_balanced_sizes(sz, k))
    return total


def add_kpartite_on(H: Hypergraph, vertices, k: int | None = None):
    """Add a complete balanced k-partite k-graph on the given vertex set.

    The set is sorted and split into k near-balanced consecutive parts
    (larger parts first); all rainbow k-sets are unioned into the edge set.
    Returns (augmented graph, parts).
    """
    if k is None:
        k = H.k
    _check(k == H.k, "partite uniformity must match the host")
    T = sorted(set(vertices))
    _check(all(0 <= v < H.n for v in T), "vertex outside range(n)")
    _check(len(T) >= k, f"need at least {k} vertices")
    sizes = near_balanced_sizes(len(T), k)
    parts = []
    at = 0
    for sz in sizes:
        parts.append(tuple(T[at : at + sz]))
        at += sz
    new_edges = set(H.edges)
    for combo in itertools.product(*parts):
        new_edges.add(tuple(sorted(combo)))
    return new_hypergraph(H.k, H.n, sorted(new_edges)), tuple(parts)


# ---------------------------------------------------------------------------
# hom-image families


def _valid_partitions(F: Hypergraph):
    """Restricted-growth enumeration of the partitions of V(F) in which no
    two vertices sharing an edge are merged."""
    conflict = [set() for _ in range(F.n)]
    for u, w in F.pair_shadow:
        conflict[u].add(w)
        conflict[w].add(u)
    blocks: list[set[int]] = []
    assign = [0] * F.n

    def rec(v: int):
        if v == F.n:
            yield tuple(assign)
            return
        for b, blk in enumerate(blocks):
            if conflict[v].isdisjoint(blk):
                assign[v] = b
                blk.add(v)
                yield from rec(v + 1)
                blk.remove(v)
        assign[v] = len(blocks)
        blocks.append({v})
        yield from rec(v + 1)
        blocks.pop()

    yield from rec(0)


def hom_image_family(F: Hypergraph, max_vertices: int = 12) -> list[Hypergraph]:
    """The minimal quotients of F under partitions that never merge two
    vertices of a common edge.

    A host contains a hom-image of F iff it contains one of these, so the
    non-minimal quotients (those containing another quotient as a
    subgraph) are dropped.  Members are returned canonically labeled,
    sorted by (n, m, edges).
    """
    from turanlab.morphisms import find_embedding

    if F.n > max_vertices:
        raise ValueError(
            f"partition enumeration over {F.n} vertices is not desk-scale "
            f"(limit {max_vertices})"
        )
    seen = {}
    for assign in _valid_partitions(F):
        nblocks = max(assign) + 1 if assign else 0
        edges = set(tuple(sorted(assign[v] for v in e)) for e in F.edges)
        q = new_hypergraph(F.k, nblocks, sorted(edges))
        cf = canonical_form(q)
        if cf.digest not in seen:
            seen[cf.digest] = Hypergraph(cf.k, cf.n, cf.edges)
    members = sorted(seen.values(), key=lambda g: (g.n, len(g.edges), g.edges))
    minimal = []
    for cand in members:
        if any(find_embedding(other, cand) is not None for other in members if other is not cand):
            continue
        minimal.append(cand)
    return minimal


# ---------------------------------------------------------------------------
# dispatch and row recovery


def build_labeled(spec: FamilySpec) -> LabeledGraph:
    """Construct the LabeledGraph for any FamilySpec."""
    if isinstance(spec, Ladder):
        return ladder(spec.k, spec.l)
    if isinstance(spec, Zycle):
        return zycle(spec.k, spec.l)
    if isinstance(spec, LadderZycle):
        return ladder_zycle(spec.k, spec.m, spec.l)
    if isinstance(spec, Expansion):
        return expansion_complete(spec.k, spec.s)
    if isinstance(spec, GluedLadders):
        return glued_ladders(spec.k, spec.s, spec.lengths)
    if isinstance(spec, GluedLadderZycles):
        return glued_ladder_zycles(spec.k, spec.s, spec.m, spec.l)
    if isinstance(spec, BaseConstruction):
        g = base_construction(spec.k, spec.s, spec.n)
        return LabeledGraph(g, {f"u[{v}]": v for v in range(g.n)}, {}, spec)
    if isinstance(spec, CompleteK):
        g = complete_kgraph(spec.k, spec.n)
        return LabeledGraph(g, {f"u[{v}]": v for v in range(g.n)}, {}, spec)
    raise TypeError(f"not a FamilySpec: {spec!r}")


def build_graph(spec: FamilySpec) -> Hypergraph:
    return build_labeled(spec).graph


def gadget_rows(lg: LabeledGraph, pair: tuple[int, int]):
    """Recover the ordered rows of one pair gadget of a GL or GLZ graph.

    Returns (v_rows, w_rows, terminal): v_rows are the ladder rows in slot
    order (row 1 containing the shared x vertices), w_rows the fresh zycle
    rows (empty for GL), terminal the t vertex or None.
    """
    spec = lg.spec
    i, j = pair
    key = f"{i}-{j}"
    k = spec.k
    if isinstance(spec, GluedLadders):
        length, zlen = spec.lengths[pairs_of(spec.s).index(pair)], 0
    elif isinstance(spec, GluedLadderZycles):
        length, zlen = spec.m, spec.l
    else:
        raise TypeError("rows are defined for GL/GLZ graphs only")
    vrows = [lg.starting_sets[pair]]
    for p in range(2, length + 1):
        vrows.append(tuple(lg.labels[f"v[{key},{p},{a}]"] for a in range(1, k)))
    wrows = [
        tuple(lg.labels[f"w[{key},{q},{a}]"] for a in range(1, k)) for q in range(2, zlen + 1)
    ]
    terminal = None
    if isinstance(spec, GluedLadders):
        terminal = lg.labels[f"t[{key}]"] if k >= 3 else lg.labels[f"x[{i}]"]
    return vrows, wrows, terminal
