"""Embedding and homomorphism search, copy counting, and the trace/zycle
pipeline that turns a long ladder inside a blow-up into a verified
homomorphism of a glued ladder-zycle graph into the base host.

Search outcomes are three-valued: a VertexMap, None (exhaustively absent),
or the UNKNOWN sentinel when a time limit expired first.  UNKNOWN refuses
to be used as a boolean so callers are forced to branch on all three.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache

from turanlab.hypercore import Hypergraph


class _Unknown:
    __slots__ = ()

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __bool__(self) -> bool:
        raise TypeError(
            "UNKNOWN is neither found nor absent; branch on all three outcomes"
        )


UNKNOWN = _Unknown()

_CHECK_EVERY = 2048


class _Deadline(Exception):
    """Internal: raised by the search loop when the time limit expires."""


@dataclass(frozen=True)
class VertexMap:
    """A verified map between two hypergraphs.

    kind is "emb" (globally injective) or "hom"; image[v] is the target
    vertex of source vertex v.  Every source edge maps onto a target edge,
    which forces injectivity within each edge either way.
    """

    kind: str
    source: Hypergraph
    target: Hypergraph
    image: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "image": list(self.image)}


def verify_homomorphism(F: Hypergraph, H: Hypergraph, phi) -> bool:
    """True iff phi maps every edge of F onto an edge of H (k distinct
    images).  phi may be a VertexMap or a plain indexable of length n."""
    image = phi.image if isinstance(phi, VertexMap) else tuple(phi)
    if len(image) != F.n:
        raise ValueError("map must be total on the source vertex set")
    if any(not 0 <= w < H.n for w in image):
        raise ValueError("image vertex outside the target range")
    for e in F.edges:
        img = tuple(sorted(image[v] for v in e))
        if len(set(img)) != F.k or img not in H.edge_set:
            return False
    return True


def verify_embedding(F: Hypergraph, H: Hypergraph, phi) -> bool:
    image = phi.image if isinstance(phi, VertexMap) else tuple(phi)
    return len(set(image)) == F.n and verify_homomorphism(F, H, image)


# ---------------------------------------------------------------------------
# backtracking engine


@lru_cache(maxsize=128)
def _completion_table(H: Hypergraph) -> dict:
    """For each (k-1)-subset of a host edge (as a sorted tuple), the bitmask
    of vertices completing it to an edge.  Drives forward checking."""
    table: dict[tuple[int, ...], int] = {}
    for e in H.edges:
        for idx in range(len(e)):
            key = e[:idx] + e[idx + 1 :]
            table[key] = table.get(key, 0) | (1 << e[idx])
    return table


def _static_order(F: Hypergraph, pinned: list[int]) -> list[int]:
    # pins first, then greedy connected expansion: always take the vertex
    # with the most already-ordered co-edge neighbours (ties: degree, index)
    nbrs = [set() for _ in range(F.n)]
    for u, w in F.pair_shadow:
        nbrs[u].add(w)
        nbrs[w].add(u)
    ordered = list(pinned)
    placed = set(ordered)
    rest = [v for v in range(F.n) if v not in placed]
    while rest:
        best = max(rest, key=lambda v: (len(placed & nbrs[v]), F.degrees[v], -v))
        ordered.append(best)
        placed.add(best)
        rest.remove(best)
    return ordered


def _search(F: Hypergraph, H: Hypergraph, kind: str, pin, deadline, mode: str = "first"):
    """Core backtracking search.

    Returns (result, nodes): result is an image tuple or None in "first"
    mode, an integer in "count" mode.  Raises _Deadline on expiry.
    """
    if F.k != H.k:
        raise ValueError(f"uniformity mismatch: pattern k={F.k}, host k={H.k}")
    pin = dict(pin or {})
    for v, w in pin.items():
        if not (0 <= v < F.n and 0 <= w < H.n):
            raise ValueError(f"pin {v}->{w} out of range")
    if kind == "emb" and len(set(pin.values())) != len(pin):
        raise ValueError("embedding pin is not injective")

    n = F.n
    if n == 0:
        return ((), 0) if mode == "first" else (1, 0)

    edges_at: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in F.edges:
        for v in e:
            edges_at[v].append(e)

    full = (1 << H.n) - 1
    domains = [full] * n
    if kind == "emb":
        for v in range(n):
            dv = F.degrees[v]
            m = 0
            for w in range(H.n):
                if H.degrees[w] >= dv:
                    m |= 1 << w
            domains[v] &= m
    for v, w in pin.items():
        domains[v] &= 1 << w

    table = _completion_table(H)
    edge_set = H.edge_set
    k = F.k
    order = _static_order(F, sorted(pin))
    assign = [-1] * n
    nodes = 0
    count = 0
    start = time.monotonic()

    def dfs(pos: int, doms: list[int], used: int, off: int):
        nonlocal nodes, count
        if pos == n:
            if mode == "count":
                count += 1
                return None
            return tuple(assign)
        v = order[pos]
        dom = doms[v]
        if kind == "emb":
            dom &= ~used
        # rotate value order to start just past the previous image: spreads
        # assignments across the host instead of packing low ids, which is
        # what keeps blow-up hosts from thrashing on class exhaustion
        low_bits = (1 << off) - 1
        for part in (dom & ~low_bits, dom & low_bits):
            dom = part
            while dom:
                w = (dom & -dom).bit_length() - 1
                dom &= dom - 1
                nodes += 1
                if deadline is not None and nodes % _CHECK_EVERY == 0:
                    if time.monotonic() - start > deadline:
                        raise _Deadline
                assign[v] = w
                child = list(doms)
                ok = True
                for e in edges_at[v]:
                    open_vs = [u for u in e if assign[u] < 0]
                    if not open_vs:
                        img = tuple(sorted(assign[u] for u in e))
                        if len(set(img)) != k or img not in edge_set:
                            ok = False
                            break
                    elif len(open_vs) == 1:
                        u = open_vs[0]
                        key = tuple(sorted(assign[x] for x in e if x is not u))
                        if len(set(key)) != k - 1:
                            ok = False
                            break
                        child[u] &= table.get(key, 0)
                        if child[u] == 0:
                            ok = False
                            break
                if ok:
                    hit = dfs(pos + 1, child, used | (1 << w), (w + 1) % H.n)
                    if hit is not None:
                        return hit
                assign[v] = -1
        return None

    res = dfs(0, domains, 0, 0)
    if mode == "count":
        return count, nodes
    return res, nodes


def _wrap(F, H, kind, pin, time_limit, label):
    try:
        image, _ = _search(F, H, kind, pin, time_limit)
    except _Deadline:
        return UNKNOWN
    if image is None:
        return None
    vm = VertexMap(kind, F, H, image)
    # paranoia: every returned map must re-verify
    assert verify_embedding(F, H, vm) if kind == "emb" else verify_homomorphism(F, H, vm), label
    return vm


def find_embedding(F: Hypergraph, H: Hypergraph, pin=None, time_limit=None):
    """Injective edge-preserving map of F into H extending pin, or None,
    or UNKNOWN on timeout.  Exact backtracking with forward checking."""
    if F.n > H.n or len(F.edges) > len(H.edges):
        return None
    return _wrap(F, H, "emb", pin, time_limit, "embedding failed re-verification")


def find_homomorphism(F: Hypergraph, H: Hypergraph, pin=None, time_limit=None):
    """Edge-preserving (not necessarily injective) map of F into H
    extending pin, or None, or UNKNOWN on timeout."""
    if F.edges and not H.edges:
        return None
    if F.n > 0 and H.n == 0:
        return None
    return _wrap(F, H, "hom", pin, time_limit, "homomorphism failed re-verification")


def contains_copy(H: Hypergraph, F: Hypergraph, time_limit=None):
    """Does the host H contain a copy of F?  Host argument first."""
    vm = find_embedding(F, H, time_limit=time_limit)
    if vm is UNKNOWN:
        return UNKNOWN
    return vm is not None


def is_free(H: Hypergraph, family, time_limit=None):
    """True iff no member of the family embeds into H.  UNKNOWN if some
    member's search timed out while no other member was found."""
    sure = True
    for F in family:
        hit = contains_copy(H, F, time_limit=time_limit)
        if hit is UNKNOWN:
            sure = False
        elif hit:
            return False
    return True if sure else UNKNOWN


def count_embeddings(H: Hypergraph, F: Hypergraph, time_limit=None):
    """Number of labeled (injective) embeddings of F into H."""
    if F.k != H.k:
        raise ValueError(f"uniformity mismatch: pattern k={F.k}, host k={H.k}")
    if F.n > H.n or len(F.edges) > len(H.edges):
        return 0
    try:
        cnt, _ = _search(F, H, "emb", None, time_limit, mode="count")
    except _Deadline:
        return UNKNOWN
    return cnt


# ---------------------------------------------------------------------------
# traces and zycle closing


@dataclass(frozen=True)
class RowTrace:
    """Projected ladder rows in a target graph.

    rows[i] is the image of ladder row i+1 in slot order; source_rows
    records the witnessing source row indices.  Consecutive rows must
    satisfy the ladder edge pattern in the target (checked by
    validate_row_trace, asserted by the pipeline).
    """

    target: Hypergraph
    rows: tuple[tuple[int, ...], ...]
    source_rows: tuple[int, ...]


def validate_row_trace(trace: RowTrace) -> bool:
    k = trace.target.k
    es = trace.target.edge_set
    for row in trace.rows:
        if len(set(row)) != k - 1:
            return False
    for a, b in zip(trace.rows, trace.rows[1:]):
        sa = set(a)
        for v in b:
            if v in sa or tuple(sorted(a + (v,))) not in es:
                return False
    return True


def close_zycle(trace: RowTrace, i_prime: int, i: int) -> VertexMap:
    """Close the trace segment between two set-equal rows into a verified
    zycle homomorphism.

    Rows are 0-indexed; requires set(rows[i_prime]) == set(rows[i]) with
    i - i_prime >= 2.  The resulting hom maps zycle row q slotwise onto
    trace row i_prime+q-1; its starting set lands on the common row set.
    """
    from turanlab.families import zycle

    rows = trace.rows
    if not 0 <= i_prime < i < len(rows):
        raise ValueError("need 0 <= i_prime < i < len(rows)")
    if set(rows[i_prime]) != set(rows[i]):
        raise ValueError(f"rows {i_prime} and {i} are not equal as sets")
    j = i - i_prime
    if j < 2:
        raise ValueError("zycles need length >= 2")
    k = trace.target.k
    Z = zycle(k, j).graph
    image = [0] * Z.n
    for q in range(j):
        for a in range(k - 1):
            image[q * (k - 1) + a] = rows[i_prime + q][a]
    vm = VertexMap("hom", Z, trace.target, tuple(image))
    if not verify_homomorphism(Z, trace.target, vm):
        raise ValueError("trace rows do not satisfy the ladder edge pattern")
    return vm


def _zycle_length(vm: VertexMap) -> int:
    from turanlab.families import zycle

    k = vm.source.k
    if vm.source.n % (k - 1) != 0:
        raise ValueError("source of the map is not a zycle")
    j = vm.source.n // (k - 1)
    if j < 2 or zycle(k, j).graph != vm.source:
        raise ValueError("source of the map is not a zycle")
    return j


def cycle_multiply(z: VertexMap, r: int) -> VertexMap:
    """Wind a zycle homomorphism of length j around its target r times,
    yielding a verified zycle hom of length j*r with the same starting
    set."""
    from turanlab.families import zycle

    if r < 1:
        raise ValueError("multiplier must be >= 1")
    j = _zycle_length(z)
    if r == 1:
        return z
    k = z.source.k
    Z = zycle(k, j * r).graph
    image = [0] * Z.n
    for q in range(j * r):
        for a in range(k - 1):
            image[q * (k - 1) + a] = z.image[(q % j) * (k - 1) + a]
    vm = VertexMap("hom", Z, z.target, tuple(image))
    assert verify_homomorphism(Z, z.target, vm), "cycled map failed verification"
    return vm


def lz_contraction_hom(k: int, j: int, j_prime: int, base_length: int) -> VertexMap:
    """Starting-set-preserving homomorphism from ladder_zycle(k, j', L) to
    ladder_zycle(k, j, L): surplus ladder rows wind into the zycle.

    Requires j <= j'.  Ladder row p maps to ladder row p while p <= j and
    to cycle position (p - j) mod L after that; zycle rows continue the
    walk.
    """
    from turanlab.families import ladder_zycle

    if not 1 <= j <= j_prime:
        raise ValueError("need 1 <= j <= j_prime")
    L = base_length
    src = ladder_zycle(k, j_prime, L)
    tgt = ladder_zycle(k, j, L)

    def tgt_row(pos: int) -> tuple[int, ...]:
        # position 0 of the target cycle is ladder row j (== zycle row 1)
        q = pos % L
        p = j if q == 0 else j + q  # w-row q+1 sits after the j ladder rows
        return tuple((p - 1) * (k - 1) + a for a in range(k - 1))

    image = [0] * src.graph.n
    for p in range(1, j_prime + 1):
        row = tgt_row(p - j) if p > j else tuple((p - 1) * (k - 1) + a for a in range(k - 1))
        for a in range(k - 1):
            image[(p - 1) * (k - 1) + a] = row[a]
    for q in range(2, L + 1):
        row = tgt_row(j_prime - j + q - 1)
        for a in range(k - 1):
            image[(j_prime + q - 2) * (k - 1) + a] = row[a]
    vm = VertexMap("hom", src.graph, tgt.graph, tuple(image))
    assert verify_homomorphism(src.graph, tgt.graph, vm), "contraction failed verification"
    assert [image[v] for v in src.starting_sets[0]] == list(tgt.starting_sets[0])
    return vm


# ---------------------------------------------------------------------------
# the blow-up / project / close pipeline


@dataclass
class GlzHomResult:
    """Everything the pipeline produced: the target GLZ graph, the verified
    homomorphism into the host, and the per-pair bookkeeping."""

    glz: object  # LabeledGraph
    hom: VertexMap
    ladder_len: int
    cycle_len: int
    pair_cycle_lengths: dict
    pair_repeats: dict
    pair_start_images: dict
    x_images: tuple
    embedding: VertexMap
    traces: dict


def assemble_glz_hom(H: Hypergraph, s: int, blow_factor: int, time_limit=None):
    """Run the full pipeline on a host H with t vertices.

    Embeds GL(k, s, [M]*C(s,2)) with M = C(t,k-1)+1 into the blow-up
    B(H, blow_factor), projects the ladder rows back to H by the class map
    f(v) = v // blow_factor, finds the pigeonhole row repeat of every pair,
    closes and cycles the resulting zycles to the least common multiple L
    of the per-pair cycle lengths, and assembles a verified homomorphism
    GLZ(k, s, M, L) -> H.  Returns None if the embedding step exhausts
    (host too sparse), UNKNOWN if it times out.
    """
    from turanlab import families
    from turanlab.hypercore import blow_up

    k, t = H.k, H.n
    if s <= k:
        raise ValueError("requires s > k")
    if blow_factor < 1:
        raise ValueError("blow-up factor must be positive")
    M = math.comb(t, k - 1) + 1
    gl = families.glued_ladders(k, s, [M] * math.comb(s, 2))
    big = blow_up(H, blow_factor)
    emb = find_embedding(gl.graph, big, time_limit=time_limit)
    if emb is UNKNOWN:
        return UNKNOWN
    if emb is None:
        return None

    def f(v: int) -> int:
        return v // blow_factor

    x_images = tuple(f(emb.image[gl.labels[f"x[{i}]"]]) for i in range(1, s + 1))
    traces = {}
    repeats = {}
    lengths = {}
    zycle_homs = {}
    for pair in families.pairs_of(s):
        vrows, _, _ = families.gadget_rows(gl, pair)
        rows = tuple(tuple(f(emb.image[u]) for u in row) for row in vrows)
        trace = RowTrace(H, rows, tuple(range(1, M + 1)))
        assert validate_row_trace(trace), "projected trace violates the ladder pattern"
        seen: dict[frozenset, int] = {}
        rep = None
        for idx, row in enumerate(rows):
            key = frozenset(row)
            if key in seen:
                rep = (seen[key], idx)
                break
            seen[key] = idx
        # M = C(t,k-1)+1 rows over C(t,k-1) possible sets: guaranteed
        assert rep is not None, "pigeonhole repeat missing"
        a, b = rep
        # consecutive projected rows differ as sets (the first vertex of the
        # next row completes the whole previous row to an edge), so the
        # closed cycle always has length >= 2
        assert b - a >= 2, "set-equal consecutive rows are impossible"
        traces[pair] = trace
        repeats[pair] = rep
        lengths[pair] = b - a
        zycle_homs[pair] = close_zycle(trace, a, b)

    L = math.lcm(*lengths.values())
    for pair, zh in zycle_homs.items():
        mul = cycle_multiply(zh, L // lengths[pair])
        assert _zycle_length(mul) == L

    glz = families.glued_ladder_zycles(k, s, M, L)
    image = [-1] * glz.graph.n
    for i in range(1, s + 1):
        image[glz.labels[f"x[{i}]"]] = x_images[i - 1]
    start_images = {}
    for pair in families.pairs_of(s):
        rows = traces[pair].rows
        a, b = repeats[pair]
        j = b - a
        vrows, wrows, _ = families.gadget_rows(glz, pair)

        def walk(pos: int) -> tuple[int, ...]:
            # the wrapped trace walk: honest rows up to a, then cycling
            # through rows a..b-1 forever
            return rows[pos] if pos <= a else rows[a + (pos - a) % j]

        for p, row in enumerate(vrows, start=1):
            img_row = walk(p - 1)
            for slot, v in enumerate(row):
                if image[v] >= 0 and image[v] != img_row[slot]:
                    raise AssertionError("inconsistent shared-vertex image")
                image[v] = img_row[slot]
        for q, row in enumerate(wrows, start=2):
            img_row = walk(M - 1 + q - 1)
            for slot, v in enumerate(row):
                image[v] = img_row[slot]
        start_images[pair] = frozenset(image[v] for v in glz.starting_sets[pair])
    assert all(v >= 0 for v in image), "pipeline left a vertex unmapped"
    hom = VertexMap("hom", glz.graph, H, tuple(image))
    assert verify_homomorphism(glz.graph, H, hom), "assembled map failed verification"
    return GlzHomResult(
        glz=glz,
        hom=hom,
        ladder_len=M,
        cycle_len=L,
        pair_cycle_lengths=lengths,
        pair_repeats=repeats,
        pair_start_images=start_images,
        x_images=x_images,
        embedding=emb,
        traces=traces,
    )
