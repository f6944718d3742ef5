"""k-partite digraphs, rainbow cycles, the constructive finder, and oracles.

Parts and per-part vertex ids are 0-based throughout the library; only the
pair index ``sigma`` keeps the 1-based convention of its defining formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    InternalInvariantError,
    InvalidInputError,
    ResourceLimitError,
    UnsupportedInputError,
)


@dataclass(frozen=True)
class KPartiteDigraph:
    """Digraph whose vertices (i, x) are grouped into parts; no intra-part edges."""

    part_sizes: tuple
    edges: frozenset  # of (i, x, j, y) quadruples

    def __post_init__(self):
        for size in self.part_sizes:
            if size < 0:
                raise InvalidInputError("negative part size")
        k = len(self.part_sizes)
        for i, x, j, y in self.edges:
            if i == j:
                raise InvalidInputError(f"intra-part edge in part {i}")
            if not (0 <= i < k and 0 <= j < k):
                raise InvalidInputError("edge references unknown part")
            if not (0 <= x < self.part_sizes[i] and 0 <= y < self.part_sizes[j]):
                raise InvalidInputError("edge references unknown vertex")

    @property
    def num_parts(self) -> int:
        return len(self.part_sizes)

    def has_edge(self, i: int, x: int, j: int, y: int) -> bool:
        return (i, x, j, y) in self.edges

    def vertices(self):
        for i, size in enumerate(self.part_sizes):
            for x in range(size):
                yield (i, x)


@dataclass(frozen=True)
class RainbowCycle:
    """Cyclic vertex sequence; validity is checked by verify_rainbow_cycle."""

    vertices: tuple  # of (part, vertex-id) pairs


def sigma(d: int, a: int, b: int) -> int:
    """1-based lexicographic index (a-1)*d + b of the pair (a, b) in [d]x[d]."""
    if d < 1 or not (1 <= a <= d and 1 <= b <= d):
        raise InvalidInputError(f"sigma arguments out of range: d={d}, a={a}, b={b}")
    return (a - 1) * d + b


def representative_set(vectors) -> set:
    """Indices of a subfamily covering exactly the covered coordinates.

    For each coordinate in ascending order, the lowest-indexed vector with a
    one there is selected.  The result has at most dimension-many members.
    """
    vectors = list(vectors)
    if not vectors:
        return set()
    r = len(vectors[0])
    chosen = set()
    for coord in range(r):
        for idx, vec in enumerate(vectors):
            if vec[coord]:
                chosen.add(idx)
                break
    return chosen


def verify_cover_condition(g: KPartiteDigraph) -> bool:
    """Every vertex has an incoming edge from every other part."""
    k = g.num_parts
    covered = {(i, y): set() for i, y in g.vertices()}
    for i, _x, j, y in g.edges:
        covered[(j, y)].add(i)
    for (i, y), froms in covered.items():
        if len(froms) < k - 1:
            return False
    return True


def verify_rainbow_cycle(g: KPartiteDigraph, cycle: RainbowCycle) -> bool:
    """All consecutive pairs (cyclically) are edges and all parts distinct."""
    verts = cycle.vertices
    if len(verts) < 2:
        return False
    parts = [p for p, _ in verts]
    if len(set(parts)) != len(parts):
        return False
    for idx, (i, x) in enumerate(verts):
        j, y = verts[(idx + 1) % len(verts)]
        if not (0 <= i < g.num_parts and 0 <= x < g.part_sizes[i]):
            return False
        if (i, x, j, y) not in g.edges:
            return False
    return True


def _two_hop_vectors(g: KPartiteDigraph, d: int):
    """bits[(i,j,ell)] = {x*d+y : path (i,x)->(ell,z)->(j,y)}, witness z kept.

    Only pairs (i, j) over the first d parts and middle parts ell >= d are
    needed; each set bit remembers the lowest witnessing middle vertex.
    """
    k = g.num_parts
    into = {(i, y): [] for i, y in g.vertices()}  # incoming (part, x) per vertex
    outof = {(i, x): [] for i, x in g.vertices()}
    for i, x, j, y in sorted(g.edges):
        into[(j, y)].append((i, x))
        outof[(i, x)].append((j, y))

    bits = {}
    witness = {}
    for ell in range(d, k):
        heads = [[] for _ in range(d)]  # heads[i] = [(x, z)] with edge (i,x)->(ell,z)
        tails = [[] for _ in range(d)]  # tails[j] = [(z, y)] with edge (ell,z)->(j,y)
        for z in range(g.part_sizes[ell]):
            for (i, x) in into[(ell, z)]:
                if i < d:
                    heads[i].append((x, z))
            for (j, y) in outof[(ell, z)]:
                if j < d:
                    tails[j].append((z, y))
        for i in range(d):
            for j in range(d):
                vec = 0
                wit = {}
                for x, z in heads[i]:
                    for z2, y in tails[j]:
                        if z2 != z:
                            continue
                        bit = x * d + y
                        if bit not in wit:
                            wit[bit] = z
                        vec |= 1 << bit
                bits[(i, j, ell)] = vec
                witness[(i, j, ell)] = wit
    return bits, witness


def find_rainbow_cycle(g: KPartiteDigraph, d: int) -> RainbowCycle:
    """Constructive rainbow-cycle finder for k > d^4 + d parts of size <= d.

    Phases: two-hop path vectors through every candidate middle part;
    representative sets per ordered pair of leading parts, shrinking the
    candidate set; backward trace through the smallest surviving part;
    pigeonhole repeat; bypass of every middle-part visit through pairwise
    distinct representative parts.
    """
    if d < 1:
        raise InvalidInputError("d must be positive")
    k = g.num_parts
    if any(not 1 <= size <= d for size in g.part_sizes):
        raise InvalidInputError("every part must have between 1 and d vertices")
    if k <= d ** 4 + d:
        raise InvalidInputError(f"need more than d^4 + d = {d ** 4 + d} parts, got {k}")
    if not verify_cover_condition(g):
        raise InvalidInputError("cover condition does not hold")

    bits, witness = _two_hop_vectors(g, d)

    # Representative sets in ascending pair order; cover_by[(i, j)] maps each
    # coordinate to the part chosen for it (lowest candidate first).
    candidates = list(range(d, k))
    cover_by = {}
    removed_total = 0
    for i in range(d):
        for j in range(d):
            chosen = {}
            members = set()
            for bit in range(d * d):
                for ell in candidates:
                    if bits[(i, j, ell)] >> bit & 1:
                        chosen[bit] = ell
                        members.add(ell)
                        break
            cover_by[(i, j)] = chosen
            candidates = [ell for ell in candidates if ell not in members]
            removed_total += len(members)
    if not candidates or removed_total > d ** 4:
        raise InternalInvariantError("surviving-part accounting failed")
    ell_t = candidates[0]

    # Backward trace: w[d] is the first vertex of the surviving part; each
    # round picks the lowest-id incoming vertex, alternating V_p and V_ell_t.
    into = {}
    for i, x, j, y in sorted(g.edges):
        into.setdefault((j, y), []).append((i, x))
    w = [None] * (d + 1)
    v = [None] * (d + 1)  # v[p] lives in part p-1
    w[d] = 0
    for p in range(d, 0, -1):
        v[p] = next(x for (i, x) in into[(ell_t, w[p])] if i == p - 1)
        w[p - 1] = next(z for (i, z) in into[(p - 1, v[p])] if i == ell_t)

    lo, hi = next(
        (i, j)
        for i in range(d + 1)
        for j in range(i + 1, d + 1)
        if w[i] == w[j]
    )

    # Bypass each middle-part visit: segment positions lo+1..hi, successor of
    # hi wraps to lo+1.  The representative part covering the (v_q, v_succ)
    # coordinate supplies the stored witness vertex.
    positions = list(range(lo + 1, hi + 1))
    out = []
    used_bypass = set()
    for idx, q in enumerate(positions):
        succ = positions[(idx + 1) % len(positions)]
        bit = v[q] * d + v[succ]
        part_q, part_s = q - 1, succ - 1
        if not bits[(part_q, part_s, ell_t)] >> bit & 1:
            raise InternalInvariantError("traced subpath missing from path vectors")
        ell_q = cover_by[(part_q, part_s)].get(bit)
        if ell_q is None:
            raise InternalInvariantError("representative cover missing a coordinate")
        y_q = witness[(part_q, part_s, ell_q)][bit]
        if ell_q in used_bypass:
            raise InternalInvariantError("bypass parts are not distinct")
        used_bypass.add(ell_q)
        out.append((part_q, v[q]))
        out.append((ell_q, y_q))
    return RainbowCycle(tuple(out))


def brute_force_rainbow_cycle(g: KPartiteDigraph, max_parts: int = None, budget: int = 10 ** 7):
    """Exhaustive search for a rainbow cycle; exact, for small graphs.

    Explores simple paths with pairwise-distinct parts by DFS from every
    vertex in lexicographic order, up to max_parts vertices per cycle.
    Returns the first valid cycle found or None when none exists.
    """
    if max_parts is None:
        max_parts = g.num_parts
    adj = {}
    for i, x, j, y in sorted(g.edges):
        adj.setdefault((i, x), []).append((j, y))
    steps = 0
    for start in g.vertices():
        stack = [(start, [start], {start[0]})]
        while stack:
            node, path, parts = stack.pop()
            steps += 1
            if steps > budget:
                raise ResourceLimitError("rainbow-cycle search budget exceeded")
            for nxt in reversed(adj.get(node, [])):
                if nxt == start and len(path) >= 2:
                    return RainbowCycle(tuple(path))
                # restrict to starts not yet expanded to avoid duplicates
                if nxt[0] in parts or nxt < start:
                    continue
                if len(path) < max_parts:
                    stack.append((nxt, path + [nxt], parts | {nxt[0]}))
    return None


def lower_bound_graph(d: int) -> KPartiteDigraph:
    """d parts of d vertices with the cover condition and no rainbow cycle.

    For parts i < j and every ell: edges (i,ell) -> (j,ell) and
    (j,ell) -> (i,(ell+1) mod d).
    """
    if d < 1:
        raise InvalidInputError("d must be positive")
    edges = set()
    for i in range(d):
        for j in range(i + 1, d):
            for ell in range(d):
                edges.add((i, ell, j, ell))
                edges.add((j, ell, i, (ell + 1) % d))
    return KPartiteDigraph(tuple([d] * d), frozenset(edges))


def _pair_configs(size_from: int, size_to: int):
    """All one-direction bipartite edge sets giving every target an in-edge.

    Each config is a tuple of source-bitmasks, one per target vertex; every
    mask is nonzero (the cover condition for this ordered pair of parts).
    """
    masks = range(1, 1 << size_from)
    return list(product(masks, repeat=size_to))


def _has_small_rainbow_cycle(fwd, bwd) -> bool:
    """2-cycle test between two parts given both direction mask tuples."""
    for y, mask in enumerate(fwd):
        for x in range(mask.bit_length()):
            if mask >> x & 1 and bwd[x] >> y & 1:
                return True
    return False


def brute_force_rainbow_number(d: int) -> int:
    """Exhaustively confirm the largest cycle-free part count for d in {1, 2}.

    Enumerates every (d+1)-part digraph with nonempty parts of size <= d that
    satisfies the cover condition, verifies each contains a rainbow cycle,
    and checks the d-part lower-bound construction admits none.
    """
    if d not in (1, 2):
        raise UnsupportedInputError("exhaustive enumeration supported for d in {1, 2} only")

    witness = lower_bound_graph(d)
    if not verify_cover_condition(witness):
        raise InternalInvariantError("lower-bound construction lost the cover condition")
    if brute_force_rainbow_cycle(witness) is not None:
        raise InternalInvariantError("lower-bound construction contains a rainbow cycle")

    if d == 1:
        # Two singleton parts: the cover condition forces both cross edges,
        # and they form a 2-cycle, which is rainbow.
        g = KPartiteDigraph((1, 1), frozenset({(0, 0, 1, 0), (1, 0, 0, 0)}))
        if brute_force_rainbow_cycle(g) is None:
            raise InternalInvariantError("forced 2-cycle not found")
        return 1

    # d = 2, k = 3.  A graph avoids rainbow cycles iff it has no 2-cycle
    # between any pair of parts and no 3-cycle through all three.  Any pair
    # config containing a 2-cycle lets us skip all extensions at once.
    for sizes in product((1, 2), repeat=3):
        s0, s1, s2 = sizes
        for f01 in _pair_configs(s0, s1):
            for b01 in _pair_configs(s1, s0):
                if _has_small_rainbow_cycle(f01, b01):
                    continue
                for f02 in _pair_configs(s0, s2):
                    for b02 in _pair_configs(s2, s0):
                        if _has_small_rainbow_cycle(f02, b02):
                            continue
                        for f12 in _pair_configs(s1, s2):
                            for b12 in _pair_configs(s2, s1):
                                if _has_small_rainbow_cycle(f12, b12):
                                    continue
                                if not _has_three_cycle(
                                    sizes, f01, b01, f02, b02, f12, b12
                                ):
                                    raise InternalInvariantError(
                                        "cover-condition graph without rainbow cycle at k = 3"
                                    )
    return 2


def _has_three_cycle(sizes, f01, b01, f02, b02, f12, b12) -> bool:
    """Any directed triangle visiting all three parts once.

    Masks are target-indexed: f01[y] has bit x set iff edge (0,x) -> (1,y).
    """
    s0, s1, s2 = sizes
    for x in range(s0):
        for y in range(s1):
            if not f01[y] >> x & 1:
                continue
            for z in range(s2):
                # orientation 0 -> 1 -> 2 -> 0
                if f12[z] >> y & 1 and b02[x] >> z & 1:
                    return True
    for x in range(s0):
        for z in range(s2):
            if not f02[z] >> x & 1:
                continue
            for y in range(s1):
                # orientation 0 -> 2 -> 1 -> 0
                if b12[y] >> z & 1 and b01[x] >> y & 1:
                    return True
    return False
