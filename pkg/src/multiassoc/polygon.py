"""k-triangulations of the n-gon: crossings, enumeration, flips and links.

Edges are plain tuples ``(i, j)`` with ``1 <= i < j <= n``.  Internally,
sets of relevant edges are encoded as bitmasks over the lexicographically
ordered relevant edges of an instance, which keeps enumeration cheap.
"""
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb


class NonRelevantEdge(ValueError):
    pass


class UniquenessViolation(RuntimeError):
    pass


class WrongInstance(ValueError):
    pass


RELEVANT, BOUNDARY, IRRELEVANT = "relevant", "boundary", "irrelevant"


def edge(i, j):
    """Normalize an unordered pair to ``(min, max)``."""
    if i == j:
        raise ValueError("loop edge %d-%d" % (i, j))
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class ProblemInstance:
    k: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.n < 2 * self.k + 1:
            raise WrongInstance("need k >= 1 and n >= 2k+1, got k=%d n=%d" % (self.k, self.n))

    def all_edges(self):
        return list(combinations(range(1, self.n + 1), 2))

    def length(self, e):
        d = e[1] - e[0]
        return min(d, self.n - d)

    def relevant_edges(self):
        return [e for e in self.all_edges() if self.length(e) > self.k]

    def short_edges(self):
        """Edges of length <= k; they lie in every k-triangulation."""
        return [e for e in self.all_edges() if self.length(e) <= self.k]

    @property
    def facet_size(self):
        return self.k * (2 * self.n - 2 * self.k - 1)

    @property
    def relevant_size(self):
        return self.k * (self.n - 2 * self.k - 1)


@dataclass(frozen=True)
class Multitriangulation:
    instance: ProblemInstance
    edges: frozenset

    @property
    def key(self):
        return tuple(sorted(self.edges))

    @property
    def relevant(self):
        inst = self.instance
        return sorted(e for e in self.edges if inst.length(e) > inst.k)

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        inst = self.instance
        rel = " ".join("%d-%d" % e for e in self.relevant)
        return "Multitriangulation(k=%d, n=%d, relevant=[%s])" % (inst.k, inst.n, rel)


def edges_cross(e1, e2):
    i, j = e1
    k, l = e2
    return i < k < j < l or k < i < l < j


def edge_class(e, inst):
    d = inst.length(e)
    if d > inst.k:
        return RELEVANT
    if d == inst.k:
        return BOUNDARY
    return IRRELEVANT


def _find_clique(cands, size, adj):
    """A pairwise crossing tuple of ``size`` items of ``cands`` or None."""
    if size == 0:
        return ()
    for idx, v in enumerate(cands):
        if len(cands) - idx < size:
            return None
        rest = [w for w in cands[idx + 1:] if w in adj[v]]
        sub = _find_clique(rest, size - 1, adj)
        if sub is not None:
            return (v,) + sub
    return None


def find_k1_crossing(E, k):
    """Return k+1 pairwise crossing edges of ``E``, or None if E is (k+1)-free."""
    E = sorted(set(E))
    adj = {e: {f for f in E if edges_cross(e, f)} for e in E}
    found = _find_clique(E, k + 1, adj)
    return None if found is None else set(found)


def is_free(E, k):
    return find_k1_crossing(E, k) is None


def is_k_triangulation(E, inst):
    """Check size, (k+1)-freeness and maximality independently."""
    E = set(E)
    if len(E) != inst.facet_size or not is_free(E, inst.k):
        return False
    return all(not is_free(E | {e}, inst.k) for e in inst.all_edges() if e not in E)


class RelevantIndex:
    """Bitmask encoding of the relevant edges of an instance."""

    def __init__(self, inst):
        self.inst = inst
        self.edges = inst.relevant_edges()
        self.pos = {e: p for p, e in enumerate(self.edges)}
        self.cross = [0] * len(self.edges)
        for p, e in enumerate(self.edges):
            for q, f in enumerate(self.edges):
                if edges_cross(e, f):
                    self.cross[p] |= 1 << q
        self.short = frozenset(inst.short_edges())

    def mask(self, E):
        m = 0
        for e in E:
            if e in self.pos:
                m |= 1 << self.pos[e]
        return m

    def unmask(self, m):
        out = []
        p = 0
        while m:
            if m & 1:
                out.append(self.edges[p])
            m >>= 1
            p += 1
        return out

    def has_clique(self, m, size):
        """Whether the set ``m`` contains ``size`` pairwise crossing edges."""
        if size == 0:
            return True
        if bin(m).count("1") < size:
            return False
        while m:
            low = m & -m
            p = low.bit_length() - 1
            m ^= low
            if self.has_clique(m & self.cross[p], size - 1):
                return True
            if bin(m).count("1") < size:
                return False
        return False

    def can_add(self, m, p):
        """Whether adding edge ``p`` to the (k+1)-free set ``m`` keeps it (k+1)-free."""
        return not self.has_clique(m & self.cross[p], self.inst.k)

    def triangulation(self, m):
        return Multitriangulation(self.inst, frozenset(self.short | set(self.unmask(m))))


@lru_cache(maxsize=None)
def relevant_index(inst):
    return RelevantIndex(inst)


def greedy_triangulation(inst):
    k, n = inst.k, inst.n
    E = set(inst.short_edges())
    E |= {(a, b) for a in range(1, k + 1) for b in range(k + 1, n + 1)}
    return Multitriangulation(inst, frozenset(E))


def _flip_mask(idx, m, p):
    """Flip relevant edge ``p`` out of facet mask ``m``; return (new mask, q)."""
    base = m & ~(1 << p)
    found = [q for q in range(len(idx.edges))
             if q != p and not (m >> q) & 1 and idx.can_add(base, q)]
    if len(found) != 1:
        raise UniquenessViolation("flip of %s found %d candidates" % (idx.edges[p], len(found)))
    q = found[0]
    return base | (1 << q), q


def flip(T, f):
    """Flip the relevant edge ``f`` of ``T``; return (new triangulation, new edge)."""
    inst = T.instance
    f = edge(*f)
    if f not in T.edges:
        raise ValueError("edge %s not in triangulation" % (f,))
    if edge_class(f, inst) != RELEVANT:
        raise NonRelevantEdge("edge %s is not relevant" % (f,))
    idx = relevant_index(inst)
    m, q = _flip_mask(idx, idx.mask(T.edges), idx.pos[f])
    return idx.triangulation(m), idx.edges[q]


def _backtrack_masks(idx):
    target = idx.inst.relevant_size
    total = len(idx.edges)
    out = []

    def rec(p, m, count):
        if count == target:
            out.append(m)
            return
        if total - p < target - count:
            return
        if idx.can_add(m, p):
            rec(p + 1, m | (1 << p), count + 1)
        rec(p + 1, m, count)

    rec(0, 0, 0)
    return out


class FlipGraph:
    """Facets (as masks) plus the flip map ``(facet, edge) -> (facet, edge)``."""

    def __init__(self, inst):
        self.inst = inst
        self.idx = relevant_index(inst)
        start = self.idx.mask(greedy_triangulation(inst).edges)
        seen = {start}
        queue = deque([start])
        flips = {}
        while queue:
            m = queue.popleft()
            for p in _positions(m):
                if (m, p) in flips:
                    continue
                m2, q = _flip_mask(self.idx, m, p)
                flips[(m, p)] = (m2, q)
                flips[(m2, q)] = (m, p)
                if m2 not in seen:
                    seen.add(m2)
                    queue.append(m2)
        self.masks = sorted(seen, key=lambda m: self.idx.triangulation(m).key)
        self.number = {m: i for i, m in enumerate(self.masks)}
        self._flips = flips

    def __len__(self):
        return len(self.masks)

    def facet(self, i):
        return self.idx.triangulation(self.masks[i])

    def relevant_positions(self, i):
        return _positions(self.masks[i])

    def partner(self, i, p):
        """Flip relevant edge position ``p`` of facet ``i``: (facet index, new position)."""
        m2, q = self._flips[(self.masks[i], p)]
        return self.number[m2], q

    def flips(self):
        """Each flip once, as (i, p, j, q) with i < j."""
        out = []
        for i, m in enumerate(self.masks):
            for p in _positions(m):
                j, q = self.partner(i, p)
                if i < j:
                    out.append((i, p, j, q))
        return out


def _positions(m):
    out = []
    p = 0
    while m:
        if m & 1:
            out.append(p)
        m >>= 1
        p += 1
    return out


@lru_cache(maxsize=None)
def flip_graph(inst):
    return FlipGraph(inst)


def enumerate_triangulations(inst, method="flip_bfs"):
    """All k-triangulations, sorted by their sorted edge lists."""
    idx = relevant_index(inst)
    if method == "backtrack":
        masks = _backtrack_masks(idx)
    elif method == "flip_bfs":
        masks = flip_graph(inst).masks
    else:
        raise ValueError("unknown method %r" % (method,))
    return sorted(idx.triangulation(m) for m in masks)


def brute_force_triangulations(inst):
    """Every k-triangulation by testing all relevant-edge subsets of the right size."""
    short = frozenset(inst.short_edges())
    out = []
    for sub in combinations(inst.relevant_edges(), inst.relevant_size):
        E = short | frozenset(sub)
        if is_k_triangulation(E, inst):
            out.append(Multitriangulation(inst, E))
    return sorted(out)


def catalan(m):
    return comb(2 * m, m) // (m + 1)


def hankel_count(k, n):
    """Number of k-triangulations of the n-gon: det of (C_{n-i-j}) over i, j in [k]."""
    M = [[catalan(n - i - j) for j in range(1, k + 1)] for i in range(1, k + 1)]
    total = 0
    for perm in permutations(range(k)):
        inv = sum(1 for a, b in combinations(perm, 2) if a > b)
        term = -1 if inv % 2 else 1
        for i, j in enumerate(perm):
            term *= M[i][j]
        total += term
    return total


def link_cycle(T, f1, f2):
    """The link of ``T - {f1, f2}`` as the cyclic list of free-position pairs."""
    inst = T.instance
    idx = relevant_index(inst)
    f1, f2 = edge(*f1), edge(*f2)
    for f in (f1, f2):
        if f not in T.edges:
            raise ValueError("edge %s not in triangulation" % (f,))
        if edge_class(f, inst) != RELEVANT:
            raise NonRelevantEdge("edge %s is not relevant" % (f,))
    rho = idx.mask(T.edges) & ~(1 << idx.pos[f1]) & ~(1 << idx.pos[f2])
    z = [idx.pos[f1], idx.pos[f2]]
    while True:
        a, b = z[-2], z[-1]
        _, c = _flip_mask(idx, rho | (1 << a) | (1 << b), a)
        if c == z[0]:
            break
        z.append(c)
        if len(z) > 5:
            raise UniquenessViolation("link of length > 5")
    return [(idx.edges[z[i]], idx.edges[z[(i + 1) % len(z)]]) for i in range(len(z))]


def octahedral_triangulations(inst):
    """At n = 2k+3: complete graph minus three pairwise disjoint relevant edges."""
    if inst.n != 2 * inst.k + 3:
        raise WrongInstance("octahedral triangulations need n = 2k+3")
    everything = set(inst.all_edges())
    out = []
    for triple in combinations(inst.relevant_edges(), 3):
        if len({v for e in triple for v in e}) < 6:
            continue
        E = everything - set(triple)
        if is_free(E, inst.k):
            out.append((Multitriangulation(inst, frozenset(E)), triple))
    return out
