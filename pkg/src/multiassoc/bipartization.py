"""Bipartization of polygon graphs, Ferrers diagrams and bipartite crossings.

A bipartite edge is a tuple ``(a, b)`` joining left vertex ``a`` to right
vertex ``b``.  The polygon edge ``{i, j}`` with ``i < j`` becomes
``(i, n + 1 - j)``.
"""
from dataclasses import dataclass
from itertools import combinations

from .polygon import ProblemInstance


@dataclass(frozen=True)
class FerrersDiagram:
    heights: tuple

    def __post_init__(self):
        h = tuple(self.heights)
        object.__setattr__(self, "heights", h)
        if (h and h[-1] < 1) or any(x < y for x, y in zip(h, h[1:])):
            raise ValueError("heights must be non-increasing and positive: %r" % (h,))

    @property
    def n1(self):
        return len(self.heights)

    @property
    def n2(self):
        return self.heights[0] if self.heights else 0

    def __contains__(self, cell):
        a, b = cell
        return 1 <= a <= self.n1 and 1 <= b <= self.heights[a - 1]

    def cells(self):
        return [(a, b) for a in range(1, self.n1 + 1) for b in range(1, self.heights[a - 1] + 1)]

    def __len__(self):
        return sum(self.heights)

    @classmethod
    def rectangle(cls, n1, n2):
        return cls((n2,) * n1)


@dataclass(frozen=True)
class BipartiteGraph:
    diagram: FerrersDiagram
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        bad = [e for e in self.edges if e not in self.diagram]
        if bad:
            raise ValueError("edges outside the diagram: %r" % sorted(bad))

    def sorted_edges(self):
        return sorted(self.edges)


def bipartize(E, n):
    out = set()
    for i, j in E:
        if i > j:
            i, j = j, i
        out.add((i, n + 1 - j))
    return out


def standard_ferrers(k, n):
    ProblemInstance(k, n)
    m = n - k - 1
    return FerrersDiagram(tuple(min(m, n - a) for a in range(1, m + 1)))


def reduce_bipartization(T):
    k, n = T.instance.k, T.instance.n
    S = standard_ferrers(k, n)
    m = n - k - 1
    E = {(a, b) for a, b in bipartize(T.edges, n) if a <= m and b <= m}
    return BipartiteGraph(S, frozenset(E))


def crosses(e1, e2):
    """Incomparable in the product order, listed as (smaller a, larger b) first."""
    (a1, b1), (a2, b2) = sorted([e1, e2])
    return a1 < a2 and b1 > b2


def find_bip_crossing(G, k, diagram=None):
    """Return a (k+1)-crossing of G (supremum inside the diagram) or None.

    A (k+1)-crossing is a chain ``a_1 < ... < a_{k+1}`` with
    ``b_1 > ... > b_{k+1}`` whose supremum ``(a_{k+1}, b_1)`` lies in S.
    """
    S = G.diagram if diagram is None else diagram
    E = sorted(G.edges) if isinstance(G, BipartiteGraph) else sorted(G)
    size = k + 1

    def rec(chain, rest):
        if len(chain) == size:
            return chain
        for idx, e in enumerate(rest):
            if len(chain) + len(rest) - idx < size:
                return None
            if (e[0], chain[0][1]) not in S:
                continue
            nxt = [f for f in rest[idx + 1:] if f[0] > e[0] and f[1] < e[1]]
            got = rec(chain + [e], nxt)
            if got:
                return got
        return None

    if size == 1:
        return [E[0]] if E else None
    for idx, e in enumerate(E):
        nxt = [f for f in E[idx + 1:] if f[0] > e[0] and f[1] < e[1]]
        got = rec([e], nxt)
        if got:
            return got
    return None


def jonsson_greedy(S, k):
    cells = {(a, b) for a, b in S.cells() if a <= k or b >= S.heights[a - 1] - k + 1}
    return BipartiteGraph(S, frozenset(cells))


def is_k_full(S, k):
    if S.n1 < k or S.n2 < k:
        return False
    return S.heights[k - 1] == S.n2 and S.heights[-1] >= k


def free_rank(n1, n2, k):
    """Size of every maximal (k+1)-free subset of a k-full diagram."""
    if min(n1, n2) <= k:
        return n1 * n2
    return k * (n1 + n2) - k * k


def maximal_free_sets(S, k):
    """All maximal (k+1)-free subsets of S by exhaustive backtracking."""
    cells = S.cells()
    out = []

    def addable(chosen, c):
        return find_bip_crossing(chosen + [c], k, diagram=S) is None

    def rec(p, chosen):
        if p == len(cells):
            if all(c in chosen or not addable(chosen, c) for c in cells):
                out.append(frozenset(chosen))
            return
        c = cells[p]
        if addable(chosen, c):
            rec(p + 1, chosen + [c])
            # leaving c out only pays off if later cells could still block it
            if not addable(chosen + cells[p + 1:], c):
                rec(p + 1, chosen)
        else:
            rec(p + 1, chosen)

    rec(0, [])
    return out


def is_free_bipartite(E, k, S):
    return find_bip_crossing(list(E), k, diagram=S) is None


def all_pairs_free(E, k, S):
    """Brute-force oracle: no (k+1) subset is a crossing with supremum in S."""
    E = sorted(E)
    for sub in combinations(E, k + 1):
        if all(crosses(x, y) for x, y in combinations(sub, 2)):
            sub = sorted(sub)
            if (sub[-1][0], sub[0][1]) in S:
                return False
    return True
