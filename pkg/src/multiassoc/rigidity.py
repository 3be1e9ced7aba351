"""Hyperconnectivity, polynomial and bar-and-joint rigidity matrices.

Bipartite rows follow one fixed convention: the row of edge ``(a, b)`` has
``moment(t'_b)`` in the columns of left vertex ``a`` and ``-moment(t_a)`` in
the columns of right vertex ``b``.  Flipping the sign of one side's columns
does not change row dependences, so any sign statement below is independent
of that choice.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .bipartization import BipartiteGraph
from .exact_linalg import RationalMatrix, SignedDependence, unique_dependence, rank


class DegenerateConfiguration(ValueError):
    pass


@dataclass(frozen=True)
class ParameterConfig:
    left: tuple
    right: tuple
    d: int

    def __post_init__(self):
        left = tuple(Fraction(x) for x in self.left)
        right = tuple(Fraction(x) for x in self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        for side in (left, right):
            if any(x >= y for x, y in zip(side, side[1:])):
                raise ValueError("parameters must be strictly increasing: %r" % (side,))
        if self.d < 1:
            raise ValueError("dimension must be positive")

    @property
    def n1(self):
        return len(self.left)

    @property
    def n2(self):
        return len(self.right)

    def restrict(self, left_idx, right_idx, d=None):
        """Keep the 1-based parameter positions listed on each side."""
        return ParameterConfig(tuple(self.left[a - 1] for a in left_idx),
                               tuple(self.right[b - 1] for b in right_idx),
                               self.d if d is None else d)

    def swapped(self):
        return ParameterConfig(self.right, self.left, self.d)

    def to_json(self):
        return {"d": self.d, "left": [str(x) for x in self.left], "right": [str(x) for x in self.right]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Fraction(x) for x in data["left"]),
                   tuple(Fraction(x) for x in data["right"]), int(data["d"]))


def moment_point(t, d):
    t = Fraction(t)
    return tuple(t ** e for e in range(d))


def shifted_moment_point(t, d):
    """``(t, t^2, ..., t^d)``, the bar-and-joint counterpart of the moment curve."""
    t = Fraction(t)
    return tuple(t ** e for e in range(1, d + 1))


def _as_points(points):
    if isinstance(points, dict):
        return {v: tuple(Fraction(x) for x in p) for v, p in points.items()}
    return {i + 1: tuple(Fraction(x) for x in p) for i, p in enumerate(points)}


def hyper_matrix(points, E):
    """Hyperconnectivity matrix: row ``{i,j}`` has ``p_j`` at ``i`` and ``-p_i`` at ``j``."""
    pts = _as_points(points)
    verts = sorted(pts)
    d = len(pts[verts[0]])
    col = {v: n * d for n, v in enumerate(verts)}
    rows, labels = [], []
    for i, j in sorted(tuple(sorted(e)) for e in E):
        row = [Fraction(0)] * (d * len(verts))
        for c in range(d):
            row[col[i] + c] = pts[j][c]
            row[col[j] + c] = -pts[i][c]
        rows.append(row)
        labels.append((i, j))
    return RationalMatrix(rows, labels, [(v, c) for v in verts for c in range(d)])


def bar_joint_matrix(points, E):
    """Bar-and-joint matrix: row ``{i,j}`` has ``p_i - p_j`` at ``i`` and ``p_j - p_i`` at ``j``."""
    pts = _as_points(points)
    verts = sorted(pts)
    d = len(pts[verts[0]])
    col = {v: n * d for n, v in enumerate(verts)}
    rows, labels = [], []
    for i, j in sorted(tuple(sorted(e)) for e in E):
        row = [Fraction(0)] * (d * len(verts))
        for c in range(d):
            row[col[i] + c] = pts[i][c] - pts[j][c]
            row[col[j] + c] = pts[j][c] - pts[i][c]
        rows.append(row)
        labels.append((i, j))
    return RationalMatrix(rows, labels, [(v, c) for v in verts for c in range(d)])


def bipartite_rows(cfg, edges):
    """Plain list of bipartite polynomial rigidity rows, in the given edge order."""
    d, n1, n2 = cfg.d, cfg.n1, cfg.n2
    left = [moment_point(t, d) for t in cfg.left]
    right = [moment_point(t, d) for t in cfg.right]
    width = d * (n1 + n2)
    rows = []
    for a, b in edges:
        row = [0] * width
        pa, pb = left[a - 1], right[b - 1]
        base_a, base_b = (a - 1) * d, (n1 + b - 1) * d
        for c in range(d):
            row[base_a + c] = pb[c]
            row[base_b + c] = -pa[c]
        rows.append(row)
    return rows


def bipartite_hyper_matrix(cfg, G):
    edges = G.sorted_edges() if isinstance(G, BipartiteGraph) else sorted(G)
    for a, b in edges:
        if not (1 <= a <= cfg.n1 and 1 <= b <= cfg.n2):
            raise ValueError("edge %r outside the configuration" % ((a, b),))
    cols = [("L", a, c) for a in range(1, cfg.n1 + 1) for c in range(cfg.d)]
    cols += [("R", b, c) for b in range(1, cfg.n2 + 1) for c in range(cfg.d)]
    return RationalMatrix(bipartite_rows(cfg, edges), edges, cols)


def bipartite_points_hyper_matrix(left, right, edges):
    """Bipartite hyperconnectivity matrix for arbitrary point vectors on each side."""
    left = [tuple(Fraction(x) for x in p) for p in left]
    right = [tuple(Fraction(x) for x in p) for p in right]
    d, n1 = len(left[0]), len(left)
    edges = sorted(edges)
    rows = []
    for a, b in edges:
        row = [Fraction(0)] * (d * (n1 + len(right)))
        for c in range(d):
            row[(a - 1) * d + c] = right[b - 1][c]
            row[(n1 + b - 1) * d + c] = -left[a - 1][c]
        rows.append(row)
    return RationalMatrix(rows, edges)


def complete_bipartite(n1, n2):
    return [(a, b) for a in range(1, n1 + 1) for b in range(1, n2 + 1)]


def complete_bipartite_rank(n1, n2, d):
    if min(n1, n2) <= d:
        return n1 * n2
    return d * (n1 + n2) - d * d


def is_independent(cfg, edges):
    edges = list(edges)
    return rank(bipartite_rows(cfg, sorted(edges))) == len(edges)


def sign_changes(seq):
    """Number of sign changes in a sequence, zeros skipped."""
    s = [x for x in seq if x]
    return sum(1 for x, y in zip(s, s[1:]) if (x > 0) != (y > 0))


def vertex_sign_sequences(dep):
    """Per-vertex coefficient sequences ordered by the opposite index."""
    out = {}
    for (a, b), c in sorted(dep.coefficients.items()):
        out.setdefault(("L", a), []).append((b, c))
        out.setdefault(("R", b), []).append((a, c))
    return {v: [c for _, c in sorted(seq)] for v, seq in out.items()}


def det(M):
    """Exact determinant by fraction-free elimination."""
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    sign = 1
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    out = Fraction(sign)
    for c in range(n):
        out *= A[c][c]
    return out


def relative_cross_ratio(points, a, b, c, d):
    """``|acT| |bdT| / (|adT| |bcT|)`` with T the remaining points."""
    pts = _as_points(points)
    T = [pts[v] for v in sorted(pts) if v not in (a, b, c, d)]

    def D(x, y):
        return det([pts[x], pts[y]] + T)

    den = D(a, d) * D(b, c)
    if den == 0:
        raise DegenerateConfiguration("zero denominator in cross-ratio")
    return D(a, c) * D(b, d) / den


def moment_cross_ratio(ta, tb, tc, td):
    """Cross-ratio of four parameters on the moment curve."""
    ta, tb, tc, td = map(Fraction, (ta, tb, tc, td))
    den = (td - ta) * (tc - tb)
    if den == 0:
        raise DegenerateConfiguration("repeated parameter in cross-ratio")
    return (tc - ta) * (td - tb) / den


def located_margin(e1, e2, e3, cfg):
    """Left minus right cross-ratio for three edges of the (2k+3)-gon.

    Positive means correctly located; zero is the boundary case.
    """
    k = cfg.d
    c = k + 2
    (i1, j1), (i2, j2), (i3, j3) = sorted(tuple(sorted(e)) for e in (e1, e2, e3))
    if not (i1 < i2 < i3 < c < j1 < j2 < j3):
        raise ValueError("edges must satisfy i1<i2<i3<k+2<j1<j2<j3")
    if cfg.n1 < c or cfg.n2 < c:
        raise ValueError("configuration needs k+2 parameters per side")
    t, u = cfg.left, cfg.right
    jp = [2 * k + 4 - j for j in (j1, j2, j3)]
    lhs = moment_cross_ratio(t[i1 - 1], t[i2 - 1], t[i3 - 1], t[c - 1])
    rhs = moment_cross_ratio(u[jp[0] - 1], u[jp[1] - 1], u[jp[2] - 1], u[c - 1])
    return lhs - rhs


def correctly_located(e1, e2, e3, cfg):
    return located_margin(e1, e2, e3, cfg) > 0


def cone_index(x, x0):
    """New index of an old vertex after inserting a vertex at position ``x0``."""
    return x if x < x0 else x + 1


def cone_graph(edges, i0, j0):
    """Bipartite coning: new vertices ``i0``, ``j0`` joined to the old opposite side."""
    edges = list(edges)
    lefts = sorted({a for a, _ in edges})
    rights = sorted({b for _, b in edges})
    out = {(cone_index(a, i0), cone_index(b, j0)) for a, b in edges}
    out |= {(i0, cone_index(b, j0)) for b in rights}
    out |= {(cone_index(a, i0), j0) for a in lefts}
    out.add((i0, j0))
    return sorted(out)


def coning_sign_transform(dep, i0, j0):
    """Predicted signs on the old edges after coning at ``i0``, ``j0``."""
    out = {}
    for (a, b), c in dep.coefficients.items():
        a2, b2 = cone_index(a, i0), cone_index(b, j0)
        s = (c > 0) - (c < 0)
        s *= 1 if (a2 - i0) * (b2 - j0) > 0 else -1
        out[(a2, b2)] = Fraction(s)
    return SignedDependence(out)


CUBE_EDGES = [e for e in complete_bipartite(4, 4) if e not in ((2, 2), (3, 3), (4, 4))]


def cube_circuit(x, y):
    """Dependence of ``K_{4,4} - {22', 33', 44'}`` with collinear points in the plane."""
    cfg = ParameterConfig(tuple(x), tuple(y), 2)
    return unique_dependence(bipartite_hyper_matrix(cfg, CUBE_EDGES))


def random_increasing(rnd, count, bound=10 ** 6, den=None):
    """Sorted distinct random rationals with bounded numerators and denominators."""
    out = set()
    while len(out) < count:
        q = den or rnd.randint(1, bound)
        out.add(Fraction(rnd.randint(-bound, bound), q))
    return tuple(sorted(out))


def generic_config(n1, n2, d, seed=None):
    """``t_i = i`` on both sides, optionally perturbed by multiples of 1/10**6."""
    left = [Fraction(i) for i in range(1, n1 + 1)]
    right = [Fraction(i) for i in range(1, n2 + 1)]
    if seed is not None:
        rnd = random.Random(seed)
        left = [x + Fraction(rnd.randint(-10 ** 5, 10 ** 5), 10 ** 6) for x in left]
        right = [x + Fraction(rnd.randint(-10 ** 5, 10 ** 5), 10 ** 6) for x in right]
    return ParameterConfig(tuple(left), tuple(right), d)


def tensor_dependence(c_left, c_right):
    """Exterior (tensor) product of point dependences on the two sides."""
    return {(a, b): Fraction(x) * Fraction(y)
            for (a, x), (b, y) in product(enumerate(c_left, 1), enumerate(c_right, 1)) if x and y}
