"""Second differences of weight vectors on Ferrers diagrams.

Covers the fp-positive cone, the Groebner cone of the (k+1)-minors on
S_k(n) and membership in their tropical prevariety.  Initial forms use the
maximum-weight convention.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .bipartization import FerrersDiagram, find_bip_crossing, standard_ferrers


class WrongDiagram(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    diagram: FerrersDiagram
    values: dict

    def __post_init__(self):
        vals = {c: Fraction(self.values.get(c, 0)) for c in self.diagram.cells()}
        extra = set(self.values) - set(vals)
        if extra:
            raise ValueError("values outside the diagram: %r" % sorted(extra))
        object.__setattr__(self, "values", vals)

    def __getitem__(self, cell):
        return self.values[cell]

    def __add__(self, other):
        return WeightVector(self.diagram, {c: x + other.values[c] for c, x in self.values.items()})

    def scale(self, s):
        return WeightVector(self.diagram, {c: s * x for c, x in self.values.items()})

    def __neg__(self):
        return self.scale(-1)


DeltaImage = WeightVector


def reduced_diagram(S):
    """S-bar: drop the first row and column and shift indices down by one."""
    return FerrersDiagram(tuple(h - 1 for h in S.heights[1:] if h >= 2))


def delta(v):
    S = v.diagram
    Sb = reduced_diagram(S)
    out = {}
    for i, j in Sb.cells():
        out[(i, j)] = v[(i, j + 1)] + v[(i + 1, j)] - v[(i, j)] - v[(i + 1, j + 1)]
    return WeightVector(Sb, out)


def reconstruct(dimg, first_row, first_col, diagram=None):
    """Invert ``delta`` given ``v[1, b]`` (first_row) and ``v[a, 1]`` (first_col)."""
    first_row = [Fraction(x) for x in first_row]
    first_col = [Fraction(x) for x in first_col]
    if first_row[0] != first_col[0]:
        raise ValueError("boundary data disagree at (1, 1)")
    if diagram is None:
        diagram = FerrersDiagram(tuple([len(first_row)] + [h + 1 for h in dimg.diagram.heights]
                                       + [1] * (len(first_col) - 1 - dimg.diagram.n1)))
    S = diagram
    if len(first_row) != S.n2 or len(first_col) != S.n1:
        raise ValueError("boundary data do not match the diagram")
    d = dimg.values
    # prefix[(i, j)] = sum of delta over r <= i, s <= j
    prefix = {}
    for i, j in sorted(d):
        prefix[(i, j)] = (d[(i, j)] + prefix.get((i - 1, j), 0) + prefix.get((i, j - 1), 0)
                          - prefix.get((i - 1, j - 1), 0))
    v11 = first_row[0]
    out = {}
    for a, b in S.cells():
        s = prefix.get((a - 1, b - 1), 0) if a > 1 and b > 1 else 0
        out[(a, b)] = first_col[a - 1] + first_row[b - 1] - v11 - s
    return WeightVector(S, out)


def boundary(v):
    S = v.diagram
    return [v[(1, b)] for b in range(1, S.n2 + 1)], [v[(a, 1)] for a in range(1, S.n1 + 1)]


def is_fp_positive(v):
    return all(x >= 0 for x in delta(v).values.values())


def four_point_condition(v):
    """``v[i,j'] + v[i',j] >= v[i,j] + v[i',j']`` for all i < i', j < j' in S."""
    S = v.diagram
    for (i, j) in S.cells():
        for (i2, j2) in S.cells():
            if i < i2 and j < j2:
                if v[(i, j2)] + v[(i2, j)] < v[(i, j)] + v[(i2, j2)]:
                    return False
    return True


def initial_support(A, B, v):
    """All maximum-weight perfect matchings between rows A and columns B.

    Matchings are tuples of cells ``(a, b)`` ordered by ``a``.
    """
    A, B = sorted(A), sorted(B)
    if len(A) != len(B):
        raise ValueError("A and B must have the same size")
    if any((a, b) not in v.diagram for a in A for b in B):
        raise ValueError("A x B must lie in the diagram")
    best, out = None, []
    for perm in permutations(B):
        m = tuple(zip(A, perm))
        w = sum(v[c] for c in m)
        if best is None or w > best:
            best, out = w, [m]
        elif w == best:
            out.append(m)
    return out


def crossing_matching(A, B):
    A, B = sorted(A), sorted(B, reverse=True)
    return tuple(zip(A, B))


def matching_condition(v, max_size=4):
    """Every square A x B in S has the crossing matching among its maximizers."""
    S = v.diagram
    for size in range(2, max_size + 1):
        for A in combinations(range(1, S.n1 + 1), size):
            h = S.heights[A[-1] - 1]
            for B in combinations(range(1, h + 1), size):
                if crossing_matching(A, B) not in initial_support(A, B, v):
                    return False
    return True


def squares(S, size):
    """All (A, B) with |A| = |B| = size and A x B inside S."""
    for A in combinations(range(1, S.n1 + 1), size):
        h = S.heights[A[-1] - 1]
        for B in combinations(range(1, h + 1), size):
            yield A, B


def in_prevariety(v, k):
    """No (k+1)-minor inside S has a monomial initial form."""
    for A, B in squares(v.diagram, k + 1):
        if len(initial_support(A, B, v)) < 2:
            return False
    return True


def _check_standard(v, k, n):
    if v.diagram != standard_ferrers(k, n):
        raise WrongDiagram("weight vector must live on S_k(n)")


def grobner_inequalities(k, n):
    """Rows over the cells of S-bar; v is in the cone iff every row . delta(v) >= 0.

    One inequality per cell (i, j) of S-bar, by the value of i + j:
      i + j <= k:          sum of delta[r, s] over r >= i, s >= j, r + s <= k + 1
      k+1 <= i+j <= n-k-1: delta[i, j]
      i + j >= n - k:      sum of delta[r, s] over r <= i, s <= j, r + s >= n - k - 1
    """
    Sb = reduced_diagram(standard_ferrers(k, n))
    cells = Sb.cells()
    rows = []
    for i, j in cells:
        if i + j <= k:
            sel = [(r, s) for r, s in cells if r >= i and s >= j and r + s <= k + 1]
        elif i + j <= n - k - 1:
            sel = [(i, j)]
        else:
            sel = [(r, s) for r, s in cells if r <= i and s <= j and r + s >= n - k - 1]
        rows.append(((i, j), {c: 1 for c in sel}))
    return rows


def grobner_membership(v, k, n):
    _check_standard(v, k, n)
    d = delta(v).values
    return all(sum(d[c] * x for c, x in row.items()) >= 0 for _, row in grobner_inequalities(k, n))


def unit(S, cell, value=1):
    return WeightVector(S, {cell: Fraction(value)})


def grobner_rays(k, n):
    """Rays of the Groebner cone on S_k(n), as (label, WeightVector).

    Needs n >= 2k+3; below that the three families overlap.
    """
    if n < 2 * k + 3:
        raise ValueError("ray families need n >= 2k+3")
    S = standard_ferrers(k, n)
    Sb = reduced_diagram(S)
    rays = []
    for i, j in S.cells():
        if 2 <= i + j <= k + 1:
            rays.append((("-e", i, j), -unit(S, (i, j))))
    zero_row, zero_col = [0] * S.n2, [0] * S.n1
    for i, j in Sb.cells():
        if k + 2 <= i + j <= n - k - 2:
            rays.append((("f", i, j), reconstruct(unit(Sb, (i, j)), zero_row, zero_col, S)))
    for i, j in Sb.cells():
        if n - k - 1 <= i + j <= n - 2:
            rays.append((("-e", i + 1, j + 1), -unit(S, (i + 1, j + 1))))
    return rays


def lineality_dimension(k, n):
    return 2 * (n - k) - 3


def delta_support(v):
    return [c for c, x in delta(v).values.items() if x != 0]


def is_delta_support_free(v, k):
    """Whether supp(delta(v)) has no k-crossing with supremum in S-bar."""
    d = delta(v)
    if k == 0:
        return True
    return find_bip_crossing(delta_support(v), k - 1, diagram=d.diagram) is None


def freeprev_check(v, k, n):
    """(direct prevariety verdict, k-freeness of the delta support)."""
    if not grobner_membership(v, k, n):
        raise ValueError("weight vector is not in the Groebner cone")
    return in_prevariety(v, k), is_delta_support_free(v, k)
