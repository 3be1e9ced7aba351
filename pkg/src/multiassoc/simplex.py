"""Exact feasibility of strict homogeneous systems ``A f > 0``.

By Gordan's alternative either some ``f`` has ``A f > 0`` or some
``y >= 0`` with ``sum(y) = 1`` has ``y A = 0``.  We run phase one of the
simplex method on the second system; its optimal dual values give ``f``
when the certificate does not exist.  Pivots follow the largest reduced
cost with the lexicographic ratio test, which rules out cycling.
"""
from fractions import Fraction
from math import gcd, lcm


class Infeasible:
    """Verdict for an infeasible system, with a checked Gordan certificate."""

    def __init__(self, certificate):
        self.certificate = certificate

    def __bool__(self):
        return False

    def __repr__(self):
        return "Infeasible(support=%d)" % len(self.certificate)


def primitive(row):
    """Scale a rational row to coprime integers, keeping its direction."""
    den = lcm(1, *[Fraction(x).denominator for x in row])
    ints = [int(Fraction(x) * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


class _PhaseOne:
    """Revised phase one for ``y A = 0, sum y = 1, y >= 0``; columns can be added.

    Variables are the artificials (cost 1) followed by one ``y`` per row of A
    (cost 0).  Only the basis
    inverse is stored; reduced costs of the ``y`` columns are integer dot
    products with the scaled dual vector, since A has integer rows.
    """

    def __init__(self, nv):
        self.nv = nv
        self.rows = rows = nv + 1
        self.binv = [[Fraction(1 if s == r else 0) for s in range(rows)] for r in range(rows)]
        self.x = [Fraction(0)] * nv + [Fraction(1)]
        self.basis = list(range(rows))
        self.cols = []

    def add(self, A):
        self.cols.extend(tuple(a) + (1,) for a in A)

    def column(self, j):
        if j < self.rows:
            return [1 if s == j else 0 for s in range(self.rows)]
        return self.cols[j - self.rows]

    def dual(self):
        u = [Fraction(0)] * self.rows
        for r, b in enumerate(self.basis):
            if b < self.rows:
                u = [x + y for x, y in zip(u, self.binv[r])]
        return u

    def entering(self, u):
        """Entering variable with the most negative reduced cost."""
        best, enter = Fraction(0), None
        for s in range(self.rows):
            if u[s] > 1:
                if u[s] - 1 > best:
                    best, enter = u[s] - 1, s
        den = lcm(1, *[x.denominator for x in u])
        U = [int(x * den) for x in u]
        top = 0
        for j, col in enumerate(self.cols):
            v = sum(a * b for a, b in zip(U, col) if b)
            if v > 0:
                if v > top:
                    top, jbest = v, j
        if top and Fraction(top, den) > best:
            enter = self.rows + jbest
        return enter

    def solve(self):
        """Returns ``(w, y, u)``: optimal artificial sum, primal y and dual u."""
        rows = self.rows
        while True:
            u = self.dual()
            enter = self.entering(u)
            if enter is None:
                break
            col = self.column(enter)
            d = [sum(b * c for b, c in zip(line, col) if c) for line in self.binv]
            # lexicographic ratio test: ties on x broken by the rows of B^-1
            best = None
            for r in range(rows):
                if d[r] > 0:
                    key = [self.x[r] / d[r]] + [b / d[r] for b in self.binv[r]]
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                raise ArithmeticError("phase one cannot be unbounded")
            r = best[1]
            piv = d[r]
            self.binv[r] = [x / piv for x in self.binv[r]]
            self.x[r] /= piv
            for s in range(rows):
                if s != r and d[s]:
                    f = d[s]
                    self.binv[s] = [x - f * y for x, y in zip(self.binv[s], self.binv[r])]
                    self.x[s] -= f * self.x[r]
            self.basis[r] = enter
        w = sum(self.x[r] for r, b in enumerate(self.basis) if b < rows)
        y = [Fraction(0)] * len(self.cols)
        for r, b in enumerate(self.basis):
            if b >= rows:
                y[b - rows] = self.x[r]
        return w, y, u


def _violations(A, f):
    return [(sum(a * x for a, x in zip(row, f)), i) for i, row in enumerate(A)]


def strict_feasible(A, batch=40, start=None):
    """Find integer ``f`` with every row of ``A f`` >= 1, or return Infeasible.

    Works by row generation: solve on a subset, add the most violated rows.
    """
    orig = A
    A = [primitive(r) for r in A]
    if any(not any(r) for r in A):
        zero = next(i for i, r in enumerate(A) if not any(r))
        return Infeasible({zero: Fraction(1)})
    nv = len(A[0])
    active = list(range(min(len(A), start or max(batch, 2 * nv))))
    lp = _PhaseOne(nv)
    lp.add([A[i] for i in active])
    while True:
        w, y, u = lp.solve()
        if w == 0:
            cert = {active[i]: c for i, c in enumerate(y) if c}
            # primitive rows are positive multiples of the given ones
            for i in cert:
                j = next(j for j, x in enumerate(A[i]) if x)
                cert[i] *= Fraction(A[i][j]) / Fraction(orig[i][j])
            total = sum(cert.values())
            cert = {i: c / total for i, c in cert.items()}
            for j in range(nv):
                if sum(c * Fraction(orig[i][j]) for i, c in cert.items()) != 0:
                    raise ArithmeticError("bad infeasibility certificate")
            return Infeasible(cert)
        g, h = u[:nv], u[nv]
        f = [-x / h for x in g]
        den = lcm(1, *[x.denominator for x in f])
        f = [int(x * den) for x in f]
        vals = _violations(A, f)
        bad = sorted((v, i) for v, i in vals if v < 1)
        if not bad:
            return f
        have = set(active)
        new = [i for _, i in bad if i not in have][:batch]
        if not new:
            raise ArithmeticError("row generation stalled")
        active.extend(new)
        lp.add([A[i] for i in new])
