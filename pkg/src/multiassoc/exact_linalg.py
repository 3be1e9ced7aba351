"""Exact rational linear algebra.

All elimination is fraction-free: rows are scaled to integers and reduced
with the Bareiss recurrence in Gauss-Jordan form, so every intermediate
entry is a minor of the input and no gcd work is needed.  After reduction
all pivots equal the last one, which makes kernels and solutions direct.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm


class NotInSpan(ValueError):
    pass


class NotACircuit(ValueError):
    pass


class RationalMatrix:
    """Exact matrix with labelled rows and columns."""

    def __init__(self, rows, row_labels=None, col_labels=None):
        self.rows = [tuple(Fraction(x) for x in r) for r in rows]
        width = {len(r) for r in self.rows}
        if len(width) > 1:
            raise ValueError("ragged matrix")
        self.ncols = width.pop() if width else (len(col_labels) if col_labels else 0)
        self.row_labels = list(row_labels) if row_labels is not None else list(range(len(self.rows)))
        self.col_labels = list(col_labels) if col_labels is not None else list(range(self.ncols))
        if len(self.row_labels) != len(self.rows) or len(self.col_labels) != self.ncols:
            raise ValueError("label count mismatch")

    @property
    def nrows(self):
        return len(self.rows)

    def row(self, label):
        return self.rows[self.row_labels.index(label)]

    def restrict(self, labels):
        pos = {l: i for i, l in enumerate(self.row_labels)}
        labels = list(labels)
        return RationalMatrix([self.rows[pos[l]] for l in labels], labels, self.col_labels)

    def __repr__(self):
        return "RationalMatrix(%d x %d)" % (self.nrows, self.ncols)


@dataclass(frozen=True)
class SignedDependence:
    """A row dependence: ``sum(coefficients[l] * row(l)) == 0``."""
    coefficients: dict

    @property
    def support(self):
        return [l for l, c in self.coefficients.items() if c != 0]

    def sign(self, label):
        c = self.coefficients.get(label, 0)
        return (c > 0) - (c < 0)

    def signs(self):
        return {l: (c > 0) - (c < 0) for l, c in self.coefficients.items()}


def _rows_of(M):
    return M.rows if isinstance(M, RationalMatrix) else [tuple(r) for r in M]


def integerize(row):
    """Scale a rational row by the lcm of its denominators."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def gauss_jordan(rows, ncols=None):
    """Fraction-free Gauss-Jordan on integer rows.

    Returns ``(A, pivots, d)`` where ``pivots`` lists ``(row, col)`` pairs,
    ``A[row][col] == d`` at each pivot and pivot columns are zero elsewhere.
    """
    A = [list(r) for r in rows]
    if not A:
        return A, [], 1
    ncols = len(A[0]) if ncols is None else ncols
    prev = 1
    pivots = []
    r = 0
    for c in range(ncols):
        cand = [i for i in range(r, len(A)) if A[i][c]]
        if not cand:
            continue
        p = min(cand, key=lambda i: (sum(abs(x).bit_length() for x in A[i]), i))
        A[r], A[p] = A[p], A[r]
        prow = A[r]
        piv = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(A)):
            if i == r:
                continue
            row = A[i]
            f = row[c]
            if f == 0:
                if piv != prev:
                    for j in range(ncols):
                        if row[j]:
                            row[j] = row[j] * piv // prev
                continue
            new = [x * piv // prev if x else 0 for x in row] if piv != prev else row[:]
            for j in nz:
                new[j] = (row[j] * piv - f * prow[j]) // prev
            new[c] = 0
            A[i] = new
        pivots.append((r, c))
        prev = piv
        r += 1
        if r == len(A):
            break
    return A, pivots, prev


def rank(M):
    rows = [integerize(r) for r in _rows_of(M)]
    return len(gauss_jordan(rows)[1])


def transpose(rows):
    return [list(c) for c in zip(*rows)]


def nullspace(rows, ncols):
    """Basis of ``{x : rows @ x == 0}`` as lists of Fractions."""
    A, pivots, d = gauss_jordan([integerize(r) for r in rows], ncols)
    pcols = {c: i for i, c in pivots}
    basis = []
    for f in range(ncols):
        if f in pcols:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, c in pivots:
            if A[i][f]:
                x[c] = Fraction(-A[i][f], d)
        basis.append(x)
    return basis


def kernel_basis(M):
    """Basis of the left kernel ``{y : y @ M == 0}``."""
    rows = _rows_of(M)
    if not rows:
        return []
    return nullspace(transpose(rows), len(rows))


def solve_many(rows, targets):
    """Coefficients expressing each target in the independent ``rows``."""
    rows = _rows_of(rows)
    m = len(rows)
    if m == 0:
        for t in targets:
            if any(t):
                raise NotInSpan("nonzero target with no rows")
        return [[] for _ in targets]
    cols, scale = [], []
    for r in list(rows) + [[-x for x in t] for t in targets]:
        den = lcm(1, *[Fraction(x).denominator for x in r])
        cols.append([int(Fraction(x) * den) for x in r])
        scale.append(den)
    A, pivots, d = gauss_jordan(transpose(cols), len(cols))
    pcols = [c for _, c in pivots]
    if pcols[:m] != list(range(m)):
        raise ValueError("rows are linearly dependent")
    if len(pcols) > m:
        raise NotInSpan("target %d is not in the row span" % (pcols[m] - m))
    # the null vector with x_f = 1 has x_c = -A[i][f] / d at pivot (i, c);
    # undo the integer scaling of each column
    out = []
    for s in range(len(targets)):
        f = m + s
        out.append([Fraction(-A[i][f] * scale[c], d * scale[f]) for i, c in pivots])
    return out


def solve_in_basis(rows, target):
    return solve_many(rows, [target])[0]


def normalize(v):
    """Scale so the first nonzero entry is +1."""
    for x in v:
        if x:
            return [Fraction(y) / x for y in v]
    raise ValueError("zero vector")


def unique_dependence(M):
    ker = kernel_basis(M)
    if len(ker) != 1:
        raise NotACircuit("left kernel has dimension %d" % len(ker))
    labels = M.row_labels if isinstance(M, RationalMatrix) else range(len(ker[0]))
    return SignedDependence(dict(zip(labels, normalize(ker[0]))))
