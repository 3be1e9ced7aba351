"""Algebraic matroid of rank-k matrices and low-rank matrix completion.

Independence of a set of matrix positions is decided by the rank of its
bipartite hyperconnectivity rows at random rational points.  Completion
verdicts are combinatorial: a support that is (k+1)-free inside its Ferrers
hull is generically completable, and finitely completable when it also has
full rank ``k(n1 + n2) - k^2``.  Those statements hold over algebraically
closed fields; the numeric completion below works over the reals and is an
approximate demonstration only.
"""
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bipartization import FerrersDiagram, find_bip_crossing, free_rank
from .exact_linalg import rank
from .rigidity import bipartite_points_hyper_matrix

BOUND = 10 ** 6


class NoConvergence(RuntimeError):
    def __init__(self, message, history):
        super().__init__(message)
        self.history = history


@dataclass(frozen=True)
class PartialMatrix:
    n1: int
    n2: int
    k: int
    known: dict = field(default_factory=dict)

    def __post_init__(self):
        known = {tuple(c): Fraction(x) for c, x in self.known.items()}
        bad = [c for c in known if not (1 <= c[0] <= self.n1 and 1 <= c[1] <= self.n2)]
        if bad:
            raise ValueError("known entries outside the matrix: %r" % sorted(bad))
        object.__setattr__(self, "known", known)

    @property
    def support(self):
        return sorted(self.known)

    def to_json(self):
        entries = [{"a": a, "b": b, "value": str(x)} for (a, b), x in sorted(self.known.items())]
        return json.dumps({"n1": self.n1, "n2": self.n2, "k": self.k, "entries": entries})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        known = {(e["a"], e["b"]): Fraction(e["value"]) for e in data["entries"]}
        return cls(data["n1"], data["n2"], data["k"], known)


@dataclass
class FactorPair:
    A: np.ndarray
    B: np.ndarray
    history: list = field(default_factory=list)

    def __post_init__(self):
        if self.A.shape[1] != self.B.shape[0]:
            raise ValueError("inner dimensions differ: %r, %r" % (self.A.shape, self.B.shape))

    def product(self):
        return self.A @ self.B


def _random_points(rnd, count, d):
    return [[Fraction(rnd.randint(-BOUND, BOUND), rnd.randint(1, BOUND)) for _ in range(d)]
            for _ in range(count)]


def is_algebraically_independent(E, k, n1, n2, seeds=(0, 1)):
    """Rank test at random rational points, retried at the second seed on a drop."""
    E = sorted(set(E))
    if not E:
        return True
    if k == 0:
        return False
    for seed in seeds:
        rnd = random.Random(seed)
        left, right = _random_points(rnd, n1, k), _random_points(rnd, n2, k)
        if rank(bipartite_points_hyper_matrix(left, right, E)) == len(E):
            return True
    return False


def ferrers_hull(cells):
    """Smallest Ferrers diagram containing the given cells."""
    heights = {}
    for a, b in cells:
        heights[a] = max(heights.get(a, 0), b)
    if not heights:
        return FerrersDiagram(())
    h, out = 0, []
    for a in range(max(heights), 0, -1):
        h = max(h, heights.get(a, 0))
        out.append(h)
    return FerrersDiagram(tuple(reversed(out)))


@dataclass(frozen=True)
class CompletionStatus:
    completable: bool
    finitely_many: bool

    @property
    def label(self):
        if self.finitely_many:
            return "finitely_many"
        return "generically_completable" if self.completable else "indeterminate"


def completion_status(P):
    support = P.support
    free = find_bip_crossing(support, P.k, diagram=ferrers_hull(support)) is None
    spanning = free and len(support) == free_rank(P.n1, P.n2, P.k)
    return CompletionStatus(free, spanning)


def _residuals(A, B, rows, cols, vals):
    return (A[rows] * B[:, cols].T).sum(axis=1) - vals


def complete_numeric(P, iterations=10 ** 4, tolerance=1e-8, seed=0, restarts=5):
    """Alternating least squares for a rank-k completion of the known entries.

    ALS can stall in a local minimum, so up to ``restarts`` seeded starting
    points are tried.  The history lists the squared error on known entries
    after each half step of the successful (or last) run.
    """
    for r in range(restarts):
        try:
            return _als(P, iterations, tolerance, seed + r)
        except NoConvergence as exc:
            last = exc
    raise last


def _als(P, iterations, tolerance, seed):
    k = P.k
    rnd = np.random.default_rng(seed)
    A = rnd.standard_normal((P.n1, k))
    B = rnd.standard_normal((k, P.n2))
    cells = P.support
    rows = np.array([a - 1 for a, _ in cells], dtype=int)
    cols = np.array([b - 1 for _, b in cells], dtype=int)
    vals = np.array([float(P.known[c]) for c in cells])
    by_row = [[i for i, r in enumerate(rows) if r == a] for a in range(P.n1)]
    by_col = [[i for i, c in enumerate(cols) if c == b] for b in range(P.n2)]
    history = []

    def record():
        r = _residuals(A, B, rows, cols, vals)
        history.append(float(r @ r))
        return float(np.abs(r).max()) if len(r) else 0.0

    if record() < tolerance:
        return FactorPair(A, B, history)
    for it in range(iterations):
        for a, idx in enumerate(by_row):
            if idx:
                A[a] = np.linalg.lstsq(B[:, cols[idx]].T, vals[idx], rcond=None)[0]
        record()
        for b, idx in enumerate(by_col):
            if idx:
                B[:, b] = np.linalg.lstsq(A[rows[idx]], vals[idx], rcond=None)[0]
        if record() < tolerance:
            return FactorPair(A, B, history)
        # a plateau far from zero means the target is out of reach
        if it >= 200 and history[-1] > 0 and history[-401] - history[-1] <= 1e-12 * history[-1]:
            break
    raise NoConvergence("no rank-%d fit within tolerance %g" % (k, tolerance), history)
