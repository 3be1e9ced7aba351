"""Realizability of the multiassociahedron by bipartite rigidity rows.

Three levels are checked: every k-triangulation gives a basis, the cones
form a complete simplicial fan, and the fan is the normal fan of a polytope.

The edges of length at most k lie in every facet, so the complex lives in
the quotient of the row space by their span.  Every relevant row is written
once in a reference basis; dropping the short-edge coordinates gives its
image in the quotient.  A facet's cone is then spanned by the quotient
vectors of its relevant edges, and each check reduces to one small exact
solve per facet.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

from . import exact_linalg as xl
from .bipartization import bipartize
from .polygon import WrongInstance, flip_graph, greedy_triangulation, octahedral_triangulations
from .rigidity import bipartite_rows, located_margin, moment_cross_ratio as cr
from .simplex import Infeasible, primitive, strict_feasible


@dataclass
class FanCheckReport:
    instance: object
    config: object
    bases_ok: bool = False
    icop_ok: bool = False
    pentagons_ok: bool = False
    containment_ok: bool = False
    degenerate: bool = False
    witnesses: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def realized(self):
        return self.bases_ok and self.icop_ok and self.pentagons_ok and self.containment_ok


def _check_config(inst, cfg):
    m = inst.n - inst.k - 1
    if cfg.d != inst.k or cfg.n1 != m or cfg.n2 != m:
        raise ValueError("config must have d = k and n-k-1 parameters per side")


def reduced_edge(e, n):
    return next(iter(bipartize([e], n)))


class FanEngine:
    """Quotient coordinates of all relevant rows plus per-facet solves."""

    def __init__(self, inst, cfg):
        _check_config(inst, cfg)
        self.inst, self.cfg = inst, cfg
        self.fg = flip_graph(inst)
        self.idx = self.fg.idx
        n, m = inst.n, inst.n - inst.k - 1
        self.rel = self.idx.edges
        self.short = sorted(e for e in self.idx.short
                            if max(reduced_edge(e, n)) <= m)
        self.bip = {e: reduced_edge(e, n) for e in self.rel + self.short}
        self.r = inst.relevant_size
        self._coords = {}
        self._reference()

    def rows(self, edges):
        return bipartite_rows(self.cfg, [self.bip[e] for e in edges])

    def _reference(self):
        """Pick a basis facet and express every relevant row in it."""
        self.ref = None
        if not self.rel:
            # n = 2k+1: a single facet with nothing to check
            self.ref, self.q, self.star = 0, {}, []
            return
        short_rows = self.rows(self.short)
        if xl.rank(short_rows) != len(self.short):
            return
        order = [self.fg.number[self.idx.mask(greedy_triangulation(self.inst).edges)]]
        order += [i for i in range(len(self.fg)) if i != order[0]]
        for i in order:
            rel = [self.rel[p] for p in self.fg.relevant_positions(i)]
            basis = self.rows(self.short + rel)
            if xl.rank(basis) == len(basis):
                self.ref = i
                break
        if self.ref is None:
            return
        targets = self.rows(self.rel)
        coords = xl.solve_many(basis, targets)
        s = len(self.short)
        q = [c[s:] for c in coords]
        den = lcm(1, *[x.denominator for v in q for x in v])
        self.q = {p: [int(x * den) for x in v] for p, v in enumerate(q)}
        P = self.fg.relevant_positions(self.greedy_index())
        self.star = [sum(self.q[p][c] for p in P) for c in range(self.r)]

    def coords(self, i):
        """Quotient coordinates in facet ``i``'s basis.

        Returns ``None`` when the facet is not a basis, else a dict mapping
        each external relevant position (and ``"star"`` for the greedy sum)
        to the coefficient list over the facet's relevant positions.
        """
        if i in self._coords:
            return self._coords[i]
        if self.ref is None:
            self._coords[i] = None
            return None
        if not self.rel:
            return {"star": []}
        P = self.fg.relevant_positions(i)
        ext = [p for p in range(len(self.rel)) if p not in set(P)]
        targets = [self.q[p] for p in ext] + [self.star]
        try:
            sols = xl.solve_many([self.q[p] for p in P], targets)
        except ValueError:
            self._coords[i] = None
            return None
        out = dict(zip(ext + ["star"], sols))
        self._coords[i] = out
        return out

    def greedy_index(self):
        return self.fg.number[self.idx.mask(greedy_triangulation(self.inst).edges)]

    def coefficient(self, i, target, p):
        """Coefficient of facet position ``p`` when writing ``target`` in facet ``i``."""
        P = self.fg.relevant_positions(i)
        return self.coords(i)[target][P.index(p)]

    def name(self, p):
        return "%d-%d" % self.rel[p]


@lru_cache(maxsize=8)
def engine(inst, cfg):
    return FanEngine(inst, cfg)


def check_basis_collection(inst, cfg):
    eng = engine(inst, cfg)
    failures = []
    for i in range(len(eng.fg)):
        if eng.coords(i) is None:
            failures.append(eng.fg.facet(i))
    return {"ok": not failures, "failures": failures, "facets": len(eng.fg)}


def check_icop(inst, cfg):
    """Every flip's circuit gives the same sign to the two exchanged edges.

    Writing the incoming edge ``e`` in the basis of the old facet as
    ``e = sum c_b b``, the dependence is ``e - sum c_b b``; the outgoing
    edge ``f`` has the sign of ``-c_f``, so the check is ``c_f < 0``.
    """
    eng = engine(inst, cfg)
    failures, degenerate = [], []
    flips = eng.fg.flips()
    for i, p, j, q in flips:
        if eng.coords(i) is None:
            failures.append(("not a basis", eng.fg.facet(i)))
            continue
        c = eng.coefficient(i, q, p)
        if c == 0:
            degenerate.append((eng.fg.facet(i), eng.rel[p], eng.rel[q]))
        elif c > 0:
            failures.append((eng.fg.facet(i), eng.rel[p], eng.rel[q]))
    return {"ok": not failures and not degenerate, "failures": failures,
            "degenerate": degenerate, "flips": len(flips)}


def link_cycles(eng):
    """All codimension-2 links as lists of (facet index, position pairs), deduplicated."""
    seen = set()
    out = []
    fg = eng.fg
    for i in range(len(fg)):
        P = fg.relevant_positions(i)
        for a in range(len(P)):
            for b in range(a + 1, len(P)):
                p1, p2 = P[a], P[b]
                rho = fg.masks[i] & ~(1 << p1) & ~(1 << p2)
                if rho in seen:
                    continue
                seen.add(rho)
                z, facets = [p1, p2], [i]
                cur = i
                while True:
                    nxt, c = fg.partner(cur, z[-2])
                    facets.append(nxt)
                    if c == z[0]:
                        break
                    z.append(c)
                    cur = nxt
                out.append((rho, z, facets))
    return out


def check_pentagons(inst, cfg):
    """Each 5-cycle link needs a consecutive triple with the middle sign opposite.

    In facet ``rho + {z[i-1], z[i]}`` write ``z[i+1] = sum c_b b``.  The
    dependence on the triple has signs ``(-c[z[i-1]], -c[z[i]], +1)``; the
    outer two agree by ICoP, so the middle is opposite iff ``c[z[i]] > 0``.
    """
    eng = engine(inst, cfg)
    failures = []
    lengths = {}
    for rho, z, facets in link_cycles(eng):
        L = len(z)
        lengths[L] = lengths.get(L, 0) + 1
        if L != 5:
            continue
        good = False
        for s in range(L):
            i = facets[s]
            if eng.coords(i) is None:
                continue
            mid, nxt = z[(s + 1) % L], z[(s + 2) % L]
            if eng.coefficient(i, nxt, mid) > 0:
                good = True
                break
        if not good:
            failures.append([eng.rel[p] for p in z])
    return {"ok": not failures, "failures": failures, "lengths": lengths}


def check_greedy_containment(inst, cfg):
    """The greedy ray sum lies in no other cone: some coordinate is negative."""
    eng = engine(inst, cfg)
    g = eng.greedy_index()
    failures = []
    for i in range(len(eng.fg)):
        if i == g:
            continue
        co = eng.coords(i)
        if co is None:
            failures.append(("not a basis", eng.fg.facet(i)))
        elif all(x >= 0 for x in co["star"]):
            failures.append(eng.fg.facet(i))
    return {"ok": not failures, "failures": failures}


def check_fan(inst, cfg):
    rep = FanCheckReport(inst, cfg)
    bases = check_basis_collection(inst, cfg)
    rep.bases_ok = bases["ok"]
    rep.counts["facets"] = bases["facets"]
    if not rep.bases_ok:
        rep.witnesses.append({"check": "bases", "items": bases["failures"]})
        icop = check_icop(inst, cfg) if engine(inst, cfg).ref is not None else None
        if icop and icop["degenerate"]:
            rep.degenerate = True
            rep.witnesses.append({"check": "icop-degenerate", "items": icop["degenerate"]})
        return rep
    icop = check_icop(inst, cfg)
    rep.icop_ok = icop["ok"]
    rep.degenerate = bool(icop["degenerate"])
    rep.counts["flips"] = icop["flips"]
    if icop["failures"]:
        rep.witnesses.append({"check": "icop", "items": icop["failures"]})
    if icop["degenerate"]:
        rep.witnesses.append({"check": "icop-degenerate", "items": icop["degenerate"]})
    pent = check_pentagons(inst, cfg)
    rep.pentagons_ok = pent["ok"]
    rep.counts["links"] = dict(sorted(pent["lengths"].items()))
    if pent["failures"]:
        rep.witnesses.append({"check": "pentagons", "items": pent["failures"]})
    cont = check_greedy_containment(inst, cfg)
    rep.containment_ok = cont["ok"]
    if cont["failures"]:
        rep.witnesses.append({"check": "containment", "items": cont["failures"]})
    return rep


def height_variables(inst):
    """Relevant edges outside the greedy triangulation, i.e. inside [k+1, n]."""
    return [e for e in flip_graph(inst).idx.edges if e[0] > inst.k]


def lifting_inequalities(inst, cfg):
    """Rows ``omega(C)`` over all relevant edges, one per (facet, external edge).

    For ``a = sum c_b b`` in the basis of facet sigma the row is
    ``f_a - sum c_b f_b``, scaled so that the entry at ``a`` is positive.
    """
    eng = engine(inst, cfg)
    out = []
    for i in range(len(eng.fg)):
        co = eng.coords(i)
        if co is None:
            raise ValueError("facet %d is not a basis" % i)
        P = eng.fg.relevant_positions(i)
        for a, c in co.items():
            if a == "star":
                continue
            row = [Fraction(0)] * len(eng.rel)
            row[a] = Fraction(1)
            for p, x in zip(P, c):
                row[p] -= x
            out.append(row)
    return out


def polytope_lp(inst, cfg):
    """A height vector with every lifting inequality strict, or Infeasible.

    Heights vanish on the greedy triangulation, leaving (n-2k)(n-2k-1)/2
    unknowns.  Returns a dict ``{edge: int}`` over all relevant edges.
    """
    eng = engine(inst, cfg)
    var = height_variables(inst)
    if not var:
        return {e: 0 for e in eng.rel}
    cols = [eng.idx.pos[e] for e in var]
    rows = {}
    for row in lifting_inequalities(inst, cfg):
        r = tuple(row[c] for c in cols)
        rows[primitive(r)] = r
    sol = strict_feasible([rows[k] for k in sorted(rows)])
    if isinstance(sol, Infeasible):
        return sol
    f = {e: 0 for e in eng.rel}
    f.update(zip(var, sol))
    return f


def verify_heights(inst, cfg, f):
    """Whether every lifting inequality is strictly positive at ``f``."""
    eng = engine(inst, cfg)
    vec = [Fraction(f.get(e, 0)) for e in eng.rel]
    for row in lifting_inequalities(inst, cfg):
        if sum(a * x for a, x in zip(row, vec) if a) <= 0:
            return False
    return True


def octahedral_triples(inst):
    return [t for _, t in octahedral_triangulations(inst)]


def star_condition(inst, cfg, detail=False):
    """At n = 2k+3, all octahedral missing triples are correctly located.

    Triples with an edge at the central vertex k+2 carry no condition.
    """
    if inst.n != 2 * inst.k + 3:
        raise WrongInstance("star condition needs n = 2k+3")
    _check_config(inst, cfg)
    c = inst.k + 2
    margins = []
    for triple in octahedral_triples(inst):
        if any(c in e for e in triple):
            continue
        margins.append((triple, located_margin(*triple, cfg)))
    ok = all(m > 0 for _, m in margins)
    return (ok, margins) if detail else ok


def paired_inequalities(k, cfg):
    """The two symmetric cross-ratio conditions forced by n = 2k+4 (k = 3: n = 12).

    Returns the margins (left minus right) of the condition and of its mirror
    with the two sides swapped; they cannot both be positive.
    """
    def margin(t, u):
        if k == 3:
            return cr(t[0], t[2], t[4], t[5]) - cr(u[5], u[4], u[2], u[6])
        return cr(t[1], t[2], t[k], t[k + 1]) - cr(u[k + 1], u[k - 1], u[2], u[k + 2])

    return margin(cfg.left, cfg.right), margin(cfg.right, cfg.left)
