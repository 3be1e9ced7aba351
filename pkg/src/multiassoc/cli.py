"""Command-line front end.

Every subcommand writes a JSON report (to ``--out`` or standard output) with
``"schema": 1``, the exact rational inputs and the verdict.  Exit codes:
0 realized or verified, 1 not realized or infeasible, 2 malformed input or a
degenerate verdict.  Reports are deterministic; timings are only included
with ``--timings``.
"""
import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .fan_polytope import (check_basis_collection, check_fan, polytope_lp,
                           star_condition, verify_heights)
from .polygon import Multitriangulation, ProblemInstance, WrongInstance, edge, enumerate_triangulations
from .rigidity import ParameterConfig, random_increasing
from .simplex import Infeasible

SCHEMA = 1


class UnknownConfig(ValueError):
    pass


def builtin_configs(name, k, n, seed=0):
    """A named parameter configuration sized to (k, n): d = k, n-k-1 per side."""
    m = n - k - 1

    def both(t):
        t = tuple(Fraction(x) for x in t)
        return ParameterConfig(t, t, k)

    def fixed(kk, nn, t):
        if (k, n) != (kk, nn):
            raise UnknownConfig("config %r only exists for k=%d, n=%d" % (name, kk, nn))
        return both(t)

    if name == "standard":
        return both(range(1, m + 1))
    if name == "nearlex":
        return both(2 ** ((i - 1) ** 2) for i in range(1, m + 1))
    if name == "k3n11":
        return fixed(3, 11, (0, 1, 31, 32, 42, 67, 100))
    if name == "desargues":
        return fixed(3, 9, (1, 3, 4, 5, 7))
    if name == "desargues-generic":
        return fixed(3, 9, (0, 1, 2, 4, 8))
    if name == "lexcor":
        if n != 2 * k + 3:
            raise UnknownConfig("config 'lexcor' needs n = 2k+3")
        M = 100
        return both([-M ** e for e in range(k - 1, 0, -1)] + [0, 1, M ** k])
    if name == "random":
        rnd = random.Random(seed)
        return ParameterConfig(random_increasing(rnd, m, bound=1000), random_increasing(rnd, m, bound=1000), k)
    raise UnknownConfig("unknown config %r" % (name,))


def load_config(text, k, n, seed=0):
    path = Path(text)
    if path.suffix == ".json" or path.exists():
        return ParameterConfig.from_json(json.loads(path.read_text()))
    return builtin_configs(text, k, n, seed)


def edge_key(e):
    return "%d-%d" % e


def parse_edge_key(s):
    i, j = s.split("-")
    return edge(int(i), int(j))


def load_heights(text):
    path = Path(text)
    data = json.loads(path.read_text() if path.exists() else text)
    return {parse_edge_key(key): Fraction(v) for key, v in data.items()}


def _relevant(T):
    inst = T.instance
    return sorted(e for e in T.edges if inst.length(e) > inst.k)


def jsonable(x):
    if isinstance(x, Multitriangulation):
        return [edge_key(e) for e in _relevant(x)]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, tuple) and len(x) == 2 and all(isinstance(y, int) for y in x):
        return edge_key(x)
    if isinstance(x, dict):
        return {str(jsonable(key)): jsonable(v) for key, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(y) for y in x)
    if isinstance(x, (list, tuple)):
        return [jsonable(y) for y in x]
    return str(x)


@dataclass
class ExperimentSpec:
    command: str
    k: int
    n: int
    config: str = "standard"
    out: str = None
    seed: int = 0
    jobs: int = 1
    method: str = "flip_bfs"
    heights: str = None
    timings: bool = False


def _progress(msg):
    print(msg, file=sys.stderr, flush=True)


def _enumerate(spec, inst, cfg, report):
    facets = enumerate_triangulations(inst, spec.method)
    report["method"] = spec.method
    report["count"] = len(facets)
    report["facets"] = jsonable(facets)
    return 0


def _check_bases(spec, inst, cfg, report):
    res = check_basis_collection(inst, cfg)
    report.update(bases_ok=res["ok"], facets=res["facets"], failures=jsonable(res["failures"]))
    return 0 if res["ok"] else 1


def _check_fan(spec, inst, cfg, report):
    rep = check_fan(inst, cfg)
    report.update(realized=rep.realized, bases_ok=rep.bases_ok, icop_ok=rep.icop_ok,
                  pentagons_ok=rep.pentagons_ok, containment_ok=rep.containment_ok,
                  degenerate=rep.degenerate, counts=jsonable(rep.counts),
                  witnesses=jsonable(rep.witnesses))
    if rep.degenerate:
        return 2
    return 0 if rep.realized else 1


def _check_polytope(spec, inst, cfg, report):
    sol = polytope_lp(inst, cfg)
    if isinstance(sol, Infeasible):
        report.update(feasible=False, certificate={str(i): str(c) for i, c in sorted(sol.certificate.items())})
        return 1
    report.update(feasible=True, heights={edge_key(e): str(sol[e]) for e in sorted(sol)})
    return 0


def _verify_heights(spec, inst, cfg, report):
    if spec.heights is None:
        raise ValueError("verify-heights needs --heights")
    f = load_heights(spec.heights)
    ok = verify_heights(inst, cfg, f)
    report.update(heights={edge_key(e): str(f[e]) for e in sorted(f)}, verified=ok)
    return 0 if ok else 1


def _star_check(spec, inst, cfg, report):
    ok, margins = star_condition(inst, cfg, detail=True)
    report.update(star=ok, margins=[{"triple": jsonable(t), "margin": str(m)} for t, m in margins])
    return 0 if ok else 1


COMMANDS = {
    "enumerate": _enumerate,
    "check-bases": _check_bases,
    "check-fan": _check_fan,
    "check-polytope": _check_polytope,
    "verify-heights": _verify_heights,
    "star-check": _star_check,
}


def run(spec):
    """Run one experiment; returns (exit code, report dict)."""
    try:
        inst = ProblemInstance(spec.k, spec.n)
        cfg = load_config(spec.config, spec.k, spec.n, spec.seed)
    except (ValueError, OSError, KeyError) as exc:
        return 2, {"schema": SCHEMA, "command": spec.command, "error": str(exc)}
    report = {"schema": SCHEMA, "command": spec.command,
              "instance": {"k": spec.k, "n": spec.n},
              "config": cfg.to_json(), "seed": spec.seed}
    _progress("%s k=%d n=%d" % (spec.command, spec.k, spec.n))
    start = time.perf_counter()
    try:
        code = COMMANDS[spec.command](spec, inst, cfg, report)
    except (WrongInstance, ValueError, OSError) as exc:
        report["error"] = str(exc)
        code = 2
    if spec.timings:
        report["seconds"] = round(time.perf_counter() - start, 3)
    return code, report


def build_parser():
    parser = argparse.ArgumentParser(prog="multiassoc",
                                     description="Bipartite rigidity realizations of multiassociahedra.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--config", default="standard", help="builtin name or JSON file")
        p.add_argument("--out", help="report path (default: standard output)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1, help="accepted; work runs in one process")
        p.add_argument("--method", choices=["backtrack", "flip_bfs"], default="flip_bfs")
        p.add_argument("--heights", help='JSON map {"i-j": "p/q"} or a file holding one')
        p.add_argument("--timings", action="store_true", help="add wall-clock seconds to the report")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    spec = ExperimentSpec(**vars(args))
    code, report = run(spec)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if spec.out:
        Path(spec.out).write_text(text)
    else:
        sys.stdout.write(text)
    if "error" in report:
        print("error: %s" % report["error"], file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
