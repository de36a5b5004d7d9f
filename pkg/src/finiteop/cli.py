"""Command-line front end.

Exit status is 0 when every requested verification passes, 1 when any clause
fails and 2 for malformed input or refused work (for example an enumeration
budget overrun).  Errors are written to stderr as a JSON object.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources
from pathlib import Path

from . import classical, ensembles
from .duality import dual_system, verify_theorem1
from .errors import FiniteOPError
from .grid import dual_weight, load_grid_file, parse_grid_document
from .hypernum import RATIONAL, FloatBackend, format_scalar, parse_rational
from .orthopoly import orthogonalize

FIXTURES = ("uniform3",)


class Output:
    """Accumulates reports or tables and renders them once at the end."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.documents = []
        self.ok = True

    def report(self, rep):
        self.documents.append(rep.to_dict())
        self.ok = self.ok and rep.passed

    def table(self, name, header, rows, passed=None):
        self.documents.append({"table": name, "header": list(header),
                               "rows": [[_cell(c) for c in row] for row in rows]}
                              | ({} if passed is None else {"pass": passed}))
        if passed is not None:
            self.ok = self.ok and passed

    def render(self) -> str:
        if self.fmt == "json":
            doc = self.documents[0] if len(self.documents) == 1 else self.documents
            return json.dumps(doc, indent=2) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        last_header = None
        for doc in self.documents:
            header = doc["header"] if "table" in doc else ["report", "clause", "max_residual", "pass"]
            if header != last_header:
                writer.writerow(header)
                last_header = header
            if "table" in doc:
                writer.writerows(doc["rows"])
            elif "clauses" in doc:
                for c in doc["clauses"]:
                    writer.writerow([doc["report"], c["clause"], c["max_residual"], c["pass"]])
        return buf.getvalue()


def _cell(x):
    if isinstance(x, (bool, str)):
        return x
    if isinstance(x, (tuple, list)):
        return " ".join(_cell(v) for v in x)
    return format_scalar(x)


def _backend(args):
    if args.backend == "float":
        return FloatBackend(args.bits)
    return RATIONAL


def _tol(args, backend):
    if backend.exact:
        return None
    tol = parse_rational(args.tol)
    if tol <= 0:
        raise FiniteOPError("--tol must be positive")
    return backend.coerce(tol)


def _load(args, backend):
    if args.fixture:
        text = resources.files("finiteop.data").joinpath(f"{args.fixture}.json").read_text()
        return parse_grid_document(json.loads(text), backend)
    if not args.input:
        raise FiniteOPError("an input grid file or --fixture is required")
    return load_grid_file(args.input, backend)


def _node_labels(g):
    return [format_scalar(x) for x in g.points]


def cmd_dual_weight(args, out):
    backend = _backend(args)
    g, u = _load(args, backend)
    v = dual_weight(g, u)
    rows = [(x, pk, eps, uk, vk) for x, pk, eps, uk, vk
            in zip(g.points, g.node_products, g.epsilons, u.values, v.values)]
    out.table("dual_weight", ["x", "node_product", "epsilon", "u", "v"],
              [(a, b, str(c), d, e) for a, b, c, d, e in rows])


def cmd_orthogonalize(args, out):
    backend = _backend(args)
    g, u = _load(args, backend)
    s = orthogonalize(g, u)
    if args.dual:
        s = dual_system(s).dual
    header = ["degree", "leading", "norm", "alpha", "beta"] + [f"P(x={x})" for x in _node_labels(g)]
    rows = [[i, s.leading[i], s.norms[i], s.alphas[i], s.betas[i], *s.values[i]]
            for i in range(g.size)]
    out.table("orthogonal_system", header, [[str(r[0]), *r[1:]] for r in rows])


def cmd_verify_duality(args, out):
    backend = _backend(args)
    g, u = _load(args, backend)
    out.report(verify_theorem1(dual_system(orthogonalize(g, u)), _tol(args, backend)))


def cmd_kernel(args, out):
    backend = _backend(args)
    g, u = _load(args, backend)
    s = orthogonalize(g, u)
    if args.dual:
        s = dual_system(s).dual
    K = ensembles.kernel(s, args.m, args.form)
    if args.complement:
        K = ensembles.complement_kernel(K)
    labels = _node_labels(g)
    out.table("kernel", ["x"] + labels, [[labels[j], *row] for j, row in enumerate(K.entries)])


def cmd_correlations(args, out):
    from itertools import combinations

    backend = _backend(args)
    g, u = _load(args, backend)
    tol = _tol(args, backend)
    s = orthogonalize(g, u)
    mu = ensembles.ensemble(g, u, args.m, args.budget)
    K = ensembles.kernel(s, args.m, "conjugated")
    if args.complement:
        mu = ensembles.complement_measure(mu)
        K = ensembles.complement_kernel(K)
    rows = []
    ok = True
    for r in range(1, min(args.max_size, g.size) + 1):
        for A in combinations(range(g.size), r):
            brute = ensembles.correlation_bruteforce(mu, A)
            det = ensembles.correlation_determinantal(K, A)
            same = brute == det if tol is None else abs(brute - det) <= tol
            ok = ok and same
            rows.append([[format_scalar(g.points[i]) for i in A], brute, det, same])
    out.table("correlations", ["A", "bruteforce", "determinantal", "equal"], rows, passed=ok)


def _orders(args, low, high):
    return [args.m] if args.m is not None else list(range(low, high + 1))


def cmd_verify_prop2(args, out):
    backend = _backend(args)
    g, u = _load(args, backend)
    for m in _orders(args, 1, g.M):
        out.report(ensembles.verify_prop2(g, u, m, args.budget))


def cmd_verify_theorem5(args, out):
    backend = _backend(args)
    g, u = _load(args, backend)
    pair = dual_system(orthogonalize(g, u))
    tol = _tol(args, backend)
    for m in _orders(args, 0, g.M):
        out.report(ensembles.verify_theorem5(pair, m, tol))


def cmd_classical(args, out):
    backend = _backend(args)
    tol = _tol(args, backend)
    if args.family == "krawtchouk":
        if args.p is None:
            raise FiniteOPError("krawtchouk needs --p")
        params = classical.KrawtchoukParams(parse_rational(args.p), args.N)
        out.report(classical.verify_identity_2(params, backend, tol))
    else:
        if args.alpha is None or args.beta is None:
            raise FiniteOPError("hahn needs --alpha and --beta")
        params = classical.HahnParams(parse_rational(args.alpha), parse_rational(args.beta), args.N)
        out.report(classical.verify_identity_3(params, backend, tol))


def cmd_limit_check(args, out):
    t_values = [parse_rational(t) for t in args.t]
    rep = classical.limit_transition_check(parse_rational(args.p), args.N, t_values)
    if args.format == "csv":
        rows = [[str(t), f"{d:.6e}", f"{r:.6e}"]
                for t, d, r in zip(rep.t_values, rep.deviations, rep.reflected_deviations)]
        rows.append(["slope", repr(rep.slope), repr(rep.reflected_slope)])
        out.table("limit_transition", ["t", "max_deviation", "reflected_max_deviation"], rows,
                  passed=rep.passed)
        return
    out.documents.append(rep.to_dict())
    out.ok = out.ok and rep.passed


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("rational", "float"), default="rational")
    common.add_argument("--bits", type=int, default=256, help="float mantissa bits")
    common.add_argument("--tol", default="1e-30", help="relative tolerance (float backend)")
    common.add_argument("--budget", type=int, default=ensembles.DEFAULT_BUDGET,
                        help="maximum number of enumerated subsets")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")

    grid_input = argparse.ArgumentParser(add_help=False)
    grid_input.add_argument("input", nargs="?", help='JSON file {"points": [...], "weights": [...]}')
    grid_input.add_argument("--fixture", choices=FIXTURES, help="use a bundled grid instead of a file")

    parser = argparse.ArgumentParser(prog="finiteop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parents = [common, grid_input]

    p = sub.add_parser("dual-weight", parents=parents, help="node products, signs and dual weight")
    p.set_defaults(func=cmd_dual_weight)

    p = sub.add_parser("orthogonalize", parents=parents, help="dump the monic orthogonal system")
    p.add_argument("--dual", action="store_true", help="dump the normalised dual system instead")
    p.set_defaults(func=cmd_orthogonalize)

    p = sub.add_parser("verify-duality", parents=parents, help="nodal duality report")
    p.set_defaults(func=cmd_verify_duality)

    p = sub.add_parser("kernel", parents=parents, help="correlation kernel matrix")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--form", choices=ensembles.FORMS, default="conjugated")
    p.add_argument("--dual", action="store_true", help="kernel of the dual system")
    p.add_argument("--complement", action="store_true", help="emit I - K")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("correlations", parents=parents,
                       help="brute-force and determinantal correlations side by side")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--complement", action="store_true", help="use the complementary ensemble")
    p.set_defaults(func=cmd_correlations)

    p = sub.add_parser("verify-prop2", parents=parents, help="ensemble/complement measure identity")
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_verify_prop2)

    p = sub.add_parser("verify-theorem5", parents=parents, help="kernel duality identity")
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_verify_theorem5)

    p = sub.add_parser("classical", parents=[common], help="Krawtchouk or Hahn reflection report")
    p.add_argument("family", choices=("krawtchouk", "hahn"))
    p.add_argument("--p")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("limit-check", parents=[common], help="Hahn to Krawtchouk limit")
    p.add_argument("--p", default="1/2")
    p.add_argument("--N", type=int, default=5)
    p.add_argument("--t", nargs="+", default=["100", "1000", "10000", "100000"])
    p.set_defaults(func=cmd_limit_check)
    return parser


def _fail(kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.format)
    try:
        args.func(args, out)
    except FiniteOPError as exc:
        return _fail(type(exc).__name__, str(exc))
    except OSError as exc:
        return _fail("InputError", str(exc))
    text = out.render()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if out.ok else 1


if __name__ == "__main__":
    sys.exit(main())
