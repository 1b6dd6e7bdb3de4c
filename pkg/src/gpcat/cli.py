"""Command-line interface: ``gpcat <command> --group <spec> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import action, algebra, verify
from . import diagrams as dg
from .errors import CapExceeded, ParseError, TypeMismatch
from .groups import GroupError, group_from_spec
from .morphisms import specialize
from .words import evaluate, format_word, parse_word, plum_decomposition, standard_decomposition

EXIT_OK, EXIT_PARSE, EXIT_TYPE, EXIT_CAP, EXIT_VERIFY = 0, 2, 3, 4, 5


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print(text)


def _diagram(args, text: str):
    return dg.parse_diagram(text, args.G)


def cmd_compose(args) -> int:
    q, p = _diagram(args, args.q), _diagram(args, args.p)
    res = dg.compose(q, p)
    if res.diagram is None:
        _emit(args, "0", {"zero": True})
    else:
        _emit(args, f"d^{res.alpha} * <{res.diagram}>", {"zero": False, "alpha": res.alpha, "diagram": str(res.diagram)})
    return EXIT_OK


def cmd_tensor(args) -> int:
    t = dg.tensor(_diagram(args, args.a), _diagram(args, args.b))
    _emit(args, str(t), {"diagram": str(t)})
    return EXIT_OK


def cmd_dual(args) -> int:
    t = dg.dual(_diagram(args, args.p))
    _emit(args, str(t), {"diagram": str(t)})
    return EXIT_OK


def cmd_eval_word(args) -> int:
    m = evaluate(parse_word(args.word), args.G)
    if args.d is not None:
        m = specialize(m, Fraction(args.d))
    _emit(args, str(m), m.to_json())
    return EXIT_OK


def cmd_decompose(args) -> int:
    p = _diagram(args, args.p)
    if args.plum:
        f = plum_decomposition(p)
        data = {"top_labels": list(f.top_labels), "left": [x + 1 for x in f.left], "planar": str(f.planar),
                "right": [x + 1 for x in f.right], "bottom_labels": list(f.bottom_labels)}
        text = "\n".join(f"{k}: {v}" for k, v in data.items())
        _emit(args, text, data)
    else:
        w = format_word(standard_decomposition(p))
        _emit(args, w, {"word": w})
    return EXIT_OK


def cmd_phi(args) -> int:
    m = action.phi_diagram(_diagram(args, args.p), args.n, args.cap)
    if args.json:
        print(json.dumps(m.to_json()))
    else:
        sys.stdout.write(m.to_triplets())
    return EXIT_OK


def cmd_enumerate(args) -> int:
    ds = dg.enumerate_diagrams(args.k, args.l, args.G, cap=args.cap)
    _emit(args, "\n".join(str(p) for p in ds), [str(p) for p in ds])
    return EXIT_OK


def cmd_dims(args) -> int:
    n = dg.hom_dimension(args.k, args.l, args.G.order)
    _emit(args, str(n), {"k": args.k, "l": args.l, "group": args.G.name, "dim": n})
    return EXIT_OK


def cmd_structure(args) -> int:
    table = algebra.structure_constants(args.k, args.G)
    if args.json:
        print(json.dumps({"basis": [str(p) for p in table.basis],
                          "table": [[i, j, r, str(c)] for (i, j), row in sorted(table.table.items())
                                    for r, c in sorted(row.items())]}))
    else:
        sys.stdout.write(table.to_csv())
    return EXIT_OK


def cmd_gram(args) -> int:
    det = algebra.gram_determinant(args.k, args.G)
    data = {"k": args.k, "group": args.G.name, "dim": algebra.algebra_dim(args.k, args.G), "determinant": str(det)}
    if args.d is not None:
        data["d"] = args.d
        data["rank"] = algebra.gram_rank(args.k, args.G, Fraction(args.d))
    _emit(args, "\n".join(f"{k}: {v}" for k, v in data.items()), data)
    return EXIT_OK


def cmd_verify(args) -> int:
    G = args.G
    suites = ["relations", "functor", "kangaroo", "gram"] if args.suite == "all" else [args.suite]
    reports = []
    for s in suites:
        if s == "relations":
            reports.append(verify.relations_report(G))
        elif s == "functor":
            reports.append(verify.functor_report(G, args.max_kl, args.max_n, args.samples, args.seed))
        elif s == "kangaroo":
            reports.append(verify.kangaroo_report(G, args.k, args.l, args.n, args.max_kl, args.max_n))
        elif s == "gram":
            reports.append(verify.gram_report(G, args.k if args.k is not None else 1))
    ok = all(r.passed for r in reports)
    if args.json:
        print(json.dumps({"passed": ok, "reports": [r.to_json() for r in reports]}, indent=2))
    else:
        for r in reports:
            print(r.summary())
            if r.suite == "kangaroo":
                for c in r.checks:
                    kern = c.detail.get("kernel", [])
                    print(f"  {c.name}" + (f"; kernel x-labels: {kern}" if kern else ""))
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="cyclic:1", help="cyclic:n | sym:n | product:a,b | cayley:path")
    common.add_argument("--d", default=None, help="specialise d to this rational")
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--l", type=int, default=None)
    common.add_argument("--max-kl", type=int, default=2)
    common.add_argument("--max-n", type=int, default=2)
    common.add_argument("--cap", type=int, default=action.DEFAULT_CAP)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    common.add_argument("--json", action="store_true")

    ap = argparse.ArgumentParser(prog="gpcat", description="Group partition category calculator.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for pos in positional:
            sp.add_argument(pos)
        sp.set_defaults(fn=fn)
        return sp

    add("compose", cmd_compose, "q", "p", help="q o p (p below q)")
    add("tensor", cmd_tensor, "a", "b", help="a (x) b with a on the left")
    add("dual", cmd_dual, "p", help="rotate a diagram by 180 degrees")
    add("eval-word", cmd_eval_word, "word", help="evaluate a generator word")
    add("decompose", cmd_decompose, "p", help="standard decomposition word").add_argument("--plum", action="store_true")
    add("phi", cmd_phi, "p", help="matrix of a diagram on V^(x)k")
    add("enumerate", cmd_enumerate, help="list Hom(k, l)")
    add("dims", cmd_dims, help="dimension of Hom(k, l)")
    add("structure", cmd_structure, help="structure constants of P_k(G, d)")
    add("gram", cmd_gram, help="trace-form Gram determinant and rank")
    add("verify", cmd_verify, help="run verification suites").add_argument(
        "suite", choices=["relations", "functor", "kangaroo", "gram", "all"])
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "verify":
        args.k = 1 if args.k is None else args.k
        args.l = args.k if args.l is None else args.l
        args.n = 1 if args.n is None else args.n
    try:
        args.G = group_from_spec(args.group)
        return args.fn(args)
    except TypeMismatch as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_TYPE
    except (ParseError, GroupError, ValueError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
