"""Command line front end.  Every subcommand prints one JSON document.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

import argparse
import json
import os
import sys

from . import exact_linalg, ideal_span, rep_theory, secant_tools, tensor_core
from .exterior_flatten import exterior_flattening


class UsageError(Exception):
    pass


def _default_prime():
    env = os.environ.get("KAPPA_PRIME")
    return int(env) if env else exact_linalg.DEFAULT_PRIME


def _load(path):
    return tensor_core.load_tensor(path)


def cmd_kappa(args):
    x = _load(args.file)
    kap = secant_tools.kappa(x)
    out = {"kappa": list(kap), "lower_bound": secant_tools.border_rank_lower_bound(x, kap)}
    if args.dump_matrix is not None:
        if not 0 <= args.dump_matrix < x.m:
            raise UsageError(f"--dump-matrix must lie in 0..{x.m - 1}")
        out["matrix"] = exterior_flattening(x, args.dump_matrix).to_dict()
    return out


def cmd_certify(args):
    x = _load(args.file)
    return secant_tools.certify_membership(x, args.r).to_dict()


def cmd_decompose(args):
    if args.mode == "kappa0":
        summands = rep_theory.decompose_kappa0(args.m, args.n, args.r)
    elif args.mode == "kappa1sym":
        if args.m != 3:
            raise UsageError("--mode kappa1sym needs --m 3")
        summands = rep_theory.decompose_kappa1_sym(args.n, args.r)
    else:
        if args.m != 3:
            raise UsageError("--mode kappa1nonsym needs --m 3")
        k = args.n if args.k is None else args.k
        summands = rep_theory.decompose_kappa1_nonsym_bound(args.n, k, args.r)
    return {"summands": [s.to_dict() for s in summands],
            "total_dim": str(rep_theory.total_dimension(summands))}


def _gens(args, cs, which, size):
    if which == "minors":
        j = 0 if args.j in (None, "mixed") else int(args.j)
        return ideal_span.minor_generators(args.m, args.n, args.k, cs.symmetric, j, size, cs=cs)
    if args.m != 3 or not cs.symmetric:
        raise UsageError("Pfaffian generators need --m 3 and symmetric coordinates")
    return ideal_span.pfaffian_generators(args.n, size, cs=cs)


def cmd_span_dim(args):
    prime = args.prime or _default_prime()
    symmetric = args.k is None or args.k == args.n
    if args.general:
        symmetric = False
    cs = ideal_span.CoordinateSystem.make(args.m, args.n, args.k, symmetric)
    if args.j not in (None, "mixed"):
        try:
            int(args.j)
        except ValueError:
            raise UsageError("--j must be an integer or 'mixed'") from None
    if args.which == "both":
        # --size is the common degree: minors of that size, Pfaffians of twice it
        polys = _gens(args, cs, "minors", args.size) + _gens(args, cs, "pfaffians", 2 * args.size)
        degree = args.size
    else:
        polys = _gens(args, cs, args.which, args.size)
        degree = args.size if args.which == "minors" else args.size // 2
    out = {"degree": degree, "num_generators": len(polys),
           "span_dim": ideal_span.span_dimension(polys, prime), "prime": prime}
    if args.export:
        with open(args.export, "w") as fh:
            fh.write(ideal_span.export_generators(polys))
    return out


def cmd_dim_probe(args):
    prime = args.prime or _default_prime()
    dim = secant_tools.terracini_dimension(args.m, args.n, args.r, args.trials, args.seed, prime)
    return {"m": args.m, "n": args.n, "r": args.r, "dim": dim,
            "expected": secant_tools.expected_secant_dimension(args.m, args.n, args.r),
            "ambient": tensor_core.ambient_dim(args.m, args.n) - 1,
            "prime": prime}


def cmd_gen(args):
    if args.example:
        x = tensor_core.example_tensor(args.example)
    else:
        if args.m is None or args.n is None or args.rank is None:
            raise UsageError("gen needs --m, --n and --rank (or --example)")
        x = tensor_core.random_rank_r(args.m, args.n, args.rank, args.seed,
                                      symmetric=args.symmetric, k=args.k)
    tensor_core.save_tensor(x, args.output)
    return {"written": args.output, "m": x.m, "n": x.n, "k": x.k, "symmetric": x.symmetric}


def build_parser():
    p = argparse.ArgumentParser(prog="kappaflat", description=__doc__.splitlines()[0])
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("kappa", help="kappa vector and border rank lower bound")
    s.add_argument("file", help="TensorFileV1 JSON")
    s.add_argument("--dump-matrix", type=int, metavar="J", help="include psi_J in the output")
    s.set_defaults(func=cmd_kappa)

    s = sub.add_parser("certify", help="secant variety membership certificate")
    s.add_argument("file", help="TensorFileV1 JSON")
    s.add_argument("--r", type=int, required=True)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("decompose", help="Schur module decomposition of kappa ideal generators")
    s.add_argument("--mode", choices=["kappa0", "kappa1sym", "kappa1nonsym"], required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--r", type=int, required=True,
                   help="rank r (kappa0, kappa1sym) or bound c (kappa1nonsym)")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("span-dim", help="dimension of the span of minors / Pfaffians")
    s.add_argument("--which", choices=["minors", "pfaffians", "both"], required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, help="W dimension; selects general coordinates if != n")
    s.add_argument("--general", action="store_true", help="use U*(x)V*(x)W* coordinates")
    s.add_argument("--j", default=None, help="flattening index for minors, or 'mixed'")
    s.add_argument("--size", type=int, required=True,
                   help="minor/Pfaffian size; with --which both, the common degree")
    s.add_argument("--prime", type=int)
    s.add_argument("--export", metavar="PATH", help="write generators in the text format")
    s.set_defaults(func=cmd_span_dim)

    s = sub.add_parser("dim-probe", help="Terracini dimension of a secant variety")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--prime", type=int)
    s.set_defaults(func=cmd_dim_probe)

    s = sub.add_parser("gen", help="write a random rank-r or named example tensor")
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--rank", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--example", help="ex23_kappa464, rank_one(m,n) or zero(m,n,k)")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_gen)
    return p


DOMAIN_ERRORS = (tensor_core.TensorError, exact_linalg.LinalgError, ideal_span.SpanError,
                 rep_theory.RepError, secant_tools.CertificateError, OSError, ValueError)


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"kappaflat: error: {e}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as e:
        print(f"kappaflat: {e}", file=sys.stderr)
        return 1
    json.dump(out, sys.stdout, indent=2 if args.pretty else None)
    sys.stdout.write("\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
