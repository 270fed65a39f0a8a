"""Command-line entry point: ``tropid <command> [flags]``.

Exit status: 0 on success or PASS, 1 when a counterexample is found for a
yes/no question (check, fuzz, oracle), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, digraph, search
from .identities import (Assignment, Form, Identity, Mode, Pass, check, construct_power_word,
                         exhaustive, fuzz, identity_for_dimension, reference_power_word,
                         refine_two_variable)
from .tropical import MatrixClass, SamplerConfig, mat_product
from .words import (WordClassSpec, enumerate_class, is_faithful, is_power_word, parse_word)

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None


def _spec(args) -> WordClassSpec:
    return WordClassSpec(tuple(args.alphabet), args.max_exp, args.n)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _sampler(args) -> SamplerConfig:
    seed = args.seed
    if seed is None:
        seed = DEFAULT_SEED
        print(f"# no --seed given, using seed={seed}", file=sys.stderr)
    return SamplerConfig(args.entry_lo, args.entry_hi, Fraction(args.bottom_prob), seed)


# -- commands ------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    for w in enumerate_class(_spec(args)):
        print(w)
    return 0


def cmd_powerword(args) -> int:
    if args.dim is not None:
        args.n = args.dim - 1
    if args.n is None:
        raise UsageError("powerword needs --n or --dim")
    spec = _spec(args)
    if args.method == "reference":
        w = reference_power_word(spec)
    elif args.method == "naive":
        w = construct_power_word(spec)
    else:
        w = search.minimal_power_word(spec, greedy=args.method == "greedy")
    faithful = is_faithful(w, spec)
    print(f"{w}\tlength={len(w)}\tfaithful={str(faithful).lower()}")
    return 0


def cmd_identity(args) -> int:
    c = identity_for_dimension(args.dim, Form(args.form))
    if args.json:
        print(_dump({**c.identity.to_json(), "dim": args.dim, "form": args.form}))
    else:
        print(c.display())
    return 0


def cmd_refine(args) -> int:
    ident = Identity.from_json(_load_json(args.identity))
    try:
        left, right = args.partition.split("|")
    except ValueError:
        raise UsageError("--partition must look like 'x,z|y'") from None
    blocks = ([v for v in left.split(",") if v], [v for v in right.split(",") if v])
    refined = refine_two_variable(ident, blocks)
    print(_dump(refined.to_json()) if args.json else str(refined))
    return 0


def cmd_check(args) -> int:
    ident = Identity.from_json(_load_json(args.identity))
    a = Assignment.from_json(_load_json(args.matrices))
    if check(ident, a):
        print("PASS trials=1")
        return 0
    print(f"FAIL trial=0 {_dump(a.to_json())}")
    return 1


def cmd_fuzz(args) -> int:
    ident = Identity.from_json(_load_json(args.identity))
    cls, mode = MatrixClass(args.cls), Mode(args.mode)
    if args.exhaustive:
        verdict = exhaustive(ident, cls, args.dim, mode=mode)
    else:
        verdict = fuzz(ident, cls, args.dim, args.trials, _sampler(args), mode)
    print(verdict.line())
    return 0 if isinstance(verdict, Pass) else 1


def cmd_oracle(args) -> int:
    a = Assignment.from_json(_load_json(args.matrices))
    word = parse_word(args.word)
    factors = [a[v] for v in word.letters()]
    g = digraph.from_product(factors)
    if args.dot:
        print(digraph.to_dot(g, word.letters()))
        return 0
    direct = mat_product(factors)
    via_paths = digraph.product_via_paths(g)
    print(_dump({"word": str(word), "direct": direct.to_json(), "paths": via_paths.to_json()}))
    agree = direct == via_paths
    print("AGREE" if agree else "DISAGREE")
    return 0 if agree else 1


def cmd_bound(args) -> int:
    if not 2 <= args.n <= 15:
        raise UsageError("bound --n must lie in 2..15")
    print("n\tenumerated\tclaimed_2F_n\tshifted_2F_n+1\tgeneral_8(n+1)F_n+2"
          "\ttriangular_8nF_n-1+2\tderived_dim_n\tconstructed_dim_n")
    mismatch = False
    for n in range(2, args.n + 1):
        cc = bounds.class_count(n)
        general, triangular = bounds.fibonacci_bounds(n)
        derived = bounds.derived_bound(n)
        built = len(identity_for_dimension(n, Form.BALANCED).identity) if n <= 8 else "-"
        mismatch |= not cc.claim_matches
        print(f"{n}\t{cc.enumerated}\t{cc.claimed}\t{cc.shifted}\t{general}"
              f"\t{triangular}\t{derived}\t{built}")
    if mismatch:
        print("# note: enumerated |W_n| equals 2F_(n+1), not the claimed 2F_n")
    return 0


def cmd_search_minimal(args) -> int:
    spec = _spec(args)
    if args.greedy:
        w = search.minimal_power_word(spec, greedy=True)
        mode = "greedy"
    else:
        try:
            w = search.minimal_power_word(spec)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        mode = "exact"
    print(f"{w}\tlength={len(w)}\tmode={mode}\tpower_word={str(is_power_word(w, spec)).lower()}")
    return 0


def cmd_search_falsify(args) -> int:
    cfg = _sampler(args)
    report = search.falsify_below(args.max_len, 2, args.trials, cfg)
    ref = None
    if args.witness_file:
        fh = open(args.witness_file, "w")

        def ref(k, a):
            fh.write(_dump(a.to_json()) + "\n")
            return f"{args.witness_file}:{k + 1}"

    try:
        for line in report.lines(ref):
            print(line)
    finally:
        if args.witness_file:
            fh.close()
    return 0


# -- parser ---------------------------------------------------------------------


def _add_word_class(p, n_required=True):
    p.add_argument("--n", type=int, required=n_required, help="word length")
    p.add_argument("--alphabet", default="xy", help="ordered single-letter variables")
    p.add_argument("--max-exp", type=int, default=2, help="exponent cap m, P = {1..m}")


def _add_sampler(p):
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--entry-lo", type=int, default=-10)
    p.add_argument("--entry-hi", type=int, default=10)
    p.add_argument("--bottom-prob", default="1/4", help="probability an entry is -inf")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list W_n[C,P]")
    _add_word_class(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("powerword", help="build an n-power word")
    _add_word_class(p, n_required=False)
    p.add_argument("--dim", type=int, help="matrix dimension; uses n = dim - 1")
    p.add_argument("--method", choices=["reference", "minimal", "greedy", "naive"],
                   default="reference")
    p.set_defaults(func=cmd_powerword)

    p = sub.add_parser("identity", help="identity for dim x dim triangular matrices")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--form", choices=[f.value for f in Form], default="single-letter")
    p.add_argument("--json", action="store_true", help="emit the identity JSON")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("refine", help="two-variable refinement of an identity")
    p.add_argument("--identity", required=True)
    p.add_argument("--partition", required=True, help="blocks like 'x,z|y'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("check", help="evaluate an identity on given matrices")
    p.add_argument("--identity", required=True)
    p.add_argument("--matrices", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fuzz", help="search for a counterexample")
    p.add_argument("--identity", required=True)
    p.add_argument("--class", dest="cls", choices=[c.value for c in MatrixClass],
                   default="upper")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="independent")
    p.add_argument("--exhaustive", action="store_true",
                   help="all assignments with entries in {-inf,-1,0,1} instead of random ones")
    _add_sampler(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("oracle", help="compare a product with the colored-path oracle")
    p.add_argument("--matrices", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--dot", action="store_true", help="print the colored digraph in DOT")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bound", help="Fibonacci counts and length bounds")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("search", help="minimal power words and falsification sweeps")
    ssub = p.add_subparsers(dest="search_command", required=True)
    q = ssub.add_parser("minimal-word")
    _add_word_class(q)
    g = q.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="breadth-first search (default)")
    g.add_argument("--greedy", action="store_true")
    q.set_defaults(func=cmd_search_minimal)
    q = ssub.add_parser("falsify")
    q.add_argument("--max-len", type=int, required=True)
    q.add_argument("--trials", type=int, default=200)
    q.add_argument("--witness-file", help="write witnesses here, one JSON object per line")
    _add_sampler(q)
    q.set_defaults(func=cmd_search_falsify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"tropid: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
