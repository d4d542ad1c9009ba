"""Command-line front end.

Exit codes: 0 success (or certified Closed), 1 NotClosed, 2 size cap
exceeded, 3 model error, 64 usage error.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import counting, growth, hopf, posets, subhopf
from .algebra import Scalar
from .errors import PosetHopfError, SizeExceeded, ZeroModel

EXIT_OK = 0
EXIT_NOT_CLOSED = 1
EXIT_SIZE = 2
EXIT_MODEL = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _parse_rationals(text):
    return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())


def _parse_poset(text):
    text = text.strip()
    if text.startswith("{"):
        return posets.from_json(json.loads(text))
    return posets.from_text(text)


def _load_couplings(args):
    """Resolve the coupling source for CSG-style commands."""
    mode = "probability" if getattr(args, "probability", False) else "weight"
    if getattr(args, "couplings", None):
        with open(args.couplings) as fh:
            obj = json.load(fh)
        t = tuple(Fraction(x) for x in obj.get("t", []))
        s = obj.get("s")
        mode = obj.get("mode", obj.get("normalization", mode))
        if s is None:
            return growth.csg_couplings(t, mode=mode)
        return growth.Couplings(t=t, s=tuple(Fraction(x) for x in s), s_tail=0, mode=mode)
    if getattr(args, "t", None):
        return growth.csg_couplings(_parse_rationals(args.t), mode=mode)
    return None


def _model_couplings(args, default_mode="probability"):
    """Couplings for the CSG-family presets; returns None for cm/dse."""
    coup = _load_couplings(args)
    if coup is not None:
        return coup
    model = getattr(args, "model", None)
    symbolic = getattr(args, "symbolic", False)
    if model == "tp":
        if symbolic:
            return growth.tp_couplings()
        tparam = Fraction(args.tp_t) if getattr(args, "tp_t", None) else Fraction(1)
        return growth.tp_couplings(tparam, mode=default_mode)
    if model == "forest":
        if symbolic:
            return growth.forest_couplings(mode="weight")
        return growth.forest_couplings(Fraction(1), Fraction(1), mode=default_mode)
    if model == "tree":
        return growth.tree_couplings(mode=default_mode)
    if model == "dust":
        return growth.dust_couplings(mode=default_mode)
    return None


def _vector_json(vec):
    return [{"poset": posets.to_json(p), "coeff": str(vec.coeff(p))}
            for p in vec.support()]


def _emit(args, text_fn, json_obj):
    if args.format == "json":
        print(json.dumps(json_obj, indent=2))
    else:
        text_fn()


# --- subcommands --------------------------------------------------------------

def cmd_enumerate(args):
    out = posets.enumerate_posets(args.n, connected_only=args.connected)
    _emit(args, lambda: [print(posets.to_text(p)) for p in out],
          [posets.to_json(p) for p in out])
    return EXIT_OK


def cmd_psi(args):
    p = _parse_poset(args.poset)
    val = counting.psi(p)
    _emit(args, lambda: print(val), {"poset": posets.to_json(p), "psi": val})
    return EXIT_OK


def cmd_partitions(args):
    p = _parse_poset(args.poset)
    parts = counting.forest_partitions(p)

    def show():
        for pi in parts:
            pieces = []
            for g, cnt in sorted(pi.items(), key=lambda kv: (kv[0].n, kv[0].code)):
                pieces.append(f"{posets.to_text(g)} x{cnt}" if cnt > 1 else posets.to_text(g))
            print(" | ".join(pieces))

    _emit(args, show,
          [[{"forest": posets.to_json(g), "mult": cnt} for g, cnt in pi.items()]
           for pi in parts])
    return EXIT_OK


def cmd_coproduct(args):
    p = _parse_poset(args.poset)
    delta = hopf.coproduct(p)

    def show():
        for (a, b) in delta.support():
            print(f"{delta.coeff(a, b)}  [{posets.to_text(a)}] (x) [{posets.to_text(b)}]")

    _emit(args, show,
          [{"left": posets.to_json(a), "right": posets.to_json(b),
            "coeff": str(delta.coeff(a, b))} for (a, b) in delta.support()])
    return EXIT_OK


def cmd_grow(args):
    coup = _model_couplings(args)
    if coup is None:
        raise ZeroModel("grow needs a CSG-style model or explicit couplings")
    dist = growth.grow_distribution(args.n, coup)

    def show():
        for p in dist.support():
            print(f"{dist.coeff(p)}  [{posets.to_text(p)}]")

    _emit(args, show, _vector_json(dist))
    return EXIT_OK


def _build_generators(args, n_max):
    if args.model == "cm":
        return growth.cm_model().solve(n_max)
    if args.model == "dse":
        alpha = Fraction(args.alpha) if args.alpha is not None else Fraction(1)
        beta = Fraction(args.beta) if args.beta is not None else Fraction(1)
        return growth.foissy_dse_model(alpha, beta, n_max).solve(n_max)
    coup = _model_couplings(args, default_mode="probability")
    if coup is None:
        raise ZeroModel("no model or couplings given")
    if getattr(args, "symbolic", False) and not coup.tp_q:
        coup = growth.Couplings(t=coup.t, t_tail=coup.t_tail, s=coup.s,
                                s_tail=coup.s_tail, mode="weight")
    return subhopf.csg_generators(coup, n_max)


def cmd_solve(args):
    gens = _build_generators(args, args.n_max)

    def show():
        for n, an in enumerate(gens, 1):
            print(f"a_{n} = {an}")

    _emit(args, show, [{"n": n, "vector": _vector_json(an)}
                       for n, an in enumerate(gens, 1)])
    return EXIT_OK


def cmd_check_subhopf(args):
    gens = _build_generators(args, args.n_max)
    report = subhopf.check_closure(gens)
    obj = report.to_json()

    def show():
        print(f"status: {report.status} (n <= {report.checked_n}, {report.orientation})")
        if report.status == "closed":
            for entry in obj.get("betas", []):
                print(f"beta k={entry['k']} l={entry['l']}: {entry['coeff']}")
        if report.witness is not None:
            left, right = report.witness
            print(f"witness at n={report.witness_n}: "
                  f"[{posets.to_text(left)}] (x) [{posets.to_text(right)}]")

    _emit(args, show, obj)
    return EXIT_OK if report.status != "not_closed" else EXIT_NOT_CLOSED


def cmd_beta(args):
    kvec = tuple(int(x) for x in args.kvec.split(","))
    if len(kvec) == 1 and args.first_order:
        val = subhopf.beta_first_order(kvec[0], args.l, variant=args.variant, t=args.ratio)
    else:
        val = subhopf.beta_forest(kvec, args.l, variant=args.variant, t=args.ratio)
    _emit(args, lambda: print(val),
          {"k": list(kvec), "l": args.l, "variant": args.variant, "coeff": str(val)})
    return EXIT_OK


def cmd_qbinom(args):
    val = counting.qbinom(args.n, args.k)
    _emit(args, lambda: print(val), {"n": args.n, "k": args.k, "poly": str(val)})
    return EXIT_OK


def cmd_tables(args):
    print(render_tables(), end="")
    return EXIT_OK


def render_tables():
    """Deterministic text rendering of the coefficient tables and the example
    coproducts in the un-normalised forest model."""
    lines = []
    lines.append("# Coproduct coefficients, un-normalised forest model")
    lines.append("# columns: kvec ; l ; beta")
    for kvec, l in [((1, 1), 1), ((2, 1), 1), ((1, 1), 2), ((1, 1, 1), 1)]:
        lines.append(f"{','.join(map(str, kvec))} ; {l} ; {subhopf.beta_forest(kvec, l)}")
    lines.append("")
    lines.append("# Single-generator coefficients beta_{k,l}, un-normalised forest model")
    for k in range(1, 4):
        for l in range(1, 5 - k):
            lines.append(f"{k} ; {l} ; {subhopf.beta_first_order(k, l)}")
    lines.append("")
    lines.append("# Reduced coproducts of the first generators")
    lines.append("# NOTE: the coefficient of a1 (x) a1 in the reduced coproduct of a2 is")
    lines.append("# 2*t0 + t1. Another published rendering of this expansion transposes it")
    lines.append("# as t0 + 2*t1; the value below is the one consistent with the")
    lines.append("# single-generator table, with direct expansion, and with the")
    lines.append("# Connes-Moscovici specialisation t0=0, t1=1.")
    gens = subhopf.csg_generators(growth.forest_couplings(mode="weight"), 4)
    rep = subhopf.check_closure(gens)
    for n in range(2, 5):
        parts = []
        for (kvec, l), c in sorted(rep.betas.items(),
                                   key=lambda kv: (kv[0][1], kv[0][0])):
            if sum(kvec) + l != n or l == 0:
                continue
            if isinstance(c, Scalar) and not c:
                continue
            mono = "*".join(f"a{ki}" for ki in kvec)
            parts.append(f"({c}) {mono} (x) a{l}")
        lines.append(f"Dt(a{n}) = " + " + ".join(parts))
    lines.append("")
    lines.append("# Connes-Moscovici generators (natural growth)")
    for n, dn in enumerate(growth.cm_model().solve(4), 1):
        lines.append(f"delta_{n} = {dn}")
    return "\n".join(lines) + "\n"


def cmd_selftest(args):
    import random
    rng = random.Random(args.seed)
    failures = []

    def check(name, ok):
        print(f"{'ok' if ok else 'FAIL'}  {name}")
        if not ok:
            failures.append(name)

    counts = [len(posets.enumerate_posets(n)) for n in range(1, 6)]
    check("enumeration counts 1..5", counts == [1, 2, 5, 16, 63])
    t = tuple(Fraction(rng.randint(1, 5), rng.randint(1, 5)) for _ in range(5))
    coup = growth.csg_couplings(t, mode="probability")
    total = sum(growth.grow_distribution(4, coup).terms.values(), Scalar())
    check("probabilities sum to 1", total == Scalar.const(1))
    check("coassociativity n<=3",
          all(hopf.check_coassociativity(p)
              for n in range(1, 4) for p in posets.enumerate_posets(n)))
    check("antipode convolution n<=3",
          all(hopf.check_antipode(p)
              for n in range(1, 4) for p in posets.enumerate_posets(n)))
    q = Scalar.var("q")
    check("q-binomial Pascal recurrence",
          all(counting.qbinom(n, k) ==
              counting.qbinom(n - 1, k - 1) + q ** k * counting.qbinom(n - 1, k)
              for n in range(1, 6) for k in range(n + 1)))
    rep = subhopf.check_closure(subhopf.csg_generators(growth.tp_couplings(), 4))
    check("transitive percolation closed at n<=4", rep.status == "closed")
    return EXIT_OK if not failures else EXIT_MODEL


def build_parser():
    parser = _Parser(prog="posethopf",
                     description="Exact growth models and subHopf closure on finite posets")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, model=False, poset=False):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        if model:
            p.add_argument("--model", choices=("tp", "forest", "tree", "dust", "cm", "dse"))
            p.add_argument("--couplings", help="JSON file with rational couplings")
            p.add_argument("--t", help="comma-separated rational t couplings")
            p.add_argument("--s", help="comma-separated rational s couplings")
            p.add_argument("--tp-t", dest="tp_t", help="transitive percolation parameter t")
            p.add_argument("--alpha", help="series parameter for the dse preset")
            p.add_argument("--beta", help="series parameter for the dse preset")
            p.add_argument("--symbolic", action="store_true",
                           help="keep couplings symbolic (weight mode / q-form)")
            p.add_argument("--probability", action="store_true",
                           help="normalise transition weights")
        if poset:
            p.add_argument("poset", help='poset as "n:1<2,2<3" or inline JSON')

    p = sub.add_parser("enumerate", help="list unlabelled posets of a given size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--connected", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("psi", help="number of natural labellings")
    common(p, poset=True)
    p.set_defaults(fn=cmd_psi)

    p = sub.add_parser("partitions", help="forest partitions of a forest")
    common(p, poset=True)
    p.set_defaults(fn=cmd_partitions)

    p = sub.add_parser("coproduct", help="coproduct of a poset")
    common(p, poset=True)
    p.set_defaults(fn=cmd_coproduct)

    p = sub.add_parser("grow", help="distribution over grown posets")
    p.add_argument("--n", type=int, required=True)
    common(p, model=True)
    p.set_defaults(fn=cmd_grow, probability=True)

    p = sub.add_parser("solve", help="generators of a growth model")
    p.add_argument("--n-max", type=int, required=True)
    common(p, model=True)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("check-subhopf", help="certify or refute subHopf closure")
    p.add_argument("--n-max", type=int, required=True)
    common(p, model=True)
    p.set_defaults(fn=cmd_check_subhopf)

    p = sub.add_parser("beta", help="forest/tree coproduct coefficients")
    p.add_argument("--kvec", required=True, help='comma-separated parts, e.g. "2,1"')
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--variant", default="unnormalised",
                   choices=("unnormalised", "tree", "cm", "normalised"))
    p.add_argument("--ratio", help="rational t = t1/t0 for the normalised variant")
    p.add_argument("--first-order", action="store_true",
                   help="use the single-generator closed form")
    common(p)
    p.set_defaults(fn=cmd_beta)

    p = sub.add_parser("qbinom", help="Gaussian binomial coefficient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_qbinom)

    p = sub.add_parser("tables", help="render the coefficient tables")
    common(p)
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("selftest", help="run quick consistency checks")
    common(p)
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SizeExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except ZeroModel as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except PosetHopfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
