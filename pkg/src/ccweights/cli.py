"""Command line front end. Every command prints one JSON report."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .cocycle import (DEFAULT_GROUP_LIMIT, classify_weights, cocycle_from_weight,
                      cocycle_group_Zn, h2_over_C, is_coboundary_mod, is_coboundary_over_C,
                      normalize_cocycle, to_h_weight, verify_cocycle, weight_from_cocycle)
from .config import (DEFAULT_AUT_BOUND, automorphisms, closed_subset_check, factor_configuration,
                     schurian_scheme, thin_scheme)
from .errors import Diagnostic
from .monomial import (align_blocks, example24_weight, linear_character_idempotent,
                       monomial_weight, multiplicity_one_idempotents)
from .weights import (DEFAULT_EPS, algebra_profile, h_weight_equivalent, verify_h_weight,
                      verify_weight, weight_equivalent)

EITHER = {"verify-w", "verify-hw", "equiv", "h-equiv", "monomial-weight"}
FORMATS = {"scheme": 1, "group": 1, "permgroup": 1, "weight": 1, "cocycle": 1, "character": 1}

EPILOG = """\
file formats (blank lines and text after '#' are ignored):

  scheme     "n r", then n rows of n class indices
             3 2
             0 1 1
             1 0 1
             1 1 0

  group      "n", then the n x n Cayley table; element 0 is the identity
             2
             0 1
             1 0

  permgroup  "n k", then k permutations of 0..n-1 in one-line notation
             3 2
             1 2 0
             1 0 2

  weight     "n", then n rows of n tokens: 0, a+bi (decimal) or R:k/m = exp(2 pi i k/m)
             2
             1 1
             R:1/2 1

  cocycle    "n m", then n rows of n exponents mod m (group given by --group)
             2 2
             0 0
             0 1

  character  "h m", then h exponents k_i with phi(h_i) = exp(2 pi i k_i/m);
             h_i are the elements of --subgroup in increasing order
             2 2
             0 1

exit status: 0 ok, 1 diagnostic, 2 usage error
"""


def _ints(text):
    return [int(t) for t in text.replace(",", " ").split()]


def _thin_or_scheme(args):
    if args.group:
        G = io.load(args.group, "group")
        return thin_scheme(G), G
    if args.scheme:
        return io.load(args.scheme, "scheme"), None
    raise AssertionError("checked in run")


def _weight(args, path):
    return io.load(path, "weight", eps=args.eps)


def _weight_payload(W):
    return {"weight": io.format_weight(W), "entries": io.matrix_json(W.entries)}


def cmd_verify_cc(args):
    cc = io.load(args.scheme, "scheme")
    return {"scheme": io.scheme_json(cc), "intersection_numbers": cc.p.tolist()}


def cmd_thin(args):
    cc = thin_scheme(io.load(args.group, "group"))
    return {"scheme": io.scheme_json(cc), "scheme_file": io.format_scheme(cc)}


def cmd_schurian(args):
    n, gens = io.load(args.perm, "permgroup")
    cc = schurian_scheme(n, gens)
    return {"scheme": io.scheme_json(cc), "scheme_file": io.format_scheme(cc)}


def cmd_closed(args):
    cc = io.load(args.scheme, "scheme")
    D = closed_subset_check(cc, _ints(args.classes))
    return {"closed": True, "classes": list(D.classes)}


def cmd_factor(args):
    cc = io.load(args.scheme, "scheme")
    fac = factor_configuration(cc, _ints(args.classes))
    return {"blocks": [list(b) for b in fac.blocks], "class_quotient": list(fac.class_quotient),
            "quotient": io.scheme_json(fac.quotient),
            "scheme_file": io.format_scheme(fac.quotient)}


def cmd_aut(args):
    cc = io.load(args.scheme, "scheme")
    auts = automorphisms(cc, args.max_aut_points)
    return {"count": len(auts), "automorphisms": [list(a) for a in auts]}


def cmd_verify_w(args):
    cc, _ = _thin_or_scheme(args)
    verdict = verify_weight(cc, _weight(args, args.weight))
    return {"verdict": io.verdict_json(verdict), "profile": algebra_profile(verdict)}


def cmd_verify_hw(args):
    cc, _ = _thin_or_scheme(args)
    verdict = verify_h_weight(cc, _weight(args, args.weight))
    return {"verdict": io.verdict_json(verdict), "profile": algebra_profile(verdict)}


def _equiv(args, fn):
    cc, _ = _thin_or_scheme(args)
    wit = fn(cc, _weight(args, args.weight), _weight(args, args.weight2), args.max_aut_points)
    return {"equivalent": wit is not None, "witness": io.witness_json(wit)}


def cmd_equiv(args):
    return _equiv(args, weight_equivalent)


def cmd_h_equiv(args):
    return _equiv(args, h_weight_equivalent)


def _cohomology_payload(H):
    return {"coefficients": H.coefficients, "invariant_factors": list(H.invariant_factors),
            "order": H.order,
            "representatives": [io.cocycle_json(r) for r in H.representatives]}


def cmd_h2(args):
    return _cohomology_payload(h2_over_C(io.load(args.group, "group"), args.max_group))


def cmd_h2_zn(args):
    G = io.load(args.group, "group")
    return _cohomology_payload(cocycle_group_Zn(G, args.m, args.max_group))


def _cocycle(args):
    G = io.load(args.group, "group")
    alpha = io.load(args.cocycle, "cocycle", group=G)
    verify_cocycle(alpha)
    return G, alpha


def cmd_normalize(args):
    _, alpha = _cocycle(args)
    beta, gamma = normalize_cocycle(alpha)
    return {"beta": io.cocycle_json(beta), "gamma": io.cochain_json(gamma)}


def cmd_coboundary(args):
    _, alpha = _cocycle(args)
    gamma = is_coboundary_mod(alpha) if args.modular else is_coboundary_over_C(alpha)
    return {"coboundary": gamma is not None,
            "coefficients": f"Z_{alpha.m}" if args.modular else "C*",
            "gamma": None if gamma is None else io.cochain_json(gamma)}


def cmd_w_from_cocycle(args):
    _, alpha = _cocycle(args)
    return _weight_payload(weight_from_cocycle(alpha, args.eps))


def cmd_cocycle_from_w(args):
    cc = thin_scheme(io.load(args.group, "group"))
    alpha = cocycle_from_weight(cc, _weight(args, args.weight), m=args.m)
    out = {"cocycle": io.cocycle_json(alpha)}
    if hasattr(alpha, "k"):
        out["cocycle_file"] = io.format_cocycle(alpha)
    return out


def cmd_to_h_weight(args):
    cc = thin_scheme(io.load(args.group, "group"))
    Wb, wit, beta = to_h_weight(cc, _weight(args, args.weight))
    verify_h_weight(cc, Wb)
    return dict(_weight_payload(Wb), witness=io.witness_json(wit), beta=io.cocycle_json(beta))


def cmd_classify(args):
    G = io.load(args.group, "group")
    res = classify_weights(G, args.max_group, args.max_aut_points, args.seed)
    return {"count": len(res), "invariant_factors": list(res.cohomology.invariant_factors),
            "classes": [{"cocycle": io.cocycle_json(a), "weight": io.format_weight(W),
                         "profile": prof}
                        for (a, W), prof in zip(res.classes, res.profiles)],
            "equivalent": res.equivalent.tolist()}


def _monomial_payload(res):
    return {"representatives": list(res.representatives),
            "scalar_table": {str(k): io.matrix_json(v) for k, v in res.scalar_table.items()},
            "weight": io.format_weight(res.W), "verdict": io.verdict_json(res.verdict),
            "residuals": res.residuals,
            "factor": io.scheme_json(res.factor.quotient)}


def _character(args):
    h, m, exps = io.load(args.character, "character")
    H = _ints(args.subgroup)
    if len(H) != h:
        raise Diagnostic("character", f"character has {h} values, subgroup has {len(H)} elements",
                         None)
    return sorted(H), m, exps


def cmd_monomial_weight(args):
    if args.character:
        G = io.load(args.group, "group")
        cc = thin_scheme(G)
        H, m, exps = _character(args)
        aligned = linear_character_idempotent(cc, H, exps, m, args.eps)
        return _monomial_payload(monomial_weight(cc, aligned.D, aligned, args.eps))
    cc, _ = _thin_or_scheme(args)
    D = _ints(args.classes)
    choices = multiplicity_one_idempotents(cc, D, seed=args.seed, eps=args.eps)
    if not 0 <= args.index < len(choices):
        raise Diagnostic("multiplicity", f"only {len(choices)} multiplicity-one characters",
                         {"index": args.index})
    parts, idem = choices[args.index]
    aligned = align_blocks(cc, D, parts, idem, args.eps)
    out = _monomial_payload(monomial_weight(cc, D, aligned, args.eps))
    out["choices"] = len(choices)
    return out


def cmd_example24(args):
    G = io.load(args.group, "group")
    H, m, exps = _character(args)
    res = example24_weight(G, H, exps, m, args.eps)
    return dict(_weight_payload(res.W), factor=io.scheme_json(res.factor.quotient),
                monomial=_monomial_payload(res.monomial), witness=io.witness_json(res.witness),
                verdict=io.verdict_json(res.verdict))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=DEFAULT_EPS)
    common.add_argument("--max-aut-points", type=int, default=DEFAULT_AUT_BOUND)
    common.add_argument("--max-group", type=int, default=DEFAULT_GROUP_LIMIT)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="ccweights", description="Weights on coherent configurations.",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help, *opts):
        p = sub.add_parser(name, parents=[common], help=help, epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        for opt, kw in opts:
            p.add_argument(opt, **kw)
        p.set_defaults(func=fn)
        return p

    req = {"required": True}
    scheme = ("--scheme", req)
    opt_scheme = ("--scheme", {})
    opt_group = ("--group", {})
    group = ("--group", req)
    weight = ("--weight", req)
    classes = ("--classes", {"required": True, "help": "class indices, e.g. '0 2'"})
    cocycle = ("--cocycle", req)

    add("verify-cc", cmd_verify_cc, "check a scheme file", scheme)
    add("thin", cmd_thin, "thin configuration of a group", group)
    add("schurian", cmd_schurian, "orbital configuration of a permutation group",
        ("--perm", req))
    add("closed", cmd_closed, "check a closed subset", scheme, classes)
    add("factor", cmd_factor, "blocks and factor configuration", scheme, classes)
    add("aut", cmd_aut, "color automorphisms", scheme)
    add("verify-w", cmd_verify_w, "check a weight", opt_scheme, opt_group, weight)
    add("verify-hw", cmd_verify_hw, "check an H-weight", opt_scheme, opt_group, weight)
    add("equiv", cmd_equiv, "equivalence of two weights", opt_scheme, opt_group, weight,
        ("--weight2", req))
    add("h-equiv", cmd_h_equiv, "H-equivalence of two H-weights", opt_scheme, opt_group, weight,
        ("--weight2", req))
    add("h2", cmd_h2, "second cohomology with C* coefficients", group)
    add("h2-zn", cmd_h2_zn, "second cohomology with Z/m coefficients", group,
        ("--m", {"type": int, "required": True}))
    add("normalize", cmd_normalize, "normalized cohomologous cocycle", group, cocycle)
    add("coboundary", cmd_coboundary, "coboundary test (over C* unless --modular)", group,
        cocycle, ("--modular", {"action": "store_true"}))
    add("w-from-cocycle", cmd_w_from_cocycle, "weight of a cocycle", group, cocycle)
    add("cocycle-from-w", cmd_cocycle_from_w, "cocycle of a weight with no zero entry", group,
        weight, ("--m", {"type": int}))
    add("to-h-weight", cmd_to_h_weight, "equivalent H-weight of a weight", group, weight)
    add("classify", cmd_classify, "weights with full support up to equivalence", group)
    add("monomial-weight", cmd_monomial_weight, "weight on a factor configuration",
        opt_scheme, opt_group, ("--classes", {"help": "closed subset, e.g. '0 1'"}),
        ("--character", {}), ("--subgroup", {}), ("--index", {"type": int, "default": 0}))
    add("example24", cmd_example24, "H-weight from a linear character of a subgroup", group,
        ("--subgroup", req), ("--character", req))
    return parser


def run(argv=None):
    """Parse ``argv``, run the command, and return ``(exit_status, report)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "monomial-weight":
        if args.character and not (args.group and args.subgroup):
            parser.error("--character needs --group and --subgroup")
        if not args.character and not args.classes:
            parser.error("monomial-weight needs --classes or --character")
    if args.command in EITHER and not (args.scheme or args.group):
        parser.error(f"{args.command} needs --scheme or --group")
    flags = {"eps": args.eps, "max_aut_points": args.max_aut_points,
             "max_group": args.max_group, "seed": args.seed}
    report = {"command": args.command, "flags": flags, "formats": FORMATS}
    try:
        report["payload"] = args.func(args)
        report["status"] = "ok"
        code = 0
    except Diagnostic as err:
        report["payload"] = err.to_json()
        report["status"] = "diagnostic"
        code = 1
    except OSError as err:
        report["payload"] = {"axiom": "io", "message": str(err), "witness": None}
        report["status"] = "diagnostic"
        code = 1
    return code, report, args.output


def main(argv=None):
    code, report, output = run(argv)
    text = json.dumps(report, indent=2, default=_default) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (complex, np.complexfloating)):
        return io.scalar_json(obj)
    raise TypeError(type(obj).__name__)


if __name__ == "__main__":
    sys.exit(main())
