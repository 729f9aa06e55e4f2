"""Command line interface.

Exit codes: 0 success (and all checks passing for verify/supergroup),
1 a verification reported failures, 2 bad input (unknown preset or
suite, parse error, pole at the requested q), 3 step budget exceeded.
The reduction budget can be raised with Z3CALC_STEP_BUDGET.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .scalars import PoleError, scalar_str
from .freealg import fa_str
from .rewrite import BudgetExceeded, Presentation
from .parser import ParseError, parse
from . import presets as _presets
from . import calculus as _calculus
from . import supergroup as _supergroup


def _emit(doc):
    print(json.dumps(doc, indent=2, ensure_ascii=False))


def _load_preset(name, qarg):
    pres = _presets.build(name)
    if qarg is not None:
        q0 = Fraction(qarg)
        if pres.q == "symbolic":
            pres = pres.specialize(q0)
        elif pres.q != q0:
            raise ValueError("preset %s is bound to q=%s" % (name, pres.q))
    return pres


def _term_list(nf, order):
    terms = sorted(nf.t.items(), key=lambda it: order.key(it[0]), reverse=True)
    return [{"coeff": scalar_str(c), "word": list(w)} for w, c in terms]


def _dispatch(args):
    if args.cmd == "reduce":
        pres = _load_preset(args.preset, args.q)
        nf = pres.normal_form(parse(args.expr, pres))
        if args.format == "json":
            _emit({
                "preset": args.preset,
                "q": "symbolic" if pres.q == "symbolic" else str(pres.q),
                "input": args.expr,
                "normal_form": fa_str(nf, pres.order.key),
                "terms": _term_list(nf, pres.order),
            })
        else:
            style = "latex" if args.format == "latex" else (
                "unicode" if args.unicode else "text")
            print(fa_str(nf, pres.order.key, style))
        return 0

    if args.cmd == "verify":
        if args.suite not in _calculus.SUITE_NAMES:
            raise KeyError("unknown suite %r (choose from %s)" %
                           (args.suite, ", ".join(_calculus.SUITE_NAMES)))
        doc = _calculus.replay(args.suite)
        _emit(doc)
        return 0 if doc["ok"] else 1

    if args.cmd == "pairs":
        pres = _presets.build(args.preset)
        _emit(pres.pair_census())
        return 0

    if args.cmd == "presets":
        if args.action == "list":
            for name in _presets.PRESETS:
                print("%s\t%d rules" % (name, len(_presets.build(name).rules)))
            return 0
        if args.action == "export":
            if not args.target:
                raise ValueError("presets export needs a preset name")
            sys.stdout.write(_presets.build(args.target).dumps())
            return 0
        if not args.target:
            raise ValueError("presets import needs a file path")
        with open(args.target) as fh:
            doc = json.load(fh)
        pres = Presentation.from_json(doc)
        bad_h = pres.check_homogeneity()
        bad_t = pres.check_termination()
        _emit({
            "name": pres.name,
            "generators": len(pres.generators),
            "rules": len(pres.rules),
            "homogeneous": not bad_h,
            "oriented": not bad_t,
        })
        return 0 if not (bad_h or bad_t) else 1

    if args.cmd == "supergroup":
        doc = _supergroup.verify(args.check)
        _emit(doc)
        return 0 if doc["ok"] else 1

    if args.cmd == "sdet":
        nf, text, L = _supergroup.sdet(
            "latex" if args.format == "latex" else "text")
        if args.format == "json":
            _emit({"normal_form": fa_str(nf, L.order.key),
                   "terms": _term_list(nf, L.order)})
        else:
            print(text)
        return 0

    raise ValueError("no command")


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="z3calc",
        description="exact rewriting in graded deformed plane algebras")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("reduce", help="reduce an expression to normal form")
    p.add_argument("--preset", required=True)
    p.add_argument("--q", help="bind q to a rational value")
    p.add_argument("--format", choices=["text", "json", "latex"],
                   default="text")
    p.add_argument("--unicode", action="store_true",
                   help="print Greek letters in text output")
    p.add_argument("expr")

    p = sub.add_parser("verify", help="run a replay suite")
    p.add_argument("--suite", required=True,
                   metavar="|".join(_calculus.SUITE_NAMES))

    p = sub.add_parser("pairs", help="critical pair census for a preset")
    p.add_argument("--preset", required=True)

    p = sub.add_parser("presets", help="list, export, or import presets")
    p.add_argument("action", choices=["list", "export", "import"])
    p.add_argument("target", nargs="?",
                   help="preset name (export) or JSON file (import)")

    p = sub.add_parser("supergroup", help="matrix algebra checks")
    p.add_argument("--check", required=True,
                   choices=["comodule", "inverse", "sdet"])

    p = sub.add_parser("sdet", help="superdeterminant normal form")
    p.add_argument("--format", choices=["text", "json", "latex"],
                   default="text")

    args = ap.parse_args(argv)
    try:
        return _dispatch(args)
    except BudgetExceeded as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except (ParseError, PoleError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except KeyError as e:
        print("error: %s" % (e.args[0] if e.args else e), file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
