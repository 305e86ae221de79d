"""Command-line front end.

Exit codes: 0 on success, 1 for parse or domain errors, 2 when a budget or
precision limit ran out (rerun with larger limits).
"""

from __future__ import annotations

import argparse
import sys

from . import hereditary
from .comparator import (
    UNRESOLVED,
    PrecisionExhausted,
    compare_expr,
    log_ratio_cf,
    mega_bounds,
    megiston_bounds,
    sci_notation,
    sm_bound_certificates,
)
from .expr import render
from .goodstein import goodstein_base_bound, goodstein_run, trace_record
from .grammar import ExprParseError, parse_expr
from .hyperop import DEFAULT_BUDGET, BudgetExceeded, EvalBudget, Exact, evaluate
from .interval import bits_for_digits

OK, DOMAIN_ERROR, EXHAUSTED = 0, 1, 2


class UsageError(Exception):
    pass


class Exhausted(Exception):
    """Carries output that was produced before a limit was hit."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--budget-digits", type=int, default=DEFAULT_BUDGET.max_decimal_digits, metavar="N")
    p.add_argument("--budget-expansions", type=int, default=DEFAULT_BUDGET.max_expansions, metavar="N")
    p.add_argument("--format", choices=("text", "records"), default="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="unimaginable", description="Evaluate, bound and compare enormous integers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression exactly")
    p.add_argument("expr")

    p = sub.add_parser("compare", parents=[common], help="order two expressions with certificates")
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = sub.add_parser("goodstein", parents=[common], help="run a Goodstein sequence")
    p.add_argument("n0", type=int)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--max-steps", type=int, default=10**6)
    p.add_argument("--bound", type=int, metavar="K", help="also compare the final base with B_K(base)")

    p = sub.add_parser("cf", parents=[common], help="continued fraction of ln B / ln A")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("terms", type=int, nargs="?", default=15)
    p.add_argument("--precision", type=int, default=50, metavar="DIGITS")

    p = sub.add_parser("sci", parents=[common], help="certified scientific notation of BASE^EXP")
    p.add_argument("base", type=int)
    p.add_argument("exponent", type=int)
    p.add_argument("--digits", type=int, default=7)
    p.add_argument("--precision", type=int, metavar="DIGITS", help="cap on working precision")

    p = sub.add_parser("bounds", parents=[common], help="polygon bound certificates")
    p.add_argument("target", nargs="+", help="'mega', 'megiston', or three integers M N K")

    p = sub.add_parser("parse", parents=[common], help="echo the canonical form of an expression")
    p.add_argument("text")
    p.add_argument("--base", type=int, help="read TEXT as a hereditary representation in this base")
    return parser


def _budget(args) -> EvalBudget:
    return EvalBudget(args.budget_digits, args.budget_expansions)


def _certs(certs, fmt) -> list:
    return [c.to_record() if fmt == "records" else str(c) for c in certs]


def _eval(args) -> list:
    res = evaluate(parse_expr(args.expr), _budget(args))
    if isinstance(res, Exact):
        return [f"EXACT\t{res.value}" if args.format == "records" else str(res.value)]
    line = (
        f"OVERFLOW\t{res.reason}\t{render(res.residual)}"
        if args.format == "records"
        else f"overflow ({res.reason} budget): {render(res.residual)}"
    )
    raise Exhausted([line])


def _compare(args) -> list:
    x, y = parse_expr(args.lhs), parse_expr(args.rhs)
    order, chain = compare_expr(x, y, _budget(args))
    name = "UNRESOLVED" if order is UNRESOLVED else order.name
    head = f"ORDER\t{name}" if args.format == "records" else f"{args.lhs} {_symbol(order)} {args.rhs}"
    return [head] + _certs(chain, args.format)


def _symbol(order) -> str:
    if order is UNRESOLVED:
        return "?"
    return {-1: "<", 0: "=", 1: ">"}[int(order)]


def _goodstein(args) -> list:
    out = []
    digits = args.budget_digits
    run = goodstein_run(args.n0, args.base, args.max_steps, on_state=lambda s: out.append(trace_record(s, digits)))
    if not run.terminated:
        out.append(f"not terminated after {run.steps} steps")
        raise Exhausted(out)
    if args.format == "records":
        out.append(f"RUN\t{run.steps}\t{run.steps_to_zero}\t{run.final_base}")
    else:
        out.append(f"terminated: steps={run.steps} steps_to_zero={run.steps_to_zero} final_base={run.final_base}")
    if args.bound is not None:
        bk = goodstein_base_bound(args.bound, args.base, _budget(args))
        rel = "=" if bk == run.final_base else ("<" if run.final_base < bk else ">")
        if args.format == "records":
            out.append(f"BOUND\t{args.bound}\t{bk}\t{run.final_base}\t{rel}")
        else:
            out.append(f"final_base {rel} B_{args.bound}({args.base}) = {bk}")
    return out


def _cf(args) -> list:
    res = log_ratio_cf(args.a, args.b, args.terms, precision=args.precision)
    coeffs = res.coefficients
    if args.format == "records":
        out = ["CF\t" + ",".join(map(str, coeffs))]
        out += [f"CONV\t{i}\t{c.num}\t{c.den}" for i, c in enumerate(res.convergents)]
    else:
        body = f"{coeffs[0]}" + ("; " + ", ".join(map(str, coeffs[1:])) if len(coeffs) > 1 else "")
        out = [f"[{body}]"] + [f"{i}: {c}" for i, c in enumerate(res.convergents)]
    if res.truncated:
        out.append(f"truncated after {len(coeffs)} certified terms")
        raise Exhausted(out)
    return out


def _sci(args) -> list:
    cap = bits_for_digits(args.precision) if args.precision else None
    s = sci_notation(args.base, args.exponent, args.digits, precision=cap)
    if args.format == "records":
        return [f"SCI\t{s.mantissa_digits}\t{s.exponent10}\t{s.certified_digits}"]
    return [str(s)]


def _bounds(args) -> list:
    t = args.target
    budget = _budget(args)
    if t == ["mega"]:
        certs = mega_bounds(budget)
    elif t == ["megiston"]:
        certs = megiston_bounds(budget)
    elif len(t) == 3:
        try:
            m, n, k = map(int, t)
        except ValueError:
            raise UsageError("bounds takes 'mega', 'megiston' or three integers") from None
        certs = sm_bound_certificates(m, n, k, budget)
    else:
        raise UsageError("bounds takes 'mega', 'megiston' or three integers")
    return _certs(certs, args.format)


def _parse(args) -> list:
    if args.base is None:
        text = render(parse_expr(args.text))
        return [f"EXPR\t{text}" if args.format == "records" else text]
    rep = hereditary.parse(args.base, args.text)
    res = hereditary.value(rep, _budget(args))
    val = str(res.value) if isinstance(res, Exact) else "OVERFLOW"
    canon = hereditary.serialize(rep)
    if args.format == "records":
        return [f"HB\t{args.base}\t{canon}\t{val}"]
    return [canon, f"value={val}"]


_COMMANDS = {
    "eval": _eval,
    "compare": _compare,
    "goodstein": _goodstein,
    "cf": _cf,
    "sci": _sci,
    "bounds": _bounds,
    "parse": _parse,
}


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # values are bounded by --budget-digits instead
    try:
        args = build_parser().parse_args(argv)
        lines = _COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=err)
        return DOMAIN_ERROR
    except Exhausted as e:
        for line in e.args[0]:
            print(line, file=out)
        return EXHAUSTED
    except (BudgetExceeded, PrecisionExhausted, OverflowError) as e:
        print(f"limit reached: {e}", file=err)
        return EXHAUSTED
    except (ExprParseError, ValueError) as e:
        print(f"error: {e}", file=err)
        return DOMAIN_ERROR
    for line in lines:
        print(line, file=out)
    return OK


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else 0
