"""Command-line front end: ``gdet {eval,poly,minors,stab,lab}``.

Exit codes: 0 success/PASS, 1 computation failure or FAIL, 2 usage or parse
error.  With ``--json`` every document is built completely before printing.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import io
from .errors import BadField, GdetError, StabViolation
from .exact_algebra import DenseMatrix, GenDetParams, gen_det, gen_minor_matrix
from .fields import QQ, GF, Rationals
from .lemma_lab import (
    enumerate_n4_sign_solutions,
    n4_exotic_stabilizer_demo,
    verify_derivative_identity,
    verify_rank1_lemma,
)
from .mat_operator import LinearOperator
from .sign_patterns import EquationMode, N4SignFamily
from .stab_engine import extract_canonical, membership_randomized, membership_symbolic, sample_member
from .sym_poly import build_gen_det_poly, poly_to_text


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class UsageError(Exception):
    pass


def _field(args):
    if getattr(args, "p", None) is not None:
        try:
            return GF(args.p)
        except BadField as exc:
            raise UsageError(str(exc)) from exc
    spec = getattr(args, "field", None) or "Q"
    if spec in ("Q", "QQ"):
        return QQ
    spec = spec.removeprefix("GF(").removesuffix(")")
    try:
        return GF(int(spec))
    except (ValueError, BadField) as exc:
        raise UsageError(f"bad --field {args.field!r}") from exc


def _params(args):
    if getattr(args, "det", False):
        return GenDetParams(1, -1)
    if getattr(args, "perm", False):
        return GenDetParams(1, 1)
    if getattr(args, "even", False):
        return GenDetParams(1, 0)
    if getattr(args, "odd", False):
        return GenDetParams(0, 1)
    if args.alpha is None or args.beta is None:
        raise UsageError("--alpha and --beta are required (or one of --det/--perm/--even/--odd)")
    for name in ("alpha", "beta"):
        if not _RATIONAL.match(getattr(args, name)):
            raise UsageError(f"--{name} must be an integer or a fraction n/d, got {getattr(args, name)!r}")
    try:
        return GenDetParams(args.alpha, args.beta)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"alpha/beta must be exact rationals: {exc}") from exc


def _glue_negative_values(argv):
    """``--beta -3/4`` -> ``--beta=-3/4``; argparse takes ``-3/4`` for an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--alpha", "--beta"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and _RATIONAL.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def _load(path, parser):
    try:
        return parser(io.load_json(path))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(args, doc, text):
    sys.stdout.write(io.dumps(doc) if args.json else text.rstrip("\n") + "\n")


def _reduce_operator(T, F):
    """Map an operator over QQ into GF(p)."""
    if T.field == F:
        return T
    if not isinstance(T.field, Rationals):
        raise UsageError(f"operator is over {T.field!r}, cannot test over {F!r}")
    try:
        return LinearOperator(T.n, DenseMatrix(T.matrix.entries, F))
    except ZeroDivisionError as exc:
        raise UsageError(f"operator has a denominator divisible by {F.p}") from exc


def cmd_eval(args):
    A = _load(args.matrix, io.matrix_from_json)
    value = gen_det(_params(args), A)
    s = A.field.to_json(value)
    _emit(args, {"value": s, "field": A.field.spec()}, str(s))
    return 0


def cmd_poly(args):
    F = _field(args)
    f = build_gen_det_poly(args.n, _params(args), F, cap=6)
    text = poly_to_text(f)
    _emit(args, {"n": args.n, "field": F.spec(), "terms": len(f), "poly": text}, text)
    return 0


def cmd_minors(args):
    A = _load(args.matrix, io.matrix_from_json)
    M = gen_minor_matrix(_params(args), A, args.r)
    doc = io.matrix_to_json(M)
    _emit(args, doc, "\n".join(" ".join(str(M.field.to_json(x)) for x in row) for row in M.entries))
    return 0


def _canonical_or_violation(T, params):
    if T.n < 3:
        return None
    try:
        return extract_canonical(T, params).to_json()
    except StabViolation as exc:
        return exc.record()


def cmd_stab_check(args):
    T = _load(args.transform, io.operator_from_json)
    params = _params(args)
    if args.mode == "random":
        if args.p is not None:
            T = _reduce_operator(T, _field(args))
        verdict = membership_randomized(T, params, trials=args.trials, seed=args.seed)
    else:
        verdict = membership_symbolic(T, params)
    doc = io.verdict_to_json(verdict, _canonical_or_violation(T, params))
    text = ("member" if verdict.member else "non-member") + f" ({args.mode})"
    if verdict.witness is not None:
        text += "\nwitness:\n" + "\n".join(" ".join(str(verdict.witness.field.to_json(x)) for x in row)
                                           for row in verdict.witness.entries)
    _emit(args, doc, text)
    return 0


def cmd_stab_extract(args):
    T = _load(args.transform, io.operator_from_json)
    try:
        elem = extract_canonical(T, _params(args))
    except StabViolation as exc:
        record = exc.record()
        if args.json:
            sys.stdout.write(io.dumps(record))
        else:
            sys.stderr.write(f"{record['violation']}: {record['message']}\n")
        return 1
    sys.stdout.write(io.dumps(elem.to_json()))
    return 0


def cmd_stab_sample(args):
    F = _field(args)
    T, elem = sample_member(args.n, F, args.seed)
    op_doc, spec_doc = io.operator_to_json(T), elem.to_json()
    if args.out:
        with open(f"{args.out}.operator.json", "w") as fh:
            fh.write(io.dumps(op_doc))
        with open(f"{args.out}.spec.json", "w") as fh:
            fh.write(io.dumps(spec_doc))
        _emit(args, {"operator": f"{args.out}.operator.json", "spec": f"{args.out}.spec.json"},
              f"wrote {args.out}.operator.json and {args.out}.spec.json")
    else:
        sys.stdout.write(io.dumps({"operator": op_doc, "spec": spec_doc}))
    return 0


def _report_out(args, reports):
    lines = []
    for rep in reports:
        lines.append(json.dumps(rep.to_json(), sort_keys=True) if args.json else rep.summary())
    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_lab_rank1(args):
    return _report_out(args, [verify_rank1_lemma(args.p, args.n, samples=args.samples, seed=args.seed)])


def cmd_lab_n4_signs(args):
    return _report_out(args, [enumerate_n4_sign_solutions(EquationMode(args.mode)).report])


def cmd_lab_n4_exotic(args):
    fam = N4SignFamily(args.eps_u, args.eps_v, EquationMode(args.mode))
    return _report_out(args, [n4_exotic_stabilizer_demo(fam)])


def cmd_lab_derivative(args):
    return _report_out(args, [verify_derivative_identity(args.n, _params(args))])


def _add_params(p, specializations=False):
    p.add_argument("--alpha", help="exact rational, e.g. 2 or -3/4")
    p.add_argument("--beta", help="exact rational")
    if specializations:
        g = p.add_mutually_exclusive_group()
        for name in ("det", "perm", "even", "odd"):
            g.add_argument(f"--{name}", action="store_true")


def _add_field(p):
    p.add_argument("--field", default="Q", help="Q (default) or GF(p)")
    p.add_argument("--p", type=int, help="odd prime; overrides --field")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="gdet", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a generalized determinant")
    p.add_argument("--matrix", required=True)
    _add_params(p, specializations=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("poly", parents=[common], help="print the symbolic polynomial")
    p.add_argument("--n", type=int, required=True)
    _add_params(p, specializations=True)
    _add_field(p)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("minors", parents=[common], help="matrix of generalized r-minors")
    p.add_argument("--matrix", required=True)
    p.add_argument("--r", type=int, required=True)
    _add_params(p, specializations=True)
    p.set_defaults(func=cmd_minors)

    stab = sub.add_parser("stab", help="stabilizer membership, extraction, sampling")
    ssub = stab.add_subparsers(dest="stab_command", required=True)
    p = ssub.add_parser("check", parents=[common])
    p.add_argument("--transform", required=True)
    _add_params(p, specializations=True)
    p.add_argument("--mode", choices=["symbolic", "random"], default="symbolic")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=int, help="test over GF(p) (random mode)")
    p.set_defaults(func=cmd_stab_check)
    p = ssub.add_parser("extract", parents=[common])
    p.add_argument("--transform", required=True)
    _add_params(p)
    p.set_defaults(func=cmd_stab_extract)
    p = ssub.add_parser("sample", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write OUT.operator.json and OUT.spec.json")
    _add_field(p)
    p.set_defaults(func=cmd_stab_sample)

    lab = sub.add_parser("lab", help="lemma verification")
    lsub = lab.add_subparsers(dest="lab_command", required=True)
    p = lsub.add_parser("rank1", parents=[common])
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--samples", type=int, help="sample instead of exhaustive enumeration")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lab_rank1)
    p = lsub.add_parser("n4-signs", parents=[common])
    p.add_argument("--mode", choices=[m.value for m in EquationMode], default="even")
    p.set_defaults(func=cmd_lab_n4_signs)
    p = lsub.add_parser("n4-exotic", parents=[common])
    p.add_argument("--eps-u", type=int, choices=[1, -1], default=-1)
    p.add_argument("--eps-v", type=int, choices=[1, -1], default=1)
    p.add_argument("--mode", choices=["even", "odd"], default="even")
    p.set_defaults(func=cmd_lab_n4_exotic)
    p = lsub.add_parser("derivative", parents=[common])
    p.add_argument("--n", type=int, choices=[4, 5], required=True)
    _add_params(p, specializations=True)
    p.set_defaults(func=cmd_lab_derivative)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"gdet: {exc}\n")
        return 2
    except (GdetError, ZeroDivisionError) as exc:
        sys.stderr.write(f"gdet: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
