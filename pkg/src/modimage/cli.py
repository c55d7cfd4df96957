"""Command line interface.

Subcommands:

* ``classify``: report the mod-l image type of a curve at each requested
  prime, as text or as exact JSON (all rationals serialized "p/q").
* ``verify-tables``: re-derive every identity the embedded tables assert
  and exit 2 if any fails; ``--emit`` dumps the raw constants instead.
* ``group``: print order, index and generators of a labeled subgroup.
* ``ap``: print a trace of Frobenius.
* ``twist-set``: print the twist discriminants a congruence scan up to a
  given bound cannot eliminate.

Exit codes: 0 on success, 1 on bad input, 2 on verification failure.
"""

import argparse
import json
import sys
from fractions import Fraction

from .classifier import (
    DEFAULT_FROBENIUS_BOUND,
    FactorizationIncomplete,
    classify,
    classify_from_j,
    twist_set,
)
from .ec import (
    BadReduction,
    ShortCurve,
    SingularCurveError,
    WeierstrassCurve,
    ap,
    integral_model,
)
from .polyq import INFINITY
from .tables import emit_text, group_from_label, verify_all


class InputError(Exception):
    """Bad command line input; maps to exit code 1."""


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"malformed rational {text!r}")


def _rational_list(text: str, n: int, what: str):
    parts = text.split(",")
    if len(parts) != n:
        raise InputError(f"{what} needs {n} comma-separated rationals, "
                         f"got {len(parts)}")
    return [_rational(p) for p in parts]


def _int_list(text: str):
    out = []
    for part in text.split(","):
        try:
            out.append(int(part.strip()))
        except ValueError:
            raise InputError(f"malformed integer {part.strip()!r}")
    return out


def _parse_model(ns):
    """Build the curve model from --curve or --short, or None."""
    if getattr(ns, "curve", None) is not None and \
            getattr(ns, "short", None) is not None:
        raise InputError("give only one of --curve and --short")
    try:
        if getattr(ns, "curve", None) is not None:
            a = _rational_list(ns.curve, 5, "--curve")
            return WeierstrassCurve(*a)
        if getattr(ns, "short", None) is not None:
            A, B = _rational_list(ns.short, 2, "--short")
            return ShortCurve(A, B).to_long()
    except SingularCurveError:
        raise InputError("singular curve: the discriminant vanishes")
    return None


def _require_model(ns):
    E = _parse_model(ns)
    if E is None:
        raise InputError("a curve model is required (--curve or --short)")
    return E


def _fmt_q(x) -> str:
    if x is INFINITY:
        return "infinity"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def report_to_dict(report, model) -> dict:
    """JSON-ready dict for a classification report.

    All rationals appear as strings so nothing is rounded; the layout is
    stable so that parse + re-dump reproduces the bytes exactly.
    """
    cm = None
    if report.cm is not None:
        cm = {
            "j": _fmt_q(report.cm.j),
            "field_disc": report.cm.field_disc,
            "order_index": report.cm.order_index,
        }
    images = []
    for r in report.results:
        images.append({
            "prime": r.prime,
            "label": r.label,
            "status": r.status,
            "witness_t": None if r.witness_t is None else _fmt_q(r.witness_t),
            "certificates": [
                {"kind": c.kind, "p": c.p, "trace": c.trace, "det": c.det}
                for c in r.certificates
            ],
            "possible": list(r.possible),
            "note": r.note,
        })
    return {
        "curve": None if model is None else
        [_fmt_q(a) for a in model.a_invariants()],
        "j": _fmt_q(report.j),
        "cm": cm,
        "images": images,
        "exceptional_primes": list(report.exceptional_primes),
    }


def _print_text_report(report, model):
    if model is not None:
        print("curve: " + ",".join(_fmt_q(a) for a in model.a_invariants()))
    print("j = " + _fmt_q(report.j))
    if report.cm is None:
        print("cm: no")
    else:
        print(f"cm: yes (field discriminant -{report.cm.field_disc}, "
              f"order index {report.cm.order_index})")
    for r in report.results:
        line = f"l = {r.prime}: {r.label}  [{r.status}]"
        if r.witness_t is not None:
            line += f"  t = {_fmt_q(r.witness_t)}"
        if r.certificates:
            ruled = " ".join(f"{c.kind}@{c.p}" for c in r.certificates)
            line += f"  ruled out: {ruled}"
        if r.possible:
            line += "  possible: " + ",".join(r.possible)
        if r.note:
            line += f"  ({r.note})"
        print(line)
    exc = report.exceptional_primes
    print("exceptional primes: " +
          (", ".join(str(p) for p in exc) if exc else "none"))


def cmd_classify(ns) -> int:
    model = _parse_model(ns)
    jtext = getattr(ns, "j", None)
    if model is not None and jtext is not None:
        raise InputError("give either a curve model or --j, not both")
    primes = _int_list(ns.primes) if ns.primes else None
    try:
        if model is not None:
            report = classify(model, primes,
                              frobenius_bound=ns.frobenius_bound)
        elif jtext is not None:
            report = classify_from_j(_rational(jtext), primes,
                                     frobenius_bound=ns.frobenius_bound)
        else:
            raise InputError("give a curve (--curve or --short) or --j")
    except ValueError as exc:
        raise InputError(str(exc))
    if ns.format == "json":
        print(json.dumps(report_to_dict(report, model), indent=2))
    else:
        _print_text_report(report, model)
    return 0


def cmd_verify_tables(ns) -> int:
    if ns.emit:
        print(emit_text(), end="")
        return 0
    results = verify_all()
    failures = [(name, detail) for name, ok, detail in results if not ok]
    for name, detail in failures:
        msg = f"FAIL {name}"
        if detail:
            msg += f": {detail}"
        print(msg)
    print(f"{len(results) - len(failures)}/{len(results)} checks passed")
    return 2 if failures else 0


def cmd_group(ns) -> int:
    try:
        g = group_from_label(ns.prime, ns.label)
    except (KeyError, ValueError) as exc:
        raise InputError(f"unknown label: {exc}")
    inv = g.invariants()
    print(f"label: {g.label}")
    print(f"order: {inv.order}")
    print(f"index: {inv.index}")
    print(f"det surjective: {'yes' if inv.det_is_full else 'no'}")
    print(f"contains -I: {'yes' if inv.has_minus_i else 'no'}")
    print("generators: " + " ".join(str(m) for m in g.generators))
    return 0


def cmd_ap(ns) -> int:
    E = _require_model(ns)
    M, _ = integral_model(E)
    try:
        print(ap(M, ns.p))
    except BadReduction as exc:
        raise InputError(str(exc))
    except ValueError as exc:
        raise InputError(str(exc))
    return 0


def cmd_twist_set(ns) -> int:
    E = _require_model(ns)
    try:
        ds = twist_set(E, ns.prime, ns.r, factor_bound=ns.factor_bound)
    except (ValueError, FactorizationIncomplete) as exc:
        raise InputError(str(exc))
    print(" ".join(str(d) for d in sorted(ds)))
    return 0


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract here reserves 2 for
    verification failures, so usage errors are remapped to 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_model_args(p, with_j=False):
    p.add_argument("--curve", metavar="a1,a2,a3,a4,a6",
                   help="long Weierstrass coefficients")
    p.add_argument("--short", metavar="A,B",
                   help="short Weierstrass coefficients")
    if with_j:
        p.add_argument("--j", metavar="J",
                       help="classify by j-invariant alone")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="modimage",
                  description="mod-l Galois image classification for "
                              "elliptic curves over Q")
    sub = top.add_subparsers(dest="command", required=True,
                             parser_class=_Parser)

    p = sub.add_parser("classify", help="classify the mod-l images")
    _add_model_args(p, with_j=True)
    p.add_argument("--primes", metavar="L1,L2,...",
                   help="primes to classify at (default 2,3,5,7,11,13,17,37)")
    p.add_argument("--frobenius-bound", type=int,
                   default=DEFAULT_FROBENIUS_BOUND, metavar="N",
                   help="scan Frobenius traces at good p <= N")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-tables",
                       help="re-check every identity in the tables")
    p.add_argument("--emit", action="store_true",
                   help="dump the table constants instead of verifying")
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("group", help="print a labeled subgroup")
    p.add_argument("--prime", type=int, required=True, metavar="L")
    p.add_argument("--label", required=True, metavar="NAME")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("ap", help="print a trace of Frobenius")
    _add_model_args(p)
    p.add_argument("--p", type=int, required=True, metavar="P")
    p.set_defaults(func=cmd_ap)

    p = sub.add_parser("twist-set", help="print surviving twist candidates")
    _add_model_args(p)
    p.add_argument("--prime", type=int, required=True, metavar="L")
    p.add_argument("--r", type=int, required=True, metavar="R",
                   help="check congruences at good p <= R, p = 1 mod L")
    p.add_argument("--factor-bound", type=int, default=10**6, metavar="N",
                   help="trial division bound for the discriminant")
    p.set_defaults(func=cmd_twist_set)
    return top


def run(argv=None) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return ns.func(ns)
    except InputError as exc:
        print(f"modimage: error: {exc}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
