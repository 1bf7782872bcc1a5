"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 parse/validation, 3 internal-invariant
failure.  All output is UTF-8 with line-feed newlines; the compute output
is byte-identical across runs and under branch permutation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InputError, InternalInconsistency, Pi1Error
from .fields import make_field
from .hopf import presentation_to_json
from .curves import minimal_curve
from .decomposition import h_a_presentation
from .pipeline import compute_pi1, parse_spec, render, self_check
from .witt import witt_add, witt_addition_polys, witt_vector

USAGE_EXIT = 1
INPUT_EXIT = 2
INTERNAL_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _build_parser() -> _Parser:
    parser = _Parser(prog="pi1", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="decompose a pinching description")
    p_compute.add_argument("file", help="JSON pinching description")
    p_compute.add_argument("--json", action="store_true", help="emit the JSON report")

    p_curve = sub.add_parser("minimal-curve", help="print a minimal curve")
    p_curve.add_argument("--p", type=int, required=True)
    p_curve.add_argument("--upto", type=int, required=True, metavar="N")

    p_witt = sub.add_parser("witt", help="Witt addition polynomials / sums")
    p_witt.add_argument("--p", type=int, required=True)
    p_witt.add_argument("--length", type=int, required=True)
    p_witt.add_argument(
        "--add", nargs=2, metavar=("X", "Y"), help="two comma-separated vectors"
    )

    p_pres = sub.add_parser("presentation", help="emit one component's presentation")
    p_pres.add_argument("file", help="JSON pinching description")
    p_pres.add_argument(
        "--component", required=True, metavar="I,J", help="branch,component (1-based)"
    )

    sub.add_parser("check", help="run the cross-oracle invariant suite")
    return parser


def _cmd_compute(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        spec = parse_spec(fh.read())
    for w in spec.warnings:
        print(f"warning: {w}", file=sys.stderr)
    expr = compute_pi1(spec)
    out = render(expr, "json" if args.json else "text")
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0


def _cmd_minimal_curve(args) -> int:
    field = make_field(args.p)
    curve = minimal_curve(args.p, args.upto, field)
    pres = curve.presentation
    for i, e in enumerate(curve.elements, start=1):
        print(f"E{i} = {pres.format_poly(e)}")
    return 0


def _cmd_witt(args) -> int:
    field = make_field(args.p)
    polys = witt_addition_polys(args.p, args.length)
    if args.add is None:
        for j, s in enumerate(polys):
            print(f"S{j} = {s.render(args.length)}")
        return 0
    vecs = []
    for chunk in args.add:
        parts = [int(t) for t in chunk.split(",")]
        if len(parts) != args.length:
            raise InputError(f"expected {args.length} components, got {len(parts)}")
        vecs.append(witt_vector(args.p, field, parts))
    total = witt_add(vecs[0], vecs[1], field)
    print(",".join(str(c[0]) for c in total.components))
    return 0


def _cmd_presentation(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        spec = parse_spec(fh.read())
    try:
        bi, ci = (int(t) for t in args.component.split(","))
    except ValueError:
        raise InputError("--component takes two comma-separated integers") from None
    if not (1 <= bi <= len(spec.branches)) or not (1 <= ci <= len(spec.branches[bi - 1])):
        raise InputError(f"component {bi},{ci} out of range")
    pres = h_a_presentation(spec.branches[bi - 1][ci - 1])
    print(json.dumps(presentation_to_json(pres), indent=2, sort_keys=True))
    return 0


def _cmd_check(_args) -> int:
    results = self_check()
    width = max(len(r.name) for r in results)
    bad = 0
    for r in results:
        status = "ok  " if r.ok else "FAIL"
        line = f"{status} {r.name.ljust(width)}"
        if r.detail and not r.ok:
            line += f"  {r.detail}"
        print(line)
    bad = sum(1 for r in results if not r.ok)
    print(f"{len(results) - bad}/{len(results)} invariant suites passed")
    return 0 if bad == 0 else INTERNAL_EXIT


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_EXIT
    handlers = {
        "compute": _cmd_compute,
        "minimal-curve": _cmd_minimal_curve,
        "witt": _cmd_witt,
        "presentation": _cmd_presentation,
        "check": _cmd_check,
    }
    try:
        return handlers[args.command](args)
    except FileNotFoundError as e:
        print(f"pi1: cannot read {e.filename}", file=sys.stderr)
        return INPUT_EXIT
    except InternalInconsistency as e:
        print(f"pi1: internal invariant violated: {e}", file=sys.stderr)
        return INTERNAL_EXIT
    except InputError as e:
        print(f"pi1: {e}", file=sys.stderr)
        return INPUT_EXIT
    except Pi1Error as e:
        print(f"pi1: {e}", file=sys.stderr)
        return INTERNAL_EXIT


if __name__ == "__main__":
    sys.exit(main())
