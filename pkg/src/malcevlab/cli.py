"""Command-line front end.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or parse errors.
Output is deterministic for a given input and seed; `--format
machine-readable` emits a stable line-oriented `key: value` format.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import Algebra, AlgebraFormatError, DimensionMismatch, Element
from .classify import classify, is_nilpotent
from .construct import BasisCapExceeded, build_descriptor
from .engine import check_identity
from .identities import IdentityError, builtin_catalog, parse_identity
from .rationals import format_rational, parse_rational
from .subspaces import lie_kernel, power_chain, subalgebra_generate
from .verify import render_machine, render_text, run_suite, suite_passed


class _UsageError(Exception):
    pass


def _common_flags(parser):
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers for tuple enumeration")
    parser.add_argument(
        "--format",
        choices=("text", "machine-readable"),
        default="text",
        dest="fmt",
        help="output format",
    )


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="malcevlab",
        description="Exact-arithmetic workbench for finite-dimensional anticommutative algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct an algebra and write its text file")
    p.add_argument("descriptor", nargs="+", help="'paper-example', 'free N C', or 'zoo NAME'")
    p.add_argument("-o", "--output", help="output file (default: derived from the descriptor)")
    _common_flags(p)

    p = sub.add_parser("check", help="check an identity (catalog name or DSL) on an algebra file")
    p.add_argument("file")
    p.add_argument(
        "identity",
        nargs="?",
        help="catalog name, or DSL 'name : vars | expr = expr'",
    )
    p.add_argument(
        "--identity",
        dest="identity_flag",
        metavar="NAME",
        help="catalog name lookup (alternative to the positional argument)",
    )
    _common_flags(p)

    p = sub.add_parser("classify", help="report where an algebra sits in the identity hierarchy")
    p.add_argument("file")
    _common_flags(p)

    p = sub.add_parser("verify-paper", help="run the complete certification suite")
    p.add_argument(
        "--corrupt-psi",
        action="store_true",
        help="test mode: corrupt one form value to demonstrate the checks fail",
    )
    _common_flags(p)

    p = sub.add_parser("kernel", help="compute the Lie kernel of an algebra file")
    p.add_argument("file")
    _common_flags(p)

    p = sub.add_parser("powers", help="compute the power chain A, A^2, ...")
    p.add_argument("file")
    p.add_argument("--max", type=int, default=None, help="largest power (default: until stable)")
    _common_flags(p)

    p = sub.add_parser("generate", help="subalgebra generated by listed elements")
    p.add_argument("file")
    p.add_argument(
        "elements",
        nargs="+",
        help="basis labels, basis indices, or comma-separated coordinate vectors",
    )
    p.add_argument("-o", "--output", help="write the generated subalgebra as an algebra file")
    _common_flags(p)

    return parser


def _emit(pairs):
    # both output formats are the same stable line-oriented key: value
    # form for the simple commands; only verify-paper renders differently
    for key, value in pairs:
        print(f"{key}: {value}")


def _load(path) -> Algebra:
    try:
        return Algebra.load(path, name=str(path))
    except FileNotFoundError as exc:
        raise _UsageError(str(exc)) from exc
    except AlgebraFormatError as exc:
        raise _UsageError(f"{path}: {exc}") from exc


def _cmd_build(args) -> int:
    try:
        algebra = build_descriptor(args.descriptor)
    except (ValueError, BasisCapExceeded) as exc:
        raise _UsageError(str(exc)) from exc
    out = args.output or f"{'-'.join(args.descriptor)}.alg".replace(" ", "-")
    algebra.save(out)
    _emit([("file", out), ("dim", algebra.dim), ("labels", " ".join(algebra.labels))])
    return 0


def _resolve_identity(text: str):
    if "|" in text:
        return parse_identity(text)
    catalog = builtin_catalog()
    if text in catalog:
        return catalog[text].identity
    raise _UsageError(
        f"unknown identity {text!r}; catalog names: {', '.join(catalog)}"
    )


def _cmd_check(args) -> int:
    algebra = _load(args.file)
    requested = args.identity or args.identity_flag
    if not requested or (args.identity and args.identity_flag):
        raise _UsageError("give exactly one identity (positional or --identity NAME)")
    ident = _resolve_identity(requested)
    report = check_identity(algebra, ident, jobs=args.jobs)
    pairs = [
        ("identity", ident.name),
        ("checked-form", report.identity.to_dsl()),
        ("algebra", f"{args.file} (dim {algebra.dim})"),
        ("status", report.status),
        ("tuples", report.tuples_checked),
    ]
    if report.counterexample is not None:
        cx = report.counterexample
        labels = ", ".join(algebra.labels[i] for i in cx.indices)
        pairs.append(("witness", f"({labels})"))
        pairs.append(("residual", algebra.format_element(cx.residual)))
    _emit(pairs)
    return 0 if report.ok else 1


def _cmd_classify(args) -> int:
    algebra = _load(args.file)
    verdict = classify(algebra, jobs=args.jobs)
    pairs = [("algebra", f"{args.file} (dim {algebra.dim})")]
    pairs.extend(verdict.summary())
    for name, cx in sorted(verdict.witnesses.items()):
        labels = ", ".join(algebra.labels[i] for i in cx.indices)
        pairs.append((f"witness.{name}", f"({labels}) -> {algebra.format_element(cx.residual)}"))
    _emit(pairs)
    return 0


def _cmd_verify(args) -> int:
    results = run_suite(seed=args.seed, jobs=args.jobs, corrupt_psi=args.corrupt_psi)
    render = render_machine if args.fmt == "machine-readable" else render_text
    sys.stdout.write(render(results, args.seed, args.jobs))
    return 0 if suite_passed(results) else 1


def _cmd_kernel(args) -> int:
    algebra = _load(args.file)
    kernel = lie_kernel(algebra)
    pairs = [
        ("algebra", f"{args.file} (dim {algebra.dim})"),
        ("kernel-dim", kernel.dim),
    ]
    for t, row in enumerate(kernel.rows):
        pairs.append((f"row.{t}", " ".join(format_rational(c) for c in row)))
    _emit(pairs)
    return 0


def _cmd_powers(args) -> int:
    algebra = _load(args.file)
    k_max = args.max if args.max is not None else algebra.dim + 2
    chain = power_chain(algebra, max(k_max, 1))
    if args.max is None:
        # trim once the chain stabilizes or hits zero
        trimmed = [chain[0]]
        for space in chain[1:]:
            trimmed.append(space)
            if space.is_zero() or space == trimmed[-2]:
                break
        chain = trimmed
    pairs = [("algebra", f"{args.file} (dim {algebra.dim})")]
    for k, space in enumerate(chain, start=1):
        pairs.append((f"power.{k}", space.dim))
    nil, cls = is_nilpotent(algebra)
    pairs.append(("nilpotent", "yes" if nil else "no"))
    if nil:
        pairs.append(("class", cls))
    _emit(pairs)
    return 0


def _parse_element(algebra: Algebra, text: str) -> Element:
    if text in algebra.labels:
        return algebra.basis_element(algebra.labels.index(text))
    if "," in text:
        coords = [parse_rational(c) for c in text.split(",")]
        if len(coords) != algebra.dim:
            raise _UsageError(
                f"element {text!r} has {len(coords)} coordinates, algebra has dim {algebra.dim}"
            )
        return algebra.element(coords)
    try:
        index = int(text)
    except ValueError:
        raise _UsageError(f"unknown element {text!r}: not a label, index, or coordinate vector")
    if not 0 <= index < algebra.dim:
        raise _UsageError(f"basis index {index} out of range")
    return algebra.basis_element(index)


def _cmd_generate(args) -> int:
    algebra = _load(args.file)
    gens = [_parse_element(algebra, text) for text in args.elements]
    subspace, restricted = subalgebra_generate(algebra, gens)
    pairs = [
        ("algebra", f"{args.file} (dim {algebra.dim})"),
        ("generators", len(gens)),
        ("subalgebra-dim", subspace.dim),
        ("basis", " ".join(restricted.labels)),
    ]
    if args.output:
        restricted.save(args.output)
        pairs.append(("file", args.output))
    _emit(pairs)
    return 0


_COMMANDS = {
    "build": _cmd_build,
    "check": _cmd_check,
    "classify": _cmd_classify,
    "verify-paper": _cmd_verify,
    "kernel": _cmd_kernel,
    "powers": _cmd_powers,
    "generate": _cmd_generate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (_UsageError, IdentityError, AlgebraFormatError, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
