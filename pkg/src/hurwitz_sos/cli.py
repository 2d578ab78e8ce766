"""Command-line front end.

Subcommands: expand, verify, search, validate, bmv-check.  Exit codes:
0 success, 1 a verification or trial failed, 2 usage or malformed
input, 3 exact infeasibility proven, 4 search exhausted without an
answer.  All runs are deterministic given flags plus seed; the seed
falls back to the HURWITZ_SOS_SEED environment variable, then 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from .certificate import (
    AnsatzMismatchError,
    CertificateFormatError,
    CertificateStructureError,
    load_ansatz,
    load_certificate,
    save_certificate,
    verify_certificate,
    verify_report_to_json,
)
from .search import (
    SearchOptions,
    SearchStatus,
    UnreachableTargetError,
    feasibility_search,
    outcome_to_json,
)
from .validation import TrialConfig, bmv_check_trials, validate_certificate_trials
from .words import hurwitz_expand

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_UNKNOWN = 4

SEED_ENV = "HURWITZ_SOS_SEED"


class _UsageError(Exception):
    pass


def _resolve_seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw, 0)
    except ValueError:
        raise _UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _parse_dims(text: str) -> tuple:
    try:
        dims = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise _UsageError(f"--dims must be comma-separated integers, got {text!r}")
    if not dims or any(n < 1 for n in dims):
        raise _UsageError(f"--dims must list positive integers, got {text!r}")
    return dims


def _emit(doc: dict, lines: List[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_expand(args: argparse.Namespace) -> int:
    poly = hurwitz_expand(args.p, args.r)
    doc = {str(cls): int(value.re) for cls, value in poly.items()}
    lines = [f"{cls} {value}" for cls, value in poly.items()]
    _emit(doc, lines, args.format)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cert = load_certificate(args.cert)
    report = verify_certificate(cert)
    doc = {"path": args.cert, "p": cert.p, "r": cert.r}
    doc.update(verify_report_to_json(report))
    lines = [
        f"certificate {args.cert} (p={cert.p}, r={cert.r})",
        f"matched: {str(report.matched).lower()}",
        f"psd: {str(report.psd).lower()}",
    ]
    if not report.matched:
        lines.append("residual (expansion minus target):")
        for cls, value in report.residual.items():
            lines.append(f"  {cls} {value}")
    if not report.psd:
        vec = ", ".join(str(x) for x in report.witness)
        lines.append(f"negative witness in block {report.witness_block}: ({vec})")
    lines.append("ok" if report.ok else "FAILED")
    _emit(doc, lines, args.format)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_search(args: argparse.Namespace) -> int:
    hint_p, hint_r, blocks = load_ansatz(args.ansatz)
    p = args.p if args.p is not None else hint_p
    r = args.r if args.r is not None else hint_r
    if p is None or r is None:
        raise _UsageError("search needs -p and -r (flags or ansatz file keys)")
    if (hint_p is not None and hint_p != p) or (hint_r is not None and hint_r != r):
        raise _UsageError(
            f"ansatz file says (p={hint_p}, r={hint_r}), flags say (p={p}, r={r})"
        )
    options = SearchOptions(
        seed=_resolve_seed(args.seed),
        max_iters=args.max_iter,
        denom_bound=args.denom_bound,
    )
    try:
        outcome = feasibility_search(p, r, blocks, options)
    except UnreachableTargetError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    doc = outcome_to_json(outcome)
    lines = [f"status: {outcome.status.value}", f"iterations: {outcome.iterations}"]
    if outcome.status is SearchStatus.CERTIFICATE:
        cert = outcome.certificate
        for idx, (block, gram) in enumerate(cert.blocks):
            shape = f"{block.prefix or ''}|{','.join(block.basis)}|{block.suffix or ''}"
            lines.append(f"block {idx} [{shape}]:")
            for j in range(gram.dimension):
                row = "  ".join(str(gram.at(j, k)) for k in range(gram.dimension))
                lines.append(f"  {row}")
        if args.cert:
            save_certificate(cert, args.cert)
            lines.append(f"certificate written to {args.cert}")
        _emit(doc, lines, args.format)
        return EXIT_OK
    if outcome.status is SearchStatus.INFEASIBLE:
        vec = ", ".join(str(x) for x in outcome.witness)
        lines.append(
            f"witness (block {outcome.witness_block}): ({vec}) "
            f"with form value {outcome.witness_form}"
        )
        _emit(doc, lines, args.format)
        return EXIT_INFEASIBLE
    _emit(doc, lines, args.format)
    return EXIT_UNKNOWN


def cmd_validate(args: argparse.Namespace) -> int:
    cert = load_certificate(args.cert)
    report = verify_certificate(cert)
    if not report.ok:
        print(
            f"certificate {args.cert} failed exact verification; not running trials",
            file=sys.stderr,
        )
        return EXIT_FAIL
    config = TrialConfig(
        seed=_resolve_seed(args.seed),
        dims=_parse_dims(args.dims),
        trials=args.trials,
    )
    trial_report = validate_certificate_trials(cert, config)
    doc = {
        "path": args.cert,
        "summary": trial_report.summary(),
        "rows": [row.to_json() for row in trial_report.rows],
    }
    lines = [row.format_line() for row in trial_report.rows]
    summary = trial_report.summary()
    lines.append(
        f"{summary['passed']}/{summary['trials']} trials passed, "
        f"max diff {summary['max_abs_diff']:.3e}"
    )
    _emit(doc, lines, args.format)
    if not trial_report.all_passed:
        for row in trial_report.failures:
            print(
                f"FAILED trial: n={row.n} trial={row.label} "
                f"(rerun with --seed as recorded)",
                file=sys.stderr,
            )
        return EXIT_FAIL
    return EXIT_OK


def cmd_bmv_check(args: argparse.Namespace) -> int:
    config = TrialConfig(
        seed=_resolve_seed(args.seed),
        dims=_parse_dims(args.dims),
        trials=args.trials,
    )
    report = bmv_check_trials(args.p, config)
    doc = {
        "p": args.p,
        "summary": report.summary(),
        "rows": [row.to_json() for row in report.rows],
    }
    lines = [row.format_line() for row in report.rows]
    summary = report.summary()
    lines.append(
        f"{summary['passed']}/{summary['trials']} trials passed, "
        f"min coefficient {summary['min_coefficient']:.6e}"
    )
    _emit(doc, lines, args.format)
    if not report.all_passed:
        from .numeric import derive_seed, random_psd

        for row in report.failures:
            A = random_psd(row.n, derive_seed(row.trial_seed, 0))
            B = random_psd(row.n, derive_seed(row.trial_seed, 1))
            candidate = {
                "p": row.p,
                "n": row.n,
                "seed": row.trial_seed,
                "coefficients": list(row.coefficients),
                "A": [[[z.real, z.imag] for z in rowv] for rowv in A],
                "B": [[[z.real, z.imag] for z in rowv] for rowv in B],
            }
            print(
                "counterexample candidate: " + json.dumps(candidate),
                file=sys.stderr,
            )
        return EXIT_FAIL
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default: text)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hurwitz-sos",
        description=(
            "Expand two-letter word sums into cyclic classes, verify exact "
            "sum-of-squares certificates for them, search for new ones, and "
            "cross-check certificates numerically."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser(
        "expand", help="expand the (p, r) word sum into cyclic classes"
    )
    p_expand.add_argument("-p", "--p", dest="p", type=int, required=True)
    p_expand.add_argument("-r", "--r", dest="r", type=int, required=True)
    _add_common(p_expand)
    p_expand.set_defaults(func=cmd_expand)

    p_verify = sub.add_parser(
        "verify", help="verify a certificate file exactly"
    )
    p_verify.add_argument("--cert", required=True, help="certificate JSON path")
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_search = sub.add_parser(
        "search", help="search for a Gram certificate over an ansatz"
    )
    p_search.add_argument("-p", "--p", dest="p", type=int, default=None)
    p_search.add_argument("-r", "--r", dest="r", type=int, default=None)
    p_search.add_argument("--ansatz", required=True, help="ansatz JSON path")
    p_search.add_argument(
        "--cert", default=None, help="write any found certificate here"
    )
    p_search.add_argument("--seed", type=int, default=None)
    p_search.add_argument("--max-iter", type=int, default=5000)
    p_search.add_argument("--denom-bound", type=int, default=10_000)
    _add_common(p_search)
    p_search.set_defaults(func=cmd_search)

    p_validate = sub.add_parser(
        "validate", help="cross-check a certificate numerically"
    )
    p_validate.add_argument("--cert", required=True, help="certificate JSON path")
    p_validate.add_argument("--trials", type=int, default=100)
    p_validate.add_argument("--dims", default="1,2,3,4,5,6")
    p_validate.add_argument("--seed", type=int, default=None)
    _add_common(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_bmv = sub.add_parser(
        "bmv-check", help="sample PSD pairs and test coefficient nonnegativity"
    )
    p_bmv.add_argument("-p", "--p", dest="p", type=int, required=True)
    p_bmv.add_argument("--trials", type=int, default=500)
    p_bmv.add_argument("--dims", default="2,3,4")
    p_bmv.add_argument("--seed", type=int, default=None)
    _add_common(p_bmv)
    p_bmv.set_defaults(func=cmd_bmv_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        CertificateFormatError,
        CertificateStructureError,
        AnsatzMismatchError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
