"""Command-line front end.

Commands: construct, verify, search, sweep, analyze, export. Exit codes are a
stable contract: 0 success/PASS/witness, 1 FAIL/nonexistent/violations,
2 usage or range error, 3 budget-inconclusive. All file writes are atomic
(temp file + rename). The toolchain is deterministic given its flags; under
--workers > 1 the witness identity may vary unless --deterministic is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .analysis import (
    ALL_ONE_ORDER_CAP,
    all_one_submatrix_check,
    audit_pair_decomposition,
    check_q_cap,
    frankl_kalai_cap,
    max_isolation_lower_bound,
)
from .boolmat import CirculantSpec, circulant, rotate_rows
from .constructions import construct
from .errors import CertificateError, CircfamError
from .families import intersection_matrix, read_certificate, write_certificate
from .search import SearchLimits, SearchProblem, decide_embedding, sweep

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_METHOD_TAGS = {
    "small-p": "small_p",
    "mid-p": "mid_p",
    "blowup": "blowup",
    "recursive-q2": "recursive_q2",
}


def _write_text_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        _write_text_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    method = _METHOD_TAGS[args.method]
    try:
        report = construct(method, args.t, args.p, args.q, args.k)
    except CircfamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = args.out or f"cert_{method}_t{args.t}_p{report.spec.p}_q{report.spec.q}.json"
    write_certificate(out, report.pair, report.spec, report.shift)
    trace = {
        key: value
        for key, value in report.trace.items()
        if isinstance(value, (int, tuple))
    }
    print(
        f"method={method} order={report.spec.n} p={report.spec.p} q={report.spec.q} "
        f"k_used={report.k_used} shift={report.shift} trace={trace} -> {out}"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        pair, spec, shift = read_certificate(args.certificate)
    except (CertificateError, OSError, CircfamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    matrix = intersection_matrix(pair)
    expected = rotate_rows(circulant(spec), shift % spec.n)
    if matrix.rows != spec.n or matrix.cols != spec.n:
        print(f"FAIL: matrix is {matrix.rows}x{matrix.cols}, expected order {spec.n}")
        return EXIT_FAIL
    for i in range(spec.n):
        diff = matrix.masks[i] ^ expected.masks[i]
        if diff:
            j = (diff & -diff).bit_length() - 1
            print(
                f"FAIL at ({i}, {j}): entry is {matrix.entry(i, j)}, "
                f"expected {expected.entry(i, j)}"
            )
            return EXIT_FAIL
    for name, family in (("rows", pair.rows), ("cols", pair.cols)):
        if not family.is_distinct():
            print(f"FAIL: duplicate members in {name}")
            return EXIT_FAIL
    print(f"PASS p={spec.p} q={spec.q} shift={shift % spec.n} order={spec.n}")
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        problem = SearchProblem(
            k=args.k,
            t=args.t,
            p=args.p,
            q=args.q,
            limits=SearchLimits(max_nodes=args.budget_nodes),
        )
        outcome = decide_embedding(
            problem,
            symmetry=not args.no_symmetry,
            workers=args.workers,
            deterministic=args.deterministic,
            backend=args.backend,
        )
    except CircfamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(
        f"status={outcome.status} nodes={outcome.nodes} "
        f"seconds={outcome.seconds:.3f} backend={outcome.backend}"
    )
    if outcome.status == "witness":
        if args.out:
            write_certificate(args.out, outcome.witness, CirculantSpec(args.p, args.q), 0)
            print(f"witness -> {args.out}")
        return EXIT_OK
    if outcome.status == "nonexistent":
        print(f"no embedding of C({args.p},{args.q}) into the {args.t}-subsets of [{args.k}]")
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def _parse_range(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def cmd_sweep(args) -> int:
    skip = set()
    existing_lines: list[str] = []
    if args.out and os.path.exists(args.out):
        with open(args.out) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                skip.add((rec["k"], rec["t"], rec["p"], rec["q"]))
                existing_lines.append(line)
    sink = open(args.out + ".part", "w") if args.out else sys.stdout
    try:
        for line in existing_lines:
            sink.write(line + "\n")
        for record in sweep(
            args.t,
            _parse_range(args.p),
            _parse_range(args.q),
            _parse_range(args.k),
            max_nodes=args.budget_nodes,
            symmetry=not args.no_symmetry,
            workers=args.workers,
            deterministic=args.deterministic,
            backend=args.backend,
            skip=skip,
        ):
            line = json.dumps(record.to_json())
            sink.write(line + "\n")
            sink.flush()
            if (
                record.status == "witness"
                and args.witness_dir
                and record.outcome is not None
            ):
                os.makedirs(args.witness_dir, exist_ok=True)
                path = os.path.join(
                    args.witness_dir,
                    f"witness_t{record.t}_p{record.p}_q{record.q}_k{record.k}.json",
                )
                write_certificate(
                    path,
                    record.outcome.witness,
                    CirculantSpec(record.p, record.q),
                    0,
                )
    finally:
        if args.out:
            sink.close()
            os.replace(args.out + ".part", args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    report: dict = {}
    failed = False
    if args.certificate:
        try:
            pair, spec, shift = read_certificate(args.certificate)
        except (CertificateError, OSError, CircfamError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        matrix = intersection_matrix(pair)
        expected = rotate_rows(circulant(spec), shift % spec.n)
        verified = matrix == expected
        report["certificate"] = {
            "p": spec.p,
            "q": spec.q,
            "shift": shift,
            "t": pair.t,
            "k": pair.k,
            "verified": verified,
        }
        failed = not verified
        if verified:
            audit = audit_pair_decomposition(pair, spec, shift % spec.n)
            report["decomposition_audit"] = audit.to_json()
            failed = failed or not audit.ok
            t = pair.t
            if 1 <= spec.p <= 2 * t - 1 and spec.q >= spec.p - 1:
                bound_ok = check_q_cap(pair, spec)
                report["q_cap_check"] = {
                    "q": spec.q,
                    "cap": pair.used_elements() - 2 * t + 1,
                    "ok": bound_ok,
                }
                failed = failed or not bound_ok
            else:
                report["q_cap_check"] = {"ok": None, "reason": "outside proven range"}
            report["order_cap"] = {
                "n": spec.n,
                "cap": frankl_kalai_cap(t, spec.q),
                "ok": spec.n <= frankl_kalai_cap(t, spec.q),
            }
            failed = failed or not report["order_cap"]["ok"]
    else:
        spec = CirculantSpec(args.p, args.q)
        report["spec"] = {"p": spec.p, "q": spec.q, "n": spec.n}
        if spec.n <= ALL_ONE_ORDER_CAP and spec.p >= 1 and spec.q >= 1:
            ok = all_one_submatrix_check(spec)
            report["all_one_submatrix_check"] = {"bound": spec.p + 1, "ok": ok}
            failed = failed or not ok
        iso = max_isolation_lower_bound(circulant(spec), budget=args.budget_nodes)
        report["isolation_lower_bound"] = iso.to_json()
        del report["isolation_lower_bound"]["positions"]
        if args.t:
            report["order_cap"] = {
                "n": spec.n,
                "cap": frankl_kalai_cap(args.t, spec.q),
                "ok": spec.n <= frankl_kalai_cap(args.t, spec.q),
            }
    text = json.dumps(report, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_export(args) -> int:
    if args.certificate:
        try:
            pair, _, _ = read_certificate(args.certificate)
        except (CertificateError, OSError, CircfamError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        matrix = intersection_matrix(pair)
    else:
        matrix = circulant(CirculantSpec(args.p, args.q))
    if args.format == "text":
        text = matrix.to_text() + "\n"
    elif args.format == "pbm":
        text = matrix.to_pbm()
    else:
        text = (
            json.dumps(
                {
                    "rows": matrix.rows,
                    "cols": matrix.cols,
                    "lines": matrix.to_text().split("\n"),
                },
                indent=2,
            )
            + "\n"
        )
    _emit(text, args.out)
    return EXIT_OK


def _add_common_search_flags(parser) -> None:
    parser.add_argument("--budget-nodes", type=int, default=None)
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="worker processes; overrides CIRCFAM_WORKERS (default 1)",
    )
    parser.add_argument(
        "--deterministic",
        action="store_true",
        help="make the reported witness independent of worker count",
    )
    parser.add_argument("--no-symmetry", action="store_true")
    parser.add_argument("--backend", choices=("auto", "pure", "compiled"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circfam",
        description="Set-family pairs with a circulant intersection matrix: "
        "construct, verify, search, sweep, analyze, export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a certificate by one of the four methods")
    p.add_argument("--method", choices=sorted(_METHOD_TAGS), required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-p", type=int, default=None)
    p.add_argument("-q", type=int, default=None)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a certificate against its declared target")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="decide one embedding question exhaustively")
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--out", default=None, help="write the witness certificate here")
    _add_common_search_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="decide a parameter grid, streaming JSON lines")
    p.add_argument("-t", type=int, required=True)
    p.add_argument("--p", required=True, help="range a:b or single value")
    p.add_argument("--q", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--out", default=None, help="JSONL output; existing cells are skipped")
    p.add_argument("--witness-dir", default=None)
    _add_common_search_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("analyze", help="bound checks and audits for a spec or certificate")
    p.add_argument("--cert", dest="certificate", default=None)
    p.add_argument("-p", type=int, default=None)
    p.add_argument("-q", type=int, default=None)
    p.add_argument("-t", type=int, default=None)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export", help="emit a matrix as text, PBM or JSON")
    p.add_argument("--cert", dest="certificate", default=None)
    p.add_argument("-p", type=int, default=None)
    p.add_argument("-q", type=int, default=None)
    p.add_argument("--format", choices=("text", "pbm", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "analyze" and not args.certificate and args.p is None:
        parser.error("analyze needs --cert or -p/-q")
    if args.command == "export" and not args.certificate and args.p is None:
        parser.error("export needs --cert or -p/-q")
    try:
        return args.func(args)
    except CircfamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
