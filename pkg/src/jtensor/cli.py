"""Command line interface: jt decompose | generators | verify | sweep | selftest."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .decomp import (
    Block,
    Decomposition,
    SizeGuardExceeded,
    decompose,
    decomposition_from_rank_profile,
)
from .generators import CASE_LEADER, CASE_SHIFTED, CASE_SINGLETON, Generator, build_generators
from .selfcheck import run_selfcheck
from .tensorspace import Params, from_terms, vector_terms
from .verify import DEFAULT_SIZE_GUARD, verify_all

_CASES = (CASE_SINGLETON, CASE_LEADER, CASE_SHIFTED)


class DocumentError(ValueError):
    """Input JSON document is malformed."""


def build_document(params, dec, gens=None, verified=None) -> dict:
    doc = {
        "p": params.p,
        "m": params.m,
        "n": params.n,
        "lambda": list(dec.dims),
        "blocks": [{"a": blk.a, "b": blk.b, "lambda": blk.dim} for blk in dec.blocks],
    }
    if gens is not None:
        doc["generators"] = [
            {
                "i": g.index,
                "lambda": g.dim,
                "socle_index": g.socle_index,
                "case": g.case,
                "coeffs": [
                    {"row": i, "col": j, "value": c} for i, j, c in vector_terms(params, g.vector)
                ],
            }
            for g in gens
        ]
    if verified is not None:
        doc["verified"] = bool(verified)
    doc["version"] = __version__
    return doc


def _blocks_from_dims(dims):
    blocks = []
    start = 0
    while start < len(dims):
        end = start
        while end + 1 < len(dims) and dims[end + 1] == dims[start]:
            end += 1
        blocks.append(Block(start, end + 1, dims[start]))
        start = end + 1
    return tuple(blocks)


def parse_document(doc: dict):
    """Reconstruct (params, claimed decomposition, generators or None)."""
    if not isinstance(doc, dict):
        raise DocumentError("top level must be a JSON object")
    try:
        p, m, n = (int(doc[key]) for key in ("p", "m", "n"))
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad or missing p/m/n: {exc}") from exc
    try:
        params = Params(p, m, n)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    dims = doc.get("lambda")
    if not isinstance(dims, list) or not all(isinstance(x, int) and x > 0 for x in dims):
        raise DocumentError("lambda must be a list of positive integers")
    dims = tuple(dims)
    if any(dims[t] < dims[t + 1] for t in range(len(dims) - 1)):
        raise DocumentError("lambda must be non-increasing")
    blocks = _blocks_from_dims(dims)
    if "blocks" in doc:
        stated = [(int(b["a"]), int(b["b"]), int(b["lambda"])) for b in doc["blocks"]]
        if stated != [(b.a, b.b, b.dim) for b in blocks]:
            raise DocumentError("blocks do not match lambda runs")
    dec = Decomposition(dims, blocks)
    gens = None
    if "generators" in doc:
        if len(dims) != m:
            raise DocumentError(f"lambda has {len(dims)} entries, expected {m}")
        gens = []
        seen = set()
        for rec in doc["generators"]:
            try:
                i = int(rec["i"])
                lam = int(rec["lambda"])
                socle = int(rec["socle_index"])
                case = rec["case"]
                triples = [(int(c["row"]), int(c["col"]), int(c["value"])) for c in rec["coeffs"]]
            except (KeyError, TypeError, ValueError) as exc:
                raise DocumentError(f"bad generator record: {exc}") from exc
            if not 1 <= i <= m or i in seen:
                raise DocumentError(f"generator index {i} out of range or repeated")
            if case not in _CASES:
                raise DocumentError(f"unknown case tag {case!r}")
            if not 1 <= socle <= m:
                raise DocumentError(f"socle index {socle} out of range")
            seen.add(i)
            try:
                vec = from_terms(params, m + n - i, triples)
            except ValueError as exc:
                raise DocumentError(str(exc)) from exc
            gens.append(Generator(i, vec, lam, socle, case))
        gens = tuple(sorted(gens, key=lambda g: g.index))
    return params, dec, gens


def _blocks_text(dec) -> str:
    parts = []
    for blk in dec.blocks:
        span = f"[{blk.a + 1}..{blk.b}]" if blk.b - blk.a > 1 else f"[{blk.b}]"
        parts.append(f"{span} dim {blk.dim}")
    return " | ".join(parts)


def render_text(params, dec, gens=None, verified=None) -> str:
    lines = [
        f"p = {params.p}  m = {params.m}  n = {params.n}"
        f"  (needs cyclic group of order {params.p}^{params.min_group_exponent})",
        "lambda: " + " ".join(str(d) for d in dec.dims),
        "blocks: " + _blocks_text(dec),
    ]
    if gens is not None:
        for g in gens:
            terms = vector_terms(params, g.vector)
            body = " + ".join(
                f"v[{i},{j}]" if c == 1 else f"{c}*v[{i},{j}]" for i, j, c in terms
            ) or "0"
            lines.append(f"y[{g.index}] = {body}   (dim {g.dim}, socle x[{g.socle_index}], {g.case})")
    if verified is not None:
        lines.append(f"verified: {'PASS' if verified else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _size_guard() -> int:
    raw = os.environ.get("JT_SIZE_GUARD")
    if raw is None:
        return DEFAULT_SIZE_GUARD
    try:
        guard = int(raw)
        if guard < 1:
            raise ValueError
    except ValueError:
        raise DocumentError(f"JT_SIZE_GUARD must be a positive integer, got {raw!r}")
    return guard


def _params_from_args(args) -> Params:
    m, n = args.m, args.n
    if m > n:
        print(f"note: swapping m and n, computing with m = {n}, n = {m}", file=sys.stderr)
        m, n = n, m
    return Params(args.p, m, n)


def _report_detail(report) -> str:
    lines = []
    for chk in report.checks:
        if chk.socle_ok and chk.nilpotent_ok and chk.cyclic_dim in (None, chk.dim):
            continue
        lines.append(
            f"  y[{chk.index}]: socle={'ok' if chk.socle_ok else 'FAIL'}"
            f" nilpotent={'ok' if chk.nilpotent_ok else 'FAIL'}"
            f" cyclic_dim={chk.cyclic_dim} expected={chk.dim}"
        )
    if report.direct_sum_rank is not None:
        lines.append(f"  direct sum rank: {report.direct_sum_rank}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def cmd_decompose(args) -> int:
    params = _params_from_args(args)
    dec = decompose(params)
    doc = build_document(params, dec)
    text = json.dumps(doc, indent=2) + "\n" if args.format == "json" else render_text(params, dec)
    _emit(text, args.out)
    return 0


def cmd_generators(args) -> int:
    params = _params_from_args(args)
    dec = decompose(params)
    gens = build_generators(params, dec)
    verified = None
    report = None
    if args.verify:
        report = verify_all(params, dec, gens, _size_guard())
        verified = report.total_ok
    doc = build_document(params, dec, gens, verified)
    if args.format == "json":
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = render_text(params, dec, gens, verified)
    _emit(text, args.out)
    if report is not None and not report.total_ok:
        print("verification failed:\n" + _report_detail(report), file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    guard = _size_guard()
    if args.infile:
        with open(args.infile, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DocumentError(f"invalid JSON: {exc}") from exc
        params, dec, gens = parse_document(doc)
        if gens is None:
            raise DocumentError("document has no generators to verify")
        derived = decompose(params)
        ok = True
        if derived.dims != dec.dims:
            print(
                "lambda does not match the determinant criterion:\n"
                f"  stated:  {list(dec.dims)}\n  derived: {list(derived.dims)}",
                file=sys.stderr,
            )
            ok = False
        for g in gens:
            want_socle = params.m + params.n + 1 - g.index - g.dim
            if g.socle_index != want_socle:
                print(f"generator {g.index}: stated socle {g.socle_index}, derived {want_socle}", file=sys.stderr)
                ok = False
    else:
        if args.p is None or args.m is None or args.n is None:
            raise DocumentError("verify needs --in FILE or all of --p --m --n")
        params = _params_from_args(args)
        dec = decompose(params)
        gens = build_generators(params, dec)
        ok = True
    report = verify_all(params, dec, gens, guard)
    verified = report.total_ok and ok
    doc = build_document(params, dec, gens, verified)
    if args.format == "json":
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = render_text(params, dec, gens, verified)
    _emit(text, args.out)
    if not verified:
        detail = _report_detail(report)
        if detail:
            print("verification failed:\n" + detail, file=sys.stderr)
        return 1
    return 0


def sweep_row(task) -> dict:
    """One pure sweep row; shaped for a process pool."""
    p, m, n, guard, inject = task
    params = Params(p, m, n)
    start = time.perf_counter()
    dec = decompose(params)
    if inject:
        dims = (dec.dims[0] + 1,) + dec.dims[1:]
        dec = Decomposition(dims, dec.blocks)
    try:
        lam_match = decomposition_from_rank_profile(params, guard).dims == dec.dims
    except SizeGuardExceeded:
        lam_match = None
    gens = build_generators(params)
    report = verify_all(params, dec, gens, guard)
    elapsed = time.perf_counter() - start
    return {
        "p": p,
        "m": m,
        "n": n,
        "lambda_match": lam_match,
        "verify_ok": report.total_ok,
        "skipped": report.full_model_skipped,
        "ms": elapsed * 1000.0,
    }


def cmd_sweep(args) -> int:
    try:
        p_list = [int(tok) for tok in args.p_list.split(",") if tok.strip()]
    except ValueError:
        raise DocumentError(f"bad --p-list {args.p_list!r}")
    if not p_list:
        raise DocumentError("empty --p-list")
    for p in p_list:
        Params(p, 1, 1)  # validates primality and range
    if args.max_n < 1:
        raise DocumentError("--max-n must be >= 1")
    guard = _size_guard()
    tasks = [
        (p, m, n, guard, args.inject_fault and (p, m, n) == (p_list[0], 1, 1))
        for p in p_list
        for m in range(1, args.max_n + 1)
        for n in range(m, args.max_n + 1)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(sweep_row, tasks))
    else:
        rows = [sweep_row(t) for t in tasks]
    rows.sort(key=lambda r: (r["p"], r["m"], r["n"]))
    fails = 0
    print(f"{'p':>4} {'m':>3} {'n':>3}  {'lambda':>7} {'verify':>7} {'ms':>8}")
    for r in rows:
        lam = "skip" if r["lambda_match"] is None else ("ok" if r["lambda_match"] else "FAIL")
        ver = "skip" if r["skipped"] else ("ok" if r["verify_ok"] else "FAIL")
        if lam == "FAIL" or ver == "FAIL":
            fails += 1
        print(f"{r['p']:>4} {r['m']:>3} {r['n']:>3}  {lam:>7} {ver:>7} {r['ms']:>8.1f}")
    print(f"{len(rows)} rows, {fails} failures")
    return 1 if fails else 0


def cmd_selftest(_args) -> int:
    results = run_selfcheck()
    bad = 0
    for label, ok in results:
        print(f"{'PASS' if ok else 'FAIL'}  {label}")
        if not ok:
            bad += 1
    print(f"{len(results) - bad}/{len(results)} checks passed")
    return 1 if bad else 0


def _add_instance_flags(sub, required=True):
    sub.add_argument("--p", type=int, required=required, help="prime characteristic")
    sub.add_argument("--m", type=int, required=required, help="first Jordan block size")
    sub.add_argument("--n", type=int, required=required, help="second Jordan block size")


def _add_output_flags(sub):
    sub.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    sub.add_argument("--out", metavar="FILE", default=None, help="write output to FILE instead of stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jt",
        description="Decompose tensor products of Jordan blocks over a prime field, "
        "with explicit generators and brute-force verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("decompose", help="summand dimensions and blocks")
    _add_instance_flags(s)
    _add_output_flags(s)
    s.set_defaults(fn=cmd_decompose)

    s = subs.add_parser("generators", help="explicit generator vectors")
    _add_instance_flags(s)
    _add_output_flags(s)
    s.add_argument("--verify", action="store_true", help="also run the brute-force verifier")
    s.set_defaults(fn=cmd_generators)

    s = subs.add_parser("verify", help="verify computed or supplied generators")
    _add_instance_flags(s, required=False)
    _add_output_flags(s)
    s.add_argument("--in", dest="infile", metavar="FILE", default=None, help="JSON document to verify")
    s.set_defaults(fn=cmd_verify)

    s = subs.add_parser("sweep", help="cross-check both routes over a parameter range")
    s.add_argument("--p-list", default="2,3,5,7,11", help="comma separated primes")
    s.add_argument("--max-n", type=int, default=12, help="largest block size")
    s.add_argument("--jobs", type=int, default=1, help="worker processes (default sequential)")
    s.add_argument("--inject-fault", action="store_true", help="corrupt one row to exercise the failure path")
    s.set_defaults(fn=cmd_sweep)

    s = subs.add_parser("selftest", help="re-derive the frozen reference instances")
    s.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
