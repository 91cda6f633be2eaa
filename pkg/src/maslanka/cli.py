"""Command-line front end.

Subcommands: coeff (build/save a coefficient table), bk (RH-criterion
diagnostic data), eval (series evaluation at a point), verify (identity
suites), em-check (Euler-Maclaurin remainder cross-check), decay (power-law
fit data), cache-info (table file inspection).

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
failure (tolerance unmet or quadrature failure).  Data goes to --out or
stdout; diagnostics and progress go to stderr.  Identical argv and input
files produce byte-identical data output (nothing timestamped is emitted).
The environment variable MASLANKA_THREADS caps table-build parallelism.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import mpmath
from mpmath import mp, mpf

from .analysis import decay_fit, rh_diagnostic
from .coefficients import (
    TableFormatError,
    a_k,
    a_k_alt,
    build_table,
    format_real,
    load_table,
    mantissa_digits,
    save_table,
)
from .mpnum import PoleError, PrecisionContext
from .phik import QuadratureError, build_paj, em_remainder_a_k
from .series import maslanka_eval, truncation_check, zeta_reference

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

EM_PAIRS = ((8, 2), (12, 3), (16, 2), (16, 4))
GLOBAL_PROBES = ("3", "0.5", "0.5+14.134725i", "-1", "-2.5", "5+10i")


def parse_complex(text: str):
    """Strict parse of 'a+bi' / 'a-bi' complex literals (decimal components)."""
    t = text.strip()
    if not t:
        raise ValueError("empty complex literal")
    if t.endswith("i"):
        body = t[:-1]
        re_part, im_part = "", body
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "eE":
                re_part, im_part = body[:pos], body[pos:]
                break
        if im_part in ("", "+", "-"):
            im_part += "1"
        re_val = mpf(re_part) if re_part else mp.zero
        return mpmath.mpc(re_val, mpf(im_part))
    return mpf(t)


def _format_for_print(x, digits: int) -> str:
    if isinstance(x, mpmath.mpc) and x.imag != 0:
        im = format_real(x.imag, digits)
        return f"{format_real(x.real, digits)}{im}i"
    re = x.real if isinstance(x, mpmath.mpc) else x
    return format_real(re, digits)


def _progress(total: int):
    if total <= 0:
        return None
    marks = {round(total * p / 10): p for p in range(1, 11)}

    def cb(k: int) -> None:
        pct = marks.get(k + 1)
        if pct is not None:
            print(f"  ... {pct * 10}% ({k + 1}/{total})", file=sys.stderr)

    return cb


def _write_rows(args, header: list[str], rows: list[list[str]], extra: dict | None = None):
    if args.format == "json":
        doc = {"columns": header, "rows": rows}
        if extra:
            doc.update(extra)
        text = json.dumps(doc, indent=2) + "\n"
        if args.out:
            with open(args.out, "w", encoding="ascii", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        fh = open(args.out, "w", encoding="ascii", newline="") if args.out else sys.stdout
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        finally:
            if args.out:
                fh.close()


# -- subcommand handlers -----------------------------------------------------


def _cmd_coeff(args) -> int:
    ctx = PrecisionContext(args.bits)
    method = {"direct-sum": "direct_sum", "exact-pi": "exact_pi_oracle"}[args.method]
    table = build_table(args.kind, args.kmax, ctx, method=method, progress=_progress(args.kmax + 1))
    save_table(table, args.out)
    print(f"wrote kind={table.kind} kmax={table.k_max} target_bits={table.target_bits} -> {args.out}",
          file=sys.stderr)
    return EXIT_OK


def _cmd_bk(args) -> int:
    if args.table:
        table = load_table(args.table)
        if table.kind != "b":
            raise ValueError(f"{args.table} holds kind={table.kind}, need kind=b")
    else:
        ctx = PrecisionContext(args.bits)
        table = build_table("b", args.kmax, ctx, progress=_progress(args.kmax + 1))
    k_min = max(1, args.kmin)
    k_max = min(args.kmax, table.k_max)
    digits = mantissa_digits(table.target_bits)
    rows = []
    # abs() rounds at the ambient precision, which would clip stored values
    with mp.workprec(table.target_bits + 16):
        for k, scaled, scaled_log2 in rh_diagnostic(table, k_min, k_max):
            v = table.values[k]
            rows.append([
                str(k),
                format_real(v, digits),
                format_real(abs(v), digits),
                format_real(scaled, digits),
                format_real(scaled_log2, digits),
            ])
    _write_rows(args, ["k", "value", "abs_value", "k34_scaled", "k34_log2_scaled"], rows)
    return EXIT_OK


def _cmd_eval(args) -> int:
    table = load_table(args.table)
    ctx = PrecisionContext(args.bits)
    s = parse_complex(args.s)
    result = maslanka_eval(s, table, mpf(args.tol), ctx)
    digits = mantissa_digits(min(table.target_bits, args.bits))
    lines = [
        f"s = {_format_for_print(result.s, digits)}",
        f"value = {_format_for_print(result.value, digits)}",
        f"zeta_value = "
        + ("pole" if result.is_pole else _format_for_print(result.zeta_value, digits)),
        f"terms_used = {result.terms_used}",
        f"residual_estimate = {format_real(result.residual_estimate, digits)}",
        f"converged = {str(result.converged).lower()}",
    ]
    out = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if not result.converged:
        print("warning: table exhausted before tolerance was met", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _verify_truncation(table, ctx, nmax, out) -> bool:
    ok_all = True
    tol = mpf(2) ** (-table.target_bits + 8)
    for n in range(1, nmax + 1):
        lhs, rhs = truncation_check(n, table, ctx)
        rel = abs(lhs - rhs) / abs(rhs)
        ok = rel < tol
        ok_all &= ok
        print(f"{'PASS' if ok else 'FAIL'} truncation n={n} rel={mpmath.nstr(rel, 3)}", file=out)
    return ok_all


def _verify_cross_identity(ctx, kmax, out) -> bool:
    ok_all = True
    tol = mpf(2) ** (-ctx.target_bits + 6)
    worst = mp.zero
    for k in range(1, kmax + 1):
        va, vb = a_k(k, ctx), a_k_alt(k, ctx)
        rel = abs(va - vb) / abs(va)
        worst = max(worst, rel)
        if not rel < tol:
            ok_all = False
            print(f"FAIL cross-identity k={k} rel={mpmath.nstr(rel, 3)}", file=out)
    print(f"{'PASS' if ok_all else 'FAIL'} cross-identity k=1..{kmax} "
          f"worst_rel={mpmath.nstr(worst, 3)}", file=out)
    return ok_all


def _verify_em(ctx, tol, out) -> bool:
    ok_all = True
    paj = build_paj(max(a for _, a in EM_PAIRS) + 1)
    for k, a in EM_PAIRS:
        ref = a_k(k, ctx)
        quad_tol = abs(ref) * tol / 100
        val = em_remainder_a_k(k, a, paj, ctx, quad_tol)
        rel = abs(val - ref) / abs(ref)
        ok = rel < tol
        ok_all &= ok
        print(f"{'PASS' if ok else 'FAIL'} em-remainder k={k} a={a} rel={mpmath.nstr(rel, 3)}",
              file=out)
    return ok_all


def _verify_global(table, ctx, tol, out) -> bool:
    ok_all = True
    for text in GLOBAL_PROBES:
        s = parse_complex(text)
        result = maslanka_eval(s, table, tol, ctx)
        ref = zeta_reference(s, ctx)
        err = abs(result.zeta_value - ref)
        ok = err < tol
        ok_all &= ok
        print(f"{'PASS' if ok else 'FAIL'} global-agreement s={text} abs_err={mpmath.nstr(err, 3)}",
              file=out)
    for label, target in (("0", mpf(1) / 2), ("1", mp.one)):
        result = maslanka_eval(parse_complex(label), table, tol, ctx)
        err = abs(result.value - target)
        ok = err < tol
        ok_all &= ok
        print(f"{'PASS' if ok else 'FAIL'} global-agreement s={label} "
              f"(series value) abs_err={mpmath.nstr(err, 3)}", file=out)
    return ok_all


def _cmd_verify(args) -> int:
    ctx = PrecisionContext(args.bits)
    suites = ["truncation", "cross-identity", "em-remainder", "global-agreement"] \
        if args.suite == "all" else [args.suite]
    table = None
    if any(s in ("truncation", "global-agreement") for s in suites):
        if args.table:
            table = load_table(args.table)
        else:
            kmax = max(args.nmax - 1, 400 if "global-agreement" in suites else 0)
            print(f"building kind=A table to k={kmax} at {args.bits} bits", file=sys.stderr)
            table = build_table("A", kmax, ctx, progress=_progress(kmax + 1))
    ok = True
    for suite in suites:
        if suite == "truncation":
            ok &= _verify_truncation(table, ctx, args.nmax, sys.stdout)
        elif suite == "cross-identity":
            ok &= _verify_cross_identity(ctx, 100, sys.stdout)
        elif suite == "em-remainder":
            ok &= _verify_em(ctx, mpf(args.tol) if args.tol else mpf("1e-6"), sys.stdout)
        elif suite == "global-agreement":
            ok &= _verify_global(table, ctx, mpf(args.tol) if args.tol else mpf("1e-20"),
                                 sys.stdout)
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_em_check(args) -> int:
    ctx = PrecisionContext(args.bits)
    tol = mpf(args.tol)
    paj = build_paj(args.a + 1)
    ref = a_k(args.k, ctx)
    quad_tol = mpf(args.quad_tol) if args.quad_tol else abs(ref) * tol / 100
    val = em_remainder_a_k(args.k, args.a, paj, ctx, quad_tol)
    rel = abs(val - ref) / abs(ref)
    digits = mantissa_digits(args.bits)
    print(f"a_k({args.k}) = {format_real(ref, digits)}")
    print(f"em_remainder(k={args.k}, a={args.a}) = {format_real(val, digits)}")
    print(f"rel_diff = {mpmath.nstr(rel, 6)}")
    if not rel < tol:
        print(f"tolerance {args.tol} not met", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_decay(args) -> int:
    table = load_table(args.table)
    fit = decay_fit(table, args.kmin, args.kmax)
    digits = mantissa_digits(table.target_bits)
    rows = []
    with mp.workprec(table.target_bits + 16):
        for k in range(args.kmin, args.kmax + 1):
            v = table.values[k]
            av = abs(v)
            logk = mpmath.log(k)
            logv = mpmath.log(av) if av > 0 else mp.ninf
            rows.append([
                str(k),
                format_real(v, digits),
                format_real(av, digits),
                mpmath.nstr(logk, 17),
                mpmath.nstr(logv, 17) if av > 0 else "-inf",
            ])
    summary = (f"fit k=[{fit.k_range[0]},{fit.k_range[1]}] slope={fit.slope!r} "
               f"intercept={fit.intercept!r} max_abs_residual={fit.max_abs_residual!r} "
               f"excluded={fit.excluded_count}")
    print(summary, file=sys.stderr)
    extra = {"fit": {
        "k_min": fit.k_range[0], "k_max": fit.k_range[1], "slope": fit.slope,
        "intercept": fit.intercept, "max_abs_residual": fit.max_abs_residual,
        "excluded_count": fit.excluded_count,
    }}
    _write_rows(args, ["k", "value", "abs_value", "log_k", "log_abs_value"], rows, extra)
    return EXIT_OK


def _cmd_cache_info(args) -> int:
    table = load_table(args.table)
    print(f"file = {args.table}")
    print(f"kind = {table.kind}")
    print(f"k_max = {table.k_max}")
    print(f"target_bits = {table.target_bits}")
    print(f"mantissa_digits = {mantissa_digits(table.target_bits)}")
    print("checksum = ok")
    digits = mantissa_digits(table.target_bits)
    print(f"first = {format_real(table.values[0], digits)}")
    print(f"last = {format_real(table.values[-1], digits)}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="maslanka",
        description="Maslanka representation of (s-1)*zeta(s): coefficient tables, "
                    "series evaluation, identity verification, decay diagnostics.",
        epilog="MASLANKA_THREADS caps table-build worker processes (default: core count).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_bits(sp):
        sp.add_argument("--bits", type=int, default=128, help="target precision in bits (default 128)")

    sp = sub.add_parser("coeff", help="build a coefficient table and write it in cache format v1")
    sp.add_argument("--kind", choices=["A", "b"], required=True)
    sp.add_argument("--kmax", type=int, required=True)
    add_bits(sp)
    sp.add_argument("--method", choices=["direct-sum", "exact-pi"], default="direct-sum")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_coeff)

    sp = sub.add_parser("bk", help="RH-criterion diagnostic data |b_k| k^(3/4) (and log^2-scaled)")
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--kmin", type=int, default=1)
    add_bits(sp)
    sp.add_argument("--table", help="existing kind=b table (otherwise built)")
    sp.add_argument("--out")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=_cmd_bk)

    sp = sub.add_parser("eval", help="evaluate the series at a complex point")
    sp.add_argument("--s", required=True, help="complex literal, e.g. '0.5+14.134725i'")
    sp.add_argument("--table", required=True)
    sp.add_argument("--tol", default="1e-20")
    add_bits(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("verify", help="run identity verification suites")
    sp.add_argument("--suite", default="all",
                    choices=["truncation", "cross-identity", "em-remainder",
                             "global-agreement", "all"])
    sp.add_argument("--table", help="kind=A table to verify against (otherwise built)")
    sp.add_argument("--nmax", type=int, default=20, help="truncation identities up to n (default 20)")
    sp.add_argument("--tol", help="override suite tolerance "
                                  "(default 1e-6 for em-remainder, 1e-20 for global-agreement)")
    add_bits(sp)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("em-check", help="cross-check one A_k against its remainder integral")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    add_bits(sp)
    sp.add_argument("--tol", default="1e-6")
    sp.add_argument("--quad-tol", dest="quad_tol",
                    help="absolute quadrature tolerance (default |A_k| * tol / 100)")
    sp.set_defaults(func=_cmd_em_check)

    sp = sub.add_parser("decay", help="log-log decay data and power-law fit for a table")
    sp.add_argument("--table", required=True)
    sp.add_argument("--kmin", type=int, required=True)
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=_cmd_decay)

    sp = sub.add_parser("cache-info", help="inspect a cache-format table file")
    sp.add_argument("--table", required=True)
    sp.set_defaults(func=_cmd_cache_info)

    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (QuadratureError, PoleError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (TableFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
