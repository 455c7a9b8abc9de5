"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a mathematical mismatch, 2 on a
configuration or window error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Sequence

from .coeff import QSeries, RatFunc, WindowError, var

log = logging.getLogger("eqchern")

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG = 0, 1, 2

SUITE_NAMES = ("heisenberg", "young", "gamma", "vacuum-trace", "jack-eigen", "thm-1-2", "g2",
               "reduced-closed-forms", "route-equality", "qzeta-identities", "derivative", "thm-1-4",
               "conjecture-probe")


class ConfigError(ValueError):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _value(text: str, name: str) -> Any:
    """``sym`` keeps the variable symbolic; anything else must be an exact rational."""
    if text in ("sym", "symbolic"):
        return var(name)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"--{name} needs 'sym' or an exact rational, got {text!r}") from exc


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


# ---------------------------------------------------------------------------
# verify


def _suite_kwargs(name: str, args: argparse.Namespace) -> dict:
    kw: dict[str, Any] = {}
    q, d = args.qmax, args.degmax
    if name == "heisenberg" and d is not None:
        kw["degmax"] = d
    elif name == "gamma" and d is not None:
        kw["degmax"] = d
    elif name == "vacuum-trace" and q is not None:
        kw["qmax"] = q
    elif name == "jack-eigen" and d is not None:
        kw["degmax"] = d
    elif name == "thm-1-2":
        if args.k is not None:
            kw["ks"] = args.k
        if d is not None:
            kw["degmax"] = d
    elif name == "g2" and d is not None:
        kw["degmax"] = d
    elif name == "reduced-closed-forms" and q is not None:
        kw["qmax"] = q
    elif name == "route-equality":
        if q is not None:
            kw["qmax"] = q
        if args.k is not None:
            kw["kmax"] = max(args.k)
    elif name == "qzeta-identities" and q is not None:
        kw["qmax"] = q
    elif name == "derivative":
        if args.n is not None:
            kw["lead_n"] = args.n
            kw["nmax"] = args.n
        if args.k is not None:
            kw["lead_k"] = max(args.k)
        if d is not None:
            kw["degmax"] = d
    elif name == "thm-1-4" and q is not None:
        kw["q_ii"] = q
    elif name == "conjecture-probe":
        if args.k is not None:
            kw["k"] = max(args.k)
        if d is not None:
            kw["degmax"] = d
    return kw


def _run_suite(name: str, kwargs: dict) -> dict:
    from .suites import SUITES

    log.info("running suite %s %s", name, kwargs or "")
    return SUITES[name](**kwargs)


def cmd_verify(args: argparse.Namespace) -> tuple[Any, int]:
    names = list(SUITE_NAMES) if args.suite == "all" else args.suite.split(",")
    unknown = [n for n in names if n not in SUITE_NAMES]
    if unknown:
        raise ConfigError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITE_NAMES)} or all")
    jobs = [(n, _suite_kwargs(n, args)) for n in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_suite, *zip(*jobs)))
    else:
        reports = [_run_suite(n, kw) for n, kw in jobs]
    ok = all(r["status"] == "PASS" for r in reports)
    out = reports[0] if len(reports) == 1 else {
        "suite": args.suite, "params": {}, "status": "PASS" if ok else "FAIL", "reports": reports}
    return out, EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# series commands


def _series_payload(series: QSeries, **meta) -> dict:
    coeffs = [str(RatFunc.coerce(c)) if not isinstance(c, (int, Fraction)) else str(c) for c in series.coeffs]
    return {**meta, "qmax": series.order, "coefficients": coeffs}


def cmd_trace(args: argparse.Namespace) -> tuple[Any, int]:
    from .traces import raw_trace

    m, t1, t2 = _value(args.m, "m"), _value(args.t1, "t1"), _value(args.t2, "t2")
    ts = raw_trace(args.k, args.qmax, m, t1, t2)
    return _series_payload(ts.series, klist=list(args.k), route=ts.route, m=args.m), EXIT_OK


def cmd_reduced(args: argparse.Namespace) -> tuple[Any, int]:
    from .traces import reduced

    m, t1, t2 = _value(args.m, "m"), _value(args.t1, "t1"), _value(args.t2, "t2")
    ts = reduced(args.k, args.qmax, m, t1, t2)
    return _series_payload(ts.series, klist=list(args.k), route=ts.route, m=args.m), EXIT_OK


def cmd_brackets(args: argparse.Namespace) -> tuple[Any, int]:
    from .qzeta import BracketIndex, bibracket, fit_in_bracket_span, z_value

    if args.fit is not None:
        try:
            target = json.loads(args.fit)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--fit expects a JSON list of indices: {exc}") from exc
        cands = [BracketIndex(tuple(x)) if not isinstance(x, dict) else
                 BracketIndex(tuple(x["s"]), tuple(x.get("r", ()))) for x in target]
        f = z_value(args.s, args.qmax) if args.z else bibracket(args.s, args.r, args.qmax)
        res = fit_in_bracket_span(f, cands, args.qmax, margin=args.margin)
        payload = {"target": ("Z" if args.z else "") + str(BracketIndex(args.s, args.r or ())),
                   "qmax": args.qmax, "ok": res.ok, "first_bad_power": res.first_bad_power,
                   "coefficients": {str(k) if k.depth else "1": str(v) for k, v in res.coefficients.items()}}
        return payload, EXIT_OK if res.ok else EXIT_MISMATCH
    idx = BracketIndex(args.s, args.r or ())
    series = z_value(args.s, args.qmax) if args.z else bibracket(idx.s, idx.r, args.qmax)
    return _series_payload(series, index=("Z" if args.z else "") + str(idx), weight=idx.weight,
                           depth=idx.depth), EXIT_OK


def cmd_expand_op(args: argparse.Namespace) -> tuple[Any, int]:
    from .chern import gk_eigen, gk_fock_op
    from .fock import expand_in_monomials, render_operator
    from .vertex import bbar_k

    d = args.degmax
    if args.op == "bbar":
        op = bbar_k(args.k, d)
    elif args.source == "fock":
        op = gk_fock_op(args.k, d)
    else:
        op = expand_in_monomials(gk_eigen(args.k, d), d, args.max_length)
    terms = [{"monomial": str(lam), "coefficient": str(RatFunc.coerce(c))} for lam, c in sorted(op.terms.items())]
    return {"op": args.op, "k": args.k, "degmax": d, "source": args.source,
            "rendered": render_operator(op), "terms": terms}, EXIT_OK


# ---------------------------------------------------------------------------
# output


def _render(payload: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2, default=str)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if "coefficients" in payload and isinstance(payload["coefficients"], list):
            w.writerow(["q_power", "coefficient"])
            for i, c in enumerate(payload["coefficients"]):
                w.writerow([i, c])
        elif "terms" in payload:
            w.writerow(["monomial", "coefficient"])
            for t in payload["terms"]:
                w.writerow([t["monomial"], t["coefficient"]])
        else:
            w.writerow(["suite", "name", "expected", "got", "pass"])
            for r in payload.get("reports", [payload]):
                for it in r.get("items", []):
                    w.writerow([r["suite"], it["name"], it["expected"], it["got"], it["pass"]])
        return buf.getvalue()
    # text
    lines = []
    if "reports" in payload or "items" in payload:
        for r in payload.get("reports", [payload]):
            lines.append(f"{r['status']} {r['suite']}")
            for it in r["items"]:
                tag = {True: "ok  ", False: "FAIL", None: "info"}[it["pass"]]
                got = f": {it['got']}" if it["got"] not in ("", None) else ""
                lines.append(f"  {tag} {it['name']}{got}")
        if "reports" in payload:
            lines.append(f"{payload['status']} {payload['suite']}")
    elif "coefficients" in payload and isinstance(payload["coefficients"], list):
        for i, c in enumerate(payload["coefficients"]):
            lines.append(f"q^{i}: {c}")
    elif "rendered" in payload:
        lines.append(payload["rendered"])
    else:
        lines.append(json.dumps(payload, sort_keys=True, default=str))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eqchern", description="Exact Fock-space Chern character computations.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more diagnostics on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="text"):
        sp.add_argument("--out", "--format", dest="out", choices=("json", "csv", "text"), default=fmt)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="suite name, comma-separated names, or all: " + ", ".join(SUITE_NAMES))
    v.add_argument("--qmax", type=_nonneg)
    v.add_argument("--degmax", type=_nonneg)
    v.add_argument("--k", type=_int_list)
    v.add_argument("--n", type=_nonneg)
    v.add_argument("--jobs", type=int, default=1)
    common(v)
    v.set_defaults(func=cmd_verify)

    for name, func, helptext in (("trace", cmd_trace, "trace series by the eigenvalue sum"),
                                 ("reduced", cmd_reduced, "reduced trace series")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--k", type=_int_list, default=())
        s.add_argument("--m", default="sym")
        s.add_argument("--t1", default="sym")
        s.add_argument("--t2", default="sym")
        s.add_argument("--qmax", type=_nonneg, default=12)
        common(s, "json")
        s.set_defaults(func=func)

    b = sub.add_parser("brackets", help="brackets, bi-brackets, Z-values and fits")
    b.add_argument("--s", type=_int_list, required=True)
    b.add_argument("--r", type=_int_list)
    b.add_argument("--z", action="store_true", help="Z-value instead of bracket")
    b.add_argument("--qmax", type=_nonneg, default=12)
    b.add_argument("--fit", help="JSON list of candidate indices, [] for the constant")
    b.add_argument("--margin", type=_nonneg, default=10)
    common(b, "json")
    b.set_defaults(func=cmd_brackets)

    e = sub.add_parser("expand-op", help="normally ordered expansion of G_k or Bbar_k")
    e.add_argument("--op", choices=("gk", "bbar"), default="gk")
    e.add_argument("--k", type=_nonneg, default=1)
    e.add_argument("--degmax", type=_nonneg, default=4)
    e.add_argument("--source", choices=("eigen", "fock"), default="eigen")
    e.add_argument("--max-length", type=_nonneg)
    common(e)
    e.set_defaults(func=cmd_expand_op)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "r", None) is not None and len(args.r) != len(args.s):
        parser.error("--r must have the same length as --s")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        payload, code = args.func(args)
    except (ConfigError, WindowError, ValueError, ZeroDivisionError) as exc:
        print(f"eqchern: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    sys.stdout.write(_render(payload, args.out))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
