"""Command-line interface: kernel evaluation, the verification suites,
and grid sweeps with machine-readable output.

Logging verbosity comes from HEISKERN_LOG in {quiet, info, debug}.
Exit codes: 0 success, 1 failed verification or non-converged
evaluation, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import math
import os
import sys
import time
from typing import List, Optional

from . import verify
from .errors import HeiskernError
from .heisenberg import HeisenbergPoint, parse_z
from .kernels import (DEFAULT_KERNEL_CONFIG, KernelQuery, folland_closed,
                      folland_integral, green_r0, resolvent)
from .numerics import QuadratureConfig

log = logging.getLogger("heiskern")

_SWEEP_COLUMNS = ["n", "zmag", "tau", "closed", "integral", "abs_err",
                  "rel_err", "evaluations", "seconds"]


def _setup_logging() -> None:
    level = {"quiet": logging.WARNING, "info": logging.INFO,
             "debug": logging.DEBUG}.get(
        os.environ.get("HEISKERN_LOG", "quiet"), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(message)s")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _cfg_with_tol(tol: Optional[float]) -> QuadratureConfig:
    if tol is None:
        return DEFAULT_KERNEL_CONFIG
    return dataclasses.replace(DEFAULT_KERNEL_CONFIG, rel_tol=tol)


def _parse_point(z_text: str, tau: float) -> HeisenbergPoint:
    return HeisenbergPoint(parse_z(z_text), tau)


def _parse_complex(text: str) -> complex:
    pieces = text.split(":")
    if len(pieces) != 2:
        raise HeiskernError(f"bad complex literal {text!r}; expected re:im")
    return complex(float(pieces[0]), float(pieces[1]))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heiskern",
        description="Heisenberg sub-Laplacian kernel evaluation and "
                    "identity verification")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a kernel at one point")
    evsub = ev.add_subparsers(dest="kernel", required=True)

    fol = evsub.add_parser("folland", help="fundamental solution")
    fol.add_argument("--n", type=int, required=True)
    fol.add_argument("--z", required=True,
                     help='coordinates as "re:im;re:im;..."')
    fol.add_argument("--tau", type=float, required=True)
    fol.add_argument("--method", choices=["closed", "integral", "green"],
                     default="closed")
    fol.add_argument("--tol", type=float, default=None,
                     help="relative tolerance override")

    res = evsub.add_parser("resolvent", help="resolvent kernel")
    res.add_argument("--n", type=int, required=True)
    res.add_argument("--zeta", required=True, help='complex "re:im", Re < 0')
    res.add_argument("--z", required=True)
    res.add_argument("--tau", type=float, required=True)
    res.add_argument("--w", default=None, help="second point (default 0)")
    res.add_argument("--s", type=float, default=0.0)
    res.add_argument("--tol", type=float, default=None)

    ver = sub.add_parser("verify", help="run the identity suites")
    ver.add_argument("--suite", default="all",
                     choices=["all", "chain", "kernels", "distributional"])
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--out", default=None, help="write the report CSV here")

    sw = sub.add_parser("sweep", help="grid sweep of integral vs closed")
    sw.add_argument("--n", required=True, help="comma-separated, e.g. 1,2,3")
    sw.add_argument("--zmag", required=True)
    sw.add_argument("--tau", required=True)
    sw.add_argument("--out", required=True)
    sw.add_argument("--tol", type=float, default=None)
    return parser


def _eval_folland(args) -> int:
    p = _parse_point(args.z, args.tau)
    cfg = _cfg_with_tol(args.tol)
    method = args.method
    note = None
    zsq = sum(abs(v) ** 2 for v in p.z)
    if method == "integral" and zsq == 0.0:
        # the integral representation degenerates at z = 0; answer from
        # the closed form and say so
        method = "closed"
        note = "closed-form fallback (z=0)"
    if method == "closed":
        value = folland_closed(p, args.n)
        record = {"value": _fmt(value), "error_estimate": _fmt(0.0),
                  "evaluations": 0, "converged": "true", "method": "closed"}
        exit_code = 0
    elif method == "integral":
        r = folland_integral(p, args.n, cfg)
        record = {"value": _fmt(r.value.real),
                  "error_estimate": _fmt(r.error_estimate),
                  "evaluations": r.evaluations,
                  "converged": "true" if r.converged else "false",
                  "method": "integral"}
        exit_code = 0 if r.converged else 1
    else:
        r = green_r0(p, None, args.n, cfg)
        record = {"value": _fmt(r.value.real),
                  "error_estimate": _fmt(r.error_estimate),
                  "evaluations": r.evaluations,
                  "converged": "true" if r.converged else "false",
                  "method": "green"}
        exit_code = 0 if r.converged else 1
    if note:
        record["provenance"] = f'"{note}"'
    print(" ".join(f"{k}={v}" for k, v in record.items()))
    return exit_code


def _eval_resolvent(args) -> int:
    p = _parse_point(args.z, args.tau)
    q = _parse_point(args.w, args.s) if args.w else None
    zeta = _parse_complex(args.zeta)
    r = resolvent(KernelQuery(n=args.n, p=p, q=q, zeta=zeta,
                              cfg=_cfg_with_tol(args.tol)))
    record = {"value_re": _fmt(r.value.real), "value_im": _fmt(r.value.imag),
              "error_estimate": _fmt(r.error_estimate),
              "evaluations": r.evaluations,
              "converged": "true" if r.converged else "false",
              "method": "resolvent"}
    print(" ".join(f"{k}={v}" for k, v in record.items()))
    return 0 if r.converged else 1


def _run_verify(args) -> int:
    reports = verify.run_suite(args.suite, seed=args.seed)
    if args.out:
        verify.write_reports_csv(reports, args.out)
        log.info("wrote %d report rows to %s", len(reports), args.out)
    by_id = {}
    for r in reports:
        ok, total = by_id.get(r.identity_id, (0, 0))
        by_id[r.identity_id] = (ok + (1 if r.passed else 0), total + 1)
    width = max(len(k) for k in by_id)
    print(f"{'identity':<{width}}  pass/total")
    for key in sorted(by_id):
        ok, total = by_id[key]
        flag = "" if ok == total else "   <-- FAIL"
        print(f"{key:<{width}}  {ok}/{total}{flag}")
    failures = sum(1 for r in reports if not r.passed)
    print(f"total: {len(reports) - failures}/{len(reports)} passed")
    return 0 if failures == 0 else 1


def _run_sweep(args) -> int:
    try:
        n_values = [int(v) for v in args.n.split(",") if v]
        zmags = [float(v) for v in args.zmag.split(",") if v]
        taus = [float(v) for v in args.tau.split(",") if v]
    except ValueError as exc:
        raise HeiskernError(f"bad sweep list: {exc}") from None
    if not (n_values and zmags and taus):
        raise HeiskernError("sweep lists must be non-empty")
    if any(z <= 0 for z in zmags):
        raise HeiskernError("zmag values must be positive")
    cfg = _cfg_with_tol(args.tol)
    rows = []
    all_converged = True
    for n in n_values:
        for zmag in zmags:
            for tau in taus:
                p = HeisenbergPoint((complex(zmag, 0.0),) + (0j,) * (n - 1),
                                    tau)
                closed = folland_closed(p, n)
                t0 = time.perf_counter()
                r = folland_integral(p, n, cfg)
                seconds = time.perf_counter() - t0
                abs_err = abs(r.value.real - closed)
                all_converged &= r.converged
                rows.append([
                    str(n), _fmt(zmag), _fmt(tau), _fmt(closed),
                    _fmt(r.value.real), _fmt(abs_err),
                    _fmt(abs_err / closed), str(r.evaluations),
                    f"{seconds:.3f}",
                ])
                log.info("sweep n=%d zmag=%g tau=%g: rel %.3g", n, zmag,
                         tau, abs_err / closed)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(_SWEEP_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0 if all_converged else 1


_VALUE_FLAGS = {"--zeta", "--z", "--w", "--tau", "--s", "--zmag", "--n",
                "--out", "--tol", "--method", "--suite", "--seed"}


def _join_flag_values(argv: List[str]) -> List[str]:
    # "--zeta -1:0" confuses argparse (the value looks like a flag);
    # rewrite to "--zeta=-1:0"
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    _setup_logging()
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_flag_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        if args.command == "eval":
            if args.kernel == "folland":
                return _eval_folland(args)
            return _eval_resolvent(args)
        if args.command == "verify":
            return _run_verify(args)
        return _run_sweep(args)
    except HeiskernError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
