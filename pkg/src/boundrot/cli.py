"""Command-line front end.

Usage::

    boundrot bounds --k 2 --r 0.5
    boundrot coeff --k 4 --n 3
    boundrot extremal --k 3 --order 10
    boundrot series --measure mu.json --kind Rk --order 20
    boundrot verify disk --k 3 --samples 200 --seed 7
    boundrot report --all --k-list 2,3,4,6

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage error.
Relative ``--out`` paths, and the default output file when ``--out`` is
omitted, resolve against ``$BOUNDROT_OUT_DIR`` if that variable is set.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import bounds as B
from . import verify as V
from .caratheodory import SchwarzFn
from .classes import Kind, extremal_fn, extremal_pk, from_measure, pk_from_schwarz
from .errors import BoundRotError
from .measures import DiscreteMeasure

OUT_DIR_ENV = "BOUNDROT_OUT_DIR"


class UsageError(Exception):
    pass


def _real(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid real value {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"value must be finite, got {text!r}")
    return value


def _k_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boundrot", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=("json", "csv", "text"), default=fmt)
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--timestamp", action="store_true",
                       help="add a generated_at field (excluded from reproducibility)")

    p = sub.add_parser("bounds", help="growth, distortion, Re(zf'/f) and P_k disk at |z| = r")
    p.add_argument("--k", type=_real, required=True)
    p.add_argument("--r", type=_real, required=True)
    common(p)

    p = sub.add_parser("coeff", help="coefficient bounds for P_k, R_k, V_k")
    p.add_argument("--k", type=_real, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("extremal", help="coefficients of f* and of z f*'/f*")
    p.add_argument("--k", type=_real, required=True)
    p.add_argument("--order", type=int, default=10)
    common(p)

    p = sub.add_parser("series", help="expand a class function from a measure or Schwarz file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--measure", help='JSON file {"atoms": [[t, w], ...]}')
    src.add_argument("--schwarz", help='JSON file {"c": [re, im], "zeros": [[re, im], ...]}')
    p.add_argument("--kind", choices=("Pk", "Rk", "Vk"), default="Rk")
    p.add_argument("--order", type=int, default=10)
    common(p)

    p = sub.add_parser("verify", help="run one seeded verification check")
    p.add_argument("check", choices=V.CHECKS + ("mean_value",))
    p.add_argument("--k", type=_real, default=2.0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_real, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    common(p)

    p = sub.add_parser("report", help="run the full suite")
    p.add_argument("--all", action="store_true", help="run every check (the default)")
    p.add_argument("--k-list", type=_k_list, default=[2.0, 3.0, 4.0, 6.0])
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    common(p)
    return parser


def _validate(args) -> None:
    if getattr(args, "k", None) is not None and not args.k >= 2:
        raise UsageError(f"--k must be >= 2, got {args.k}")
    if getattr(args, "r", None) is not None and not 0 <= args.r < 1:
        raise UsageError(f"--r must satisfy 0 <= r < 1, got {args.r}")
    if getattr(args, "order", None) is not None and args.order < 2:
        raise UsageError(f"--order must be >= 2, got {args.order}")
    if getattr(args, "samples", None) is not None and args.samples < 1:
        raise UsageError(f"--samples must be >= 1, got {args.samples}")
    if getattr(args, "workers", None) is not None and args.workers < 1:
        raise UsageError(f"--workers must be >= 1, got {args.workers}")
    if args.command == "coeff" and args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    if args.command == "report" and any(k < 2 for k in args.k_list):
        raise UsageError("--k-list entries must be >= 2")


# -- commands -----------------------------------------------------------

def cmd_bounds(args):
    k, r = args.k, args.r
    g = B.growth_bounds(k, r)
    d = B.distortion_bounds(k, r)
    re = B.re_bounds(k, r)
    c, rad = B.pk_disk(k, r)
    rc, rrad = B.robertson_disk(k, r)
    payload = {
        "command": "bounds", "k": k, "r": r,
        "growth": {"lower": g.lower, "upper": g.upper},
        "distortion": {"lower": d.lower, "upper": d.upper, "clamped": d.meta["clamped"]},
        "re_zf'/f": {"lower": re.lower, "upper": re.upper},
        "pk_disk": {"center": c, "radius": rad},
        "robertson_disk": {"center": rc, "radius": rrad},
        "radius_starlike": B.radius_starlike(k),
    }
    text = [
        f"k = {k:g}, r = {r:g}",
        f"  {g.lower:.12g} <= |f(z)| <= {g.upper:.12g}",
        f"  {d.lower:.12g} <= |f'(z)| <= {d.upper:.12g}" + ("  (lower clamped)" if d.meta["clamped"] else ""),
        f"  {re.lower:.12g} <= Re z f'(z)/f(z) <= {re.upper:.12g}",
        f"  |p(z) - {c:.12g}| <= {rad:.12g}",
        f"  |z f''/f' - {rc:.12g}| <= {rrad:.12g}",
        f"  R_{{S*}} = {B.radius_starlike(k):.12g}",
    ]
    rows = [{"quantity": name, "lower": lo, "upper": hi} for name, lo, hi in (
        ("|f|", g.lower, g.upper), ("|f'|", d.lower, d.upper), ("Re zf'/f", re.lower, re.upper),
        ("p disk", c - rad, c + rad))]
    return payload, text, rows, 0


def cmd_coeff(args):
    k, n = args.k, args.n
    payload = {"command": "coeff", "k": k, "n": n, "Pk": B.coeff_bound(k, n, "Pk")}
    text = [f"k = {k:g}, n = {n}", f"  |p_n| <= {payload['Pk']:.12g}"]
    if n >= 2:
        payload["Rk"] = B.coeff_bound(k, n, "Rk")
        payload["Vk"] = B.coeff_bound(k, n, "Vk")
        text += [f"  |a_n| <= {payload['Rk']:.12g}  (R_k)",
                 f"  |a_n| <= {payload['Vk']:.12g}  (V_k)"]
    rows = [{"class": c, "k": k, "n": n, "bound": payload[c]} for c in ("Pk", "Rk", "Vk")
            if c in payload]
    return payload, text, rows, 0


def cmd_extremal(args):
    k, N = args.k, args.order
    f = extremal_fn(k, N)
    p = extremal_pk(k, N)
    payload = {"command": "extremal", "k": k, "order": N,
               "f*": f.series.to_pairs(), "p*": p.series.to_pairs()}
    text = [f"f*(z) = z (1-z)^(k/2-1) / (1+z)^(k/2+1), k = {k:g}"]
    text += [f"  a_{n} = {f.coeffs[n].real:.12g}" for n in range(1, N + 1)]
    text += ["z f*'/f* = (1 - k z + z^2)/(1 - z^2)"]
    text += [f"  p_{n} = {p.coeffs[n].real:.12g}" for n in range(1, N + 1)]
    rows = [{"n": n, "a_n": f.coeffs[n].real, "p_n": p.coeffs[n].real} for n in range(N + 1)]
    return payload, text, rows, 0


def cmd_series(args):
    N = args.order
    try:
        if args.measure:
            mu = DiscreteMeasure.from_json(Path(args.measure).read_text())
            fn = from_measure(mu, args.kind, N)
        else:
            phi = SchwarzFn.from_json(Path(args.schwarz).read_text())
            if args.kind != "Pk":
                raise UsageError("--schwarz only produces Pk functions (use --kind Pk)")
            fn = pk_from_schwarz(phi, N)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read input: {exc}") from exc
    payload = dict(fn.to_dict(), command="series")
    sym = "p" if fn.kind is Kind.Pk else "a"
    text = [f"{fn.kind.value}, k = {fn.k:.12g}"]
    text += [f"  {sym}_{n} = {c.real:.12g}{c.imag:+.12g}i" for n, c in enumerate(fn.coeffs)]
    rows = [{"n": n, "re": c.real, "im": c.imag} for n, c in enumerate(fn.coeffs)]
    return payload, text, rows, 0


def _report_text(rep) -> list[str]:
    status = "PASS" if rep.passed else "FAIL"
    lines = [f"[{status}] {rep.check} k={rep.k:g} samples={rep.n_samples} seed={rep.seed} "
             f"max_violation={rep.max_violation:.3e} sharpness_gap={rep.sharpness_gap:.3e}"]
    for row in rep.params.get("unattained_bounds", []):
        lines.append(f"  open: |a_{row['n']}| bound {row['bound']:.12g} vs f* "
                     f"{row['extremal']:.12g}")
    return lines


def cmd_verify(args):
    extra = {}
    if args.order is not None and args.check in ("disk", "growth", "radius", "rotation", "mean_value"):
        extra["order"] = args.order
    rep = V.run_check(args.check, args.k, samples=args.samples, seed=args.seed, tol=args.tol,
                      workers=args.workers, **extra)
    return rep.to_dict(), _report_text(rep), rep.csv_rows(), 0 if rep.passed else 1


def cmd_report(args):
    reports = V.run_suite(args.k_list, seed=args.seed, samples=args.samples,
                          workers=args.workers)
    ok = all(r.passed for r in reports)
    payload = {"command": "report", "k_list": args.k_list, "seed": args.seed,
               "pass": ok, "reports": [r.to_dict() for r in reports]}
    text = [line for r in reports for line in _report_text(r)]
    text.append("ALL PASS" if ok else "FAILURES PRESENT")
    rows = [{"check": r.check, "k": r.k, "n_samples": r.n_samples,
             "max_violation": r.max_violation, "sharpness_gap": r.sharpness_gap,
             "pass": r.passed} for r in reports]
    return payload, text, rows, 0 if ok else 1


COMMANDS = {"bounds": cmd_bounds, "coeff": cmd_coeff, "extremal": cmd_extremal,
            "series": cmd_series, "verify": cmd_verify, "report": cmd_report}


def render(payload, text, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "text":
        return "\n".join(text) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _output_path(args) -> Path | None:
    base = os.environ.get(OUT_DIR_ENV)
    if args.out:
        path = Path(args.out)
        return Path(base) / path if base and not path.is_absolute() else path
    if base:
        name = args.command + (f"-{args.check}" if args.command == "verify" else "")
        return Path(base) / f"{name}.{args.format}"
    return None


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _validate(args)
        payload, text, rows, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"boundrot: error: {exc}", file=sys.stderr)
        return 2
    except BoundRotError as exc:
        print(f"boundrot: error: {exc}", file=sys.stderr)
        return 2
    if args.timestamp and isinstance(payload, dict):
        payload["generated_at"] = datetime.now(timezone.utc).isoformat()
    out = render(payload, text, rows, args.format)
    path = _output_path(args)
    if path is None:
        sys.stdout.write(out)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
