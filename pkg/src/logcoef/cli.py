"""Batch front end: ``logcoef {gamma,search,verify,extremal,roots}``.

Every command builds a JSON report of the form
``{command, config, results, flags, volatile}``; only ``volatile`` carries
run-dependent data (a timestamp), so identical arguments give identical
bytes elsewhere.  Exit status: 0 success, 1 gap or violation, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .caratheodory import AtomicHerglotz, HerglotzDomainError
from .classes import CLASSES, build_ctc, gammas123, get_class
from .extremal import EXTREMALS
from .search import (
    DEFAULT_RESOLUTION,
    DEFAULT_TOL,
    NAMED_POLYNOMIALS,
    RealPolynomial,
    real_roots_in_interval,
    stationarity_candidates,
    verify_claimed_max,
)
from .series import DEFAULT_ORDER, SeriesDomainError, TruncatedSeries, gammas_from_a, identity, koebe, log_coefficients
from .verifier import DEFAULT_SEED, DEFAULT_TRIALS, RATIO_TOL, bound_suite

EXIT_OK, EXIT_GAP, EXIT_USAGE = 0, 1, 2
DEFAULT_GAP_TOL = 1e-4
MATCH_TOL = 1e-10


class UsageError(Exception):
    """Bad input that argparse itself cannot catch (files, atom specs)."""


@dataclass
class RunConfig:
    command: str
    classes: list[str]
    target: str | None
    order: int
    resolution: int
    tol: float
    gap_tol: float
    trials: int
    seed: int
    threads: int
    format: str
    output: str | None


# -- serialisation ---------------------------------------------------------------


def _plain(obj: Any, floats: list[float]) -> Any:
    """Replace every float by a placeholder so the encoder cannot reformat it."""
    if isinstance(obj, dict):
        return {str(k): _plain(v, floats) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v, floats) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist(), floats)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _plain([obj.real, obj.imag], floats)
    if isinstance(obj, (float, np.floating)) or hasattr(obj, "__float__") and not isinstance(obj, str):
        floats.append(float(obj))
        return f"\x00{len(floats) - 1}\x00"
    return obj


def _fmt17(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj: Any) -> str:
    """JSON with every float written to 17 significant digits; NaN/inf become null."""
    floats: list[float] = []
    text = json.dumps(_plain(obj, floats), indent=2, sort_keys=False)
    for i, v in enumerate(floats):
        text = text.replace(f'"\\u0000{i}\\u0000"', _fmt17(v), 1)
    return text


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt17(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


# -- input -----------------------------------------------------------------------


def read_coefficients(path: str | Path, order: int | None = None) -> TruncatedSeries:
    """Parse a coefficient file: one "re im" (or "re") per line, a1 first, '#' comments."""
    vals: list[complex] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        try:
            if len(parts) not in (1, 2):
                raise ValueError(f"expected 're im', got {len(parts)} fields")
            vals.append(complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0))
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    if not vals:
        raise UsageError(f"{path}: no coefficients")
    a = [0j, *vals]
    if order is not None:
        a = (a + [0j] * (order + 1))[: order + 1]
    return TruncatedSeries(a)


def parse_atoms(spec: str) -> AtomicHerglotz:
    """'w:re,im;w:re,im;...' -> AtomicHerglotz."""
    atoms = []
    for k, item in enumerate(filter(None, (s.strip() for s in spec.split(";"))), start=1):
        try:
            w, mu = item.split(":")
            re_, im_ = mu.split(",")
            atoms.append((float(w), complex(float(re_), float(im_))))
        except ValueError:
            raise UsageError(f"atom {k}: expected 'weight:re,im', got {item!r}") from None
    try:
        return AtomicHerglotz(atoms)
    except HerglotzDomainError as exc:
        raise UsageError(str(exc)) from None


# -- commands --------------------------------------------------------------------


def _gamma_rows(gam: np.ndarray, closed: Sequence[complex] | None) -> list[dict]:
    rows = []
    for n, g in enumerate(gam, start=1):
        row = {"n": n, "series": complex(g), "abs": abs(g)}
        if closed is not None and n <= 3:
            row["closed_form"] = complex(closed[n - 1])
            row["route_diff"] = abs(complex(closed[n - 1]) - g)
        rows.append(row)
    return rows


def cmd_gamma(cfg: RunConfig, args: argparse.Namespace) -> tuple[dict, list[str], int]:
    flags: list[str] = []
    source: dict[str, Any]
    if args.coeffs:
        f = read_coefficients(args.coeffs, cfg.order)
        closed = gammas_from_a(*f.coeffs[2:5]) if f.order >= 4 else None
        source = {"coeffs": str(args.coeffs)}
    elif args.builtin:
        f = koebe(cfg.order) if args.builtin == "koebe" else identity(cfg.order)
        closed = gammas_from_a(*f.coeffs[2:5]) if f.order >= 4 else None
        source = {"builtin": args.builtin}
    else:
        if len(cfg.classes) != 1:
            raise UsageError("--atoms/--witness need a single --class")
        cls = get_class(cfg.classes[0])
        if args.atoms:
            h = parse_atoms(args.atoms)
            source = {"class": cls.id, "atoms": args.atoms}
        else:
            res = EXTREMALS[args.witness](cls)
            h = res.spec.herglotz
            flags.extend(res.discrepancies)
            source = {"class": cls.id, "witness": args.witness, "description": res.spec.description}
        ctc = build_ctc(cls, h, cfg.order)
        f = ctc.f
        closed = gammas123(ctc)
    try:
        gam = log_coefficients(f).gammas
    except SeriesDomainError as exc:
        raise UsageError(str(exc)) from None
    return {"source": source, "gammas": _gamma_rows(gam, closed)}, flags, EXIT_OK


def cmd_search(cfg: RunConfig, args: argparse.Namespace) -> tuple[dict, list[str], int]:
    if len(cfg.classes) != 1:
        raise UsageError("search needs a single --class")
    rep = verify_claimed_max(cfg.classes[0], cfg.target or "gamma3", cfg.resolution, cfg.tol, cfg.threads)
    code = EXIT_OK if rep.abs_gap <= cfg.gap_tol else EXIT_GAP
    return rep.to_dict(), list(rep.notes), code


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> tuple[dict, list[str], int]:
    reports, flags = [], []
    for c in cfg.classes:
        inject: list[AtomicHerglotz] = []
        if args.inject_extremals:
            inject = [EXTREMALS[t](c).spec.herglotz for t in EXTREMALS]
        rep = bound_suite(c, cfg.trials, cfg.seed, inject, cfg.threads)
        reports.append(rep.to_dict())
        flags.extend(f"{rep.class_id}: {n}" for n in rep.notes)
    bad = any(r["violations"] for r in reports)
    return {"reports": reports, "ratio_tol": RATIO_TOL}, flags, EXIT_GAP if bad else EXIT_OK


def _extremal_rows(cfg: RunConfig, targets: Sequence[str]):
    rows, flags, ok = [], [], True
    for c in cfg.classes:
        for t in targets:
            res = EXTREMALS[t](c, max(cfg.order, 5))
            rows.append(res.to_dict())
            flags.extend(f"{c} {t}: {d}" for d in res.discrepancies)
            ok &= abs(res.achieved - res.spec.claimed_value) <= MATCH_TOL and res.membership > 0
    return rows, flags, ok


def cmd_extremal(cfg: RunConfig, args: argparse.Namespace) -> tuple[dict, list[str], int]:
    targets = [cfg.target] if cfg.target else list(EXTREMALS)
    rows, flags, ok = _extremal_rows(cfg, targets)
    return {"witnesses": rows, "match_tol": MATCH_TOL}, flags, EXIT_OK if ok else EXIT_GAP


def cmd_roots(cfg: RunConfig, args: argparse.Namespace) -> tuple[dict, list[str], int]:
    lo, hi = args.interval
    if not lo < hi:
        raise UsageError("--interval needs lo < hi")
    if args.poly:
        poly, name = NAMED_POLYNOMIALS[args.poly], args.poly
    else:
        try:
            poly = RealPolynomial([float(v) for v in args.poly_coeffs.replace(",", " ").split()])
        except ValueError:
            raise UsageError("--poly-coeffs expects numbers, lowest degree first") from None
        name = "custom"
    roots = real_roots_in_interval(poly, lo, hi, min(cfg.tol, 1e-9))
    out: dict[str, Any] = {"poly": name, "coefficients": list(poly.coefficients), "interval": [lo, hi], "roots": roots}
    if args.candidates:
        out["candidates"] = {
            c: [
                {"c": s.point.c, "r": s.point.r, "p": s.point.p, "value": s.value, "feasible": s.feasible}
                for s in stationarity_candidates(c)
            ]
            for c in cfg.classes
        }
    return out, [], EXIT_OK


COMMANDS = {
    "gamma": cmd_gamma,
    "search": cmd_search,
    "verify": cmd_verify,
    "extremal": cmd_extremal,
    "roots": cmd_roots,
}


# -- rendering -------------------------------------------------------------------


def _render_csv(command: str, results: dict) -> str:
    if command == "gamma":
        rows = [
            (
                r["n"],
                r["series"].real,
                r["series"].imag,
                r["abs"],
                r["closed_form"].real if "closed_form" in r else "",
                r["closed_form"].imag if "closed_form" in r else "",
            )
            for r in results["gammas"]
        ]
        return _csv(["n", "re", "im", "abs", "closed_re", "closed_im"], rows)
    if command == "extremal":
        rows = [
            (w["class"], w["target"], w["witness"], w["achieved"], w["claimed"], w["ratio"], w["membership_min"])
            for w in results["witnesses"]
        ]
        return _csv(["class", "target", "witness", "achieved", "claimed", "ratio", "membership_min"], rows)
    raise UsageError(f"csv output is only available for gamma and extremal, not {command}")


def _render_text(command: str, results: dict, flags: list[str]) -> str:
    lines: list[str] = []
    if command == "gamma":
        for r in results["gammas"]:
            s = f"gamma_{r['n']:<3d} {r['series'].real:+.15f} {r['series'].imag:+.15f}i  |.| {r['abs']:.15f}"
            if "closed_form" in r:
                s += f"  closed-form diff {r['route_diff']:.2e}"
            lines.append(s)
    elif command == "search":
        lines += [
            f"{results['class']} {results['target']}: max {results['max_value']:.12f} "
            f"(closed form {results['closed_form']:.12f}, gap {results['abs_gap']:.2e})",
            f"argmax {tuple(round(v, 10) for v in results['argmax'])} on {results['stratum']}",
            f"|gamma| bound {results['gamma_bound']:.12f} at scale {results['scale']:g}",
        ]
    elif command == "verify":
        for r in results["reports"]:
            worst = ", ".join(f"{k} {v:.10f}" for k, v in r["worst_ratio"].items())
            lines.append(f"{r['class']}: {r['trials']} trials, seed {r['seed']}, violations {len(r['violations'])}")
            lines.append(f"  worst ratios: {worst}")
            lines.append(
                f"  gamma3 checked {r['gamma3_checked']}, outside window {r['gamma3_skipped']}; "
                f"roth max {r['roth_max']:.6f}; starlike n|gamma_n| max {r['starlike_ratio']:.6f}"
            )
    elif command == "extremal":
        for w in results["witnesses"]:
            lines.append(
                f"{w['class']} {w['target']}: {w['achieved']:.15f} vs {w['claimed']:.15f} "
                f"ratio {w['ratio']:.12f} min Re {w['membership_min']:.3e}  [{w['witness']}]"
            )
    elif command == "roots":
        lines.append(f"{results['poly']} on {results['interval']}: " + ", ".join(f"{x:.12g}" for x in results["roots"]))
        for c, cands in results.get("candidates", {}).items():
            for s in cands:
                lines.append(f"  {c}: c {s['c']:.9f} p {s['p']:.9f} value {s['value']:.9g} feasible {s['feasible']}")
    lines += [f"flag: {f}" for f in flags]
    return "\n".join(lines) + "\n"


# -- entry point -----------------------------------------------------------------


def _class_arg(s: str) -> str:
    s = s.strip().lower()
    if s != "all" and s.upper() not in CLASSES:
        raise argparse.ArgumentTypeError(f"unknown class {s!r}; expected f1, f2, f3 or all")
    return s


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--class", dest="cls", type=_class_arg, default=None, help="f1, f2, f3 or all")
    common.add_argument("--target", choices=list(EXTREMALS), default=None)
    common.add_argument("--order", type=_positive_int, default=DEFAULT_ORDER, help="series order (default 16)")
    common.add_argument("--resolution", type=_positive_int, default=DEFAULT_RESOLUTION)
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="refinement tolerance")
    common.add_argument("--gap-tol", type=_positive_float, default=DEFAULT_GAP_TOL, help="accepted |max - closed form|")
    common.add_argument("--trials", type=_positive_int, default=DEFAULT_TRIALS)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--threads", type=_positive_int, default=1)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", default=None, help="write here instead of stdout")

    p = argparse.ArgumentParser(prog="logcoef", description="Logarithmic coefficient bounds toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma", parents=[common], help="logarithmic coefficients of one function")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--coeffs", help="coefficient file, 're im' per line from a1")
    src.add_argument("--builtin", choices=("koebe", "identity"))
    src.add_argument("--atoms", help="Herglotz atoms 'w:re,im;w:re,im' (needs --class)")
    src.add_argument("--witness", choices=list(EXTREMALS), help="extremal witness for this target (needs --class)")

    sub.add_parser("search", parents=[common], help="maximise a bound objective over its box")

    v = sub.add_parser("verify", parents=[common], help="randomised check of the bounds")
    v.add_argument("--inject-extremals", action="store_true", help="also test the extremal witnesses")

    sub.add_parser("extremal", parents=[common], help="evaluate the extremal witnesses")

    r = sub.add_parser("roots", parents=[common], help="real roots of a polynomial on an interval")
    poly = r.add_mutually_exclusive_group(required=True)
    poly.add_argument("--poly", choices=sorted(NAMED_POLYNOMIALS))
    poly.add_argument("--poly-coeffs", help="coefficients, lowest degree first")
    r.add_argument("--interval", nargs=2, type=float, default=(0.0, 2.0), metavar=("LO", "HI"))
    r.add_argument("--candidates", action="store_true", help="also list face stationary points for --class")
    return p


def _config(args: argparse.Namespace) -> RunConfig:
    if args.cls in (None, "all"):
        if args.command in ("search",) or (args.command == "gamma" and (args.atoms or args.witness)):
            raise UsageError(f"{args.command} needs --class f1, f2 or f3")
        classes = sorted(CLASSES)
    else:
        classes = [args.cls.upper()]
    target = args.target
    if args.command == "search" and target is None:
        target = "gamma3"
    return RunConfig(
        command=args.command,
        classes=classes,
        target=target,
        order=args.order,
        resolution=args.resolution,
        tol=args.tol,
        gap_tol=args.gap_tol,
        trials=args.trials,
        seed=args.seed,
        threads=args.threads,
        format=args.format,
        output=args.output,
    )


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str | None]:
    """Parse, execute and render; returns (exit code, rendered text, output path)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        results, flags, code = COMMANDS[cfg.command](cfg, args)
        if cfg.format == "csv":
            text = _render_csv(cfg.command, results)
        elif cfg.format == "text":
            text = _render_text(cfg.command, results, flags)
        else:
            # threads and output path cannot change results, so they sit with the timestamp
            config = asdict(cfg)
            volatile = {k: config.pop(k) for k in ("threads", "output")}
            skip = set(volatile) | {"cls", "command"}
            config.update({k: v for k, v in vars(args).items() if k not in config and k not in skip})
            volatile["timestamp"] = datetime.now(timezone.utc).isoformat()
            doc = {
                "command": cfg.command,
                "config": config,
                "results": results,
                "flags": flags,
                "volatile": volatile,
            }
            text = dumps(doc) + "\n"
    except (UsageError, OSError) as exc:
        parser.exit(EXIT_USAGE, f"logcoef: error: {exc}\n")
    return code, text, args.output


def main(argv: Sequence[str] | None = None) -> int:
    code, text, output = run(argv)
    if output:
        try:
            Path(output).write_text(text)
        except OSError as exc:
            sys.stderr.write(f"logcoef: error: {exc}\n")
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
