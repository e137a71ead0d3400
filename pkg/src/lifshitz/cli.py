"""Command-line front end.

Subcommands::

    eta      reduction factor for one mirror pair and separation(s)
    sweep    eta over a range of separations, CSV/JSON rows
    epsilon  evaluate a catalog/custom model on the imaginary axis
    reflect  reflection-amplitude grid r_p(omega, k) for diagnostics
    asym     long-distance asymptotic report for a model
    figure   emit a canned dataset (dielectric curves, eta families)
    run      execute a TOML config file

Floats are printed with 9 significant digits and rows are emitted in input
order regardless of --threads, so identical invocations produce identical
bytes.  The environment variables LIFSHITZ_OUT and LIFSHITZ_THREADS
override the output path and worker count only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .asymptotics import asymptotic_report
from .casimir import CavityConfig, QuadratureSpec, absolute_force, sweep
from .config import ConfigError, RunConfig, parse_config, parse_length, parse_mirror_spec
from .constants import C_LIGHT, ev_to_rad_s
from .dielectric import DielectricModel, list_model_ids, resolve_model
from .figures import build_figure, list_figures
from .optical_data import read_table

__all__ = ["main"]


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def _render_csv(columns, rows, meta) -> str:
    lines = [f"# {key}: {value}" for key, value in sorted(meta.items())]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _render_json(columns, rows, meta) -> str:
    payload = {
        "meta": {k: str(v) for k, v in sorted(meta.items())},
        "columns": list(columns),
        "rows": [[float(_fmt(float(v))) for v in row] for row in rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(columns, rows, meta, fmt: str, out_path: str | None) -> None:
    text = _render_json(columns, rows, meta) if fmt == "json" else _render_csv(columns, rows, meta)
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out_path).parent.mkdir(parents=True, exist_ok=True)
        Path(out_path).write_text(text, encoding="utf-8")
        print(f"wrote {out_path}")


def _quad_from_args(args) -> QuadratureSpec:
    return QuadratureSpec(
        rel_tol=args.tol, max_evals=args.max_evals, cutoff_mult=args.cutoff
    )


def _extra_models(args) -> dict[str, DielectricModel]:
    """Optional tabulated data attached under the model id 'table'."""
    if not getattr(args, "table", None):
        return {}
    text = Path(args.table).read_text(encoding="utf-8")
    table = read_table(text, label="table")
    return {"table": DielectricModel(terms=(), label="table", table=table)}


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _omega_grid(args) -> np.ndarray:
    if args.omega:
        values = np.asarray(_float_list(args.omega))
    else:
        if not (args.omega_start and args.omega_stop):
            raise SystemExit("need --omega or --omega-start/--omega-stop")
        values = np.logspace(
            np.log10(args.omega_start), np.log10(args.omega_stop), args.points
        )
    if args.unit == "eV":
        values = np.asarray([ev_to_rad_s(v) for v in values])
    if np.any(values <= 0):
        raise SystemExit("frequencies must be positive")
    return values


def _separation_list(args) -> list[float]:
    if args.separations:
        values = [parse_length(tok) for tok in args.separations.split(",") if tok.strip()]
    else:
        if not (args.l_start and args.l_stop):
            raise SystemExit("need --separations or --l-start/--l-stop")
        lo, hi = parse_length(args.l_start), parse_length(args.l_stop)
        if args.spacing == "log":
            values = list(np.logspace(np.log10(lo), np.log10(hi), args.points))
        else:
            values = list(np.linspace(lo, hi, args.points))
    if not values or any(v <= 0 for v in values):
        raise SystemExit("separations must be positive")
    return values


def _sweep_rows(mirror_a, mirror_b, separations, quad, threads, area=None):
    cfgs = [CavityConfig(mirror_a, mirror_b, L, area) for L in separations]
    rows = []
    for entry in sweep(cfgs, quad, max_workers=threads):
        if entry.error is not None:
            print(f"# L={entry.config.separation:g}: {entry.error}", file=sys.stderr)
            continue
        r = entry.result
        row = [
            entry.config.separation, r.eta, r.per_polarization[0],
            r.per_polarization[1], r.est_error, float(r.evals),
        ]
        if area is not None:
            row.append(absolute_force(r.eta, entry.config.separation, area))
        rows.append(row)
    columns = ["L_m", "eta", "eta_TE", "eta_TM", "est_error", "evals"]
    if area is not None:
        columns.append("force_N")
    return columns, rows


def _cmd_eta(args) -> int:
    extra = _extra_models(args)
    mirror_a = parse_mirror_spec(args.mirror_a, extra)
    mirror_b = parse_mirror_spec(args.mirror_b, extra)
    separations = _separation_list(args)
    columns, rows = _sweep_rows(
        mirror_a, mirror_b, separations, _quad_from_args(args), args.threads, args.area
    )
    meta = {
        "mirror_a": args.mirror_a, "mirror_b": args.mirror_b,
        "units": "L_m in meters; eta dimensionless",
    }
    _emit(columns, rows, meta, args.format, args.out)
    return 0


def _cmd_epsilon(args) -> int:
    extra = _extra_models(args)
    model = resolve_model(args.model, extra)
    omega = _omega_grid(args)
    eps = np.atleast_1d(np.asarray(model.epsilon(omega)))
    rows = np.column_stack([omega, eps])
    meta = {"model": args.model, "units": "omega_rad_s in rad/s"}
    _emit(["omega_rad_s", "eps"], rows, meta, args.format, args.out)
    return 0


def _cmd_reflect(args) -> int:
    extra = _extra_models(args)
    mirror = parse_mirror_spec(args.mirror, extra)
    omega = _omega_grid(args)
    ks = np.asarray(_float_list(args.k))
    if np.any(ks < 0):
        raise SystemExit("transverse wavevectors must be >= 0")
    rows = []
    for w in omega:
        kappa = np.hypot(ks, w / C_LIGHT)
        r_te, r_tm = mirror.reflection_amplitudes(np.full_like(kappa, w), kappa)
        for k, te, tm in zip(ks, np.atleast_1d(r_te), np.atleast_1d(r_tm)):
            rows.append([w, k, te, tm])
    meta = {
        "mirror": args.mirror,
        "units": "omega_rad_s in rad/s; k_rad_m in rad/m",
    }
    _emit(["omega_rad_s", "k_rad_m", "r_TE", "r_TM"], rows, meta, args.format, args.out)
    return 0


def _cmd_asym(args) -> int:
    extra = _extra_models(args)
    model = resolve_model(args.model, extra)
    thickness = parse_length(args.thickness) if args.thickness else None
    report = asymptotic_report(model, thickness)
    pairs = [
        ("static_rho", report.static_rho),
        ("lambda_eff_m", report.lambda_eff),
        ("slab_static_r", report.slab_static_r),
        ("eta_const_r", report.eta_const_r),
    ]
    columns = [k for k, v in pairs if v is not None]
    row = [v for _, v in pairs if v is not None]
    meta = {"model": args.model}
    if thickness is not None:
        meta["thickness_m"] = _fmt(thickness)
    _emit(columns, [row], meta, args.format, args.out)
    return 0


def _cmd_figure(args) -> int:
    quad = _quad_from_args(args)
    columns, rows, meta = build_figure(
        args.name, quad, points_per_decade=args.points_per_decade, threads=args.threads
    )
    meta = {**meta, "figure": args.name}
    out = args.out
    if out is None:
        out = f"{args.name}.{args.format}"
    elif Path(out).is_dir():
        out = str(Path(out) / f"{args.name}.{args.format}")
    _emit(columns, rows, meta, args.format, out)
    return 0


def _cmd_run(args) -> int:
    text = Path(args.config).read_text(encoding="utf-8")
    try:
        cfg = parse_config(text)
    except ConfigError as exc:
        for problem in exc.errors:
            print(f"config error: {problem}", file=sys.stderr)
        return 2
    return _execute(cfg, args)


def _execute(cfg: RunConfig, args) -> int:
    out = os.environ.get("LIFSHITZ_OUT", cfg.out_path)
    threads = int(os.environ.get("LIFSHITZ_THREADS", cfg.threads))
    if cfg.command in ("eta", "sweep"):
        columns, rows = _sweep_rows(
            cfg.mirror_a, cfg.mirror_b, cfg.separations, cfg.quadrature, threads, cfg.area
        )
        _emit(columns, rows, {"command": cfg.command}, cfg.out_format, out)
    elif cfg.command == "epsilon":
        eps = np.atleast_1d(np.asarray(cfg.model.epsilon(cfg.omega_grid)))
        rows = np.column_stack([cfg.omega_grid, eps])
        _emit(["omega_rad_s", "eps"], rows, {"model": cfg.model_id}, cfg.out_format, out)
    elif cfg.command == "reflect":
        rows = []
        for w in cfg.omega_grid:
            kappa = np.hypot(cfg.k_grid, w / C_LIGHT)
            r_te, r_tm = cfg.mirror.reflection_amplitudes(np.full_like(kappa, w), kappa)
            for k, te, tm in zip(cfg.k_grid, np.atleast_1d(r_te), np.atleast_1d(r_tm)):
                rows.append([w, k, te, tm])
        _emit(
            ["omega_rad_s", "k_rad_m", "r_TE", "r_TM"], rows,
            {"command": "reflect"}, cfg.out_format, out,
        )
    elif cfg.command == "asym":
        report = asymptotic_report(cfg.model, cfg.thickness)
        pairs = [
            ("static_rho", report.static_rho),
            ("lambda_eff_m", report.lambda_eff),
            ("slab_static_r", report.slab_static_r),
            ("eta_const_r", report.eta_const_r),
        ]
        columns = [k for k, v in pairs if v is not None]
        _emit(columns, [[v for _, v in pairs if v is not None]],
              {"model": cfg.model_id}, cfg.out_format, out)
    elif cfg.command == "figure":
        columns, rows, meta = build_figure(
            cfg.figure, cfg.quadrature,
            points_per_decade=cfg.points_per_decade, threads=threads,
        )
        if out is None:
            out = f"{cfg.figure}.{cfg.out_format}"
        _emit(columns, rows, {**meta, "figure": cfg.figure}, cfg.out_format, out)
    return 0


def _add_common(parser, quadrature=True):
    parser.add_argument("--out", default=os.environ.get("LIFSHITZ_OUT"),
                        help="output path ('-' or omit for stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--threads", type=int,
                        default=int(os.environ.get("LIFSHITZ_THREADS", "1")),
                        help="worker threads for sweeps")
    parser.add_argument("--table", help="attach a tabulated-data model under the id 'table'")
    if quadrature:
        parser.add_argument("--tol", type=float, default=1e-6,
                            help="relative tolerance of the eta integral")
        parser.add_argument("--max-evals", type=int, default=QuadratureSpec().max_evals)
        parser.add_argument("--cutoff", type=float, default=40.0,
                            help="dimensionless cutoff of the radial integral")


def _add_omega_options(parser):
    parser.add_argument("--omega", help="comma-separated frequencies")
    parser.add_argument("--omega-start", type=float)
    parser.add_argument("--omega-stop", type=float)
    parser.add_argument("--points", type=int, default=50)
    parser.add_argument("--unit", choices=("rad_s", "eV"), default="rad_s")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lifshitz",
        description="Casimir force reduction factors for layered plane mirrors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eta", help="reduction factor for one mirror pair")
    p.add_argument("--mirror-a", required=True, help="mirror spec, e.g. au-drude@20nm")
    p.add_argument("--mirror-b", required=True)
    p.add_argument("--separations", help="comma-separated lengths (units nm/um/mm/m)")
    p.add_argument("--l-start")
    p.add_argument("--l-stop")
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.add_argument("--area", type=float, help="plate area in m^2 for absolute force")
    _add_common(p)
    p.set_defaults(func=_cmd_eta)

    p = sub.add_parser("sweep", help="eta over a separation range")
    p.add_argument("--mirror-a", required=True)
    p.add_argument("--mirror-b", required=True)
    p.add_argument("--separations")
    p.add_argument("--l-start")
    p.add_argument("--l-stop")
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.add_argument("--area", type=float)
    _add_common(p)
    p.set_defaults(func=_cmd_eta)

    p = sub.add_parser("epsilon", help="evaluate a dielectric model")
    p.add_argument("model", help=f"model id; known: {', '.join(list_model_ids())}")
    _add_omega_options(p)
    _add_common(p, quadrature=False)
    p.set_defaults(func=_cmd_epsilon)

    p = sub.add_parser("reflect", help="reflection amplitude grid")
    p.add_argument("--mirror", required=True)
    p.add_argument("--k", required=True, help="comma-separated transverse wavevectors rad/m")
    _add_omega_options(p)
    _add_common(p, quadrature=False)
    p.set_defaults(func=_cmd_reflect)

    p = sub.add_parser("asym", help="long-distance asymptotics of a model")
    p.add_argument("model")
    p.add_argument("--thickness", help="slab thickness, e.g. 20nm")
    _add_common(p, quadrature=False)
    p.set_defaults(func=_cmd_asym)

    p = sub.add_parser("figure", help="emit a canned dataset")
    p.add_argument("name", help=f"one of: {', '.join(list_figures())}")
    p.add_argument("--points-per-decade", type=int, default=50)
    _add_common(p)
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("run", help="execute a TOML config file")
    p.add_argument("config")
    p.set_defaults(func=_cmd_run)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
