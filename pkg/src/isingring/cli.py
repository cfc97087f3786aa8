"""Command line front end.

Subcommands
-----------
evolve     full observable series for one (N, g) quench
string-op  dressed string expectations <X_j> for chosen sites
sweep-g    evolve over a list of fields, long-format output
fit        exponential decay fits of <sigma^x> per field, with closed forms
ed-check   compare the fast path against dense diagonalization (small N)
limits     thermodynamic-limit curves from quadrature

Output is CSV (or a JSON mirror) with the resolved run parameters echoed
in '#' header lines; identical parameters give byte-identical files
regardless of worker count, which is why the worker setting is not part
of the echo.  A config file holding 'key = value' lines (long option
names without the leading dashes) can stand in for flags; explicit flags
win because they come later on the synthesized command line.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .analysis import fit_exponential
from .ed_oracle import quench_oracle, two_site_rdm
from .even_observables import (
    QuadratureError,
    asymptotic_order_decay,
    thermo_cxx,
    thermo_rho11,
    thermo_sz,
)
from .model import QuenchConfig
from .rdm import TwoSiteRDM, concurrence, pauli_correlation
from .simulate import (
    SERIES_COLUMNS,
    compute_series,
    observables_at,
    order_parameter_series,
    string_series,
)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _float_list(text: str) -> list[float]:
    """Parse '0.5,1.0' or 'start:step:stop' (stop inclusive)."""
    if ":" in text:
        start, step, stop = (float(p) for p in text.split(":"))
        if step <= 0:
            raise argparse.ArgumentTypeError("range step must be positive")
        n = int(round((stop - start) / step))
        vals = [start + i * step for i in range(n + 1)]
        return [v for v in vals if v <= stop + 1e-12]
    return [float(p) for p in text.split(",") if p.strip()]


def _int_list(text: str) -> list[int]:
    return [int(p) for p in text.split(",") if p.strip()]


def _pair(text: str) -> tuple[float, float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected 'lo,hi'")
    return parts[0], parts[1]


def _time_grid(t_min: float, t_max: float, dt: float) -> np.ndarray:
    if dt <= 0:
        raise SystemExit("error: --dt must be positive")
    if t_max < t_min:
        raise SystemExit("error: --t-max must be >= --t-min")
    n = int(round((t_max - t_min) / dt))
    return t_min + dt * np.arange(n + 1)


def _write_table(args, spec: dict, columns: dict) -> None:
    lines = [f"# {key} = {spec[key]}" for key in sorted(spec)]
    lines.append(",".join(columns))
    ncols = len(columns)
    data = list(columns.values())
    for i in range(len(data[0])):
        lines.append(",".join(_fmt(data[c][i]) for c in range(ncols)))
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    if getattr(args, "json_out", None):
        payload = {
            "spec": {k: str(spec[k]) for k in sorted(spec)},
            "columns": list(columns),
            "rows": [[float(data[c][i]) for c in range(ncols)]
                     for i in range(len(data[0]))],
        }
        with open(args.json_out, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.write("\n")


def _base_spec(args, command: str) -> dict:
    return {
        "command": command,
        "version": __version__,
        "n-sites": args.n_sites,
        "t-min": _fmt(args.t_min),
        "t-max": _fmt(args.t_max),
        "dt": _fmt(args.dt),
    }


def cmd_evolve(args) -> int:
    config = QuenchConfig(args.n_sites, args.g,
                          _time_grid(args.t_min, args.t_max, args.dt))
    series = compute_series(config, workers=args.workers)
    spec = _base_spec(args, "evolve")
    spec["g"] = _fmt(args.g)
    _write_table(args, spec, series.columns)
    return 0


def cmd_string_op(args) -> int:
    config = QuenchConfig(args.n_sites, args.g,
                          _time_grid(args.t_min, args.t_max, args.dt))
    series = string_series(config, args.sites, workers=args.workers)
    spec = _base_spec(args, "string-op")
    spec["g"] = _fmt(args.g)
    spec["sites"] = ",".join(str(s) for s in args.sites)
    _write_table(args, spec, series.columns)
    return 0


def cmd_sweep_g(args) -> int:
    grid = _time_grid(args.t_min, args.t_max, args.dt)
    blocks = {name: [] for name in ("g", *SERIES_COLUMNS)}
    for g in args.g_list:
        series = compute_series(QuenchConfig(args.n_sites, g, grid),
                                workers=args.workers)
        blocks["g"].append(np.full(grid.size, g))
        for name in SERIES_COLUMNS:
            blocks[name].append(series.columns[name])
    columns = {name: np.concatenate(parts) for name, parts in blocks.items()}
    spec = _base_spec(args, "sweep-g")
    spec["g-list"] = ",".join(_fmt(g) for g in args.g_list)
    _write_table(args, spec, columns)
    return 0


def cmd_fit(args) -> int:
    lo, hi = args.window
    pad = 2.0 * args.dt
    grid = _time_grid(max(0.0, lo - pad), hi + pad, args.dt)
    names = ("g", "prefactor", "rate", "prefactor_err", "rate_err",
             "residual", "prefactor_formula", "rate_quadrature")
    rows = {name: [] for name in names}
    for g in args.g_list:
        series = order_parameter_series(QuenchConfig(args.n_sites, g, grid),
                                        workers=args.workers)
        fit = fit_exponential(series.times, series.column("sx"), args.window)
        if 0.0 <= g <= 1.0:
            a_formula, rate_quad = asymptotic_order_decay(g)
        else:
            a_formula, rate_quad = float("nan"), float("nan")
        for name, value in zip(names, (g, fit.prefactor, fit.rate,
                                       fit.prefactor_err, fit.rate_err,
                                       fit.residual, a_formula, rate_quad)):
            rows[name].append(value)
    columns = {name: np.asarray(vals) for name, vals in rows.items()}
    spec = {
        "command": "fit",
        "version": __version__,
        "n-sites": args.n_sites,
        "dt": _fmt(args.dt),
        "window": f"{_fmt(lo)},{_fmt(hi)}",
        "g-list": ",".join(_fmt(g) for g in args.g_list),
    }
    _write_table(args, spec, columns)
    return 0


def cmd_ed_check(args) -> int:
    grid = _time_grid(0.0, args.t_max, args.t_max / max(1, args.points - 1))
    config = QuenchConfig(args.n_sites, args.g, grid)
    oracle = quench_oracle(args.n_sites, args.g)
    worst: dict[str, float] = {}
    for t in grid:
        fast = observables_at(config, float(t))
        state = oracle.state(float(t))
        ed = TwoSiteRDM(two_site_rdm(state, args.n_sites))
        reduced = ed.reduce(1)
        slow = {
            "sx": reduced.bloch[0],
            "sy": reduced.bloch[1],
            "sz": reduced.bloch[2],
            "purity": reduced.purity(),
            "czz": pauli_correlation(ed, "z", "z"),
            "cxx": pauli_correlation(ed, "x", "x"),
            "cxy": pauli_correlation(ed, "x", "y"),
            "cxz": pauli_correlation(ed, "x", "z"),
            "concurrence": concurrence(ed),
        }
        for name, ref in slow.items():
            dev = abs(fast[name] - ref)
            worst[name] = max(worst.get(name, 0.0), dev)
    failed = {n: d for n, d in worst.items() if d > args.tol}
    for name in sorted(worst):
        status = "FAIL" if name in failed else "ok"
        print(f"{name:12s} max|dev| = {worst[name]:.3e}  {status}")
    if failed:
        print(f"ed-check FAILED for N={args.n_sites}, g={args.g} "
              f"(tolerance {args.tol:g})", file=sys.stderr)
        return 1
    print(f"ed-check passed for N={args.n_sites}, g={args.g} "
          f"({grid.size} times, tolerance {args.tol:g})")
    return 0


def cmd_limits(args) -> int:
    grid = _time_grid(args.t_min, args.t_max, args.dt)
    evaluators = {"sz": thermo_sz, "cxx": thermo_cxx, "rho11": thermo_rho11}
    unknown = [q for q in args.quantities if q not in evaluators]
    if unknown:
        raise SystemExit(f"error: unknown quantities {unknown}; "
                         f"choose from {sorted(evaluators)}")
    columns: dict[str, np.ndarray] = {"t": grid}
    for q in args.quantities:
        columns[q] = np.array([evaluators[q](args.g, float(t)) for t in grid])
    spec = {
        "command": "limits",
        "version": __version__,
        "g": _fmt(args.g),
        "t-min": _fmt(args.t_min),
        "t-max": _fmt(args.t_max),
        "dt": _fmt(args.dt),
        "quantities": ",".join(args.quantities),
    }
    _write_table(args, spec, columns)
    return 0


def _add_common(p, with_field=True):
    p.add_argument("--n-sites", type=int, required=True,
                   help="ring size N (even, >= 4)")
    if with_field:
        p.add_argument("--g", type=float, required=True,
                       help="post-quench transverse field")
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--workers", type=int, default=None,
                   help="process pool size (default: ISINGRING_WORKERS or 1)")
    p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    p.add_argument("--json-out", default=None, help="optional JSON mirror path")
    p.add_argument("--config", default=None, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isingring",
        description="Exact quench dynamics of the transverse-field Ising ring",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="full observable time series")
    _add_common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("string-op", help="dressed string <X_j> series")
    _add_common(p)
    p.add_argument("--sites", type=_int_list, required=True,
                   help="comma separated site list, e.g. 2,4,8")
    p.set_defaults(func=cmd_string_op)

    p = sub.add_parser("sweep-g", help="evolve over a field list")
    _add_common(p, with_field=False)
    p.add_argument("--g-list", type=_float_list, required=True,
                   help="comma list or start:step:stop range")
    p.set_defaults(func=cmd_sweep_g)

    p = sub.add_parser("fit", help="order-parameter decay fits per field")
    p.add_argument("--n-sites", type=int, required=True)
    p.add_argument("--g-list", type=_float_list, required=True)
    p.add_argument("--window", type=_pair, default=(10.0, 20.0),
                   help="fit window 'lo,hi'")
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default="-")
    p.add_argument("--json-out", default=None)
    p.add_argument("--config", default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("ed-check", help="gate the fast path against dense ED")
    p.add_argument("--n-sites", type=int, required=True)
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--t-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--config", default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_ed_check)

    p = sub.add_parser("limits", help="thermodynamic-limit curves")
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--dt", type=float, default=0.1)
    p.add_argument("--quantities", type=lambda s: s.split(","),
                   default=["sz", "cxx"],
                   help="comma list from sz,cxx,rho11")
    p.add_argument("--out", default="-")
    p.add_argument("--json-out", default=None)
    p.add_argument("--config", default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_limits)

    return parser


def _splice_config(argv: list[str]) -> list[str]:
    """Turn '--config FILE' into the flags the file holds.

    File lines are 'key = value' with '#' comments; keys are long option
    names without dashes.  The flags are inserted right after the
    subcommand so anything typed explicitly comes later and wins.
    """
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise SystemExit("error: --config needs a path")
    path = argv[idx + 1]
    rest = argv[:idx] + argv[idx + 2:]
    tokens: list[str] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"error: bad config line {raw.rstrip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            tokens += [f"--{key}", value]
    if not rest:
        return tokens
    return [rest[0], *tokens, *rest[1:]]


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = _splice_config(argv)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QuadratureError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
