"""Command-line front end: verification runs, sweeps and transform exports."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import harness
from .errors import FracmodError
from .fracops import frac_derivative, frac_integral, riesz_potential
from .gridfn import (
    Constant,
    Grid1D,
    GridFunction,
    GridFunctionND,
    Indicator,
    Power,
    SingularPower,
    sample,
)
from .harness import (
    BoundReport,
    check_derivative_bound,
    check_integral_bound,
    check_riesz_bound,
    check_scaling,
    estimate_exponent,
    lower_bound_K_D,
    reports_to_csv,
    reports_to_json_doc,
    run_verification,
)
from .modulus import modulus_profile

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


@dataclass
class RunConfig:
    command: str
    alpha: list = field(default_factory=lambda: [0.5])
    p: list = field(default_factory=lambda: [2.0])
    beta: list = field(default_factory=lambda: [0.5])
    d: int = 1
    n: int = 2048
    h: list = field(default_factory=lambda: [2.0**-k for k in range(3, 9)])
    lam: float = 2.0
    proxies: dict = field(default_factory=dict)
    f: str = "power:0.5"
    b: float = 1.0
    box: list = field(default_factory=lambda: [-2.0, 2.0])
    cmd: str = "sharpness"
    seed: int = 0
    out: str = "-"
    format: str = "json"
    input: str = ""
    figures: bool = False

    def validate(self):
        if self.n < 64:
            raise ValueError(f"n must be at least 64, got {self.n}")
        if self.format not in ("json", "csv"):
            raise ValueError(f"format must be json or csv, got {self.format}")
        for name in ("alpha", "p", "beta", "h"):
            if not getattr(self, name):
                raise ValueError(f"parameter list {name} must be nonempty")


def _atomic_write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def parse_function_spec(spec: str):
    """power:B | singular:B | indicator:C,D | const:C"""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "power":
            return Power(float(arg))
        if kind == "singular":
            return SingularPower(float(arg))
        if kind == "indicator":
            c, d = (float(v) for v in arg.split(","))
            return Indicator(c, d)
        if kind == "const":
            return Constant(float(arg))
    except (ValueError, FracmodError) as exc:
        raise argparse.ArgumentTypeError(f"bad function spec {spec!r}: {exc}") from exc
    raise argparse.ArgumentTypeError(f"unknown function kind {kind!r}")


def _floats(text: str):
    return [float(v) for v in text.split(",") if v != ""]


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fracmod",
                                 description="Fractional calculus verification toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=None, help="JSON config file; flags override")
        p.add_argument("--out", default=None, help="output path ('-' for stdout)")
        p.add_argument("--format", default=None, choices=("json", "csv"))
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--n", type=int, default=None)

    pv = sub.add_parser("verify", help="run the full verification suite")
    common(pv)

    psw = sub.add_parser("sweep", help="cross parameter lists over a check")
    common(psw)
    psw.add_argument("--cmd", default=None,
                     choices=("sharpness", "integral-bound", "derivative-bound",
                              "riesz-bound", "scaling", "kd-curve"))
    psw.add_argument("--alpha", type=_floats, default=None)
    psw.add_argument("--beta", type=_floats, default=None)
    psw.add_argument("--p", type=_floats, default=None)
    psw.add_argument("--h", type=_floats, default=None)
    psw.add_argument("--lam", type=float, default=None)
    psw.add_argument("--f", default=None)
    psw.add_argument("--proxy", action="append", default=None,
                     metavar="NAME=VALUE", help="proxy constant override")

    for name in ("fracint", "fracder"):
        pt = sub.add_parser(name, help=f"single {name} transform to CSV/JSON")
        common(pt)
        pt.add_argument("--alpha", type=_floats, default=None)
        pt.add_argument("--f", default=None)
        pt.add_argument("--b", type=float, default=None)

    pr = sub.add_parser("riesz", help="Riesz potential on a box")
    common(pr)
    pr.add_argument("--alpha", type=_floats, default=None)
    pr.add_argument("--d", type=int, default=None, choices=(1, 2))
    pr.add_argument("--f", default=None)
    pr.add_argument("--box", type=_floats, default=None, metavar="A,B")

    pm = sub.add_parser("modulus", help="modulus-of-continuity profile")
    common(pm)
    pm.add_argument("--f", default=None)
    pm.add_argument("--b", type=float, default=None)
    pm.add_argument("--h", type=_floats, default=None)

    prep = sub.add_parser("report", help="re-render a stored JSON run")
    common(prep)
    prep.add_argument("--input", default=None, required=True)
    prep.add_argument("--figures", action="store_true", default=None,
                      help="also render PNG figures alongside the CSV")
    return ap


def _merge_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    file_doc = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_doc = json.load(fh)
    for key, value in file_doc.items():
        if hasattr(cfg, key):
            setattr(cfg, key, value)
    for key, value in vars(args).items():
        if key in ("config",) or value is None:
            continue
        if key == "proxy":
            for item in value:
                name, _, num = item.partition("=")
                cfg.proxies[name] = float(num)
        elif hasattr(cfg, key):
            setattr(cfg, key, value)
    cfg.validate()
    return cfg


def _thread_count() -> int:
    raw = os.environ.get("FRACMOD_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _parallel_map(fn, items):
    workers = _thread_count()
    if workers == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _emit_reports(cfg: RunConfig, reports):
    reports = sorted(reports, key=lambda r: (r.name, sorted(r.params.items())))
    if cfg.format == "csv":
        _atomic_write(cfg.out, reports_to_csv(reports))
    else:
        doc = reports_to_json_doc(reports, seed=cfg.seed,
                                  timestamp=time.strftime("%Y-%m-%dT%H:%M:%S"))
        _atomic_write(cfg.out, json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _run_verify(cfg: RunConfig) -> int:
    reports = run_verification(n=cfg.n, seed=cfg.seed)
    _emit_reports(cfg, reports)
    failures = [r for r in reports if not r.passed]
    for r in failures:
        print(f"FAIL {r.name} {r.params}: ratio {r.ratio:.4g}", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


def _sweep_tuples(cfg: RunConfig):
    if cfg.cmd == "sharpness":
        return [(a, b) for a in cfg.alpha for b in cfg.beta]
    if cfg.cmd in ("integral-bound", "riesz-bound", "scaling"):
        return [(a, p) for a in cfg.alpha for p in cfg.p]
    if cfg.cmd in ("derivative-bound", "kd-curve"):
        return [(a, b) for a in cfg.alpha for b in cfg.beta]
    raise ValueError(f"unknown sweep command {cfg.cmd!r}")


def _run_sweep(cfg: RunConfig) -> int:
    grid = Grid1D(0.0, 1.0, cfg.n)
    c_proxy = cfg.proxies.get("C", 1.0)

    def one(tup):
        a, second = tup
        if cfg.cmd == "sharpness":
            g = frac_integral(sample(SingularPower(second), grid), a)
            fit = estimate_exponent(g, cfg.h)
            return [BoundReport.from_sides(
                "sharpness_fit", {"alpha": a, "beta": second,
                                  "slope": fit.slope, "r_squared": fit.r_squared},
                abs(fit.slope - (a - second)), 0.05)]
        if cfg.cmd == "derivative-bound":
            f = sample(Power(second), grid)
            return check_derivative_bound(f, a, cfg.h, c_proxy=c_proxy)
        if cfg.cmd == "integral-bound":
            f = sample(parse_function_spec(cfg.f), grid)
            return check_integral_bound(f, a, second, cfg.h)
        if cfg.cmd == "riesz-bound":
            lo, hi = cfg.box[0], cfg.box[1]
            pts = np.linspace(lo, hi, cfg.n)
            f = GridFunctionND(((lo, hi, cfg.n),), Indicator(-1.0, 1.0)(pts))
            return check_riesz_bound(f, a, second, cfg.h, c_proxy=c_proxy)
        if cfg.cmd == "scaling":
            rho = sample(parse_function_spec(cfg.f), grid)
            return [check_scaling(rho, a, cfg.lam, second)]
        pts = lower_bound_K_D(a, sorted(b for b in cfg.beta if a < b <= 1.0),
                              n=cfg.n)
        return [BoundReport.from_sides(
            "kd_curve", {"alpha": a, "beta": pt.beta,
                         "measured": pt.measured, "closed_form": pt.closed_form},
            abs(pt.measured / pt.closed_form - 1.0), 0.02)
            for pt in pts]

    reports = [r for chunk in _parallel_map(one, _sweep_tuples(cfg)) for r in chunk]
    _emit_reports(cfg, reports)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _run_transform(cfg: RunConfig) -> int:
    fn = parse_function_spec(cfg.f)
    alpha = cfg.alpha[0]
    if cfg.command in ("fracint", "fracder"):
        grid = Grid1D(0.0, cfg.b, cfg.n)
        f = sample(fn, grid)
        out = frac_integral(f, alpha) if cfg.command == "fracint" else frac_derivative(f, alpha)
        text = out.to_csv() if cfg.format == "csv" else out.to_json() + "\n"
        _atomic_write(cfg.out, text)
        return EXIT_OK
    if cfg.command == "riesz":
        lo, hi = cfg.box[0], cfg.box[1]
        if cfg.d == 1:
            pts = np.linspace(lo, hi, cfg.n)
            f = GridFunctionND(((lo, hi, cfg.n),), fn(pts))
        else:
            # separable product of the 1-D spec along each axis
            m = min(cfg.n, 129)
            pts = np.linspace(lo, hi, m)
            f = GridFunctionND(((lo, hi, m), (lo, hi, m)),
                               np.outer(fn(pts), fn(pts)))
        rf = riesz_potential(f, alpha)
        if cfg.d == 1:
            gf = GridFunction(Grid1D(lo, hi, cfg.n), rf.samples)
            text = gf.to_csv() if cfg.format == "csv" else gf.to_json() + "\n"
        else:
            doc = {"box": [list(b) for b in rf.box],
                   "samples": rf.samples.ravel().tolist()}
            text = json.dumps(doc) + "\n"
        _atomic_write(cfg.out, text)
        return EXIT_OK
    # modulus profile
    grid = Grid1D(0.0, cfg.b, cfg.n)
    prof = modulus_profile(sample(fn, grid), cfg.h)
    _atomic_write(cfg.out, prof.to_csv())
    return EXIT_OK


def _run_report(cfg: RunConfig) -> int:
    with open(cfg.input) as fh:
        doc = json.load(fh)
    if doc.get("schema") != 1:
        raise ValueError(f"unsupported report schema {doc.get('schema')!r}")
    reports = [
        BoundReport(d["name"], d.get("params", {}), d["lhs"], d["rhs"],
                    d["ratio"], d["pass"], d.get("notes", ""))
        for d in doc["reports"]
    ]
    out = cfg.out if cfg.out != "-" else os.path.splitext(cfg.input)[0] + ".csv"
    _atomic_write(out, reports_to_csv(reports))
    if cfg.figures:
        from .plotting import render_report_figures
        fig_dir = os.path.dirname(os.path.abspath(out)) or "."
        for path in render_report_figures(reports, fig_dir):
            print(path)
    return EXIT_OK


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _merge_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if cfg.command == "verify":
            return _run_verify(cfg)
        if cfg.command == "sweep":
            return _run_sweep(cfg)
        if cfg.command in ("fracint", "fracder", "riesz", "modulus"):
            return _run_transform(cfg)
        if cfg.command == "report":
            return _run_report(cfg)
    except FracmodError as exc:
        print(f"numerical domain error ({cfg.command}, alpha={cfg.alpha}, "
              f"p={cfg.p}, beta={cfg.beta}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
