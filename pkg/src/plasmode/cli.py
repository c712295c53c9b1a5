"""Batch front-end: sweep commands emitting CSV curves, a critical-temperature
report, and an oracle verification run.

Output is deterministic: fixed column order, %.12e formatting, LF line
endings, no randomness anywhere.  Exit codes: 0 success, 1 verification
failure, 2 invalid input or oracle non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import oracle, squeezing, thermal, unitary
from .algebra import disentangle_thermal, disentangle_unitary
from .oracle import TruncationConfig, TruncationNotConverged
from .params import (
    DegenerateSpectrum,
    ModelParams,
    NonPositiveFrequency,
    NonPositiveTemperature,
    ValidatedParams,
    derive,
    validate,
)


class ConfigInvalid(ValueError):
    """Malformed configuration file, flags, or sweep bounds."""


EVOLVE_COLUMNS = ("t", "beta_re", "beta_im", "D1", "nonclassical")
EVOLVE_ORACLE_COLUMNS = ("D1_oracle", "D2_oracle")
THERMAL_COLUMNS = (
    "theta",
    "detM",
    "classical",
    "D1",
    "D1_zhang",
    "D2",
    "D2_zhang",
    "mandel_excess",
    "n_mean",
)

def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value) + 0.0:.12e}"


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigInvalid(f"cannot read config {path}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigInvalid("config root must be a JSON object")
    return config


def _build_params(config: dict, args: argparse.Namespace) -> ModelParams:
    """Merge config-file params with flag overrides; flags win."""
    raw = dict(config.get("params", {}))
    try:
        base = ModelParams.from_json_dict(raw) if raw else ModelParams(1.0, 0j, 0j)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigInvalid(f"bad params block: {exc}") from exc

    def override(current: complex, re_val, im_val) -> complex:
        re = current.real if re_val is None else re_val
        im = current.imag if im_val is None else im_val
        return complex(re, im)

    omega = base.omega if args.omega is None else args.omega
    return ModelParams(
        omega=omega,
        omega1=override(base.omega1, args.omega1_re, args.omega1_im),
        omega2=override(base.omega2, args.omega2_re, args.omega2_im),
        lambda0=override(base.lambda0, args.lambda_re, args.lambda_im),
    )


def _build_truncation(config: dict) -> TruncationConfig:
    block = config.get("oracle", {})
    if not isinstance(block, dict):
        raise ConfigInvalid("oracle block must be a JSON object")
    try:
        return TruncationConfig(
            n_start=int(block.get("n_start", 32)),
            n_max=int(block.get("n_max", 512)),
            rel_tol=float(block.get("rel_tol", 1e-8)),
        )
    except ValueError as exc:
        raise ConfigInvalid(f"bad oracle block: {exc}") from exc


def _build_sweep(config: dict, args: argparse.Namespace, kind: str) -> np.ndarray:
    block = dict(config.get("sweep", {}))
    if block.get("kind", kind) != kind:
        raise ConfigInvalid(f"sweep kind {block.get('kind')!r} does not match command")
    start = block.get("start") if args.start is None else args.start
    stop = block.get("stop") if args.stop is None else args.stop
    points = block.get("points", 101) if args.points is None else args.points
    if start is None or stop is None:
        raise ConfigInvalid("sweep needs start and stop (config or flags)")
    start, stop, points = float(start), float(stop), int(points)
    if not start < stop:
        raise ConfigInvalid(f"need start < stop, got {start} >= {stop}")
    if not 2 <= points <= 100000:
        raise ConfigInvalid(f"points must be in [2, 100000], got {points}")
    return np.linspace(start, stop, points)


def _select_columns(config: dict, available: Sequence[str]) -> list[str]:
    outputs = config.get("outputs")
    if outputs is None:
        return list(available)
    unknown = [c for c in outputs if c not in available]
    if unknown:
        raise ConfigInvalid(f"unknown output columns: {unknown}")
    return [c for c in available if c in outputs]


def _emit_csv(columns: Sequence[str], rows: Sequence[dict], out_path: str | None) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _figure_path(args: argparse.Namespace) -> str | None:
    if args.plot is None:
        return None
    if args.plot != "auto":
        return args.plot
    if args.output is None:
        raise ConfigInvalid("--plot without a path needs -o/--output to derive one")
    return str(Path(args.output).with_suffix(".png"))


def _evolve_rows(
    vp: ValidatedParams, times: np.ndarray, with_oracle: bool, cfg: TruncationConfig
) -> list[dict]:
    rows = []
    for t in times:
        t = float(t)
        verdict = unitary.p_function_witness_unitary(vp, t)
        row = {
            "t": t,
            "beta_re": verdict.beta_at_t.real,
            "beta_im": verdict.beta_at_t.imag,
            "D1": unitary.d1_unitary(vp, t),
            "nonclassical": int(verdict.nonclassical),
        }
        if with_oracle:
            state = oracle.evolve_coherent(vp, t, cfg)
            moments = oracle.moment_set(state, k_max=2)
            row["D1_oracle"] = squeezing.squeezing_report(moments, 1).dk
            row["D2_oracle"] = squeezing.squeezing_report(moments, 2).dk
        rows.append(row)
    return rows


def _thermal_rows(vp: ValidatedParams, thetas: np.ndarray) -> list[dict]:
    rows = []
    for theta in thetas:
        theta = float(theta)
        witness = thermal.witness_matrix(vp, theta)
        ts = thermal.thermal_squeezing(vp, theta)
        rows.append(
            {
                "theta": theta,
                "detM": witness.det,
                "classical": int(witness.classical),
                "D1": ts.d1,
                "D1_zhang": ts.d1_zhang,
                "D2": ts.d2,
                "D2_zhang": ts.d2_zhang,
                "mandel_excess": thermal.mandel_excess(vp, theta),
                "n_mean": thermal.mean_photon_number(vp, theta),
            }
        )
    return rows


def cmd_evolve(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    vp = validate(_build_params(config, args))
    times = _build_sweep(config, args, "time")
    cfg = _build_truncation(config)
    with_oracle = args.with_oracle or bool(config.get("with_oracle", False))
    columns = list(EVOLVE_COLUMNS) + (list(EVOLVE_ORACLE_COLUMNS) if with_oracle else [])
    rows = _evolve_rows(vp, times, with_oracle, cfg)
    _emit_csv(_select_columns(config, columns), rows, args.output)
    fig = _figure_path(args)
    if fig is not None:
        from .plots import render_evolve_figure

        render_evolve_figure(rows, fig)
    return 0


def cmd_thermal(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    vp = validate(_build_params(config, args))
    thetas = _build_sweep(config, args, "temperature")
    if thetas[0] <= 0.0:
        raise ConfigInvalid("temperature sweep must start above 0")
    rows = _thermal_rows(vp, thetas)
    _emit_csv(_select_columns(config, THERMAL_COLUMNS), rows, args.output)
    fig = _figure_path(args)
    if fig is not None:
        from .plots import render_thermal_figure

        render_thermal_figure(rows, fig)
    return 0


def cmd_critical(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    vp = validate(_build_params(config, args))
    crit = thermal.critical_temperatures(vp)
    if crit.defined:
        residual = abs(
            thermal.bisect_zero(
                lambda th: thermal.witness_matrix(vp, th).det,
                0.1 * crit.theta_star,
                10.0 * crit.theta_star,
            )
            - crit.theta_star
        )
    else:
        residual = None
    payload = {
        "defined": crit.defined,
        "theta_star": crit.theta_star,
        "theta_c": crit.theta_c,
        "bisection_residual": residual,
    }
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    return 0


def _verify_checks(vp: ValidatedParams, t: float, theta: float, cfg: TruncationConfig) -> list[dict]:
    dp = derive(vp)
    checks: list[dict] = []

    def record(name: str, deviation: float, tol: float) -> None:
        checks.append(
            {"name": name, "deviation": float(deviation), "tolerance": tol,
             "pass": bool(deviation < tol)}
        )

    dim_u = 40
    form_u = disentangle_unitary(vp, t, branch="continuous")
    rec = oracle.recompose_disentangled(form_u, dim_u)
    prop = oracle.quadratic_propagator(vp, t, dim_u, cfg)
    win = oracle.interior(dim_u)
    record("recompose_unitary", np.abs(rec[win, win] - prop[win, win]).max(), 1e-8)

    dim_t = 60
    form_t = disentangle_thermal(vp, theta)
    rec_t = oracle.recompose_disentangled(form_t, dim_t)
    gibbs = oracle.quadratic_gibbs(vp, theta, dim_t, cfg)
    win = oracle.interior(dim_t)
    scale = np.abs(gibbs[win, win]).max()
    record("recompose_thermal", np.abs(rec_t[win, win] - gibbs[win, win]).max() / scale, 1e-8)

    dev = 0.0
    for chi, zeta in ((0.3 - 0.2j, 0.5j), (0.1 + 0.4j, -0.2 + 0.1j)):
        closed = unitary.coherent_kernel(vp, chi, zeta, t, branch="continuous")
        assembled = oracle.coherent_matrix_element(vp, chi, zeta, t, cfg)
        dev = max(dev, abs(closed - assembled))
    record("coherent_kernel", dev, 1e-8)

    ground = np.linalg.eigvalsh(oracle.build_hamiltonian(vp, 96))[0]
    record("spectrum_shift", abs(ground - (0.5 * dp.phi - dp.energy_shift)), 1e-8)

    state = oracle.thermal_state(vp, theta, cfg)
    closed_moments = thermal.moments_from_cumulants(thermal.cumulants(vp, theta))
    dev = 0.0
    for n, m in ((1, 0), (2, 0), (1, 1), (2, 2), (4, 0)):
        reference = oracle.moment(state, n, m)
        dev = max(dev, abs(closed_moments.ordered_moment(n, m) - reference) / max(1.0, abs(reference)))
    record("thermal_moments", dev, 1e-6)

    oracle_moments = oracle.moment_set(state, k_max=2)
    ts = thermal.thermal_squeezing(vp, theta)
    dev = max(
        abs(ts.d1 - squeezing.squeezing_report(oracle_moments, 1).dk),
        abs(ts.d2 - squeezing.squeezing_report(oracle_moments, 2).dk),
    )
    record("thermal_squeezing", dev, 1e-6)

    ev_state = oracle.evolve_coherent(vp, t, cfg)
    d1_ref = squeezing.squeezing_report(oracle.moment_set(ev_state, k_max=1), 1).dk
    record("unitary_squeezing", abs(unitary.d1_unitary(vp, t) - d1_ref), 1e-6)

    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    vp = validate(_build_params(config, args))
    cfg = _build_truncation(config)
    t = float(config.get("time", 1.0) if args.time is None else args.time)
    theta = float(config.get("theta", 0.2) if args.theta is None else args.theta)
    if theta <= 0.0:
        raise ConfigInvalid(f"verify needs theta > 0, got {theta}")
    checks = _verify_checks(vp, t, theta, cfg)
    ok = all(c["pass"] for c in checks)
    if args.json:
        sys.stdout.write(json.dumps({"checks": checks, "pass": ok}, sort_keys=True) + "\n")
    else:
        for c in checks:
            sys.stdout.write(
                f"check {c['name']}: max deviation {c['deviation']:.3e} "
                f"(tol {c['tolerance']:.0e}) {'PASS' if c['pass'] else 'FAIL'}\n"
            )
        sys.stdout.write(f"verify: {'PASS' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plasmode",
        description="Non-classical properties of a driven radiation mode: "
        "closed forms with an independent Fock-ladder oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, sweep: bool) -> None:
        p.add_argument("config", nargs="?", default=None, help="JSON config file")
        p.add_argument("--omega", type=float, default=None)
        p.add_argument("--omega1-re", type=float, default=None)
        p.add_argument("--omega1-im", type=float, default=None)
        p.add_argument("--omega2-re", type=float, default=None)
        p.add_argument("--omega2-im", type=float, default=None)
        p.add_argument("--lambda-re", type=float, default=None, dest="lambda_re")
        p.add_argument("--lambda-im", type=float, default=None, dest="lambda_im")
        if sweep:
            p.add_argument("--start", type=float, default=None)
            p.add_argument("--stop", type=float, default=None)
            p.add_argument("--points", type=int, default=None)
            p.add_argument("-o", "--output", default=None, help="write CSV here instead of stdout")
            p.add_argument(
                "--plot",
                nargs="?",
                const="auto",
                default=None,
                help="render a figure (PNG path; bare flag derives it from -o)",
            )

    p_evolve = sub.add_parser("evolve", help="time sweep of the unitary evolution")
    add_common(p_evolve, sweep=True)
    p_evolve.add_argument("--with-oracle", action="store_true")
    p_evolve.set_defaults(func=cmd_evolve)

    p_thermal = sub.add_parser("thermal", help="temperature sweep of the thermal state")
    add_common(p_thermal, sweep=True)
    p_thermal.set_defaults(func=cmd_thermal)

    p_critical = sub.add_parser("critical", help="critical-temperature report (JSON)")
    add_common(p_critical, sweep=False)
    p_critical.set_defaults(func=cmd_critical)

    p_verify = sub.add_parser("verify", help="closed-form vs oracle cross-checks")
    add_common(p_verify, sweep=False)
    p_verify.add_argument("--time", type=float, default=None)
    p_verify.add_argument("--theta", type=float, default=None)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigInvalid, NonPositiveFrequency, DegenerateSpectrum, NonPositiveTemperature) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except TruncationNotConverged as exc:
        sys.stderr.write(f"oracle did not converge: {exc}\n")
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
