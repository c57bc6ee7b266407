"""Command-line client for the unfurlkit service.

The CLI holds no mechanics: it parses the config and input CSVs into
request models, runs them through the service handlers (in-process by
default, or against a remote server via --server-url), and renders the
responses as deterministic CSV files plus a short summary on stdout.

Exit codes: 0 success, 2 bad input (config, CSV, usage), 3 the model says
the requested operating point is infeasible.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import service
from .errors import ConfigError, FeasibilityError, UnfurlError
from .csvio import (read_force_pressure_csv, read_joint_model_csv,
                    read_joint_trials_csv, write_csv, write_joint_model_csv)
from .schemas import (CalibrateRequest, CalibrateResponse, CurveRecord,
                      DesignRequest, DesignResponse, ForceRequest,
                      ForceResponse, JointFitRequest, JointFitResponse,
                      PressureRequest, PressureResponse, PropsRequest,
                      PropsResponse, RunConfig, SimulateRequest,
                      SimulateResponse, StiffnessRequest, StiffnessResponse,
                      parse_config, require_section, validate_curve_records)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3

_ENDPOINTS = {
    "props": ("/props", service.props_handler, PropsResponse),
    "force": ("/force", service.force_handler, ForceResponse),
    "pressure": ("/pressure", service.pressure_handler, PressureResponse),
    "stiffness": ("/stiffness", service.stiffness_handler, StiffnessResponse),
    "calibrate": ("/calibrate", service.calibrate_handler, CalibrateResponse),
    "joint-fit": ("/joint-fit", service.joint_fit_handler, JointFitResponse),
    "simulate": ("/simulate", service.simulate_handler, SimulateResponse),
    "design": ("/design", service.design_handler, DesignResponse),
}


def _call(name: str, request, server_url: str | None):
    """Run a request in-process, or POST it to a remote service."""
    path, handler, response_model = _ENDPOINTS[name]
    if server_url is None:
        return handler(request)
    import httpx
    resp = httpx.post(server_url.rstrip("/") + path,
                      json=request.model_dump(mode="json"), timeout=60.0)
    if resp.status_code >= 400:
        body = resp.json()
        code = body.get("code", "remote-error")
        message = body.get("message") or body.get("detail") or resp.text
        if code == "infeasible":
            raise FeasibilityError(str(message))
        raise ConfigError(f"[{code}] {message}")
    return response_model.model_validate(resp.json())


def _config_for(args, *sections: str) -> RunConfig:
    if args.config is None:
        raise ConfigError("--config is required for this command")
    config = parse_config(args.config)
    for name in sections:
        require_section(config, name)
    return config


def _out_path(args, filename: str) -> Path:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir / filename


def _run_props(args) -> int:
    config = _config_for(args, "subvine")
    req = PropsRequest(subvine=config.subvine, sheath=config.sheath)
    resp = _call("props", req, args.server_url)
    rows = [[p.quantity, p.value, p.unit] for p in resp.properties]
    write_csv(_out_path(args, "props.csv"), ["quantity", "value", "unit"], rows)
    for p in resp.properties:
        print(f"{p.quantity}: {p.value:.9g} {p.unit}")
    return EXIT_OK


def _run_force(args) -> int:
    config = _config_for(args, "subvine", "transmission")
    req = ForceRequest(subvine=config.subvine, transmission=config.transmission)
    resp = _call("force", req, args.server_url)
    validate_curve_records([
        CurveRecord(series=str(resp.n_subvines), x=p, y=f,
                    x_unit="Pa", y_unit="N")
        for p, f in zip(resp.pressure_pa, resp.unfurl_force_n)])
    rows = [[resp.n_subvines, p, raw, clamped]
            for p, raw, clamped in zip(resp.pressure_pa,
                                       resp.unfurl_force_raw_n,
                                       resp.unfurl_force_n)]
    write_csv(_out_path(args, "force_curve.csv"),
              ["n_subvines", "pressure_pa", "unfurl_force_raw_n",
               "unfurl_force_n"], rows)
    print(f"force curve: n={resp.n_subvines}, {len(rows)} points, "
          f"peak {resp.unfurl_force_n[-1]:.9g} N at "
          f"{resp.pressure_pa[-1]:.9g} Pa")
    return EXIT_OK


def _run_pressure(args) -> int:
    config = _config_for(args, "subvine", "transmission", "load")
    req = PressureRequest(subvine=config.subvine,
                          transmission=config.transmission, load=config.load)
    resp = _call("pressure", req, args.server_url)
    write_csv(_out_path(args, "required_pressure.csv"),
              ["garment_mass_kg", "n_subvines", "required_pressure_pa",
               "burst_pressure_pa", "feasible"],
              [[resp.garment_mass_kg, resp.n_subvines,
                resp.required_pressure_pa, resp.burst_pressure_pa,
                resp.feasible]])
    state = "feasible" if resp.feasible else "exceeds burst pressure"
    print(f"required pressure: {resp.required_pressure_pa:.9g} Pa "
          f"for {resp.garment_mass_kg:.9g} kg with n={resp.n_subvines} "
          f"({state})")
    return EXIT_OK if resp.feasible else EXIT_INFEASIBLE


def _run_stiffness(args) -> int:
    config = _config_for(args, "subvine", "transmission", "stiffness")
    req = StiffnessRequest(subvine=config.subvine,
                           transmission=config.transmission,
                           stiffness=config.stiffness, sheath=config.sheath)
    resp = _call("stiffness", req, args.server_url)
    records, rows = [], []
    for series in resp.series:
        for theta, s in zip(series.theta_deg, series.s_normalized):
            records.append(CurveRecord(series=str(series.n_subvines),
                                       x=theta, y=s, x_unit="deg",
                                       y_unit="1"))
            rows.append([series.n_subvines, theta, s])
    validate_curve_records(records)
    write_csv(_out_path(args, "stiffness_profile.csv"),
              ["n", "theta_deg", "s_normalized"], rows)
    all_ok = True
    for series in resp.series:
        if series.feasible:
            print(f"n={series.n_subvines}: pressure {series.pressure_pa:.9g} Pa, "
                  f"S in [{series.s_min:.9g}, {series.s_max:.9g}]")
        else:
            all_ok = False
            print(f"n={series.n_subvines}: infeasible, needs "
                  f"{series.pressure_pa:.9g} Pa (over burst)")
    return EXIT_OK if all_ok else EXIT_INFEASIBLE


def _run_calibrate(args) -> int:
    config = _config_for(args, "subvine")
    samples = read_force_pressure_csv(args.samples)
    req = CalibrateRequest(subvine=config.subvine, samples=samples)
    resp = _call("calibrate", req, args.server_url)
    rows = [[f.n_subvines, f.slope_n_per_pa, f.intercept_n, f.ratio_c_est,
             f.friction_f_est_n, f.r_squared, f.trial_spread]
            for f in resp.fits]
    write_csv(_out_path(args, "calibration.csv"),
              ["n_subvines", "slope_n_per_pa", "intercept_n", "ratio_c_est",
               "friction_f_est_n", "r_squared", "trial_spread"], rows)
    for f in resp.fits:
        print(f"n={f.n_subvines}: c={f.ratio_c_est:.9g} "
              f"f={f.friction_f_est_n:.9g} N r2={f.r_squared:.9g}")
    return EXIT_OK


def _run_joint_fit(args) -> int:
    samples = read_joint_trials_csv(args.samples)
    req = JointFitRequest(samples=samples)
    resp = _call("joint-fit", req, args.server_url)
    write_joint_model_csv(_out_path(args, "joint_model.csv"), resp.joint_model)
    knots = resp.joint_model.knot_angles_deg
    print(f"joint model: {len(knots)} knots from "
          f"{knots[0]:.9g} to {knots[-1]:.9g} deg")
    return EXIT_OK


def _run_simulate(args) -> int:
    config = _config_for(args, "subvine", "sheath", "transmission", "load",
                         "limb", "simulation")
    joint_model = None
    if args.joint_model is not None:
        joint_model = read_joint_model_csv(args.joint_model)
    req = SimulateRequest(subvine=config.subvine, sheath=config.sheath,
                          transmission=config.transmission, load=config.load,
                          limb=config.limb, simulation=config.simulation,
                          joint_model=joint_model)
    resp = _call("simulate", req, args.server_url)
    rows = [[s, p, ok, factor, payout, t]
            for s, p, ok, factor, payout, t in zip(
                resp.s_m, resp.pressure_pa, resp.feasible,
                resp.limiting_factor, resp.payout_m, resp.time_s)]
    write_csv(_out_path(args, "trace.csv"),
              ["s_m", "pressure_pa", "feasible", "limiting_factor",
               "payout_m", "time_s"], rows)
    print(f"deployment: {len(rows)} samples over {resp.s_m[-1]:.9g} m, "
          f"peak demand {resp.peak_pressure_pa:.9g} Pa, "
          f"duration {resp.duration_s:.9g} s")
    if resp.final_spool_turns is not None:
        print(f"spool: {resp.final_spool_turns:.9g} turns to full payout")
    if not resp.all_feasible:
        bad = sum(1 for ok in resp.feasible if not ok)
        print(f"infeasible: {bad} of {len(rows)} samples exceed burst pressure")
    return EXIT_OK if resp.all_feasible else EXIT_INFEASIBLE


def _run_design(args) -> int:
    config = _config_for(args, "design", "transmission")
    req = DesignRequest(design=config.design, transmission=config.transmission,
                        weights=config.weights)
    resp = _call("design", req, args.server_url)
    rows = [[c.n, c.subvine_diameter_m, c.sheath_diameter_m,
             c.required_pressure_pa, c.min_normalized_stiffness,
             c.max_normalized_stiffness, c.mean_normalized_stiffness,
             c.effective_bore_m, c.occupancy_ratio, c.feasible,
             ";".join(c.reasons), c.score]
            for c in resp.candidates]
    write_csv(_out_path(args, "designs.csv"),
              ["n", "subvine_diameter_m", "sheath_diameter_m",
               "required_pressure_pa", "min_normalized_stiffness",
               "max_normalized_stiffness", "mean_normalized_stiffness",
               "effective_bore_m", "occupancy_ratio", "feasible", "reasons",
               "score"], rows)
    feasible = [c for c in resp.candidates if c.feasible]
    print(f"design space: {len(resp.candidates)} candidates, "
          f"{len(feasible)} feasible")
    if feasible:
        best = feasible[0]
        print(f"best: n={best.n}, subvine {best.subvine_diameter_m:.9g} m, "
              f"sheath {best.sheath_diameter_m:.9g} m, score {best.score:.9g}")
        return EXIT_OK
    print("no feasible candidates under the given constraints")
    return EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unfurlkit",
        description="Mechanics, calibration, and design search for "
                    "unfurling-sheath donning mechanisms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--config", help="path to the YAML run config")
        p.add_argument("--out", default=".",
                       help="directory for emitted CSV files (default: .)")
        p.add_argument("--format", choices=["csv"], default="csv",
                       help="output format (csv only)")
        p.add_argument("--server-url", default=None,
                       help="run against a remote service instead of "
                            "in-process")

    common(sub.add_parser("props", help="cross-section and layout properties"))
    common(sub.add_parser("force", help="unfurl force over a pressure sweep"))
    common(sub.add_parser("pressure", help="required pressure for the "
                                           "configured load"))
    common(sub.add_parser("stiffness", help="directional stiffness profiles"))

    p = sub.add_parser("calibrate", help="fit transmission parameters from "
                                         "force-pressure logs")
    p.add_argument("samples", help="force_pressure.csv input")
    common(p)

    p = sub.add_parser("joint-fit", help="fit the empirical joint model from "
                                         "bent-joint trials")
    p.add_argument("samples", help="joint_trials.csv input")
    common(p)

    p = sub.add_parser("simulate", help="simulate deployment along a limb")
    p.add_argument("--joint-model",
                   help="joint_model.csv produced by joint-fit")
    common(p)

    common(sub.add_parser("design", help="rank design-space candidates"))
    return parser


_RUNNERS = {
    "props": _run_props,
    "force": _run_force,
    "pressure": _run_pressure,
    "stiffness": _run_stiffness,
    "calibrate": _run_calibrate,
    "joint-fit": _run_joint_fit,
    "simulate": _run_simulate,
    "design": _run_design,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _RUNNERS[args.command](args)
    except FeasibilityError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except UnfurlError as exc:
        where = f" ({exc.field})" if getattr(exc, "field", None) else ""
        print(f"error[{exc.code}]{where}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
