"""HTTP service wrapping the computation modules.

Each endpoint is a thin pydantic-validated front over a handler function;
the handlers are plain functions so the CLI can call them in-process
without a running server.  Infeasible-but-well-posed outcomes (pressure
over burst, infeasible trace samples, empty design sets) are encoded in
the response payloads; only malformed inputs raise.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import __version__
from .calibration import fit_force_pressure, fit_joint_model
from .deploy_sim import simulate_deployment, spool_kinematics
from .design_search import enumerate_candidates, search
from .errors import FeasibilityError, InvalidInputError, UnfurlError
from .mech_core import (TransmissionParams, cross_section_properties,
                        parallel_axis, required_pressure, total_unfurl_force)
from .schemas import (CalibrateRequest, CalibrateResponse, CandidateModel,
                      DesignRequest, DesignResponse, FitResultModel,
                      ForceRequest, ForceResponse, JointFitRequest,
                      JointFitResponse, JointModelPayload, PressureRequest,
                      PressureResponse, PropsRequest, PropsResponse,
                      QuantityValue, SimulateRequest, SimulateResponse,
                      StiffnessRequest, StiffnessResponse, StiffnessSeries)
from .stiffness_map import (constant_propulsion_pressure,
                            normalized_stiffness_profile, stiffness_extrema)


def props_handler(req: PropsRequest) -> PropsResponse:
    """Geometric and sectional properties of the configured mechanism."""
    subvine = req.subvine.to_domain(req.sheath)
    cs = subvine.cross_section()
    rows = [
        QuantityValue(quantity="subvine_diameter", value=subvine.diameter_m,
                      unit="m"),
        QuantityValue(quantity="subvine_count", value=float(subvine.count),
                      unit="1"),
        QuantityValue(quantity="subvine_area", value=cs.area_m2, unit="m^2"),
        QuantityValue(quantity="subvine_inertia", value=cs.inertia_m4,
                      unit="m^4"),
        QuantityValue(quantity="burst_pressure",
                      value=subvine.burst_pressure_pa, unit="Pa"),
    ]
    radius = req.subvine.resolved_placement_radius_m(req.sheath)
    if radius is not None:
        rows.append(QuantityValue(quantity="placement_radius", value=radius,
                                  unit="m"))
        rows.append(QuantityValue(
            quantity="offset_axis_inertia",
            value=parallel_axis(cs, radius), unit="m^4"))
        if subvine.count >= 2:
            rows.append(QuantityValue(
                quantity="chord_spacing",
                value=2.0 * radius * math.sin(math.pi / subvine.count),
                unit="m"))
    if req.sheath is not None:
        sheath = req.sheath.to_domain()
        rows.append(QuantityValue(
            quantity="effective_bore",
            value=sheath.diameter_m - 2.0 * subvine.diameter_m, unit="m"))
        rows.append(QuantityValue(
            quantity="occupancy_ratio",
            value=subvine.count * subvine.diameter_m ** 2 / sheath.diameter_m ** 2,
            unit="1"))
    return PropsResponse(properties=rows)


def force_handler(req: ForceRequest) -> ForceResponse:
    """Total unfurl force over a pressure sweep from zero to burst."""
    subvine = req.subvine.to_domain()
    t = req.transmission.to_domain()
    pressures = np.linspace(0.0, subvine.burst_pressure_pa, req.sweep_points)
    raw, clamped = [], []
    for p in pressures:
        force = total_unfurl_force(subvine, float(p), t)
        raw.append(force.raw_n)
        clamped.append(force.clamped_n)
    return ForceResponse(n_subvines=subvine.count,
                         pressure_pa=[float(p) for p in pressures],
                         unfurl_force_raw_n=raw, unfurl_force_n=clamped)


def pressure_handler(req: PressureRequest) -> PressureResponse:
    """Required pressure for the configured load; infeasible is a result."""
    subvine = req.subvine.to_domain()
    t = req.transmission.to_domain()
    load = req.load.to_domain()
    try:
        p = required_pressure(load, subvine, t)
        feasible = True
    except FeasibilityError as exc:
        p = exc.pressure_pa
        feasible = False
    return PressureResponse(garment_mass_kg=load.garment_mass_kg,
                            n_subvines=subvine.count,
                            required_pressure_pa=p,
                            burst_pressure_pa=subvine.burst_pressure_pa,
                            feasible=feasible)


def stiffness_handler(req: StiffnessRequest) -> StiffnessResponse:
    """Normalized stiffness profiles for each requested subvine count."""
    radius = req.subvine.resolved_placement_radius_m(req.sheath)
    if radius is None:
        raise InvalidInputError(
            "stiffness needs subvine.placement_radius_mm or a sheath section",
            field="subvine.placement_radius_mm")
    cs = cross_section_properties(req.subvine.diameter_mm * 1e-3)
    t = req.transmission.to_domain()
    burst = req.subvine.burst_pressure_kpa * 1e3
    section = req.stiffness

    series = []
    for n in sorted(set(section.n_values)):
        try:
            profile = normalized_stiffness_profile(
                n, cs, radius, t, section.target_force_n,
                samples=section.samples,
                include_friction=section.include_friction,
                offset_rad=math.radians(req.subvine.angular_offset_deg),
                burst_pressure_pa=burst)
        except FeasibilityError as exc:
            series.append(StiffnessSeries(
                n_subvines=n, feasible=False, pressure_pa=exc.pressure_pa,
                theta_deg=[], s_normalized=[]))
            continue
        theta_min, s_min, theta_max, s_max = stiffness_extrema(profile)
        series.append(StiffnessSeries(
            n_subvines=n, feasible=True,
            pressure_pa=_profile_pressure(n, cs, radius, t, section),
            theta_deg=[math.degrees(x) for x in profile.theta_samples_rad],
            s_normalized=[float(v) for v in profile.normalized_stiffness],
            theta_min_deg=math.degrees(theta_min), s_min=s_min,
            theta_max_deg=math.degrees(theta_max), s_max=s_max))
    return StiffnessResponse(series=series)


def _profile_pressure(n, cs, radius, t, section) -> float:
    t_eff = t if section.include_friction else TransmissionParams(
        ratio_c=t.ratio_c, friction_residual_n=0.0)
    return constant_propulsion_pressure(n, section.target_force_n, cs, t_eff)


def calibrate_handler(req: CalibrateRequest) -> CalibrateResponse:
    """Fit transmission parameters from force-pressure rows."""
    cs = cross_section_properties(req.subvine.diameter_mm * 1e-3)
    samples = [row.to_domain() for row in req.samples]
    fits = fit_force_pressure(samples, cs)
    return CalibrateResponse(fits=[
        FitResultModel(n_subvines=f.n_subvines,
                       slope_n_per_pa=f.slope_n_per_pa,
                       intercept_n=f.intercept_n,
                       ratio_c_est=f.ratio_c_est,
                       friction_f_est_n=f.friction_f_est_n,
                       r_squared=f.r_squared,
                       trial_spread=f.trial_spread)
        for f in fits])


def joint_fit_handler(req: JointFitRequest) -> JointFitResponse:
    """Aggregate bent-joint trials into the empirical joint model."""
    samples = [row.to_domain() for row in req.samples]
    model = fit_joint_model(samples)
    return JointFitResponse(joint_model=JointModelPayload.from_domain(model))


def simulate_handler(req: SimulateRequest) -> SimulateResponse:
    """Quasi-static deployment trace along the configured limb."""
    sheath = req.sheath.to_domain()
    subvine = req.subvine.to_domain(req.sheath)
    t = req.transmission.to_domain()
    load = req.load.to_domain()
    limb = req.limb.to_domain()
    speed = req.simulation.advance_speed_ms(subvine.cross_section().area_m2)
    joint_model = (req.joint_model.to_domain()
                   if req.joint_model is not None else None)

    trace = simulate_deployment(limb, subvine, sheath, load, t, joint_model,
                                speed, samples=req.simulation.samples)
    turns = None
    if req.simulation.reel_radius_mm is not None:
        turns = spool_kinematics(
            float(trace.arc_positions_m[-1]),
            req.simulation.reel_radius_mm * 1e-3).reel_turns
    return SimulateResponse(
        s_m=[float(v) for v in trace.arc_positions_m],
        pressure_pa=[float(v) for v in trace.required_pressure_pa],
        feasible=[bool(v) for v in trace.feasible],
        limiting_factor=[f.value for f in trace.limiting_factor],
        payout_m=[float(v) for v in trace.spool_payout_m],
        time_s=[float(v) for v in trace.time_s],
        peak_pressure_pa=trace.peak_pressure_pa,
        all_feasible=trace.all_feasible,
        duration_s=float(trace.time_s[-1]),
        final_spool_turns=turns)


def design_handler(req: DesignRequest) -> DesignResponse:
    """Enumerate, screen, and rank the design space.

    Feasible candidates come first in rank order; infeasible ones follow
    in canonical enumeration order with no score.
    """
    t = req.transmission.to_domain()
    space = req.design.to_domain(t)
    candidates = enumerate_candidates(space,
                                      jam_threshold=req.design.jam_threshold)
    ranked = []
    if any(c.feasible for c in candidates):
        ranked = search(space, req.weights.to_domain(),
                        jam_threshold=req.design.jam_threshold)

    def _clean(x: float) -> float | None:
        return None if math.isnan(x) else x

    def _model(c, score: float | None) -> CandidateModel:
        return CandidateModel(
            n=c.n, subvine_diameter_m=c.subvine_diameter_m,
            sheath_diameter_m=c.sheath_diameter_m,
            required_pressure_pa=c.required_pressure_pa,
            min_normalized_stiffness=_clean(c.min_normalized_stiffness),
            max_normalized_stiffness=_clean(c.max_normalized_stiffness),
            mean_normalized_stiffness=_clean(c.mean_normalized_stiffness),
            effective_bore_m=c.effective_bore_m,
            occupancy_ratio=c.occupancy_ratio,
            feasible=c.feasible, reasons=list(c.reasons), score=score)

    out = [_model(rc.candidate, rc.score) for rc in ranked]
    out.extend(_model(c, None) for c in candidates if not c.feasible)
    return DesignResponse(candidates=out,
                          any_feasible=any(c.feasible for c in candidates))


def create_app() -> FastAPI:
    app = FastAPI(title="unfurlkit", version=__version__)

    @app.exception_handler(UnfurlError)
    async def _domain_error(request, exc: UnfurlError):
        status = 409 if isinstance(exc, FeasibilityError) else 422
        body = {"code": exc.code, "message": str(exc)}
        if exc.field:
            body["field"] = exc.field
        return JSONResponse(status_code=status, content=body)

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/props", response_model=PropsResponse)
    def props(req: PropsRequest):
        return props_handler(req)

    @app.post("/force", response_model=ForceResponse)
    def force(req: ForceRequest):
        return force_handler(req)

    @app.post("/pressure", response_model=PressureResponse)
    def pressure(req: PressureRequest):
        return pressure_handler(req)

    @app.post("/stiffness", response_model=StiffnessResponse)
    def stiffness(req: StiffnessRequest):
        return stiffness_handler(req)

    @app.post("/calibrate", response_model=CalibrateResponse)
    def calibrate(req: CalibrateRequest):
        return calibrate_handler(req)

    @app.post("/joint-fit", response_model=JointFitResponse)
    def joint_fit(req: JointFitRequest):
        return joint_fit_handler(req)

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest):
        return simulate_handler(req)

    @app.post("/design", response_model=DesignResponse)
    def design(req: DesignRequest):
        return design_handler(req)

    return app


app = create_app()
