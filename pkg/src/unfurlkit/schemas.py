"""Pydantic models for the config file, the HTTP service, and CSV rows.

Boundary rule: files and wire payloads speak mm / kPa / deg (mass in kg,
force in N); everything is converted to SI exactly once, in
``to_domain()`` methods, before touching the computation modules.
Emitted data files are SI (their headers say so).
"""

from __future__ import annotations

import math
from pathlib import Path

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .calibration import (EmpiricalJointModel, ForcePressureSample,
                          JointTrialSample)
from .deploy_sim import LimbModel, LimbSegment
from .design_search import DesignSpace, ScoreWeights
from .errors import ConfigError
from .mech_core import LoadSpec, SheathSpec, SubvineSpec, TransmissionParams
from .stiffness_map import default_placement_radius

MM = 1e-3
KPA = 1e3
LPM = 1.0 / 60000.0  # liters/minute -> m^3/s


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------- config


class SubvineSection(StrictModel):
    diameter_mm: float = Field(gt=0)
    count: int = Field(ge=1)
    placement_radius_mm: float | None = Field(default=None, ge=0)
    angular_offset_deg: float = 0.0
    burst_pressure_kpa: float = Field(gt=0)

    def resolved_placement_radius_m(self,
                                    sheath: "SheathSection | None",
                                    ) -> float | None:
        if self.placement_radius_mm is not None:
            return self.placement_radius_mm * MM
        if sheath is not None:
            return default_placement_radius(sheath.diameter_mm * MM,
                                            self.diameter_mm * MM)
        return None

    def to_domain(self, sheath: "SheathSection | None" = None) -> SubvineSpec:
        radius = self.resolved_placement_radius_m(sheath)
        return SubvineSpec(
            diameter_m=self.diameter_mm * MM,
            count=self.count,
            placement_radius_m=radius if radius is not None else 0.0,
            angular_offset_rad=math.radians(self.angular_offset_deg),
            burst_pressure_pa=self.burst_pressure_kpa * KPA)


class SheathSection(StrictModel):
    diameter_mm: float = Field(gt=0)
    length_mm: float = Field(gt=0)
    channel_diameter_mm: float = Field(gt=0)

    def to_domain(self) -> SheathSpec:
        return SheathSpec(diameter_m=self.diameter_mm * MM,
                          length_m=self.length_mm * MM,
                          channel_diameter_m=self.channel_diameter_mm * MM)


class TransmissionSection(StrictModel):
    ratio_c: float | None = Field(default=None, gt=0, lt=1)
    friction_residual_n: float = Field(default=0.0, ge=0)
    arm_a_mm: float | None = Field(default=None, gt=0)
    arm_b_mm: float | None = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _ratio_or_arms(self) -> "TransmissionSection":
        if (self.arm_a_mm is None) != (self.arm_b_mm is None):
            raise ValueError("arm_a_mm and arm_b_mm must be given together")
        if self.ratio_c is None and self.arm_a_mm is None:
            raise ValueError("either ratio_c or both lever arms are required")
        return self

    def to_domain(self) -> TransmissionParams:
        if self.arm_a_mm is not None and self.arm_b_mm is not None:
            a, b = self.arm_a_mm * MM, self.arm_b_mm * MM
            if self.ratio_c is not None:
                return TransmissionParams(
                    ratio_c=self.ratio_c,
                    friction_residual_n=self.friction_residual_n,
                    arm_a_m=a, arm_b_m=b)
            return TransmissionParams.from_arms(
                a, b, friction_residual_n=self.friction_residual_n)
        return TransmissionParams(ratio_c=self.ratio_c,
                                  friction_residual_n=self.friction_residual_n)


class LoadSection(StrictModel):
    garment_mass_kg: float = Field(ge=0)
    gravity_ms2: float = Field(default=9.81, gt=0)

    def to_domain(self) -> LoadSpec:
        return LoadSpec(garment_mass_kg=self.garment_mass_kg,
                        gravity_ms2=self.gravity_ms2)


class LimbSegmentSection(StrictModel):
    length_mm: float = Field(gt=0)
    radius_mm: float = Field(gt=0)


class LimbSection(StrictModel):
    segments: list[LimbSegmentSection] = Field(min_length=1)
    joint_angles_deg: list[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def _joint_count(self) -> "LimbSection":
        if len(self.joint_angles_deg) != len(self.segments) - 1:
            raise ValueError(
                f"expected {len(self.segments) - 1} joint angles, "
                f"got {len(self.joint_angles_deg)}")
        for a in self.joint_angles_deg:
            if not 0.0 <= a <= 150.0:
                raise ValueError(f"joint angles must lie in [0, 150], got {a}")
        return self

    def to_domain(self) -> LimbModel:
        return LimbModel(
            segments=tuple(LimbSegment(length_m=s.length_mm * MM,
                                       radius_m=s.radius_mm * MM)
                           for s in self.segments),
            joint_angles_deg=tuple(self.joint_angles_deg))


class SimulationSection(StrictModel):
    advance_speed_mm_s: float | None = Field(default=None, gt=0)
    volumetric_flow_lpm: float | None = Field(default=None, gt=0)
    reel_radius_mm: float | None = Field(default=None, gt=0)
    samples: int = Field(default=201, ge=2)

    @model_validator(mode="after")
    def _one_speed_source(self) -> "SimulationSection":
        if (self.advance_speed_mm_s is None) == (self.volumetric_flow_lpm is None):
            raise ValueError(
                "exactly one of advance_speed_mm_s and volumetric_flow_lpm "
                "is required")
        return self

    def advance_speed_ms(self, subvine_area_m2: float) -> float:
        if self.advance_speed_mm_s is not None:
            return self.advance_speed_mm_s * MM
        return self.volumetric_flow_lpm * LPM / subvine_area_m2


class StiffnessSection(StrictModel):
    target_force_n: float = Field(gt=0)
    samples: int = Field(default=360, ge=2)
    n_values: list[int] = Field(default=[1, 2, 3, 4])
    include_friction: bool = True

    @model_validator(mode="after")
    def _valid_counts(self) -> "StiffnessSection":
        if not self.n_values:
            raise ValueError("n_values must be nonempty")
        if any(n < 1 for n in self.n_values):
            raise ValueError("n_values must all be >= 1")
        return self


class DesignSection(StrictModel):
    n_min: int = Field(default=1, ge=1)
    n_max: int = Field(default=4, ge=1)
    subvine_diameters_mm: list[float] = Field(min_length=1)
    sheath_diameters_mm: list[float] = Field(min_length=1)
    burst_pressure_kpa: float = Field(gt=0)
    target_force_n: float = Field(gt=0)
    jam_threshold: float = Field(default=0.15, gt=0)

    @model_validator(mode="after")
    def _valid_range(self) -> "DesignSection":
        if self.n_max < self.n_min:
            raise ValueError("n_max must be >= n_min")
        if any(d <= 0 for d in self.subvine_diameters_mm + self.sheath_diameters_mm):
            raise ValueError("diameters must all be positive")
        return self

    def to_domain(self, transmission: TransmissionParams) -> DesignSpace:
        return DesignSpace(
            n_range=(self.n_min, self.n_max),
            subvine_diameters_m=tuple(sorted({d * MM for d in self.subvine_diameters_mm})),
            sheath_diameters_m=tuple(sorted({d * MM for d in self.sheath_diameters_mm})),
            burst_pressure_pa=self.burst_pressure_kpa * KPA,
            target_force_n=self.target_force_n,
            transmission=transmission)


class WeightsSection(StrictModel):
    pressure: float = Field(default=1.0, ge=0)
    stiffness: float = Field(default=1.0, ge=0)
    bore: float = Field(default=1.0, ge=0)

    @model_validator(mode="after")
    def _not_all_zero(self) -> "WeightsSection":
        if self.pressure == 0 and self.stiffness == 0 and self.bore == 0:
            raise ValueError("at least one weight must be positive")
        return self

    def to_domain(self) -> ScoreWeights:
        return ScoreWeights(pressure=self.pressure, stiffness=self.stiffness,
                            bore=self.bore)


class RunConfig(StrictModel):
    subvine: SubvineSection | None = None
    sheath: SheathSection | None = None
    transmission: TransmissionSection | None = None
    load: LoadSection | None = None
    limb: LimbSection | None = None
    simulation: SimulationSection | None = None
    stiffness: StiffnessSection | None = None
    design: DesignSection | None = None
    weights: WeightsSection = Field(default_factory=WeightsSection)

    @model_validator(mode="after")
    def _cross_checks(self) -> "RunConfig":
        if self.subvine is not None and self.sheath is not None:
            if self.sheath.channel_diameter_mm < self.subvine.diameter_mm:
                raise ValueError(
                    "sheath.channel_diameter_mm must be >= subvine.diameter_mm")
        return self


def _format_validation_error(err: ValidationError) -> str:
    lines = []
    for item in err.errors():
        path = ".".join(str(p) for p in item["loc"]) or "<root>"
        lines.append(f"{path}: {item['msg']}")
    return "; ".join(lines)


def parse_config(path: str | Path) -> RunConfig:
    """Load and validate a YAML run config.

    Unknown keys, type errors, and invariant violations all surface as
    ConfigError with dotted field paths.
    """
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}", field=str(p))
    try:
        raw = yaml.safe_load(p.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed config syntax: {exc}") from exc
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a mapping")
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(exc)) from exc


def require_section(config: RunConfig, name: str):
    value = getattr(config, name)
    if value is None:
        raise ConfigError(f"config section '{name}' is required for this "
                          "command", field=name)
    return value


# ------------------------------------------------------------- CSV rows


class ForcePressureRow(StrictModel):
    """One row of force_pressure.csv (boundary units, as in the file)."""

    n_subvines: int = Field(ge=1)
    sheath_diameter_mm: float = Field(gt=0)
    trial: int
    pressure_kpa: float = Field(ge=0)
    force_n: float

    def to_domain(self) -> ForcePressureSample:
        return ForcePressureSample(
            n_subvines=self.n_subvines,
            sheath_diameter_m=self.sheath_diameter_mm * MM,
            trial=self.trial,
            pressure_pa=self.pressure_kpa * KPA,
            force_n=self.force_n)


class JointTrialRow(StrictModel):
    """One row of joint_trials.csv (boundary units, as in the file)."""

    joint_angle_deg: float = Field(ge=0, le=180)
    trial: int
    peak_pressure_kpa: float = Field(ge=0)
    torque_nm: float = Field(ge=0)

    def to_domain(self) -> JointTrialSample:
        return JointTrialSample(
            joint_angle_deg=self.joint_angle_deg,
            trial=self.trial,
            peak_pressure_pa=self.peak_pressure_kpa * KPA,
            torque_nm=self.torque_nm)


class JointModelPayload(StrictModel):
    """Joint model knots as emitted to / re-ingested from joint_model.csv (SI)."""

    knot_angles_deg: list[float]
    mean_pressure_pa: list[float]
    pressure_std_pa: list[float]
    mean_torque_nm: list[float]
    torque_std_nm: list[float]

    @classmethod
    def from_domain(cls, model: EmpiricalJointModel) -> "JointModelPayload":
        return cls(knot_angles_deg=list(model.knot_angles_deg),
                   mean_pressure_pa=list(model.mean_pressure_pa),
                   pressure_std_pa=list(model.pressure_std_pa),
                   mean_torque_nm=list(model.mean_torque_nm),
                   torque_std_nm=list(model.torque_std_nm))

    def to_domain(self) -> EmpiricalJointModel:
        return EmpiricalJointModel(
            knot_angles_deg=tuple(self.knot_angles_deg),
            mean_pressure_pa=tuple(self.mean_pressure_pa),
            pressure_std_pa=tuple(self.pressure_std_pa),
            mean_torque_nm=tuple(self.mean_torque_nm),
            torque_std_nm=tuple(self.torque_std_nm))


# ------------------------------------------------- service request models


class _ChannelFitMixin:
    """Shared cross-check for requests carrying both subvine and sheath."""

    @model_validator(mode="after")
    def _channel_fits_subvine(self):
        sheath = getattr(self, "sheath", None)
        if sheath is not None and \
                sheath.channel_diameter_mm < self.subvine.diameter_mm:
            raise ValueError(
                "sheath.channel_diameter_mm must be >= subvine.diameter_mm")
        return self


class PropsRequest(StrictModel, _ChannelFitMixin):
    subvine: SubvineSection
    sheath: SheathSection | None = None


class ForceRequest(StrictModel):
    subvine: SubvineSection
    transmission: TransmissionSection
    sweep_points: int = Field(default=101, ge=2)


class PressureRequest(StrictModel):
    subvine: SubvineSection
    transmission: TransmissionSection
    load: LoadSection


class StiffnessRequest(StrictModel, _ChannelFitMixin):
    subvine: SubvineSection
    transmission: TransmissionSection
    stiffness: StiffnessSection
    sheath: SheathSection | None = None


class CalibrateRequest(StrictModel):
    subvine: SubvineSection
    samples: list[ForcePressureRow]


class JointFitRequest(StrictModel):
    samples: list[JointTrialRow]


class SimulateRequest(StrictModel, _ChannelFitMixin):
    subvine: SubvineSection
    sheath: SheathSection
    transmission: TransmissionSection
    load: LoadSection
    limb: LimbSection
    simulation: SimulationSection
    joint_model: JointModelPayload | None = None


class DesignRequest(StrictModel):
    design: DesignSection
    transmission: TransmissionSection
    weights: WeightsSection = Field(default_factory=WeightsSection)


# ------------------------------------------------ service response models


class QuantityValue(StrictModel):
    quantity: str
    value: float
    unit: str


class CurveRecord(StrictModel):
    """One point of a long-format curve file."""

    series: str
    x: float
    y: float
    x_unit: str
    y_unit: str


def validate_curve_records(records: list[CurveRecord]) -> None:
    """Within each series, x must be strictly increasing."""
    last: dict[str, float] = {}
    for rec in records:
        if rec.series in last and rec.x <= last[rec.series]:
            raise ConfigError(
                f"curve series {rec.series!r} is not strictly increasing "
                f"at x={rec.x}", field="series")
        last[rec.series] = rec.x


class PropsResponse(StrictModel):
    properties: list[QuantityValue]


class ForceResponse(StrictModel):
    n_subvines: int
    pressure_pa: list[float]
    unfurl_force_raw_n: list[float]
    unfurl_force_n: list[float]


class PressureResponse(StrictModel):
    garment_mass_kg: float
    n_subvines: int
    required_pressure_pa: float
    burst_pressure_pa: float
    feasible: bool


class StiffnessSeries(StrictModel):
    n_subvines: int
    feasible: bool
    pressure_pa: float
    theta_deg: list[float]
    s_normalized: list[float]
    theta_min_deg: float | None = None
    s_min: float | None = None
    theta_max_deg: float | None = None
    s_max: float | None = None


class StiffnessResponse(StrictModel):
    series: list[StiffnessSeries]


class FitResultModel(StrictModel):
    n_subvines: int
    slope_n_per_pa: float
    intercept_n: float
    ratio_c_est: float
    friction_f_est_n: float
    r_squared: float
    trial_spread: float


class CalibrateResponse(StrictModel):
    fits: list[FitResultModel]


class JointFitResponse(StrictModel):
    joint_model: JointModelPayload


class SimulateResponse(StrictModel):
    s_m: list[float]
    pressure_pa: list[float]
    feasible: list[bool]
    limiting_factor: list[str]
    payout_m: list[float]
    time_s: list[float]
    peak_pressure_pa: float
    all_feasible: bool
    duration_s: float
    final_spool_turns: float | None = None


class CandidateModel(StrictModel):
    n: int
    subvine_diameter_m: float
    sheath_diameter_m: float
    required_pressure_pa: float
    min_normalized_stiffness: float
    max_normalized_stiffness: float
    mean_normalized_stiffness: float
    effective_bore_m: float
    occupancy_ratio: float
    feasible: bool
    reasons: list[str]
    score: float | None = None


class DesignResponse(StrictModel):
    candidates: list[CandidateModel]
    any_feasible: bool
