"""Quasi-static deployment of an unfurling sheath along an articulated limb.

The limb is a chain of straight segments joined at bent joints.  As the
fold point advances to arc position s, the pressure demand is the larger
of

* the straight-section demand from the lift balance, using the garment
  mass not yet deployed (remaining mass loads the tip uniformly), and
* the empirical joint-model demand of any joint whose influence window
  (one sheath diameter of arc on either side) covers s; overlapping
  windows compose by max.

Timing is idealized as constant tip speed.  The everted tube doubles back
on itself, so consumed sheath material (spool payout) is twice the
deployed length.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .calibration import EmpiricalJointModel, evaluate_joint_model
from .errors import InvalidInputError, SheathTooShortError
from .mech_core import (LoadSpec, SheathSpec, SubvineSpec, TransmissionParams,
                        pressure_for_force)


@dataclass(frozen=True)
class LimbSegment:
    length_m: float
    radius_m: float

    def __post_init__(self):
        if self.length_m <= 0:
            raise InvalidInputError(
                f"segment length must be positive, got {self.length_m}",
                field="length_m")
        if self.radius_m <= 0:
            raise InvalidInputError(
                f"segment radius must be positive, got {self.radius_m}",
                field="radius_m")


@dataclass(frozen=True)
class LimbModel:
    """Ordered segments with one bend angle per internal joint (0 = straight)."""

    segments: tuple[LimbSegment, ...]
    joint_angles_deg: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.segments) < 1:
            raise InvalidInputError("limb needs at least one segment",
                                    field="segments")
        if len(self.joint_angles_deg) != len(self.segments) - 1:
            raise InvalidInputError(
                f"expected {len(self.segments) - 1} joint angles, "
                f"got {len(self.joint_angles_deg)}",
                field="joint_angles_deg")
        for a in self.joint_angles_deg:
            if not 0.0 <= a <= 150.0:
                raise InvalidInputError(
                    f"joint angles must lie in [0, 150] deg, got {a}",
                    field="joint_angles_deg")


@dataclass(frozen=True)
class LimbPath:
    """Arc-length description of the limb with joint markers."""

    total_length_m: float
    joint_positions_m: tuple[float, ...]
    joint_angles_deg: tuple[float, ...]


def build_limb_path(limb: LimbModel) -> LimbPath:
    """Map each joint to its arc position; total length is the segment sum."""
    positions = []
    s = 0.0
    for seg in limb.segments[:-1]:
        s += seg.length_m
        positions.append(s)
    total = s + limb.segments[-1].length_m
    return LimbPath(total_length_m=total,
                    joint_positions_m=tuple(positions),
                    joint_angles_deg=limb.joint_angles_deg)


class LimitingFactor(str, enum.Enum):
    NONE = "none"
    BURST = "burst"
    JOINT_MODEL_RANGE = "joint-model-range"


@dataclass(frozen=True)
class SpoolState:
    """Reel bookkeeping under the 2:1 everted-material relation."""

    deployed_length_m: float
    payout_length_m: float
    reel_radius_m: float
    reel_turns: float


def spool_kinematics(deployed_length_m: float,
                     reel_radius_m: float) -> SpoolState:
    """payout = 2 * deployed; turns = payout / (2*pi*r)."""
    if deployed_length_m < 0:
        raise InvalidInputError(
            f"deployed length must be >= 0, got {deployed_length_m}",
            field="deployed_length_m")
    if reel_radius_m <= 0:
        raise InvalidInputError(
            f"reel radius must be positive, got {reel_radius_m}",
            field="reel_radius_m")
    payout = 2.0 * deployed_length_m
    return SpoolState(deployed_length_m=deployed_length_m,
                      payout_length_m=payout,
                      reel_radius_m=reel_radius_m,
                      reel_turns=payout / (2.0 * math.pi * reel_radius_m))


@dataclass(frozen=True)
class DeploymentTrace:
    """Per-arc-position demand, feasibility, spool state, and timing."""

    arc_positions_m: np.ndarray
    required_pressure_pa: np.ndarray
    feasible: np.ndarray
    limiting_factor: tuple[LimitingFactor, ...]
    spool_payout_m: np.ndarray
    time_s: np.ndarray

    def __post_init__(self):
        for name in ("arc_positions_m", "required_pressure_pa", "feasible",
                     "spool_payout_m", "time_s"):
            arr = np.asarray(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def all_feasible(self) -> bool:
        return bool(self.feasible.all())

    @property
    def peak_pressure_pa(self) -> float:
        return float(self.required_pressure_pa.max())


def simulate_deployment(limb: LimbModel, subvines: SubvineSpec,
                        sheath: SheathSpec, load: LoadSpec,
                        t: TransmissionParams,
                        joint_model: EmpiricalJointModel | None,
                        advance_speed_ms: float,
                        samples: int = 201) -> DeploymentTrace:
    """Trace the pressure demand of a full deployment along the limb.

    A joint model is mandatory whenever the limb has joints; without
    joints it may be omitted.  Joint angles outside the model's knot range
    are clamped and the affected samples flagged, never extrapolated.
    """
    if advance_speed_ms <= 0:
        raise InvalidInputError(
            f"advance speed must be positive, got {advance_speed_ms}",
            field="advance_speed_ms")
    if samples < 2:
        raise InvalidInputError(f"need >= 2 samples, got {samples}",
                                field="samples")
    path = build_limb_path(limb)
    if sheath.length_m < path.total_length_m:
        raise SheathTooShortError(
            f"sheath length {sheath.length_m} m cannot cover the "
            f"{path.total_length_m} m limb")
    if path.joint_positions_m and joint_model is None:
        raise InvalidInputError(
            "a joint model is required for a limb with joints",
            field="joint_model")

    cs = subvines.cross_section()
    total = path.total_length_m
    window = sheath.diameter_m
    positions = np.linspace(0.0, total, samples)

    joint_demands = []
    if joint_model is not None:
        for angle in path.joint_angles_deg:
            joint_demands.append(evaluate_joint_model(joint_model, angle))

    pressures = np.empty(samples)
    feasible = np.empty(samples, dtype=bool)
    factors: list[LimitingFactor] = []
    for k, s in enumerate(positions):
        mass_left = load.garment_mass_kg * (1.0 - s / total)
        demand = pressure_for_force(mass_left * load.gravity_ms2,
                                    subvines.count, cs, t)
        clamped_here = False
        for pos, evaluation in zip(path.joint_positions_m, joint_demands):
            if abs(s - pos) <= window:
                demand = max(demand, evaluation.pressure_pa)
                clamped_here = clamped_here or evaluation.extrapolated
        ok = demand <= subvines.burst_pressure_pa
        pressures[k] = demand
        feasible[k] = ok
        if not ok:
            factors.append(LimitingFactor.BURST)
        elif clamped_here:
            factors.append(LimitingFactor.JOINT_MODEL_RANGE)
        else:
            factors.append(LimitingFactor.NONE)

    return DeploymentTrace(
        arc_positions_m=positions,
        required_pressure_pa=pressures,
        feasible=feasible,
        limiting_factor=tuple(factors),
        spool_payout_m=2.0 * positions,
        time_s=positions / advance_speed_ms)


def torque_capacity_to_tip_load(torque_nm: float, arm_length_m: float,
                                gravity_ms2: float = 9.81) -> float:
    """Mass liftable at the tip of a lever arm: m = tau / (g * L)."""
    if arm_length_m <= 0:
        raise InvalidInputError(
            f"arm length must be positive, got {arm_length_m}",
            field="arm_length_m")
    if torque_nm < 0:
        raise InvalidInputError(
            f"torque must be >= 0, got {torque_nm}", field="torque_nm")
    return torque_nm / (gravity_ms2 * arm_length_m)
