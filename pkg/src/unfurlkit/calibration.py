"""Parameter recovery from experiment logs.

Two calibrations are supported:

* force-pressure logs -> transmission ratio c and friction residual f,
  from the linear model F = N*c*A*P - N*c*f fitted per subvine count;
* bent-joint trials -> an empirical lookup of peak pressure and exerted
  torque versus joint angle.  High-angle behavior is dominated by
  wrinkling and subvine collapse, so the joint model never extrapolates;
  it clamps and flags instead.

All reductions are order-independent: samples are canonically sorted
before any floating-point accumulation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (CalibrationRangeError, DegenerateDataError,
                     InsufficientDataError, InvalidInputError)
from .mech_core import CrossSection


@dataclass(frozen=True)
class ForcePressureSample:
    """One load-cell reading from the unfurling-force rig."""

    n_subvines: int
    sheath_diameter_m: float
    trial: int
    pressure_pa: float
    force_n: float

    def __post_init__(self):
        if self.n_subvines < 1:
            raise InvalidInputError(
                f"n_subvines must be >= 1, got {self.n_subvines}",
                field="n_subvines")
        if self.pressure_pa < 0:
            raise InvalidInputError(
                f"pressure must be >= 0, got {self.pressure_pa}",
                field="pressure_pa")


@dataclass(frozen=True)
class FitResult:
    """Per-subvine-count line fit and the transmission parameters it implies."""

    n_subvines: int
    slope_n_per_pa: float
    intercept_n: float
    ratio_c_est: float
    friction_f_est_n: float
    r_squared: float
    trial_spread: float


def _line_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Ordinary least squares y = m*x + q via the centered closed form."""
    x_mean = float(x.mean())
    y_mean = float(y.mean())
    dx = x - x_mean
    var = float(np.dot(dx, dx))
    slope = float(np.dot(dx, y - y_mean)) / var
    return slope, y_mean - slope * x_mean


def fit_force_pressure(samples: list[ForcePressureSample],
                       cs: CrossSection) -> list[FitResult]:
    """Fit F = m*P + q per subvine count and invert for c and f.

    c = m / (N*A) and f = -q*A/m.  Returns results in ascending N.
    A fitted c outside (0, 1) is rejected; a negative fitted f is kept but
    warned about, since it signals model misfit rather than a bad fit.
    """
    if not samples:
        raise InsufficientDataError("no force-pressure samples")
    groups: dict[int, list[ForcePressureSample]] = {}
    for s in samples:
        groups.setdefault(s.n_subvines, []).append(s)

    results = []
    for n in sorted(groups):
        group = sorted(groups[n],
                       key=lambda s: (s.trial, s.pressure_pa, s.force_n))
        if len(group) < 2:
            raise InsufficientDataError(
                f"n={n}: need >= 2 samples, got {len(group)}")
        p = np.array([s.pressure_pa for s in group])
        force = np.array([s.force_n for s in group])
        if np.unique(p).size < 2:
            raise DegenerateDataError(
                f"n={n}: pressures have zero variance, cannot fit a line")

        slope, intercept = _line_fit(p, force)
        c_est = slope / (n * cs.area_m2)
        if not 0.0 < c_est < 1.0:
            raise CalibrationRangeError(
                f"n={n}: fitted transmission ratio {c_est:.6g} is outside (0, 1)")
        f_est = -intercept * cs.area_m2 / slope
        if f_est < 0:
            warnings.warn(
                f"n={n}: fitted friction residual is negative ({f_est:.6g} N); "
                "the linear pulley model does not describe this data well",
                stacklevel=2)

        residuals = force - (slope * p + intercept)
        ss_res = float(np.dot(residuals, residuals))
        ss_tot = float(np.dot(force - force.mean(), force - force.mean()))
        r_sq = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
        r_sq = min(1.0, max(0.0, r_sq))

        trial_slopes = []
        for trial in sorted({s.trial for s in group}):
            rows = [s for s in group if s.trial == trial]
            tp = np.array([s.pressure_pa for s in rows])
            tf = np.array([s.force_n for s in rows])
            if np.unique(tp).size >= 2:
                trial_slopes.append(_line_fit(tp, tf)[0])
        spread = float(np.std(trial_slopes)) if trial_slopes else 0.0

        results.append(FitResult(
            n_subvines=n, slope_n_per_pa=slope, intercept_n=intercept,
            ratio_c_est=c_est, friction_f_est_n=f_est, r_squared=r_sq,
            trial_spread=spread))
    return results


@dataclass(frozen=True)
class JointTrialSample:
    """One bent-configuration trial: peak pressure to pass the joint and
    the torque exerted on the distal segment."""

    joint_angle_deg: float
    trial: int
    peak_pressure_pa: float
    torque_nm: float

    def __post_init__(self):
        if not 0.0 <= self.joint_angle_deg <= 180.0:
            raise InvalidInputError(
                f"joint angle must lie in [0, 180] deg, got {self.joint_angle_deg}",
                field="joint_angle_deg")
        if self.peak_pressure_pa < 0 or self.torque_nm < 0:
            raise InvalidInputError(
                "pressure and torque must be >= 0", field="peak_pressure_pa")


@dataclass(frozen=True)
class EmpiricalJointModel:
    """Per-angle statistics with piecewise-linear interpolation between knots.

    Linear interpolation never overshoots its bracketing knot means, which
    is all the monotonicity the underlying data supports.
    """

    knot_angles_deg: tuple[float, ...]
    mean_pressure_pa: tuple[float, ...]
    pressure_std_pa: tuple[float, ...]
    mean_torque_nm: tuple[float, ...]
    torque_std_nm: tuple[float, ...]

    def __post_init__(self):
        k = len(self.knot_angles_deg)
        if k < 2:
            raise InsufficientDataError("joint model needs >= 2 knots")
        if any(b <= a for a, b in zip(self.knot_angles_deg,
                                      self.knot_angles_deg[1:])):
            raise InvalidInputError("knot angles must be strictly increasing",
                                    field="knot_angles_deg")
        for name in ("mean_pressure_pa", "pressure_std_pa",
                     "mean_torque_nm", "torque_std_nm"):
            if len(getattr(self, name)) != k:
                raise InvalidInputError(
                    f"{name} must have one entry per knot", field=name)


class JointEvaluation(NamedTuple):
    pressure_pa: float
    torque_nm: float
    extrapolated: bool


def fit_joint_model(samples: list[JointTrialSample]) -> EmpiricalJointModel:
    """Aggregate trials into per-angle means and stds.

    Means (not medians) aggregate the handful of trials per angle;
    population std, so a single trial yields std 0.
    """
    if not samples:
        raise InsufficientDataError("no joint trial samples")
    by_angle: dict[float, list[JointTrialSample]] = {}
    for s in samples:
        by_angle.setdefault(s.joint_angle_deg, []).append(s)
    if len(by_angle) < 2:
        raise InsufficientDataError(
            f"need >= 2 distinct joint angles, got {len(by_angle)}")

    knots, p_mean, p_std, t_mean, t_std = [], [], [], [], []
    for angle in sorted(by_angle):
        rows = sorted(by_angle[angle],
                      key=lambda s: (s.trial, s.peak_pressure_pa, s.torque_nm))
        pressures = np.array([s.peak_pressure_pa for s in rows])
        torques = np.array([s.torque_nm for s in rows])
        knots.append(angle)
        p_mean.append(float(pressures.mean()))
        p_std.append(float(pressures.std()))
        t_mean.append(float(torques.mean()))
        t_std.append(float(torques.std()))

    return EmpiricalJointModel(
        knot_angles_deg=tuple(knots),
        mean_pressure_pa=tuple(p_mean), pressure_std_pa=tuple(p_std),
        mean_torque_nm=tuple(t_mean), torque_std_nm=tuple(t_std))


def evaluate_joint_model(model: EmpiricalJointModel,
                         angle_deg: float) -> JointEvaluation:
    """Interpolate between bracketing knots; clamp and flag outside them."""
    knots = np.asarray(model.knot_angles_deg)
    extrapolated = angle_deg < knots[0] or angle_deg > knots[-1]
    pressure = float(np.interp(angle_deg, knots, model.mean_pressure_pa))
    torque = float(np.interp(angle_deg, knots, model.mean_torque_nm))
    return JointEvaluation(pressure_pa=pressure, torque_nm=torque,
                           extrapolated=extrapolated)
