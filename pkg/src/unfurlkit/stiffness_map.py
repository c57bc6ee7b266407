"""Directional bending stiffness of an N-subvine layout.

Each pressurized subvine stiffens the sheath in proportion to its second
moment of area about the bending axis.  For a subvine centroid at angle
phi on a circle of radius R, the centroidal-axis distance at bending-axis
angle theta is d = R * |sin(phi - theta)|, so the composite for N subvines
is

    I(theta) = sum_i [ I_x + A * R^2 * sin^2(phi_i - theta) ]

Stiffness is compared across subvine counts at constant total propulsion:
per-subvine pressure is rescaled so every configuration produces the same
unfurl force, and the profile is reported as

    S(theta) = P_N * I(theta) / S_ref

normalized by the friction-free single-subvine peak S_ref so the N = 1
curve tops out at 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FeasibilityError, InvalidInputError
from .mech_core import CrossSection, TransmissionParams, pressure_for_force

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SubvineLayout:
    """Angular positions of the subvine centroids on the placement circle."""

    angles_rad: tuple[float, ...]
    placement_radius_m: float

    def __post_init__(self):
        if len(self.angles_rad) < 1:
            raise InvalidInputError("layout needs at least one subvine",
                                    field="angles_rad")
        if self.placement_radius_m < 0:
            raise InvalidInputError(
                f"placement radius must be >= 0, got {self.placement_radius_m}",
                field="placement_radius_m")
        normalized = tuple(a % _TWO_PI for a in self.angles_rad)
        object.__setattr__(self, "angles_rad", normalized)

    @property
    def count(self) -> int:
        return len(self.angles_rad)


def axisymmetric_layout(n: int, radius_m: float,
                        offset_rad: float = 0.0) -> SubvineLayout:
    """Equally spaced centroids: phi_i = offset + 2*pi*i/n."""
    if n < 1:
        raise InvalidInputError(f"subvine count must be >= 1, got {n}", field="n")
    angles = tuple(offset_rad + _TWO_PI * i / n for i in range(n))
    return SubvineLayout(angles_rad=angles, placement_radius_m=radius_m)


def section_inertia_about_axis(layout: SubvineLayout, cs: CrossSection,
                               theta_rad: float) -> float:
    """Composite second moment about a centroidal axis at angle theta."""
    r2 = layout.placement_radius_m * layout.placement_radius_m
    total = 0.0
    for phi in layout.angles_rad:
        s = math.sin(phi - theta_rad)
        total += cs.inertia_m4 + cs.area_m2 * r2 * s * s
    return total


def constant_propulsion_pressure(n: int, target_force_n: float,
                                 cs: CrossSection, t: TransmissionParams,
                                 burst_pressure_pa: float | None = None) -> float:
    """Per-subvine pressure that makes N subvines produce the target force.

    Same inversion as the lift balance with the weight replaced by the
    target force.  When a burst limit is supplied, exceeding it raises
    FeasibilityError.
    """
    if target_force_n <= 0:
        raise InvalidInputError(
            f"target force must be positive, got {target_force_n}",
            field="target_force_n")
    p = pressure_for_force(target_force_n, n, cs, t)
    if burst_pressure_pa is not None and p > burst_pressure_pa:
        raise FeasibilityError(
            f"constant-propulsion pressure {p:.6g} Pa for n={n} exceeds "
            f"burst pressure {burst_pressure_pa:.6g} Pa",
            pressure_pa=p)
    return p


@dataclass(frozen=True)
class StiffnessProfile:
    """Normalized directional stiffness sampled over bending-axis angles.

    Samples cover [0, pi); the bending axis is a line, so the profile
    extends to all angles with period pi by construction.
    """

    theta_samples_rad: np.ndarray
    normalized_stiffness: np.ndarray
    n_subvines: int
    normalization_reference: str

    def __post_init__(self):
        theta = np.asarray(self.theta_samples_rad, dtype=float)
        s = np.asarray(self.normalized_stiffness, dtype=float)
        if theta.size < 2 or s.size != theta.size:
            raise InvalidInputError("profile needs >= 2 matching samples",
                                    field="theta_samples_rad")
        if np.any(np.diff(theta) <= 0):
            raise InvalidInputError("theta samples must be strictly increasing",
                                    field="theta_samples_rad")
        if np.any(s <= 0):
            raise InvalidInputError("stiffness values must be positive",
                                    field="normalized_stiffness")
        theta.flags.writeable = False
        s.flags.writeable = False
        object.__setattr__(self, "theta_samples_rad", theta)
        object.__setattr__(self, "normalized_stiffness", s)

    def value_at(self, theta_rad: float) -> float:
        """Nearest-sample lookup after reducing theta modulo pi.

        Queries at theta and theta + pi hit the same stored sample, which
        realizes the period-pi symmetry of a bending axis exactly.
        """
        reduced = math.fmod(theta_rad, math.pi)
        if reduced < 0:
            reduced += math.pi
        n = self.theta_samples_rad.size
        step = math.pi / n
        idx = int(round(reduced / step)) % n
        return float(self.normalized_stiffness[idx])


def normalized_stiffness_profile(n: int, cs: CrossSection, radius_m: float,
                                 t: TransmissionParams, target_force_n: float,
                                 samples: int = 360,
                                 include_friction: bool = True,
                                 offset_rad: float = 0.0,
                                 burst_pressure_pa: float | None = None,
                                 ) -> StiffnessProfile:
    """Directional stiffness of an axisymmetric N-subvine layout.

    ``include_friction`` controls whether the friction residual enters the
    constant-propulsion pressure scaling; the normalization reference is
    always the friction-free single-subvine peak.
    """
    if samples < 2:
        raise InvalidInputError(f"need >= 2 samples, got {samples}",
                                field="samples")
    layout = axisymmetric_layout(n, radius_m, offset_rad)
    t_eff = t if include_friction else TransmissionParams(
        ratio_c=t.ratio_c, friction_residual_n=0.0)
    t_free = TransmissionParams(ratio_c=t.ratio_c, friction_residual_n=0.0)

    p_n = constant_propulsion_pressure(n, target_force_n, cs, t_eff,
                                       burst_pressure_pa=burst_pressure_pa)
    p_ref = constant_propulsion_pressure(1, target_force_n, cs, t_free)
    ref = p_ref * (cs.inertia_m4 + cs.area_m2 * radius_m * radius_m)

    thetas = np.arange(samples) * (math.pi / samples)
    phis = np.asarray(layout.angles_rad, dtype=float)
    sin_sq = np.sin(phis[:, None] - thetas[None, :]) ** 2
    composite = (cs.inertia_m4 * n
                 + cs.area_m2 * radius_m * radius_m * sin_sq.sum(axis=0))
    values = p_n * composite / ref

    mode = "f-included" if include_friction else "f-zeroed"
    return StiffnessProfile(
        theta_samples_rad=thetas,
        normalized_stiffness=values,
        n_subvines=n,
        normalization_reference=f"n=1 friction-free peak ({mode} scaling)")


def stiffness_extrema(profile: StiffnessProfile,
                      ) -> tuple[float, float, float, float]:
    """(theta_min, S_min, theta_max, S_max) over the stored samples.

    Ties resolve to the smallest angle.
    """
    s = profile.normalized_stiffness
    if s.size == 0:
        raise InvalidInputError("empty profile", field="normalized_stiffness")
    i_min = int(np.argmin(s))
    i_max = int(np.argmax(s))
    theta = profile.theta_samples_rad
    return (float(theta[i_min]), float(s[i_min]),
            float(theta[i_max]), float(s[i_max]))


def default_placement_radius(sheath_diameter_m: float,
                             subvine_diameter_m: float) -> float:
    """Subvines tangent to the sheath wall: R = (D_sheath - D_subvine) / 2."""
    r = (sheath_diameter_m - subvine_diameter_m) / 2.0
    if r <= 0:
        raise InvalidInputError(
            "sheath diameter must exceed the subvine diameter "
            f"({sheath_diameter_m} <= {subvine_diameter_m})",
            field="sheath_diameter_m")
    return r
