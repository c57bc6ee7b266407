"""Constrained grid search over subvine count and diameters.

Candidates are the Cartesian product of the discrete design space
(subvine count x subvine diameter x sheath diameter), screened by hard
constraints:

* chord packing: adjacent subvines on the placement circle must not
  overlap, 2*R*sin(pi/N) >= D for N >= 2;
* positive effective bore: D_sheath - 2*D > 0, the largest body the
  sheath can still pass over;
* burst: the constant-propulsion pressure stays within the material limit;
* jam risk: cross-section occupancy N*D^2/D_sheath^2 within a threshold.
  The 0.15 default separates the observed jam regime (three 32 mm
  subvines in a 120 mm sheath, occupancy 0.213) from the workable one
  (the same subvines in a 170 mm sheath, occupancy 0.106); it is a
  configurable heuristic, not a physical constant.

Scoring favors low required pressure, low bending stiffness about the
most compliant axis, and a large bore, each min-max normalized over the
feasible set of the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInputError
from .mech_core import TransmissionParams, cross_section_properties, pressure_for_force
from .stiffness_map import normalized_stiffness_profile, stiffness_extrema

DEFAULT_JAM_THRESHOLD = 0.15


@dataclass(frozen=True)
class DesignSpace:
    """Discrete search space plus the shared operating targets."""

    n_range: tuple[int, int]
    subvine_diameters_m: tuple[float, ...]
    sheath_diameters_m: tuple[float, ...]
    burst_pressure_pa: float
    target_force_n: float
    transmission: TransmissionParams

    def __post_init__(self):
        lo, hi = self.n_range
        if lo < 1 or hi < lo:
            raise InvalidInputError(
                f"n_range must satisfy 1 <= lo <= hi, got {self.n_range}",
                field="n_range")
        if not self.subvine_diameters_m or not self.sheath_diameters_m:
            raise InvalidInputError("diameter lists must be nonempty",
                                    field="subvine_diameters_m")
        if any(d <= 0 for d in self.subvine_diameters_m) or \
                any(d <= 0 for d in self.sheath_diameters_m):
            raise InvalidInputError("diameters must be positive",
                                    field="subvine_diameters_m")
        if self.burst_pressure_pa <= 0 or self.target_force_n <= 0:
            raise InvalidInputError(
                "burst pressure and target force must be positive",
                field="burst_pressure_pa")


@dataclass(frozen=True)
class DesignCandidate:
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
    reasons: tuple[str, ...]


@dataclass(frozen=True)
class ScoreWeights:
    pressure: float = 1.0
    stiffness: float = 1.0
    bore: float = 1.0

    def __post_init__(self):
        if self.pressure < 0 or self.stiffness < 0 or self.bore < 0:
            raise InvalidInputError("weights must be >= 0", field="weights")
        if self.pressure == 0 and self.stiffness == 0 and self.bore == 0:
            raise InvalidInputError("at least one weight must be positive",
                                    field="weights")


def enumerate_candidates(space: DesignSpace,
                         jam_threshold: float = DEFAULT_JAM_THRESHOLD,
                         stiffness_samples: int = 360,
                         ) -> list[DesignCandidate]:
    """Evaluate every combination; infeasible ones keep their reason list.

    Iteration order (N, then subvine diameter, then sheath diameter, each
    ascending) is the canonical candidate order.
    """
    if jam_threshold <= 0:
        raise InvalidInputError(
            f"jam threshold must be positive, got {jam_threshold}",
            field="jam_threshold")
    lo, hi = space.n_range
    out = []
    for n in range(lo, hi + 1):
        for d in sorted(space.subvine_diameters_m):
            cs = cross_section_properties(d)
            for d_sheath in sorted(space.sheath_diameters_m):
                radius = (d_sheath - d) / 2.0
                pressure = pressure_for_force(space.target_force_n, n, cs,
                                              space.transmission)
                bore = d_sheath - 2.0 * d
                occupancy = n * d * d / (d_sheath * d_sheath)

                if radius > 0:
                    profile = normalized_stiffness_profile(
                        n, cs, radius, space.transmission,
                        space.target_force_n, samples=stiffness_samples)
                    _, s_min, _, s_max = stiffness_extrema(profile)
                    s_mean = float(profile.normalized_stiffness.mean())
                else:
                    s_min = s_max = s_mean = float("nan")

                reasons = []
                if n >= 2 and (radius <= 0
                               or 2.0 * radius * math.sin(math.pi / n) < d):
                    reasons.append("packing")
                if bore <= 0:
                    reasons.append("bore")
                if pressure > space.burst_pressure_pa:
                    reasons.append("burst")
                if occupancy > jam_threshold:
                    reasons.append("jam-risk")

                out.append(DesignCandidate(
                    n=n, subvine_diameter_m=d, sheath_diameter_m=d_sheath,
                    required_pressure_pa=pressure,
                    min_normalized_stiffness=s_min,
                    max_normalized_stiffness=s_max,
                    mean_normalized_stiffness=s_mean,
                    effective_bore_m=bore, occupancy_ratio=occupancy,
                    feasible=not reasons, reasons=tuple(reasons)))
    return out


@dataclass(frozen=True)
class MetricBounds:
    pressure: tuple[float, float]
    stiffness: tuple[float, float]
    bore: tuple[float, float]


def metric_bounds(candidates: list[DesignCandidate]) -> MetricBounds:
    """Min-max ranges of the scored metrics over the feasible candidates."""
    feas = [c for c in candidates if c.feasible]
    if not feas:
        raise InvalidInputError("no feasible candidates to normalize over",
                                field="candidates")
    pressures = [c.required_pressure_pa for c in feas]
    stiff = [c.min_normalized_stiffness for c in feas]
    bores = [c.effective_bore_m for c in feas]
    return MetricBounds(pressure=(min(pressures), max(pressures)),
                        stiffness=(min(stiff), max(stiff)),
                        bore=(min(bores), max(bores)))


def _norm_lower_better(x: float, bounds: tuple[float, float]) -> float:
    lo, hi = bounds
    if hi == lo:
        return 1.0
    return (hi - x) / (hi - lo)


def _norm_higher_better(x: float, bounds: tuple[float, float]) -> float:
    lo, hi = bounds
    if hi == lo:
        return 1.0
    return (x - lo) / (hi - lo)


def score_candidate(candidate: DesignCandidate, weights: ScoreWeights,
                    bounds: MetricBounds) -> float:
    """Weighted sum of normalized metrics; lower pressure, lower
    minimum-axis stiffness, and larger bore score higher."""
    return (weights.pressure
            * _norm_lower_better(candidate.required_pressure_pa, bounds.pressure)
            + weights.stiffness
            * _norm_lower_better(candidate.min_normalized_stiffness,
                                 bounds.stiffness)
            + weights.bore
            * _norm_higher_better(candidate.effective_bore_m, bounds.bore))


@dataclass(frozen=True)
class RankedCandidate:
    candidate: DesignCandidate
    score: float


def search(space: DesignSpace, weights: ScoreWeights,
           jam_threshold: float = DEFAULT_JAM_THRESHOLD,
           stiffness_samples: int = 360) -> list[RankedCandidate]:
    """Exhaustive search: feasible candidates by descending score.

    Ties break by (N, subvine diameter, sheath diameter) ascending.
    An empty feasible set yields an empty list.
    """
    candidates = enumerate_candidates(space, jam_threshold=jam_threshold,
                                      stiffness_samples=stiffness_samples)
    feasible = [c for c in candidates if c.feasible]
    if not feasible:
        return []
    bounds = metric_bounds(candidates)
    ranked = [RankedCandidate(c, score_candidate(c, weights, bounds))
              for c in feasible]
    ranked.sort(key=lambda rc: (-rc.score, rc.candidate.n,
                                rc.candidate.subvine_diameter_m,
                                rc.candidate.sheath_diameter_m))
    return ranked
