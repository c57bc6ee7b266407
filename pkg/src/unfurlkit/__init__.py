"""Mechanics, calibration, and design-search toolkit for unfurling-sheath
donning mechanisms."""

__version__ = "0.1.0"

from .mech_core import (CrossSection, LoadSpec, SheathSpec, SubvineSpec,
                        TransmissionParams, UnfurlForce,
                        cross_section_properties, parallel_axis,
                        required_pressure, subvine_drive_force,
                        torque_balance_residual, total_unfurl_force,
                        unfurl_force_single)
from .stiffness_map import (StiffnessProfile, SubvineLayout,
                            axisymmetric_layout, constant_propulsion_pressure,
                            default_placement_radius,
                            normalized_stiffness_profile,
                            section_inertia_about_axis, stiffness_extrema)
from .calibration import (EmpiricalJointModel, FitResult, ForcePressureSample,
                          JointEvaluation, JointTrialSample,
                          evaluate_joint_model, fit_force_pressure,
                          fit_joint_model)
from .deploy_sim import (DeploymentTrace, LimbModel, LimbPath, LimbSegment,
                         LimitingFactor, SpoolState, build_limb_path,
                         simulate_deployment, spool_kinematics,
                         torque_capacity_to_tip_load)
from .design_search import (DesignCandidate, DesignSpace, RankedCandidate,
                            ScoreWeights, enumerate_candidates, metric_bounds,
                            score_candidate, search)

__all__ = [
    "__version__",
    "CrossSection", "LoadSpec", "SheathSpec", "SubvineSpec",
    "TransmissionParams", "UnfurlForce", "cross_section_properties",
    "parallel_axis", "required_pressure", "subvine_drive_force",
    "torque_balance_residual", "total_unfurl_force", "unfurl_force_single",
    "StiffnessProfile", "SubvineLayout", "axisymmetric_layout",
    "constant_propulsion_pressure", "default_placement_radius",
    "normalized_stiffness_profile", "section_inertia_about_axis",
    "stiffness_extrema",
    "EmpiricalJointModel", "FitResult", "ForcePressureSample",
    "JointEvaluation", "JointTrialSample", "evaluate_joint_model",
    "fit_force_pressure", "fit_joint_model",
    "DeploymentTrace", "LimbModel", "LimbPath", "LimbSegment",
    "LimitingFactor", "SpoolState", "build_limb_path", "simulate_deployment",
    "spool_kinematics", "torque_capacity_to_tip_load",
    "DesignCandidate", "DesignSpace", "RankedCandidate", "ScoreWeights",
    "enumerate_candidates", "metric_bounds", "score_candidate", "search",
]
