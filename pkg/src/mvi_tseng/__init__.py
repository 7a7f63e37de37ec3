"""Inertial Tseng extragradient method for multi-valued variational inequalities."""

from .errors import (BudgetExhausted, DimensionMismatch, InfeasibleProblem, LineSearchStalled,
                     ParamsOutOfTheory)
from .feasibility import (FeasibilityReport, Method, box_set, halfspace_set, hyperplane_box_set,
                          procedure_a, project_box, project_hyperplane_box, repair)
from .linesearch import LineSearchResult, armijo_search
from .problem import (FeasibleSet, SelectionContext, SetValuedMap, SolverParams, Strategy,
                      Validation, VIProblem, as_point, constant_map, interval_map, membership)
from .residual import Residual, residual, scaling_bounds_check
from .solver import (IterationRecord, SolveReport, Status, alpha_bound, inertial_step, solve,
                     tseng_step, validate_params)

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "DimensionMismatch",
    "InfeasibleProblem",
    "LineSearchStalled",
    "ParamsOutOfTheory",
    "FeasibilityReport",
    "Method",
    "box_set",
    "halfspace_set",
    "hyperplane_box_set",
    "procedure_a",
    "project_box",
    "project_hyperplane_box",
    "repair",
    "LineSearchResult",
    "armijo_search",
    "FeasibleSet",
    "SelectionContext",
    "SetValuedMap",
    "SolverParams",
    "Strategy",
    "Validation",
    "VIProblem",
    "as_point",
    "constant_map",
    "interval_map",
    "membership",
    "Residual",
    "residual",
    "scaling_bounds_check",
    "IterationRecord",
    "SolveReport",
    "Status",
    "alpha_bound",
    "inertial_step",
    "solve",
    "tseng_step",
    "validate_params",
]
