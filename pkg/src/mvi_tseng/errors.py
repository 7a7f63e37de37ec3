"""Exceptions raised by the solver and its building blocks."""


class DimensionMismatch(ValueError):
    """Two points (or a point and a problem) disagree on dimension."""


class InfeasibleProblem(RuntimeError):
    """The feasible set is empty: a zero subgradient was met at a point with g > 0."""


class BudgetExhausted(RuntimeError):
    """Procedure A used up its step budget before reaching the feasible set."""


class LineSearchStalled(RuntimeError):
    """The backtracking search passed ``max_m`` without accepting a step.

    The last probe is kept on the exception for post-mortem inspection.
    """

    def __init__(self, message, last_probe=None):
        super().__init__(message)
        self.last_probe = last_probe


class ParamsOutOfTheory(ValueError):
    """Inertia coefficient violates the convergence bound in strict mode."""
