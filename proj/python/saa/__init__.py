"""Relaxed sample-average-approximation toolkit (compiled core)."""

from ._saa import (
    covering_number_bound,
    delta_at,
    dist_hausdorff,
    dist_lower,
    draw_brownian,
    draw_uniform,
    dudley_constant,
    empirical_cost,
    empirical_equality,
    eps_beta,
    required_sample_size,
    rocket_initial_control,
    rocket_nominal_trajectory,
    rocket_validate,
    set_max_threads,
    solve,
    solve_counterexample,
)

__all__ = [
    "covering_number_bound",
    "delta_at",
    "dist_hausdorff",
    "dist_lower",
    "draw_brownian",
    "draw_uniform",
    "dudley_constant",
    "empirical_cost",
    "empirical_equality",
    "eps_beta",
    "required_sample_size",
    "rocket_initial_control",
    "rocket_nominal_trajectory",
    "rocket_validate",
    "set_max_threads",
    "solve",
    "solve_counterexample",
]
