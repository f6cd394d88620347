"""Sliced and max-sliced 1-Wasserstein distances with statistical tooling."""

from ._core import (
    bracket_count,
    c_pd,
    concentration_bound,
    lambda_21,
    moment_p,
    msw1,
    plan_projections,
    sliced_w,
    sphere_covering_bound,
    two_sample_test,
    w1_1d,
    wp_1d,
)

__all__ = [
    "bracket_count",
    "c_pd",
    "concentration_bound",
    "lambda_21",
    "moment_p",
    "msw1",
    "plan_projections",
    "sliced_w",
    "sphere_covering_bound",
    "two_sample_test",
    "w1_1d",
    "wp_1d",
]
