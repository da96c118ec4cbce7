"""Bent helicoid laboratory: closed forms, Björling quadrature and the verification experiments."""

from ._bhlab import (  # noqa: F401
    NumericalError,
    UsageError,
    __version__,
    closed_form,
    conformal_factor,
    embeddedness_verdict,
    experiments,
    foliation_angle_metric,
    gauss_map_degree,
    mesh,
    numeric_position,
    pipeline,
    ruled_deviation_sup,
    run_config,
    strip_halfwidth,
    total_curvature,
)
