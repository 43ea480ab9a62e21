"""Spanning-tree counts of grid graphs.

Exact Kirchhoff determinants over big integers, the Laplacian eigenvalue
product formula with certified error bounds, balancing certificates for
rectangle comparisons, and exhaustive enumeration of induced grid shapes.
"""

from gridtrees._core import (
    __version__,
    balancing_certificate,
    boundary_incidences,
    bounds_report,
    c_func,
    c_sum,
    canonicalize,
    count_shapes,
    enumerate_shapes,
    explore,
    g_func,
    h_func,
    is_connected,
    lemma_checks,
    log_q_hyperbolic,
    matching_indices,
    min_kernel_average,
    parse_cells,
    path_spectrum,
    q_eval,
    q_hyperbolic,
    riemann_average,
    residual_gamma,
    serialize_cells,
    tau_bruteforce,
    tau_exact,
    tau_exact_cells,
    tau_log,
    tau_rounded,
)

__all__ = [
    "__version__",
    "balancing_certificate",
    "boundary_incidences",
    "bounds_report",
    "c_func",
    "c_sum",
    "canonicalize",
    "count_shapes",
    "enumerate_shapes",
    "explore",
    "g_func",
    "h_func",
    "is_connected",
    "lemma_checks",
    "log_q_hyperbolic",
    "matching_indices",
    "min_kernel_average",
    "parse_cells",
    "path_spectrum",
    "q_eval",
    "q_hyperbolic",
    "riemann_average",
    "residual_gamma",
    "serialize_cells",
    "tau_bruteforce",
    "tau_exact",
    "tau_exact_cells",
    "tau_log",
    "tau_rounded",
]
