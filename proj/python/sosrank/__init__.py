"""Exact SoS hierarchy certificates for symmetric binary problems.

Rationals cross the boundary as ``fractions.Fraction``; inputs may be ints,
Fractions or ``"p/q"`` strings. Structured reports are returned as the same
dicts the command-line tool writes as JSON.
"""

from ._core import (
    build_moment_matrix,
    check_symmetric_psd,
    decomposition_coeffs,
    g_closed_form,
    g_sum_form,
    lemma4_identity,
    objective_value,
    psd_exact,
    reduced_criterion,
    root_form_objective,
    run_cli,
    sos_rank,
    upper_bound_certificate,
    verify_theorem2,
    y_alpha,
    z_solution,
)

__version__ = "0.1.0"

__all__ = [
    "build_moment_matrix",
    "check_symmetric_psd",
    "decomposition_coeffs",
    "g_closed_form",
    "g_sum_form",
    "lemma4_identity",
    "objective_value",
    "psd_exact",
    "reduced_criterion",
    "root_form_objective",
    "run_cli",
    "sos_rank",
    "upper_bound_certificate",
    "verify_theorem2",
    "y_alpha",
    "z_solution",
]
