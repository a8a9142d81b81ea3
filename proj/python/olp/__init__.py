"""Laurent orthogonal polynomials built from partial sums of power series."""

import json

from ._core import (
    FamilySpec,
    OlpError,
    __version__,
    apply_L,
    build_by_recurrence,
    build_system,
    check_laurent_genfun,
    check_partial_sum_genfun,
    contour_L,
    exact_moments,
    gram_matrix,
    realize,
    recurrence_data,
    reciprocal,
    rn_by_contour,
    solve_finite_system,
    specialized_L,
)
from ._core import run_command as _run_command


def run(command, config=None):
    """Run a CLI subcommand in-process. Returns (report dict, exit code); errors raise OlpError."""
    text, code = _run_command(command, json.dumps(config or {}))
    return json.loads(text), code


__all__ = [
    "FamilySpec",
    "OlpError",
    "__version__",
    "apply_L",
    "build_by_recurrence",
    "build_system",
    "check_laurent_genfun",
    "check_partial_sum_genfun",
    "contour_L",
    "exact_moments",
    "gram_matrix",
    "realize",
    "recurrence_data",
    "reciprocal",
    "rn_by_contour",
    "run",
    "solve_finite_system",
    "specialized_L",
]
