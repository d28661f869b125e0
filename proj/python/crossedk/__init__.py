"""K-theory of crossed products A x| Z_n for finite-dimensional C*-algebras."""

from ._core import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    Action,
    Algebra,
    CheckFailure,
    InputError,
    action,
    builtin,
    builtin_names,
    image_algebra,
    k_groups,
    multimatrix,
    recurse_symbolic,
    run_cli,
    smith_normal_form,
    theta,
    theta_inverse,
    theta_residuals,
)

__all__ = [
    "DEFAULT_SEED",
    "DEFAULT_TOL",
    "Action",
    "Algebra",
    "CheckFailure",
    "InputError",
    "action",
    "builtin",
    "builtin_names",
    "image_algebra",
    "k_groups",
    "multimatrix",
    "recurse_symbolic",
    "run_cli",
    "smith_normal_form",
    "theta",
    "theta_inverse",
    "theta_residuals",
]
