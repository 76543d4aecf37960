"""Index-transform kernels: evaluation, bound verification and expansions."""
from ._core import (
    DomainError,
    Error,
    NonConvergenceError,
    PrecisionLossError,
    UnsupportedRoute,
    UsageError,
    bessel_j,
    binet_r,
    check_binet,
    check_kl,
    check_mehler_fock,
    check_olevskii,
    check_product,
    check_whittaker,
    eval_kernel,
    fit_lebedev_constants,
    gamma,
    k_itau,
    ln_gamma,
    run,
)

__all__ = [
    "DomainError",
    "Error",
    "NonConvergenceError",
    "PrecisionLossError",
    "UnsupportedRoute",
    "UsageError",
    "bessel_j",
    "binet_r",
    "check_binet",
    "check_kl",
    "check_mehler_fock",
    "check_olevskii",
    "check_product",
    "check_whittaker",
    "eval_kernel",
    "fit_lebedev_constants",
    "gamma",
    "k_itau",
    "ln_gamma",
    "run",
]
