"""Outage analysis of full-duplex MIMO amplify-and-forward relays."""

from fractions import Fraction

from . import _fdrelay
from ._fdrelay import (
    ConvergenceError,
    DimensionError,
    DomainError,
    Error,
    ResourceError,
    SystemConfig,
    UnsupportedConfigError,
    op_bounds,
    outage_asymptotic,
    outage_exact,
    run_cli,
    sample_channels,
    schemes,
    simulate,
    wishart_maxeig_cdf,
    zf_precoder,
)

__all__ = [
    "ConvergenceError",
    "DimensionError",
    "DomainError",
    "Error",
    "ResourceError",
    "SystemConfig",
    "UnsupportedConfigError",
    "diversity_order",
    "op_bounds",
    "optimal_alpha",
    "outage_asymptotic",
    "outage_exact",
    "run_cli",
    "sample_channels",
    "schemes",
    "simulate",
    "wishart_maxeig_cdf",
    "zf_precoder",
]


def optimal_alpha(scheme, config):
    return Fraction(*_fdrelay.optimal_alpha(scheme, config))


def diversity_order(scheme, config):
    return Fraction(*_fdrelay.diversity_order(scheme, config))
