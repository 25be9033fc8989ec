"""Exact-arithmetic analysis of lightlike submanifolds of metallic
semi-Riemannian spaces."""

__version__ = "0.1.0"

from .scalar import (  # noqa: F401
    MetallicParams,
    MetallicScalar,
    make_params,
    sigma,
    to_real_approx,
)
