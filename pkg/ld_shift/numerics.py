"""Shared quadrature and differencing helpers."""

import logging
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np
from scipy.integrate import quad
from scipy.special import roots_legendre

from .errors import QuadratureError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
T = TypeVar("T", float, np.ndarray)


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the Gauss-Legendre rule on [-1, 1]."""
    nodes, weights = roots_legendre(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_rule(edges: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Composite Gauss-Legendre rule on consecutive panels.

    ``edges`` may carry leading batch axes; the last axis holds the panel
    boundaries. Nodes and weights come back flattened along that axis.

    Returns:
        Tuple of (nodes, weights) with shape ``edges.shape[:-1] + (n_panels * order,)``
    """
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    a = edges[..., :-1, None]
    b = edges[..., 1:, None]
    half = 0.5 * (b - a)
    nodes = 0.5 * (a + b) + half * x
    weights = half * w
    shape = edges.shape[:-1] + (-1,)
    return nodes.reshape(shape), np.broadcast_to(weights, nodes.shape).reshape(shape)


def integrate(
    func: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float,
    abs_tol: float = 0.0,
    points: Optional[Sequence[float]] = None,
    limit: int = 500,
    what: str = "integral",
) -> Tuple[float, float]:
    """
    Adaptive Gauss-Kronrod quadrature with a hard tolerance check.

    A purely relative target keeps the subdivision pattern invariant under
    rescaling of the integrand, so results scale exactly with prefactors.

    Returns:
        Tuple of (value, absolute error estimate)
    """
    if a == b:
        return 0.0, 0.0
    inner = None
    if points is not None:
        lo, hi = min(a, b), max(a, b)
        inner = [p for p in points if lo < p < hi] or None
    out = quad(
        func,
        a,
        b,
        epsabs=abs_tol,
        epsrel=rel_tol,
        limit=limit,
        points=inner,
        full_output=1,
    )
    value, error = float(out[0]), float(out[1])
    if len(out) > 3:
        # quad flags roundoff limits even when the estimate is fine
        if error <= max(abs_tol, 100.0 * rel_tol * abs(value)):
            logger.debug(f"{what}: accepted after quad warning ({out[3].splitlines()[0]})")
        else:
            raise QuadratureError(
                f"{what} did not converge: estimate {value:.6e}, error {error:.2e}",
                estimate=value,
                error=error,
            )
    return value, error


def relative_difference(a: float, b: float) -> float:
    """Symmetric relative difference, zero when both values vanish."""
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return 0.0
    return abs(a - b) / scale


def central_difference(
    func: Callable[[float], T], x: float, h: float, richardson: bool = False
) -> T:
    """Central difference of ``func`` at ``x``, optionally Richardson-extrapolated."""
    coarse = (func(x + h) - func(x - h)) / (2.0 * h)
    if not richardson:
        return coarse
    half = 0.5 * h
    fine = (func(x + half) - func(x - half)) / (2.0 * half)
    return (4.0 * fine - coarse) / 3.0
