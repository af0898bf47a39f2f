"""Linearized flow and the classical position shift."""

from .general import ExternalForce, GeneralResponse, general_linear_response
from .linear import JacobiBasis, coeffs, flow, propagate, solve_pair, symplectic
from .models import JacobiPair, ShiftReport
from .shifts import (
    classical_shift_closed,
    classical_shift_green,
    momentum_shift,
    oracle_linear_response,
    position_shift,
)

__all__ = [
    "ExternalForce",
    "GeneralResponse",
    "JacobiBasis",
    "JacobiPair",
    "ShiftReport",
    "classical_shift_closed",
    "classical_shift_green",
    "coeffs",
    "flow",
    "general_linear_response",
    "momentum_shift",
    "oracle_linear_response",
    "position_shift",
    "propagate",
    "solve_pair",
    "symplectic",
]
