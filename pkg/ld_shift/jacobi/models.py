"""Data models for the linear-response module."""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Optional

import numpy as np

from ..numerics import relative_difference

# routes that must agree to route_rel_tol; the fd-dp route has its own budget
PRIMARY_ROUTES = (
    "dz_classical_closed",
    "dz_classical_green",
    "dz_oracle_linear_response",
    "dzq_reduced",
    "dzq_angular",
)
FD_ROUTE = "dzq_angular_fd"


@dataclass
class JacobiPair:
    """Solution of the linearized flow seeded with (dz, dP) = (0, 1) at time s."""
    s: float
    t: np.ndarray
    dz: np.ndarray
    dP: np.ndarray

    def __post_init__(self) -> None:
        if not (len(self.t) == len(self.dz) == len(self.dP)):
            raise ValueError("JacobiPair samples must be aligned")


@dataclass
class ShiftReport:
    """All position-shift routes with error estimates and pairwise differences."""

    dz_classical_closed: float
    dz_classical_green: float
    dz_oracle_linear_response: float
    dzq_reduced: float
    dzq_angular: float
    dzq_angular_fd: Optional[float] = None
    dP_green: Optional[float] = None
    dP_oracle: Optional[float] = None
    errors: Dict[str, float] = field(default_factory=dict)
    differences: Dict[str, Dict[str, float]] = field(default_factory=dict)
    route_rel_tol: float = 1e-5
    fd_route_rel_tol: float = 1e-4
    passed: bool = False

    def __post_init__(self) -> None:
        self.differences = self._pairwise()
        self.passed = self.max_relative_difference(PRIMARY_ROUTES) <= self.route_rel_tol
        if self.dzq_angular_fd is not None:
            fd_ok = all(
                d["rel"] <= self.fd_route_rel_tol
                for name, d in self.differences.items()
                if FD_ROUTE in name
            )
            self.passed = self.passed and fd_ok

    def values(self) -> Dict[str, float]:
        """Route name to value, fd-dp included when computed."""
        routes = {name: getattr(self, name) for name in PRIMARY_ROUTES}
        if self.dzq_angular_fd is not None:
            routes[FD_ROUTE] = self.dzq_angular_fd
        return routes

    def _pairwise(self) -> Dict[str, Dict[str, float]]:
        diffs = {}
        for (na, a), (nb, b) in combinations(self.values().items(), 2):
            diffs[f"{na}|{nb}"] = {"abs": abs(a - b), "rel": relative_difference(a, b)}
        return diffs

    def max_relative_difference(self, routes: Any = PRIMARY_ROUTES) -> float:
        """Largest pairwise relative difference among ``routes``."""
        rels = [
            d["rel"]
            for name, d in self.differences.items()
            if all(part in routes for part in name.split("|"))
        ]
        return max(rels, default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready representation with a stable key order."""
        return {
            **self.values(),
            "dP_green": self.dP_green,
            "dP_oracle": self.dP_oracle,
            "errors": dict(self.errors),
            "differences": self.differences,
            "max_rel_diff": self.max_relative_difference(),
            "route_rel_tol": self.route_rel_tol,
            "fd_route_rel_tol": self.fd_route_rel_tol,
            "passed": self.passed,
        }
