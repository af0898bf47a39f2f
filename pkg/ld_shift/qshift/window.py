"""Window function chi(xi) regulating the emission amplitude."""

from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from ..numerics import ArrayLike, gauss_legendre
from ..trajectory import Trajectory

# quintic smoothstep on [0, 1]; C2 at both ends
ROLLOFF = Polynomial([0.0, 0.0, 0.0, 10.0, -15.0, 6.0])
ROLLOFF_MIRROR = Polynomial([1.0, 0.0, 0.0, -10.0, 15.0, -6.0])
# below this k*w the closed form loses digits to cancellation
CLOSED_FORM_MIN = 8.0
SMALL_ORDER = 48


def poly_fourier(poly: Polynomial, lam: ArrayLike) -> np.ndarray:
    """
    int_0^1 P(u) exp(i lam u) du for real lam.

    Large |lam| uses repeated integration by parts, which terminates for a
    polynomial; small |lam| uses a Gauss-Legendre rule exact to roundoff.
    """
    shape = np.shape(lam)
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    out = np.empty(lam.shape, dtype=complex)
    big = np.abs(lam) >= CLOSED_FORM_MIN
    if np.any(big):
        lb = lam[big]
        phase = np.exp(1j * lb)
        total = np.zeros(lb.shape, dtype=complex)
        deriv = poly
        for j in range(poly.degree() + 1):
            total += (-1) ** j * (deriv(1.0) * phase - deriv(0.0)) / (1j * lb) ** (j + 1)
            deriv = deriv.deriv()
        out[big] = total
    if np.any(~big):
        x, w = gauss_legendre(SMALL_ORDER)
        u = 0.5 * (x + 1.0)
        ls = lam[~big][..., None]
        out[~big] = 0.5 * (poly(u) * np.exp(1j * ls * u)) @ w
    return out.reshape(shape)


@dataclass(frozen=True)
class WindowFunction:
    """
    chi = 1 on the plateau [xi_a, xi_b], quintic roll-off of width ``rolloff``
    on each side, 0 beyond.
    """

    xi_a: float
    xi_b: float
    rolloff: float
    shape: str = "quintic"

    def __post_init__(self) -> None:
        if not self.xi_b > self.xi_a:
            raise ValueError("window plateau must have positive length")
        if self.rolloff <= 0.0:
            raise ValueError("window roll-off must be positive")

    @classmethod
    def for_trajectory(
        cls, traj: Trajectory, pad: Optional[float] = None, rolloff: Optional[float] = None
    ) -> "WindowFunction":
        """Plateau covering the force window's xi image for every direction."""
        cfg = traj.config
        pad = cfg.window_plateau_pad if pad is None else pad
        rolloff = cfg.window_rolloff if rolloff is None else rolloff
        xi_a = traj.t_start - abs(traj.z_lo) - pad
        xi_b = traj.t_end + abs(traj.z_hi) + pad
        return cls(xi_a=xi_a, xi_b=xi_b, rolloff=rolloff)

    @property
    def extent(self) -> Tuple[float, float]:
        """Interval outside of which chi vanishes."""
        return self.xi_a - self.rolloff, self.xi_b + self.rolloff

    def covers(self, lo: float, hi: float) -> bool:
        return self.xi_a <= lo and hi <= self.xi_b

    def __call__(self, xi: ArrayLike) -> ArrayLike:
        xi = np.asarray(xi, dtype=float)
        w = self.rolloff
        left = ROLLOFF(np.clip((xi - self.xi_a + w) / w, 0.0, 1.0))
        right = ROLLOFF(np.clip((self.xi_b + w - xi) / w, 0.0, 1.0))
        return np.minimum(left, right)

    def derivative(self, xi: ArrayLike) -> ArrayLike:
        xi = np.asarray(xi, dtype=float)
        w = self.rolloff
        d = ROLLOFF.deriv()
        left = np.where(xi < self.xi_a, d(np.clip((xi - self.xi_a + w) / w, 0.0, 1.0)) / w, 0.0)
        right = np.where(xi > self.xi_b, -d(np.clip((self.xi_b + w - xi) / w, 0.0, 1.0)) / w, 0.0)
        return left + right

    def transform(self, k: ArrayLike) -> np.ndarray:
        """int chi(xi) exp(i k xi) d xi."""
        k = np.asarray(k, dtype=float)
        w, a, b = self.rolloff, self.xi_a, self.xi_b
        length = b - a
        plateau = length * np.sinc(k * length / (2.0 * np.pi)) * np.exp(0.5j * k * (a + b))
        lam = k * w
        left = w * np.exp(1j * k * (a - w)) * poly_fourier(ROLLOFF, lam)
        right = w * np.exp(1j * k * b) * poly_fourier(ROLLOFF_MIRROR, lam)
        return plateau + left + right

    def rolloff_transforms(self, k: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """
        int chi'(xi) exp(i k xi) d xi over the left and the right roll-off.

        Returns:
            Tuple of (left, right); they tend to (1, -1) as k -> 0
        """
        k = np.asarray(k, dtype=float)
        w, a, b = self.rolloff, self.xi_a, self.xi_b
        lam = k * w
        left = np.exp(1j * k * (a - w)) * poly_fourier(ROLLOFF.deriv(), lam)
        right = np.exp(1j * k * b) * poly_fourier(ROLLOFF_MIRROR.deriv(), lam)
        return left, right

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
