"""Velocity moments, Maxwellian equilibria and the implicit relaxation solve.

Discrete moments use the midpoint rule on the uniform velocity grid:
    rho = dv * sum_j f_j,   rho*u = dv * sum_j v_j f_j,
    energy = dv * sum_j (v_j^2 / 2) f_j.
The midpoint rule is spectrally accurate for velocity profiles that decay
within [-vmax, vmax], so Maxwellian moments round-trip to machine precision
on an adequately resolved grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError

GAS_CONSTANT = 1.0  # R in T = p/(rho R); all bundled scenarios use R = 1


@dataclass(frozen=True)
class Moments:
    """Macroscopic fields on the space nodes (all arrays share one shape)."""

    rho: np.ndarray
    u: np.ndarray
    T: np.ndarray
    E: np.ndarray

    @property
    def momentum(self) -> np.ndarray:
        return self.rho * self.u

    def pressure(self, R: float = GAS_CONSTANT) -> np.ndarray:
        return self.rho * R * self.T


def validate_positive(rho: np.ndarray, T: np.ndarray) -> None:
    """Abort on non-positive density or temperature (no clamping)."""
    bad = ~((rho > 0.0) & (T > 0.0))  # catches NaN too
    if np.any(bad):
        node = int(np.argmax(bad))
        raise DegenerateStateError(
            f"non-positive density or temperature at space node {node}: "
            f"rho={float(np.ravel(rho)[node]):.17g}, T={float(np.ravel(T)[node]):.17g}",
            node=node,
        )


def maxwellian(rho, u, T, v, R: float = GAS_CONSTANT) -> np.ndarray:
    """Pointwise 1D Maxwellian rho/sqrt(2 pi R T) * exp(-(v-u)^2/(2 R T)).

    rho, u, T broadcast against v; pass shapes (..., 1) and (nv,) to build
    rows over a velocity grid.
    """
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    T = np.asarray(T, dtype=float)
    theta = R * T
    return rho / np.sqrt(2.0 * np.pi * theta) * np.exp(-((v - u) ** 2) / (2.0 * theta))


def velocity_moments(f, v, dv) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Midpoint-rule sums (rho, momentum, energy) over the trailing velocity axis."""
    f = np.asarray(f)
    rho = dv * f.sum(axis=-1)
    mom = dv * (f * v).sum(axis=-1)
    energy = 0.5 * dv * (f * v * v).sum(axis=-1)
    return rho, mom, energy


def relaxation_solve(f, m_eq, tau):
    """Exact solution of the implicit relaxation step: (f + tau*M)/(1 + tau).

    tau = a*dt/eps >= 0.  Limits: tau=0 returns f unchanged (bitwise);
    tau=inf returns the equilibrium M (fluid limit). L-stable for any tau.
    """
    if np.isscalar(tau) or np.ndim(tau) == 0:
        if math.isinf(tau):
            return np.array(m_eq, dtype=float, copy=True)
        return (f + tau * m_eq) / (1.0 + tau)
    tau = np.asarray(tau, dtype=float)
    inf_mask = np.isinf(tau)
    if np.any(inf_mask):
        finite_tau = np.where(inf_mask, 0.0, tau)
        out = (f + finite_tau * m_eq) / (1.0 + finite_tau)
        return np.where(inf_mask, m_eq, out)
    return (f + tau * m_eq) / (1.0 + tau)
