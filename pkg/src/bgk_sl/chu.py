"""Chu reduction: 3D velocity space collapsed to a pair of 1D distributions.

For slab-symmetric flows f(t, x, v, w) with v the transported direction and
w the two transverse velocities, the pair

    g1(t, x, v) = integral of f over w,
    g2(t, x, v) = integral of |w|^2 f over w,

closes the BGK dynamics exactly: both components are transported along the
same 1D characteristics and relax towards the reduced equilibria
(M1, 2 R T M1), where M1 is the 1D Maxwellian of (rho, u, T).

Moments:  rho = dv*sum g1,  rho u = dv*sum v g1,
          3 rho R T = dv*sum (v - u)^2 g1 + dv*sum g2,
          E = rho u^2/2 + (3/2) rho R T       (fluid limit gamma = 5/3).
"""
from __future__ import annotations

import numpy as np

from .grid import PhaseGrid
from .moments import Moments, maxwellian, validate_positive
from .systems import KineticSystem


class ChuReduced3V(KineticSystem):
    """Reduced two-component system for 1D space x 3D velocity slab flows."""

    n_components = 2
    gamma = 5.0 / 3.0
    name = "chu"

    @property
    def dof(self) -> int:
        return 3

    def moments(self, field: np.ndarray, grid: PhaseGrid) -> Moments:
        field = self.check_field(field, grid)
        g1, g2 = field[0], field[1]
        dv, v = grid.dv, grid.v
        rho = dv * g1.sum(axis=-1)
        mom = dv * (g1 * v).sum(axis=-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            u = mom / rho
            # Peculiar velocity is measured against the local u of each node.
            pec2 = (v[None, :] - u[:, None]) ** 2
            trT = dv * (pec2 * g1).sum(axis=-1) + dv * g2.sum(axis=-1)
            T = trT / (3.0 * rho * self.R)
        validate_positive(rho, T)
        E = 0.5 * rho * u**2 + 1.5 * rho * self.R * T
        return Moments(rho=rho, u=u, T=T, E=E)

    def equilibrium(self, mom: Moments, grid: PhaseGrid) -> np.ndarray:
        m1 = maxwellian(
            mom.rho[:, None], mom.u[:, None], mom.T[:, None], grid.v[None, :], self.R
        )
        m2 = 2.0 * self.R * mom.T[:, None] * m1
        return np.stack([m1, m2])
