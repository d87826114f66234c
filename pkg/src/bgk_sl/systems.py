"""Kinetic-system abstraction.

A system defines how macroscopic moments are extracted from the distribution
components and how the equilibrium (Maxwellian) components are rebuilt from
them.  Distribution fields are arrays of shape (n_components, nx+1, 2*nv+1).

`Monatomic1V` is the plain 1D-velocity BGK gas (fluid limit gamma = 3).
The reduced 3D-velocity system lives in `bgk_sl.chu`.
"""
from __future__ import annotations

import numpy as np

from .grid import PhaseGrid
from .moments import (
    GAS_CONSTANT,
    Moments,
    maxwellian,
    validate_positive,
    velocity_moments,
)


class KineticSystem:
    """Interface: subclasses set n_components/gamma and implement the hooks."""

    n_components: int
    gamma: float
    name: str

    def __init__(self, R: float = GAS_CONSTANT):
        self.R = R

    def moments(self, field: np.ndarray, grid: PhaseGrid) -> Moments:
        raise NotImplementedError

    def equilibrium(self, mom: Moments, grid: PhaseGrid) -> np.ndarray:
        raise NotImplementedError

    def from_macro(self, rho, u, T, grid: PhaseGrid) -> np.ndarray:
        """Equilibrium field with the given macroscopic profiles at the nodes."""
        rho = np.broadcast_to(np.asarray(rho, dtype=float), (grid.n_space,))
        u = np.broadcast_to(np.asarray(u, dtype=float), (grid.n_space,))
        T = np.broadcast_to(np.asarray(T, dtype=float), (grid.n_space,))
        validate_positive(rho, T)
        E = 0.5 * rho * u**2 + 0.5 * self.dof * rho * self.R * T
        mom = Moments(rho=rho, u=u, T=T, E=E)
        return self.equilibrium(mom, grid)

    def check_field(self, field: np.ndarray, grid: PhaseGrid) -> np.ndarray:
        field = np.asarray(field, dtype=float)
        expected = (self.n_components, grid.n_space, grid.n_vel)
        if field.shape != expected:
            raise ValueError(f"field shape {field.shape} != expected {expected}")
        return field

    @property
    def dof(self) -> int:
        """Velocity-space degrees of freedom N in E = rho*u^2/2 + (N/2) rho R T."""
        raise NotImplementedError


class Monatomic1V(KineticSystem):
    """One scalar distribution over a 1D velocity grid; E = rho u^2/2 + rho R T/2."""

    n_components = 1
    gamma = 3.0
    name = "1v"

    @property
    def dof(self) -> int:
        return 1

    def moments(self, field: np.ndarray, grid: PhaseGrid) -> Moments:
        field = self.check_field(field, grid)
        rho, mom, energy = velocity_moments(field[0], grid.v, grid.dv)
        with np.errstate(divide="ignore", invalid="ignore"):
            u = mom / rho
            T = (2.0 * energy / rho - u**2) / self.R
        validate_positive(rho, T)
        return Moments(rho=rho, u=u, T=T, E=energy)

    def equilibrium(self, mom: Moments, grid: PhaseGrid) -> np.ndarray:
        m = maxwellian(
            mom.rho[:, None], mom.u[:, None], mom.T[:, None], grid.v[None, :], self.R
        )
        return m[None, :, :]
