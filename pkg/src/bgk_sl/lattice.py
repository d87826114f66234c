"""Interpolation-free (lattice) transport.

When the time step satisfies dv*dt = stride*dx for an integer stride, every
characteristic foot x_i - v_j*(m*dt/stride) with integer m lands exactly on a
grid node: the foot of velocity index j is j*m nodes away.  Transport then
becomes an exact integer gather (no interpolation, no numerical diffusion),
at the price of tying the time step to the grids: the effective CFL number is
stride*nv.

stride = 1 serves the first-order and BDF lattice schemes; the lattice RK2
scheme uses stride = 3 so that its stage offsets dt/3 and 2*dt/3 are also
node-aligned.
"""
from __future__ import annotations

import numpy as np

from .boundaries import map_nodes
from .config import Boundary
from .errors import ConfigError
from .grid import PhaseGrid

_INT_TOL = 1e-9


def lattice_dt(grid: PhaseGrid, stride: int = 1) -> float:
    """The unique time step with dv*dt = stride*dx."""
    if stride < 1:
        raise ConfigError(f"lattice stride must be >= 1, got {stride}")
    return stride * grid.dx / grid.dv


def lattice_cfl(grid: PhaseGrid, stride: int = 1) -> float:
    """Effective CFL number of the lattice step: stride * nv."""
    return float(stride * grid.nv)


def node_shift(grid: PhaseGrid, tau: float) -> int | None:
    """Nodes per unit velocity index swept in time tau, or None if off-lattice."""
    r = tau * grid.dv / grid.dx
    r_int = round(r)
    if abs(r - r_int) <= _INT_TOL * max(1.0, abs(r)):
        return int(r_int)
    return None


def conforming_dt(grid: PhaseGrid, dt: float, stride: int = 1) -> bool:
    """True when all stage offsets (multiples of dt/stride) are node-aligned."""
    return node_shift(grid, dt / stride) is not None


class LatticeTransport:
    """Shift fields along characteristics by exact integer node gathers."""

    def __init__(self, grid: PhaseGrid, bc: Boundary):
        self.grid = grid
        self.bc = bc

    def shifted(self, field: np.ndarray, tau: float) -> np.ndarray:
        field = np.asarray(field)
        shift = node_shift(self.grid, tau)
        if shift is None:
            raise ConfigError(
                f"transport over tau={tau!r} is not node-aligned "
                f"(dv*tau/dx = {tau * self.grid.dv / self.grid.dx!r})"
            )
        if shift == 0:
            return field.copy()
        grid = self.grid
        i = np.arange(grid.n_space)
        p = i[:, None] - grid.jv[None, :] * shift
        src, flip = map_nodes(p, grid.nx, self.bc)
        jj = np.arange(grid.n_vel)[None, :]
        col = np.where(flip, grid.n_vel - 1 - jj, jj)
        return field[:, src, col]
