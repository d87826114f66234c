"""Characteristic time integrators for the BGK relaxation equation.

Along the characteristic x(t) = x_i - v_j*(t^{n+1} - t), the equation reduces
to the stiff ODE df/dt = (M[f] - f)/eps.  Every scheme here treats the
relaxation implicitly yet solves it explicitly: the collision invariants make
the moments of the unknown stage equal the moments of its known transported
part, so the Maxwellian of the implicit stage is computable in advance and

    f = (g + tau * M[g]) / (1 + tau),        tau = a_ll * dt / eps,

which is L-stable and remains well-defined as eps -> 0.

Three families share this structure:

- one-step backward Euler (`euler_step`),
- stiffly-accurate DIRK methods (`dirk_step`) with the stage flux rewritten
  as K = (F - g)/(a_ll*dt) so that no 1/eps factor is ever formed,
- BDF multistep methods (`bdf_step`) whose history lives on feet 1, 2(, 3)
  characteristic lengths upstream; startup uses same-order DIRK predictors.

All steps are parameterized over a transport operator (interpolated or
lattice) and a kinetic system (plain 1V or the reduced 3V pair).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import Integrator, Interp, SchemeConfig
from .errors import ConfigError, DegenerateStateError, NumericalError
from .grid import PhaseGrid
from .lattice import LatticeTransport, conforming_dt, lattice_dt
from .moments import relaxation_solve
from .systems import KineticSystem
from .transport import InterpolatedTransport
from .weno import Interpolator


# --------------------------------------------------------------------------
# Butcher tableaus (all stiffly accurate with positive diagonal => L-stable)
# --------------------------------------------------------------------------
def _sdirk3_gamma() -> float:
    """Middle root of 6x^3 - 18x^2 + 9x - 1, the 3-stage SDIRK parameter."""
    roots = np.roots([6.0, -18.0, 9.0, -1.0])
    g = float(np.sort(roots.real[np.abs(roots.imag) < 1e-8])[1])
    for _ in range(3):  # Newton polish to full double precision
        p = ((6.0 * g - 18.0) * g + 9.0) * g - 1.0
        dp = (18.0 * g - 36.0) * g + 9.0
        g -= p / dp
    return g


RK2_ALPHA = 1.0 - math.sqrt(2.0) / 2.0
RK3_GAMMA = _sdirk3_gamma()
RK3_DELTA = 1.5 * RK3_GAMMA**2 - 5.0 * RK3_GAMMA + 1.25


@dataclass(frozen=True)
class Tableau:
    """Stiffly-accurate DIRK tableau; the weights are the last row of `a`."""

    a: tuple[tuple[float, ...], ...]
    c: tuple[float, ...]

    def __post_init__(self):
        nu = len(self.c)
        if len(self.a) != nu or any(len(row) != nu for row in self.a):
            raise ConfigError("tableau matrix shape does not match c")
        for l, row in enumerate(self.a):
            if any(row[k] != 0.0 for k in range(l + 1, nu)):
                raise ConfigError("tableau must be lower triangular")
            if row[l] <= 0.0:
                raise ConfigError("tableau needs a positive diagonal")
            if abs(sum(row) - self.c[l]) > 1e-13:
                raise ConfigError(f"row {l} of tableau is inconsistent with c")
        if abs(self.c[-1] - 1.0) > 1e-13:
            raise ConfigError("stiffly-accurate tableau must end at c = 1")

    @property
    def stages(self) -> int:
        return len(self.c)

    @property
    def b(self) -> tuple[float, ...]:
        return self.a[-1]


RK2_TABLEAU = Tableau(
    a=((RK2_ALPHA, 0.0), (1.0 - RK2_ALPHA, RK2_ALPHA)),
    c=(RK2_ALPHA, 1.0),
)

# First stage abscissa equals the diagonal so that every stage solves its
# relaxation over a_ll*dt at a foot c_l*dt upstream (consistent row sums).
RK3_TABLEAU = Tableau(
    a=(
        (RK3_GAMMA, 0.0, 0.0),
        ((1.0 - RK3_GAMMA) / 2.0, RK3_GAMMA, 0.0),
        (1.0 - RK3_DELTA - RK3_GAMMA, RK3_DELTA, RK3_GAMMA),
    ),
    c=(RK3_GAMMA, (1.0 + RK3_GAMMA) / 2.0, 1.0),
)

# A-stable 2-stage method whose abscissas are thirds: on a lattice with
# dv*dt = 3*dx all its stage offsets are node-aligned.
LATTICE_RK2_TABLEAU = Tableau(
    a=((1.0 / 3.0, 0.0), (3.0 / 4.0, 1.0 / 4.0)),
    c=(1.0 / 3.0, 1.0),
)

# BDF history weights (feet at 1, 2(, 3) characteristic lengths upstream)
# and the relaxation coefficient of the implicit current-time term.
BDF_WEIGHTS = {
    2: ((4.0 / 3.0, -1.0 / 3.0), 2.0 / 3.0),
    3: ((18.0 / 11.0, -9.0 / 11.0, 2.0 / 11.0), 6.0 / 11.0),
}


def stability_at_infinity(tab: Tableau) -> float:
    """R(inf) = 1 - b A^{-1} 1; zero for every tableau above (L-stability)."""
    a = np.array(tab.a)
    return float(1.0 - np.array(tab.b) @ np.linalg.solve(a, np.ones(tab.stages)))


# --------------------------------------------------------------------------
# Single steps
# --------------------------------------------------------------------------
@dataclass
class StepContext:
    """Everything a single step needs: grids, physics, transport, stiffness."""

    grid: PhaseGrid
    system: KineticSystem
    transport: object  # InterpolatedTransport | LatticeTransport
    eps: float

    def foot(self, field, tau):
        return self.transport.shifted(field, tau)

    def relax(self, g, coeff_dt):
        """Implicit relaxation of g over an effective time coeff_dt.

        With collisions disabled (eps = inf) this is the identity, and no
        moments are formed (pure transport works on any data).
        """
        if math.isinf(self.eps):
            return g
        mom = self.system.moments(g, self.grid)
        m_eq = self.system.equilibrium(mom, self.grid)
        return relaxation_solve(g, m_eq, coeff_dt / self.eps)


def euler_step(ctx: StepContext, f, dt):
    """First-order step: transport over dt, then implicit relaxation."""
    g = ctx.foot(f, dt)
    return ctx.relax(g, dt)


def dirk_step(ctx: StepContext, f, dt, tab: Tableau):
    """Stiffly-accurate DIRK step; the update is the last stage.

    Stage l gathers the transported start value plus earlier stage fluxes,
    each evaluated at this stage's foot (offset (c_l - c_k)*dt upstream of
    where flux k lives).  The stage flux is recovered without dividing by
    eps:  K_l = (F_l - g_l)/(a_ll*dt).
    """
    nu = tab.stages
    a, c = tab.a, tab.c
    flux_needed = [any(a[m][l] != 0.0 for m in range(l + 1, nu)) for l in range(nu)]
    flux = [None] * nu
    out = None
    for l in range(nu):
        g = ctx.foot(f, c[l] * dt)
        for k in range(l):
            a_lk = a[l][k]
            if a_lk != 0.0:
                g = g + (dt * a_lk) * ctx.foot(flux[k], (c[l] - c[k]) * dt)
        out = ctx.relax(g, a[l][l] * dt)
        if flux_needed[l]:
            flux[l] = (out - g) / (a[l][l] * dt)
    return out


def bdf_step(ctx: StepContext, states, dt, order: int):
    """BDF step from states = [f^n, f^{n-1}(, f^{n-2})] at spacing dt."""
    try:
        weights, relax_coeff = BDF_WEIGHTS[order]
    except KeyError:
        raise ConfigError(f"BDF order must be 2 or 3, got {order}") from None
    if len(states) < order:
        raise ConfigError(f"BDF{order} needs {order} history states, got {len(states)}")
    g = weights[0] * ctx.foot(states[0], dt)
    for k in range(1, order):
        g = g + weights[k] * ctx.foot(states[k], (k + 1) * dt)
    return ctx.relax(g, relax_coeff * dt)


def bdf_startup(ctx: StepContext, f0, dt, order: int):
    """Take order-1 same-order DIRK predictor steps; newest state first."""
    tab = RK2_TABLEAU if order == 2 else RK3_TABLEAU
    states = [np.asarray(f0, dtype=float)]
    for _ in range(order - 1):
        states.insert(0, dirk_step(ctx, states[0], dt, tab))
    return states


# --------------------------------------------------------------------------
# Time marching with history / lattice bookkeeping
# --------------------------------------------------------------------------
_DIRK_TABLEAUS = {
    Integrator.RK2: RK2_TABLEAU,
    Integrator.RK3: RK3_TABLEAU,
    Integrator.LATTICE_RK2: LATTICE_RK2_TABLEAU,
}

_BDF_ORDER = {
    Integrator.BDF2: 2,
    Integrator.BDF3: 3,
    Integrator.LATTICE_BDF2: 2,
    Integrator.LATTICE_BDF3: 3,
}

# Interpolation used when a lattice scheme must take an off-lattice step
# (shortened final step) or start a BDF history: order-matched DIRK with a
# high-order interpolation.
_OFFLATTICE_INTERP = {1: Interp.LINEAR, 2: Interp.WENO23, 3: Interp.WENO35}


class TimeStepper:
    """Advance a distribution field one step at a time.

    Owns the running field, the BDF history (invalidated whenever the step
    size changes, since the multistep feet assume equal spacing) and, for
    lattice schemes, an interpolated fallback used for any step that is not
    node-aligned.  Counters expose how many predictor / off-lattice steps
    were taken.
    """

    def __init__(self, field0, grid: PhaseGrid, system: KineticSystem, scheme: SchemeConfig):
        self.grid = grid
        self.system = system
        self.scheme = scheme
        self.f = system.check_field(np.array(field0, dtype=float, copy=True), grid)
        if not np.all(np.isfinite(self.f)):
            raise NumericalError("initial field contains non-finite values")

        integrator = scheme.integrator
        if integrator.is_lattice:
            transport = LatticeTransport(grid, scheme.boundary)
            self.dt_lattice = lattice_dt(grid, integrator.lattice_stride)
        else:
            interpolator = Interpolator(scheme.interp, scheme.weno_eps)
            transport = InterpolatedTransport(
                grid, interpolator, scheme.boundary, scheme.threads
            )
            self.dt_lattice = None
        self.ctx = StepContext(grid=grid, system=system, transport=transport, eps=scheme.eps)

        self.t = 0.0
        self.steps_taken = 0
        self.predictor_steps = 0
        self.offlattice_steps = 0
        self._history: list[np.ndarray] = []
        self._history_dt: float | None = None
        self._fallback_ctx: StepContext | None = None

    # -- public ------------------------------------------------------------
    def step(self, dt: float) -> None:
        if not (dt > 0.0):
            raise ConfigError(f"step size must be positive, got {dt}")
        integrator = self.scheme.integrator
        try:
            if integrator.is_lattice and not conforming_dt(
                self.grid, dt, integrator.lattice_stride
            ):
                f_new = self._offlattice_step(dt)
            elif integrator in _BDF_ORDER:
                f_new = self._bdf_step(dt)
            elif integrator in _DIRK_TABLEAUS:
                f_new = dirk_step(self.ctx, self.f, dt, _DIRK_TABLEAUS[integrator])
            else:
                f_new = euler_step(self.ctx, self.f, dt)
        except DegenerateStateError as err:
            raise DegenerateStateError(
                f"{err} (while taking step {self.steps_taken + 1} from t={self.t:.8g})",
                node=err.node,
            ) from err
        if not np.all(np.isfinite(f_new)):
            raise NumericalError(
                f"non-finite distribution values after step {self.steps_taken + 1} "
                f"(t={self.t + dt:.8g})"
            )
        if integrator in _BDF_ORDER:
            self._push_history(dt)
        self.f = f_new
        self.t += dt
        self.steps_taken += 1

    # -- internals -----------------------------------------------------------
    def _bdf_step(self, dt):
        order = _BDF_ORDER[self.scheme.integrator]
        history_ok = self._history_dt == dt and len(self._history) >= order - 1
        if not history_ok:
            ctx, tab = self._predictor(order)
            self.predictor_steps += 1
            return dirk_step(ctx, self.f, dt, tab)
        return bdf_step(self.ctx, [self.f] + self._history, dt, order)

    def _predictor(self, order):
        """Same-order DIRK startup; lattice schemes borrow interpolation."""
        tab = RK2_TABLEAU if order == 2 else RK3_TABLEAU
        if self.scheme.integrator.is_lattice:
            return self._fallback(), tab
        return self.ctx, tab

    def _offlattice_step(self, dt):
        """Order-matched interpolated step for a non-node-aligned dt."""
        self.offlattice_steps += 1
        self._history = []
        self._history_dt = None
        ctx = self._fallback()
        order = self.scheme.integrator.order
        if order == 1:
            return euler_step(ctx, self.f, dt)
        return dirk_step(ctx, self.f, dt, RK2_TABLEAU if order == 2 else RK3_TABLEAU)

    def _fallback(self) -> StepContext:
        if self._fallback_ctx is None:
            kind = _OFFLATTICE_INTERP[self.scheme.integrator.order]
            transport = InterpolatedTransport(
                self.grid,
                Interpolator(kind, self.scheme.weno_eps),
                self.scheme.boundary,
                self.scheme.threads,
            )
            self._fallback_ctx = StepContext(
                grid=self.grid, system=self.system, transport=transport, eps=self.scheme.eps
            )
        return self._fallback_ctx

    def _push_history(self, dt):
        order = _BDF_ORDER[self.scheme.integrator]
        if self._history_dt == dt:
            self._history = [self.f] + self._history[: order - 2]
        else:
            self._history = [self.f]
        self._history_dt = dt
