"""Experiment drivers: single runs, refinement studies, CFL sweeps, cost runs.

Reference-free error measurement uses successive refinement: the run on the
doubled grid is restricted back by taking every other node (node positions
coincide exactly), and errors are discrete L1/L2 norms of the density over
the interior nodes.
"""
from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .config import (
    Boundary,
    Integrator,
    Interp,
    SchemeConfig,
    default_interp,
    parse_boundary,
    parse_integrator,
    parse_interp,
)
from .errors import ConfigError, NumericalError
from .grid import PhaseGrid, TimeControl
from .integrators import TimeStepper
from .lattice import lattice_cfl, lattice_dt
from .moments import GAS_CONSTANT
from .scenarios import Scenario, load_scenario, make_system


def scheme_label(integrator: Integrator, interp: Interp) -> str:
    suffix = {Interp.LINEAR: "Lin", Interp.WENO23: "W23", Interp.WENO35: "W35", Interp.NONE: ""}
    return f"{integrator.value}{suffix[interp]}"


@dataclass
class RunResult:
    """Final macroscopic profiles plus run metadata."""

    x: np.ndarray
    rho: np.ndarray
    u: np.ndarray
    T: np.ndarray
    E: np.ndarray
    meta: dict
    field: np.ndarray | None = None

    def rows(self):
        for i in range(self.x.size):
            yield (self.x[i], self.rho[i], self.u[i], self.T[i], self.E[i])


def run_case(
    scenario,
    *,
    integrator,
    eps: float,
    nx: int,
    interp=None,
    boundary=None,
    nv: int | None = None,
    vmax: float | None = None,
    cfl: float | None = None,
    t_final: float | None = None,
    threads: int = 1,
    weno_eps: float = 1e-6,
    keep_field: bool = False,
) -> RunResult:
    """March one configuration to its final time and report the moments."""
    scen = load_scenario(scenario)
    integrator = parse_integrator(integrator)
    interp = parse_interp(interp) if interp is not None else default_interp(integrator)
    boundary = parse_boundary(boundary) if boundary is not None else scen.boundary
    nv = int(nv) if nv is not None else scen.nv
    vmax = float(vmax) if vmax is not None else scen.vmax
    cfl_requested = float(cfl) if cfl is not None else scen.cfl
    t_final = float(t_final) if t_final is not None else scen.t_final

    grid = PhaseGrid(x0=scen.x0, x1=scen.x1, nx=int(nx), nv=nv, vmax=vmax)
    system = make_system(scen.model)
    scheme = SchemeConfig(
        integrator=integrator,
        interp=interp,
        boundary=boundary,
        eps=eps,
        cfl=cfl_requested,
        weno_eps=weno_eps,
        threads=threads,
    )
    if integrator.is_lattice:
        dt = lattice_dt(grid, integrator.lattice_stride)
        cfl_actual = lattice_cfl(grid, integrator.lattice_stride)
    else:
        dt = grid.dt_from_cfl(cfl_requested)
        cfl_actual = cfl_requested
    control = TimeControl(dt=dt, t_final=t_final)

    rho0, u0, T0 = scen.initial_moments(grid.x, system.dof)
    f0 = system.from_macro(rho0, u0, T0, grid)
    if boundary is Boundary.PERIODIC:
        f0[:, -1, :] = f0[:, 0, :]  # node nx is the same physical point as node 0

    stepper = TimeStepper(f0, grid, system, scheme)
    meta = {
        "scenario": scen.name,
        "model": scen.model,
        "scheme": scheme_label(integrator, interp),
        "integrator": integrator.value,
        "interp": interp.value,
        "boundary": boundary.value,
        "eps": eps,
        "nx": int(nx),
        "nv": nv,
        "vmax": vmax,
        "cfl_requested": cfl_requested,
        "cfl_actual": cfl_actual,
        "dt": dt,
        "t_final": t_final,
        "n_steps": control.n_steps,
        "shortened_final_step": control.has_short_step,
        "threads": threads,
        "weno_eps": weno_eps,
    }
    start = time.perf_counter()
    try:
        for dt_k in control.steps():
            stepper.step(dt_k)
    except NumericalError as err:
        err.partial_result = _partial_result(grid, system, stepper, meta)  # type: ignore[attr-defined]
        raise
    wall = time.perf_counter() - start

    mom = system.moments(stepper.f, grid)
    meta.update(
        {
            "wall_seconds": wall,
            "steps_taken": stepper.steps_taken,
            "predictor_steps": stepper.predictor_steps,
            "offlattice_steps": stepper.offlattice_steps,
        }
    )
    return RunResult(
        x=grid.x,
        rho=mom.rho,
        u=mom.u,
        T=mom.T,
        E=mom.E,
        meta=meta,
        field=stepper.f if keep_field else None,
    )


def _partial_result(grid, system, stepper, meta) -> RunResult:
    """Best-effort profile of the last committed state, without validation."""
    from .moments import velocity_moments

    f = stepper.f
    with np.errstate(divide="ignore", invalid="ignore"):
        rho, momentum, energy = velocity_moments(f[0], grid.v, grid.dv)
        u = momentum / rho
        if system.n_components == 2:
            pec2 = (grid.v[None, :] - u[:, None]) ** 2
            T = (grid.dv * (pec2 * f[0]).sum(-1) + grid.dv * f[1].sum(-1)) / (3.0 * rho)
            E = 0.5 * rho * u**2 + 1.5 * rho * T
        else:
            T = (2.0 * energy / rho - u**2) / GAS_CONSTANT
            E = energy
    failed_meta = dict(meta)
    failed_meta.update({"failed": True, "steps_taken": stepper.steps_taken, "t_reached": stepper.t})
    return RunResult(x=grid.x, rho=rho, u=u, T=T, E=E, meta=failed_meta)


# --------------------------------------------------------------------------
# error norms and grid restriction
# --------------------------------------------------------------------------
def restrict(fine: np.ndarray, factor: int = 2) -> np.ndarray:
    """Every factor-th node of a refined profile (node positions coincide)."""
    return fine[::factor]


def l1_norm(delta: np.ndarray, dx: float) -> float:
    """Discrete L1 over interior nodes."""
    return float(dx * np.abs(delta[1:-1]).sum())


def l2_norm(delta: np.ndarray, dx: float) -> float:
    """Discrete L2 over interior nodes."""
    return float(math.sqrt(dx * np.square(delta[1:-1]).sum()))


def _check_doubling(nx_list):
    nx_list = [int(n) for n in nx_list]
    if len(nx_list) < 2:
        raise ConfigError("need at least two grid resolutions")
    for a, b in zip(nx_list[:-1], nx_list[1:]):
        if b != 2 * a:
            raise ConfigError(f"grid list must double at each level, got {nx_list}")
    return nx_list


# --------------------------------------------------------------------------
# studies
# --------------------------------------------------------------------------
def convergence_study(
    scenario,
    *,
    integrator,
    eps_list,
    nx_list,
    interp=None,
    boundary=None,
    norm: str = "l1",
    **run_kwargs,
) -> list[dict]:
    """Successive-refinement errors and observed orders of the density.

    One row per (eps, coarse nx): the error between that run and the
    restricted next-finer run; `order` is the log2 ratio of consecutive
    errors (None on the first row of each eps).
    """
    nx_list = _check_doubling(nx_list)
    norm_fn = {"l1": l1_norm, "l2": l2_norm}[norm]
    rows = []
    for eps in eps_list:
        results = {
            nx: run_case(
                scenario,
                integrator=integrator,
                interp=interp,
                boundary=boundary,
                eps=eps,
                nx=nx,
                **run_kwargs,
            )
            for nx in nx_list
        }
        prev_err = None
        for nx, nx_fine in zip(nx_list[:-1], nx_list[1:]):
            coarse, fine = results[nx], results[nx_fine]
            err = norm_fn(coarse.rho - restrict(fine.rho), coarse.x[1] - coarse.x[0])
            order = math.log2(prev_err / err) if prev_err not in (None, 0.0) else None
            rows.append(
                {"eps": eps, "nx": nx, f"err_{norm.upper()}_rho".lower(): err, "order": order}
            )
            prev_err = err
    return rows


def admissible_cfl(cfl_requested: float, grid: PhaseGrid, t_final: float) -> tuple[float, int]:
    """Closest CFL to the request for which dt divides t_final exactly."""
    steps_exact = t_final * grid.vmax / (cfl_requested * grid.dx)
    n = max(1, int(round(steps_exact)))
    return t_final * grid.vmax / (n * grid.dx), n


def cfl_sweep(
    scenario,
    *,
    integrator,
    interp=None,
    eps: float,
    cfl_list,
    nx: int = 160,
    t_final: float | None = None,
    boundary=None,
    **run_kwargs,
) -> list[dict]:
    """L2 density error (nx vs 2*nx runs) over a grid of CFL numbers.

    Each requested CFL is adjusted to the nearest value whose time step
    divides the final time exactly (the published cfl_actual column), so
    every run finishes with uniform steps on both grids.
    """
    integrator = parse_integrator(integrator)
    if integrator.is_lattice:
        raise ConfigError("the CFL of a lattice scheme is fixed; sweep needs interpolation")
    scen = load_scenario(scenario)
    t_final = float(t_final) if t_final is not None else scen.t_final
    probe = PhaseGrid(scen.x0, scen.x1, int(nx), scen.nv, scen.vmax)
    rows = []
    for cfl_req in cfl_list:
        if not cfl_req > 0:
            raise ConfigError(f"CFL values must be positive, got {cfl_req}")
        cfl_act, _ = admissible_cfl(float(cfl_req), probe, t_final)
        coarse = run_case(
            scenario,
            integrator=integrator,
            interp=interp,
            boundary=boundary,
            eps=eps,
            nx=nx,
            cfl=cfl_act,
            t_final=t_final,
            **run_kwargs,
        )
        fine = run_case(
            scenario,
            integrator=integrator,
            interp=interp,
            boundary=boundary,
            eps=eps,
            nx=2 * nx,
            cfl=cfl_act,
            t_final=t_final,
            **run_kwargs,
        )
        err = l2_norm(coarse.rho - restrict(fine.rho), coarse.x[1] - coarse.x[0])
        rows.append({"cfl_requested": float(cfl_req), "cfl_actual": cfl_act, "err_l2_rho": err})
    return rows


DEFAULT_CFL_SWEEP = (0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 12.0, 16.0, 20.0)


def cost_study(
    scenario,
    *,
    schemes,
    eps: float,
    nx_list,
    boundary=None,
    **run_kwargs,
) -> list[dict]:
    """Wall time vs L1 density error for several schemes on a grid ladder.

    `schemes` is a list of (integrator, interp) pairs (interp None picks the
    scheme default).  Errors are measured against the same scheme run at
    twice the finest resolution, restricted to each grid.
    """
    nx_list = _check_doubling(nx_list)
    ref_nx = 2 * nx_list[-1]
    rows = []
    for integrator, interp in schemes:
        integrator = parse_integrator(integrator)
        interp = parse_interp(interp) if interp is not None else default_interp(integrator)
        reference = run_case(
            scenario,
            integrator=integrator,
            interp=interp,
            boundary=boundary,
            eps=eps,
            nx=ref_nx,
            **run_kwargs,
        )
        for nx in nx_list:
            result = run_case(
                scenario,
                integrator=integrator,
                interp=interp,
                boundary=boundary,
                eps=eps,
                nx=nx,
                **run_kwargs,
            )
            err = l1_norm(
                result.rho - restrict(reference.rho, ref_nx // nx),
                result.x[1] - result.x[0],
            )
            rows.append(
                {
                    "scheme": scheme_label(integrator, interp),
                    "nx": nx,
                    "cpu_seconds": result.meta["wall_seconds"],
                    "err_l1_rho": err,
                }
            )
    return rows
