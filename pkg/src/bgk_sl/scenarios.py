"""Bundled test scenarios and the custom-scenario JSON loader.

A scenario packages the initial macroscopic profiles, the domain, the kinetic
model and default numerics (boundary, nv, vmax, CFL, final time).  Explicit
run options always override the defaults.

Custom scenarios come from JSON files, either deriving from a bundled one:

    {"base": "smooth", "boundary": "reflective", "cfl": 2.0, "t_final": 0.4}

or standalone with an initial-condition block:

    {"name": "my-shock", "model": "chu", "domain": [0.0, 1.0],
     "boundary": "freeflow", "nv": 30, "vmax": 10.0, "cfl": 0.5,
     "t_final": 0.25,
     "initial": {"kind": "riemann", "left": [1.0, 0.0, 1.6667],
                  "right": [0.125, 0.0, 1.3333], "x_jump": 0.5}}

The "initial" kinds are "riemann" (two (rho, u, T) states) and "uniform"
(constant rho/u/T).  Initial distributions are always the Maxwellian (or the
reduced Maxwellian pair) of the macroscopic profiles sampled at the nodes.
"""
from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .chu import ChuReduced3V
from .config import Boundary, parse_boundary
from .errors import ConfigError
from .systems import KineticSystem, Monatomic1V

_JUMP_NODE_TOL = 1e-9


def make_system(model: str) -> KineticSystem:
    if model == "1v":
        return Monatomic1V()
    if model == "chu":
        return ChuReduced3V()
    raise ConfigError(f"unknown kinetic model {model!r} (choose 1v|chu)")


@dataclass(frozen=True)
class Scenario:
    name: str
    model: str  # "1v" | "chu"
    x0: float
    x1: float
    boundary: Boundary
    nv: int
    vmax: float
    cfl: float
    t_final: float
    profile: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]
    riemann: tuple | None = None  # ((rho,u,T)_L, (rho,u,T)_R, x_jump)
    description: str = ""

    def initial_moments(self, x: np.ndarray, dof: int):
        """(rho, u, T) at the nodes; a node sitting exactly on a Riemann jump
        receives the average of the conserved variables of the two states."""
        rho, u, T = self.profile(np.asarray(x, dtype=float))
        rho = np.broadcast_to(np.asarray(rho, float), x.shape).copy()
        u = np.broadcast_to(np.asarray(u, float), x.shape).copy()
        T = np.broadcast_to(np.asarray(T, float), x.shape).copy()
        if self.riemann is not None:
            left, right, x_jump = self.riemann
            node = int(np.argmin(np.abs(x - x_jump)))
            if abs(x[node] - x_jump) <= _JUMP_NODE_TOL * max(1.0, abs(x_jump)):
                rho[node], u[node], T[node] = _mean_conserved(left, right, dof)
        return rho, u, T


def _mean_conserved(left, right, dof: int):
    """Average (rho, rho u, E) of two (rho, u, T) states; back to (rho, u, T)."""

    def conserved(rho, u, T):
        return rho, rho * u, 0.5 * rho * u**2 + 0.5 * dof * rho * T

    rho_l, m_l, e_l = conserved(*left)
    rho_r, m_r, e_r = conserved(*right)
    rho = 0.5 * (rho_l + rho_r)
    m = 0.5 * (m_l + m_r)
    e = 0.5 * (e_l + e_r)
    u = m / rho
    T = (2.0 * e / rho - u**2) / dof
    return rho, u, T


def _smooth_profile(x):
    """Uniform density/temperature with two Gaussian velocity bumps.

    The amplitudes keep the flow subsonic (sound speed sqrt(3)), so the
    solution stays smooth until shortly after t = 0.32; convergence studies
    must stop there."""
    u = 0.1 * np.exp(-((10.0 * x - 1.0) ** 2)) - 0.2 * np.exp(-((10.0 * x + 3.0) ** 2))
    return np.ones_like(x), u, np.ones_like(x)


def _uniform_profile(rho, u, T):
    def profile(x):
        ones = np.ones_like(x)
        return rho * ones, u * ones, T * ones

    return profile


def _riemann_scenario_profile(left, right, x_jump):
    def profile(x):
        on_left = x < x_jump
        rho = np.where(on_left, left[0], right[0])
        u = np.where(on_left, left[1], right[1])
        T = np.where(on_left, left[2], right[2])
        return rho, u, T

    return profile


def _builtin_scenarios() -> dict[str, Scenario]:
    smooth = Scenario(
        name="smooth",
        model="1v",
        x0=-1.0,
        x1=1.0,
        boundary=Boundary.PERIODIC,
        nv=20,
        vmax=10.0,
        cfl=4.0,
        t_final=0.32,
        profile=_smooth_profile,
        description="smooth velocity perturbation of a uniform gas (accuracy study)",
    )
    smooth_chu = dataclasses.replace(
        smooth,
        name="smooth-chu",
        model="chu",
        boundary=Boundary.REFLECTIVE,
        cfl=2.0,
        t_final=0.4,
        description="smooth velocity perturbation, reduced 3D-velocity gas",
    )
    riemann_left = (2.25, 0.0, 1.125)
    riemann_right = (3.0 / 7.0, 0.0, 1.0 / 6.0)
    riemann = Scenario(
        name="riemann",
        model="1v",
        x0=0.0,
        x1=1.0,
        boundary=Boundary.FREEFLOW,
        nv=30,
        vmax=10.0,
        cfl=0.5,
        t_final=0.16,
        profile=_riemann_scenario_profile(riemann_left, riemann_right, 0.5),
        riemann=(riemann_left, riemann_right, 0.5),
        description="shock tube for the 1V gas (fluid limit gamma = 3)",
    )
    chu_left = (1.0, 0.0, 5.0 / 3.0)
    chu_right = (0.125, 0.0, 4.0 / 3.0)
    riemann_chu = dataclasses.replace(
        riemann,
        name="riemann-chu",
        model="chu",
        t_final=0.25,
        profile=_riemann_scenario_profile(chu_left, chu_right, 0.5),
        riemann=(chu_left, chu_right, 0.5),
        description="shock tube for the reduced 3V gas (fluid limit gamma = 5/3)",
    )
    equilibrium = dataclasses.replace(
        smooth,
        name="equilibrium",
        profile=_uniform_profile(1.0, 0.0, 1.0),
        description="global Maxwellian; any scheme must hold it steady",
    )
    return {
        s.name: s for s in (smooth, smooth_chu, riemann, riemann_chu, equilibrium)
    }


SCENARIOS = _builtin_scenarios()


def load_scenario(spec) -> Scenario:
    """Resolve a Scenario from an instance, a bundled name, or a JSON file."""
    if isinstance(spec, Scenario):
        return spec
    if not isinstance(spec, (str, os.PathLike, dict)):
        raise ConfigError(f"cannot interpret scenario spec {spec!r}")
    if isinstance(spec, (str, os.PathLike)):
        name = str(spec)
        if name in SCENARIOS:
            return SCENARIOS[name]
        if not os.path.exists(name):
            known = ", ".join(sorted(SCENARIOS))
            raise ConfigError(
                f"unknown scenario {name!r}: not a bundled name ({known}) "
                "and no such file"
            )
        try:
            with open(name, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise ConfigError(f"cannot read scenario file {name!r}: {err}") from err
    else:
        data = spec
    return _scenario_from_dict(data)


def _scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ConfigError("scenario JSON must be an object")
    data = dict(data)
    base_name = data.pop("base", None)
    if base_name is not None:
        if base_name not in SCENARIOS:
            raise ConfigError(f"unknown base scenario {base_name!r}")
        base = SCENARIOS[base_name]
        overrides = {}
        if "domain" in data:
            domain = data.pop("domain")
            overrides["x0"], overrides["x1"] = _parse_domain(domain)
        if "boundary" in data:
            overrides["boundary"] = parse_boundary(data.pop("boundary"))
        for key in ("name", "model", "nv", "vmax", "cfl", "t_final", "description"):
            if key in data:
                overrides[key] = data.pop(key)
        if data:
            raise ConfigError(f"unknown scenario keys {sorted(data)} with 'base'")
        return dataclasses.replace(base, **overrides)

    required = ("name", "model", "domain", "boundary", "nv", "vmax", "cfl", "t_final", "initial")
    missing = [key for key in required if key not in data]
    if missing:
        raise ConfigError(f"scenario JSON missing keys: {missing}")
    x0, x1 = _parse_domain(data["domain"])
    initial = data["initial"]
    if not isinstance(initial, dict) or "kind" not in initial:
        raise ConfigError("scenario 'initial' must be an object with a 'kind'")
    riemann = None
    if initial["kind"] == "riemann":
        left = tuple(float(v) for v in initial["left"])
        right = tuple(float(v) for v in initial["right"])
        if len(left) != 3 or len(right) != 3:
            raise ConfigError("riemann states must be [rho, u, T] triples")
        x_jump = float(initial.get("x_jump", 0.5 * (x0 + x1)))
        profile = _riemann_scenario_profile(left, right, x_jump)
        riemann = (left, right, x_jump)
    elif initial["kind"] == "uniform":
        profile = _uniform_profile(
            float(initial["rho"]), float(initial["u"]), float(initial["T"])
        )
    else:
        raise ConfigError(f"unknown initial kind {initial['kind']!r} (riemann|uniform)")
    model = str(data["model"])
    make_system(model)  # validates
    return Scenario(
        name=str(data["name"]),
        model=model,
        x0=x0,
        x1=x1,
        boundary=parse_boundary(data["boundary"]),
        nv=int(data["nv"]),
        vmax=float(data["vmax"]),
        cfl=float(data["cfl"]),
        t_final=float(data["t_final"]),
        profile=profile,
        riemann=riemann,
        description=str(data.get("description", "custom scenario")),
    )


def _parse_domain(domain):
    try:
        x0, x1 = (float(v) for v in domain)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"domain must be [x0, x1], got {domain!r}") from err
    return x0, x1
