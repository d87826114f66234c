"""Semi-Lagrangian discrete-velocity solver for the BGK kinetic equation.

High-order characteristic schemes (implicit Euler, DIRK2/3, BDF2/3) with
WENO interpolation at the characteristic feet, interpolation-free lattice
variants, a reduced two-distribution formulation for 3D velocity spaces in
slab symmetry, and an exact Euler Riemann solver for fluid-limit reference.
"""
from .boundaries import extend_field, map_nodes
from .chu import ChuReduced3V
from .config import Boundary, Integrator, Interp, SchemeConfig, default_interp
from .errors import ConfigError, DegenerateStateError, NumericalError
from .grid import PhaseGrid, TimeControl, characteristic_foot
from .harness import (
    RunResult,
    cfl_sweep,
    convergence_study,
    cost_study,
    l1_norm,
    l2_norm,
    restrict,
    run_case,
    scheme_label,
)
from .integrators import (
    BDF_WEIGHTS,
    LATTICE_RK2_TABLEAU,
    RK2_TABLEAU,
    RK3_TABLEAU,
    StepContext,
    Tableau,
    TimeStepper,
    bdf_startup,
    bdf_step,
    dirk_step,
    euler_step,
)
from .lattice import LatticeTransport, lattice_cfl, lattice_dt
from .moments import Moments, maxwellian, relaxation_solve, velocity_moments
from .riemann import GasState, RiemannSolution, riemann_profile
from .scenarios import SCENARIOS, Scenario, load_scenario, make_system
from .systems import KineticSystem, Monatomic1V
from .transport import InterpolatedTransport
from .weno import (
    Interpolator,
    linear_interp,
    make_interpolator,
    weno23_interp,
    weno35_interp,
)

__version__ = "1.0.0"
