"""Pointwise interpolation on uniform grids: linear, WENO23 and WENO35.

Evaluation points are anchored to the cell [x_j, x_j+dx] that contains them,
with local coordinate t = (x - x_j)/dx in [0, 1].

WENO23 blends the two quadratics built on nodes (j-1, j, j+1) and (j, j+1, j+2);
with the smooth-data (linear) weights the blend reproduces the full cubic
through all four nodes.  WENO35 blends the three cubics on (j-2..j+1),
(j-1..j+2) and (j..j+3); the smooth-data blend reproduces the degree-5
interpolant through all six nodes.

Smoothness indicators are the standard squared-Sobolev-seminorm integrals of
each stencil polynomial over the evaluation cell, expressed in the local
coordinate:  beta = sum_l  integral_0^1 (d^l p/dt^l)^2 dt.  The quadratic
forms below were generated symbolically from that definition.

Data may be a single column, shape (n,), or a batch of columns, shape (n, c)
with one evaluation array of shape (p, c) giving per-column points.  Repeated
evaluation at the same points (the common case along characteristics, where
the shift pattern is fixed while the field changes every step) goes through an
InterpPlan that precomputes the gather indices and all point-dependent
weights once.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Interp
from .errors import ConfigError

WENO_EPS_DEFAULT = 1e-6

#: nodes needed on each side of the anchor cell, per interpolation kind
GHOST_WIDTH = {Interp.LINEAR: 1, Interp.WENO23: 2, Interp.WENO35: 3}

#: anchor-cell clipping range (lo, hi_from_end): cell in [lo, n_nodes - hi]
_CELL_RANGE = {Interp.LINEAR: (0, 2), Interp.WENO23: (1, 3), Interp.WENO35: (2, 4)}

_ANCHOR_TOL = 1e-9


def _as_columns(data, x):
    """Normalize to 2D column batches; return (data2, x2, out_shape)."""
    data = np.asarray(data, dtype=float)
    x = np.asarray(x, dtype=float)
    if data.ndim == 1:
        return data[:, None], x.reshape(-1, 1), x.shape
    if data.ndim == 2:
        if x.ndim != 2 or x.shape[1] != data.shape[1]:
            raise ValueError(
                f"points shape {x.shape} incompatible with data columns {data.shape}"
            )
        return data, x, x.shape
    raise ValueError(f"data must be 1D or 2D, got shape {data.shape}")


def _anchor(x2, x0, dx, n_nodes, lo_cell, hi_cell):
    """Anchor cell index and local coordinate for every evaluation point."""
    if hi_cell < lo_cell:
        raise ValueError(f"{n_nodes} nodes are too few for this stencil")
    s = (x2 - x0) / dx
    cell = np.clip(np.floor(s).astype(np.int64), lo_cell, hi_cell)
    t = s - cell
    if t.size and not ((t.min() >= -_ANCHOR_TOL) and (t.max() <= 1.0 + _ANCHOR_TOL)):
        raise ValueError(
            "evaluation point outside the stencil-reachable range of the data "
            "(insufficient ghost extension?)"
        )
    return cell, t


def _cardinals(offsets, t):
    """Lagrange cardinal functions of the integer-offset stencil at t."""
    cards = []
    for o in offsets:
        card = np.ones_like(t)
        for o2 in offsets:
            if o2 != o:
                card = card * (t - o2) / (o - o2)
        cards.append(card)
    return cards


# Smoothness indicators (symbolically derived; see module docstring).
def _beta_quadratic(a, b, c):
    """For quadratic stencil values (a, b, c) listed from the evaluation cell's
    left neighbor outwards; the mirrored stencil passes reversed arguments."""
    curv = a - 2.0 * b + c
    slope = b - c
    return (13.0 / 12.0) * curv * curv + slope * slope


def _beta_cubic_edge(w0, w1, w2, w3):
    """Right-biased cubic stencil (cell nodes w0, w1 then two to the right);
    the left-biased stencil passes its values in reversed order."""
    return (
        (407.0 / 90.0) * w0 * w0
        + (721.0 / 30.0) * w1 * w1
        + (248.0 / 15.0) * w2 * w2
        + (61.0 / 45.0) * w3 * w3
        - (1193.0 / 60.0) * w0 * w1
        + (439.0 / 30.0) * w0 * w2
        - (683.0 / 180.0) * w0 * w3
        - (2309.0 / 60.0) * w1 * w2
        + (103.0 / 10.0) * w1 * w3
        - (553.0 / 60.0) * w2 * w3
    )


def _beta_cubic_center(w0, w1, w2, w3):
    """Centered cubic stencil (one node left of the cell, two right)."""
    return (
        (61.0 / 45.0) * (w0 * w0 + w3 * w3)
        + (331.0 / 30.0) * (w1 * w1 + w2 * w2)
        - (141.0 / 20.0) * (w0 * w1 + w2 * w3)
        + (179.0 / 30.0) * (w0 * w2 + w1 * w3)
        - (293.0 / 180.0) * w0 * w3
        - (1259.0 / 60.0) * w1 * w2
    )


class InterpPlan:
    """Gather indices and blend weights frozen for one set of evaluation points.

    Built once per distinct shift pattern; apply() then only gathers the
    current node values and mixes them, which is what makes long runs cheap.
    """

    def __init__(self, kind: Interp, eps: float, n_nodes: int, cell, t):
        self.kind = kind
        self.eps = float(eps)
        self.n_nodes = int(n_nodes)
        self.ncols = int(cell.shape[1])
        self._base = cell * self.ncols + np.arange(self.ncols, dtype=np.int64)[None, :]
        if kind is Interp.LINEAR:
            self._cards = (_cardinals((0, 1), t),)
            self._cw = None
        elif kind is Interp.WENO23:
            self._cards = (_cardinals((-1, 0, 1), t), _cardinals((0, 1, 2), t))
            self._cw = ((2.0 - t) / 3.0, (1.0 + t) / 3.0)
        elif kind is Interp.WENO35:
            self._cards = (
                _cardinals((-2, -1, 0, 1), t),
                _cardinals((-1, 0, 1, 2), t),
                _cardinals((0, 1, 2, 3), t),
            )
            self._cw = (
                (t - 2.0) * (t - 3.0) / 20.0,
                -(t + 2.0) * (t - 3.0) / 10.0,
                (t + 2.0) * (t + 1.0) / 20.0,
            )
        else:  # pragma: no cover - guarded by Interpolator
            raise ConfigError(f"no interpolation plan for kind {kind!r}")

    def apply(self, data2: np.ndarray, cols=slice(None), out=None) -> np.ndarray:
        """Interpolate node values data2 (shape (n_nodes, ncols), C-contiguous)
        at the planned points, optionally restricted to a column slice."""
        if data2.shape != (self.n_nodes, self.ncols):
            raise ValueError(
                f"data shape {data2.shape} does not match plan "
                f"({self.n_nodes}, {self.ncols})"
            )
        flat = np.ascontiguousarray(data2).reshape(-1)
        base = self._base[:, cols]
        step = self.ncols
        if self.kind is Interp.LINEAR:
            w0, w1 = (c[:, cols] for c in self._cards[0])
            res = w0 * flat.take(base) + w1 * flat.take(base + step)
        elif self.kind is Interp.WENO23:
            res = self._apply_weno23(flat, base, step, cols)
        else:
            res = self._apply_weno35(flat, base, step, cols)
        if out is not None:
            out[...] = res
            return out
        return res

    def _apply_weno23(self, flat, base, step, cols):
        vm = flat.take(base - step)
        v0 = flat.take(base)
        v1 = flat.take(base + step)
        v2 = flat.take(base + 2 * step)
        b_left = _beta_quadratic(vm, v0, v1)
        b_right = _beta_quadratic(v2, v1, v0)
        cw_l, cw_r = (c[:, cols] for c in self._cw)
        a_left = cw_l / (b_left + self.eps) ** 2
        a_right = cw_r / (b_right + self.eps) ** 2
        (lm, l0, l1), (r0, r1, r2) = (
            [c[:, cols] for c in cards] for cards in self._cards
        )
        p_left = lm * vm + l0 * v0 + l1 * v1
        p_right = r0 * v0 + r1 * v1 + r2 * v2
        return (a_left * p_left + a_right * p_right) / (a_left + a_right)

    def _apply_weno35(self, flat, base, step, cols):
        w = [flat.take(base + o * step) for o in (-2, -1, 0, 1, 2, 3)]
        vm2, vm1, v0, v1, v2, v3 = w
        b_left = _beta_cubic_edge(v1, v0, vm1, vm2)
        b_center = _beta_cubic_center(vm1, v0, v1, v2)
        b_right = _beta_cubic_edge(v0, v1, v2, v3)
        cw_l, cw_c, cw_r = (c[:, cols] for c in self._cw)
        a_left = cw_l / (b_left + self.eps) ** 2
        a_center = cw_c / (b_center + self.eps) ** 2
        a_right = cw_r / (b_right + self.eps) ** 2
        cards_l, cards_c, cards_r = (
            [c[:, cols] for c in cards] for cards in self._cards
        )
        p_left = cards_l[0] * vm2 + cards_l[1] * vm1 + cards_l[2] * v0 + cards_l[3] * v1
        p_center = cards_c[0] * vm1 + cards_c[1] * v0 + cards_c[2] * v1 + cards_c[3] * v2
        p_right = cards_r[0] * v0 + cards_r[1] * v1 + cards_r[2] * v2 + cards_r[3] * v3
        num = a_left * p_left + a_center * p_center + a_right * p_right
        return num / (a_left + a_center + a_right)


@dataclass(frozen=True)
class Interpolator:
    """Configured pointwise interpolation with its ghost-width requirement."""

    kind: Interp
    eps: float = WENO_EPS_DEFAULT

    def __post_init__(self):
        if self.kind not in GHOST_WIDTH:
            raise ConfigError(f"no interpolator for kind {self.kind!r}")

    @property
    def ghost(self) -> int:
        return GHOST_WIDTH[self.kind]

    def plan(self, n_nodes: int, x0: float, dx: float, points: np.ndarray) -> InterpPlan:
        """Freeze gather indices/weights for evaluating (n_nodes, c) data at
        the 2D point batch `points` (one point column per data column)."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2:
            raise ValueError(f"plan needs a 2D point batch, got shape {pts.shape}")
        lo, hi_from_end = _CELL_RANGE[self.kind]
        cell, t = _anchor(pts, x0, dx, n_nodes, lo, n_nodes - hi_from_end)
        return InterpPlan(self.kind, self.eps, n_nodes, cell, t)

    def __call__(self, data, x, x0: float = 0.0, dx: float = 1.0):
        data2, x2, out_shape = _as_columns(data, x)
        plan = self.plan(data2.shape[0], x0, dx, x2)
        return plan.apply(np.ascontiguousarray(data2)).reshape(out_shape)


def linear_interp(data, x, x0: float = 0.0, dx: float = 1.0):
    """Piecewise-linear interpolation of node data at points x."""
    return Interpolator(Interp.LINEAR)(data, x, x0, dx)


def weno23_interp(data, x, x0: float = 0.0, dx: float = 1.0, eps: float = WENO_EPS_DEFAULT):
    """WENO blend of the two quadratic stencils around each point."""
    return Interpolator(Interp.WENO23, eps)(data, x, x0, dx)


def weno35_interp(data, x, x0: float = 0.0, dx: float = 1.0, eps: float = WENO_EPS_DEFAULT):
    """WENO blend of the three cubic stencils around each point."""
    return Interpolator(Interp.WENO35, eps)(data, x, x0, dx)


def make_interpolator(kind: Interp, eps: float = WENO_EPS_DEFAULT) -> Interpolator:
    return Interpolator(kind=kind, eps=eps)
