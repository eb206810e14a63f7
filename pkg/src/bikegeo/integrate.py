"""Geodesic flow and horizontal lifts.

The unit-speed geodesics of the no-skid geometry are the projections of
the Hamiltonian flow of H = (P1^2 + P2^2)/2 on the cotangent bundle,
with P1 = px - sin(theta) * ptheta and P2 = py + cos(theta) * ptheta.
px and py are conserved; rotating them onto the x-axis leaves the
reduced four-dimensional system in (x, y, theta, kappa) with a single
momentum parameter a >= 0, in which kappa is exactly the signed
curvature of the front track.

Everything integrates with classical fixed-step RK4.  Conserved
quantities are reported as drift, never projected back.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import RigidMotion, SampledBikePath, _ell_value, dilate_path
from . import numdiff
from .errors import DivergenceError, ImmersionError, NotUnitSpeedError

DEFAULT_STEP = 1e-3


@dataclass(frozen=True)
class CotangentState:
    """Full phase-space point (x, y, theta, px, py, ptheta)."""

    x: float
    y: float
    theta: float
    px: float
    py: float
    ptheta: float

    @property
    def p1(self):
        return self.px - math.sin(self.theta) * self.ptheta

    @property
    def p2(self):
        return self.py + math.cos(self.theta) * self.ptheta

    def hamiltonian(self):
        return 0.5 * (self.p1**2 + self.p2**2)


@dataclass(frozen=True)
class ReducedState:
    """Canonical unit-speed geodesic state (x, y, theta, kappa) with
    constant momentum a >= 0."""

    x: float
    y: float
    theta: float
    kappa: float
    a: float

    def __post_init__(self):
        if not (self.a >= 0.0):
            raise ValueError("momentum parameter a must be >= 0")

    def speed_squared(self):
        """Front speed squared; equals 1 on unit-speed trajectories."""
        s = math.sin(self.theta)
        return self.kappa**2 - 2.0 * self.a * s * self.kappa + self.a**2


def canonical_vertex_state(a):
    """Reduced state at a maximum-curvature vertex in canonical pose:
    front at the origin, frame angle pi/2, kappa = 1 + a."""
    return ReducedState(0.0, 0.0, 0.5 * math.pi, 1.0 + float(a), float(a))


def soliton_vertex_state():
    """Apex state of the width-2 soliton with asymptote y = 0."""
    return ReducedState(0.0, 2.0, 0.5 * math.pi, 2.0, 1.0)


def _full_rhs_arr(y, px, py):
    """Vectorized right-hand side of the full system on (..., 4) arrays
    ordered (x, y, theta, ptheta); px, py enter as constants."""
    th = y[..., 2]
    pth = y[..., 3]
    s, c = np.sin(th), np.cos(th)
    return np.stack(
        [px - s * pth,
         py + c * pth,
         pth + c * py - s * px,
         pth * (c * px + s * py)],
        axis=-1)


def _reduced_rhs_arr(y, a):
    """Vectorized right-hand side of the reduced system on (..., 4)
    arrays ordered (x, y, theta, kappa)."""
    th = y[..., 2]
    k = y[..., 3]
    s, c = np.sin(th), np.cos(th)
    return np.stack([a - s * k, c * k, k - a * s, a * c * k], axis=-1)


def hamiltonian_rhs(state):
    """Time derivative (x', y', theta', px', py', ptheta') of the full
    system at a cotangent state.  px and py are conserved."""
    y = np.array([state.x, state.y, state.theta, state.ptheta])
    d = _full_rhs_arr(y, state.px, state.py)
    return np.array([d[0], d[1], d[2], 0.0, 0.0, d[3]])


def reduced_rhs(state):
    """Time derivative (x', y', theta', kappa') of the reduced system."""
    y = np.array([state.x, state.y, state.theta, state.kappa])
    return _reduced_rhs_arr(y, state.a)


def canonicalize(state, tol=1e-9):
    """Rotate a unit-speed cotangent state into the reduced frame.

    Returns (reduced, g) where g is the rotation about the origin taking
    the given trajectory onto the reduced one: the rotated state has
    py = 0, px = a >= 0, and kappa = ptheta.  Applying g.inverse() to the
    reduced trajectory reproduces the original one.
    """
    h = state.hamiltonian()
    if not (abs(h - 0.5) <= tol):
        raise NotUnitSpeedError(f"H = {h!r}, expected 1/2 (tol {tol})")
    a = math.hypot(state.px, state.py)
    phi = -math.atan2(state.py, state.px) if a > 0.0 else 0.0
    c, s = math.cos(phi), math.sin(phi)
    x = c * state.x - s * state.y
    y = s * state.x + c * state.y
    reduced = ReducedState(x, y, state.theta + phi, state.ptheta, a)
    return reduced, RigidMotion(phi)


def _rk4(rhs, y0, h, n_steps):
    """Fixed-step classical RK4 over (..., d) state arrays.

    Returns the trajectory with shape (n_steps + 1, ...) and raises
    DivergenceError with the offending time if a state goes non-finite.
    """
    y = np.array(y0, dtype=float)
    traj = np.empty((n_steps + 1,) + y.shape)
    traj[0] = y
    for i in range(n_steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise DivergenceError(
                f"non-finite state at t = {(i + 1) * h!r}", t=(i + 1) * h)
        traj[i + 1] = y
    return traj


def _grid(t_end, step):
    if not (step > 0 and t_end > 0):
        raise ValueError("step and t_end must be positive")
    n = max(1, math.ceil(round(t_end / step, 9)))
    h = t_end / n
    return n, h


def _reduced_energy(traj, a):
    """Conserved front-speed-squared along a reduced trajectory."""
    th, k = traj[..., 2], traj[..., 3]
    return k**2 - 2.0 * a * np.sin(th) * k + a**2


def _full_hamiltonian(traj, px, py):
    th, pth = traj[..., 2], traj[..., 3]
    p1 = px - np.sin(th) * pth
    p2 = py + np.cos(th) * pth
    return 0.5 * (p1**2 + p2**2)


def integrate_geodesics(states, t_end, step=DEFAULT_STEP, ell=1.0):
    """Integrate a batch of geodesics sharing the time grid.

    All states must be of one kind (CotangentState or ReducedState).
    For a frame length other than 1 the states are interpreted in
    physical units (positions and curvature in length units); the
    integration runs in normalized units and the result is dilated back.
    Returns a list of SampledBikePath, each carrying its conserved
    -quantity drift.
    """
    ell = _ell_value(ell)
    if ell != 1.0:
        scaled = []
        for s in states:
            if isinstance(s, ReducedState):
                scaled.append(ReducedState(s.x / ell, s.y / ell, s.theta,
                                           s.kappa * ell, s.a))
            else:
                scaled.append(CotangentState(s.x / ell, s.y / ell, s.theta,
                                             s.px, s.py, s.ptheta))
        unit_paths = integrate_geodesics(scaled, t_end / ell, step / ell, 1.0)
        return [dilate_path(p, ell).with_drift(p.drift) for p in unit_paths]

    if not states:
        return []
    kinds = {type(s) for s in states}
    if len(kinds) != 1:
        raise TypeError("states must all be CotangentState or all ReducedState")
    reduced = kinds.pop() is ReducedState
    n, h = _grid(t_end, step)
    t = np.arange(n + 1) * h

    if reduced:
        for s in states:
            e0 = s.speed_squared()
            if not (abs(e0 - 1.0) <= 1e-6):
                raise NotUnitSpeedError(
                    f"front speed^2 = {e0!r}, expected 1 for a unit-speed state")
        y0 = np.array([[s.x, s.y, s.theta, s.kappa] for s in states])
        a = np.array([s.a for s in states])
        traj = _rk4(lambda y: _reduced_rhs_arr(y, a), y0, h, n)
        energy = _reduced_energy(traj, a)
    else:
        for s in states:
            hval = s.hamiltonian()
            if not (abs(hval - 0.5) <= 1e-6):
                raise NotUnitSpeedError(f"H = {hval!r}, expected 1/2")
        y0 = np.array([[s.x, s.y, s.theta, s.ptheta] for s in states])
        px = np.array([s.px for s in states])
        py = np.array([s.py for s in states])
        traj = _rk4(lambda y: _full_rhs_arr(y, px, py), y0, h, n)
        energy = _full_hamiltonian(traj, px, py)

    drifts = np.max(np.abs(energy - energy[0]), axis=0)
    paths = []
    for j in range(len(states)):
        paths.append(SampledBikePath(
            t, traj[:, j, :2], traj[:, j, 2], traj[:, j, 3],
            ell=1.0, drift=float(drifts[j])))
    return paths


def integrate_geodesic(state, t_end, step=DEFAULT_STEP, ell=1.0):
    """Integrate one geodesic; see :func:`integrate_geodesics`.

    The returned path samples every step from 0 to t_end; kappa holds the
    front-track curvature (ptheta for full states), and ``drift`` reports
    the worst conservation error of H (full) or of the unit-speed
    constraint (reduced).
    """
    return integrate_geodesics([state], t_end, step, ell)[0]


@dataclass(frozen=True)
class FrontTrackSpec:
    """A prescribed front track on [t0, t1].

    curve and derivative are vectorized callables returning (..., 2);
    the curve must be immersed (derivative never zero).  arc_length
    marks parametrization by arc length, in which case sample parameters
    double as the output path's arc length.
    """

    curve: Callable
    derivative: Callable
    t0: float
    t1: float
    arc_length: bool = False

    def __post_init__(self):
        if not (self.t1 > self.t0):
            raise ValueError("need t1 > t0")

    @classmethod
    def line(cls, t0=0.0, t1=20.0):
        """The x-axis traversed at unit speed."""
        return cls(
            curve=lambda t: np.stack(np.broadcast_arrays(
                np.asarray(t, dtype=float), np.zeros_like(np.asarray(t, dtype=float))), axis=-1),
            derivative=lambda t: np.stack(np.broadcast_arrays(
                np.ones_like(np.asarray(t, dtype=float)), np.zeros_like(np.asarray(t, dtype=float))), axis=-1),
            t0=float(t0), t1=float(t1), arc_length=True)

    @classmethod
    def circle(cls, radius=1.0, t0=0.0, t1=None, center=(0.0, 0.0)):
        """Counterclockwise circle, parametrized by arc length."""
        r = float(radius)
        if r <= 0:
            raise ValueError("radius must be positive")
        if t1 is None:
            t1 = t0 + 2.0 * math.pi * r
        cx, cy = center

        def curve(t):
            ang = np.asarray(t, dtype=float) / r
            return np.stack(np.broadcast_arrays(
                cx + r * np.cos(ang), cy + r * np.sin(ang)), axis=-1)

        def derivative(t):
            ang = np.asarray(t, dtype=float) / r
            return np.stack(np.broadcast_arrays(-np.sin(ang), np.cos(ang)), axis=-1)

        return cls(curve, derivative, float(t0), float(t1), arc_length=True)

    @classmethod
    def from_spline(cls, spline, t0, t1, arc_length=False):
        """Wrap a scipy spline (PPoly-like with .derivative())."""
        d = spline.derivative()
        return cls(curve=lambda t: np.asarray(spline(t), dtype=float),
                   derivative=lambda t: np.asarray(d(t), dtype=float),
                   t0=float(t0), t1=float(t1), arc_length=arc_length)


def _lift_stage_data(track, step):
    """Sample the track and its derivative at grid and half-grid points."""
    n, h = _grid(track.t1 - track.t0, step)
    t = track.t0 + np.arange(n + 1) * h
    t_half = t[:-1] + 0.5 * h
    c_grid = np.asarray(track.curve(t), dtype=float).reshape(n + 1, 2)
    d_grid = np.asarray(track.derivative(t), dtype=float).reshape(n + 1, 2)
    d_half = np.asarray(track.derivative(t_half), dtype=float).reshape(n, 2)
    speeds = np.hypot(d_grid[:, 0], d_grid[:, 1])
    if np.min(speeds) < 1e-9 * max(1.0, float(np.max(speeds))):
        raise ImmersionError("front track has (near-)vanishing velocity")
    return t, h, c_grid, d_grid, d_half, speeds


def lift_frame_angles(track, theta0, ell=1.0, step=DEFAULT_STEP):
    """Integrate the no-skid constraint along a prescribed front track.

    theta0 may be a scalar or an array of initial frame angles (the whole
    fiber is lifted in one sweep).  Returns (t, theta) with theta of
    shape (n_samples,) + shape(theta0); theta is continuous, not wrapped.

    The lift solves ell * theta' = cos(theta) * y' - sin(theta) * x',
    which is the no-skid condition for any parametrization.
    """
    ell = _ell_value(ell)
    t, h, _c, d_grid, d_half, _sp = _lift_stage_data(track, step)
    n = t.size - 1
    theta0 = np.asarray(theta0, dtype=float)
    th = np.array(theta0, dtype=float)
    out = np.empty((n + 1,) + th.shape)
    out[0] = th

    def slope(theta, dxy):
        return (np.cos(theta) * dxy[1] - np.sin(theta) * dxy[0]) / ell

    for i in range(n):
        d0 = d_grid[i]
        dh = d_half[i]
        d1 = d_grid[i + 1]
        k1 = slope(th, d0)
        k2 = slope(th + 0.5 * h * k1, dh)
        k3 = slope(th + 0.5 * h * k2, dh)
        k4 = slope(th + h * k3, d1)
        th = th + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(th)):
            raise DivergenceError(f"non-finite frame angle at t = {t[i + 1]!r}",
                                  t=float(t[i + 1]))
        out[i + 1] = th
    return t, out


def horizontal_lift(track, theta0, ell=1.0, step=DEFAULT_STEP):
    """Horizontal lift of a front track from an initial frame angle.

    Returns a SampledBikePath whose parameter is the front-track arc
    length (cumulative, exact for arc-length tracks) and whose curvature
    is computed from the track by finite differences.
    """
    ell = _ell_value(ell)
    t, theta = lift_frame_angles(track, float(theta0), ell, step)
    front = np.asarray(track.curve(t), dtype=float).reshape(t.size, 2)
    if track.arc_length:
        s = t - t[0]
    else:
        d = np.asarray(track.derivative(t), dtype=float).reshape(t.size, 2)
        speed = np.hypot(d[:, 0], d[:, 1])
        s = np.concatenate([[0.0], np.cumsum(
            0.5 * (speed[1:] + speed[:-1]) * np.diff(t))])
    kappa = numdiff.curvature_from_track(front, s)
    return SampledBikePath(s, front, theta, kappa, ell)
