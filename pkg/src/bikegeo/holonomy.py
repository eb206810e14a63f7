"""Parallel transport of the frame angle and bicycle correspondence.

Riding the front wheel along a fixed plane curve transports the frame
angle: the map from initial to final angle is a diffeomorphism of the
fiber circle, and it is a linear fractional (Moebius) transformation in
the half-angle chart u = tan(theta/2).  This module computes transports,
fits the Moebius map from fiber samples, builds bicycle correspondents
(front tracks sharing a back track, obtained by flipping a lift), and
fits the pressurized elastica equation

    kappa'' + kappa^3 / 2 + A kappa = C

that circle correspondents satisfy with C != 0.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import numdiff
from .core import SampledBikePath, flip_path, normalize_angles
from .errors import DegenerateInputError, RankDeficiencyError
from .integrate import DEFAULT_STEP, horizontal_lift, lift_frame_angles

# chart map K : z on the unit circle -> tan(theta/2) on the projective line
_K = np.array([[-1j, 1j], [1.0, 1.0]])
_K_INV = np.array([[0.5j, 0.5], [-0.5j, 0.5]])


@dataclass(frozen=True)
class TransportSample:
    """One fiber sample of a parallel transport map."""

    theta_in: float
    theta_out: float


@dataclass(frozen=True)
class MobiusMap:
    """A linear fractional transformation acting on the unit circle.

    Stored as a complex 2x2 matrix of unit determinant acting on
    z = exp(i * theta) by z -> (m00 z + m01) / (m10 z + m11).
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("matrix must be 2x2")
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) < 1e-300:
            raise ValueError("matrix must be invertible")
        m = m / np.sqrt(det)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls):
        return cls(np.eye(2))

    @classmethod
    def from_chart_matrix(cls, chart_matrix):
        """Build from a real 2x2 matrix acting on u = tan(theta/2)."""
        m = np.asarray(chart_matrix, dtype=float)
        return cls(_K_INV @ m @ _K)

    @property
    def chart_matrix(self):
        """Real matrix acting on u = tan(theta/2)."""
        return np.real(_K @ self.matrix @ _K_INV)

    def apply(self, theta):
        """Image angle(s) of theta under the circle map."""
        z = np.exp(1j * np.asarray(theta, dtype=float))
        m = self.matrix
        w = (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])
        return np.angle(w)


def transport(track, theta0, ell=1.0, step=DEFAULT_STEP):
    """Final frame angle after riding the front wheel along the track.

    Returns the continuous (unwrapped) final angle of the horizontal
    lift started at theta0; reduce mod 2*pi for the fiber point.
    """
    _t, th = lift_frame_angles(track, float(theta0), ell, step)
    return float(th[-1])


def transport_samples(track, theta_in, ell=1.0, step=DEFAULT_STEP):
    """Transport a whole batch of fiber angles along one track."""
    theta_in = np.asarray(theta_in, dtype=float)
    _t, th = lift_frame_angles(track, theta_in, ell, step)
    return [TransportSample(float(a), float(b)) for a, b in zip(theta_in, th[-1])]


def fit_mobius(samples):
    """Least-squares Moebius map through transport samples.

    Works in homogeneous half-angle coordinates
    (sin(theta/2), cos(theta/2)), which keep every row bounded (the
    theta = pi fiber point included), and solves the homogeneous system
    by SVD.  Returns (map, residual) with residual the worst angular
    discrepancy over the samples.

    Raises RankDeficiencyError when the sample set does not pin the map
    down (fewer than three distinct fiber points in general position).
    """
    if len(samples) < 6:
        raise DegenerateInputError("need at least 6 transport samples")
    th_in = np.array([s.theta_in for s in samples], dtype=float)
    th_out = np.array([s.theta_out for s in samples], dtype=float)
    wrapped = np.sort(normalize_angles(th_in))
    if np.unique(np.round(wrapped, 12)).size < 6:
        raise DegenerateInputError("need at least 6 distinct fiber angles")

    s, c = np.sin(th_in / 2.0), np.cos(th_in / 2.0)
    sp, cp = np.sin(th_out / 2.0), np.cos(th_out / 2.0)
    rows = np.stack([-cp * s, -cp * c, sp * s, sp * c], axis=1)
    _u, sv, vt = np.linalg.svd(rows)
    if sv[-2] < 1e-10 * sv[0]:
        raise RankDeficiencyError("transport samples do not determine the map")
    m = vt[-1].reshape(2, 2)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < 1e-14:
        raise RankDeficiencyError("fitted chart matrix is singular")
    mob = MobiusMap.from_chart_matrix(m / math.sqrt(abs(det)))
    pred = mob.apply(th_in)
    residual = float(np.max(np.abs(normalize_angles(pred - th_out))))
    return mob, residual


def cross_ratio(u):
    """Cross ratio (u0-u2)(u1-u3) / ((u0-u3)(u1-u2)) of four reals."""
    u0, u1, u2, u3 = u
    return ((u0 - u2) * (u1 - u3)) / ((u0 - u3) * (u1 - u2))


def cross_ratio_angles(thetas):
    """Cross ratio of four fiber angles in the tan(theta/2) chart."""
    thetas = np.asarray(thetas, dtype=float)
    return cross_ratio(np.tan(thetas / 2.0))


def correspondent(track, theta0, ell=1.0, step=DEFAULT_STEP):
    """Bicycle correspondent of a front track.

    Lifts the track from theta0, flips the frame about the back wheel,
    and returns the flipped path: its front track is 2b - f and it
    shares the back track b with the lift.  Lines map to solitons (for
    generic theta0); circle correspondents are pressurized elasticae.
    """
    lift = horizontal_lift(track, theta0, ell, step)
    return flip_path(lift)


#: differentiation spacing for the pressurized fit; double numerical
#: differentiation amplifies roundoff like eps/h^2, so the fit resamples
#: the curve coarser than integration steps
FIT_SPACING = 0.02


def pressurized_fit(front, t=None, spacing=FIT_SPACING):
    """Least-squares fit of kappa'' + kappa^3/2 + A*kappa = C.

    front : (n, 2) arc-length-sampled plane curve (a SampledBikePath's
    front track, or any curve with t supplied).  Returns (A, C, residual)
    with residual the worst absolute defect over interior samples.

    Curvature and its second derivative come from finite differences on
    a grid no finer than ``spacing``; constant-curvature input leaves
    (A, C) underdetermined and the minimum-norm solution is returned.
    """
    if isinstance(front, SampledBikePath):
        t = front.t
        front = front.front
    front = np.asarray(front, dtype=float)
    if front.ndim != 2 or front.shape[1] != 2:
        raise ValueError("front must be an (n, 2) array")
    if t is None:
        chords = np.linalg.norm(np.diff(front, axis=0), axis=1)
        t = np.concatenate([[0.0], np.cumsum(chords)])
    t = np.asarray(t, dtype=float)
    if front.shape[0] < 9:
        raise DegenerateInputError("need at least 9 samples for the fit")

    dt = float(np.median(np.diff(t)))
    stride = max(1, int(round(spacing / dt)))
    f = front[::stride]
    tt = t[::stride]
    if f.shape[0] < 9:
        raise DegenerateInputError(
            "need at least 9 samples at the differentiation spacing")

    kappa = numdiff.curvature_from_track(f, tt)
    kdd = numdiff.deriv2(kappa, tt)
    sl = numdiff.interior(f.shape[0], 5)
    k = kappa[sl]
    rows = np.stack([k, -np.ones_like(k)], axis=1)
    rhs = -(kdd[sl] + 0.5 * k**3)
    # rcond truncates the noise-level singular direction of constant-
    # curvature input, yielding the minimum-norm (A, C) there
    (A, C), *_ = np.linalg.lstsq(rows, rhs, rcond=1e-6)
    defect = np.abs(kdd[sl] + 0.5 * k**3 + A * k - C)
    return float(A), float(C), float(np.max(defect))
