"""Smooth area-preserving twist maps of the plane.

A twist rotates each circle about its center rigidly by an angle phi(r)
that is constant inside r_in, zero outside r_out, and interpolated by a
quintic smoothstep in between (C2 joins).  In polar coordinates the
Jacobian is unit triangular, so the map preserves area exactly; the
numeric checks below confirm this through finite differences.
"""

import math
from dataclasses import dataclass

import numpy as np


def smoothstep5(t):
    """Quintic smoothstep: 0 at t<=0, 1 at t>=1, C2 at both joins."""
    t = min(1.0, max(0.0, t))
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0)


@dataclass(frozen=True)
class TwistMap:
    center: tuple
    r_in: float
    r_out: float
    phi_max: float

    def __post_init__(self):
        if not 0 < self.r_in < self.r_out:
            raise ValueError(f"need 0 < r_in < r_out, got ({self.r_in}, {self.r_out})")

    def angle(self, r):
        if r <= self.r_in:
            return self.phi_max
        if r >= self.r_out:
            return 0.0
        return self.phi_max * smoothstep5((self.r_out - r) / (self.r_out - self.r_in))

    def angular_speed(self, r):
        """phi(r) read as an angular velocity, for the flow-field variant."""
        return self.angle(r)

    def __call__(self, p):
        cx, cy = self.center
        dx, dy = p[0] - cx, p[1] - cy
        r = math.hypot(dx, dy)
        a = self.angle(r)
        c, s = math.cos(a), math.sin(a)
        return np.array([cx + c * dx - s * dy, cy + s * dx + c * dy])

    def velocity_field(self):
        """Planar field rotating at angular speed phi(r); divergence free."""

        def field(p):
            cx, cy = self.center
            dx, dy = p[0] - cx, p[1] - cy
            w = self.angular_speed(math.hypot(dx, dy))
            return np.array([-w * dy, w * dx])

        return field


def compose(*maps):
    def composed(p):
        for m in reversed(maps):
            p = m(p)
        return np.asarray(p, dtype=float)

    return composed


def half_turn_rho(r_in=0.5, r_out=0.9):
    """Clockwise half-turn of the inner disc, fading out before the boundary."""
    return TwistMap((0.0, 0.0), r_in, r_out, -math.pi)


def sector_swap_sigma(center=(0.35, 0.0), r_in=0.18, r_out=0.3):
    """Half-turn of a small off-center disc; swaps two opposite sectors."""
    return TwistMap(center, r_in, r_out, math.pi)


def numeric_jacobian(f, p, h=1e-6):
    """Central-difference Jacobian of a planar map at p."""
    p = np.asarray(p, dtype=float)
    J = np.empty((2, 2))
    for j in range(2):
        e = np.zeros(2)
        e[j] = h
        J[:, j] = (np.asarray(f(p + e)) - np.asarray(f(p - e))) / (2.0 * h)
    return J


def jacobian_det(f, p, h=1e-6):
    J = numeric_jacobian(f, p, h)
    return J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]


def sample_disc_points(n, seed, radius=1.0):
    """Deterministic points of the open disc of the given radius."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        p = rng.uniform(-radius, radius, size=2)
        if p[0] ** 2 + p[1] ** 2 < radius**2:
            pts.append(p)
    return np.array(pts)
