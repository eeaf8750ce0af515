"""Horizontal lifts on the product chart disc x torus, and the end-to-end
halting/reachability harness.

Chart coordinates are (x1, x2, y1, y2): a planar field X lifts to
X^1 d_x1 + X^2 d_x2 with both fiber components identically zero, so fiber
coordinates are carried through every trajectory bit for bit.  The product
symplectic form is the sum of the two area forms and the invariant volume
has constant density one.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cantor import disc_map, embed_square_in_disc, encode_point, gs_to_block_map, halting_region
from .gshift import composite_alphabet, encode_config, tm_to_gs
from .tm import initial_config, normalize_config, run_bounded

# product symplectic matrix: omega(u, v) = u . OMEGA4 @ v
OMEGA4 = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


@dataclass(frozen=True)
class ProductState:
    x1: float
    x2: float
    y1: float
    y2: float

    def horizontal(self):
        return np.array([self.x1, self.x2])

    def fiber(self):
        return (self.y1, self.y2)


def make_state(x1, x2, y1, y2):
    if x1 * x1 + x2 * x2 > 1.0 + 1e-12:
        raise ValueError("horizontal part outside the closed unit disc")
    return ProductState(x1, x2, y1 % 1.0, y2 % 1.0)


@dataclass(frozen=True)
class LiftedField:
    """Horizontal planar field with structurally zero fiber components."""

    planar: object  # (2,) -> (2,)
    label: str = ""

    def horizontal(self, xy):
        return np.asarray(self.planar(np.asarray(xy, dtype=float)), dtype=float)

    def __call__(self, state4):
        out = np.zeros(4)
        out[:2] = self.horizontal(np.asarray(state4, dtype=float)[:2])
        return out


def lift_vf(planar, label="") -> LiftedField:
    return LiftedField(planar, label)


def one_form_of_field_2d(X, xy):
    """iota_X of the planar area form dx1 ^ dx2, as a covector."""
    a, b = X(np.asarray(xy, dtype=float))
    return np.array([-b, a])


def lift_identity_residual(field, state4):
    """Residual of iota_Xbar omega4 against the pulled-back planar pairing."""
    s = np.asarray(state4, dtype=float)
    lhs = field(s) @ OMEGA4
    rhs = np.zeros(4)
    rhs[:2] = one_form_of_field_2d(field.horizontal, s[:2])
    return float(np.max(np.abs(lhs - rhs)))


_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _gauss_segments(breaks):
    """Gauss nodes and weights on [0,1] split at interior breakpoints."""
    pts = [0.0] + sorted(b for b in breaks if 0.0 < b < 1.0) + [1.0]
    nodes, weights = [], []
    for a, b in zip(pts[:-1], pts[1:]):
        half = 0.5 * (b - a)
        nodes.extend(half * _GAUSS_NODES + 0.5 * (a + b))
        weights.extend(half * _GAUSS_WEIGHTS)
    return np.array(nodes), np.array(weights)


def divergence_2d(X, xy, h=1e-5):
    xy = np.asarray(xy, dtype=float)
    ex, ey = np.array([h, 0.0]), np.array([0.0, h])
    return (X(xy + ex)[0] - X(xy - ex)[0] + X(xy + ey)[1] - X(xy - ey)[1]) / (2.0 * h)


def check_area_preserving(X, tol=1e-6, grid=9):
    """Divergence proxy for area preservation, on a fixed grid in the disc."""
    for a in np.linspace(-0.9, 0.9, grid):
        for b in np.linspace(-0.9, 0.9, grid):
            if a * a + b * b >= 1.0:
                continue
            d = divergence_2d(X, (a, b))
            if abs(d) > tol:
                raise ValueError(f"field is not area preserving: div={d:.3e} at ({a:.2f},{b:.2f})")


def hamiltonian_from_field(X, radial_breaks=(), check=True):
    """Potential of an area-preserving planar field, by radial line integral.

    Returns h with dh = iota_X omega up to the package sign convention
    (iota_X omega = -dh), normalised to h(0) = 0.  ``radial_breaks`` lists
    radii where the field is only piecewise smooth; the quadrature splits
    there.
    """
    if check:
        check_area_preserving(X)

    def h(p):
        p = np.asarray(p, dtype=float)
        r = float(np.hypot(p[0], p[1]))
        if r == 0.0:
            return 0.0
        breaks = [rb / r for rb in radial_breaks if 0.0 < rb < r]
        nodes, weights = _gauss_segments(breaks)
        total = 0.0
        for s, w in zip(nodes, weights):
            cov = one_form_of_field_2d(X, s * p)
            total += w * float(cov @ p)
        return -total

    return h


class ProductVolume:
    """Invariant volume of the product chart: constant density one."""

    def density(self, state4):
        return 1.0

    def lie_derivative_along(self, field, state4):
        """Divergence of the lifted field; zero for area-preserving X."""
        return divergence_2d(field.horizontal, np.asarray(state4, dtype=float)[:2])


def invariant_volume() -> ProductVolume:
    return ProductVolume()


class IntegrationError(RuntimeError):
    def __init__(self, step, state, residual):
        super().__init__(f"implicit solve stalled at step {step}, state {state}, residual {residual:.3e}")
        self.step = step
        self.state = state


@dataclass(frozen=True)
class Trajectory:
    states: tuple  # ProductState at every multiple of dt
    dt: float

    def horizontal_array(self):
        return np.array([[s.x1, s.x2] for s in self.states])


def _implicit_midpoint_step(X, x, dt, tol, max_iter, jac_h=1e-7):
    z = x + dt * X(x)  # explicit Euler predictor
    for _ in range(max_iter):
        mid = 0.5 * (x + z)
        res = z - x - dt * X(mid)
        if float(np.max(np.abs(res))) < tol:
            return z
        J = np.empty((2, 2))
        for j in range(2):
            e = np.zeros(2)
            e[j] = jac_h
            J[:, j] = (X(mid + e) - X(mid - e)) / (2.0 * jac_h)
        A = np.eye(2) - 0.5 * dt * J
        z = z - np.linalg.solve(A, res)
    return None


def flow_integrate(field, s0, t, dt, newton_tol=1e-12, max_iter=50) -> Trajectory:
    """Implicit-midpoint trajectory; fiber coordinates are copied, not
    integrated, so they stay bit-identical along the whole trajectory."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    n = int(round(t / dt))
    fiber = (s0.y1, s0.y2)
    x = np.array([s0.x1, s0.x2])
    states = [s0]
    for k in range(n):
        x2 = _implicit_midpoint_step(field.horizontal, x, dt, newton_tol, max_iter)
        if x2 is None:
            raise IntegrationError(k, tuple(x), newton_tol)
        x = x2
        states.append(ProductState(float(x[0]), float(x[1]), fiber[0], fiber[1]))
    return Trajectory(tuple(states), dt)


def flow_map_jacobian_det(field, s0, t, dt, h=1e-4):
    """Numeric determinant of the time-t flow map differential at s0.

    Fiber directions contribute an exact identity block, so only the
    horizontal 2x2 block is integrated.
    """
    base = np.array([s0.x1, s0.x2])
    J = np.empty((2, 2))
    for j in range(2):
        e = np.zeros(2)
        e[j] = h
        sp = ProductState(*(base + e), s0.y1, s0.y2)
        sm = ProductState(*(base - e), s0.y1, s0.y2)
        fp = flow_integrate(field, sp, t, dt).states[-1].horizontal()
        fm = flow_integrate(field, sm, t, dt).states[-1].horizontal()
        J[:, j] = (fp - fm) / (2.0 * h)
    return float(J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0])


@dataclass(frozen=True)
class HarnessResult:
    machine: str
    enters_at: object  # int | None
    halts_at: object  # int | None (halt-state halts only)
    budget: int
    orbit: tuple  # exact disc points, one per step

    @property
    def agrees(self):
        return self.enters_at == self.halts_at

    def summary(self):
        verdict = f"enters_at={self.enters_at}" if self.enters_at is not None else f"not_within={self.budget}"
        return f"{self.machine} {verdict} halts_at={self.halts_at} agree={self.agrees}"


@dataclass(frozen=True)
class CompiledChain:
    tm: object
    gs: object
    block_map: object
    region: object

    def start_point(self, config):
        seq = encode_config(self.tm, config)
        return embed_square_in_disc(encode_point(seq, composite_alphabet(self.tm)))


def compile_chain(tm) -> CompiledChain:
    gs = tm_to_gs(tm)
    m = gs_to_block_map(gs)
    return CompiledChain(tm, gs, m, halting_region(m, tm.halt))


def reachability_harness(tm, n_max, config=None, chain=None, name="tm") -> HarnessResult:
    """Iterate the compiled disc dynamics and compare against direct simulation.

    The starting state is the embedded encoding of the initial configuration
    with fiber point (0, 0); the dynamics never moves the fiber, so membership
    in the lifted open set reduces to the horizontal factor.  Agreement means:
    the orbit enters the halting region at step n iff the machine reaches its
    halt state at step n.
    """
    chain = chain or compile_chain(tm)
    config = normalize_config(tm, config) if config is not None else None
    if config is None:
        from .tm import initial_config

        config = initial_config(tm)
    q = chain.start_point(config)
    orbit = [q]
    enters_at = None
    for k in range(n_max + 1):
        if chain.region.contains_disc(q):
            enters_at = k
            break
        if k == n_max:
            break
        q = disc_map(chain.block_map, q)
        orbit.append(q)
    trace = run_bounded(tm, config, n_max)
    halts_at = trace.steps if trace.halted and trace.final.state == tm.halt else None
    return HarnessResult(name, enters_at, halts_at, n_max, tuple(orbit))
