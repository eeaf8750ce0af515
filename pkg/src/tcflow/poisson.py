"""Numeric Poisson calculus on a 4-dimensional coordinate chart.

Chart coordinates are q = (theta, x1, x2, x3); all derivatives are central
finite differences with step H_STEP on O(1)-scaled charts.

Sign conventions, fixed once and used by every oracle in the package:

  * a bivector is the antisymmetric coefficient matrix P with P[i][j] = pi^ij,
  * sharp maps a 1-form to the field  (#a)^i = sum_j pi^ij a_j,  i.e.  P @ a,
  * the pairing is  pi(a, b) = b . (P @ a),  so  b(#a) = pi(a, b)  holds
    identically,
  * the Hamiltonian field of h is  X_h = #(dh),  and  {f, g} = pi(df, dg)
    equals the derivative of g along X_f.

Under these conventions the radial normal-form structure below satisfies
{x2, x3} = -k x1, {x1, x3} = -k x2, {x1, x2} = k x3.
"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

H_STEP = 1e-5
RANK_CUTOFF = 1e-8
DELTA_TUBE = 1e-3

IJ = tuple(combinations(range(4), 2))
IJK = tuple(combinations(range(4), 3))


@dataclass(frozen=True)
class ScalarField:
    fn: object
    label: str = ""

    def __call__(self, q):
        return float(self.fn(q))


@dataclass(frozen=True)
class VectorField:
    fn: object  # q -> ndarray(4,)
    label: str = ""

    def __call__(self, q):
        return np.asarray(self.fn(q), dtype=float)


@dataclass(frozen=True)
class VolumeForm:
    """Positive density times the coordinate volume element."""

    density: object  # q -> positive float
    label: str = ""

    def rho(self, q):
        r = float(self.density(q))
        if r <= 0:
            raise ValueError(f"volume density must be positive, got {r} at {q}")
        return r


EUCLIDEAN_VOLUME = VolumeForm(lambda q: 1.0, "euclidean")


@dataclass(frozen=True)
class Bivector:
    """Six upper-triangular coefficient fields pi^ij, i < j."""

    coeffs: dict  # (i, j) with i < j -> callable q -> float
    label: str = ""

    def coeff(self, i, j, q):
        if i == j:
            return 0.0
        if i < j:
            return float(self.coeffs.get((i, j), _zero)(q))
        return -float(self.coeffs.get((j, i), _zero)(q))

    def matrix(self, q):
        P = np.zeros((4, 4))
        for (i, j), f in self.coeffs.items():
            v = float(f(q))
            P[i, j] = v
            P[j, i] = -v
        return P


def _zero(q):
    return 0.0


def grad(f, q, h=H_STEP):
    """Central-difference gradient, one column per coordinate."""
    q = np.asarray(q, dtype=float)
    g = np.empty(4)
    for j in range(4):
        e = np.zeros(4)
        e[j] = h
        g[j] = (f(q + e) - f(q - e)) / (2.0 * h)
    return g


def d_one_form(f):
    """The exact 1-form df as a coefficient function."""
    return lambda q: grad(f, q)


def sharp(biv, alpha) -> VectorField:
    """#alpha = P @ alpha for a 1-form given by its coefficient function."""
    return VectorField(lambda q: biv.matrix(q) @ np.asarray(alpha(q), dtype=float))


def pair(biv, alpha, beta, q):
    """pi(alpha, beta), evaluated componentwise (independent of sharp)."""
    a = np.asarray(alpha(q), dtype=float)
    b = np.asarray(beta(q), dtype=float)
    return sum(biv.coeff(i, j, q) * (b[i] * a[j] - b[j] * a[i]) for i, j in IJ)


def hamiltonian_vf(biv, h) -> VectorField:
    return sharp(biv, d_one_form(h))


def poisson_bracket(biv, f, g):
    """{f, g} as a scalar field."""
    return lambda q: pair(biv, d_one_form(f), d_one_form(g), q)


def schouten_square(biv, q, h=H_STEP):
    """Components of the self-bracket [[pi, pi]] at q, keyed by i<j<k.

    [[pi,pi]]^ijk = 2 sum_l (pi^li d_l pi^jk + pi^lj d_l pi^ki + pi^lk d_l pi^ij).
    All four components vanish iff the Jacobi identity holds at q.
    """
    q = np.asarray(q, dtype=float)

    def dcoeff(l, i, j):
        e = np.zeros(4)
        e[l] = h
        return (biv.coeff(i, j, q + e) - biv.coeff(i, j, q - e)) / (2.0 * h)

    out = {}
    for i, j, k in IJK:
        s = 0.0
        for l in range(4):
            s += biv.coeff(l, i, q) * dcoeff(l, j, k)
            s += biv.coeff(l, j, q) * dcoeff(l, k, i)
            s += biv.coeff(l, k, q) * dcoeff(l, i, j)
        out[(i, j, k)] = 2.0 * s
    return out


def normal_form_bivector(k, flip_sign=False) -> Bivector:
    """Radial rank-2 structure on the chart:

        pi^23 = k x1,  pi^13 = k x2,  pi^12 = -k x3,

    with every theta component zero; k must be non-vanishing.  The
    coefficients vanish jointly only on the circle {x = 0}.
    """
    s = -1.0 if flip_sign else 1.0
    return Bivector(
        {
            (2, 3): lambda q: s * k(q) * q[1],
            (1, 3): lambda q: s * k(q) * q[2],
            (1, 2): lambda q: -s * k(q) * q[3],
        },
        label="radial-normal-form",
    )


def check_nonvanishing(k, points, tol=1e-12):
    bad = [q for q in points if abs(k(q)) <= tol]
    if bad:
        raise ValueError(f"scale function vanishes at sampled point {bad[0]}")


def broken_bivector() -> Bivector:
    """Fails Jacobi: pi = d1^d2 + q1 d3^d4 in 1-based labels."""
    return Bivector({(0, 1): lambda q: 1.0, (2, 3): lambda q: q[0]}, label="broken")


def divergence(vf, vol, q, h=H_STEP):
    """div_Omega V = (1/rho) sum_i d_i(rho V^i)."""
    q = np.asarray(q, dtype=float)
    s = 0.0
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        qp, qm = q + e, q - e
        s += (vol.rho(qp) * vf(qp)[i] - vol.rho(qm) * vf(qm)[i]) / (2.0 * h)
    return s / vol.rho(q)


def modular_vf(biv, vol) -> VectorField:
    """Modular field: component i is the Omega-divergence of #(dq^i)."""
    columns = [sharp(biv, _const_form(i)) for i in range(4)]
    return VectorField(
        lambda q: np.array([divergence(columns[i], vol, q) for i in range(4)]),
        label=f"modular[{vol.label}]",
    )


def _const_form(i):
    e = np.zeros(4)
    e[i] = 1.0
    return lambda q: e


def lie_derivative_one_form(X, beta, q, h=H_STEP):
    """(L_X beta)_i = sum_j (X^j d_j beta_i + beta_j d_i X^j)."""
    q = np.asarray(q, dtype=float)
    Xq = np.asarray(X(q), dtype=float)
    out = np.zeros(4)
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        bp = np.asarray(beta(q + e), dtype=float)
        bm = np.asarray(beta(q - e), dtype=float)
        Xp = np.asarray(X(q + e), dtype=float)
        Xm = np.asarray(X(q - e), dtype=float)
        out += Xq[i] * (bp - bm) / (2.0 * h)  # accumulate sum_j X^j d_j beta over j=i
        bq = np.asarray(beta(q), dtype=float)
        out[i] += bq @ ((Xp - Xm) / (2.0 * h))
    return out


def one_form_bracket(biv, alpha, beta):
    """[alpha, beta]_pi = L_{#alpha} beta - L_{#beta} alpha - d(pi(alpha, beta))."""
    Xa = sharp(biv, alpha)
    Xb = sharp(biv, beta)

    def bracket(q):
        t1 = lie_derivative_one_form(Xa, beta, q)
        t2 = lie_derivative_one_form(Xb, alpha, q)
        t3 = grad(lambda p: pair(biv, alpha, beta, p), q)
        return t1 - t2 - t3

    return bracket


def vf_bracket(X, Y, q, h=H_STEP):
    """Lie bracket of vector fields, [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i."""
    q = np.asarray(q, dtype=float)
    Xq, Yq = X(q), Y(q)
    out = np.zeros(4)
    for j in range(4):
        e = np.zeros(4)
        e[j] = h
        dY = (Y(q + e) - Y(q - e)) / (2.0 * h)
        dX = (X(q + e) - X(q - e)) / (2.0 * h)
        out += Xq[j] * dY - Yq[j] * dX
    return out


def lie_derivative_bivector(biv, X, q, h=H_STEP):
    """(L_X pi)^ij = sum_l (X^l d_l pi^ij - pi^lj d_l X^i - pi^il d_l X^j)."""
    q = np.asarray(q, dtype=float)
    Xq = np.asarray(X(q), dtype=float)
    out = {}
    dX = np.empty((4, 4))  # dX[l, i] = d_l X^i
    for l in range(4):
        e = np.zeros(4)
        e[l] = h
        dX[l] = (np.asarray(X(q + e)) - np.asarray(X(q - e))) / (2.0 * h)
    for i, j in IJ:
        s = 0.0
        for l in range(4):
            e = np.zeros(4)
            e[l] = h
            s += Xq[l] * (biv.coeff(i, j, q + e) - biv.coeff(i, j, q - e)) / (2.0 * h)
            s -= biv.coeff(l, j, q) * dX[l, i]
            s -= biv.coeff(i, l, q) * dX[l, j]
        out[(i, j)] = s
    return out


def leaf_normal(q):
    """Unit normal of the symplectic leaf through q, inside the x-slice."""
    n = np.array([0.0, -q[1], q[2], q[3]])
    r = np.linalg.norm(n)
    if r == 0:
        raise ValueError("leaf degenerates on the singular circle {x = 0}")
    return n / r


def leaf_project(q, u):
    """Project a chart vector onto the leaf tangent space at q."""
    u = np.asarray(u, dtype=float).copy()
    u[0] = 0.0
    n = leaf_normal(q)
    return u - (u @ n) * n


def leaf_form(k, q, u, v):
    """Leaf area form: triple product with the oriented normal over k * |x|.

    Vectors not tangent to the leaf are projected first.
    """
    q = np.asarray(q, dtype=float)
    r = math.sqrt(q[1] ** 2 + q[2] ** 2 + q[3] ** 2)
    if r == 0:
        raise ValueError("leaf degenerates on the singular circle {x = 0}")
    u = leaf_project(q, u)[1:]
    v = leaf_project(q, v)[1:]
    n = leaf_normal(q)[1:]
    area = float(np.cross(u, v) @ n)
    return area / (k(q) * r)


def leaf_prefactor(k, q):
    q = np.asarray(q, dtype=float)
    r = math.sqrt(q[1] ** 2 + q[2] ** 2 + q[3] ** 2)
    return 1.0 / (k(q) * r)


def involution(q):
    """(theta, x1, x2, x3) -> (theta + pi, -x1, -x2, x3)."""
    q = np.asarray(q, dtype=float)
    return np.array([q[0] + math.pi, -q[1], -q[2], q[3]])


_INV_DIFF = np.diag([1.0, -1.0, -1.0, 1.0])


def involution_pushforward_residual(biv, q):
    """Max entry of di P(q) di^T - P(i(q)); zero iff the involution is a
    morphism of the structure at q."""
    P = biv.matrix(q)
    Pi = biv.matrix(involution(q))
    return float(np.max(np.abs(_INV_DIFF @ P @ _INV_DIFF.T - Pi)))


def fibration_value(y):
    """Local fibration model: complex value at (y1, y2, y3, t)."""
    y = np.asarray(y, dtype=float)
    return complex(y[0] ** 2 - (y[1] ** 2 + y[2] ** 2) / 2.0, y[3])


def fibration_rank(y, h=H_STEP, cutoff=RANK_CUTOFF):
    """Numeric rank of the 2x4 differential of the local model at y."""
    y = np.asarray(y, dtype=float)
    J = np.empty((2, 4))
    for j in range(4):
        e = np.zeros(4)
        e[j] = h
        dv = (fibration_value(y + e) - fibration_value(y - e)) / (2.0 * h)
        J[0, j] = dv.real
        J[1, j] = dv.imag
    sv = np.linalg.svd(J, compute_uv=False)
    return int(np.sum(sv > cutoff))


def fibration_local_model(y):
    """(complex value, differential rank) of the local model at y."""
    return fibration_value(y), fibration_rank(y)


def sample_chart_points(n, seed, exclude_delta=0.0):
    """Seeded points with theta in [0, 2pi) and x in [-1, 1]^3; points within
    ``exclude_delta`` of the singular circle {x = 0} are resampled."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        q = np.empty(4)
        q[0] = rng.uniform(0.0, 2.0 * math.pi)
        q[1:] = rng.uniform(-1.0, 1.0, size=3)
        if np.linalg.norm(q[1:]) > exclude_delta:
            pts.append(q)
    return np.array(pts)


K_FIXTURES = (
    ("one", lambda q: 1.0),
    ("2+sin_theta", lambda q: 2.0 + math.sin(q[0])),
    ("exp_x3", lambda q: math.exp(q[3])),
    ("2+sin2theta_x3", lambda q: 2.0 + math.sin(2.0 * q[0]) * q[3]),
)
