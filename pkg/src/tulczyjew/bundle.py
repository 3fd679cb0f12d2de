"""The product principal bundle Q = G x R^n with a polynomial connection.

The group acts on the left, g'.(g, x) = (g'g, x).  The connection is
A(g, x; gdot, xdot) = Ad_g(g^-1 gdot + a(x) xdot) with a(x) a polynomial
table of g-valued 1-forms on R^n.  Cotangent vectors are stored
left-trivialized: (m, y) acts on (gdot, xdot) by <m, g^-1 gdot> + y.xdot.

Second-order ambient records (elements of TTQ, TT*Q, T*TQ, T*T*Q, TTT*Q) are
defined here as plain containers; the maps between them live in
``intrinsic`` and ``trivialize``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import LieGroup, group, tg_pair
from .numerics import Dual, deriv, new_tag, value


# --- scenarios -----------------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    """One bundle instance: group, base dimension and connection table.

    ``terms`` is a tuple of (coefficient, exponents): a(x) is the sum of
    coefficient * prod_i x_i**exponents[i], each coefficient a (dim g) x n
    matrix whose column j is the g-valued coefficient of dx_j.
    """

    name: str
    group_tag: str
    n: int
    terms: tuple = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("base dimension must be positive")
        k = group(self.group_tag).dim
        for coef, exps in self.terms:
            if np.shape(coef) != (k, self.n) or len(exps) != self.n:
                raise ValueError("connection term has the wrong shape")

    @property
    def G(self) -> LieGroup:
        return group(self.group_tag)

    @property
    def k(self) -> int:
        return self.G.dim


def _term(coef, exps):
    return (np.asarray(coef, dtype=float), tuple(int(e) for e in exps))


def flat(group_tag: str = "SO2", n: int = 2) -> Scenario:
    return Scenario("flat" if group_tag == "SO2" else f"flat-{group_tag.lower()}", group_tag, n, ())


def monopole() -> Scenario:
    # a = 1/2 (-x2 dx1 + x1 dx2)
    return Scenario("monopole", "SO2", 2, (
        _term([[-0.5, 0.0]], (0, 1)),
        _term([[0.0, 0.5]], (1, 0)),
    ))


def so3_generic() -> Scenario:
    # a = (x2 e1) dx1 + (x1 e2) dx2
    c1 = np.zeros((3, 2))
    c1[0, 0] = 1.0
    c2 = np.zeros((3, 2))
    c2[1, 1] = 1.0
    return Scenario("so3-generic", "SO3", 2, (_term(c1, (0, 1)), _term(c2, (1, 0))))


SCENARIOS = {
    "flat": flat,
    "flat-so3": lambda: flat("SO3"),
    "monopole": monopole,
    "so3-generic": so3_generic,
}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; known: {sorted(SCENARIOS)}") from None


def scenario_from_dict(d: dict) -> Scenario:
    """Scenario from a config mapping: a builtin ``name`` or an explicit table."""
    if "terms" not in d:
        return get_scenario(d["name"])
    terms = tuple(_term(t["coef"], t["exponents"]) for t in d["terms"])
    return Scenario(d["name"], d["group"], int(d["n"]), terms)


# --- points and (co)vectors ---------------------------------------------------------

@dataclass(frozen=True)
class BundlePoint:
    g: np.ndarray
    x: np.ndarray


@dataclass(frozen=True)
class BundleTangent:
    q: BundlePoint
    gdot: np.ndarray
    xdot: np.ndarray


@dataclass(frozen=True)
class BundleCotangent:
    q: BundlePoint
    m: np.ndarray
    y: np.ndarray


@dataclass(frozen=True)
class SecondTangent:
    """Element of TTQ: derivative (gp, xp, gdotp, xdotp) of a curve through v."""
    v: BundleTangent
    gp: np.ndarray
    xp: np.ndarray
    gdotp: np.ndarray
    xdotp: np.ndarray


@dataclass(frozen=True)
class CotangentTangent:
    """Element of TT*Q: derivative (gp, xp, mp, yp) of a curve through z."""
    z: BundleCotangent
    gp: np.ndarray
    xp: np.ndarray
    mp: np.ndarray
    yp: np.ndarray


@dataclass(frozen=True)
class TangentCovector:
    """Element of T*TQ at v.

    Pairs with W in T_v TQ through the fiber coordinates
    (g^-1 gp, d/ds (g^-1 gdot), xp, xdotp) with slots (pg, pw, a, b).
    """
    v: BundleTangent
    pg: np.ndarray
    pw: np.ndarray
    a: np.ndarray
    b: np.ndarray


@dataclass(frozen=True)
class CotangentCovector:
    """Element of T*T*Q at z, pairing with (g^-1 gp, xp, mp, yp)."""
    z: BundleCotangent
    pg: np.ndarray
    px: np.ndarray
    pm: np.ndarray
    py: np.ndarray


@dataclass(frozen=True)
class CotangentSecondTangent:
    """Element of TTT*Q: t-derivative of a curve Z(t) in TT*Q through Z."""
    Z: CotangentTangent
    gt: np.ndarray
    xt: np.ndarray
    mt: np.ndarray
    yt: np.ndarray
    gpt: np.ndarray
    xpt: np.ndarray
    mpt: np.ndarray
    ypt: np.ndarray


# --- connection data ---------------------------------------------------------------

def a_matrix(s: Scenario, x):
    """(dim g) x n matrix of the connection coefficients at x."""
    out = np.zeros((s.k, s.n))
    for coef, exps in s.terms:
        mono = 1.0
        for i, e in enumerate(exps):
            if e:
                mono = x[i] ** e * mono
        out = out + coef * mono
    return out


def conn(s: Scenario, g, x, gdot, xdot):
    """A(g, x; gdot, xdot) = Ad_g(g^-1 gdot + a(x) xdot)."""
    G = s.G
    return G.Ad(g, G.vee(g.T @ gdot) + a_matrix(s, x) @ xdot)


def hor(s: Scenario, g, x, u):
    """Group velocity of the horizontal lift of u at (g, x)."""
    return -(g @ s.G.hat(a_matrix(s, x) @ u))


def fund(s: Scenario, xi, g):
    """Group velocity of the fundamental field of xi at g."""
    return s.G.hat(xi) @ g


def lift_velocity(s: Scenario, g, x, zeta, xp):
    """gdot with Tpi = xp and connection value zeta: horizontal part plus zeta_Q."""
    return hor(s, g, x, xp) + fund(s, zeta, g)


def hstar(s: Scenario, x, m, y):
    """h*z for z = (m, y) left-trivialized: y - a(x)^T m."""
    return y - a_matrix(s, x).T @ m


def mom(s: Scenario, g, m):
    """Moment map of z = (g, x; m, y): Ad*_g m."""
    return s.G.Ad_star(g, m)


def connection_dual_raw(s: Scenario, g, x, mu):
    """A*_q mu as a left-trivialized covector (m, y)."""
    m = s.G.Ad_star(g.T, mu)
    return m, a_matrix(s, x).T @ m


def da(s: Scenario, x, u, w):
    """Exterior derivative of a at x on (u, w), by forward mode."""
    t = new_tag()
    xd = Dual(x, np.asarray(u, dtype=float), t)
    Du = deriv(a_matrix(s, xd), t)
    xd = Dual(x, np.asarray(w, dtype=float), t)
    Dw = deriv(a_matrix(s, xd), t)
    return Du @ w - Dw @ u


def curvature_raw(s: Scenario, x, u, w):
    A = a_matrix(s, x)
    return da(s, x, u, w) - s.G.bracket(A @ u, A @ w)


def curvature_at(s: Scenario, g, x, u, w):
    """Curvature of A on horizontal lifts of u, w at q = (g, x): Ad_g Bbar(x; u, w)."""
    return s.G.Ad(g, curvature_raw(s, x, u, w))


# --- typed operations -----------------------------------------------------------------

def connection_eval(s: Scenario, v: BundleTangent):
    return conn(s, v.q.g, v.q.x, v.gdot, v.xdot)


def fundamental_vector(s: Scenario, xi, q: BundlePoint) -> BundleTangent:
    return BundleTangent(q, fund(s, xi, q.g), np.zeros_like(q.x))


def horizontal_lift(s: Scenario, q: BundlePoint, u) -> BundleTangent:
    u = np.asarray(u, dtype=float)
    return BundleTangent(q, hor(s, q.g, q.x, u), u)


def tangent_projection(v: BundleTangent):
    return v.xdot


def curvature_base(s: Scenario, x, u, w):
    return curvature_raw(s, np.asarray(x, dtype=float), np.asarray(u, dtype=float),
                         np.asarray(w, dtype=float))


def connection_dual(s: Scenario, q: BundlePoint, mu) -> BundleCotangent:
    m, y = connection_dual_raw(s, q.g, q.x, mu)
    return BundleCotangent(q, m, y)


def horizontal_dual(s: Scenario, z: BundleCotangent):
    return hstar(s, z.q.x, z.m, z.y)


def moment_map(s: Scenario, z: BundleCotangent):
    return mom(s, z.q.g, z.m)


def pair_cotangent(z: BundleCotangent, v: BundleTangent) -> float:
    """<z, v> = <m, g^-1 gdot> + y.xdot (both at the same point)."""
    G = group("SO2" if np.shape(z.q.g)[0] == 2 else "SO3")
    return float(np.dot(z.m, G.vee(z.q.g.T @ v.gdot)) + np.dot(z.y, v.xdot))


def act_point(g0, q: BundlePoint) -> BundlePoint:
    return BundlePoint(g0 @ q.g, q.x)


def act_tangent(g0, v: BundleTangent) -> BundleTangent:
    return BundleTangent(act_point(g0, v.q), g0 @ v.gdot, v.xdot)


def act_cotangent(g0, z: BundleCotangent) -> BundleCotangent:
    # cotangent lift: the left-trivialized momentum is unchanged
    return BundleCotangent(act_point(g0, z.q), z.m, z.y)


# --- tangent-group action on TQ ---------------------------------------------------------

def tangent_action(s: Scenario, zg, v: BundleTangent) -> BundleTangent:
    """(xi, g).v = Tphi_g v + xi_Q(g . tau(v))."""
    xi, g0 = zg
    w = act_tangent(g0, v)
    return BundleTangent(w.q, w.gdot + fund(s, xi, w.q.g), w.xdot)


def fundamental_vector_TQ(s: Scenario, pair, v: BundleTangent) -> SecondTangent:
    """d/dt at 0 of exp(t(xi, eta)) . v under the tangent action, by forward mode.

    To first order exp(t(xi, eta)) = (t xi, exp(t eta)) in g x| G.
    """
    xi, eta = (np.asarray(c, dtype=float) for c in pair)
    t = new_tag()
    tt = Dual(0.0, 1.0, t)
    g0 = s.G.exp(Dual(np.zeros(s.k), eta, t))
    w = tangent_action(s, (tt * xi, g0), v)
    return SecondTangent(v, deriv(w.q.g, t), deriv(w.q.x, t) + 0 * v.q.x,
                         deriv(w.gdot, t), deriv(w.xdot, t) + 0 * v.xdot)


def tqq_fiber_coords(s: Scenario, W: SecondTangent):
    """Fiber coordinates (g^-1 gp, d/ds g^-1 gdot, xp, xdotp) of W in T_v TQ."""
    G = s.G
    g, gd = W.v.q.g, W.v.gdot
    return (G.vee(g.T @ W.gp), G.vee(W.gp.T @ gd + g.T @ W.gdotp), W.xp, W.xdotp)


def tqq_from_fiber(s: Scenario, v: BundleTangent, om_p, w_p, xp, xdotp) -> SecondTangent:
    G = s.G
    g = v.q.g
    omega = G.vee(g.T @ v.gdot)
    gp = g @ G.hat(om_p)
    return SecondTangent(v, gp, np.asarray(xp, dtype=float),
                         gp @ G.hat(omega) + g @ G.hat(w_p), np.asarray(xdotp, dtype=float))


def pair_TstarTQ(s: Scenario, U: TangentCovector, W: SecondTangent) -> float:
    c = tqq_fiber_coords(s, W)
    return float(np.dot(U.pg, c[0]) + np.dot(U.pw, c[1]) + np.dot(U.a, c[2]) + np.dot(U.b, c[3]))


def moment_map_TQ(s: Scenario, U: TangentCovector):
    """J_TQ with <J_TQ(U), (xi, eta)> = <U, (xi, eta)_TQ(v)> in the tangent pairing.

    Returns (mu, nu) where mu pairs with eta and nu pairs with xi.
    """
    k = s.k
    E = np.eye(k)
    z = np.zeros(k)
    mu = np.array([pair_TstarTQ(s, U, fundamental_vector_TQ(s, (z, E[i]), U.v)) for i in range(k)])
    nu = np.array([pair_TstarTQ(s, U, fundamental_vector_TQ(s, (E[i], z), U.v)) for i in range(k)])
    return mu, nu


def check_tangent_pair(mu_nu, xi_eta, expected):
    """Helper used by tests: tangent pairing of a J_TQ value with (xi, eta)."""
    return tg_pair(mu_nu, xi_eta) - expected


__all__ = [n for n in dir() if not n.startswith("_")] + ["value"]
