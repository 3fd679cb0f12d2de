"""Trivialized Tulczyjew maps and forms.

Curvature enters through B_q = Ad_g Bbar(x), the curvature of horizontal
lifts at q = (g, x); at g = e it is the base curvature Bbar.

The coadjoint terms written ad*_xi mu in the formulas are the infinitesimal
coadjoint action d/dt Ad*_{exp t xi} mu, which is ``-ad_star(xi, mu)`` under
the transpose convention of ``algebra.ad_star``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bundle as B
from .numerics import Dual, DEFAULT_TOL, deriv, exterior_derivative_fd, new_tag
from .trivialize import (TrivTQ, TrivTstarQ, TrivTstarTQ, TrivTstarTstarQ, TrivTTQ,
                         TrivTTstarQ, TrivTTTstarQ, act, hat_pair, hat_projection)


def coad(G, xi, mu):
    """Infinitesimal coadjoint action of xi on mu."""
    return -G.ad_star(xi, mu)


def B_at(s, q, u, w):
    return s.G.Ad(q.g, B.curvature_raw(s, q.x, u, w))


def B_mu_covector(s, q, mu, u):
    """Components j of <mu, B_q(u, e_j)>."""
    E = np.eye(s.n)
    return np.array([mu @ B_at(s, q, u, E[j]) for j in range(s.n)])


# --- base-level coordinate maps ----------------------------------------------------------

def kappa_base(U):
    x, xd, xp, xdp = U
    return (x, xp, xd, xdp)


def alpha_base(Y):
    """(x, y, xdot, ydot) -> K = (x, xdot; -ydot, -y)."""
    x, y, xd, yd = Y
    return (x, xd, -np.asarray(yd), -np.asarray(y))


def omega_flat_base(Y):
    """(x, y, xdot, ydot) -> L = (x, y; -ydot, xdot)."""
    x, y, xd, yd = Y
    return (x, y, -np.asarray(yd), np.asarray(xd))


def Omega_base(Y1, Y2):
    return float(Y1[2] @ Y2[3] - Y2[2] @ Y1[3])


# --- hat maps -----------------------------------------------------------------------------

def kappa_hat(t: TrivTTQ, s) -> TrivTTQ:
    G = s.G
    eta = t.eta + B_at(s, t.q, t.xdot, t.xprime) + G.bracket(t.xi, t.zeta)
    return TrivTTQ(t.q, t.xprime, t.xdot, t.xdotprime, t.zeta, eta, t.xi)


def alpha_hat(t: TrivTTstarQ, s) -> TrivTstarTQ:
    """The fifth input slot (named zeta on TT*Q) plays the role of xi."""
    G = s.G
    xi = t.zeta
    _, v, a, b = alpha_base((t.q.x, t.y, t.xdot, t.ydot))
    a = a - B_mu_covector(s, t.q, t.mu, t.xdot)
    return TrivTstarTQ(t.q, v, a, b, xi, coad(G, xi, t.mu) - t.nu, -t.mu)


def omega_flat_hat(t: TrivTTstarQ, s) -> TrivTstarTstarQ:
    G = s.G
    _, y, c, d = omega_flat_base((t.q.x, t.y, t.xdot, t.ydot))
    c = c - B_mu_covector(s, t.q, t.mu, t.xdot)
    return TrivTstarTstarQ(t.q, y, c, d, t.zeta, t.mu, coad(G, t.zeta, t.mu) - t.nu)


def theta_hat(t: TrivTstarQ) -> TrivTstarTstarQ:
    z = np.zeros_like(t.y)
    return TrivTstarTstarQ(t.q, t.y, t.y, z, np.zeros_like(t.mu), t.mu, t.mu)


def _same_foot(z1, z2, tol=1e-9):
    ok = (np.allclose(z1.q.g, z2.q.g, atol=tol) and np.allclose(z1.q.x, z2.q.x, atol=tol)
          and np.allclose(z1.y, z2.y, atol=tol) and np.allclose(z1.mu, z2.mu, atol=tol))
    if not ok:
        raise ValueError("arguments do not share a foot point (q, y, mu)")


def Omega_hat(z1: TrivTTstarQ, z2: TrivTTstarQ, s) -> float:
    _same_foot(z1, z2)
    G = s.G
    mu = z1.mu
    return float(z1.xdot @ z2.ydot - z2.xdot @ z1.ydot
                 - mu @ B_at(s, z1.q, z1.xdot, z2.xdot)
                 + z2.nu @ z1.zeta - z1.nu @ z2.zeta
                 + mu @ G.bracket(z2.zeta, z1.zeta))


# --- forms ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class TrivializedForm:
    """A k-form on trivialized T*Q ("T*Q") or trivialized TT*Q ("TT*Q").

    ``evaluator(point, vectors)`` takes the foot tuple and k tangent tuples
    (TrivTTstarQ for T*Q, TrivTTTstarQ for TT*Q) over it.
    """
    degree: int
    space: str
    evaluator: Callable
    scenario: object = None

    def __post_init__(self):
        if self.degree < 0 or self.space not in ("T*Q", "TT*Q"):
            raise ValueError("bad form degree or space")

    def __call__(self, point, *vectors):
        if len(vectors) != self.degree:
            raise ValueError(f"{self.degree}-form called on {len(vectors)} vectors")
        return self.evaluator(point, list(vectors))


class _Chart:
    """Flat chart p = (xi_g, base and group slots) around a foot tuple.

    The group slot of q is g0 exp(xi_g); chart vectors become tangent tuples
    with zeta (or delta) = A(g, x; g', dx) where g' comes from a dual-number
    exponential.
    """

    def __init__(self, s, space):
        self.s, self.space = s, space
        n, k = s.n, s.k
        if space == "T*Q":
            self.layout = [("x", n), ("y", n), ("mu", k)]
        else:
            self.layout = [("x", n), ("y", n), ("xdot", n), ("ydot", n), ("mu", k), ("nu", k),
                           ("zeta", k)]
        self.size = k + sum(d for _, d in self.layout)

    def _split(self, p):
        k = self.s.k
        out, i = {}, k
        for name, d in self.layout:
            out[name] = p[i:i + d]
            i += d
        return p[:k], out

    def coords(self, pt):
        vals = [np.zeros(self.s.k)] + [pt.q.x if nm == "x" else getattr(pt, nm)
                                      for nm, _ in self.layout]
        return np.concatenate(vals)

    def point(self, g0, p):
        xg, c = self._split(p)
        q = B.BundlePoint(g0 @ self.s.G.exp(xg), c["x"])
        if self.space == "T*Q":
            return TrivTstarQ(q, c["y"], c["mu"])
        return TrivTTstarQ(q, c["y"], c["xdot"], c["ydot"], c["zeta"], c["mu"], c["nu"])

    def vector(self, g0, p, v):
        s = self.s
        xg, c = self._split(p)
        dg, dc = self._split(v)
        t = new_tag()
        gt = g0 @ s.G.exp(Dual(xg, dg, t))
        g = g0 @ s.G.exp(xg)
        conn = B.conn(s, g, c["x"], deriv(gt, t), dc["x"])
        q = B.BundlePoint(g, c["x"])
        if self.space == "T*Q":
            return TrivTTstarQ(q, c["y"], dc["x"], dc["y"], conn, c["mu"], dc["mu"])
        return TrivTTTstarQ(q, c["y"], c["xdot"], c["ydot"], dc["x"], dc["y"], dc["xdot"],
                            dc["ydot"], c["zeta"], dc["zeta"], conn, c["mu"], c["nu"],
                            dc["mu"], dc["nu"])

    def direction(self, pt, vec):
        """Chart direction at coords(pt) of a tangent tuple over pt."""
        s = self.s
        if self.space == "T*Q":
            dx, zeta = vec.xdot, vec.zeta
            rest = {"x": vec.xdot, "y": vec.ydot, "mu": vec.nu}
        else:
            dx, zeta = vec.dx, vec.delta
            rest = {"x": vec.dx, "y": vec.dy, "xdot": vec.dxdot, "ydot": vec.dydot,
                    "mu": vec.mudot, "nu": vec.nudot, "zeta": vec.zetadot}
        dxi = s.G.Ad(pt.q.g.T, zeta) - B.a_matrix(s, pt.q.x) @ dx
        return np.concatenate([dxi] + [rest[nm] for nm, _ in self.layout])


def chart(s, space):
    return _Chart(s, space)


def exterior_d(form: TrivializedForm, h: float | None = None, richardson: bool = True):
    """Finite-difference exterior derivative in the flat chart around each foot."""
    s = form.scenario
    ch = _Chart(s, form.space)
    step = DEFAULT_TOL.fd_step if h is None else h

    def ev(pt, vecs):
        g0 = pt.q.g
        p0 = ch.coords(pt)
        dirs = [ch.direction(pt, v) for v in vecs]

        def f(p, vs):
            return form.evaluator(ch.point(g0, p), [ch.vector(g0, p, w) for w in vs])

        return float(exterior_derivative_fd(f, p0, dirs, step, richardson))

    return TrivializedForm(form.degree + 1, form.space, ev, s)


def i_T_hat(form: TrivializedForm) -> TrivializedForm:
    """(k-1)-form on TT*Q: form(tau(X1), Ttau(X1), ..., Ttau(X_{k-1})) at the foot of Z.

    The first argument tau(X1) is the foot point Z itself, read as a tangent
    vector to T*Q.
    """
    if form.degree < 1:
        raise ValueError("i_T needs a form of degree >= 1")
    if form.space != "T*Q":
        raise ValueError("i_T acts on forms on trivialized T*Q")

    def ev(Z, Xs):
        base = hat_projection("tau_T*Q", Z)
        return form.evaluator(base, [Z] + [hat_projection("Ttau_T*Q", X) for X in Xs])

    return TrivializedForm(form.degree - 1, "TT*Q", ev, form.scenario)


def d_T_hat(form: TrivializedForm, h: float | None = None) -> TrivializedForm:
    """d i_T + i_T d, both exterior derivatives by finite differences."""
    a = exterior_d(i_T_hat(form), h) if form.degree >= 1 else None
    b = i_T_hat(exterior_d(form, h))

    def ev(Z, Xs):
        out = b.evaluator(Z, Xs)
        if a is not None:
            out += a.evaluator(Z, Xs)
        return out

    return TrivializedForm(form.degree, "TT*Q", ev, form.scenario)


def theta_form(s) -> TrivializedForm:
    return TrivializedForm(1, "T*Q", lambda pt, vs: hat_pair("T*T*", theta_hat(pt), vs[0]), s)


def Omega_form(s) -> TrivializedForm:
    return TrivializedForm(2, "T*Q", lambda pt, vs: Omega_hat(vs[0], vs[1], s), s)


def vartheta1(s) -> TrivializedForm:
    """-i_T Omega_hat."""
    f = i_T_hat(Omega_form(s))
    return TrivializedForm(1, "TT*Q", lambda Z, Xs: -f.evaluator(Z, Xs), s)


def vartheta2(s, h: float | None = None) -> TrivializedForm:
    """d_T theta_hat, produced by the operators."""
    return d_T_hat(theta_form(s), h)


# --- closed form of the lifted symplectic form --------------------------------------------

TERM_GROUPS = ("base", "curvature", "mixed", "bracket")
READINGS = ("foot", "literal", "corrected")


def _dB(s, x, u, w, dirn):
    """Directional derivative of Bbar(x; u, w) along dirn."""
    t = new_tag()
    return deriv(B.curvature_raw(s, Dual(x, np.asarray(dirn, float), t), u, w), t)


def dT_Omega_terms(z1: TrivTTTstarQ, z2: TrivTTTstarQ, s, reading: str = "foot") -> dict:
    """Term groups of the closed-form lifted 2-form, evaluated in canonical gauge.

    ``reading`` selects the coalgebra weight of the exterior-derivative
    curvature term: "foot" uses the common mu, "literal" uses mudot_1.
    "corrected" is the foot reading with the two nonabelian repairs that the
    finite-difference oracle requires: the group variation of Ad_g Bbar in
    the curvature group, and the sign of [delta_1, delta_2] in the bracket
    group.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    for f in ("y", "xdot", "ydot", "mu", "nu", "zeta"):
        if not np.allclose(getattr(z1, f), getattr(z2, f), atol=1e-9):
            raise ValueError(f"arguments differ in the common slot {f}")
    if not (np.allclose(z1.q.g, z2.q.g) and np.allclose(z1.q.x, z2.q.x)):
        raise ValueError("arguments over different bundle points")
    G = s.G
    g = z1.q.g
    z1 = act(s, "TTT*Q", g.T, z1)
    z2 = act(s, "TTT*Q", g.T, z2)
    x, xd = z1.q.x, z1.xdot
    mu, nu, zeta = z1.mu, z1.nu, z1.zeta
    Bb = lambda u, w: B.curvature_raw(s, x, u, w)  # noqa: E731

    base = (z1.dydot @ z2.dx - z2.dydot @ z1.dx + z1.dy @ z2.dxdot - z2.dy @ z1.dxdot)

    w = z1.mudot if reading == "literal" else mu
    d_iTB = (w @ (_dB(s, x, xd, z2.dx, z1.dx) - _dB(s, x, xd, z1.dx, z2.dx))
             + w @ (Bb(z1.dxdot, z2.dx) - Bb(z2.dxdot, z1.dx)))
    curv = d_iTB + z1.mudot @ Bb(xd, z2.dx) - z2.mudot @ Bb(xd, z1.dx)

    mixed = ((coad(G, z2.delta, mu) - z2.mudot) @ z1.zetadot
             + (z1.nudot - coad(G, zeta, z1.mudot)) @ z2.delta
             + (z1.mudot - coad(G, z1.delta, mu)) @ z2.zetadot
             + (coad(G, zeta, z2.mudot) - z2.nudot) @ z1.delta)

    if reading == "corrected":
        a = B.a_matrix(s, x)
        s1, s2 = z1.delta - a @ z1.dx, z2.delta - a @ z2.dx
        curv += mu @ (G.bracket(s1, Bb(xd, z2.dx)) - G.bracket(s2, Bb(xd, z1.dx)))
        c = Bb(z1.dx, z2.dx) + G.bracket(z1.delta, z2.delta)
    else:
        c = Bb(z1.dx, z2.dx) - G.bracket(z1.delta, z2.delta)
    brk = coad(G, c, mu) @ zeta + nu @ c
    return {"base": float(base), "curvature": float(curv), "mixed": float(mixed),
            "bracket": float(brk)}


def dT_Omega_hat(z1dot: TrivTTTstarQ, z2dot: TrivTTTstarQ, s, reading: str = "foot") -> float:
    return float(sum(dT_Omega_terms(z1dot, z2dot, s, reading).values()))
