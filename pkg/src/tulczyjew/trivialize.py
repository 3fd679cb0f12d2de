"""Connection-induced trivializations of the iterated (co)tangent bundles.

Every trivialized tuple keeps the bundle point q = (g, x) and splits the rest
into base slots (living on the base R^n and its iterated bundles) and group
slots (algebra or coalgebra coefficient vectors).

Tangent spaces are encoded uniformly: a tangent vector to a trivialized
space at (q, rest) is the tuple (q, rest, derivative of rest, zeta) where
zeta = A(g'), the connection value of the velocity of q.  The second-order
lambda maps are obtained by pushing dual-number curves through the
first-order maps; the two dual maps (onto T*TQ and T*T*Q) are the fiberwise
transposes of the maps onto TTQ and TT*Q under the natural pairings.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

import numpy as np

from . import bundle as B
from .algebra import TagMismatch
from .bundle import (BundleCotangent, BundlePoint, BundleTangent, CotangentCovector,
                     CotangentSecondTangent, CotangentTangent, Scenario, SecondTangent,
                     TangentCovector)
from .numerics import Dual, concat, deriv, new_tag, real_part, value

SPACES = ("TQ", "T*Q", "TTQ", "TT*Q", "T*TQ", "T*T*Q", "TTT*Q")


# --- tuples ---------------------------------------------------------------------------------

class _Triv:
    """Shared helpers; subclasses list base, algebra and coalgebra slot names."""

    space = ""
    base_slots: tuple = ()
    alg_slots: tuple = ()
    coalg_slots: tuple = ()

    def slots(self):
        return self.base_slots + self.alg_slots + self.coalg_slots

    def flat(self):
        parts = [np.ravel(self.q.g), self.q.x] + [getattr(self, f) for f in self.slots()]
        return concat(parts)

    def map_group_slots(self, fa, fc):
        kw = {f: fa(getattr(self, f)) for f in self.alg_slots}
        kw.update({f: fc(getattr(self, f)) for f in self.coalg_slots})
        return replace(self, **kw)


def _tuple(name, space, base, alg, coalg, doc):
    ann = {"q": BundlePoint}
    for f in base + alg + coalg:
        ann[f] = np.ndarray
    ns = {"__annotations__": ann, "__doc__": doc, "space": space, "base_slots": base,
          "alg_slots": alg, "coalg_slots": coalg, "__module__": __name__}
    return dataclass(frozen=True)(type(name, (_Triv,), ns))


TrivTQ = _tuple("TrivTQ", "TQ", ("u",), ("xi",), (), "(q, u, xi): TQ split by the connection.")
TrivTstarQ = _tuple("TrivTstarQ", "T*Q", ("y",), (), ("mu",), "(q, y, mu): T*Q split by the connection.")
TrivTTQ = _tuple("TrivTTQ", "TTQ", ("xdot", "xprime", "xdotprime"), ("xi", "eta", "zeta"), (),
                 "(q, U, xi, eta, zeta) with U = (x, xdot, xprime, xdotprime).")
TrivTTstarQ = _tuple("TrivTTstarQ", "TT*Q", ("y", "xdot", "ydot"), ("zeta",), ("mu", "nu"),
                     "(q, Y, mu, nu, zeta) with Y = (x, y, xdot, ydot).")
TrivTstarTQ = _tuple("TrivTstarTQ", "T*TQ", ("v", "a", "b"), ("zeta",), ("mu", "nu"),
                     "(q, K, mu, nu, zeta) with K = (x, v; a, b), a pairing x' and b pairing xdot'.")
TrivTstarTstarQ = _tuple("TrivTstarTstarQ", "T*T*Q", ("y", "c", "d"), ("eta",), ("mu", "rho"),
                         "(q, L, mu, eta, rho) with L = (x, y; c, d), c pairing xdot and d pairing ydot.")
TrivTTTstarQ = _tuple("TrivTTTstarQ", "TTT*Q",
                      ("y", "xdot", "ydot", "dx", "dy", "dxdot", "dydot"),
                      ("zeta", "zetadot", "delta"), ("mu", "nu", "mudot", "nudot"),
                      "(q, Y', mu, nu, mudot, nudot, zeta, zetadot, delta); Y' holds eight base slots.")

TUPLES = {c.space: c for c in (TrivTQ, TrivTstarQ, TrivTTQ, TrivTTstarQ, TrivTstarTQ,
                              TrivTstarTstarQ, TrivTTTstarQ)}

INTRINSIC = {"TQ": BundleTangent, "T*Q": BundleCotangent, "TTQ": SecondTangent,
             "TT*Q": CotangentTangent, "T*TQ": TangentCovector, "T*T*Q": CotangentCovector,
             "TTT*Q": CotangentSecondTangent}


def TTQ_U(t):
    return (t.q.x, t.xdot, t.xprime, t.xdotprime)


def TTstarQ_Y(t):
    return (t.q.x, t.y, t.xdot, t.ydot)


def _check(space, obj, table):
    if space not in table:
        raise TagMismatch(f"unknown space {space!r}")
    if not isinstance(obj, table[space]):
        raise TagMismatch(f"expected {table[space].__name__} for {space}, got {type(obj).__name__}")


# --- first-order maps on raw data ------------------------------------------------------------

def _lam_T(s, g, x, gd, xd):
    return xd, B.conn(s, g, x, gd, xd)


def _lam_T_inv(s, g, x, u, xi):
    return B.lift_velocity(s, g, x, xi, u)


def _lam_Ts(s, g, x, m, y):
    return B.hstar(s, x, m, y), B.mom(s, g, m)


def _lam_Ts_inv(s, g, x, y, mu):
    m = s.G.Ad_star(g.T, mu)
    return m, y + B.a_matrix(s, x).T @ m


def _curve(val, der, t):
    return Dual(val, der, t)


# --- TTQ -----------------------------------------------------------------------------------

def _lam_TT(s, W):
    v = W.v
    g, x = v.q.g, v.q.x
    t = new_tag()
    _, A = _lam_T(s, _curve(g, W.gp, t), _curve(x, W.xp, t),
                  _curve(v.gdot, W.gdotp, t), _curve(v.xdot, W.xdotp, t))
    return TrivTTQ(v.q, v.xdot, W.xp, W.xdotp, value(A, t), deriv(A, t),
                   B.conn(s, g, x, W.gp, W.xp))


def _lam_TT_inv(s, T):
    g, x = T.q.g, T.q.x
    gp = B.lift_velocity(s, g, x, T.zeta, T.xprime)
    t = new_tag()
    gd = _lam_T_inv(s, _curve(g, gp, t), _curve(x, T.xprime, t),
                    _curve(T.xdot, T.xdotprime, t), _curve(T.xi, T.eta, t))
    v = BundleTangent(T.q, value(gd, t), T.xdot)
    return SecondTangent(v, gp, T.xprime, deriv(gd, t), T.xdotprime)


# --- TT*Q ----------------------------------------------------------------------------------

def _lam_TTs(s, Z):
    z = Z.z
    g, x = z.q.g, z.q.x
    t = new_tag()
    y, mu = _lam_Ts(s, _curve(g, Z.gp, t), _curve(x, Z.xp, t),
                    _curve(z.m, Z.mp, t), _curve(z.y, Z.yp, t))
    return TrivTTstarQ(z.q, value(y, t), Z.xp, deriv(y, t), B.conn(s, g, x, Z.gp, Z.xp),
                       value(mu, t), deriv(mu, t))


def _lam_TTs_inv(s, T):
    g, x = T.q.g, T.q.x
    gp = B.lift_velocity(s, g, x, T.zeta, T.xdot)
    t = new_tag()
    m, y = _lam_Ts_inv(s, _curve(g, gp, t), _curve(x, T.xdot, t),
                       _curve(T.y, T.ydot, t), _curve(T.mu, T.nu, t))
    z = BundleCotangent(T.q, value(m, t), value(y, t))
    return CotangentTangent(z, gp, T.xdot, deriv(m, t), deriv(y, t))


# --- TTT*Q ---------------------------------------------------------------------------------

def _lam_TTTs(s, Zd):
    Z = Zd.Z
    z = Z.z
    t = new_tag()
    g = _curve(z.q.g, Zd.gt, t)
    x = _curve(z.q.x, Zd.xt, t)
    Zc = CotangentTangent(BundleCotangent(BundlePoint(g, x), _curve(z.m, Zd.mt, t),
                                          _curve(z.y, Zd.yt, t)),
                          _curve(Z.gp, Zd.gpt, t), _curve(Z.xp, Zd.xpt, t),
                          _curve(Z.mp, Zd.mpt, t), _curve(Z.yp, Zd.ypt, t))
    T = _lam_TTs(s, Zc)
    V = lambda f: value(f, t)  # noqa: E731
    D = lambda f: deriv(f, t)  # noqa: E731
    return TrivTTTstarQ(z.q, V(T.y), V(T.xdot), V(T.ydot), Zd.xt, D(T.y), D(T.xdot), D(T.ydot),
                        V(T.zeta), D(T.zeta), B.conn(s, z.q.g, z.q.x, Zd.gt, Zd.xt),
                        V(T.mu), V(T.nu), D(T.mu), D(T.nu))


def _lam_TTTs_inv(s, T):
    g, x = T.q.g, T.q.x
    gt = B.lift_velocity(s, g, x, T.delta, T.dx)
    t = new_tag()
    C = lambda a, b: _curve(a, b, t)  # noqa: E731
    Tc = TrivTTstarQ(BundlePoint(C(g, gt), C(x, T.dx)), C(T.y, T.dy), C(T.xdot, T.dxdot),
                     C(T.ydot, T.dydot), C(T.zeta, T.zetadot), C(T.mu, T.mudot), C(T.nu, T.nudot))
    Zc = _lam_TTs_inv(s, Tc)
    V = lambda f: value(f, t)  # noqa: E731
    D = lambda f: deriv(f, t)  # noqa: E731
    Z = CotangentTangent(BundleCotangent(T.q, V(Zc.z.m), V(Zc.z.y)),
                         V(Zc.gp), V(Zc.xp), V(Zc.mp), V(Zc.yp))
    return CotangentSecondTangent(Z, gt, T.dx, D(Zc.z.m), D(Zc.z.y),
                                  D(Zc.gp), D(Zc.xp), D(Zc.mp), D(Zc.yp))


# --- dual maps: T*TQ and T*T*Q -------------------------------------------------------------

def _TT_fiber_basis(s, v):
    """Intrinsic fiber coordinates of lambda_TT^-1 applied to unit trivialized fiber directions.

    Trivialized fiber coordinates are ordered (x', xdot', zeta, eta); returns
    the matrix M with intrinsic coords = M @ trivialized coords.
    """
    n, k = s.n, s.k
    xi = B.conn(s, v.q.g, v.q.x, v.gdot, v.xdot)
    cols = []
    for j in range(2 * n + 2 * k):
        e = np.zeros(2 * n + 2 * k)
        e[j] = 1.0
        T = TrivTTQ(v.q, v.xdot, e[:n], e[n:2 * n], xi, e[2 * n + k:], e[2 * n:2 * n + k])
        cols.append(np.concatenate(B.tqq_fiber_coords(s, _lam_TT_inv(s, T))))
    return np.array(cols).T, xi


def _lam_TsT(s, Ups):
    n, k = s.n, s.k
    M, zeta = _TT_fiber_basis(s, Ups.v)
    cov = np.concatenate([Ups.pg, Ups.pw, Ups.a, Ups.b])
    l = M.T @ cov
    return TrivTstarTQ(Ups.v.q, Ups.v.xdot, l[:n], l[n:2 * n], zeta, l[2 * n:2 * n + k],
                       l[2 * n + k:])


def _lam_TsT_inv(s, T):
    n, k = s.n, s.k
    g, x = T.q.g, T.q.x
    v = BundleTangent(T.q, B.lift_velocity(s, g, x, T.zeta, T.v), T.v)
    M, _ = _TT_fiber_basis(s, v)
    l = np.concatenate([T.a, T.b, T.mu, T.nu])
    c = np.linalg.solve(M.T, l)
    return TangentCovector(v, c[:k], c[k:2 * k], c[2 * k:2 * k + n], c[2 * k + n:])


def _TTs_fiber_basis(s, z):
    """As above for TT*Q; trivialized fiber coordinates ordered (xdot, ydot, nu, zeta)."""
    n, k = s.n, s.k
    y, mu = _lam_Ts(s, z.q.g, z.q.x, z.m, z.y)
    cols = []
    for j in range(2 * n + 2 * k):
        e = np.zeros(2 * n + 2 * k)
        e[j] = 1.0
        T = TrivTTstarQ(z.q, y, e[:n], e[n:2 * n], e[2 * n + k:], mu, e[2 * n:2 * n + k])
        Z = _lam_TTs_inv(s, T)
        cols.append(np.concatenate([s.G.vee(z.q.g.T @ Z.gp), Z.xp, Z.mp, Z.yp]))
    return np.array(cols).T, y, mu


def _lam_TsTs(s, Xi):
    n, k = s.n, s.k
    M, y, mu = _TTs_fiber_basis(s, Xi.z)
    l = M.T @ np.concatenate([Xi.pg, Xi.px, Xi.pm, Xi.py])
    return TrivTstarTstarQ(Xi.z.q, y, l[:n], l[n:2 * n], l[2 * n:2 * n + k], mu, l[2 * n + k:])


def _lam_TsTs_inv(s, T):
    n, k = s.n, s.k
    m, yz = _lam_Ts_inv(s, T.q.g, T.q.x, T.y, T.mu)
    z = BundleCotangent(T.q, m, yz)
    M, _, _ = _TTs_fiber_basis(s, z)
    c = np.linalg.solve(M.T, np.concatenate([T.c, T.d, T.eta, T.rho]))
    return CotangentCovector(z, c[:k], c[k:k + n], c[k + n:2 * k + n], c[2 * k + n:])


# --- public lambda maps ----------------------------------------------------------------------

def _lam_TQ(s, v):
    u, xi = _lam_T(s, v.q.g, v.q.x, v.gdot, v.xdot)
    return TrivTQ(v.q, u, xi)


def _lam_TQ_inv(s, t):
    return BundleTangent(t.q, _lam_T_inv(s, t.q.g, t.q.x, t.u, t.xi), t.u)


def _lam_TsQ(s, z):
    y, mu = _lam_Ts(s, z.q.g, z.q.x, z.m, z.y)
    return TrivTstarQ(z.q, y, mu)


def _lam_TsQ_inv(s, t):
    m, y = _lam_Ts_inv(s, t.q.g, t.q.x, t.y, t.mu)
    return BundleCotangent(t.q, m, y)


_FWD = {"TQ": _lam_TQ, "T*Q": _lam_TsQ, "TTQ": _lam_TT, "TT*Q": _lam_TTs, "T*TQ": _lam_TsT,
        "T*T*Q": _lam_TsTs, "TTT*Q": _lam_TTTs}
_INV = {"TQ": _lam_TQ_inv, "T*Q": _lam_TsQ_inv, "TTQ": _lam_TT_inv, "TT*Q": _lam_TTs_inv,
        "T*TQ": _lam_TsT_inv, "T*T*Q": _lam_TsTs_inv, "TTT*Q": _lam_TTTs_inv}


def lambda_map(s: Scenario, space: str, w):
    """Trivialize an intrinsic (ambient-coordinate) element of the named space."""
    _check(space, w, INTRINSIC)
    return _FWD[space](s, w)


def lambda_inv(s: Scenario, space: str, t):
    _check(space, t, TUPLES)
    return _INV[space](s, t)


# --- projections ---------------------------------------------------------------------------------

PROJECTIONS = {
    # kind: (source space, target space)
    "tau_TQ": ("TTQ", "TQ"),
    "Ttau_Q": ("TTQ", "TQ"),
    "tau_T*Q": ("TT*Q", "T*Q"),
    "Ttau*_Q": ("TT*Q", "TQ"),
    "tau*_TQ": ("T*TQ", "TQ"),
    "tau*_T*Q": ("T*T*Q", "T*Q"),
    "tau_TT*Q": ("TTT*Q", "TT*Q"),
    "Ttau_T*Q": ("TTT*Q", "TT*Q"),
    "tau_Q": ("TQ", None),
    "tau*_Q": ("T*Q", None),
}


def hat_projection(kind: str, t):
    if kind not in PROJECTIONS:
        raise ValueError(f"unknown projection {kind!r}")
    src = PROJECTIONS[kind][0]
    if t.space != src:
        raise ValueError(f"projection {kind} does not apply to {t.space}")
    q = t.q
    if kind == "tau_TQ":
        return TrivTQ(q, t.xdot, t.xi)
    if kind == "Ttau_Q":
        return TrivTQ(q, t.xprime, t.zeta)
    if kind == "tau_T*Q":
        return TrivTstarQ(q, t.y, t.mu)
    if kind == "Ttau*_Q":
        return TrivTQ(q, t.xdot, t.zeta)
    if kind == "tau*_TQ":
        return TrivTQ(q, t.v, t.zeta)
    if kind == "tau*_T*Q":
        return TrivTstarQ(q, t.y, t.mu)
    if kind == "tau_TT*Q":
        return TrivTTstarQ(q, t.y, t.xdot, t.ydot, t.zeta, t.mu, t.nu)
    if kind == "Ttau_T*Q":
        return TrivTTstarQ(q, t.y, t.dx, t.dy, t.delta, t.mu, t.mudot)
    return q


# --- pairings ----------------------------------------------------------------------------------

def _close(a, b, tol=1e-9):
    return np.allclose(np.asarray(a, dtype=float), np.asarray(b, dtype=float), atol=tol, rtol=0)


def _same_point(c, v):
    if not (_close(c.q.g, v.q.g) and _close(c.q.x, v.q.x)):
        raise ValueError("pairing arguments live over different bundle points")


def hat_pair(kind: str, c, v, tol: float = 1e-9) -> float:
    """Trivialized pairings.

    kinds: "duality" (T*Q x TQ), "tilde" (TT*Q x TTQ), "T*T" (T*TQ x TTQ),
    "T*T*" (T*T*Q x TT*Q).
    """
    spaces = {"duality": ("T*Q", "TQ"), "tilde": ("TT*Q", "TTQ"),
              "T*T": ("T*TQ", "TTQ"), "T*T*": ("T*T*Q", "TT*Q")}
    if kind not in spaces:
        raise ValueError(f"unknown pairing {kind!r}")
    if (c.space, v.space) != spaces[kind]:
        raise TagMismatch(f"pairing {kind} expects {spaces[kind]}, got {(c.space, v.space)}")
    _same_point(c, v)
    if kind == "duality":
        return float(c.y @ v.u + c.mu @ v.xi)
    if kind == "tilde":
        # the covector side must sit over the t-velocity of the vector side
        if not (_close(c.zeta, v.zeta, tol) and _close(c.xdot, v.xprime, tol)):
            raise ValueError("tilde pairing needs matching zeta and base velocity")
        return float(c.y @ v.xdotprime + v.xdot @ c.ydot + c.nu @ v.xi + c.mu @ v.eta)
    if kind == "T*T":
        if not (_close(c.zeta, v.xi, tol) and _close(c.v, v.xdot, tol)):
            raise ValueError("T*T pairing needs the covector foot to match the vector foot")
        return float(c.a @ v.xprime + c.b @ v.xdotprime + c.mu @ v.zeta + c.nu @ v.eta)
    if not (_close(c.y, v.y, tol) and _close(c.mu, v.mu, tol)):
        raise ValueError("T*T* pairing needs matching (y, mu) foot")
    return float(c.c @ v.xdot + c.d @ v.ydot + c.eta @ v.nu + c.rho @ v.zeta)


# --- group action ------------------------------------------------------------------------------

def act(s: Scenario, space: str, g0, t):
    """Left action of g0 on a trivialized tuple: Ad on algebra slots, Ad* on coalgebra slots."""
    _check(space, t, TUPLES)
    G = s.G
    out = t.map_group_slots(lambda a: G.Ad(g0, a), lambda c: G.Ad_star(g0, c))
    return replace(out, q=BundlePoint(g0 @ t.q.g, t.q.x))


def act_intrinsic(space: str, g0, w):
    """Lifted action on intrinsic elements (matrix slots left-multiplied)."""
    _check(space, w, INTRINSIC)
    if space == "TQ":
        return B.act_tangent(g0, w)
    if space == "T*Q":
        return B.act_cotangent(g0, w)
    if space == "TTQ":
        return SecondTangent(B.act_tangent(g0, w.v), g0 @ w.gp, w.xp, g0 @ w.gdotp, w.xdotp)
    if space == "TT*Q":
        return CotangentTangent(B.act_cotangent(g0, w.z), g0 @ w.gp, w.xp, w.mp, w.yp)
    if space == "T*TQ":
        return replace(w, v=B.act_tangent(g0, w.v))
    if space == "T*T*Q":
        return replace(w, z=B.act_cotangent(g0, w.z))
    Z = act_intrinsic("TT*Q", g0, w.Z)
    return replace(w, Z=Z, gt=g0 @ w.gt, gpt=g0 @ w.gpt)


def residual(a, b) -> float:
    """Max-abs difference of two tuples (or intrinsic records) of the same kind."""
    return float(np.max(np.abs(np.asarray(real_part(flat_any(a)) - real_part(flat_any(b))))))


def flat_any(w):
    if isinstance(w, _Triv):
        return w.flat()
    parts = []
    for f in fields(w):
        val = getattr(w, f.name)
        if hasattr(val, "__dataclass_fields__"):
            parts.append(flat_any(val))
        else:
            parts.append(np.ravel(np.asarray(val, dtype=float)))
    return np.concatenate(parts)
