"""Reference maps on the iterated bundles in ambient matrix coordinates.

These are the untrivialized objects: the natural pairings, the canonical
involution (a swap of differentiation order), alpha_Q, Omega_Q^flat and the
canonical forms on T*Q.  They serve as independent oracles for the
trivialized formulas.
"""

from __future__ import annotations

import numpy as np

from . import bundle as B
from .bundle import (BundleCotangent, BundlePoint, BundleTangent, CotangentCovector,
                     CotangentTangent, SecondTangent, TangentCovector)
from .numerics import Dual, deriv, new_tag


def pair_cotangent(s, z: BundleCotangent, v: BundleTangent) -> float:
    return float(z.m @ s.G.vee(z.q.g.T @ v.gdot) + z.y @ v.xdot)


def pair_tilde(s, Z: CotangentTangent, W: SecondTangent, tol=1e-9) -> float:
    """d/dt <z(t), w(t)> along straight ambient curves with derivatives Z and W.

    W is a t-derivative of a curve in TQ whose foot curve matches that of Z.
    """
    if not (np.allclose(Z.gp, W.gp, atol=tol) and np.allclose(Z.xp, W.xp, atol=tol)):
        raise ValueError("tilde pairing needs Ttau_Q(W) = Ttau*_Q(Z)")
    t = new_tag()
    g = Dual(Z.z.q.g, Z.gp, t)
    m = Dual(Z.z.m, Z.mp, t)
    y = Dual(Z.z.y, Z.yp, t)
    gd = Dual(W.v.gdot, W.gdotp, t)
    xd = Dual(W.v.xdot, W.xdotp, t)
    val = (m * s.G.vee(g.T @ gd)).sum() + (y * xd).sum()
    return float(deriv(val, t))


def pair_TstarTQ(s, U: TangentCovector, W: SecondTangent) -> float:
    return B.pair_TstarTQ(s, U, W)


def tts_fiber_coords(s, Z: CotangentTangent):
    return (s.G.vee(Z.z.q.g.T @ Z.gp), Z.xp, Z.mp, Z.yp)


def pair_TstarTstarQ(s, Xi: CotangentCovector, Z: CotangentTangent) -> float:
    c = tts_fiber_coords(s, Z)
    return float(Xi.pg @ c[0] + Xi.px @ c[1] + Xi.pm @ c[2] + Xi.py @ c[3])


def tts_from_fiber(s, z: BundleCotangent, om, xp, mp, yp) -> CotangentTangent:
    return CotangentTangent(z, z.q.g @ s.G.hat(om), np.asarray(xp, float),
                            np.asarray(mp, float), np.asarray(yp, float))


# --- involution and the two symplectomorphisms --------------------------------------

def kappa(W: SecondTangent) -> SecondTangent:
    """Swap the two differentiation orders (linear ambient coordinates)."""
    v = BundleTangent(W.v.q, W.gp, W.xp)
    return SecondTangent(v, W.v.gdot, W.v.xdot, W.gdotp, W.xdotp)


def _TQ_basis(s, v: BundleTangent):
    k, n = s.k, s.n
    for j in range(2 * k + 2 * n):
        e = np.zeros(2 * k + 2 * n)
        e[j] = 1.0
        yield e, B.tqq_from_fiber(s, v, e[:k], e[k:2 * k], e[2 * k:2 * k + n], e[2 * k + n:])


def alpha(s, Z: CotangentTangent) -> TangentCovector:
    """alpha_Q(Z) defined by <alpha(Z), W> = -<Z, kappa(W)>~ on T_v TQ, v = Ttau*(Z)."""
    k, n = s.k, s.n
    v = BundleTangent(Z.z.q, Z.gp, Z.xp)
    comps = np.array([-pair_tilde(s, Z, kappa(W)) for _, W in _TQ_basis(s, v)])
    return TangentCovector(v, comps[:k], comps[k:2 * k], comps[2 * k:2 * k + n], comps[2 * k + n:])


def Omega(s, Z1: CotangentTangent, Z2: CotangentTangent) -> float:
    """Canonical 2-form -d theta_Q in left-trivialized fiber coordinates."""
    O1, x1, m1, y1 = tts_fiber_coords(s, Z1)
    O2, x2, m2, y2 = tts_fiber_coords(s, Z2)
    m = Z1.z.m
    return float(-m1 @ O2 + m2 @ O1 + m @ s.G.bracket(O1, O2) + x1 @ y2 - x2 @ y1)


def omega_flat(s, Z: CotangentTangent) -> CotangentCovector:
    k, n = s.k, s.n
    comps = []
    for j in range(2 * k + 2 * n):
        e = np.zeros(2 * k + 2 * n)
        e[j] = 1.0
        Z2 = tts_from_fiber(s, Z.z, e[:k], e[k:k + n], e[k + n:2 * k + n], e[2 * k + n:])
        comps.append(Omega(s, Z, Z2))
    c = np.array(comps)
    return CotangentCovector(Z.z, c[:k], c[k:k + n], c[k + n:2 * k + n], c[2 * k + n:])


def theta(z: BundleCotangent) -> CotangentCovector:
    """Canonical 1-form as a section of T*T*Q: <theta(z), Z> = <z, Ttau*(Z)>."""
    k = np.shape(z.m)[0]
    return CotangentCovector(z, z.m, z.y, np.zeros(k), np.zeros_like(z.y))


# --- chart on T*Q for finite differences ------------------------------------------------

def theta_chart(s, z0: BundleCotangent):
    """theta_Q as a 1-form in the flat chart p = (xi_g, x, m, y) around z0.

    The group slot is g0 exp(xi_g); tangent chart vectors are mapped to
    left-trivialized velocities through a dual-number exponential.
    """
    G, k, n = s.G, s.k, s.n
    g0 = z0.q.g

    def form(p, vs):
        (v,) = vs
        t = new_tag()
        gt = g0 @ G.exp(Dual(p[:k], v[:k], t))
        g = g0 @ G.exp(p[:k])
        om = G.vee(g.T @ deriv(gt, t))
        m, y = p[k + n:2 * k + n], p[2 * k + n:]
        return float(m @ om + y @ v[k:k + n])

    p0 = np.concatenate([np.zeros(k), z0.q.x, z0.m, z0.y])
    return form, p0


def chart_vector(s, Z: CotangentTangent):
    """Chart direction at p0 (xi_g = 0) of an intrinsic TT*Q element."""
    return np.concatenate(tts_fiber_coords(s, Z))
