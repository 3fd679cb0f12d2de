"""Seeded random samples of every domain type, plus matched argument pairs.

Group elements come from exp of bounded algebra samples, so they stay inside
the injectivity radius of the logarithm.  Trivialized tuples are drawn slot by
slot; ``intrinsic:`` tags give ambient records drawn independently of any
lambda map (velocities as g @ hat(r)).
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .bundle import (BundleCotangent, BundlePoint, BundleTangent, CotangentCovector,
                     CotangentSecondTangent, CotangentTangent, SecondTangent, TangentCovector)
from .trivialize import TUPLES

ALG_BOUND = 1.5


def _vec(rng, d, scale=1.0):
    return scale * rng.uniform(-1.0, 1.0, size=d)


def algebra(rng, s, scale=1.0):
    return _vec(rng, s.k, scale)


def group_element(rng, s):
    return s.G.exp(algebra(rng, s, ALG_BOUND))


def point(rng, s):
    return BundlePoint(group_element(rng, s), _vec(rng, s.n))


def trivialized(space, rng, s, q=None):
    cls = TUPLES[space]
    q = point(rng, s) if q is None else q
    kw = {f: _vec(rng, s.n) for f in cls.base_slots}
    kw.update({f: _vec(rng, s.k) for f in cls.alg_slots + cls.coalg_slots})
    return cls(q=q, **kw)


def intrinsic(space, rng, s, q=None):
    q = point(rng, s) if q is None else q
    G, k, n = s.G, s.k, s.n

    def gvel():
        return q.g @ G.hat(_vec(rng, k))

    if space == "TQ":
        return BundleTangent(q, gvel(), _vec(rng, n))
    if space == "T*Q":
        return BundleCotangent(q, _vec(rng, k), _vec(rng, n))
    if space == "TTQ":
        v = intrinsic("TQ", rng, s, q)
        # velocities along the curve stay tangent: g^T gdotp + gp^T gdot is skew
        gp = gvel()
        W = q.g @ G.hat(_vec(rng, k))
        gdotp = gp @ q.g.T @ v.gdot + W
        return SecondTangent(v, gp, _vec(rng, n), gdotp, _vec(rng, n))
    if space == "TT*Q":
        z = intrinsic("T*Q", rng, s, q)
        return CotangentTangent(z, gvel(), _vec(rng, n), _vec(rng, k), _vec(rng, n))
    if space == "T*TQ":
        v = intrinsic("TQ", rng, s, q)
        return TangentCovector(v, _vec(rng, k), _vec(rng, k), _vec(rng, n), _vec(rng, n))
    if space == "T*T*Q":
        z = intrinsic("T*Q", rng, s, q)
        return CotangentCovector(z, _vec(rng, k), _vec(rng, n), _vec(rng, k), _vec(rng, n))
    if space == "TTT*Q":
        Z = intrinsic("TT*Q", rng, s, q)
        gt = gvel()
        # mixed derivative of a surface in G: g (b a + hat(c)) with gt = g b, gp = g a
        gpt = gt @ q.g.T @ Z.gp + q.g @ G.hat(_vec(rng, k))
        return CotangentSecondTangent(Z, gt, _vec(rng, n), _vec(rng, k), _vec(rng, n),
                                      gpt, _vec(rng, n), _vec(rng, k), _vec(rng, n))
    raise KeyError(f"unknown space {space!r}")


def draw(tag: str, rng, scenario=None, q=None):
    s = scenario
    if tag == "algebra" or tag == "coalgebra":
        return algebra(rng, s)
    if tag == "group":
        return group_element(rng, s)
    if tag == "base":
        return _vec(rng, s.n)
    if tag == "point":
        return point(rng, s)
    if tag == "tangent":
        return intrinsic("TQ", rng, s, q)
    if tag == "cotangent":
        return intrinsic("T*Q", rng, s, q)
    if tag.startswith("intrinsic:"):
        return intrinsic(tag.split(":", 1)[1], rng, s, q)
    if tag in TUPLES:
        return trivialized(tag, rng, s, q)
    raise KeyError(f"unknown sample tag {tag!r}")


# --- matched arguments ------------------------------------------------------------------

def tilde_pair(rng, s):
    """(Z in TT*Q, W in TTQ) with W's t-velocity equal to Z's base velocity."""
    Z = trivialized("TT*Q", rng, s)
    W = trivialized("TTQ", rng, s, Z.q)
    return Z, replace(W, xprime=Z.xdot, zeta=Z.zeta)


def alpha_pair(rng, s):
    """(Z in TT*Q, W in TTQ) with W over Ttau*(Z), so that both sides of the
    alpha identity are defined."""
    Z = trivialized("TT*Q", rng, s)
    W = trivialized("TTQ", rng, s, Z.q)
    return Z, replace(W, xdot=Z.xdot, xi=Z.zeta)


def TstarT_pair(rng, s):
    """(c in T*TQ, W in TTQ) with c over the foot of W."""
    W = trivialized("TTQ", rng, s)
    c = trivialized("T*TQ", rng, s, W.q)
    return replace(c, v=W.xdot, zeta=W.xi), W


def TstarTstar_pair(rng, s):
    """(c in T*T*Q, Z in TT*Q) with matching (y, mu)."""
    Z = trivialized("TT*Q", rng, s)
    c = trivialized("T*T*Q", rng, s, Z.q)
    return replace(c, y=Z.y, mu=Z.mu), Z


def same_foot_pair(rng, s):
    """Two TT*Q tuples over a common (q, y, mu)."""
    Z1 = trivialized("TT*Q", rng, s)
    Z2 = trivialized("TT*Q", rng, s, Z1.q)
    return Z1, replace(Z2, y=Z1.y, mu=Z1.mu)


def over(Z, rng, s):
    """A TTT*Q tuple whose foot (projection tau_TT*Q) is Z."""
    X = trivialized("TTT*Q", rng, s, Z.q)
    return replace(X, y=Z.y, xdot=Z.xdot, ydot=Z.ydot, zeta=Z.zeta, mu=Z.mu, nu=Z.nu)


def intrinsic_same_foot(rng, s):
    """Two ambient TT*Q records over a common z."""
    Z1 = intrinsic("TT*Q", rng, s)
    Z2 = intrinsic("TT*Q", rng, s, Z1.z.q)
    return Z1, replace(Z2, z=Z1.z)
