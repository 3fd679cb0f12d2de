"""Reduction by the group action, realized by gauge fixing.

On the product bundle every orbit meets g = e exactly once, so a class
[q, ...] is stored through its canonical representative at (e, x).  A reduced
element pairs the base-geometry factor (a tuple starting with x) with such a
class.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from . import bundle as B
from .algebra import TagMismatch
from .bundle import BundlePoint
from .trivialize import TUPLES, act
from .triplet import alpha_base, coad, kappa_base, omega_flat_base


# --- classes --------------------------------------------------------------------------

@dataclass(frozen=True)
class AdjointClass:
    """[q, xi] in the adjoint bundle, stored at g = e."""
    x: np.ndarray
    value: np.ndarray


@dataclass(frozen=True)
class CoadjointClass:
    """[q, mu] in the coadjoint bundle, stored at g = e."""
    x: np.ndarray
    value: np.ndarray


@dataclass(frozen=True)
class TildeG:
    x: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    zeta: np.ndarray


@dataclass(frozen=True)
class TildeK:
    x: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    zeta: np.ndarray


@dataclass(frozen=True)
class TildeL:
    x: np.ndarray
    mu: np.ndarray
    eta: np.ndarray
    rho: np.ndarray


@dataclass(frozen=True)
class TildeM:
    x: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    mudot: np.ndarray
    nudot: np.ndarray
    zeta: np.ndarray
    zetadot: np.ndarray
    delta: np.ndarray


# space -> (class type, {class field: tuple slot})
CLASSES = {
    "TQ": (AdjointClass, {"value": "xi"}),
    "T*Q": (CoadjointClass, {"value": "mu"}),
    "TTQ": (TildeG, {"xi": "xi", "eta": "eta", "zeta": "zeta"}),
    "TT*Q": (TildeK, {"mu": "mu", "nu": "nu", "zeta": "zeta"}),
    "T*TQ": (TildeK, {"mu": "mu", "nu": "nu", "zeta": "zeta"}),
    "T*T*Q": (TildeL, {"mu": "mu", "eta": "eta", "rho": "rho"}),
    "TTT*Q": (TildeM, {f: f for f in ("mu", "nu", "mudot", "nudot", "zeta", "zetadot", "delta")}),
}


@dataclass(frozen=True)
class ReducedElement:
    """(base geometry, class).  ``base`` is (x, *base slots of the space)."""
    space: str
    base: tuple
    cls: object

    def __post_init__(self):
        if self.space not in CLASSES:
            raise TagMismatch(f"unknown space {self.space!r}")
        if not isinstance(self.cls, CLASSES[self.space][0]):
            raise TagMismatch(f"class {type(self.cls).__name__} does not belong to {self.space}")
        if not np.allclose(self.base[0], self.cls.x):
            raise ValueError("base geometry and class sit over different base points")

    @property
    def x(self):
        return self.base[0]

    def flat(self):
        parts = [np.ravel(np.asarray(b, float)) for b in self.base]
        parts += [np.ravel(np.asarray(getattr(self.cls, f.name), float)) for f in fields(self.cls)]
        return np.concatenate(parts)


def reduced_residual(a: ReducedElement, b: ReducedElement) -> float:
    if a.space != b.space:
        raise TagMismatch("different spaces")
    return float(np.max(np.abs(a.flat() - b.flat())))


def _make(space, x, base_slots, **cls_slots):
    ctype, _ = CLASSES[space]
    return ReducedElement(space, (x,) + tuple(base_slots), ctype(x=x, **cls_slots))


# --- reduce and its right inverse ---------------------------------------------------------

def reduce(s, space: str, t) -> ReducedElement:
    """Gauge-fix t to g = e and split into base geometry and class."""
    if space not in TUPLES or not isinstance(t, TUPLES[space]):
        raise TagMismatch(f"expected a {space} tuple")
    c = act(s, space, t.q.g.T, t)
    x = c.q.x
    _, slotmap = CLASSES[space]
    return _make(space, x, [getattr(c, f) for f in c.base_slots],
                 **{k: getattr(c, v) for k, v in slotmap.items()})


def representative(s, space: str, r: ReducedElement, g=None):
    """The trivialized tuple at (g, x) in the orbit of r (g = e by default)."""
    if r.space != space:
        raise TagMismatch(f"reduced element lives on {r.space}, not {space}")
    cls_t = TUPLES[space]
    _, slotmap = CLASSES[space]
    kw = dict(zip(cls_t.base_slots, r.base[1:]))
    kw.update({v: getattr(r.cls, k) for k, v in slotmap.items()})
    t = cls_t(q=BundlePoint(s.G.identity(), np.asarray(r.x, float)), **kw)
    return t if g is None else act(s, space, g, t)


# --- projections ---------------------------------------------------------------------------

def bar_projection(kind: str, r: ReducedElement):
    b, c, x = r.base, r.cls, r.x
    if kind == "tau_TQ" and r.space == "TTQ":
        return _make("TQ", x, [b[1]], value=c.xi)
    if kind == "Ttau_Q" and r.space == "TTQ":
        return _make("TQ", x, [b[2]], value=c.zeta)
    if kind == "tau_T*Q" and r.space == "TT*Q":
        return _make("T*Q", x, [b[1]], value=c.mu)
    if kind == "Ttau*_Q" and r.space == "TT*Q":
        return _make("TQ", x, [b[2]], value=c.zeta)
    if kind == "tau*_TQ" and r.space == "T*TQ":
        return _make("TQ", x, [b[1]], value=c.zeta)
    if kind == "tau*_T*Q" and r.space == "T*T*Q":
        return _make("T*Q", x, [b[1]], value=c.mu)
    if kind == "tau_TT*Q" and r.space == "TTT*Q":
        return _make("TT*Q", x, b[1:4], mu=c.mu, nu=c.nu, zeta=c.zeta)
    if kind == "Ttau_T*Q" and r.space == "TTT*Q":
        return _make("TT*Q", x, [b[1], b[4], b[5]], mu=c.mu, nu=c.mudot, zeta=c.delta)
    if kind == "tau_Q" and r.space == "TQ" or kind == "tau*_Q" and r.space == "T*Q":
        return x
    raise ValueError(f"projection {kind!r} does not apply to {r.space}")


# --- pairings ------------------------------------------------------------------------------

def bar_pair(kind: str, c: ReducedElement, v: ReducedElement, tol: float = 1e-9) -> float:
    """Reduced pairings on canonical representatives; same kinds as hat_pair."""
    spaces = {"duality": ("T*Q", "TQ"), "tilde": ("TT*Q", "TTQ"),
              "T*T": ("T*TQ", "TTQ"), "T*T*": ("T*T*Q", "TT*Q")}
    if kind not in spaces:
        raise ValueError(f"unknown pairing {kind!r}")
    if (c.space, v.space) != spaces[kind]:
        raise TagMismatch(f"pairing {kind} expects {spaces[kind]}")
    if not np.allclose(c.x, v.x, atol=tol):
        raise ValueError("pairing arguments over different base points")
    cb, vb, cc, vc = c.base, v.base, c.cls, v.cls

    def need(a, b, what):
        if not np.allclose(a, b, atol=tol):
            raise ValueError(f"pairing {kind} needs matching {what}")

    if kind == "duality":
        return float(cb[1] @ vb[1] + cc.value @ vc.value)
    if kind == "tilde":
        need(cc.zeta, vc.zeta, "zeta")
        need(cb[2], vb[2], "base velocity")
        # <Y, U>~ = y . xdot' + ydot . xdot
        return float(cb[1] @ vb[3] + cb[3] @ vb[1] + cc.nu @ vc.xi + cc.mu @ vc.eta)
    if kind == "T*T":
        need(cc.zeta, vc.xi, "foot algebra slot")
        need(cb[1], vb[1], "foot velocity")
        return float(cb[2] @ vb[2] + cb[3] @ vb[3] + cc.mu @ vc.zeta + cc.nu @ vc.eta)
    need(cb[1], vb[1], "y")
    need(cc.mu, vc.mu, "mu")
    return float(cb[2] @ vb[2] + cb[3] @ vb[3] + cc.eta @ vc.nu + cc.rho @ vc.zeta)


# --- reduced maps --------------------------------------------------------------------------

BAR_KINDS = ("kappa", "alpha", "omega_flat", "theta", "Omega")


def _Bbar(s, x, u, w):
    return B.curvature_raw(s, x, u, w)


def _Bbar_mu(s, x, mu, u):
    E = np.eye(s.n)
    return np.array([mu @ _Bbar(s, x, u, E[j]) for j in range(s.n)])


def kappa_bar(s, r: ReducedElement) -> ReducedElement:
    _need_space(r, "TTQ")
    x, xd, xp, xdp = r.base
    c = r.cls
    eta = c.eta + _Bbar(s, x, xd, xp) + s.G.bracket(c.xi, c.zeta)
    return _make("TTQ", x, kappa_base(r.base)[1:], xi=c.zeta, eta=eta, zeta=c.xi)


def alpha_bar(s, r: ReducedElement) -> ReducedElement:
    """The ad* is taken along the algebra slot of the class (named zeta here)."""
    _need_space(r, "TT*Q")
    x, y, xd, yd = r.base
    c = r.cls
    _, v, a, b = alpha_base(r.base)
    a = a - _Bbar_mu(s, x, c.mu, xd)
    return _make("T*TQ", x, [v, a, b], mu=coad(s.G, c.zeta, c.mu) - c.nu, nu=-c.mu, zeta=c.zeta)


def omega_flat_bar(s, r: ReducedElement) -> ReducedElement:
    _need_space(r, "TT*Q")
    x, y, xd, yd = r.base
    c = r.cls
    _, y, cc, d = omega_flat_base(r.base)
    cc = cc - _Bbar_mu(s, x, c.mu, xd)
    return _make("T*T*Q", x, [y, cc, d], mu=c.mu, eta=c.zeta, rho=coad(s.G, c.zeta, c.mu) - c.nu)


def theta_bar(r: ReducedElement) -> ReducedElement:
    _need_space(r, "T*Q")
    x, y = r.base
    mu = r.cls.value
    return _make("T*T*Q", x, [y, y, np.zeros_like(y)], mu=mu, eta=np.zeros_like(mu), rho=mu)


def Omega_bar(s, r1: ReducedElement, r2: ReducedElement) -> float:
    _need_space(r1, "TT*Q")
    _need_space(r2, "TT*Q")
    x, y1, xd1, yd1 = r1.base
    _, y2, xd2, yd2 = r2.base
    c1, c2 = r1.cls, r2.cls
    if not (np.allclose(r1.x, r2.x) and np.allclose(y1, y2) and np.allclose(c1.mu, c2.mu)):
        raise ValueError("arguments do not share a foot point")
    mu = c1.mu
    return float(xd1 @ yd2 - xd2 @ yd1 - mu @ _Bbar(s, x, xd1, xd2)
                 + c2.nu @ c1.zeta - c1.nu @ c2.zeta + mu @ s.G.bracket(c2.zeta, c1.zeta))


def bar_map(kind: str, s, *args):
    """Dispatch to kappa_bar, alpha_bar, omega_flat_bar, theta_bar or Omega_bar."""
    if kind == "kappa":
        return kappa_bar(s, *args)
    if kind == "alpha":
        return alpha_bar(s, *args)
    if kind == "omega_flat":
        return omega_flat_bar(s, *args)
    if kind == "theta":
        return theta_bar(*args)
    if kind == "Omega":
        return Omega_bar(s, *args)
    raise ValueError(f"unknown reduced map {kind!r}; expected one of {BAR_KINDS}")


def _need_space(r, space):
    if not isinstance(r, ReducedElement) or r.space != space:
        got = getattr(r, "space", type(r).__name__)
        raise TagMismatch(f"expected a reduced {space} element, got {got}")
