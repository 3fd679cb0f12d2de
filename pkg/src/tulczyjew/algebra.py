"""Matrix Lie groups SO(2), SO(3), their (co)adjoint calculus and the tangent group.

Coefficient vectors live in the hat-map basis; the dual basis is identified
with coefficient vectors through the plain dot product.  Low-level functions
take raw arrays (or duals) and a ``LieGroup``; the typed wrappers at the end
check group tags.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import Dual, expm_series, linmap, matrix_log


class TagMismatch(ValueError):
    pass


class LieGroup:
    """SO(m) for m in {2, 3}, realized by m x m rotation matrices."""

    def __init__(self, tag: str):
        if tag == "SO2":
            basis = np.array([[[0.0, -1.0], [1.0, 0.0]]])
        elif tag == "SO3":
            basis = np.zeros((3, 3, 3))
            for i, (a, b) in enumerate([(2, 1), (0, 2), (1, 0)]):
                basis[i, a, b] = 1.0
                basis[i, b, a] = -1.0
        else:
            raise ValueError(f"unknown group tag {tag!r}")
        self.tag = tag
        self.basis = basis
        self.dim = basis.shape[0]
        self.m = basis.shape[1]

    def __repr__(self):
        return f"LieGroup({self.tag!r})"

    def __eq__(self, other):
        return isinstance(other, LieGroup) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    @property
    def abelian(self) -> bool:
        return self.dim == 1

    def identity(self):
        return np.eye(self.m)

    def hat(self, c):
        return linmap(lambda a: np.tensordot(a, self.basis, axes=1), c)

    def vee(self, M):
        # basis is orthogonal with squared Frobenius norm 2
        return linmap(lambda A: 0.5 * np.tensordot(self.basis, A, axes=([1, 2], [0, 1])), M)

    def bracket(self, a, b):
        A, B = self.hat(a), self.hat(b)
        return self.vee(A @ B - B @ A)

    def Ad(self, g, xi):
        return self.vee(g @ self.hat(xi) @ g.T)

    def Ad_star(self, g, mu):
        # Ad_g is orthogonal in this basis, so Ad*_g = (Ad_{g^-1})^T = Ad_g
        return self.Ad(g, mu)

    def ad_star(self, xi, mu):
        # ad_xi is skew for the invariant inner product, so ad*_xi = -ad_xi
        return -self.bracket(xi, mu)

    def inv(self, g):
        return g.T

    def exp(self, xi):
        if isinstance(xi, Dual):
            return expm_series(self.hat(xi))
        xi = np.asarray(xi, dtype=float)
        if self.tag == "SO2":
            c, s = np.cos(xi[0]), np.sin(xi[0])
            return np.array([[c, -s], [s, c]])
        phi = np.linalg.norm(xi)
        K = self.hat(xi)
        if phi < 1e-8:
            return np.eye(3) + K + 0.5 * K @ K
        return (np.eye(3) + np.sin(phi) / phi * K
                + (1 - np.cos(phi)) / phi ** 2 * K @ K)

    def log(self, g):
        return matrix_log(g)

    def membership_residual(self, g) -> float:
        g = np.asarray(g, dtype=float)
        return max(float(np.max(np.abs(g.T @ g - np.eye(self.m)))),
                   abs(float(np.linalg.det(g)) - 1.0))


SO2 = LieGroup("SO2")
SO3 = LieGroup("SO3")
GROUPS = {"SO2": SO2, "SO3": SO3}


def group(tag) -> LieGroup:
    if isinstance(tag, LieGroup):
        return tag
    return GROUPS[tag]


# --- tangent group g x| G and its algebra g x| g -------------------------------

def tg_mul(G: LieGroup, a, b):
    """(xi, g)(eta, h) = (xi + Ad_g eta, g h)."""
    xi, g = a
    eta, h = b
    return (xi + G.Ad(g, eta), g @ h)


def tg_inverse(G: LieGroup, a):
    xi, g = a
    gi = G.inv(g)
    return (-G.Ad(gi, xi), gi)


def tg_Ad(G: LieGroup, zg, v):
    """Ad_(zeta,g)(xi, eta) = (Ad_g xi - [Ad_g eta, zeta], Ad_g eta)."""
    zeta, g = zg
    xi, eta = v
    ge = G.Ad(g, eta)
    return (G.Ad(g, xi) - G.bracket(ge, zeta), ge)


def tg_bracket(G: LieGroup, v1, v2):
    xi1, eta1 = v1
    xi2, eta2 = v2
    return (G.bracket(xi1, xi2) + G.bracket(eta1, xi2) - G.bracket(eta2, xi1),
            G.bracket(eta1, eta2))


def tg_pair(m, v):
    """<(mu, nu), (xi, eta)> = <mu, eta> + <nu, xi>."""
    mu, nu = m
    xi, eta = v
    return float(np.dot(mu, eta) + np.dot(nu, xi))


# --- typed wrappers -------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    matrix: np.ndarray
    group_tag: str

    @property
    def G(self) -> LieGroup:
        return group(self.group_tag)


@dataclass(frozen=True)
class AlgebraElement:
    coeffs: np.ndarray
    group_tag: str

    @property
    def G(self) -> LieGroup:
        return group(self.group_tag)

    def matrix(self):
        return self.G.hat(self.coeffs)


@dataclass(frozen=True)
class CoalgebraElement:
    coeffs: np.ndarray
    group_tag: str


@dataclass(frozen=True)
class TangentGroupElement:
    xi: AlgebraElement
    g: GroupElement


@dataclass(frozen=True)
class TangentAlgebraElement:
    xi: AlgebraElement
    eta: AlgebraElement


def _same(*items) -> LieGroup:
    tags = {it.group_tag for it in items}
    if len(tags) != 1:
        raise TagMismatch(f"mismatched group tags {sorted(tags)}")
    return group(tags.pop())


def bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    G = _same(a, b)
    return AlgebraElement(G.bracket(a.coeffs, b.coeffs), G.tag)


def Ad(g: GroupElement, xi: AlgebraElement) -> AlgebraElement:
    G = _same(g, xi)
    return AlgebraElement(G.Ad(g.matrix, xi.coeffs), G.tag)


def Ad_star(g: GroupElement, mu: CoalgebraElement) -> CoalgebraElement:
    G = _same(g, mu)
    return CoalgebraElement(G.Ad_star(g.matrix, mu.coeffs), G.tag)


def ad_star(xi: AlgebraElement, mu: CoalgebraElement) -> CoalgebraElement:
    G = _same(xi, mu)
    return CoalgebraElement(G.ad_star(xi.coeffs, mu.coeffs), G.tag)


def exp_group(xi: AlgebraElement) -> GroupElement:
    return GroupElement(xi.G.exp(xi.coeffs), xi.group_tag)


def log_group(g: GroupElement) -> AlgebraElement:
    return AlgebraElement(matrix_log(g.matrix), g.group_tag)


def tangent_group_mul(a: TangentGroupElement, b: TangentGroupElement) -> TangentGroupElement:
    G = _same(a.xi, a.g, b.xi, b.g)
    xi, g = tg_mul(G, (a.xi.coeffs, a.g.matrix), (b.xi.coeffs, b.g.matrix))
    return TangentGroupElement(AlgebraElement(xi, G.tag), GroupElement(g, G.tag))


def tangent_Ad(zg: TangentGroupElement, v: TangentAlgebraElement) -> TangentAlgebraElement:
    G = _same(zg.xi, zg.g, v.xi, v.eta)
    xi, eta = tg_Ad(G, (zg.xi.coeffs, zg.g.matrix), (v.xi.coeffs, v.eta.coeffs))
    return TangentAlgebraElement(AlgebraElement(xi, G.tag), AlgebraElement(eta, G.tag))


def tangent_bracket(v1: TangentAlgebraElement, v2: TangentAlgebraElement) -> TangentAlgebraElement:
    G = _same(v1.xi, v1.eta, v2.xi, v2.eta)
    xi, eta = tg_bracket(G, (v1.xi.coeffs, v1.eta.coeffs), (v2.xi.coeffs, v2.eta.coeffs))
    return TangentAlgebraElement(AlgebraElement(xi, G.tag), AlgebraElement(eta, G.tag))


def pair(mu, xi) -> float:
    """Plain pairing <mu, xi>, or the tangent pairing for 2-tuples of elements."""
    if isinstance(mu, tuple) or isinstance(xi, tuple):
        if not (isinstance(mu, tuple) and isinstance(xi, tuple) and len(mu) == 2 == len(xi)):
            raise ValueError("arity mismatch in pairing")
        _same(*mu, *xi)
        return tg_pair((mu[0].coeffs, mu[1].coeffs), (xi[0].coeffs, xi[1].coeffs))
    _same(mu, xi)
    return float(np.dot(mu.coeffs, xi.coeffs))
