"""Differentiation plumbing: tagged dual numbers, finite differences, matrix log.

Dual numbers carry a tag so that derivatives may be nested (a curve of
curves) without perturbation confusion.  Values may be numpy arrays or other
duals with an older tag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

_tags = itertools.count(1)


def new_tag() -> int:
    return next(_tags)


class Dual:
    """First-order jet ``val + eps * der`` with eps**2 = 0."""

    __array_ufunc__ = None  # make numpy defer to the reflected operators

    def __init__(self, val, der, tag: int):
        self.val = val
        self.der = der
        self.tag = tag

    # binary ops: equal tags combine, a newer tag on the other side wins
    def _outer(self, o):
        return isinstance(o, Dual) and o.tag > self.tag

    def __add__(self, o):
        if isinstance(o, Dual) and o.tag == self.tag:
            return Dual(self.val + o.val, self.der + o.der, self.tag)
        if self._outer(o):
            return o.__radd__(self)
        return Dual(self.val + o, self.der, self.tag)

    def __radd__(self, o):
        return Dual(o + self.val, self.der, self.tag)

    def __sub__(self, o):
        if isinstance(o, Dual) and o.tag == self.tag:
            return Dual(self.val - o.val, self.der - o.der, self.tag)
        if self._outer(o):
            return o.__rsub__(self)
        return Dual(self.val - o, self.der, self.tag)

    def __rsub__(self, o):
        return Dual(o - self.val, -self.der, self.tag)

    def __neg__(self):
        return Dual(-self.val, -self.der, self.tag)

    def __mul__(self, o):
        if isinstance(o, Dual) and o.tag == self.tag:
            return Dual(self.val * o.val, self.val * o.der + self.der * o.val, self.tag)
        if self._outer(o):
            return o.__rmul__(self)
        return Dual(self.val * o, self.der * o, self.tag)

    def __rmul__(self, o):
        return Dual(o * self.val, o * self.der, self.tag)

    def __matmul__(self, o):
        if isinstance(o, Dual) and o.tag == self.tag:
            return Dual(self.val @ o.val, self.val @ o.der + self.der @ o.val, self.tag)
        if self._outer(o):
            return o.__rmatmul__(self)
        return Dual(self.val @ o, self.der @ o, self.tag)

    def __rmatmul__(self, o):
        return Dual(o @ self.val, o @ self.der, self.tag)

    def __truediv__(self, o):
        if isinstance(o, Dual) and o.tag == self.tag:
            return Dual(self.val / o.val,
                        (self.der * o.val - self.val * o.der) / (o.val * o.val), self.tag)
        if self._outer(o):
            return o.__rtruediv__(self)
        return Dual(self.val / o, self.der / o, self.tag)

    def __rtruediv__(self, o):
        return Dual(o / self.val, -(o * self.der) / (self.val * self.val), self.tag)

    def __pow__(self, k: int):
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = self * 0 + 1
        for _ in range(int(k)):
            out = out * self
        return out

    def __getitem__(self, idx):
        return Dual(self.val[idx], self.der[idx], self.tag)

    @property
    def T(self):
        return Dual(self.val.T, self.der.T, self.tag)

    @property
    def shape(self):
        return np.shape(real_part(self))

    def sum(self, *args, **kw):
        return Dual(self.val.sum(*args, **kw), self.der.sum(*args, **kw), self.tag)

    def reshape(self, *shape):
        return Dual(self.val.reshape(*shape), self.der.reshape(*shape), self.tag)

    def __repr__(self):
        return f"Dual(tag={self.tag}, val={self.val!r}, der={self.der!r})"


def _elementary(f, df):
    def g(x):
        if isinstance(x, Dual):
            return Dual(g(x.val), df(x.val) * x.der, x.tag)
        return f(x)
    return g


# chain-rule versions that accept nested duals
sin = _elementary(np.sin, lambda v: cos(v))
cos = _elementary(np.cos, lambda v: -sin(v))
exp = _elementary(np.exp, lambda v: exp(v))


def real_part(x):
    """Innermost plain value of a (possibly nested) dual."""
    while isinstance(x, Dual):
        x = x.val
    return x


def is_dual(x) -> bool:
    return isinstance(x, Dual)


def value(x, tag: int):
    """Strip the ``tag`` perturbation from x, keeping other tags."""
    if not isinstance(x, Dual):
        return x
    if x.tag == tag:
        return x.val
    if x.tag < tag:
        return x
    return Dual(value(x.val, tag), value(x.der, tag), x.tag)


def deriv(x, tag: int):
    """Coefficient of the ``tag`` perturbation in x (zero if absent)."""
    if not isinstance(x, Dual):
        return np.zeros_like(np.asarray(x, dtype=float))
    if x.tag == tag:
        return x.der
    if x.tag < tag:
        return x * 0.0
    return Dual(deriv(x.val, tag), deriv(x.der, tag), x.tag)


def linmap(f, x):
    """Apply a linear numpy function f to a plain array or a dual."""
    if isinstance(x, Dual):
        return Dual(linmap(f, x.val), linmap(f, x.der), x.tag)
    return f(x)


def dot(a, b):
    return (a * b).sum()


def concat(items):
    """np.concatenate that accepts duals with mixed tags."""
    tags = [it.tag for it in items if isinstance(it, Dual)]
    if not tags:
        return np.concatenate([np.atleast_1d(np.asarray(it, dtype=float)) for it in items])
    t = max(tags)
    vals = [value(it, t) if isinstance(it, Dual) else it for it in items]
    ders = [deriv(it, t) for it in items]
    return Dual(concat(vals), concat(ders), t)


def seed_dual(val, der):
    """Fresh perturbation: returns (tag, Dual)."""
    t = new_tag()
    return t, Dual(np.asarray(val, dtype=float), np.asarray(der, dtype=float), t)


def expm_series(X, terms: int = 18):
    """Matrix exponential by scaling and squaring of a Taylor series.

    Works for plain arrays and for duals, since it only uses ring operations.
    """
    norm = float(np.linalg.norm(real_part(X), ord=np.inf))
    s = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    Y = X * (1.0 / 2 ** s)
    m = np.shape(real_part(X))[0]
    out = np.eye(m) + Y * 0.0
    term = np.eye(m) + Y * 0.0
    for k in range(1, terms):
        term = (term @ Y) * (1.0 / k)
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


# --- derivatives -----------------------------------------------------------

def directional_derivative(f, point, direction):
    """Forward-mode derivative of f at point along direction."""
    t, p = seed_dual(point, direction)
    out = deriv(f(p), t)
    out_r = real_part(out)
    if not np.all(np.isfinite(out_r)):
        raise FloatingPointError("non-finite derivative")
    return out


def central_difference(f, point, direction, h: float = 1e-5, richardson: bool = True):
    """Central finite difference of f along direction, optionally Richardson-extrapolated."""
    p = np.asarray(point, dtype=float)
    v = np.asarray(direction, dtype=float)

    def D(step):
        return (np.asarray(f(p + step * v)) - np.asarray(f(p - step * v))) / (2 * step)

    out = D(h)
    if richardson:
        out = (4 * D(h / 2) - out) / 3
    if not np.all(np.isfinite(out)):
        raise FloatingPointError("non-finite finite difference")
    return out


def exterior_derivative_fd(form, point, vectors, h: float = 1e-5, richardson: bool = True):
    """(d form)(v0..vk) at a chart point for a k-form given in flat chart coordinates.

    ``form(p, vs)`` evaluates the k-form at chart point p on the list vs.
    Arguments are extended as constant vector fields, so brackets vanish.
    """
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    total = 0.0
    for i, v in enumerate(vectors):
        rest = vectors[:i] + vectors[i + 1:]
        term = central_difference(lambda p: form(p, rest), point, v, h, richardson)
        total = total + (-1) ** i * term
    return total


# --- matrix logarithm ---------------------------------------------------------

def matrix_log(g: np.ndarray) -> np.ndarray:
    """Algebra coefficients of log(g) for g in SO(2) or SO(3).

    Raises ValueError at or beyond the cut locus (angle within 1e-6 of pi).
    """
    g = np.asarray(g, dtype=float)
    if g.shape == (2, 2):
        phi = np.arctan2(g[1, 0], g[0, 0])
        if abs(phi) >= np.pi - 1e-6:
            raise ValueError("rotation angle at the cut locus")
        return np.array([phi])
    if g.shape == (3, 3):
        c = np.clip((np.trace(g) - 1) / 2, -1.0, 1.0)
        phi = np.arccos(c)
        if phi >= np.pi - 1e-6:
            raise ValueError("rotation angle at the cut locus")
        w = np.array([g[2, 1] - g[1, 2], g[0, 2] - g[2, 0], g[1, 0] - g[0, 1]]) / 2
        # sin(phi)/phi, series near zero
        k = 1 - phi ** 2 / 6 + phi ** 4 / 120 if phi < 1e-4 else np.sin(phi) / phi
        return w / k
    raise ValueError(f"unsupported matrix shape {g.shape}")


# --- tolerances ----------------------------------------------------------------

@dataclass(frozen=True)
class TolerancePolicy:
    exact: float = 1e-10
    fd: float = 1e-6
    audit: float = 1e-5
    fd_step: float = 1e-5
    richardson_order: int = 2

    def __post_init__(self):
        if not (0 < self.exact < self.fd <= self.audit):
            raise ValueError("tolerances must satisfy 0 < exact < fd <= audit")
        if self.fd_step <= 0:
            raise ValueError("fd_step must be positive")


DEFAULT_TOL = TolerancePolicy()


# --- sampling ----------------------------------------------------------------

def rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def sample(type_tag: str, rng_seed, scenario=None, **kw):
    """Reproducible random value of a named domain type.

    Tags: group, algebra, coalgebra, point, tangent, cotangent, and every
    trivialized space tag (TQ, T*Q, TTQ, TT*Q, T*TQ, T*T*Q, TTT*Q) with an
    ``intrinsic:`` prefix for the ambient representation.
    """
    from . import sampling

    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else rng_for(rng_seed)
    return sampling.draw(type_tag, rng, scenario, **kw)
