"""Property suites run by the verification harness.

Each check draws its own samples from the generator it is handed and returns
(max residual, number of samples, notes).  Every check compares two routes
that are computed independently: a trivialized formula against an ambient
oracle, a closed form against finite differences, or a map against its
defining identity.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import bundle as B
from . import intrinsic as I
from . import reduce as R
from . import sampling as S
from . import triplet as P
from .numerics import Dual, central_difference, deriv, exterior_derivative_fd, new_tag
from .trivialize import (PROJECTIONS, SPACES, act, act_intrinsic, hat_pair, hat_projection,
                         lambda_inv, lambda_map, residual)

SUITES = ("algebra", "bundle", "trivialize", "triplet", "reduce", "audit")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    fn: Callable
    tier: str = "exact"          # exact | fd | audit | a literal float as string
    scenarios: tuple | None = None
    audit: bool = False          # audit checks report "discrepancy" instead of "fail"


REGISTRY: list[Check] = []


def check(suite, name, tier="exact", scenarios=None, audit=False):
    def deco(fn):
        REGISTRY.append(Check(suite, name, fn, tier, scenarios, audit))
        return fn
    return deco


def _mx(vals):
    vals = list(vals)
    return float(max(vals)) if vals else 0.0


# --- algebra ---------------------------------------------------------------------------

@check("algebra", "jacobi")
def _jacobi(s, rng, n):
    G = s.G
    out = []
    for _ in range(n):
        a, b, c = (S.algebra(rng, s) for _ in range(3))
        j = (G.bracket(a, G.bracket(b, c)) + G.bracket(b, G.bracket(c, a))
             + G.bracket(c, G.bracket(a, b)))
        out.append(np.abs(j).max())
    return _mx(out), n, {}


@check("algebra", "Ad_homomorphism")
def _ad_hom(s, rng, n):
    G = s.G
    out = []
    for _ in range(n):
        g, h = S.group_element(rng, s), S.group_element(rng, s)
        xi = S.algebra(rng, s)
        out.append(np.abs(G.Ad(g @ h, xi) - G.Ad(g, G.Ad(h, xi))).max())
    return _mx(out), n, {}


@check("algebra", "Ad_preserves_bracket")
def _ad_br(s, rng, n):
    G = s.G
    out = []
    for _ in range(n):
        g = S.group_element(rng, s)
        a, b = S.algebra(rng, s), S.algebra(rng, s)
        out.append(np.abs(G.Ad(g, G.bracket(a, b)) - G.bracket(G.Ad(g, a), G.Ad(g, b))).max())
    return _mx(out), n, {}


@check("algebra", "ad_star_transpose")
def _ad_star(s, rng, n):
    G = s.G
    out = []
    for _ in range(n):
        xi, eta, mu = (S.algebra(rng, s) for _ in range(3))
        out.append(abs(G.ad_star(xi, mu) @ eta - mu @ G.bracket(xi, eta)))
    return _mx(out), n, {}


@check("algebra", "Ad_star_pairing")
def _Ad_star(s, rng, n):
    G = s.G
    out = []
    for _ in range(n):
        g = S.group_element(rng, s)
        xi, mu = S.algebra(rng, s), S.algebra(rng, s)
        out.append(abs(G.Ad_star(g, mu) @ G.Ad(g, xi) - mu @ xi))
    return _mx(out), n, {}


@check("algebra", "exp_log_roundtrip")
def _explog(s, rng, n):
    G = s.G
    out = []
    for _ in range(n):
        xi = S.algebra(rng, s, S.ALG_BOUND)
        out.append(np.abs(G.log(G.exp(xi)) - xi).max())
        out.append(G.membership_residual(G.exp(xi)))
    return _mx(out), n, {}


@check("algebra", "exp_forward_mode_vs_fd", tier="fd")
def _exp_fd(s, rng, n):
    G = s.G
    out = []
    for _ in range(n):
        xi, d = S.algebra(rng, s), S.algebra(rng, s)
        t = new_tag()
        fwd = deriv(G.exp(Dual(xi, d, t)), t)
        out.append(np.abs(fwd - central_difference(G.exp, xi, d)).max())
    return _mx(out), n, {}


# --- bundle -----------------------------------------------------------------------------

@check("bundle", "connection_reproduces_generators")
def _gen(s, rng, n):
    out = []
    for _ in range(n):
        q, xi = S.point(rng, s), S.algebra(rng, s)
        out.append(np.abs(B.connection_eval(s, B.fundamental_vector(s, xi, q)) - xi).max())
    return _mx(out), n, {}


@check("bundle", "connection_equivariance")
def _conn_eq(s, rng, n):
    out = []
    for _ in range(n):
        v, g = S.intrinsic("TQ", rng, s), S.group_element(rng, s)
        lhs = B.connection_eval(s, B.act_tangent(g, v))
        out.append(np.abs(lhs - s.G.Ad(g, B.connection_eval(s, v))).max())
    return _mx(out), n, {}


@check("bundle", "horizontal_lift")
def _hor(s, rng, n):
    out = []
    for _ in range(n):
        q, u = S.point(rng, s), S.draw("base", rng, s)
        h = B.horizontal_lift(s, q, u)
        out.append(np.abs(B.connection_eval(s, h)).max())
        out.append(np.abs(B.tangent_projection(h) - u).max())
    return _mx(out), n, {}


@check("bundle", "horizontal_dual_and_moment_map")
def _hstar(s, rng, n):
    out = []
    for _ in range(n):
        z = S.intrinsic("T*Q", rng, s)
        u, xi = S.draw("base", rng, s), S.algebra(rng, s)
        out.append(abs(B.horizontal_dual(s, z) @ u
                       - B.pair_cotangent(z, B.horizontal_lift(s, z.q, u))))
        out.append(abs(B.moment_map(s, z) @ xi
                       - B.pair_cotangent(z, B.fundamental_vector(s, xi, z.q))))
    return _mx(out), n, {}


@check("bundle", "forward_mode_vs_fd", tier="fd")
def _fwd_fd(s, rng, n):
    """Derivatives of A, h, h* and J along x by forward mode and by central differences."""
    out = []
    for _ in range(n):
        g = S.group_element(rng, s)
        x, d, u = (S.draw("base", rng, s) for _ in range(3))
        gd = g @ s.G.hat(S.algebra(rng, s))
        m = S.algebra(rng, s)
        fns = [lambda xx: B.conn(s, g, xx, gd, u),
               lambda xx: B.hor(s, g, xx, u),
               lambda xx: B.hstar(s, xx, m, u),
               lambda xx: B.connection_dual_raw(s, g, xx, m)[1]]
        for f in fns:
            t = new_tag()
            fwd = deriv(f(Dual(x, d, t)), t)
            out.append(np.abs(fwd - central_difference(f, x, d)).max())
        # J along the group direction
        xi = S.algebra(rng, s)
        fJ = lambda c: B.mom(s, g @ s.G.exp(c), m)  # noqa: E731
        t = new_tag()
        fwd = deriv(fJ(Dual(np.zeros(s.k), xi, t)), t)
        out.append(np.abs(fwd - central_difference(fJ, np.zeros(s.k), xi)).max())
    return _mx(out), n, {}


def connection_form_chart(s, g0):
    """The connection 1-form in the chart (xi_g, x) -> (g0 exp(xi_g), x)."""
    k = s.k

    def form(p, vs):
        (v,) = vs
        t = new_tag()
        gt = g0 @ s.G.exp(Dual(p[:k], v[:k], t))
        g = g0 @ s.G.exp(p[:k])
        return B.conn(s, g, p[k:], deriv(gt, t), v[k:])

    return form


def curvature_fd(s, q, u, w, h=None):
    """B_q(u^h, w^h) = dA(u^h, w^h) by finite differences of A in a chart."""
    k = s.k
    form = connection_form_chart(s, q.g)
    a = B.a_matrix(s, q.x)
    du = np.concatenate([-a @ u, u])
    dw = np.concatenate([-a @ w, w])
    p0 = np.concatenate([np.zeros(k), q.x])
    kw = {} if h is None else {"h": h}
    return exterior_derivative_fd(form, p0, [du, dw], **kw)


@check("bundle", "curvature_structure_equation", tier="fd")
def _curv(s, rng, n):
    out = []
    for _ in range(n):
        q = S.point(rng, s)
        u, w = S.draw("base", rng, s), S.draw("base", rng, s)
        out.append(np.abs(curvature_fd(s, q, u, w) - B.curvature_at(s, q.g, q.x, u, w)).max())
    return _mx(out), n, {}


@check("bundle", "monopole_unit_curvature", tier="1e-12", scenarios=("monopole",))
def _mono(s, rng, n):
    E = np.eye(2)
    out = [abs(B.curvature_base(s, S.draw("base", rng, s) * 5, E[0], E[1])[0] - 1.0)
           for _ in range(n)]
    return _mx(out), n, {}


@check("bundle", "flat_zero_curvature", tier="1e-12", scenarios=("flat", "flat-so3"))
def _flat(s, rng, n):
    out = []
    for _ in range(n):
        x, u, w = (S.draw("base", rng, s) for _ in range(3))
        out.append(np.abs(B.curvature_base(s, x, u, w)).max())
    return _mx(out), n, {}


# --- trivialize ---------------------------------------------------------------------------

@check("trivialize", "lambda_roundtrip", tier="1e-9")
def _rt(s, rng, n):
    out = []
    for _ in range(n):
        for sp in SPACES:
            w = S.intrinsic(sp, rng, s)
            out.append(residual(lambda_inv(s, sp, lambda_map(s, sp, w)), w))
            t = S.trivialized(sp, rng, s)
            out.append(residual(lambda_map(s, sp, lambda_inv(s, sp, t)), t))
    return _mx(out), n, {"spaces": list(SPACES)}


@check("trivialize", "lambda_equivariance", tier="1e-9")
def _leq(s, rng, n):
    out = []
    for _ in range(n):
        g = S.group_element(rng, s)
        for sp in SPACES:
            w = S.intrinsic(sp, rng, s)
            out.append(residual(lambda_map(s, sp, act_intrinsic(sp, g, w)),
                                act(s, sp, g, lambda_map(s, sp, w))))
    return _mx(out), n, {}


def intrinsic_projection(kind, w):
    if kind == "tau_TQ":
        return w.v
    if kind in ("Ttau_Q", "Ttau*_Q"):
        q = w.v.q if kind == "Ttau_Q" else w.z.q
        return B.BundleTangent(q, w.gp, w.xp)
    if kind in ("tau_T*Q", "tau*_T*Q"):
        return w.z
    if kind == "tau*_TQ":
        return w.v
    if kind == "tau_TT*Q":
        return w.Z
    if kind == "Ttau_T*Q":
        return B.CotangentTangent(w.Z.z, w.gt, w.xt, w.mt, w.yt)
    return w.q


@check("trivialize", "projections", tier="1e-9")
def _proj(s, rng, n):
    out = []
    for _ in range(n):
        g = S.group_element(rng, s)
        for kind, (src, tgt) in PROJECTIONS.items():
            w = S.intrinsic(src, rng, s)
            t = lambda_map(s, src, w)
            p_hat = hat_projection(kind, t)
            p_int = intrinsic_projection(kind, w)
            if tgt is None:
                out.append(np.abs(p_hat.x - p_int.x).max())
                out.append(np.abs(p_hat.g - p_int.g).max())
                continue
            out.append(residual(p_hat, lambda_map(s, tgt, p_int)))
            out.append(residual(hat_projection(kind, act(s, src, g, t)), act(s, tgt, g, p_hat)))
    return _mx(out), n, {}


PAIR_SAMPLERS = {"tilde": S.tilde_pair, "T*T": S.TstarT_pair, "T*T*": S.TstarTstar_pair}


def _duality_pair(rng, s):
    z = S.trivialized("T*Q", rng, s)
    return z, S.trivialized("TQ", rng, s, z.q)


PAIR_SAMPLERS["duality"] = _duality_pair

INTRINSIC_PAIRINGS = {
    "duality": lambda s, c, v: B.pair_cotangent(c, v),
    "tilde": I.pair_tilde,
    "T*T": I.pair_TstarTQ,
    "T*T*": I.pair_TstarTstarQ,
}


@check("trivialize", "pairings", tier="1e-9")
def _pairs(s, rng, n):
    out = []
    for _ in range(n):
        g = S.group_element(rng, s)
        for kind, draw in PAIR_SAMPLERS.items():
            c, v = draw(rng, s)
            val = hat_pair(kind, c, v)
            ref = INTRINSIC_PAIRINGS[kind](s, lambda_inv(s, c.space, c), lambda_inv(s, v.space, v))
            out.append(abs(val - ref))
            out.append(abs(hat_pair(kind, act(s, c.space, g, c), act(s, v.space, g, v)) - val))
    return _mx(out), n, {}


# --- triplet -----------------------------------------------------------------------------

@check("triplet", "kappa_involution")
def _kinv(s, rng, n):
    out = []
    for _ in range(n):
        t = S.trivialized("TTQ", rng, s)
        out.append(residual(P.kappa_hat(P.kappa_hat(t, s), s), t))
    return _mx(out), n, {}


@check("triplet", "kappa_intertwines_projections")
def _kproj(s, rng, n):
    out = []
    for _ in range(n):
        t = S.trivialized("TTQ", rng, s)
        k = P.kappa_hat(t, s)
        out.append(residual(hat_projection("tau_TQ", k), hat_projection("Ttau_Q", t)))
        out.append(residual(hat_projection("Ttau_Q", k), hat_projection("tau_TQ", t)))
    return _mx(out), n, {}


def _intrinsic_route(s, space_in, space_out, fn, t):
    return lambda_map(s, space_out, fn(lambda_inv(s, space_in, t)))


@check("triplet", "kappa_matches_ambient_swap", tier="1e-9")
def _kint(s, rng, n):
    out = []
    for _ in range(n):
        t = S.trivialized("TTQ", rng, s)
        out.append(residual(_intrinsic_route(s, "TTQ", "TTQ", I.kappa, t), P.kappa_hat(t, s)))
    return _mx(out), n, {}


@check("triplet", "alpha_defining_identity")
def _aid(s, rng, n):
    out = []
    for _ in range(n):
        Z, W = S.alpha_pair(rng, s)
        out.append(abs(hat_pair("T*T", P.alpha_hat(Z, s), W) + hat_pair("tilde", Z, P.kappa_hat(W, s))))
    return _mx(out), n, {}


@check("triplet", "alpha_matches_ambient", tier="1e-9")
def _aint(s, rng, n):
    out = []
    for _ in range(n):
        Z = S.trivialized("TT*Q", rng, s)
        ref = _intrinsic_route(s, "TT*Q", "T*TQ", lambda w: I.alpha(s, w), Z)
        out.append(residual(ref, P.alpha_hat(Z, s)))
    return _mx(out), n, {}


@check("triplet", "omega_flat_defining_identity")
def _oid(s, rng, n):
    out = []
    for _ in range(n):
        Z1, Z2 = S.same_foot_pair(rng, s)
        out.append(abs(hat_pair("T*T*", P.omega_flat_hat(Z1, s), Z2) - P.Omega_hat(Z1, Z2, s)))
    return _mx(out), n, {}


@check("triplet", "omega_flat_matches_ambient", tier="1e-9")
def _oint(s, rng, n):
    out = []
    for _ in range(n):
        Z = S.trivialized("TT*Q", rng, s)
        ref = _intrinsic_route(s, "TT*Q", "T*T*Q", lambda w: I.omega_flat(s, w), Z)
        out.append(residual(ref, P.omega_flat_hat(Z, s)))
    return _mx(out), n, {}


@check("triplet", "theta_defining_relation", tier="1e-11")
def _thr(s, rng, n):
    out = []
    for _ in range(n):
        Z = S.trivialized("TT*Q", rng, s)
        z = hat_projection("tau_T*Q", Z)
        lhs = hat_pair("T*T*", P.theta_hat(z), Z)
        rhs = hat_pair("duality", z, hat_projection("Ttau*_Q", Z))
        out.append(abs(lhs - rhs))
    return _mx(out), n, {}


@check("triplet", "theta_matches_ambient", tier="1e-9")
def _thint(s, rng, n):
    out = []
    for _ in range(n):
        z = S.trivialized("T*Q", rng, s)
        out.append(residual(_intrinsic_route(s, "T*Q", "T*T*Q", I.theta, z), P.theta_hat(z)))
    return _mx(out), n, {}


@check("triplet", "equivariance")
def _equiv(s, rng, n):
    out = []
    for _ in range(n):
        g = S.group_element(rng, s)
        W = S.trivialized("TTQ", rng, s)
        out.append(residual(P.kappa_hat(act(s, "TTQ", g, W), s), act(s, "TTQ", g, P.kappa_hat(W, s))))
        Z1, Z2 = S.same_foot_pair(rng, s)
        gZ1, gZ2 = act(s, "TT*Q", g, Z1), act(s, "TT*Q", g, Z2)
        out.append(residual(P.alpha_hat(gZ1, s), act(s, "T*TQ", g, P.alpha_hat(Z1, s))))
        out.append(residual(P.omega_flat_hat(gZ1, s), act(s, "T*T*Q", g, P.omega_flat_hat(Z1, s))))
        z = hat_projection("tau_T*Q", Z1)
        out.append(residual(P.theta_hat(act(s, "T*Q", g, z)), act(s, "T*T*Q", g, P.theta_hat(z))))
        out.append(abs(P.Omega_hat(gZ1, gZ2, s) - P.Omega_hat(Z1, Z2, s)))
    return _mx(out), n, {}


@check("triplet", "Omega_antisymmetric")
def _anti(s, rng, n):
    out = []
    for _ in range(n):
        Z1, Z2 = S.same_foot_pair(rng, s)
        out.append(abs(P.Omega_hat(Z1, Z2, s) + P.Omega_hat(Z2, Z1, s)))
        out.append(abs(P.Omega_hat(Z1, Z1, s)))
    return _mx(out), n, {}


def _fiber_basis(s, z):
    """Basis of the fiber of trivialized TT*Q over z = (q, y, mu)."""
    from .trivialize import TrivTTstarQ
    n_, k = s.n, s.k
    dim = 2 * n_ + 2 * k
    out = []
    for j in range(dim):
        e = np.zeros(dim)
        e[j] = 1.0
        out.append(TrivTTstarQ(z.q, z.y, e[:n_], e[n_:2 * n_], e[2 * n_:2 * n_ + k], z.mu,
                               e[2 * n_ + k:]))
    return out


def omega_gram(s, z):
    basis = _fiber_basis(s, z)
    return np.array([[P.Omega_hat(a, b, s) for b in basis] for a in basis])


@check("triplet", "Omega_nondegenerate")
def _nondeg(s, rng, n):
    out, smin = [], np.inf
    for _ in range(n):
        z = S.trivialized("T*Q", rng, s)
        M = omega_gram(s, z)
        sv = np.linalg.svd(M, compute_uv=False)
        smin = min(smin, sv[-1])
        # rank deficiency counted as unit residual
        out.append(float(np.linalg.matrix_rank(M, tol=1e-8) != M.shape[0]))
        out.append(np.abs(M + M.T).max())
    return _mx(out), n, {"min_singular_value": float(smin)}


@check("triplet", "Omega_closed", tier="fd")
def _closed(s, rng, n):
    dO = P.exterior_d(P.Omega_form(s))
    out = []
    for _ in range(n):
        Z1, Z2 = S.same_foot_pair(rng, s)
        Z3 = S.trivialized("TT*Q", rng, s, Z1.q)
        Z3 = replace(Z3, y=Z1.y, mu=Z1.mu)
        out.append(abs(dO(hat_projection("tau_T*Q", Z1), Z1, Z2, Z3)))
    return _mx(out), n, {}


@check("triplet", "Omega_equals_minus_dtheta", tier="fd")
def _dth(s, rng, n):
    dth = P.exterior_d(P.theta_form(s))
    out = []
    for _ in range(n):
        Z1, Z2 = S.same_foot_pair(rng, s)
        out.append(abs(dth(hat_projection("tau_T*Q", Z1), Z1, Z2) + P.Omega_hat(Z1, Z2, s)))
    return _mx(out), n, {}


def ambient_Omega_fd(s, Z1, Z2):
    """-d theta_Q of T*Q by finite differences in ambient coordinates, on lambda_inv(Z_i)."""
    i1, i2 = lambda_inv(s, "TT*Q", Z1), lambda_inv(s, "TT*Q", Z2)
    form, p0 = I.theta_chart(s, i1.z)
    return -exterior_derivative_fd(form, p0, [I.chart_vector(s, i1), I.chart_vector(s, i2)])


@check("triplet", "Omega_matches_ambient_canonical_form", tier="audit")
def _oracle(s, rng, n):
    out = []
    for _ in range(n):
        Z1, Z2 = S.same_foot_pair(rng, s)
        out.append(abs(P.Omega_hat(Z1, Z2, s) - ambient_Omega_fd(s, Z1, Z2)))
    return _mx(out), n, {}


POTENTIAL_STEP = 1e-3


def ttt_pair(rng, s):
    Z = S.trivialized("TT*Q", rng, s)
    return Z, S.over(Z, rng, s), S.over(Z, rng, s)


@check("triplet", "potentials_same_exterior_derivative", tier="fd")
def _pot(s, rng, n):
    d1 = P.exterior_d(P.vartheta1(s), POTENTIAL_STEP)
    d2 = P.exterior_d(P.vartheta2(s, POTENTIAL_STEP), POTENTIAL_STEP)
    out = []
    for _ in range(n):
        Z, X1, X2 = ttt_pair(rng, s)
        out.append(abs(d1(Z, X1, X2) - d2(Z, X1, X2)))
    return _mx(out), n, {"step": POTENTIAL_STEP}


def closed_form_residuals(s, rng, n):
    """Per-reading residuals of dT_Omega_hat against finite-difference d(vartheta1)."""
    d1 = P.exterior_d(P.vartheta1(s))
    res = {r: [] for r in P.READINGS}
    groups = {g: [] for g in P.TERM_GROUPS}
    for _ in range(n):
        Z, X1, X2 = ttt_pair(rng, s)
        ref = d1(Z, X1, X2)
        terms = {r: P.dT_Omega_terms(X1, X2, s, r) for r in P.READINGS}
        for r in P.READINGS:
            res[r].append(abs(sum(terms[r].values()) - ref))
        for g in P.TERM_GROUPS:
            groups[g].append(abs(terms["foot"][g] - terms["corrected"][g]))
    return {r: _mx(v) for r, v in res.items()}, {g: _mx(v) for g, v in groups.items()}


@check("triplet", "closed_form_display", tier="audit", scenarios=("flat", "monopole"))
def _cf_disp(s, rng, n):
    res, _ = closed_form_residuals(s, rng, n)
    return res["foot"], n, {"reading": "foot"}


@check("triplet", "closed_form_corrected", tier="audit")
def _cf_corr(s, rng, n):
    res, _ = closed_form_residuals(s, rng, n)
    return res["corrected"], n, {"reading": "corrected"}


# --- reduce ------------------------------------------------------------------------------

@check("reduce", "representative_independence")
def _rep(s, rng, n):
    out = []
    for _ in range(n):
        g = S.group_element(rng, s)
        for sp in SPACES:
            t = S.trivialized(sp, rng, s)
            out.append(R.reduced_residual(R.reduce(s, sp, act(s, sp, g, t)), R.reduce(s, sp, t)))
            r = R.reduce(s, sp, t)
            out.append(R.reduced_residual(R.reduce(s, sp, R.representative(s, sp, r, g)), r))
    return _mx(out), n, {}


@check("reduce", "map_squares")
def _squares(s, rng, n):
    out = []
    for _ in range(n):
        W = S.trivialized("TTQ", rng, s)
        out.append(R.reduced_residual(R.reduce(s, "TTQ", P.kappa_hat(W, s)),
                                      R.kappa_bar(s, R.reduce(s, "TTQ", W))))
        Z1, Z2 = S.same_foot_pair(rng, s)
        r1, r2 = R.reduce(s, "TT*Q", Z1), R.reduce(s, "TT*Q", Z2)
        out.append(R.reduced_residual(R.reduce(s, "T*TQ", P.alpha_hat(Z1, s)), R.alpha_bar(s, r1)))
        out.append(R.reduced_residual(R.reduce(s, "T*T*Q", P.omega_flat_hat(Z1, s)),
                                      R.omega_flat_bar(s, r1)))
        z = hat_projection("tau_T*Q", Z1)
        out.append(R.reduced_residual(R.reduce(s, "T*T*Q", P.theta_hat(z)),
                                      R.theta_bar(R.reduce(s, "T*Q", z))))
        out.append(abs(P.Omega_hat(Z1, Z2, s) - R.Omega_bar(s, r1, r2)))
    return _mx(out), n, {}


@check("reduce", "projection_and_pairing_squares")
def _psq(s, rng, n):
    out = []
    for _ in range(n):
        for kind, (src, tgt) in PROJECTIONS.items():
            t = S.trivialized(src, rng, s)
            a = R.bar_projection(kind, R.reduce(s, src, t))
            h = hat_projection(kind, t)
            if tgt is None:
                out.append(np.abs(a - h.x).max())
            else:
                out.append(R.reduced_residual(a, R.reduce(s, tgt, h)))
        for kind, draw in PAIR_SAMPLERS.items():
            c, v = draw(rng, s)
            out.append(abs(hat_pair(kind, c, v)
                           - R.bar_pair(kind, R.reduce(s, c.space, c), R.reduce(s, v.space, v))))
    return _mx(out), n, {}


@check("reduce", "kappa_bar_involution")
def _kbar(s, rng, n):
    out = []
    for _ in range(n):
        r = R.reduce(s, "TTQ", S.trivialized("TTQ", rng, s))
        out.append(R.reduced_residual(R.kappa_bar(s, R.kappa_bar(s, r)), r))
    return _mx(out), n, {}


@check("reduce", "Omega_bar_antisymmetric")
def _obar(s, rng, n):
    out = []
    for _ in range(n):
        Z1, Z2 = S.same_foot_pair(rng, s)
        r1, r2 = R.reduce(s, "TT*Q", Z1), R.reduce(s, "TT*Q", Z2)
        out.append(abs(R.Omega_bar(s, r1, r2) + R.Omega_bar(s, r2, r1)))
    return _mx(out), n, {}


# --- audit of the closed-form lifted 2-form -----------------------------------------------

@check("audit", "closed_form_term_groups", tier="audit", audit=True)
def _audit(s, rng, n):
    res, groups = closed_form_residuals(s, rng, n)
    tol = 1e-5
    notes = {
        "reading_residuals": res,
        "matching_readings": sorted(r for r, v in res.items() if v <= tol),
        "term_group_display_minus_corrected": groups,
        "discrepant_term_groups": sorted(g for g, v in groups.items() if v > tol),
    }
    return res["foot"], n, notes


def checks_for(suites=None):
    wanted = SUITES if suites is None else tuple(suites)
    return [c for c in REGISTRY if c.suite in wanted]
