import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tulczyjew import algebra as A
from tulczyjew.algebra import SO2, SO3, TagMismatch
from tulczyjew.numerics import directional_derivative

vec3 = arrays(float, 3, elements=st.floats(-1.5, 1.5))
E = np.eye(3)


def alg(c, tag="SO3"):
    return A.AlgebraElement(np.atleast_1d(np.asarray(c, float)), tag)


def co(c, tag="SO3"):
    return A.CoalgebraElement(np.atleast_1d(np.asarray(c, float)), tag)


def grp(c, tag="SO3"):
    return A.exp_group(alg(c, tag))


def test_so3_bracket_basis():
    # commutator of the hat matrices, taken directly
    H = [SO3.hat(e) for e in E]
    comm = H[0] @ H[1] - H[1] @ H[0]
    assert np.allclose(comm, H[2], atol=1e-15)
    assert np.allclose(A.bracket(alg(E[0]), alg(E[1])).coeffs, E[2], atol=1e-15)


def test_so2_bracket_vanishes():
    assert A.bracket(alg(1.0, "SO2"), alg(2.0, "SO2")).coeffs[0] == 0.0


@given(vec3)
def test_bracket_antisymmetric(a):
    assert np.abs(SO3.bracket(a, a)).max() <= 1e-15


def test_tag_mismatch():
    with pytest.raises(TagMismatch):
        A.bracket(alg(E[0]), alg(1.0, "SO2"))
    with pytest.raises(TagMismatch):
        A.Ad(grp(0.1, "SO2"), alg(E[0]))
    with pytest.raises(ValueError):
        A.pair((co(E[0]), co(E[1])), alg(E[0]))


def test_ad_star_brute_force_dual_basis():
    # <e2*, [e1, e_j]> for every basis e_j
    want = np.array([E[1] @ SO3.bracket(E[0], E[j]) for j in range(3)])
    assert np.allclose(A.ad_star(alg(E[0]), co(E[1])).coeffs, want, atol=1e-15)
    assert np.all(A.ad_star(alg(0.3, "SO2"), co(2.0, "SO2")).coeffs == 0)
    assert np.all(SO3.ad_star(np.zeros(3), E[1]) == 0)


@given(vec3, vec3, vec3)
def test_ad_star_defining_relation(xi, mu, eta):
    assert abs(SO3.ad_star(xi, mu) @ eta - mu @ SO3.bracket(xi, eta)) <= 1e-12


def test_Ad_examples():
    xi = np.array([0.3, -0.2, 0.5])
    assert np.allclose(SO3.Ad(np.eye(3), xi), xi)
    assert np.allclose(SO3.Ad(SO3.exp(0.7 * xi), xi), xi, atol=1e-14)
    assert np.allclose(SO2.Ad(SO2.exp([1.2]), [1.0]), [1.0])
    assert np.allclose(SO2.Ad_star(SO2.exp([1.2]), [3.0]), [3.0])


def test_Ad_star_defining_relation(rng):
    for _ in range(100):
        g, mu, xi = SO3.exp(rng.uniform(-1.5, 1.5, 3)), rng.normal(size=3), rng.normal(size=3)
        assert abs(SO3.Ad_star(g, mu) @ xi - mu @ SO3.Ad(g.T, xi)) <= 1e-12


@given(vec3, vec3, vec3)
def test_Ad_preserves_bracket_and_pairing(c, a, b):
    g = SO3.exp(c)
    lhs = SO3.Ad(g, SO3.bracket(a, b))
    assert np.abs(lhs - SO3.bracket(SO3.Ad(g, a), SO3.Ad(g, b))).max() <= 1e-11
    assert abs(SO3.Ad_star(g, a) @ SO3.Ad(g, b) - a @ b) <= 1e-11


@given(vec3, vec3, vec3)
def test_derivative_of_Ad_star(xi, mu, eta):
    f = lambda t: SO3.Ad_star(SO3.exp(t * xi), mu) @ eta  # noqa: E731
    d = directional_derivative(lambda t: f(t), np.array(0.0), np.array(1.0))
    assert abs(d + SO3.ad_star(xi, mu) @ eta) <= 1e-9


def test_exp_examples():
    assert np.array_equal(A.exp_group(alg(np.zeros(3))).matrix, np.eye(3))
    R = SO2.exp([np.pi / 2])
    assert np.abs(R @ [1.0, 0.0] - [0.0, 1.0]).max() <= 1e-12


def _series(K, terms):
    out, term = np.eye(3), np.eye(3)
    for k in range(1, terms):
        term = term @ K / k
        out = out + term
    return out


def test_rodrigues_matches_series(rng):
    # the 12-term series has remainder ~|xi|^12/12!, which stays under 1e-10
    # only for |xi| <= 0.7; a converged 30-term series covers the unit ball
    for _ in range(100):
        xi = rng.normal(size=3)
        xi /= max(1.0, np.linalg.norm(xi))
        K = SO3.hat(xi)
        assert np.abs(SO3.exp(xi) - _series(K, 30)).max() <= 1e-14
        assert np.abs(SO3.exp(0.7 * xi) - _series(0.7 * K, 12)).max() <= 1e-10
        assert SO3.membership_residual(SO3.exp(xi)) <= 1e-12


def test_exp_log_roundtrip():
    xi = alg([0.4, -0.9, 0.2])
    assert np.allclose(A.log_group(A.exp_group(xi)).coeffs, xi.coeffs, atol=1e-12)


@given(vec3, vec3, vec3)
def test_jacobi(a, b, c):
    br = SO3.bracket
    r = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
    assert np.abs(r).max() <= 1e-12


# --- tangent group ---------------------------------------------------------------

def tge(xi, c, tag="SO3"):
    return A.TangentGroupElement(alg(xi, tag), grp(c, tag))


def tae(xi, eta, tag="SO3"):
    return A.TangentAlgebraElement(alg(xi, tag), alg(eta, tag))


def test_tangent_group_identity_and_inverse():
    a = tge([0.1, 0.2, -0.3], [0.5, -0.4, 0.2])
    e = tge(np.zeros(3), np.zeros(3))
    p = A.tangent_group_mul(e, a)
    assert np.allclose(p.xi.coeffs, a.xi.coeffs) and np.allclose(p.g.matrix, a.g.matrix)
    g = a.g.matrix
    inv = A.TangentGroupElement(alg(-SO3.Ad(g.T, a.xi.coeffs)), A.GroupElement(g.T, "SO3"))
    p = A.tangent_group_mul(a, inv)
    assert np.abs(p.xi.coeffs).max() < 1e-15 and np.allclose(p.g.matrix, np.eye(3), atol=1e-15)


def test_tangent_group_so2_product():
    p = A.tangent_group_mul(tge(1.0, 0.3, "SO2"), tge(2.0, 0.5, "SO2"))
    assert np.allclose(p.xi.coeffs, [3.0]) and np.allclose(p.g.matrix, SO2.exp([0.8]))


def test_tangent_Ad_examples():
    zeta, xi, eta = np.array([0.2, -0.1, 0.4]), np.array([1.0, 2.0, 0.5]), np.array([-0.3, 0.7, 0.1])
    out = A.tangent_Ad(tge(zeta, np.zeros(3)), tae(xi, eta))
    assert np.allclose(out.xi.coeffs, xi - SO3.bracket(eta, zeta))
    assert np.allclose(out.eta.coeffs, eta)
    out = A.tangent_Ad(tge(np.zeros(3), np.zeros(3)), tae(xi, eta))
    assert np.allclose(out.xi.coeffs, xi) and np.allclose(out.eta.coeffs, eta)
    out = A.tangent_Ad(tge(0.4, 1.1, "SO2"), tae(2.0, 3.0, "SO2"))
    assert np.allclose(out.xi.coeffs, [2.0]) and np.allclose(out.eta.coeffs, [3.0])


def test_tangent_bracket_examples():
    x1, x2 = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    out = A.tangent_bracket(tae(x1, np.zeros(3)), tae(x2, np.zeros(3)))
    assert np.allclose(out.xi.coeffs, E[2]) and np.allclose(out.eta.coeffs, 0)
    v = tae([0.3, 0.1, -0.2], [0.5, 0.5, 0.1])
    out = A.tangent_bracket(v, v)
    assert np.abs(out.xi.coeffs).max() < 1e-15 and np.abs(out.eta.coeffs).max() < 1e-15


def test_tangent_bracket_jacobi(rng):
    for _ in range(100):
        v = [tuple(rng.normal(size=(2, 3))) for _ in range(3)]
        br = lambda p, q: A.tg_bracket(SO3, p, q)  # noqa: E731
        terms = [br(v[0], br(v[1], v[2])), br(v[1], br(v[2], v[0])), br(v[2], br(v[0], v[1]))]
        assert max(np.abs(sum(t[i] for t in terms)).max() for i in range(2)) <= 1e-12


def test_tangent_mul_associative_and_Ad_action(rng):
    for _ in range(50):
        a, b, c = [(rng.normal(size=3), SO3.exp(rng.uniform(-1.5, 1.5, 3))) for _ in range(3)]
        m = lambda p, q: A.tg_mul(SO3, p, q)  # noqa: E731
        l, r = m(m(a, b), c), m(a, m(b, c))
        assert max(np.abs(l[0] - r[0]).max(), np.abs(l[1] - r[1]).max()) <= 1e-11
        v = tuple(rng.normal(size=(2, 3)))
        l = A.tg_Ad(SO3, m(a, b), v)
        r = A.tg_Ad(SO3, a, A.tg_Ad(SO3, b, v))
        assert max(np.abs(l[i] - r[i]).max() for i in range(2)) <= 1e-11


def test_pair():
    assert A.pair(co(0.0, "SO2"), alg(3.0, "SO2")) == 0.0
    assert A.pair((co(2.0, "SO2"), co(3.0, "SO2")), (alg(5.0, "SO2"), alg(7.0, "SO2"))) == 29.0
    z = co(np.zeros(3))
    assert A.pair((co(E[0]), z), (alg(E[0]), alg(np.zeros(3)))) == 0.0


def test_tangent_pairing_is_derivative_of_plain_pairing(rng):
    # <(mu, nu), (xi, eta)> = d/ds <mu + s nu, xi + s eta> at 0
    mu, nu, xi, eta = rng.normal(size=(4, 3))
    d = directional_derivative(lambda s: ((mu + s * nu) * (xi + s * eta)).sum(),
                               np.array(0.0), np.array(1.0))
    assert abs(A.tg_pair((mu, nu), (xi, eta)) - d) < 1e-13
