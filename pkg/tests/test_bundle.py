import numpy as np
import pytest

from tulczyjew import bundle as B
from tulczyjew import sampling as S
from tulczyjew.bundle import BundleCotangent, BundlePoint, BundleTangent
from tulczyjew.numerics import directional_derivative
from tulczyjew.suites import curvature_fd

E2 = np.eye(2)


def mono():
    return B.get_scenario("monopole")


def test_scenario_validation():
    with pytest.raises(ValueError):
        B.Scenario("bad", "SO2", 0)
    with pytest.raises(ValueError):
        B.Scenario("bad", "SO2", 2, ((np.zeros((3, 2)), (0, 0)),))
    with pytest.raises(KeyError):
        B.get_scenario("nope")
    s = B.scenario_from_dict({"name": "custom", "group": "SO2", "n": 1,
                              "terms": [{"coef": [[2.0]], "exponents": [1]}]})
    assert B.a_matrix(s, np.array([3.0]))[0, 0] == 6.0


def test_monopole_connection_value():
    q = BundlePoint(np.eye(2), np.array([1.0, 0.0]))
    v = BundleTangent(q, mono().G.hat([2.0]), np.array([0.0, 3.0]))
    assert abs(B.connection_eval(mono(), v)[0] - 3.5) < 1e-15


def test_monopole_horizontal_lift():
    s = mono()
    q = BundlePoint(np.eye(2), np.array([1.0, 0.0]))
    h = B.horizontal_lift(s, q, [0.0, 3.0])
    assert abs(s.G.vee(h.gdot)[0] + 1.5) < 1e-15
    assert abs(B.connection_eval(s, h)[0]) < 1e-15


def test_flat_special_cases(rng):
    s = B.get_scenario("flat-so3")
    q = S.point(rng, s)
    assert np.all(B.horizontal_lift(s, q, [1.0, 2.0]).gdot == 0)
    mu = rng.normal(size=3)
    z = B.connection_dual(s, BundlePoint(np.eye(3), q.x), mu)
    assert np.allclose(z.m, mu) and np.all(z.y == 0)
    z = S.intrinsic("T*Q", rng, s)
    assert np.allclose(B.horizontal_dual(s, z), z.y)


def test_horizontal_dual_monopole_example():
    # a(1, 0) = (0, 1/2), so h(e2) has group velocity -1/2 and
    # <z, h(e2)> = 2 * (-1/2) + 1 = 0
    s = mono()
    q = BundlePoint(np.eye(2), np.array([1.0, 0.0]))
    z = BundleCotangent(q, np.array([2.0]), np.array([0.0, 1.0]))
    lhs = B.horizontal_dual(s, z) @ E2[1]
    rhs = B.pair_cotangent(z, B.horizontal_lift(s, q, E2[1]))
    assert abs(lhs - rhs) < 1e-15
    assert abs(lhs) < 1e-15


def test_horizontal_dual_defining_relation(scenario, rng):
    for _ in range(50):
        z = S.intrinsic("T*Q", rng, scenario)
        u = rng.normal(size=scenario.n)
        ref = B.pair_cotangent(z, B.horizontal_lift(scenario, z.q, u))
        assert abs(B.horizontal_dual(scenario, z) @ u - ref) <= 1e-12


def test_connection_dual_pairing(scenario, rng):
    q = S.point(rng, scenario)
    mu = rng.normal(size=scenario.k)
    zd = B.connection_dual(scenario, q, mu)
    for _ in range(50):
        v = S.intrinsic("TQ", rng, scenario, q)
        assert abs(B.pair_cotangent(zd, v) - mu @ B.connection_eval(scenario, v)) <= 1e-12
    z0 = B.connection_dual(scenario, q, np.zeros(scenario.k))
    assert np.all(z0.m == 0) and np.all(z0.y == 0)


def test_moment_map(scenario, rng):
    G = scenario.G
    z = S.intrinsic("T*Q", rng, scenario, BundlePoint(G.identity(), np.array([0.3, -0.2])))
    assert np.allclose(B.moment_map(scenario, z), z.m)
    for _ in range(100):
        z = S.intrinsic("T*Q", rng, scenario)
        xi = rng.normal(size=scenario.k)
        ref = B.pair_cotangent(z, B.fundamental_vector(scenario, xi, z.q))
        assert abs(B.moment_map(scenario, z) @ xi - ref) <= 1e-12
        g0 = S.group_element(rng, scenario)
        lhs = B.moment_map(scenario, B.act_cotangent(g0, z))
        assert np.abs(lhs - G.Ad_star(g0, B.moment_map(scenario, z))).max() <= 1e-11


def test_connection_axioms(scenario, rng):
    G = scenario.G
    for _ in range(50):
        q = S.point(rng, scenario)
        xi = rng.normal(size=scenario.k)
        assert np.abs(B.connection_eval(scenario, B.fundamental_vector(scenario, xi, q)) - xi).max() <= 1e-12
        v = S.intrinsic("TQ", rng, scenario, q)
        g0 = S.group_element(rng, scenario)
        lhs = B.connection_eval(scenario, B.act_tangent(g0, v))
        assert np.abs(lhs - G.Ad(g0, B.connection_eval(scenario, v))).max() <= 1e-12


def test_fundamental_vector_is_orbit_derivative(scenario, rng):
    q = S.point(rng, scenario)
    xi = rng.normal(size=scenario.k)
    d = directional_derivative(lambda t: scenario.G.exp(t * xi) @ q.g, np.array(0.0), np.array(1.0))
    assert np.abs(d - B.fundamental_vector(scenario, xi, q).gdot).max() <= 1e-10
    zero = B.fundamental_vector(scenario, np.zeros(scenario.k), q)
    assert np.all(zero.gdot == 0) and np.all(zero.xdot == 0)


def test_whitney_decomposition(scenario, rng):
    for _ in range(50):
        v = S.intrinsic("TQ", rng, scenario)
        h = B.horizontal_lift(scenario, v.q, B.tangent_projection(v))
        f = B.fundamental_vector(scenario, B.connection_eval(scenario, v), v.q)
        assert np.abs(h.gdot + f.gdot - v.gdot).max() <= 1e-11
        assert np.abs(h.xdot + f.xdot - v.xdot).max() <= 1e-11


def test_curvature_values(rng):
    s = mono()
    for _ in range(20):
        x = rng.normal(size=2) * 3
        assert abs(B.curvature_base(s, x, E2[0], E2[1])[0] - 1.0) <= 1e-12
    for name in ("flat", "flat-so3"):
        f = B.get_scenario(name)
        assert np.all(B.curvature_base(f, rng.normal(size=2), rng.normal(size=2), rng.normal(size=2)) == 0)


def test_curvature_antisymmetric(scenario, rng):
    x, u, w = rng.normal(size=(3, 2))
    assert np.abs(B.curvature_base(scenario, x, u, w) + B.curvature_base(scenario, x, w, u)).max() <= 1e-14
    assert np.abs(B.curvature_base(scenario, x, u, u)).max() <= 1e-14


def test_curvature_matches_structure_equation(scenario, rng):
    # finite-difference dA on horizontal fields at an arbitrary q
    for _ in range(10):
        q = S.point(rng, scenario)
        u, w = rng.normal(size=(2, 2))
        ref = curvature_fd(scenario, q, u, w)
        assert np.abs(ref - B.curvature_at(scenario, q.g, q.x, u, w)).max() <= 1e-6


def test_so3_generic_curvature_by_hand():
    # a = x2 e1 dx1 + x1 e2 dx2: da(e1, e2) = e2 - e1 and [a e1, a e2] = x1 x2 e3
    s = B.get_scenario("so3-generic")
    x = np.array([0.7, -0.4])
    ref = np.array([-1.0, 1.0, -x[0] * x[1]])
    assert np.abs(B.curvature_base(s, x, E2[0], E2[1]) - ref).max() <= 1e-14


def test_fundamental_vector_TQ(scenario, rng):
    v = S.intrinsic("TQ", rng, scenario)
    k = scenario.k
    W = B.fundamental_vector_TQ(scenario, (np.zeros(k), np.zeros(k)), v)
    assert max(np.abs(W.gp).max(), np.abs(W.gdotp).max(), np.abs(W.xp).max()) == 0
    # eta = 0: the tangent lift of the fundamental field; the foot moves by xi_Q
    # only through the velocity slot, so gp = 0 and gdotp = hat(xi) g
    xi = rng.normal(size=k)
    W = B.fundamental_vector_TQ(scenario, (xi, np.zeros(k)), v)
    assert np.abs(W.gp).max() == 0
    assert np.abs(W.gdotp - scenario.G.hat(xi) @ v.q.g).max() <= 1e-14
    # xi = 0: the tangent lift of eta_Q, computed by hand
    eta = rng.normal(size=k)
    W = B.fundamental_vector_TQ(scenario, (np.zeros(k), eta), v)
    H = scenario.G.hat(eta)
    assert np.abs(W.gp - H @ v.q.g).max() <= 1e-14
    assert np.abs(W.gdotp - H @ v.gdot).max() <= 1e-14


def test_moment_map_TQ_defining_relation(scenario, rng):
    U = S.intrinsic("T*TQ", rng, scenario)
    mu, nu = B.moment_map_TQ(scenario, U)
    k = scenario.k
    E = np.eye(k)
    for i in range(k):
        for v in ((E[i], np.zeros(k)), (np.zeros(k), E[i])):
            ref = B.pair_TstarTQ(scenario, U, B.fundamental_vector_TQ(scenario, v, U.v))
            assert abs(B.check_tangent_pair((mu, nu), v, ref)) <= 1e-10
    Z = B.TangentCovector(U.v, *(np.zeros(k),) * 2, *(np.zeros(2),) * 2)
    assert all(np.all(c == 0) for c in B.moment_map_TQ(scenario, Z))


def test_moment_map_TQ_flat_abelian(rng):
    # at g = e the two slots decouple into plain moment maps of pw and pg
    s = B.get_scenario("flat")
    q = BundlePoint(np.eye(2), np.array([0.1, 0.2]))
    U = S.intrinsic("T*TQ", rng, s, q)
    mu, nu = B.moment_map_TQ(s, U)
    assert np.allclose(mu, U.pg) and np.allclose(nu, U.pw)
