import json
import random

import pytest

from albertine import census, cns, comp, her3
from albertine.cns import NotInvertible, PolyMap, directional_derivative
from albertine.exact import QQ, ZZ, extend
from albertine.report import Check


def _rand_vec(rng, n, lo=-4, hi=4):
    return [rng.randint(lo, hi) for _ in range(n)]


def _matmul(a, b):
    return [sum(a[3 * i + k] * b[3 * k + j] for k in range(3)) for i in range(3) for j in range(3)]


@pytest.fixture(scope="module")
def mat3():
    return her3.mat3_plus(ZZ)


# --- directional derivatives ---------------------------------------------------------

def test_zeroth_derivative_is_value(mat3):
    rng = random.Random(3)
    for _ in range(5):
        x, v = _rand_vec(rng, 9), _rand_vec(rng, 9)
        assert directional_derivative(mat3.norm_map, 0, v, x, ZZ) == mat3.norm(x)
        assert directional_derivative(mat3.adjoint, 0, v, x, ZZ) == mat3.sharp(x)


def test_third_derivative_of_norm(mat3):
    rng = random.Random(4)
    for _ in range(5):
        x, v = _rand_vec(rng, 9), _rand_vec(rng, 9)
        assert directional_derivative(mat3.norm_map, 3, v, x, ZZ) == mat3.norm(v)


def test_derivative_symmetry(mat3):
    G = extend(extend(ZZ, "x", 9), "v", 9)
    x, v = G.gens()[:9], G.gens()[9:]
    for n in range(4):
        lhs = directional_derivative(mat3.norm_map, n, v, x, G)
        rhs = directional_derivative(mat3.norm_map, 3 - n, x, v, G)
        assert lhs == rhs


def test_first_derivative_is_trace_against_adjoint(mat3):
    G, (x, y) = cns.generic_ring(mat3, "x", "y")
    d = directional_derivative(mat3.norm_map, 1, y, x, G)
    assert d == mat3.trace_form(mat3.sharp(x, G), y, G)


# --- polynomial maps -----------------------------------------------------------------

def test_homogeneity(mat3):
    assert cns.homogeneity_holds(mat3.adjoint)
    assert cns.homogeneity_holds(mat3.norm_map)


def test_inhomogeneous_map_rejected():
    with pytest.raises(ValueError):
        PolyMap.from_function(ZZ, 2, 1, 2, lambda z, R: z[0] * z[1] + z[0])
    with pytest.raises(ValueError):
        PolyMap(ZZ, 2, 1, 2, {(0,): [(0, 1)]})


def test_polar_of_square():
    f = PolyMap.from_function(ZZ, 2, 1, 2, lambda z, R: z[0] * z[0] + 3 * z[0] * z[1])
    # f(x + y) - f(x) - f(y)
    assert f.polar([1, 2], [5, -1]) == 2 * 1 * 5 + 3 * (1 * -1 + 5 * 2)


def test_compose_linear_and_scaled():
    f = PolyMap.from_function(ZZ, 2, 2, 2, lambda z, R: [z[0] * z[1], z[1] * z[1]])
    g = f.compose_linear([[1, 1], [0, 1]])
    assert g([2, 3]) == [6 + 9, 9]
    assert f.scaled(4)([2, 3]) == [24, 36]


# --- forms ---------------------------------------------------------------------------

def test_mat3_trace_form_is_matrix_trace(mat3):
    rng = random.Random(5)
    for _ in range(5):
        x, y = _rand_vec(rng, 9), _rand_vec(rng, 9)
        xy = _matmul(x, y)
        assert mat3.trace_form(x, y) == xy[0] + xy[4] + xy[8]
    assert mat3.trace([1, 2, 3, 4, 5, 6, 7, 8, 9]) == 15


def test_her3_trace_form_closed_form():
    C = comp.mat2(ZZ)
    gamma = (1, -1, -1)
    J = her3.her3(C, gamma)
    L = J.layout
    rng = random.Random(6)
    for _ in range(5):
        x, y = _rand_vec(rng, J.dim), _rand_vec(rng, J.dim)
        (ax, cx), (ay, cy) = L.split(x), L.split(y)
        want = sum(a * b for a, b in zip(ax, ay))
        for i in range(3):
            s = [a + b for a, b in zip(cx[i], cy[i])]
            polar = C.norm(s) - C.norm(cx[i]) - C.norm(cy[i])
            want += gamma[(i + 1) % 3] * gamma[(i + 2) % 3] * polar
        assert J.trace_form(x, y) == want


def test_trace_square_identity(mat3):
    G, (x,) = cns.generic_ring(mat3, "x")
    tr, s = mat3.trace(x, G), mat3.quad_trace(x, G)
    assert mat3.trace_form(x, x, G) == tr * tr - 2 * s


# --- U operator and brace ------------------------------------------------------------

def test_U_of_one_is_identity(split_albert):
    rng = random.Random(7)
    y = _rand_vec(rng, 27)
    assert split_albert.U(split_albert.one(), y) == y


def test_mat3_U_is_xyx(mat3):
    rng = random.Random(8)
    for _ in range(5):
        x, y = _rand_vec(rng, 9), _rand_vec(rng, 9)
        assert mat3.U(x, y) == _matmul(_matmul(x, y), x)


def test_mat3_brace_matches_associative(mat3):
    M = cns.matrix_algebra(ZZ, 3)
    rng = random.Random(9)
    x, y, z = (_rand_vec(rng, 9) for _ in range(3))
    assert mat3.brace(x, y, z) == M.brace(x, y, z)


def test_off_diagonal_brace(split_albert):
    J = split_albert
    C = J.layout.comp
    rng = random.Random(10)
    a, b = _rand_vec(rng, 8), _rand_vec(rng, 8)
    zero = [0] * 8
    for i in range(3):
        cs_a = [zero] * 3
        cs_a[i] = a
        cs_b = [zero] * 3
        cs_b[(i + 1) % 3] = b
        x, y = her3.element(J, cs=cs_a), her3.element(J, cs=cs_b)
        cs_w = [zero] * 3
        cs_w[(i + 2) % 3] = C.conj(C.mul(a, b))
        want = her3.element(J, cs=cs_w)
        for j in range(3):
            alphas = [0, 0, 0]
            alphas[j] = 1
            got = J.brace(x, y, her3.element(J, alphas=alphas))
            assert got == (want if j == i else [0] * 27)


# --- powers, inverses, minimal polynomial ---------------------------------------------

def test_powers_and_inverse_of_one(split_albert):
    one = split_albert.one()
    for n in range(-2, 5):
        assert split_albert.power(one, n) == one
    assert split_albert.inverse(one) == one


def test_powers_match_matrix_powers(mat3):
    x = [1, 2, 0, 0, 1, 3, 1, 0, 1]
    p = x
    for n in range(2, 6):
        p = _matmul(p, x)
        assert mat3.power(x, n) == p


def test_inverse_and_its_norm():
    J = her3.mat3_plus(QQ)
    x = [QQ(c) for c in (2, 1, 0, 0, 1, 0, 1, 0, 3)]
    xi = J.inverse(x)
    assert _matmul(x, xi) == [1, 0, 0, 0, 1, 0, 0, 0, 1]
    assert J.norm(xi) == 1 / J.norm(x)


def test_non_invertible_raises(mat3):
    with pytest.raises(NotInvertible):
        mat3.inverse([2, 0, 0, 0, 1, 0, 0, 0, 1])
    with pytest.raises(NotInvertible):
        mat3.inverse([1, 0, 0, 0, 0, 0, 0, 0, 0])


def test_v_inverse_is_its_adjoint():
    data = census.build_census_lattices()
    J, v = data.J, data.v
    assert J.norm(v) == 1
    assert J.inverse(v) == J.sharp(v)


def test_min_poly_eval_on_diagonal(mat3):
    x = [2, 0, 0, 0, 3, 0, 0, 0, 5]
    for t in range(-3, 7):
        assert mat3.min_poly_eval(x, t) == (t - 2) * (t - 3) * (t - 5)


def test_element_wrapper(mat3):
    x = mat3.elem([1, 1, 0, 0, 1, 0, 0, 0, 1])
    assert x.norm() == 1 and x.trace() == 3
    assert x.inverse() == mat3.elem([1, -1, 0, 0, 1, 0, 0, 0, 1])
    assert x.U(mat3.elem(mat3.one())) == x.power(2)


# --- verification --------------------------------------------------------------------

@pytest.mark.parametrize("build", [lambda: her3.mat3_plus(ZZ), lambda: her3.her3(comp.split_etale(ZZ)),
                                   lambda: her3.her3(comp.mat2(ZZ))],
                         ids=["mat3", "her3-etale", "her3-mat2"])
def test_verify_all_levels(build):
    rep = cns.verify(build())
    assert rep.ok, rep.failures()
    assert len(rep.checks) >= 15


def test_verify_zorn_all_levels(split_albert):
    rep = cns.verify(split_albert)
    assert rep.ok, rep.failures()


def test_corrupt_adjoint_fails(mat3):
    bad = cns.corrupt_adjoint(mat3)
    rep = cns.verify(bad, ("axioms",))
    assert not rep.ok
    assert not rep["adjoint_identity"].passed


def test_counterexample_reproduces(mat3):
    bad = cns.corrupt_adjoint(mat3)
    cx = cns.verify(bad, ("axioms",))["adjoint_identity"].counterexample
    x = cx["values"]["x"]
    lhs = bad.sharp(bad.sharp(x))
    rhs = [bad.norm(x) * a for a in x]
    assert lhs[cx["component"]] != rhs[cx["component"]]
    # the honest structure agrees at the same point
    assert mat3.sharp(mat3.sharp(x)) == [mat3.norm(x) * a for a in x]


def test_swept_counterexample_names_basis_vector(mat3):
    bad = cns.corrupt_adjoint(mat3)
    cx = cns.verify(bad, ("axioms",))["unit_cross"].counterexample
    e = bad.basis(cx["basis_index"])
    lhs = bad.cross(bad.one(), e)
    rhs = [bad.trace(e) * b - c for b, c in zip(bad.one(), e)]
    assert lhs != rhs


def test_passing_checks_carry_no_counterexample(mat3):
    rep = cns.verify(mat3, ("axioms",))
    assert all(c.counterexample is None for c in rep.checks)
    with pytest.raises(ValueError):
        Check("x", "ref", True, counterexample={"values": {}})


def test_json_roundtrip(mat3):
    text = mat3.to_json()
    data = json.loads(text)
    assert data["dim"] == 9
    K = cns.CubicJordan.from_json(text, ZZ)
    assert K.adjoint == mat3.adjoint and K.norm_map == mat3.norm_map
    assert list(K.base_point) == list(mat3.base_point)


def test_base_change_keeps_layout(split_albert):
    K = split_albert.base_change(QQ)
    assert K.ctx is QQ and K.layout is split_albert.layout
    assert K.norm(K.one()) == 1


def test_structure_tensors_match_U(mat3):
    U, B = cns.structure_tensors(mat3)
    x = [0] * 9
    x[1] = 1
    y = [0] * 9
    y[3] = 1
    got = mat3.U(x, y)
    assert [int(U[1, 3, k]) for k in range(9)] == got
