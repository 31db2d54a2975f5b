import random

import pytest

from albertine import census, cns, comp, her3, iso
from albertine.cns import NotInvertible
from albertine.exact import GF, QQ, ZZ, Modular, PolyRing, extend


@pytest.fixture(scope="module")
def mat3_q():
    return her3.mat3_plus(QQ)


def _same_structure(J, K):
    return J.base_point == K.base_point and J.adjoint == K.adjoint and J.norm_map == K.norm_map


def _random_unit(J, rng):
    return iso.random_invertible(J, rng, bound=3)


# --- isotopes ------------------------------------------------------------------------

def test_isotope_at_one_is_J(mat3_q):
    assert _same_structure(iso.isotope(mat3_q, mat3_q.one()), mat3_q)


def test_isotope_needs_unit(mat3_q):
    with pytest.raises(NotInvertible):
        iso.isotope(mat3_q, [QQ(1)] + [QQ(0)] * 8)


def test_isotope_of_isotope(mat3_q):
    rng = random.Random(20)
    for _ in range(3):
        u, v = _random_unit(mat3_q, rng), _random_unit(mat3_q, rng)
        twice = iso.isotope(iso.isotope(mat3_q, u), v)
        once = iso.isotope(mat3_q, mat3_q.U(u, v))
        assert _same_structure(twice, once)


def test_isotope_of_isotope_generic():
    J = her3.her3(comp.mat2(QQ))
    R, u = iso.generic_isotope_unit(J)
    v = _random_unit(J, random.Random(21))
    twice = iso.isotope(iso.isotope(J, u, R), v, R)
    once = iso.isotope(J, J.base_change(R).U(u, [R(c) for c in v], R), R)
    assert _same_structure(twice, once)


def test_isotope_norm_and_U(mat3_q):
    u = _random_unit(mat3_q, random.Random(22))
    K = iso.isotope(mat3_q, u)
    nu = mat3_q.norm(u)
    G, (x, y) = cns.generic_ring(mat3_q, "x", "y")
    assert K.norm(x, G) == nu * mat3_q.norm(x, G)
    assert K.U(x, y, G) == mat3_q.U(x, mat3_q.U([G(c) for c in u], y, G), G)


def test_isotope_trace_closed_forms(mat3_q):
    u = _random_unit(mat3_q, random.Random(23))
    K = iso.isotope(mat3_q, u)
    G, (x, y) = cns.generic_ring(mat3_q, "x", "y")
    uG = [G(c) for c in u]
    J = mat3_q
    assert K.trace_form(x, y, G) == J.trace_form(J.U(uG, x, G), y, G)
    assert K.trace(x, G) == J.trace_form(uG, x, G)
    assert K.quad_trace(x, G) == J.trace_form(J.sharp(uG, G), J.sharp(x, G), G)


def test_isotope_passes_verification():
    J = her3.her3(comp.split_etale(QQ))
    R, u = iso.generic_isotope_unit(J)
    assert cns.verify(iso.isotope(J, u, R)).ok


@pytest.mark.parametrize("kind", ["split_etale", "mat2", "zorn"])
def test_diagonal_isotope_map(kind):
    src, tgt, M, cls = iso.diagonal_isotope_map(comp.construct(kind, ZZ))
    assert cls.kind == "isomorphism"


def test_diagonal_isotope_map_concrete():
    *_, cls = iso.diagonal_isotope_map(comp.mat2(QQ), (2, -1, 3))
    assert cls.kind == "isomorphism"


# --- classification of maps ------------------------------------------------------------

def _identity(n, R):
    return [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]


def test_classify_identity(mat3_q):
    assert iso.classify_map(_identity(9, QQ), mat3_q, mat3_q).kind == "isomorphism"


def test_classify_mat39():
    J = her3.her3(comp.split_etale(ZZ))
    M = her3.mat39_matrix(J)
    assert iso.classify_map(M, J, her3.mat3_plus(ZZ)).kind == "isomorphism"


def test_classify_scale_five(split_albert_q):
    g = her3.isometry("scale", split_albert_q, alpha=5)
    cls = iso.classify_map(g.matrix, split_albert_q, split_albert_q)
    assert cls.kind == "isotopy" and cls.multiplier == 5


def test_classify_neither(mat3_q):
    M = _identity(9, QQ)
    M[0][1] = QQ(1)
    assert iso.classify_map(M, mat3_q, mat3_q).kind == "neither"
    M = _identity(9, QQ)
    M[0][0] = QQ(0)
    assert iso.classify_map(M, mat3_q, mat3_q).kind == "neither"


def test_classify_shape_mismatch(mat3_q):
    with pytest.raises(ValueError):
        iso.classify_map(_identity(8, QQ), mat3_q, mat3_q)


def test_classify_round_witness(mat3_q):
    rng = random.Random(24)
    for _ in range(3):
        x = _random_unit(mat3_q, rng)
        phi = iso.round_witness(mat3_q, x)
        cls = iso.classify_map(phi.matrix, mat3_q, mat3_q)
        assert cls.kind == "isotopy" and cls.multiplier == mat3_q.norm(x)


# --- dagger --------------------------------------------------------------------------

def test_dagger_of_automorphism(split_albert):
    g = her3.isometry("perm", split_albert, pi=(2, 0, 1))
    assert iso.dagger(g).matrix == g.matrix


def test_dagger_involution_generic_q():
    J = her3.her3(comp.mat2(ZZ))
    Q = extend(ZZ, "q", 4)
    g = her3.isometry("tau", J, s=0, t=1, q=Q.gens(), ring=Q)
    assert iso.dagger(iso.dagger(g)).matrix == g.matrix


def test_dagger_of_scale():
    J = her3.her3(comp.mat2(ZZ))
    A = PolyRing(ZZ, ["alpha"], laurent=["alpha"])
    alpha = A.gen("alpha")
    g = her3.isometry("scale", J, alpha=alpha, ring=A)
    d = iso.dagger(g)
    assert d.multiplier == A.inv(alpha)
    assert d.check()


def test_dagger_is_trace_adjoint(mat3_q):
    phi = iso.round_witness(mat3_q, _random_unit(mat3_q, random.Random(25)))
    d = iso.dagger(phi)
    G, (x, y) = cns.generic_ring(mat3_q, "x", "y")
    assert mat3_q.trace_form(phi.apply(x, G), d.apply(y, G), G) == mat3_q.trace_form(x, y, G)


def test_dagger_needs_invertible_image(mat3_q):
    g = her3.identity_isometry(mat3_q)
    g.matrix = [[QQ(0)] * 9 for _ in range(9)]
    with pytest.raises(NotInvertible):
        iso.dagger(g)


# --- roundness witnesses -------------------------------------------------------------

def test_round_witness_at_one(split_albert):
    phi = iso.round_witness(split_albert, split_albert.one())
    assert phi.matrix == _identity(27, ZZ) and phi.multiplier == 1


def test_round_witness_multiplier_alpha(split_albert):
    A = PolyRing(ZZ, ["alpha"], laurent=["alpha"])
    x = her3.element(split_albert.base_change(A), alphas=(A.gen("alpha"), 1, 1))
    phi = iso.round_witness(split_albert.base_change(A), x)
    assert phi.multiplier == A.gen("alpha") and phi.check()


def test_round_witness_at_v():
    data = census.build_census_lattices()
    phi = iso.round_witness(data.J, data.v)
    assert phi.multiplier == 1
    assert phi.matrix == data.J.U_matrix(data.J.sharp(data.v))
    assert phi.check()


def test_round_witness_needs_unit_norm(split_albert):
    with pytest.raises(NotInvertible):
        iso.round_witness(split_albert, her3.element(split_albert, alphas=(2, 1, 1)))


# --- rank-one elements in an isotope ---------------------------------------------------

def test_zero_adjoint_preserved_by_isotope():
    data = census.build_census_lattices()
    J, v = data.J, data.v
    K = iso.isotope(J, v)
    rng = random.Random(26)
    C = J.layout.comp
    samples = []
    for _ in range(6):
        x = her3.element(J, alphas=(rng.randint(-3, 3), 0, 0))
        for s, t in ((0, 1), (1, 2), (0, 2)):
            q = [rng.randint(-1, 1) for _ in range(C.rank)]
            x = her3.isometry("tau", J, s=s, t=t, q=q, verify=False).apply(x)
        samples.append(x)
    samples += [[rng.randint(-2, 2) for _ in range(27)] for _ in range(6)]
    rank_one = 0
    for x in samples:
        zero_j = all(c == 0 for c in J.sharp(x))
        assert zero_j == all(c == 0 for c in K.sharp(x))
        rank_one += zero_j
    assert rank_one >= 6


# --- diagonalization -----------------------------------------------------------------

def test_diagonal_input_unchanged():
    J = her3.her3(comp.zorn(GF(7)))
    u = her3.element(J, alphas=(1, 2, 3))
    chain, d = iso.diagonalize(J, u)
    assert chain.steps == [] and d == u


@pytest.mark.parametrize("p", [2, 3, 7])
def test_diagonalize_random(p):
    J = her3.her3(comp.zorn(GF(p)))
    res = iso.diagonalize_trials(J, 10, seed=100 + p)
    assert res.ok and res.diagonalized == 10


def test_diagonalize_mat2_over_rationals():
    J = her3.her3(comp.mat2(QQ))
    res = iso.diagonalize_trials(J, 10, seed=5)
    assert res.ok


def test_diagonalize_needs_alpha1_case():
    J = her3.her3(comp.zorn(GF(5)))
    c = [1, 0, 0, 0, 0, 0, 0, 1]
    u = her3.element(J, alphas=(0, 0, 1), cs=[[0] * 8, [0] * 8, c])
    chain, d = iso.diagonalize(J, u)
    assert chain.steps[0].kind == "tau" and iso.is_diagonal(J, d)
    assert J.norm(d) == J.norm(u)


def test_diagonalize_v():
    data = census.build_census_lattices()
    JQ = her3.her3(comp.coxeter_order().base_change(QQ))
    chain, d = iso.diagonalize(JQ, data.v)
    assert iso.is_diagonal(JQ, d) and JQ.norm(d) == 1


def test_diagonalize_errors():
    J = her3.her3(comp.zorn(GF(5)))
    with pytest.raises(NotInvertible):
        iso.diagonalize(J, her3.element(J, alphas=(1, 1, 0)))
    K = her3.her3(comp.zorn(Modular(4)))
    with pytest.raises(ValueError):
        iso.diagonalize(K, K.one())
