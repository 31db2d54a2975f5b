import random

import pytest

from albertine import cns, tits
from albertine.exact import GF, GF8, QQ, PolyRing


@pytest.fixture(scope="module")
def etale_q():
    return tits.split_etale3(QQ)


def test_cubic_algebras_have_unit_norm_one():
    for A in (tits.split_etale3(QQ), tits.gf_cubic(), tits.mat3(QQ), tits.mat3(GF(2))):
        assert A.norm(A.one()) == 1
        assert tits.regular_trace_nondegenerate(A)


def test_mat3_norm_is_determinant():
    A = tits.mat3(QQ)
    x = [QQ(c) for c in (2, 1, 0, 0, 3, 1, 1, 0, 1)]
    assert A.norm(x) == 2 * (3 - 0) - 1 * (0 - 1) + 0
    # the regular representation would give det^3
    assert A.norm([QQ(2) * c for c in A.one()]) == 8


def test_split_etale_norm_is_product(etale_q):
    assert etale_q.norm([QQ(2), QQ(3), QQ(5)]) == 30
    assert etale_q.trace([QQ(2), QQ(3), QQ(5)]) == 10
    assert etale_q.quad_trace([QQ(2), QQ(3), QQ(5)]) == 6 + 10 + 15


def test_gf_cubic_is_gf8():
    E = tits.gf_cubic()
    # multiplication by the generator has characteristic polynomial w^3 + w + 1
    w = [E.ctx(0), E.ctx(1), E.ctx(0)]
    w3 = E.mul(E.mul(w, w), w)
    assert [a + b + c for a, b, c in zip(w3, w, E.one())] == [0, 0, 0]
    assert GF8.order == 8


def test_unit_adjoint_and_norm(etale_q):
    J = tits.tits1(etale_q, 2)
    assert J.sharp(J.one()) == J.one() and J.norm(J.one()) == 1


def test_w_adjoint():
    for mu in (2, QQ(1) / 3):
        J = tits.tits1(tits.mat3(QQ), mu)
        assert J.sharp(tits.w_element(J)) == tits.embed(J, [mu * c for c in J.assoc.one()], 2)


def test_mu_must_be_nonzero(etale_q):
    with pytest.raises(ValueError):
        tits.tits1(etale_q, 0)


def test_mat3_tits_passes_all_levels():
    J = tits.tits1(tits.mat3(QQ), 2)
    assert J.dim == 27
    rep = cns.verify(J)
    assert rep.ok, rep.failures()


def test_laurent_mu():
    R = PolyRing(QQ, ["mu"], laurent=["mu"])
    J = tits.tits1(tits.split_etale3(R), R.gen("mu"))
    rep = cns.verify(J)
    assert rep.ok, rep.failures()


def test_corrupted_tits_fails():
    J = tits.tits1(tits.split_etale3(QQ), 3)
    assert not cns.verify(cns.corrupt_adjoint(J), ("axioms",)).ok


# --- subalgebra closure ----------------------------------------------------------------

def test_closure_of_one(etale_q):
    J = tits.tits1(etale_q, 1)
    assert tits.subalgebra_generated(J, [J.one()]) == 1


def test_closure_of_etale_generator_and_w(etale_q):
    J = tits.tits1(etale_q, 1)
    x = tits.embed(J, [QQ(1), QQ(2), QQ(3)])
    assert tits.subalgebra_generated(J, [x, tits.w_element(J)]) == 9
    # without w only the copy of the etale algebra
    assert tits.subalgebra_generated(J, [x]) == 3


def test_closure_exact_rational_route(etale_q):
    J = tits.tits1(etale_q, 1)
    x = tits.embed(J, [QQ(1) / 2, QQ(0), QQ(0)])
    basis = tits.subalgebra_basis(J, [x])
    assert len(basis) == 2


def test_closure_contains_powers_and_is_idempotent():
    J = tits.tits1(tits.split_etale3(GF(7)), 1)
    rng = random.Random(30)
    x = [J.ctx.random(rng, 3) for _ in range(J.dim)]
    basis = tits.subalgebra_basis(J, [x])
    d = len(basis)
    for n in range(4):
        assert tits.subalgebra_generated(J, basis + [J.power(x, n)]) == d
    assert tits.subalgebra_generated(J, basis) == d


def test_closure_monotone():
    J = tits.tits1(tits.split_etale3(GF(5)), 1)
    rng = random.Random(31)
    x, y = ([J.ctx.random(rng, 3) for _ in range(J.dim)] for _ in range(2))
    assert tits.subalgebra_generated(J, [x]) <= tits.subalgebra_generated(J, [x, y])


def test_closure_needs_field():
    from albertine.exact import Modular

    M = cns.matrix_algebra(Modular(4), 2)
    with pytest.raises(ValueError):
        tits.subalgebra_generated(M, [M.one()])


def test_mat3_gf2_route_reaches_27():
    J, gens, dim = tits.albert_generators(GF(2), seed=0)
    assert len(gens) == 3 and dim == 27


def test_field_generator_route():
    J, gens, dim = tits.field_generator_route(GF(2))
    assert J.dim == 9 and len(gens) == 2 and dim == 9
    J, gens, dim = tits.field_generator_route(QQ)
    assert dim == 9


def test_mat2_census():
    res = tits.generator_census_mat2(GF(2))
    assert res["max_pair_dim"] <= 3
    assert res["max_single_dim"] <= 3
    M2 = cns.matrix_algebra(GF(2), 2)
    assert tits.subalgebra_generated(M2, res["triple"]) == 4
