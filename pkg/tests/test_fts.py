import random

import pytest

from albertine import comp, fts, her3
from albertine.exact import GF, ZZ, PolyRing, extend


@pytest.fixture(scope="module")
def small():
    """The 20-dimensional system over Her_3 of the split etale algebra."""
    return fts.FTSystem(her3.her3(comp.split_etale(ZZ)))


@pytest.fixture(scope="module")
def split_fts(split_albert):
    return fts.FTSystem(split_albert)


def _generic(F, *prefixes):
    G = ZZ
    for p in prefixes:
        G = extend(G, p, F.dim)
    names = G.names
    return G, [[G.gen(n) for n in names[k * F.dim:(k + 1) * F.dim]] for k in range(len(prefixes))]


def _rand(F, rng, lo=-3, hi=3):
    return [rng.randint(lo, hi) for _ in range(F.dim)]


# --- forms ---------------------------------------------------------------------------

def test_dimension(split_fts):
    assert split_fts.dim == 56


def test_q_of_simple_vector(split_fts):
    X = split_fts.join(1, [0] * 27, [0] * 27, 1)
    assert split_fts.q(X) == 1


def test_b_alternating(small):
    G, (X, Y) = _generic(small, "X", "Y")
    assert small.b(X, X, G) == 0
    assert small.b(X, Y, G) == -small.b(Y, X, G)


def test_codec_roundtrip(split_fts):
    X = _rand(split_fts, random.Random(40))
    assert split_fts.decode(split_fts.encode(X)) == X
    with pytest.raises(ValueError):
        split_fts.decode('{"alpha": 0, "x": [1], "xp": [], "alpha_prime": 0}')


def test_twelve_q_is_theta_on_diagonal(small):
    G, (X,) = _generic(small, "X")
    assert small.theta(X, X, X, X, G) == 12 * small.q(X, G)


def test_psi_swap_gives_sum_of_phis(small):
    rng = random.Random(41)
    for _ in range(5):
        Xs = [_rand(small, rng) for _ in range(4)]
        X1, X2, X3, X4 = Xs
        diff = small.psi(X1, X2, X3, X4) - small.psi(X2, X1, X3, X4)
        assert diff == sum(small.phis(X1, X2, X3, X4))


def test_psi_swap_generic(small):
    G, (X1, X2, X3, X4) = _generic(small, "A", "B", "C", "D")
    diff = small.psi(X1, X2, X3, X4, G) - small.psi(X2, X1, X3, X4, G)
    assert diff == sum(small.phis(X1, X2, X3, X4, G))


def test_psi_even_permutation_invariance(split_fts):
    rng = random.Random(42)
    Xs = [_rand(split_fts, rng) for _ in range(4)]
    base = split_fts.psi(*Xs)
    for perm in ((1, 2, 0, 3), (1, 0, 3, 2), (3, 0, 2, 1), (2, 3, 0, 1)):
        assert split_fts.psi(*[Xs[i] for i in perm]) == base
    # a 4-cycle is odd, and here the sum of the Phi is nonzero
    odd = split_fts.psi(*[Xs[i] for i in (1, 2, 3, 0)])
    assert sum(split_fts.phis(*Xs)) != 0 and odd != base


def test_divisibility_error_in_char_two():
    F = fts.FTSystem(her3.her3(comp.zorn(GF(2))))
    X = F.basis(0)
    with pytest.raises(fts.DivisibilityError):
        F.theta(X, X, X, X)


def test_divisibility_sweep_small(small):
    res = small.divisibility_sweep()
    assert res["ok"] and res["tuples"] == 8855


# --- generators ----------------------------------------------------------------------

def test_trans_up_zero_is_identity(split_fts):
    g = split_fts.trans_up([0] * 27, ZZ)
    assert g.matrix == [[int(i == j) for j in range(56)] for i in range(56)]


@pytest.mark.parametrize("kind", ["up", "down"])
def test_translation_generic_direct(small, kind):
    """The dual route: a fully generic y, with no reduction to basis directions."""
    G = extend(ZZ, "y", small.n)
    y = G.gens()
    g = {"up": small.trans_up, "down": small.trans_down}[kind](y, G)
    r = small.preserves(g)
    assert r["b"] and r["q"]


@pytest.mark.parametrize("kind", ["up", "down"])
def test_translation_reduced(small, kind):
    r = small.translation_preserves(kind)
    assert r["b"] and r["q"] and r["additive"]


def test_truncated_translation_fails(small):
    """Dropping the quadratic and cubic terms in y breaks preservation of q."""
    J = small.J
    G = extend(ZZ, "y", small.n)
    y = G.gens()

    def truncated(X):
        a, x, xp, ap = small.split(X)
        a2 = a + J.trace_form(xp, y, G)
        x2 = [p + ap * c for p, c in zip(x, y)]
        xp2 = [p + c for p, c in zip(xp, J.cross(x, y, G))]
        return small.join(a2, x2, xp2, ap)

    g = fts.FTMap("truncated", small._matrix(truncated, G), G)
    assert not small.preserves(g)["q"]


def test_e6_embed_tau_generic(small):
    J = small.J
    Q = extend(ZZ, "q", J.layout.rank)
    g = small.e6_embed(her3.isometry("tau", J, s=0, t=1, q=Q.gens(), ring=Q))
    r = small.preserves(g)
    assert r["b"] and r["q"]


def test_e6_embed_rejects_similarity(small):
    A = PolyRing(ZZ, ["alpha"], laurent=["alpha"])
    g = her3.isometry("scale", small.J, alpha=A.gen("alpha"), ring=A)
    with pytest.raises(ValueError):
        small.e6_embed(g)


def test_torus_and_similarity(small):
    B = PolyRing(ZZ, ["beta"], laurent=["beta"])
    r = small.preserves(small.torus(B.gen("beta"), B))
    assert r["b"] and r["q"]
    M = PolyRing(ZZ, ["mu"], laurent=["mu"])
    mu = M.gen("mu")
    g = small.similarity(mu, M)
    assert (g.b_multiplier, g.q_multiplier) == (mu, mu * mu)
    r = small.preserves(g)
    assert r["b"] and r["q"]


def test_similarity_wrong_multiplier_detected(small):
    M = PolyRing(ZZ, ["mu"], laurent=["mu"])
    g = small.similarity(M.gen("mu"), M)
    g.q_multiplier = M.gen("mu")
    assert not small.preserves(g)["q"]


def test_psi_invariance_per_family(split_fts):
    """Psi is preserved as a separate check from b and q, one generator of each family."""
    F, J = split_fts, split_fts.J
    rng = random.Random(43)
    Xs = [_rand(F, rng, -2, 2) for _ in range(4)]
    base = F.psi(*Xs)
    gens = [
        F.e6_embed(her3.isometry("tau", J, s=1, t=2, q=[1, 0, 2, 0, 0, -1, 0, 1])),
        F.torus(-1, ZZ),
        F.trans_up([rng.randint(-1, 1) for _ in range(27)], ZZ),
        F.trans_down([rng.randint(-1, 1) for _ in range(27)], ZZ),
    ]
    for g in gens:
        assert F.psi(*[g.apply(X) for X in Xs]) == base, g.name
