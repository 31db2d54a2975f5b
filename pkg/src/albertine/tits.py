"""The first Tits construction and subalgebra generation experiments."""

from __future__ import annotations

import itertools
import random

import numpy as np

from .cns import CubicJordan, PolyMap, matrix_algebra, modulus_of, tensors_mod
from .exact import GF, QQ, FieldSpan, ModSpan, Ring, mat_det


class CubicAssoc:
    """An associative algebra of degree 3 with its cubic norm.

    The trace and the quadratic trace are read off from N(x + t 1) =
    N(x) + S(x) t + Tr(x) t^2 + t^3, and the adjoint is x^2 - Tr(x) x + S(x) 1.
    """

    def __init__(self, ctx: Ring, kind: str, dim: int, mul, unit, norm: PolyMap, labels=None):
        self.ctx, self.kind, self.dim = ctx, kind, dim
        self.table: dict = {}
        for i, j, k, c in mul:
            self.table.setdefault((i, j), []).append((k, ctx(c)))
        self.unit = [ctx(c) for c in unit]
        self.norm_map = norm
        self.labels = labels or [f"a{i}" for i in range(dim)]

    def mul(self, x, y, R=None):
        R = R or self.ctx
        out = [R.zero] * self.dim
        for (i, j), lst in self.table.items():
            if x[i] == 0 or y[j] == 0:
                continue
            p = x[i] * y[j]
            for k, c in lst:
                out[k] = out[k] + c * p if c != 1 else out[k] + p
        return out

    def one(self, R=None):
        R = R or self.ctx
        return [R(c) for c in self.unit]

    def norm(self, x, R=None):
        return self.norm_map(x, R or self.ctx)

    def _shifted(self, x, R, k):
        from .cns import directional_derivative

        return directional_derivative(lambda p, S: self.norm_map(p, S), k, self.one(R), x, R)

    def quad_trace(self, x, R=None):
        return self._shifted(x, R or self.ctx, 1)

    def trace(self, x, R=None):
        return self._shifted(x, R or self.ctx, 2)

    def sharp(self, x, R=None):
        R = R or self.ctx
        x2 = self.mul(x, x, R)
        tr, s = self.trace(x, R), self.quad_trace(x, R)
        return [a - tr * b + s * c for a, b, c in zip(x2, x, self.one(R))]

    def trace_form_matrix(self):
        """T_A(e_i, e_j) = Tr(e_i e_j)."""
        R = self.ctx
        e = [[R.one if k == i else R.zero for k in range(self.dim)] for i in range(self.dim)]
        return [[self.trace(self.mul(a, b)) for b in e] for a in e]


def split_etale3(ctx: Ring) -> CubicAssoc:
    mul = [(i, i, i, 1) for i in range(3)]
    norm = PolyMap(ctx, 3, 1, 3, {(0, 1, 2): [(0, 1)]})
    return CubicAssoc(ctx, "split_etale3", 3, mul, [1, 1, 1], norm, ["e1", "e2", "e3"])


def _regular_norm(ctx, dim, mul, kind):
    """det of the left multiplication operator, as a cubic form."""
    tmp = CubicAssoc(ctx, kind, dim, mul, [1] + [0] * (dim - 1), PolyMap(ctx, dim, 1, 3, {}))

    def det_L(z, R):
        cols = [tmp.mul(z, [R.one if k == j else R.zero for k in range(dim)], R) for j in range(dim)]
        L = [[cols[j][i] for j in range(dim)] for i in range(dim)]
        return _det3(L)

    return PolyMap.from_function(ctx, dim, 1, 3, det_L)


def gf_cubic(ctx: Ring | None = None) -> CubicAssoc:
    """GF(8) as a 3-dimensional algebra over GF(2), basis 1, w, w^2 with w^3 = w + 1."""
    ctx = ctx or GF(2)
    if ctx != GF(2):
        raise ValueError("gf_cubic is the cubic extension of GF(2)")
    mul = []
    # w^i w^j = w^(i+j), reduced by w^3 = w + 1, w^4 = w^2 + w
    powers = {0: [1, 0, 0], 1: [0, 1, 0], 2: [0, 0, 1], 3: [1, 1, 0], 4: [0, 1, 1]}
    for i in range(3):
        for j in range(3):
            for k, c in enumerate(powers[i + j]):
                if c:
                    mul.append((i, j, k, c))
    norm = _regular_norm(ctx, 3, mul, "gf_cubic")
    return CubicAssoc(ctx, "gf_cubic", 3, mul, [1, 0, 0], norm, ["1", "w", "w2"])


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def mat3(ctx: Ring) -> CubicAssoc:
    mul = [(3 * a + b, 3 * b + d, 3 * a + d, 1) for a in range(3) for b in range(3) for d in range(3)]
    norm = PolyMap.from_function(ctx, 9, 1, 3, lambda z, R: _det3([z[0:3], z[3:6], z[6:9]]))
    labels = [f"E{i + 1}{j + 1}" for i in range(3) for j in range(3)]
    return CubicAssoc(ctx, "mat3", 9, mul, [1, 0, 0, 0, 1, 0, 0, 0, 1], norm, labels)


CUBIC_KINDS = {"split_etale3": split_etale3, "gf_cubic": gf_cubic, "mat3": mat3}


def tits1(A: CubicAssoc, mu) -> CubicJordan:
    """J(A, mu) on A x A x A with base point (1, 0, 0)."""
    ctx = A.ctx
    mu = ctx(mu)
    if ctx.is_zero(mu):
        raise ValueError("mu must be nonzero")
    if not ctx.is_unit(mu):
        raise ValueError("mu must be a unit")
    n = A.dim
    mu_inv = ctx.inv(mu)

    def parts(z):
        return z[:n], z[n:2 * n], z[2 * n:]

    def sharp(z, R):
        x0, x1, x2 = parts(z)
        m, mi = R(mu), R(mu_inv)
        s0, s1, s2 = A.sharp(x0, R), A.sharp(x1, R), A.sharp(x2, R)
        p12, p01, p20 = A.mul(x1, x2, R), A.mul(x0, x1, R), A.mul(x2, x0, R)
        return ([a - b for a, b in zip(s0, p12)]
                + [mi * a - b for a, b in zip(s2, p01)]
                + [m * a - b for a, b in zip(s1, p20)])

    def norm(z, R):
        x0, x1, x2 = parts(z)
        m, mi = R(mu), R(mu_inv)
        return (A.norm(x0, R) + m * A.norm(x1, R) + mi * A.norm(x2, R)
                - A.trace(A.mul(A.mul(x0, x1, R), x2, R), R))

    adj = PolyMap.from_function(ctx, 3 * n, 3 * n, 2, sharp)
    nm = PolyMap.from_function(ctx, 3 * n, 1, 3, norm)
    one = list(A.unit) + [0] * (2 * n)
    labels = [f"{lab}[{k}]" for k in range(3) for lab in A.labels]
    J = CubicJordan(ctx, one, adj, nm, labels, f"J({A.kind},{mu})")
    J.assoc, J.mu = A, mu
    return J


def embed(J: CubicJordan, a, slot: int = 0):
    """(a, 0, 0), (0, a, 0) or (0, 0, a) in J(A, mu)."""
    n = J.assoc.dim
    out = [J.ctx.zero] * J.dim
    for k, c in enumerate(a):
        out[slot * n + k] = J.ctx(c)
    return out


def w_element(J: CubicJordan):
    return embed(J, J.assoc.one(), 1)


# --- subalgebra closure ----------------------------------------------------------

# a large prime for the modular shadow of rational closures
SHADOW_PRIME = 1000003


def _closure_mod(J, gens, p: int) -> ModSpan:
    d = J.dim
    U, B = tensors_mod(J, p)
    # the brace tensor restricted to a < b in its outer slots, for U of a sum
    Bu = B * np.triu(np.ones((d, d), dtype=np.int64), 1)[:, None, :, None]
    span = ModSpan(p, d)
    accepted: list[np.ndarray] = []
    umats: list[np.ndarray] = []
    one = np.array([_to_int(c, p) for c in J.one()], dtype=np.int64)
    queue = [one] + [np.array([_to_int(c, p) for c in g], dtype=np.int64) for g in gens]
    while queue and span.dim < d:
        v = queue.pop(0)
        if not span.add(v.tolist()):
            continue
        accepted.append(v)
        umats.append(_u_matrix(v, U, Bu, p))
        A = np.array(accepted)
        imgs = [A @ umats[-1] % p]                               # U_v a
        imgs.append(np.stack([v @ M % p for M in umats]))        # U_a v
        Tv = np.einsum("i,ijkd->jkd", v, B) % p
        M = np.einsum("bk,jkd->bjd", A, Tv) % p
        imgs.append(np.einsum("aj,bjd->abd", A, M).reshape(-1, d) % p)   # {v a b}
        Tm = np.einsum("j,ijkd->ikd", v, B) % p
        M = np.einsum("bk,ikd->bid", A, Tm) % p
        imgs.append(np.einsum("ai,bid->abd", A, M).reshape(-1, d) % p)   # {a v b}
        W = np.unique(np.concatenate(imgs) % p, axis=0)
        res = span.residual(W)
        queue.extend(list(W[res.any(axis=1)]))
    return span


def _u_matrix(v, U, Bu, p):
    """M with y @ M = U_v y."""
    sq = np.einsum("a,acd->cd", v * v % p, U) % p
    cross = np.einsum("b,acbd->acd", v, Bu) % p
    cross = np.einsum("a,acd->cd", v, cross) % p
    return (sq + cross) % p


def _to_int(c, p):
    from .cns import as_int

    return as_int(c, p)


def _closure_exact(J, gens) -> FieldSpan:
    R = J.ctx
    span = FieldSpan(R, J.dim)
    accepted = []
    queue = [J.one()] + [list(g) for g in gens]
    while queue and span.dim < J.dim:
        v = queue.pop(0)
        if not span.add(v):
            continue
        accepted.append(v)
        new = []
        for a in accepted:
            new += [J.U(v, a), J.U(a, v)]
            for b in accepted:
                new += [J.brace(v, a, b), J.brace(a, v, b)]
        queue.extend(w for w in new if w not in span)
    return span


def subalgebra_generated(J, gens) -> int:
    """Dimension of the subalgebra generated by ``gens`` (with 1) over a field.

    Prime fields are handled with integer arrays.  Over the rationals the
    closure of the reductions modulo a large prime is computed first: for
    integral generators it is contained in the reduction of the integral
    closure, so its dimension is a lower bound, and reaching full dimension
    settles the question.  Otherwise the exact rational closure is computed.
    """
    return _closure(J, gens)[0]


def subalgebra_basis(J, gens):
    return _closure(J, gens)[1]


def _closure(J, gens):
    ctx = J.ctx
    if not ctx.is_field:
        raise ValueError(f"subalgebra closure needs a field, not {ctx}")
    p = modulus_of(ctx)
    if p is not None:
        span = _closure_mod(J, gens, p)
        return span.dim, [[ctx(x) for x in r] for r in span.generators() if any(r)]
    if ctx == QQ and _integral(J, gens):
        shadow = _closure_mod(J, gens, SHADOW_PRIME)
        if shadow.dim == J.dim:
            return J.dim, None
    span = _closure_exact(J, gens)
    return span.dim, span.basis()


def _integral(J, gens) -> bool:
    """Whether J and the generators reduce modulo the shadow prime."""
    from .cns import as_int

    try:
        tensors_mod(J, SHADOW_PRIME)
        for g in gens:
            for c in g:
                as_int(c, SHADOW_PRIME)
    except (ValueError, ZeroDivisionError):
        return False
    return True


# --- generator experiments -----------------------------------------------------------

def mat2_elements(F: Ring):
    els = list(F.elements())
    return [list(v) for v in itertools.product(els, repeat=4)]


def generator_census_mat2(F: Ring | None = None):
    """Max closure dimension over all pairs in Mat_2(F)^+ and a generating triple."""
    F = F or GF(2)
    M2 = matrix_algebra(F, 2)
    elems = mat2_elements(F)
    best = 0
    for x, y in itertools.combinations(elems, 2):
        best = max(best, subalgebra_generated(M2, [x, y]))
    single = max(subalgebra_generated(M2, [x]) for x in elems)
    triple = None
    for trio in itertools.combinations(elems, 3):
        if subalgebra_generated(M2, list(trio)) == 4:
            triple = [list(t) for t in trio]
            break
    return {"max_pair_dim": best, "max_single_dim": single, "triple": triple}


def find_generating_pair(S, rng: random.Random, tries: int = 500, bound: int = 2):
    """Seeded search for two elements generating the algebra ``S``."""
    F = S.ctx
    for _ in range(tries):
        x = [F.random(rng, bound) for _ in range(S.dim)]
        y = [F.random(rng, bound) for _ in range(S.dim)]
        if subalgebra_generated(S, [x, y]) == S.dim:
            return x, y
    return None


def albert_generators(F: Ring, seed: int = 0):
    """Three generators of the split Albert algebra J(Mat_3(F), 1): a generating pair of Mat_3(F)^+ and w."""
    A = mat3(F)
    J = tits1(A, 1)
    M3 = matrix_algebra(F, 3)
    pair = find_generating_pair(M3, random.Random(seed))
    if pair is None:
        raise RuntimeError("no generating pair of Mat_3^+ found")
    gens = [embed(J, pair[0]), embed(J, pair[1]), w_element(J)]
    return J, gens, subalgebra_generated(J, gens)


def field_generator_route(F: Ring | None = None):
    """Mat_3(F)^+ as J(E, 1) with E generated by one element: the generator x of E and w."""
    F = F or GF(2)
    E = gf_cubic(F) if F == GF(2) else split_etale3(F)
    J = tits1(E, 1)
    x = [F(0), F(1), F(0)] if E.kind == "gf_cubic" else [F(0), F(1), F(2)]
    gens = [embed(J, x), w_element(J)]
    return J, gens, subalgebra_generated(J, gens)


def regular_trace_nondegenerate(A: CubicAssoc) -> bool:
    T = A.trace_form_matrix()
    return not A.ctx.is_zero(mat_det(A.ctx, T))


__all__ = [
    "CUBIC_KINDS", "CubicAssoc", "albert_generators", "embed", "field_generator_route",
    "find_generating_pair", "generator_census_mat2", "gf_cubic", "mat3", "regular_trace_nondegenerate",
    "split_etale3", "subalgebra_basis", "subalgebra_generated", "tits1", "w_element",
]
