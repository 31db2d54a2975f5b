"""Hermitian 3x3 matrices over a composition algebra, Mat_3^+, and their norm isometries.

Coordinates of Her_3(C, Gamma) are ordered (a1, a2, a3, c1, c2, c3) with each
c_i a block of C-coordinates; c_i sits in the (i+1, i+2) entry scaled by
gamma_{i+2} (indices mod 3).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cns import CubicJordan, PolyMap, as_int, modulus_of, tensors_mod
from .comp import CompAlg
from .exact import ModSpan, PolyRing, Ring, extend, mat_mul


@dataclass(frozen=True)
class HerLayout:
    comp: CompAlg
    gamma: tuple

    @property
    def rank(self) -> int:
        return self.comp.rank

    @property
    def dim(self) -> int:
        return 3 + 3 * self.comp.rank

    def split(self, x):
        r = self.rank
        return list(x[:3]), [list(x[3 + i * r:3 + (i + 1) * r]) for i in range(3)]

    def join(self, alphas, cs):
        out = list(alphas)
        for c in cs:
            out += list(c)
        return out

    def alpha_index(self, i: int) -> int:
        return i

    def block(self, i: int) -> range:
        return range(3 + i * self.rank, 3 + (i + 1) * self.rank)


def _her3_sharp(L: HerLayout, x, R):
    C, g = L.comp, [R(c) for c in L.gamma]
    a, c = L.split(x)
    alphas, cs = [], []
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        alphas.append(a[i1] * a[i2] - g[i1] * g[i2] * C.norm(c[i], R))
        cc = C.conj(C.mul(c[i1], c[i2], R), R)
        cs.append([-a[i] * p + g[i] * q for p, q in zip(c[i], cc)])
    return L.join(alphas, cs)


def _her3_norm(L: HerLayout, x, R):
    C, g = L.comp, [R(c) for c in L.gamma]
    a, c = L.split(x)
    out = a[0] * a[1] * a[2]
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        out = out - g[i1] * g[i2] * a[i] * C.norm(c[i], R)
    return out + g[0] * g[1] * g[2] * C.trace(C.mul(C.mul(c[0], c[1], R), c[2], R), R)


def her3(C: CompAlg, gamma=(1, 1, 1)) -> CubicJordan:
    """The cubic norm structure on Her_3(C, Gamma)."""
    ctx = C.ctx
    gamma = tuple(ctx(g) for g in gamma)
    if not all(ctx.is_unit(g) for g in gamma):
        raise ValueError("the diagonal entries of Gamma must be units")
    L = HerLayout(C, gamma)
    adj = PolyMap.from_function(ctx, L.dim, L.dim, 2, lambda z, R: _her3_sharp(L, z, R))
    nm = PolyMap.from_function(ctx, L.dim, 1, 3, lambda z, R: _her3_norm(L, z, R))
    one = [1, 1, 1] + [0] * (3 * C.rank)
    labels = [f"eps{i + 1}" for i in range(3)] + [f"d{i + 1}.{lab}" for i in range(3) for lab in C.labels]
    tag = "" if all(g == 1 for g in gamma) else f",<{','.join(str(g) for g in gamma)}>"
    J = CubicJordan(ctx, one, adj, nm, labels, f"Her3({C.kind}{tag})")
    J.layout = L
    return J


def encode_element(J: CubicJordan, x) -> str:
    a, c = J.layout.split(x)
    enc = lambda v: int(v) if isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1) else str(v)
    return json.dumps({"alphas": [enc(v) for v in a], "cs": [[enc(v) for v in blk] for blk in c]})


def decode_element(J: CubicJordan, text: str):
    data = json.loads(text)
    ctx = J.ctx
    dec = lambda v: ctx(Fraction(v)) if isinstance(v, str) else ctx(v)
    cs = data["cs"]
    if len(data["alphas"]) != 3 or len(cs) != 3 or any(len(b) != J.layout.rank for b in cs):
        raise ValueError("malformed element")
    return J.layout.join([dec(v) for v in data["alphas"]], [[dec(v) for v in b] for b in cs])


def element(J: CubicJordan, alphas=(0, 0, 0), cs=None):
    """Coordinates of sum a_i eps_i + delta_i(c_i)."""
    L, ctx = J.layout, J.ctx
    cs = cs or [[0] * L.rank] * 3
    return L.join([ctx(a) for a in alphas], [[ctx(v) for v in c] for c in cs])


# --- Mat_3^+ ---------------------------------------------------------------------

def _mat3(z):
    return [z[0:3], z[3:6], z[6:9]]


def _adjugate(m):
    def cof(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]

    # adj(m)[i][j] = (-1)^(i+j) cofactor(j, i)
    return [[cof(j, i) if (i + j) % 2 == 0 else -cof(j, i) for j in range(3)] for i in range(3)]


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def mat3_plus(ctx: Ring) -> CubicJordan:
    """Mat_3 with the identity, the classical adjoint and the determinant."""
    adj = PolyMap.from_function(ctx, 9, 9, 2, lambda z, R: [e for row in _adjugate(_mat3(z)) for e in row])
    nm = PolyMap.from_function(ctx, 9, 1, 3, lambda z, R: _det3(_mat3(z)))
    labels = [f"E{i + 1}{j + 1}" for i in range(3) for j in range(3)]
    return CubicJordan(ctx, [1, 0, 0, 0, 1, 0, 0, 0, 1], adj, nm, labels, "Mat3+")


def mat39_matrix(J: CubicJordan):
    """The 9x9 coordinate matrix of the identification Her_3(R x R) -> Mat_3(R).

    With c_i = (p_i, q_i), the image is
        [[a1, p3, q2], [q3, a2, p1], [p2, q1, a3]].
    """
    L = J.layout
    if L.comp.kind != "split_etale" or any(g != 1 for g in L.gamma):
        raise ValueError("expects Her_3 of the split etale algebra with trivial Gamma")
    ctx = J.ctx
    # source coordinate feeding each matrix entry (row major)
    p = lambda i: 3 + 2 * (i - 1)
    q = lambda i: 4 + 2 * (i - 1)
    src = [0, p(3), q(2), q(3), 1, p(1), p(2), q(1), 2]
    return [[ctx.one if j == src[e] else ctx.zero for j in range(9)] for e in range(9)]


def mat39_iso(J: CubicJordan, x):
    """Image of ``x`` as a 3x3 matrix."""
    M = mat39_matrix(J)
    flat = [sum((M[r][k] * x[k] for k in range(9)), J.ctx.zero) for r in range(9)]
    return _mat3(flat)


# --- isometries -------------------------------------------------------------------

@dataclass
class Isometry:
    """A linear map ``J -> J`` stored by matrix, with N(g x) = multiplier * N(x)."""

    target: CubicJordan
    matrix: list
    provenance: str
    ring: Ring
    multiplier: object = 1
    verified: bool = field(default=False)

    def apply(self, x, R: Ring | None = None):
        R = R or self.ring
        out = []
        for row in self.matrix:
            s = R.zero
            for m, a in zip(row, x):
                if m == 0 or a == 0:
                    continue
                s = s + R(m) * a
            out.append(s)
        return out

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other."""
        R = self.ring if isinstance(self.ring, PolyRing) else other.ring
        M = mat_mul(R, [[R(c) for c in r] for r in self.matrix], [[R(c) for c in r] for r in other.matrix])
        return Isometry(self.target, M, f"composite({self.provenance}, {other.provenance})", R,
                        R(self.multiplier) * R(other.multiplier), self.verified and other.verified)

    def check(self) -> bool:
        """N(g x) = multiplier * N(x) at a generic point."""
        J, R = self.target, self.ring
        G = extend(R, "g", J.dim)
        x = [G.gen(n) for n in G.names[-J.dim:]]
        self.verified = J.norm(self.apply(x, G), G) == G(self.multiplier) * J.norm(x, G)
        return self.verified


def identity_isometry(J: CubicJordan) -> Isometry:
    ctx = J.ctx
    M = [[ctx.one if i == j else ctx.zero for j in range(J.dim)] for i in range(J.dim)]
    return Isometry(J, M, "identity", ctx, 1, True)


def _scalar_part(C: CompAlg, d, R):
    unit = C.unit
    i0 = next(i for i, u in enumerate(unit) if C.ctx.is_unit(u))
    return d[i0] * R(C.ctx.inv(unit[i0]))


def _to_matrix(L: HerLayout, x, R):
    C = L.comp
    a, c = L.split(x)
    zero = [R.zero] * C.rank
    one = C.one(R)
    diag = [[R(ai) * u for u in one] for ai in a]
    cj = [C.conj(ci, R) for ci in c]
    return [[diag[0], c[2], cj[1]], [cj[2], diag[1], c[0]], [c[1], cj[0], diag[2]]], zero


def _from_matrix(L: HerLayout, A, R):
    C = L.comp
    alphas = [_scalar_part(C, A[i][i], R) for i in range(3)]
    return L.join(alphas, [A[1][2], A[2][0], A[0][1]])


def _cmat_mul(C, A, B, R):
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            s = [R.zero] * C.rank
            for k in range(3):
                if all(v == 0 for v in A[i][k]) or all(v == 0 for v in B[k][j]):
                    continue
                s = [p + q for p, q in zip(s, C.mul(A[i][k], B[k][j], R))]
            row.append(s)
        out.append(row)
    return out


def _tau_apply(L: HerLayout, s: int, t: int, q, x, R):
    C = L.comp
    A, zero = _to_matrix(L, x, R)
    one = C.one(R)
    M = [[one if i == j else zero for j in range(3)] for i in range(3)]
    N = [[one if i == j else zero for j in range(3)] for i in range(3)]
    M[s][t] = list(q)
    N[t][s] = C.conj(q, R)
    B = _cmat_mul(C, _cmat_mul(C, M, A, R), N, R)
    return _from_matrix(L, B, R)


def _perm_apply(L: HerLayout, pi, x, R):
    A, _ = _to_matrix(L, x, R)
    B = [[A[pi[i]][pi[j]] for j in range(3)] for i in range(3)]
    return _from_matrix(L, B, R)


def _matrix_of(fn, J: CubicJordan, R: Ring):
    cols = [fn(J.basis(b, R)) for b in range(J.dim)]
    return [[cols[b][a] for b in range(J.dim)] for a in range(J.dim)]


def isometry(kind: str, J: CubicJordan, *, s: int = 0, t: int = 1, q=None, pi=(0, 1, 2), alpha=None,
             ring: Ring | None = None, verify: bool = True) -> Isometry:
    """tau(s, t, q), perm(pi) or scale(alpha) on Her_3(C); indices are 0-based.

    ``ring`` is where the parameters live (defaults to J's scalars; pass a
    polynomial ring to use generic q or a Laurent alpha).
    """
    L: HerLayout = getattr(J, "layout", None)
    if L is None:
        raise ValueError("isometries are defined on Her_3 layouts")
    R = ring or J.ctx
    if kind == "tau":
        if s == t:
            raise ValueError("tau needs s != t")
        if any(g != 1 for g in L.gamma):
            raise ValueError("tau is implemented for trivial Gamma")
        q = [R(v) for v in q]
        M = _matrix_of(lambda e: _tau_apply(L, s, t, q, e, R), J, R)
        g = Isometry(J, M, f"tau({s + 1},{t + 1})", R, 1)
    elif kind == "perm":
        if sorted(pi) != [0, 1, 2]:
            raise ValueError("pi must be a permutation of (0, 1, 2)")
        if any(gm != 1 for gm in L.gamma):
            raise ValueError("perm is implemented for trivial Gamma")
        M = _matrix_of(lambda e: _perm_apply(L, tuple(pi), e, R), J, R)
        g = Isometry(J, M, f"perm{tuple(p + 1 for p in pi)}", R, 1)
    elif kind == "scale":
        alpha = R(alpha)
        if not R.is_unit(alpha):
            raise ValueError("scale needs a unit")
        ainv = R.inv(alpha)
        diag = [alpha, alpha, ainv] + [R.one] * (2 * L.rank) + [alpha] * L.rank
        M = [[diag[i] if i == j else R.zero for j in range(J.dim)] for i in range(J.dim)]
        g = Isometry(J, M, "scale", R, alpha)
    else:
        raise ValueError(f"unknown isometry kind {kind!r}")
    if verify and not g.check():
        raise AssertionError(f"{g.provenance} does not scale the norm as claimed")
    return g


# --- outer ideals -------------------------------------------------------------------

def outer_ideal_closure(J: CubicJordan, gens, mode: str = "outer"):
    """Smallest submodule containing ``gens`` closed under U_J I + {J J I} (and U_I J for mode='full').

    Works over ZZ/n and prime fields; returns a ``ModSpan``.
    """
    if mode not in ("outer", "full"):
        raise ValueError("mode is 'outer' or 'full'")
    n = modulus_of(J.ctx)
    if n is None:
        raise NotImplementedError(f"ideal closure needs ZZ/n or a prime field, not {J.ctx}")
    d = J.dim
    U, B = tensors_mod(J, n)
    span = ModSpan(n, d)
    accepted: list[np.ndarray] = []
    queue: list[np.ndarray] = []

    def offer(rows):
        # only vectors that enlarge the span are queued
        for r in rows:
            if span.add(r.tolist()):
                queue.append(r)

    offer([np.array([as_int(c) for c in g], dtype=np.int64) % n for g in gens])
    while queue and not span.is_full():
        v = queue.pop()
        accepted.append(v)
        imgs = [np.einsum("c,acd->ad", v, U),
                np.einsum("c,acbd->abd", v, B).reshape(d * d, d),
                np.einsum("c,abcd->abd", v, B).reshape(d * d, d)]
        if mode == "full":
            # U_v e_a and {v e_a h} for accepted h
            sq = np.einsum("c,cad->ad", v * v, U)
            # U_v = sum v_c^2 U_{e_c} + sum_{c<e} v_c v_e {e_c . e_e}
            upper = np.zeros((d, d), dtype=np.int64)
            for c in range(d):
                if v[c]:
                    upper += v[c] * np.einsum("e,aed->ad", v[c + 1:], B[c, :, c + 1:, :])
            imgs.append((sq + upper) % n)
            for h in accepted:
                imgs.append(np.einsum("c,e,caed->ad", v, h, B) % n)
        W = np.unique(np.concatenate(imgs) % n, axis=0)
        offer(W[span.residual(W).any(axis=1)])
    return span


def scalar_ideal_of(J: CubicJordan, span: ModSpan) -> list[int]:
    """{a in R : a 1 in I} for a submodule I of J over ZZ/n."""
    n = span.n
    one = np.array([as_int(c) for c in J.base_point], dtype=np.int64)
    return [a for a in range(n) if span.contains((a * one) % n)]


def ideal_times_J(J: CubicJordan, ideal: list[int], n: int) -> ModSpan:
    span = ModSpan(n, J.dim)
    for a in ideal:
        for k in range(J.dim):
            v = [0] * J.dim
            v[k] = a % n
            span.add(v)
    return span


# --- rescaling Gamma ------------------------------------------------------------------

def gamma_rescaling(C: CompAlg, gamma, *, factor=None, index: int | None = None, root=None):
    """Diagonal isomorphism Her_3(C, gamma) -> Her_3(C, gamma').

    Either every gamma_i is multiplied by the unit ``factor`` (all c's divided
    by it), or gamma_index is multiplied by root**2 (the two blocks other than
    c_index divided by ``root``).  Returns (gamma', matrix).
    """
    ctx = C.ctx
    gamma = [ctx(g) for g in gamma]
    scale = [ctx.one] * 3
    if factor is not None:
        f = ctx(factor)
        new = [f * g for g in gamma]
        scale = [ctx.inv(f)] * 3
    elif index is not None and root is not None:
        r = ctx(root)
        new = list(gamma)
        new[index] = r * r * gamma[index]
        scale = [ctx.one if i == index else ctx.inv(r) for i in range(3)]
    else:
        raise ValueError("give factor, or index and root")
    diag = [ctx.one] * 3 + [scale[i] for i in range(3) for _ in range(C.rank)]
    d = len(diag)
    return tuple(new), [[diag[i] if i == j else ctx.zero for j in range(d)] for i in range(d)]


# --- Her_3(C, Gamma) for split C ---------------------------------------------------

@dataclass
class SplitIsomorphism:
    """Her_3(C) -> Her_3(C, gamma) built from invertible p, q with
    gamma = (n(pq), n(q^-1), n(p^-1))."""

    source: CubicJordan
    target: CubicJordan
    matrix: list
    ring: Ring
    comp_map: list
    det_exponents: tuple | None = None


def _is_hom(C: CompAlg, D: CompAlg, M, R: Ring) -> bool:
    """M (matrix on coordinates) is a unital algebra map C -> D."""
    app = lambda v: [sum((row[k] * v[k] for k in range(len(v)) if v[k] != 0), R.zero) for row in M]
    if app(C.one(R)) != D.one(R):
        return False
    E = [C.basis(i, R) for i in range(C.rank)]
    imgs = [app(e) for e in E]
    return all(app(C.mul(E[i], E[j], R)) == D.mul(imgs[i], imgs[j], R)
               for i in range(C.rank) for j in range(C.rank))


def _zorn_to_isotope(C, D, p, q, R):
    """diag(a1, u, x, a2) -> (z1 a1, A u, B x, z2 a2) with A = diag(d, 1, 1) and
    B = xi2 eta1 adj(A)^T; d = xi1^-1 xi2^-2 eta1^-2 eta_k^-1 with k found by checking."""
    xi1, xi2, eta1, eta2 = p[0], p[7], q[0], q[7]
    z1, z2 = R.inv(xi1 * eta1), R.inv(xi2 * eta2)
    for k, eta in ((1, eta1), (2, eta2)):
        d = R.inv(xi1 * xi2 * xi2 * eta1 * eta1 * eta)
        b = xi2 * eta1
        diag = [z1, d, R.one, R.one, b, b * d, b * d, z2]
        M = [[diag[i] if i == j else R.zero for j in range(8)] for i in range(8)]
        if _is_hom(C, D, M, R):
            return M, (1, 2, 2, k)
    raise ArithmeticError("no determinant candidate gives an algebra isomorphism")


def split_isomorphism(C: CompAlg, p=None, q=None, ring: Ring | None = None) -> SplitIsomorphism:
    """Isomorphism Her_3(C) -> Her_3(C, gamma) for split C of rank 2, 4 or 8.

    Without ``p`` and ``q`` they are generic diagonal elements with Laurent
    entries, so gamma is generic too.  The result is verified: unital, norm
    preserving and compatible with the adjoint at a generic point.
    """
    from .comp import isotope

    if C.kind not in ("split_etale", "mat2", "zorn"):
        raise ValueError("needs split_etale, mat2 or zorn")
    if p is None:
        names = ["xi1", "xi2", "eta1", "eta2"]
        R = PolyRing(C.ctx, names, laurent=names)
        xi1, xi2, eta1, eta2 = (R.gen(n) for n in names)
        unit = C.unit
        # diagonal elements: first and last unit coordinates carry the two entries
        first, last = unit.index(1), len(unit) - 1 - unit[::-1].index(1)
        p = [R.zero] * C.rank
        q = [R.zero] * C.rank
        p[first], p[last], q[first], q[last] = xi1, xi2, eta1, eta2
    else:
        R = ring or C.ctx
    CR = C if R is C.ctx else C.base_change(R)
    p, q = [R(c) for c in p], [R(c) for c in q]
    D = isotope(CR, p, q)
    pq = CR.mul(p, q, R)
    gamma = (CR.norm(pq, R), CR.norm(CR.inverse(q, R), R), CR.norm(CR.inverse(p, R), R))

    # C -> C^(p,q)
    if C.kind == "zorn":
        if any(c != 0 for c in p[1:7] + q[1:7]):
            raise ValueError("the Zorn case needs diagonal p and q")
        psi, exps = _zorn_to_isotope(CR, D, p, q, R)
    else:
        inv = CR.inverse(pq, R)
        cols = [CR.mul(inv, CR.basis(j, R), R) for j in range(C.rank)]
        psi = [[cols[j][i] for j in range(C.rank)] for i in range(C.rank)]
        exps = None
        if not _is_hom(CR, D, psi, R):
            raise ArithmeticError("left multiplication by (pq)^-1 is not an algebra map")

    source, target = her3(CR), her3(CR, gamma)
    L = source.layout
    mv = lambda M, v: [sum((row[k] * v[k] for k in range(len(v)) if v[k] != 0), R.zero) for row in M]

    def phi(x):
        a, c = L.split(x)
        c = [mv(psi, ci) for ci in c]
        # Her_3(C^(p,q)) -> Her_3(C, gamma)
        c1 = CR.mul(CR.mul(pq, c[0], R), pq, R)
        c2 = CR.mul(c[1], p, R)
        c3 = CR.mul(q, c[2], R)
        return L.join(a, [c1, c2, c3])

    cols = [phi(source.basis(b, R)) for b in range(source.dim)]
    M = [[cols[b][a] for b in range(source.dim)] for a in range(source.dim)]
    out = SplitIsomorphism(source, target, M, R, psi, exps)
    if not split_isomorphism_holds(out):
        raise ArithmeticError("the split isomorphism failed verification")
    return out


def split_isomorphism_holds(S: SplitIsomorphism) -> bool:
    J, K, R = S.source, S.target, S.ring
    mv = lambda v, G: [sum((G(m) * v[k] for k, m in enumerate(row) if m != 0 and v[k] != 0), G.zero)
                       for row in S.matrix]
    if mv(J.one(R), R) != K.one(R):
        return False
    G = extend(R, "w", J.dim)
    x = [G.gen(n) for n in G.names[-J.dim:]]
    gx = mv(x, G)
    return K.norm(gx, G) == J.norm(x, G) and K.sharp(gx, G) == mv(J.sharp(x, G), G)


# --- Coxeter order versus the orthonormal octonion table ---------------------------

def frame_change(J: CubicJordan):
    """(target, M): Her_3 of the orthonormal octonion table over the integers and the
    rational matrix carrying Her_3(order) coordinates to it, blockwise by the order's frame."""
    from .comp import real_octonions
    from .exact import ZZ

    C = J.layout.comp
    frame = getattr(C, "frame", None)
    if frame is None or any(g != 1 for g in J.layout.gamma):
        raise ValueError("frame_change expects Her_3 of the Coxeter order with trivial Gamma")
    target = her3(real_octonions(ZZ))
    d = J.dim
    M = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for blk in range(3):
        off = 3 + 8 * blk
        for k, b in enumerate(frame.basis):
            for r in range(8):
                M[off + r][off + k] = b[r]
    return target, M


def frame_change_report(J: CubicJordan):
    """Checks that the frame change is an isomorphism of cubic norm structures over Q:
    it is unital, preserves N and intertwines the adjoints at a generic point."""
    from .exact import QQ
    from .report import Report

    target, M = frame_change(J)
    rep = Report(command=f"frame change {J.name} -> {target.name}")
    G = extend(QQ, "x", J.dim)
    x = [G.gen(n) for n in G.names]
    Mg = [[G(c) for c in row] for row in M]
    apply = lambda v: [sum((r[k] * v[k] for k in range(J.dim) if r[k] != 0), G.zero) for r in Mg]
    JQ, TQ = J.base_change(QQ), target.base_change(QQ)
    px = apply(x)
    rep.add("frame_unit", "M 1 = 1", apply(JQ.one(G)) == TQ.one(G))
    rep.add("frame_norm", "N(M x) = N(x)", TQ.norm(px, G) == JQ.norm(x, G))
    rep.add("frame_adjoint", "M x# = (M x)#", apply(JQ.sharp(x, G)) == TQ.sharp(px, G))
    return target, rep.finish()


# --- the octonions split over the Gaussian rationals --------------------------------

_H = Fraction(1, 2)

# Images of the Zorn basis (a1, u1, u2, u3, x1, x2, x3, a2) in the octonions over Q(i),
# as (real, imaginary) coordinate pairs on 1, e1..e7.  a1 is the idempotent (1 + i e7)/2;
# the u and x blocks are its two off-diagonal Peirce spaces.
GAUSSIAN_SPLITTING = (
    {0: (_H, 0), 7: (0, _H)},
    {1: (0, -_H), 3: (_H, 0)},
    {4: (0, -_H), 5: (_H, 0)},
    {2: (_H, 0), 6: (0, _H)},
    {1: (0, _H), 3: (_H, 0)},
    {4: (0, _H), 5: (_H, 0)},
    {2: (_H, 0), 6: (0, -_H)},
    {0: (_H, 0), 7: (0, -_H)},
)


def _mod_i2(p):
    """Reduce a polynomial in i (the first indeterminate) modulo i^2 + 1; returns the term dict."""
    out: dict = {}
    for e, c in p.terms().items():
        k = e[0]
        key = (k % 2,) + tuple(e[1:])
        out[key] = out.get(key, 0) + (-c if k % 4 >= 2 else c)
    return {k: c for k, c in out.items() if c != 0}


def gaussian_splitting_report(images=GAUSSIAN_SPLITTING, twisted: bool = False):
    """Checks that ``images`` (by default GAUSSIAN_SPLITTING) give an isomorphism Zorn -> octonions
    over Q(i), and that its blockwise extension Her_3(Zorn) -> Her_3(octonions) is unital and
    preserves N and the adjoint.  With ``twisted`` both sides are replaced by their isotopes at a
    generic diagonal unit u (the map fixes diagonal elements).

    Identities verified generically on Her_3(Zorn) over Z then hold for Her_3 of the octonions
    over Q(i), hence over Q, hence through the rational frame change for the Coxeter order.
    """
    from .comp import real_octonions, zorn
    from .exact import QQ
    from .report import Report

    rep = Report(command="gaussian splitting of the octonions" + (" (isotopes)" if twisted else ""))
    us = ("u1", "u2", "u3") if twisted else ()
    Gi = PolyRing(QQ, ("i",) + us, laurent=us)
    i = Gi.gen("i")
    P = [[Gi.zero] * 8 for _ in range(8)]
    for col, img in enumerate(images):
        for row, (re, im) in img.items():
            P[row][col] = Gi(re) + Gi(im) * i
    Z, O = zorn(QQ), real_octonions(QQ)
    basis = lambda k: [Gi(int(j == k)) for j in range(8)]
    img = lambda v, R: [sum((R(P[r][k]) * v[k] for k in range(8)), R.zero) for r in range(8)]
    zero = lambda vec: all(not _mod_i2(c) for c in vec)
    ok = all(zero([a - b for a, b in zip(O.mul(img(basis(s), Gi), img(basis(t), Gi), Gi),
                                         img(Z.mul(basis(s), basis(t), Gi), Gi))])
             for s in range(8) for t in range(8))
    rep.add("split_product", "P(a b) = P(a) P(b) on the Zorn basis", ok)
    rep.add("split_comp_unit", "P 1 = 1", zero([a - b for a, b in zip(img(Z.one(Gi), Gi), O.one(Gi))]))

    src, tgt = her3(Z), her3(O)
    L = src.layout
    if twisted:
        from .iso import isotope

        u = L.join([Gi.gen(n) for n in us], [[Gi.zero] * 8] * 3)
        src, tgt = isotope(src, u, Gi), isotope(tgt, u, Gi)
    G = extend(Gi, "x", src.dim)
    x = [G.gen(n) for n in G.names[len(Gi.names):]]

    def apply(v):
        alphas, cs = L.split(v)
        return L.join(alphas, [img(c, G) for c in cs])

    px = apply(x)
    rep.add("split_unit", "Phi 1 = 1", zero([a - b for a, b in zip(apply(src.one(G)), tgt.one(G))]))
    rep.add("split_norm", "N(Phi x) = N(x)", not _mod_i2(tgt.norm(px, G) - src.norm(x, G)))
    rep.add("split_adjoint", "Phi x# = (Phi x)#",
            zero([a - b for a, b in zip(apply(src.sharp(x, G)), tgt.sharp(px, G))]))
    return rep.finish()
