"""Isotopes, norm similarities and diagonalization of hermitian matrices over fields."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cns import CubicJordan, NotInvertible, generic_ring
from .exact import PolyRing, Ring, mat_det, mat_mul, mat_vec
from .her3 import Isometry, identity_isometry, isometry


def isotope(J: CubicJordan, u, R: Ring | None = None) -> CubicJordan:
    """The isotope J^(u): unit u^-1, adjoint N(u) U_u^-1 x#, norm N(u) N.

    ``u`` may have coordinates in an extension ``R`` of J's scalars (for
    instance Laurent indeterminates); the isotope is then built over ``R``.
    """
    R = R or J.ctx
    JR = J if R is J.ctx else J.base_change(R)
    u = [R(c) for c in u]
    nu = JR.norm(u, R)
    if not R.is_unit(nu):
        raise NotInvertible("isotopes need an invertible element")
    uinv = JR.inverse(u, R)
    W = [[nu * c for c in row] for row in JR.U_matrix(uinv, R)]
    adj = JR.adjoint.compose_linear(W)
    nm = JR.norm_map.scaled(nu)
    out = CubicJordan(R, uinv, adj, nm, JR.labels, f"{J.name}^(u)")
    out.parent, out.twist = JR, u
    if hasattr(J, "layout"):
        out.layout = J.layout
    return out


@dataclass
class MapClass:
    kind: str
    multiplier: object = None
    u: list | None = None
    detail: str = ""

    def __str__(self):
        if self.kind == "isotopy":
            return f"isotopy(multiplier={self.multiplier})"
        return self.kind


def _matrix_apply(R, M, x):
    return mat_vec(R, [[R(c) for c in row] for row in M], x)


def classify_map(phi, J: CubicJordan, J2: CubicJordan) -> MapClass:
    """Decide whether the linear map ``phi`` (a matrix, J coordinates -> J2 coordinates)
    is an isomorphism, an isotopy J -> J2^(u), or neither.
    """
    if len(phi) != J2.dim or any(len(r) != J.dim for r in phi):
        raise ValueError("matrix shape does not match the algebras")
    if J.dim != J2.dim:
        return MapClass("neither", detail="dimensions differ")
    ctx = J2.ctx
    if not ctx.is_unit(mat_det(ctx, [[ctx(c) for c in r] for r in phi])):
        return MapClass("neither", detail="not invertible")
    G, (x,) = generic_ring(J2, "x")
    nphi = J2.norm(_matrix_apply(G, phi, x), G)
    nx = J.norm(x, G)
    p1 = _matrix_apply(ctx, phi, J.one())
    if p1 == J2.one():
        if nphi == nx:
            return MapClass("isomorphism", ctx.one)
    alpha = J2.norm(p1)
    if not ctx.is_unit(alpha) or nphi != G(alpha) * nx:
        return MapClass("neither", detail="not a norm similarity")
    u = J2.inverse(p1)
    # phi is then unital and norm preserving into the isotope
    iso = isotope(J2, u)
    ok = iso.one() == p1 and iso.norm(_matrix_apply(G, phi, x), G) == nx
    return MapClass("isotopy" if ok else "neither", alpha, u, "" if ok else "isotope check failed")


def dagger(phi: Isometry, J: CubicJordan | None = None) -> Isometry:
    """phi^dagger = U_{phi(1)^-1} phi; an isometry with multiplier a has one with a^-1."""
    J = J or phi.target
    R = phi.ring
    p1 = phi.apply(J.one(R), R)
    if not R.is_unit(J.norm(p1, R)):
        raise NotInvertible("phi(1) is not invertible")
    Uinv = J.U_matrix(J.inverse(p1, R), R)
    M = mat_mul(R, Uinv, [[R(c) for c in row] for row in phi.matrix])
    m = R.inv(R(phi.multiplier))
    return Isometry(J, M, f"dagger({phi.provenance})", R, m)


def round_witness(J: CubicJordan, x, R: Ring | None = None) -> Isometry:
    """phi = N(x) U_{x^-1}, a similarity with multiplier N(x)."""
    R = R or J.ctx
    nx = J.norm(x, R)
    if not R.is_unit(nx):
        raise NotInvertible("round_witness needs N(x) to be a unit")
    M = [[nx * c for c in row] for row in J.U_matrix(J.inverse(x, R), R)]
    return Isometry(J, M, "round", R, nx)


def diagonal_isotope_map(C, gamma=None):
    """For u = diag(gamma) in Her_3(C, Gamma), the map Her_3(C, Gamma)^(u) -> Her_3(C) scaling
    a_i by gamma_i and c_i by gamma_{i+1} gamma_{i+2}.  Returns (source, target, matrix, class);
    without ``gamma`` the entries are Laurent indeterminates."""
    from .her3 import her3

    if gamma is None:
        R = PolyRing(C.ctx, ["g1", "g2", "g3"], laurent=("g1", "g2", "g3"))
        gamma = (R.gen("g1"), R.gen("g2"), R.gen("g3"))
    else:
        R = C.ctx
        gamma = tuple(R(g) for g in gamma)
    CR = C if R is C.ctx else C.base_change(R)
    JG = her3(CR, gamma)
    u = JG.layout.join(list(gamma), [[R.zero] * C.rank] * 3)
    src = isotope(JG, u)
    tgt = her3(CR)
    g1, g2, g3 = gamma
    diag = [g1, g2, g3] + [g2 * g3] * C.rank + [g1 * g3] * C.rank + [g1 * g2] * C.rank
    M = [[diag[i] if i == j else R.zero for j in range(src.dim)] for i in range(src.dim)]
    return src, tgt, M, classify_map(M, src, tgt)


# --- diagonalization ----------------------------------------------------------------

@dataclass
class Step:
    kind: str
    s: int = 0
    t: int = 0
    q: list | None = None
    pi: tuple = (0, 1, 2)

    def __str__(self):
        if self.kind == "tau":
            return f"tau({self.s + 1},{self.t + 1})"
        return f"perm{tuple(p + 1 for p in self.pi)}"


@dataclass
class Chain:
    """An isometry of Her_3(C) given as a sequence of tau and permutation steps."""

    target: CubicJordan
    steps: list[Step] = field(default_factory=list)

    def apply(self, x, R: Ring | None = None):
        from .her3 import _perm_apply, _tau_apply

        R = R or self.target.ctx
        L = self.target.layout
        for st in self.steps:
            if st.kind == "tau":
                x = _tau_apply(L, st.s, st.t, [R(c) for c in st.q], x, R)
            else:
                x = _perm_apply(L, st.pi, x, R)
        return x

    def isometry(self, verify: bool = False) -> Isometry:
        """The composite as an explicit matrix."""
        g = identity_isometry(self.target)
        for st in self.steps:
            kw = dict(s=st.s, t=st.t, q=st.q) if st.kind == "tau" else dict(pi=st.pi)
            g = isometry(st.kind, self.target, verify=verify, **kw).compose(g)
        return g

    def __str__(self):
        return " then ".join(str(s) for s in self.steps) or "identity"


def _is_zero(v):
    return all(c == 0 for c in v)


def _pick_q(C, R, c, a):
    """q with n(q, c) + a n(q) != 0, searched over basis vectors and their pairwise sums.

    Such a q exists when c != 0 and n is regular: if the quadratic form vanished on
    all of these, its polarization a n(., .) would vanish, so a = 0 and n(., c) = 0.
    """
    cands = [C.basis(k, R) for k in range(C.rank)]
    cands += [[x + y for x, y in zip(cands[i], cands[j])] for i in range(C.rank) for j in range(i + 1, C.rank)]
    for q in cands:
        if not R.is_zero(C.bilinear(q, c, R) + a * C.norm(q, R)):
            return q
    raise ArithmeticError("bilinear norm is degenerate at c")


def is_diagonal(J: CubicJordan, x) -> bool:
    return all(_is_zero(c) for c in J.layout.split(x)[1])


def diagonalize(J: CubicJordan, u):
    """Return (g, d) with g a chain of tau/permutation isometries and d = g(u) diagonal."""
    R = J.ctx
    L = getattr(J, "layout", None)
    if L is None or any(g != 1 for g in L.gamma):
        raise ValueError("diagonalize expects Her_3(C) with trivial Gamma")
    if not R.is_field:
        raise ValueError(f"diagonalization is implemented over fields, not {R}")
    if R.is_zero(J.norm(u)):
        raise NotInvertible("u is not invertible")
    C = L.comp
    chain = Chain(J)
    x = list(u)

    def push(step):
        nonlocal x
        chain.steps.append(step)
        x = Chain(J, [step]).apply(x, R)

    def parts():
        return L.split(x)

    a, c = parts()
    if R.is_zero(a[0]):
        if not _is_zero(c[2]):
            push(Step("tau", 0, 1, _pick_q(C, R, c[2], a[1])))
        elif not R.is_zero(a[1]):
            push(Step("perm", pi=(1, 0, 2)))
        elif not R.is_zero(a[2]):
            push(Step("perm", pi=(2, 1, 0)))
        else:
            # c3 = 0 and a = 0 force c2 != 0; entry (1,3) is conj(c2)
            push(Step("tau", 0, 2, _pick_q(C, R, C.conj(c[1], R), a[2])))
    a, c = parts()
    inv1 = R.inv(a[0])
    if not _is_zero(c[2]):
        push(Step("tau", 1, 0, [-inv1 * v for v in C.conj(c[2], R)]))
    a, c = parts()
    if not _is_zero(c[1]):
        push(Step("tau", 2, 0, [-inv1 * v for v in c[1]]))
    a, c = parts()
    if R.is_zero(a[1]):
        if not R.is_zero(a[2]):
            push(Step("perm", pi=(0, 2, 1)))
        else:
            push(Step("tau", 1, 2, _pick_q(C, R, c[0], a[2])))
    a, c = parts()
    if not _is_zero(c[0]):
        inv2 = R.inv(a[1])
        push(Step("tau", 2, 1, [-inv2 * v for v in C.conj(c[0], R)]))
    if not is_diagonal(J, x):
        raise AssertionError("diagonalization left off-diagonal entries")
    return chain, x


@dataclass
class TrialSummary:
    trials: int
    diagonalized: int
    norm_preserved: int
    matrix_agrees: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        n = self.trials
        return self.diagonalized == self.norm_preserved == self.matrix_agrees == n and not self.failures


def random_invertible(J: CubicJordan, rng, bound: int = 3):
    R = J.ctx
    while True:
        u = [R.random(rng, bound) for _ in range(J.dim)]
        if not R.is_zero(J.norm(u)):
            return u


def diagonalize_trials(J: CubicJordan, trials: int, seed: int, extra=()) -> TrialSummary:
    """Diagonalize seeded random invertible elements (and any ``extra`` ones), checking that the
    norm is unchanged and that the composite matrix reproduces the diagonal form."""
    import random

    rng = random.Random(seed)
    us = [random_invertible(J, rng) for _ in range(trials)] + [list(u) for u in extra]
    out = TrialSummary(len(us), 0, 0, 0)
    for u in us:
        try:
            chain, d = diagonalize(J, u)
        except (AssertionError, ArithmeticError) as exc:
            out.failures.append({"u": [str(c) for c in u], "error": str(exc)})
            continue
        out.diagonalized += is_diagonal(J, d)
        out.norm_preserved += J.norm(d) == J.norm(u)
        out.matrix_agrees += chain.isometry().apply(u, J.ctx) == d
    return out


def generic_isotope_unit(J: CubicJordan, prefix: str = "u"):
    """A Laurent ring over J's scalars and the diagonal unit u = sum u_i eps_i there."""
    R = PolyRing(J.ctx, [f"{prefix}{i}" for i in range(1, 4)], laurent=tuple(f"{prefix}{i}" for i in range(1, 4)))
    diag = [0, 1, 2] if hasattr(J, "layout") else [i for i, c in enumerate(J.base_point) if c != 0]
    if len(diag) != 3:
        raise ValueError("expects a base point with three nonzero coordinates")
    u = [R.zero] * J.dim
    for i, k in enumerate(diag):
        u[k] = R.gen(f"{prefix}{i + 1}")
    return R, u


__all__ = [
    "Chain", "MapClass", "Step", "classify_map", "dagger", "diagonal_isotope_map", "diagonalize",
    "diagonalize_trials", "generic_isotope_unit", "random_invertible",
    "is_diagonal", "isotope", "round_witness",
]
