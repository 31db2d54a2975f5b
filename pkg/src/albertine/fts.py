"""The 56-dimensional module R + J + J + R with its alternating form and quartic form.

Vectors are coordinate lists ordered (alpha, x, x', alpha').  The symmetric
4-linear form is never stored: a value is the coefficient of t1 t2 t3 t4 in
q(t1 X1 + ... + t4 X4), computed in a square-free ring.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import factorial

from .cns import CubicJordan
from .exact import Ring, SquareFreeRing, extend, mat_vec
from .her3 import Isometry
from .iso import dagger


class DivisibilityError(ArithmeticError):
    pass


@dataclass
class FTMap:
    """A linear map of the 56-dimensional module with its expected effect on (b, q)."""

    name: str
    matrix: list
    ring: Ring
    b_multiplier: object = 1
    q_multiplier: object = 1

    def apply(self, X, R: Ring | None = None):
        R = R or self.ring
        return mat_vec(R, [[R(c) for c in row] for row in self.matrix], X)


class FTSystem:
    def __init__(self, J: CubicJordan):
        self.J = J
        self.ctx = J.ctx
        self.n = J.dim
        self.dim = 2 * J.dim + 2
        self._gram_b = None

    # -- coordinates
    def split(self, X):
        n = self.n
        return X[0], list(X[1:1 + n]), list(X[1 + n:1 + 2 * n]), X[1 + 2 * n]

    def join(self, a, x, xp, ap):
        return [a, *x, *xp, ap]

    def basis(self, i: int, R: Ring | None = None):
        R = R or self.ctx
        return [R.one if k == i else R.zero for k in range(self.dim)]

    def encode(self, X) -> str:
        a, x, xp, ap = self.split(X)
        return json.dumps({"alpha": _plain(a), "x": [_plain(c) for c in x],
                           "xp": [_plain(c) for c in xp], "alpha_prime": _plain(ap)})

    def decode(self, text: str):
        d = json.loads(text)
        if len(d["x"]) != self.n or len(d["xp"]) != self.n:
            raise ValueError("wrong block length")
        R = self.ctx
        return self.join(R(d["alpha"]), [R(c) for c in d["x"]], [R(c) for c in d["xp"]], R(d["alpha_prime"]))

    # -- forms
    def b(self, X, Y, R: Ring | None = None):
        R = R or self.ctx
        J = self.J
        a, x, xp, ap = self.split(X)
        c, y, yp, cp = self.split(Y)
        return a * cp - ap * c + J.trace_form(x, yp, R) - J.trace_form(xp, y, R)

    def q(self, X, R: Ring | None = None):
        R = R or self.ctx
        J = self.J
        a, x, xp, ap = self.split(X)
        s = J.trace_form(x, xp, R) - a * ap
        return (-4 * J.trace_form(J.sharp(x, R), J.sharp(xp, R), R) + 4 * a * J.norm(x, R)
                + 4 * ap * J.norm(xp, R) + s * s)

    def polar4(self, X1, X2, X3, X4, R: Ring | None = None):
        """Coefficient of t1 t2 t3 t4 in q(sum t_i X_i)."""
        R = R or self.ctx
        S = SquareFreeRing(R, 4)
        ts = [S.t(i) for i in range(4)]
        Z = [ts[0] * R(p) + ts[1] * R(q) + ts[2] * R(r) + ts[3] * R(s) for p, q, r, s in zip(X1, X2, X3, X4)]
        return self.q(Z, S).coeff(0b1111)

    def theta(self, X1, X2, X3, X4, R: Ring | None = None):
        return _half(self.polar4(X1, X2, X3, X4, R), R or self.ctx, "the full polarization of q")

    def phis(self, X1, X2, X3, X4, R: Ring | None = None):
        b = lambda u, v: self.b(u, v, R)
        return b(X1, X2) * b(X3, X4), b(X1, X3) * b(X4, X2), b(X1, X4) * b(X2, X3)

    def psi(self, X1, X2, X3, X4, R: Ring | None = None):
        t = self.theta(X1, X2, X3, X4, R)
        return _half(t + sum(self.phis(X1, X2, X3, X4, R)), R or self.ctx, "Theta + sum Phi")

    # -- integrality over the integers
    def gram_b(self):
        if self._gram_b is None:
            e = [self.basis(i) for i in range(self.dim)]
            self._gram_b = [[self.b(u, v) for v in e] for u in e]
        return self._gram_b

    def quartic_coefficients(self) -> dict:
        """Monomial -> coefficient of q at a generic point (monomials as sorted index tuples)."""
        G = extend(self.ctx, "X", self.dim)
        X = [G.gen(nm) for nm in G.names[-self.dim:]]
        off = G.nvars - self.dim
        out = {}
        for e, c in self.q(X, G).terms().items():
            e = e[off:]
            mono = tuple(i for i, k in enumerate(e) for _ in range(k))
            out[mono] = c
        return out

    def divisibility_sweep(self) -> dict:
        """Check on every multiset of four basis vectors that the full polarization L of q
        is even and that L/2 + sum Phi_i is even.

        L on basis vectors is the coefficient of the monomial times the product of the
        factorials of the multiplicities.  b is alternating, so sum Phi_i is symmetric
        modulo 2 and unordered tuples suffice.
        """
        coeffs = self.quartic_coefficients()
        B = self.gram_b()
        L = {}
        odd_L = []
        for mono, c in coeffs.items():
            mult = 1
            for k in set(mono):
                mult *= factorial(mono.count(k))
            v = int(c) * mult
            L[mono] = v
            if v % 2:
                odd_L.append(mono)
        odd_psi = []
        checked = 0
        for a, bb, c, d in itertools.combinations_with_replacement(range(self.dim), 4):
            checked += 1
            th = L.get((a, bb, c, d), 0) // 2
            ph = B[a][bb] * B[c][d] + B[a][c] * B[d][bb] + B[a][d] * B[bb][c]
            if (th + ph) % 2:
                odd_psi.append((a, bb, c, d))
        return {"tuples": checked, "monomials": len(coeffs), "odd_polarization": odd_L, "odd_psi": odd_psi,
                "ok": not odd_L and not odd_psi}

    # -- generators
    def _matrix(self, fn, R):
        cols = [fn(self.basis(i, R)) for i in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def e6_embed(self, phi: Isometry) -> FTMap:
        """(a, x, x', a') -> (a, phi x, phi^dagger x', a') for a norm isometry phi."""
        R = phi.ring
        if R(phi.multiplier) != R.one:
            raise ValueError("e6_embed needs an isometry with multiplier 1")
        dg = dagger(phi, self.J)

        def fn(X):
            a, x, xp, ap = self.split(X)
            return self.join(a, phi.apply(x, R), dg.apply(xp, R), ap)

        return FTMap(f"e6({phi.provenance})", self._matrix(fn, R), R)

    def torus(self, beta, R: Ring) -> FTMap:
        beta = R(beta)
        bi = R.inv(beta)

        def fn(X):
            a, x, xp, ap = self.split(X)
            return self.join(bi * bi * bi * a, [beta * c for c in x], [bi * c for c in xp], beta * beta * beta * ap)

        return FTMap("torus", self._matrix(fn, R), R)

    def _up(self, X, y, R):
        J = self.J
        ys, ny = J.sharp(y, R), J.norm(y, R)
        a, x, xp, ap = self.split(X)
        a2 = a + J.trace_form(xp, y, R) + J.trace_form(x, ys, R) + ap * ny
        x2 = [p + ap * q for p, q in zip(x, y)]
        xp2 = [p + q + ap * r for p, q, r in zip(xp, J.cross(x, y, R), ys)]
        return self.join(a2, x2, xp2, ap)

    def _down(self, X, y, R):
        J = self.J
        ys, ny = J.sharp(y, R), J.norm(y, R)
        a, x, xp, ap = self.split(X)
        x2 = [p + q + a * r for p, q, r in zip(x, J.cross(xp, y, R), ys)]
        xp2 = [p + a * q for p, q in zip(xp, y)]
        ap2 = ap + J.trace_form(x, y, R) + J.trace_form(xp, ys, R) + a * ny
        return self.join(a, x2, xp2, ap2)

    def trans_up(self, y, R: Ring) -> FTMap:
        """(a + T(x', y) + T(x, y#) + a' N(y), x + a' y, x' + x cross y + a' y#, a')."""
        y = [R(c) for c in y]
        return FTMap("trans_up", self._matrix(lambda X: self._up(X, y, R), R), R)

    def trans_down(self, y, R: Ring) -> FTMap:
        """(a, x + x' cross y + a y#, x' + a y, a' + T(x, y) + T(x', y#) + a N(y))."""
        y = [R(c) for c in y]
        return FTMap("trans_down", self._matrix(lambda X: self._down(X, y, R), R), R)

    def translation_additive(self, kind: str) -> bool:
        """G_y G_z = G_{y+z} at generic X, y, z."""
        fn = {"up": self._up, "down": self._down}[kind]
        G = self.ctx
        for p, k in (("X", self.dim), ("y", self.n), ("z", self.n)):
            G = extend(G, p, k)
        gens = [G.gen(nm) for nm in G.names[-(self.dim + 2 * self.n):]]
        X, y, z = gens[:self.dim], gens[self.dim:self.dim + self.n], gens[self.dim + self.n:]
        yz = [a + b for a, b in zip(y, z)]
        return fn(fn(X, z, G), y, G) == fn(X, yz, G)

    def translation_preserves(self, kind: str) -> dict:
        """Preservation of (b, q) by every translation, reduced to one generic scalar per basis
        direction: translations are additive in y, so G_y is the product of the G_{y_k e_k}."""
        make = {"up": self.trans_up, "down": self.trans_down}[kind]
        S = extend(self.ctx, "s", 1)
        s = S.gen("s0")
        bad = []
        for k in range(self.n):
            r = self.preserves(make([s if i == k else S.zero for i in range(self.n)], S))
            if not (r["b"] and r["q"]):
                bad.append(k)
        additive = self.translation_additive(kind)
        return {"b": not bad, "q": not bad, "additive": additive, "bad_directions": bad}

    def similarity(self, mu, R: Ring) -> FTMap:
        """(a, x, x', a') -> (a / mu, mu x, x', mu^2 a'), scaling b by mu and q by mu^2."""
        mu = R(mu)
        mi = R.inv(mu)

        def fn(X):
            a, x, xp, ap = self.split(X)
            return self.join(mi * a, [mu * c for c in x], list(xp), mu * mu * ap)

        return FTMap("similarity", self._matrix(fn, R), R, mu, mu * mu)

    def preserves(self, g: FTMap) -> dict:
        """b(gX, gY) = m_b b(X, Y) and q(gX) = m_q q(X) at generic X, Y."""
        G = extend(extend(g.ring, "X", self.dim), "Y", self.dim)
        X = [G.gen(nm) for nm in G.names[-2 * self.dim:-self.dim]]
        Y = [G.gen(nm) for nm in G.names[-self.dim:]]
        gX, gY = g.apply(X, G), g.apply(Y, G)
        ok_b = self.b(gX, gY, G) == G(g.b_multiplier) * self.b(X, Y, G)
        ok_q = self.q(gX, G) == G(g.q_multiplier) * self.q(X, G)
        return {"b": ok_b, "q": ok_q}


def fts_of(J: CubicJordan) -> FTSystem:
    return FTSystem(J)


def _half(v, R: Ring, what: str):
    if R.characteristic == 2:
        raise DivisibilityError("halving is undefined in characteristic 2")
    if isinstance(v, int):
        if v % 2:
            raise DivisibilityError(f"{what} is odd: {v}")
        return v // 2
    if hasattr(v, "divexact"):
        try:
            return v.divexact(2)
        except Exception as exc:
            raise DivisibilityError(f"{what} is not divisible by 2") from exc
    return v * R.inv(R(2))


def _plain(c):
    from fractions import Fraction

    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else str(c)
    if hasattr(c, "v"):
        return c.v
    return int(c)


__all__ = ["DivisibilityError", "FTMap", "FTSystem", "fts_of"]
