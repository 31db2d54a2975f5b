"""Composition algebras given by structure constants and a quadratic norm.

An algebra is stored as sparse integer-like data: the product of basis
vectors ``b_i b_j = sum_k m[i, j, k] b_k``, the norm coefficients
``n(x) = sum_{i <= j} q[i, j] x_i x_j`` and the coordinates of the unit.
All operations take plain coordinate lists and an optional coordinate ring,
so the same table can be evaluated over its own ring or over any extension
(polynomial rings in particular, which is how identities are verified).
"""

from __future__ import annotations

import json
from functools import partial
from fractions import Fraction

from .exact import QQ, ZZ, IntMatrix, PolyRing, Ring, extend, hnf, mat_det
from .report import Report, record_identity

# Signed products e_i e_j = sign * e_k for 1 <= i != j <= 7, written (sign, k).
# Row i, column j; the diagonal is e_i^2 = -1.
OCTONION_TABLE = {
    1: {2: (1, 4), 3: (1, 7), 4: (-1, 2), 5: (1, 6), 6: (-1, 5), 7: (-1, 3)},
    2: {1: (-1, 4), 3: (1, 5), 4: (1, 1), 5: (-1, 3), 6: (1, 7), 7: (-1, 6)},
    3: {1: (-1, 7), 2: (-1, 5), 4: (1, 6), 5: (1, 2), 6: (-1, 4), 7: (1, 1)},
    4: {1: (1, 2), 2: (-1, 1), 3: (-1, 6), 5: (1, 7), 6: (1, 3), 7: (-1, 5)},
    5: {1: (-1, 6), 2: (1, 3), 3: (-1, 2), 4: (-1, 7), 6: (1, 1), 7: (1, 4)},
    6: {1: (1, 5), 2: (-1, 7), 3: (1, 4), 4: (-1, 3), 5: (-1, 1), 7: (1, 2)},
    7: {1: (1, 3), 2: (1, 6), 3: (-1, 1), 4: (1, 5), 5: (-1, 4), 6: (-1, 2)},
}

# Spanning vectors of the Coxeter order beyond 1, e_1..e_7, doubled.
COXETER_HALVES = (
    (1, 1, 1, 0, 1, 0, 0, 0),
    (1, 1, 0, 1, 0, 0, 0, 1),
    (1, 1, 0, 0, 0, 1, 1, 0),
    (0, 1, 1, 1, 0, 1, 0, 0),
)


class CompAlg:
    """A unital algebra with a multiplicative quadratic norm, in coordinates."""

    def __init__(self, ctx: Ring, labels, mul, norm, unit, kind: str = "custom"):
        self.ctx = ctx
        self.labels = tuple(labels)
        self.rank = len(self.labels)
        self.kind = kind
        self.unit = tuple(ctx(c) for c in unit)
        if len(self.unit) != self.rank:
            raise ValueError("unit has the wrong length")
        table: dict = {}
        for (i, j, k, c) in mul:
            c = ctx(c)
            if ctx.is_zero(c):
                continue
            table.setdefault((i, j), []).append((k, c))
        self.mul_table = table
        q: dict = {}
        for (i, j, c) in norm:
            i, j = min(i, j), max(i, j)
            c = ctx(c)
            if not ctx.is_zero(c):
                q[(i, j)] = q.get((i, j), ctx.zero) + c
        self.norm_coeffs = q
        gram = [[ctx.zero] * self.rank for _ in range(self.rank)]
        for (i, j), c in q.items():
            if i == j:
                gram[i][i] = gram[i][i] + 2 * c
            else:
                gram[i][j] = gram[i][j] + c
                gram[j][i] = gram[j][i] + c
        self.gram = gram
        self.trace_vec = [sum((gram[i][j] * self.unit[j] for j in range(self.rank)), ctx.zero)
                          for i in range(self.rank)]
        self._cache: dict = {}

    # coefficient coercion into other coordinate rings ---------------------
    def _tables(self, R: Ring):
        if R is self.ctx or R == self.ctx:
            R = self.ctx
        hit = self._cache.get(R)
        if hit is None:
            mul = {ij: [(k, R(c)) for k, c in lst] for ij, lst in self.mul_table.items()}
            q = [(i, j, R(c)) for (i, j), c in self.norm_coeffs.items()]
            gram = [(i, j, R(self.gram[i][j])) for i in range(self.rank) for j in range(self.rank)
                    if not self.ctx.is_zero(self.gram[i][j])]
            tr = [(i, R(c)) for i, c in enumerate(self.trace_vec) if not self.ctx.is_zero(c)]
            unit = [R(c) for c in self.unit]
            hit = (mul, q, gram, tr, unit)
            self._cache[R] = hit
        return hit

    # arithmetic on coordinate lists ----------------------------------------
    def mul(self, x, y, R: Ring | None = None):
        R = R or self.ctx
        mul = self._tables(R)[0]
        out = [R.zero] * self.rank
        for (i, j), lst in mul.items():
            a, b = x[i], y[j]
            if a == 0 or b == 0:
                continue
            p = a * b
            for k, c in lst:
                out[k] = out[k] + (p if c == 1 else -p if c == -1 else c * p)
        return out

    def norm(self, x, R: Ring | None = None):
        R = R or self.ctx
        out = R.zero
        for i, j, c in self._tables(R)[1]:
            if x[i] == 0 or x[j] == 0:
                continue
            p = x[i] * x[j]
            out = out + (p if c == 1 else -p if c == -1 else c * p)
        return out

    def bilinear(self, x, y, R: Ring | None = None):
        R = R or self.ctx
        out = R.zero
        for i, j, c in self._tables(R)[2]:
            if x[i] == 0 or y[j] == 0:
                continue
            out = out + c * (x[i] * y[j])
        return out

    def trace(self, x, R: Ring | None = None):
        R = R or self.ctx
        out = R.zero
        for i, c in self._tables(R)[3]:
            if x[i] != 0:
                out = out + c * x[i]
        return out

    def conj(self, x, R: Ring | None = None):
        R = R or self.ctx
        t = self.trace(x, R)
        unit = self._tables(R)[4]
        return [t * u - a for u, a in zip(unit, x)]

    def one(self, R: Ring | None = None):
        R = R or self.ctx
        return list(self._tables(R)[4])

    def basis(self, i: int, R: Ring | None = None):
        R = R or self.ctx
        return [R.one if k == i else R.zero for k in range(self.rank)]

    def scale(self, s, x):
        return [s * a for a in x]

    def add(self, x, y):
        return [a + b for a, b in zip(x, y)]

    def sub(self, x, y):
        return [a - b for a, b in zip(x, y)]

    def inverse(self, x, R: Ring | None = None):
        R = R or self.ctx
        nx = self.norm(x, R)
        return self.scale(R.inv(nx), self.conj(x, R))

    def elem(self, coords) -> "CompElem":
        return CompElem(self, tuple(self.ctx(c) for c in coords))

    def gram_det(self):
        return mat_det(self.ctx, self.gram)

    def base_change(self, R: Ring) -> "CompAlg":
        mul = [(i, j, k, R(c)) for (i, j), lst in self.mul_table.items() for k, c in lst]
        norm = [(i, j, R(c)) for (i, j), c in self.norm_coeffs.items()]
        return CompAlg(R, self.labels, mul, norm, [R(c) for c in self.unit], self.kind)

    # serialization -----------------------------------------------------------
    def to_json(self) -> str:
        def enc(c):
            if isinstance(c, Fraction):
                return str(c) if c.denominator != 1 else c.numerator
            if isinstance(c, int):
                return c
            return str(c)

        return json.dumps({
            "rank": self.rank,
            "labels": list(self.labels),
            "mul": [[i, j, k, enc(c)] for (i, j), lst in sorted(self.mul_table.items()) for k, c in lst],
            "norm": [[i, j, enc(c)] for (i, j), c in sorted(self.norm_coeffs.items())],
            "unit": [enc(c) for c in self.unit],
        })

    @classmethod
    def from_json(cls, text: str, ctx: Ring = ZZ) -> "CompAlg":
        data = json.loads(text)

        def dec(c):
            return ctx(Fraction(c)) if isinstance(c, str) else ctx(c)

        alg = cls(ctx, data["labels"], [(i, j, k, dec(c)) for i, j, k, c in data["mul"]],
                  [(i, j, dec(c)) for i, j, c in data["norm"]], [dec(c) for c in data["unit"]])
        if alg.rank != data["rank"]:
            raise ValueError("rank does not match the label count")
        return alg

    def __repr__(self):
        return f"CompAlg({self.kind}, rank={self.rank}, over {self.ctx})"


class CompElem:
    """An element of a composition algebra with operator syntax."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg: CompAlg, coords):
        if len(coords) != alg.rank:
            raise ValueError("coordinate vector has the wrong length")
        self.alg = alg
        self.coords = tuple(coords)

    def _check(self, other):
        if not isinstance(other, CompElem) or other.alg is not self.alg:
            raise TypeError("elements of different algebras")

    def __mul__(self, other):
        if isinstance(other, CompElem):
            self._check(other)
            return CompElem(self.alg, self.alg.mul(self.coords, other.coords))
        return CompElem(self.alg, [self.alg.ctx(other) * a for a in self.coords])

    def __rmul__(self, s):
        return CompElem(self.alg, [self.alg.ctx(s) * a for a in self.coords])

    def __add__(self, other):
        self._check(other)
        return CompElem(self.alg, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return CompElem(self.alg, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return CompElem(self.alg, [-a for a in self.coords])

    def __eq__(self, other):
        return isinstance(other, CompElem) and other.alg is self.alg and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def conj(self):
        return CompElem(self.alg, self.alg.conj(self.coords))

    def trace(self):
        return self.alg.trace(self.coords)

    def norm(self):
        return self.alg.norm(self.coords)

    def inverse(self):
        return CompElem(self.alg, self.alg.inverse(self.coords))

    def __repr__(self):
        terms = [f"{c}*{lab}" for c, lab in zip(self.coords, self.alg.labels) if c != 0]
        return " + ".join(terms) or "0"


# --- constructions -------------------------------------------------------------

def rank1(ctx: Ring) -> CompAlg:
    if not ctx.is_unit(ctx(2)):
        raise ValueError(f"2 is not invertible in {ctx}; the rank-one norm x^2 is not regular")
    return CompAlg(ctx, ["1"], [(0, 0, 0, 1)], [(0, 0, 1)], [1], "rank1")


def split_etale(ctx: Ring) -> CompAlg:
    return CompAlg(ctx, ["e1", "e2"], [(0, 0, 0, 1), (1, 1, 1, 1)], [(0, 1, 1)], [1, 1], "split_etale")


def mat2(ctx: Ring) -> CompAlg:
    labels = ["E11", "E12", "E21", "E22"]
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    mul = []
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c:
                mul.append((i, j, idx[(a, d)], 1))
    return CompAlg(ctx, labels, mul, [(0, 3, 1), (1, 2, -1)], [1, 0, 0, 1], "mat2")


ZORN_LABELS = ("a1", "u1", "u2", "u3", "x1", "x2", "x3", "a2")


def _zorn_product(a, b):
    """Product of two Zorn vector matrices given as (alpha1, u, x, alpha2)."""
    a1, u, x, a2 = a
    b1, v, y, b2 = b

    def dot(p, q):
        return sum(s * t for s, t in zip(p, q))

    def cross(p, q):
        return [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]]

    xy, uv = cross(x, y), cross(u, v)
    return (
        a1 * b1 - dot(u, y),
        [a1 * v[i] + b2 * u[i] + xy[i] for i in range(3)],
        [b1 * x[i] + a2 * y[i] + uv[i] for i in range(3)],
        -dot(x, v) + a2 * b2,
    )


def _zorn_split(coords):
    return coords[0], list(coords[1:4]), list(coords[4:7]), coords[7]


def zorn(ctx: Ring) -> CompAlg:
    """The split octonions as 2x2 vector matrices [[a1, u], [x, a2]]."""
    mul = []
    for i in range(8):
        for j in range(8):
            ei = [int(k == i) for k in range(8)]
            ej = [int(k == j) for k in range(8)]
            a1, u, x, a2 = _zorn_product(_zorn_split(ei), _zorn_split(ej))
            for k, c in enumerate([a1, *u, *x, a2]):
                if c:
                    mul.append((i, j, k, c))
    norm = [(0, 7, 1), (1, 4, 1), (2, 5, 1), (3, 6, 1)]
    return CompAlg(ctx, ZORN_LABELS, mul, norm, [1, 0, 0, 0, 0, 0, 0, 1], "zorn")


def octonion_product_table():
    """Structure constants of the real octonions in the basis 1, e_1..e_7."""
    mul = [(0, 0, 0, 1)]
    for i in range(1, 8):
        mul += [(0, i, i, 1), (i, 0, i, 1), (i, i, 0, -1)]
        for j, (s, k) in OCTONION_TABLE[i].items():
            mul.append((i, j, k, s))
    return mul


def real_octonions(ctx: Ring = QQ) -> CompAlg:
    labels = ["1"] + [f"e{i}" for i in range(1, 8)]
    norm = [(i, i, 1) for i in range(8)]
    return CompAlg(ctx, labels, octonion_product_table(), norm, [1] + [0] * 7, "real_octonions")


def compact_subalgebra(r: int, ctx: Ring = QQ) -> CompAlg:
    """The positive-definite composition algebra of rank 2^r inside the real octonions.

    Rank 1, 2 and 4 use the spans of {1}, {1, e1} and {1, e1, e2, e4}.
    """
    keep = {0: [0], 1: [0, 1], 2: [0, 1, 2, 4], 3: list(range(8))}[r]
    if r == 0:
        return rank1(ctx)
    pos = {b: n for n, b in enumerate(keep)}
    mul = [(pos[i], pos[j], pos[k], c) for i, j, k, c in octonion_product_table()
           if i in pos and j in pos and k in pos]
    labels = ["1" if b == 0 else f"e{b}" for b in keep]
    return CompAlg(ctx, labels, mul, [(n, n, 1) for n in range(len(keep))],
                   [1] + [0] * (len(keep) - 1), f"compact{2 ** r}")


def coxeter_spanning_matrix() -> IntMatrix:
    """The 12 spanning vectors of the order, in doubled orthonormal coordinates."""
    rows = [tuple(2 * int(i == j) for j in range(8)) for i in range(8)]
    rows += list(COXETER_HALVES)
    return IntMatrix(tuple(rows))


class CoxeterFrame:
    """Passage between HNF coordinates and half-integer orthonormal coordinates."""

    def __init__(self):
        H, _ = hnf(coxeter_spanning_matrix())
        self.H = H
        self.basis = [[Fraction(x, 2) for x in row] for row in H.rows]

    def to_frame(self, coords):
        return [sum((Fraction(c) * b[k] for c, b in zip(coords, self.basis)), Fraction(0)) for k in range(8)]

    def from_frame(self, v):
        """Integral coordinates of ``v`` in the HNF basis, or ValueError if ``v`` is not in the order."""
        w = [Fraction(x) * 2 for x in v]
        out = [0] * 8
        # H is upper triangular with pivots on the diagonal
        for i in range(8):
            h = self.H.rows[i][i]
            c = w[i] / h
            if c.denominator != 1:
                raise ValueError(f"{v} is not in the Coxeter order")
            out[i] = int(c)
            w = [a - c * b for a, b in zip(w, self.H.rows[i])]
        if any(w):
            raise ValueError(f"{v} is not in the Coxeter order")
        return out


def coxeter_order(ctx: Ring = ZZ) -> CompAlg:
    """The Coxeter maximal order of the real octonions in its HNF basis."""
    if ctx != ZZ:
        raise ValueError("the Coxeter order is built over the integers; use base_change afterwards")
    frame = CoxeterFrame()
    O = real_octonions(QQ)
    mul = []
    for i, bi in enumerate(frame.basis):
        for j, bj in enumerate(frame.basis):
            for k, c in enumerate(frame.from_frame(O.mul(bi, bj))):
                if c:
                    mul.append((i, j, k, c))
    norm = []
    for i, bi in enumerate(frame.basis):
        for j in range(i, 8):
            bj = frame.basis[j]
            c = O.norm(bi) if i == j else O.bilinear(bi, bj)
            if c:
                norm.append((i, j, int(c)))
    unit = frame.from_frame([1] + [0] * 7)
    labels = [f"b{i}" for i in range(8)]
    alg = CompAlg(ZZ, labels, mul, norm, unit, "coxeter_order")
    alg.frame = frame
    return alg


def isotope(C: CompAlg, p, q) -> CompAlg:
    """C with product x.y = (xp)(qy), unit (pq)^-1 and norm n(pq) n."""
    R = C.ctx
    p, q = list(p), list(q)
    if not (R.is_unit(C.norm(p)) and R.is_unit(C.norm(q))):
        raise ValueError("p and q must have invertible norm")
    mul = []
    for i in range(C.rank):
        xp = C.mul(C.basis(i), p)
        for j in range(C.rank):
            prod = C.mul(xp, C.mul(q, C.basis(j)))
            for k, c in enumerate(prod):
                if not R.is_zero(c):
                    mul.append((i, j, k, c))
    pq = C.mul(p, q)
    npq = C.norm(pq)
    norm = [(i, j, npq * c) for (i, j), c in C.norm_coeffs.items()]
    return CompAlg(R, C.labels, mul, norm, C.inverse(pq), "isotope")


CONSTRUCTORS = {
    "rank1": rank1,
    "split_etale": split_etale,
    "mat2": mat2,
    "zorn": zorn,
    "real_octonions": real_octonions,
    "coxeter_order": coxeter_order,
}


def construct(kind: str, ctx: Ring) -> CompAlg:
    try:
        return CONSTRUCTORS[kind](ctx)
    except KeyError:
        raise ValueError(f"unknown composition algebra kind {kind!r}") from None


# --- verification ---------------------------------------------------------------

def verify(C: CompAlg) -> Report:
    """Check the composition-algebra axioms at a generic point."""
    rep = Report(command=f"verify {C.kind}")
    R = C.ctx
    G = extend(extend(R, "x", C.rank), "y", C.rank)
    names = G.names[-2 * C.rank:]
    x = [G.gen(n) for n in names[:C.rank]]
    y = [G.gen(n) for n in names[C.rank:]]
    one = C.one(G)

    rec = partial(record_identity, rep, G=G)
    rec("unit_law", "unit", lhs=C.mul(one, x, G) + C.mul(x, one, G), rhs=x + x)
    rep.add("unit_norm", "unit", R(C.norm(C.one())) == R.one, f"n(1) = {C.norm(C.one())}")
    d = C.gram_det()
    rep.add("norm_regular", "regularity", R.is_unit(d), f"Gram determinant {d}")
    xy = C.mul(x, y, G)
    rec("composition_law", "n(xy) = n(x) n(y)", lhs=C.norm(xy, G), rhs=C.norm(x, G) * C.norm(y, G))
    x2 = C.mul(x, x, G)
    tr, nx = C.trace(x, G), C.norm(x, G)
    rec("cayley_hamilton", "x^2 - Tr(x) x + n(x) 1 = 0",
        lhs=[a - tr * b + nx * u for a, b, u in zip(x2, x, one)], rhs=[G.zero] * C.rank)
    rec("conjugation_involution", "conjugation",
        lhs=C.conj(C.conj(x, G), G) + C.conj(xy, G), rhs=x + C.mul(C.conj(y, G), C.conj(x, G), G))
    rec("linearized_composition", "n(xy, x) = n(x) Tr(y)", lhs=C.bilinear(xy, x, G), rhs=nx * C.trace(y, G))
    return rep.finish()


def corrupt(C: CompAlg) -> CompAlg:
    """Copy of ``C`` with one structure constant of the product negated (a negative control)."""
    mul = [(i, j, k, c) for (i, j), l in C.mul_table.items() for k, c in l]
    # rank one has only the unit product to spoil
    pos = next((n for n, (i, j, _, _) in enumerate(mul) if i > 0 and j > 0), 0)
    i, j, k, c = mul[pos]
    mul[pos] = (i, j, k, -c)
    norm = [(i, j, c) for (i, j), c in C.norm_coeffs.items()]
    return CompAlg(C.ctx, C.labels, mul, norm, C.unit, C.kind + "-corrupt")
