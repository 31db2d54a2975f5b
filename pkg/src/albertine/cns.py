"""Cubic norm structures and the quadratic Jordan algebras they define.

A ``CubicJordan`` is a free module with a base point, a quadratic adjoint
map x -> x# and a cubic norm N, each stored as a homogeneous ``PolyMap``.
The bilinear trace, the linear trace and the U-operator are derived from
these.  Every operation works on coordinate lists over the algebra's own
ring or any extension of it, which is how the identity suite below checks
polynomial identities at generic points.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from .exact import FiniteField, ModularRing, PolyRing, Ring, SquareFreeRing, TruncRing, extend
from .exact.rings import _Residue
from .report import Report, record_identity as _identity


class NotInvertible(ArithmeticError):
    pass


class PolyMap:
    """A homogeneous polynomial map ``ctx^dim -> ctx^codim`` of fixed degree.

    ``terms`` maps a sorted index tuple (the monomial) to a list of
    ``(output index, coefficient)`` pairs.
    """

    def __init__(self, ctx: Ring, dim: int, codim: int, degree: int, terms: dict):
        self.ctx, self.dim, self.codim, self.degree = ctx, dim, codim, degree
        clean = {}
        for mono, lst in terms.items():
            mono = tuple(sorted(mono))
            if len(mono) != degree:
                raise ValueError(f"monomial {mono} is not of degree {degree}")
            acc: dict = {}
            for k, c in lst:
                acc[k] = acc.get(k, ctx.zero) + ctx(c)
            acc = [(k, c) for k, c in sorted(acc.items()) if not ctx.is_zero(c)]
            if acc:
                clean.setdefault(mono, [])
                clean[mono] = _merge(clean[mono] + acc, ctx)
        self.terms = clean
        self._cache: dict = {}

    @classmethod
    def from_function(cls, ctx: Ring, dim: int, codim: int, degree: int, fn, prefix: str = "z"):
        """Read off the coefficients of ``fn`` evaluated at a generic point."""
        G = extend(ctx, prefix, dim)
        z = [G.gen(n) for n in G.names[-dim:]]
        values = fn(z, G)
        if codim == 1 and not isinstance(values, (list, tuple)):
            values = [values]
        nbase = G.nvars - dim
        terms: dict = {}
        for k, v in enumerate(values):
            v = G(v)
            grouped: dict = {}
            for e, c in v.terms().items():
                ze = e[nbase:]
                if sum(ze) != degree:
                    raise ValueError(f"output {k} is not homogeneous of degree {degree}")
                grouped.setdefault(ze, {})[e[:nbase]] = c
            for ze, parts in grouped.items():
                if nbase:
                    coeff = ctx.from_terms(parts)
                else:
                    coeff = parts[()]
                mono = tuple(i for i, x in enumerate(ze) for _ in range(x))
                terms.setdefault(mono, []).append((k, coeff))
        return cls(ctx, dim, codim, degree, terms)

    def _coerced(self, R: Ring):
        if R is self.ctx:
            R = self.ctx
        hit = self._cache.get(R)
        if hit is None:
            hit = []
            for mono, lst in self.terms.items():
                hit.append((mono, [(k, _coerce(R, c)) for k, c in lst]))
            self._cache[R] = hit
        return hit

    def __call__(self, x, R: Ring | None = None):
        R = R or self.ctx
        acc = [_Sum() for _ in range(self.codim)]
        pairs: dict = {}
        for mono, lst in self._coerced(R):
            p = _monomial(x, mono, pairs)
            if p is None:
                continue
            for k, c in lst:
                acc[k].add(c, p)
        out = [a.total(R) for a in acc]
        return out[0] if self.codim == 1 else out

    def polar(self, x, y, R: Ring | None = None):
        """Bilinear polarization f(x + y) - f(x) - f(y) of a quadratic map."""
        if self.degree != 2:
            raise ValueError("polarization is implemented for quadratic maps")
        R = R or self.ctx
        acc = [_Sum() for _ in range(self.codim)]
        for (i, j), lst in self._coerced(R):
            if i == j:
                if x[i] == 0 or y[i] == 0:
                    continue
                p = 2 * (x[i] * y[i])
            else:
                a = None if (x[i] == 0 or y[j] == 0) else x[i] * y[j]
                b = None if (x[j] == 0 or y[i] == 0) else x[j] * y[i]
                if a is None and b is None:
                    continue
                p = a if b is None else b if a is None else a + b
            for k, c in lst:
                acc[k].add(c, p)
        out = [a.total(R) for a in acc]
        return out[0] if self.codim == 1 else out

    def compose_linear(self, M, R: Ring | None = None) -> "PolyMap":
        """The map x -> M f(x) for a codim x codim matrix M over ``ctx``."""
        ctx = self.ctx
        terms = {}
        for mono, lst in self.terms.items():
            acc: dict = {}
            for k, c in lst:
                for r in range(len(M)):
                    m = M[r][k]
                    if not ctx.is_zero(m):
                        acc[r] = acc.get(r, ctx.zero) + m * c
            terms[mono] = list(acc.items())
        return PolyMap(ctx, self.dim, len(M), self.degree, terms)

    def scaled(self, s) -> "PolyMap":
        s = self.ctx(s)
        return PolyMap(self.ctx, self.dim, self.codim, self.degree,
                       {m: [(k, s * c) for k, c in lst] for m, lst in self.terms.items()})

    def triples(self) -> list:
        """Flat coefficient list ``[[out, i, j, (k,) coeff], ...]`` for serialization."""
        return [[k, *mono, c] for mono, lst in sorted(self.terms.items()) for k, c in lst]

    def __eq__(self, other):
        return (isinstance(other, PolyMap) and (self.dim, self.codim, self.degree) ==
                (other.dim, other.codim, other.degree) and self.terms == other.terms)

    def __repr__(self):
        return f"PolyMap(dim={self.dim}, codim={self.codim}, degree={self.degree}, {len(self.terms)} monomials)"


def _merge(lst, ctx):
    acc: dict = {}
    for k, c in lst:
        acc[k] = acc.get(k, ctx.zero) + c
    return [(k, c) for k, c in sorted(acc.items()) if not ctx.is_zero(c)]


def _coerce(R, c):
    # integer coefficients stay Python ints: cheaper to multiply and +-1 can be skipped
    if isinstance(c, Fraction) and c.denominator == 1:
        c = int(c)
    return c if type(c) is int else R(c)


def _acc(total, c, p):
    if type(c) is int:
        if c == 1:
            return total + p
        if c == -1:
            return total - p
    return total + c * p


class _Sum:
    """Deferred sum of signed terms, added pairwise so large polynomials are copied O(log n) times."""

    __slots__ = ("pos", "neg")

    def __init__(self):
        self.pos, self.neg = [], []

    def add(self, c, p):
        if type(c) is int:
            if c == 1:
                self.pos.append(p)
                return
            if c == -1:
                self.neg.append(p)
                return
        self.pos.append(c * p)

    def total(self, R):
        a, b = _tree_sum(self.pos), _tree_sum(self.neg)
        if a is None:
            return R.zero if b is None else -b
        return a if b is None else a - b


def _tree_sum(items):
    if not items:
        return None
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def _monomial(x, mono, pairs):
    if len(mono) == 2:
        i, j = mono
        if x[i] == 0 or x[j] == 0:
            return None
        return x[i] * x[j]
    if len(mono) == 3:
        i, j, k = mono
        if x[i] == 0 or x[j] == 0 or x[k] == 0:
            return None
        p = pairs.get((i, j))
        if p is None:
            p = x[i] * x[j]
            pairs[(i, j)] = p
        return p * x[k]
    p = None
    for i in mono:
        if x[i] == 0:
            return None
        p = x[i] if p is None else p * x[i]
    return p


def directional_derivative(f, n: int, v, x, R: Ring):
    """Coefficient of t^n in ``f(x + t v)``; ``f`` takes ``(coords, ring)``."""
    T = TruncRing(R, n)
    t = T.t()
    pt = [T(a) + t * T(b) if n else T(a) for a, b in zip(x, v)]
    val = f(pt, T)
    if isinstance(val, list):
        return [c.coeff(n) for c in val]
    return val.coeff(n)


class CubicJordan:
    """Cubic norm structure (M, 1, #, N) on a free module of rank ``dim``."""

    def __init__(self, ctx: Ring, base_point, adjoint: PolyMap, norm: PolyMap, labels=None, name: str = ""):
        self.ctx = ctx
        self.dim = adjoint.dim
        self.base_point = [ctx(c) for c in base_point]
        if len(self.base_point) != self.dim or norm.dim != self.dim or adjoint.codim != self.dim:
            raise ValueError("inconsistent dimensions")
        if adjoint.degree != 2 or norm.degree != 3 or norm.codim != 1:
            raise ValueError("adjoint must be quadratic and the norm a cubic form")
        self.adjoint = adjoint
        self.norm_map = norm
        self.labels = list(labels) if labels else [f"b{i}" for i in range(self.dim)]
        self.name = name or f"J{self.dim}"
        self.T = self._bilinear_trace()
        self.tr_vec = [sum((self.T[a][b] * self.base_point[b] for b in range(self.dim)), ctx.zero)
                       for a in range(self.dim)]
        self._Tsparse: dict = {}
        self._tr_sparse: dict = {}

    # derived forms --------------------------------------------------------------
    def _bilinear_trace(self):
        ctx, d = self.ctx, self.dim
        S2 = SquareFreeRing(ctx, 2)
        s, t = S2.t(0), S2.t(1)
        one = self.base_point
        first = []
        for a in range(d):
            pt = [S2(c) for c in one]
            pt[a] = pt[a] + s
            first.append(self.norm_map(pt, S2).coeff(1))
        T = [[ctx.zero] * d for _ in range(d)]
        for a in range(d):
            for b in range(a, d):
                pt = [S2(c) for c in one]
                pt[a] = pt[a] + s
                pt[b] = pt[b] + t
                mixed = self.norm_map(pt, S2).coeff(3)
                T[a][b] = T[b][a] = first[a] * first[b] - mixed
        return T

    def _T_entries(self, R):
        hit = self._Tsparse.get(R)
        if hit is None:
            hit = [(a, b, _coerce(R, self.T[a][b])) for a in range(self.dim) for b in range(self.dim)
                   if not self.ctx.is_zero(self.T[a][b])]
            self._Tsparse[R] = hit
        return hit

    def _tr_entries(self, R):
        hit = self._tr_sparse.get(R)
        if hit is None:
            hit = [(a, _coerce(R, c)) for a, c in enumerate(self.tr_vec) if not self.ctx.is_zero(c)]
            self._tr_sparse[R] = hit
        return hit

    # operations on coordinate lists -----------------------------------------------
    def one(self, R: Ring | None = None):
        R = R or self.ctx
        return [R(c) for c in self.base_point]

    def basis(self, i: int, R: Ring | None = None):
        R = R or self.ctx
        return [R.one if k == i else R.zero for k in range(self.dim)]

    def sharp(self, x, R: Ring | None = None):
        return self.adjoint(x, R or self.ctx)

    def cross(self, x, y, R: Ring | None = None):
        return self.adjoint.polar(x, y, R or self.ctx)

    def norm(self, x, R: Ring | None = None):
        return self.norm_map(x, R or self.ctx)

    def trace_form(self, x, y, R: Ring | None = None):
        R = R or self.ctx
        out = R.zero
        for a, b, c in self._T_entries(R):
            if x[a] == 0 or y[b] == 0:
                continue
            out = _acc(out, c, x[a] * y[b])
        return out

    def trace(self, x, R: Ring | None = None):
        R = R or self.ctx
        out = R.zero
        for a, c in self._tr_entries(R):
            if x[a] != 0:
                out = _acc(out, c, x[a])
        return out

    def quad_trace(self, x, R: Ring | None = None):
        return self.trace(self.sharp(x, R), R)

    def U(self, x, y, R: Ring | None = None):
        R = R or self.ctx
        t = self.trace_form(x, y, R)
        c = self.cross(self.sharp(x, R), y, R)
        return [t * a - b for a, b in zip(x, c)]

    def brace(self, x, y, z, R: Ring | None = None):
        R = R or self.ctx
        txy, tzy = self.trace_form(x, y, R), self.trace_form(z, y, R)
        c = self.cross(self.cross(x, z, R), y, R)
        return [txy * a + tzy * b - e for a, b, e in zip(z, x, c)]

    def square(self, x, R: Ring | None = None):
        return self.U(x, self.one(R), R)

    def power(self, x, n: int, R: Ring | None = None):
        R = R or self.ctx
        if n < 0:
            return self.power(self.inverse(x, R), -n, R)
        if n == 0:
            return self.one(R)
        if n == 1:
            return list(x)
        return self.U(x, self.power(x, n - 2, R), R)

    def inverse(self, x, R: Ring | None = None):
        R = R or self.ctx
        nx = self.norm(x, R)
        if not R.is_unit(nx):
            raise NotInvertible(f"N(x) = {nx} is not a unit")
        inv = R.inv(nx)
        return [inv * a for a in self.sharp(x, R)]

    def min_poly_eval(self, x, t0, R: Ring | None = None):
        R = R or self.ctx
        return t0**3 - self.trace(x, R) * t0**2 + self.quad_trace(x, R) * t0 - self.norm(x, R)

    def U_matrix(self, x, R: Ring | None = None):
        """Matrix of U_x: column b holds U_x e_b."""
        R = R or self.ctx
        cols = [self.U(x, self.basis(b, R), R) for b in range(self.dim)]
        return [[cols[b][a] for b in range(self.dim)] for a in range(self.dim)]

    def elem(self, coords) -> "JElem":
        return JElem(self, [self.ctx(c) for c in coords])

    def base_change(self, R: Ring) -> "CubicJordan":
        adj = PolyMap(R, self.dim, self.dim, 2, {m: [(k, R(c)) for k, c in l] for m, l in self.adjoint.terms.items()})
        nm = PolyMap(R, self.dim, 1, 3, {m: [(k, R(c)) for k, c in l] for m, l in self.norm_map.terms.items()})
        J = CubicJordan(R, [R(c) for c in self.base_point], adj, nm, self.labels, self.name)
        for attr in ("layout",):
            if hasattr(self, attr):
                setattr(J, attr, getattr(self, attr))
        return J

    # serialization ----------------------------------------------------------------
    def to_json(self) -> str:
        def enc(c):
            if isinstance(c, Fraction):
                return str(c) if c.denominator != 1 else c.numerator
            return c if isinstance(c, int) else str(c)

        return json.dumps({
            "dim": self.dim,
            "base_point": [enc(c) for c in self.base_point],
            "adjoint": [[*row[:-1], enc(row[-1])] for row in self.adjoint.triples()],
            "norm": [[*row[1:-1], enc(row[-1])] for row in self.norm_map.triples()],
        })

    @classmethod
    def from_json(cls, text: str, ctx: Ring) -> "CubicJordan":
        data = json.loads(text)
        d = data["dim"]

        def dec(c):
            return ctx(Fraction(c)) if isinstance(c, str) else ctx(c)

        adj: dict = {}
        for k, i, j, c in data["adjoint"]:
            adj.setdefault((i, j), []).append((k, dec(c)))
        nm: dict = {}
        for i, j, k, c in data["norm"]:
            nm.setdefault((i, j, k), []).append((0, dec(c)))
        return cls(ctx, [dec(c) for c in data["base_point"]], PolyMap(ctx, d, d, 2, adj), PolyMap(ctx, d, 1, 3, nm))

    def __repr__(self):
        return f"CubicJordan({self.name}, dim={self.dim}, over {self.ctx})"


class JElem:
    """Element of a cubic Jordan algebra with method syntax."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg: CubicJordan, coords):
        if len(coords) != alg.dim:
            raise ValueError("coordinate vector has the wrong length")
        self.alg = alg
        self.coords = list(coords)

    def _wrap(self, v):
        return JElem(self.alg, v)

    def __add__(self, o):
        return self._wrap([a + b for a, b in zip(self.coords, o.coords)])

    def __sub__(self, o):
        return self._wrap([a - b for a, b in zip(self.coords, o.coords)])

    def __neg__(self):
        return self._wrap([-a for a in self.coords])

    def __rmul__(self, s):
        s = self.alg.ctx(s)
        return self._wrap([s * a for a in self.coords])

    def __eq__(self, o):
        return isinstance(o, JElem) and o.alg is self.alg and o.coords == self.coords

    def sharp(self):
        return self._wrap(self.alg.sharp(self.coords))

    def norm(self):
        return self.alg.norm(self.coords)

    def trace(self):
        return self.alg.trace(self.coords)

    def quad_trace(self):
        return self.alg.quad_trace(self.coords)

    def U(self, y):
        return self._wrap(self.alg.U(self.coords, y.coords))

    def brace(self, y, z):
        return self._wrap(self.alg.brace(self.coords, y.coords, z.coords))

    def power(self, n: int):
        return self._wrap(self.alg.power(self.coords, n))

    def inverse(self):
        return self._wrap(self.alg.inverse(self.coords))

    def min_poly_eval(self, t0):
        return self.alg.min_poly_eval(self.coords, self.alg.ctx(t0))

    def __repr__(self):
        terms = [f"{c}*{lab}" for c, lab in zip(self.coords, self.alg.labels) if c != 0]
        return " + ".join(terms) or "0"


class SpecialJordan:
    """A^+ for an associative algebra A given by structure constants: U_x y = x y x."""

    def __init__(self, ctx: Ring, dim: int, mul, unit, labels=None):
        self.ctx, self.dim = ctx, dim
        self.table: dict = {}
        for i, j, k, c in mul:
            self.table.setdefault((i, j), []).append((k, ctx(c)))
        self.unit = [ctx(c) for c in unit]
        self.labels = labels or [f"b{i}" for i in range(dim)]

    def mul(self, x, y, R=None):
        R = R or self.ctx
        out = [R.zero] * self.dim
        for (i, j), lst in self.table.items():
            if x[i] == 0 or y[j] == 0:
                continue
            p = x[i] * y[j]
            for k, c in lst:
                out[k] = out[k] + c * p
        return out

    def one(self, R=None):
        R = R or self.ctx
        return [R(c) for c in self.unit]

    def U(self, x, y, R=None):
        return self.mul(self.mul(x, y, R), x, R)

    def brace(self, x, y, z, R=None):
        a = self.mul(self.mul(x, y, R), z, R)
        b = self.mul(self.mul(z, y, R), x, R)
        return [p + q for p, q in zip(a, b)]


def matrix_algebra(ctx: Ring, n: int) -> SpecialJordan:
    """Mat_n(ctx)^+ in the basis E_11, E_12, ..., E_nn (row major)."""
    mul = []
    for a in range(n):
        for b in range(n):
            for d in range(n):
                mul.append((a * n + b, b * n + d, a * n + d, 1))
    unit = [int(i == j) for i in range(n) for j in range(n)]
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return SpecialJordan(ctx, n * n, mul, unit, labels)


# --- identity suite --------------------------------------------------------------

LEVELS = ("axioms", "jordan", "degree3")


def generic_ring(J: CubicJordan, *prefixes: str) -> tuple[PolyRing, list]:
    """A polynomial ring over J's scalars with one fresh indeterminate per coordinate per prefix."""
    G = J.ctx
    for p in prefixes:
        G = extend(G, p, J.dim)
    names = G.names[len(G.names) - len(prefixes) * J.dim:]
    pts = [[G.gen(n) for n in names[k * J.dim:(k + 1) * J.dim]] for k in range(len(prefixes))]
    return G, pts


def _is_zero_vec(v):
    return all(c == 0 for c in v)


def _swept(rep, name, ref, G, J, pair):
    """An identity linear in a basis vector e_k: ``pair(e)`` gives (lhs, rhs); stop at the first k that fails."""
    for k in range(J.dim):
        lhs, rhs = pair(J.basis(k, G))
        if lhs != rhs:
            return _identity(rep, name, ref, G, lhs, rhs, basis_index=k)
    rep.add(name, ref, True)
    return True


def verify(J: CubicJordan, levels=LEVELS) -> Report:
    """Check the cubic-norm-structure and Jordan identities of ``J`` at generic points.

    Arguments that enter an identity linearly are swept over basis vectors, which
    is equivalent to leaving them generic.  A failed check carries a
    counterexample: integer values of the generic coordinates (and the basis
    index, for swept arguments) at which the two sides differ.
    """
    if isinstance(levels, str):
        levels = (levels,)
    for lv in levels:
        if lv not in LEVELS:
            raise ValueError(f"unknown level {lv!r}")
    rep = Report(command=f"verify {J.name}")
    if "axioms" in levels:
        _axioms(J, rep)
    if "jordan" in levels:
        _jordan(J, rep)
    if "degree3" in levels:
        _degree3(J, rep)
    return rep.finish()


def _axioms(J, rep):
    ctx = J.ctx
    one = J.one()
    _identity(rep, "unit_sharp", "1# = 1", ctx, J.sharp(one), one)
    _identity(rep, "unit_norm", "N(1) = 1", ctx, J.norm(one), ctx.one)
    G, (x,) = generic_ring(J, "x")
    oneG = J.one(G)

    def unit_cross(e):
        tr = J.trace(e, G)
        return J.cross(oneG, e, G), [tr * b - c for b, c in zip(oneG, e)]

    _swept(rep, "unit_cross", "1 x y = Tr(y) 1 - y", G, J, unit_cross)
    xs = J.sharp(x, G)

    def gradient(e):
        d = directional_derivative(lambda p, R: J.norm(p, R), 1, e, x, G)
        return d, J.trace_form(xs, e, G)

    _swept(rep, "norm_gradient", "D_y N(x) = T(x#, y)", G, J, gradient)
    nx = J.norm(x, G)
    _identity(rep, "adjoint_identity", "x## = N(x) x", G, J.sharp(xs, G), [nx * a for a in x])
    asym = [(a, b) for a in range(J.dim) for b in range(a + 1, J.dim) if J.T[a][b] != J.T[b][a]]
    rep.add("trace_symmetric", "T symmetric", not asym,
            counterexample={"entry": list(asym[0])} if asym else None)


def _jordan(J, rep):
    G, (x, y) = generic_ring(J, "x", "y")
    uxy = J.U(x, y, G)
    _swept(rep, "fundamental_formula", "U_{U_x y} = U_x U_y U_x", G, J,
           lambda z: (J.U(uxy, z, G), J.U(x, J.U(y, J.U(x, z, G), G), G)))
    _swept(rep, "commuting_formula", "U_x {y x z} = {U_x y, z, x}", G, J,
           lambda z: (J.U(x, J.brace(y, x, z, G), G), J.brace(uxy, z, x, G)))


def _degree3(J, rep):
    G, (x, y) = generic_ring(J, "x", "y")
    uxy = J.U(x, y, G)
    xs, ys = J.sharp(x, G), J.sharp(y, G)
    _identity(rep, "sharp_of_U", "(U_x y)# = U_{x#} y#", G, J.sharp(uxy, G), J.U(xs, ys, G))
    nx, ny = J.norm(x, G), J.norm(y, G)
    _identity(rep, "norm_of_U", "N(U_x y) = N(x)^2 N(y)", G, J.norm(uxy, G), nx * nx * ny)
    del uxy, ys
    _identity(rep, "U_of_adjoint", "U_x x# = N(x) x", G, J.U(x, xs, G), [nx * a for a in x])
    xs2 = J.square(xs, G)
    _identity(rep, "U_of_adjoint_square", "U_x (x#)^2 = N(x)^2 1", G, J.U(x, xs2, G),
              [nx * nx * c for c in J.one(G)])
    del xs2
    one = J.one(G)
    x2 = J.square(x, G)
    tr, sx = J.trace(x, G), J.quad_trace(x, G)
    _identity(rep, "adjoint_from_square", "x# = x^2 - Tr(x) x + S(x) 1", G, xs,
              [a - tr * b + sx * c for a, b, c in zip(x2, x, one)])
    x3 = J.U(x, x, G)
    x4 = J.U(x, x2, G)
    zero = [G.zero] * J.dim
    _identity(rep, "cubic_equation", "x^3 - Tr x^2 + S x - N 1 = 0", G,
              [a - tr * b + sx * c - nx * d for a, b, c, d in zip(x3, x2, x, one)], zero)
    _identity(rep, "cubic_equation_shifted", "x^4 - Tr x^3 + S x^2 - N x = 0", G,
              [a - tr * b + sx * c - nx * d for a, b, c, d in zip(x4, x3, x2, x)], zero)
    _identity(rep, "trace_square", "T(x, x) = Tr(x)^2 - 2 S(x)", G, J.trace_form(x, x, G), tr * tr - 2 * sx)


def corrupt_adjoint(J: CubicJordan) -> CubicJordan:
    """Copy of ``J`` with one adjoint coefficient negated (a negative control)."""
    terms = {m: list(l) for m, l in J.adjoint.terms.items()}
    mono = sorted(terms)[len(terms) // 2]
    k, c = terms[mono][0]
    terms[mono][0] = (k, -c)
    adj = PolyMap(J.ctx, J.dim, J.dim, 2, terms)
    return CubicJordan(J.ctx, J.base_point, adj, J.norm_map, J.labels, J.name + "-corrupt")


def homogeneity_holds(f: PolyMap) -> bool:
    """f(s x) = s^deg f(x) at a generic point and generic scalar s."""
    G = extend(extend(f.ctx, "h", f.dim), "s", 1)
    x = [G.gen(n) for n in G.names[-f.dim - 1:-1]]
    s = G.gen(G.names[-1])
    lhs = f([s * a for a in x], G)
    rhs = f(x, G)
    if f.codim == 1:
        return lhs == s**f.degree * rhs
    return lhs == [s**f.degree * r for r in rhs]


def all_monomials(dim: int, degree: int):
    return combinations_with_replacement(range(dim), degree)


# --- structure tensors ---------------------------------------------------------------

def structure_tensors(J):
    """Exact arrays U[a, c] = U_{e_a} e_c and B[a, b, c] = {e_a e_b e_c}, last axis the output.

    Cubic structures are expanded once at a generic point; other algebras are
    evaluated on basis vectors.  The result is cached on ``J``.
    """
    hit = getattr(J, "_structure", None)
    if hit is not None:
        return hit
    d = J.dim
    U = np.zeros((d, d, d), dtype=object)
    B = np.zeros((d, d, d, d), dtype=object)
    if isinstance(J, CubicJordan):
        G, (x, y, z) = generic_ring(J, "x", "y", "z")
        off = G.nvars - 3 * d
        for out, p in enumerate(J.brace(x, y, z, G)):
            for e, c in p.terms().items():
                e = e[off:]
                a = next(i for i in range(d) if e[i])
                b = next(i for i in range(d) if e[d + i])
                cc = next(i for i in range(d) if e[2 * d + i])
                B[a, b, cc, out] = c
        for out, p in enumerate(J.U(x, z, G)):
            for e, c in p.terms().items():
                e = e[off:]
                xs = [i for i in range(d) if e[i]]
                if len(xs) == 1 and e[xs[0]] == 2:
                    cc = next(i for i in range(d) if e[2 * d + i])
                    U[xs[0], cc, out] = c
    else:
        R = J.ctx
        basis = [[R.one if k == i else R.zero for k in range(d)] for i in range(d)]
        for a in range(d):
            for c in range(d):
                U[a, c] = J.U(basis[a], basis[c])
                for b in range(d):
                    B[a, b, c] = J.brace(basis[a], basis[b], basis[c])
    J._structure = (U, B)
    return U, B


def modulus_of(ctx: Ring):
    """n for ZZ/n or a prime field, else None."""
    if isinstance(ctx, ModularRing):
        return ctx.n
    if isinstance(ctx, FiniteField) and ctx.k == 1:
        return ctx.p
    return None


def as_int(c, n: int | None = None) -> int:
    """An integer representative of a scalar (reduced mod n when given)."""
    if isinstance(c, _Residue):
        v = c.v
    elif isinstance(c, Fraction):
        if n is None:
            if c.denominator != 1:
                raise ValueError(f"{c} is not integral")
            v = c.numerator
        else:
            v = c.numerator * pow(c.denominator, -1, n)
    else:
        v = int(c)
    return v % n if n else v


def tensors_mod(J, n: int):
    """The structure tensors reduced to int64 arrays mod n (cached per n)."""
    cache = J.__dict__.setdefault("_structure_mod", {})
    if n not in cache:
        U, B = structure_tensors(J)
        conv = np.vectorize(lambda c: as_int(c, n), otypes=[np.int64])
        cache[n] = (conv(U), conv(B))
    return cache[n]
