"""Multivariate (optionally Laurent) polynomial rings over the scalar rings.

Two storage backends share one element interface:

* over ZZ, QQ and prime fields the heavy lifting is done by FLINT's sparse
  multivariate polynomials; Laurent indeterminates are handled by carrying a
  monomial denominator next to the FLINT polynomial;
* over every other base ring (GF(p^k) with k > 1, ZZ/n) a plain dictionary
  from exponent tuples to coefficients is used.

Both forms are canonical: equal values compare equal structurally.
"""

from __future__ import annotations

from fractions import Fraction

import flint

from .rings import QQ, ZZ, FiniteField, Ring, _Residue

_ORDER = "degrevlex"


class PolyRing(Ring):
    """R[x_1, ..., x_n] with some of the x_i invertible."""

    def __init__(self, base: Ring, names, laurent=()):
        names = tuple(names)
        laurent = set(laurent)
        if isinstance(base, PolyRing):
            laurent |= {n for n, flag in zip(base.names, base.laurent) if flag}
            names = base.names + names
            base = base.base
        if len(set(names)) != len(names):
            raise ValueError("indeterminate names must be distinct")
        unknown = laurent - set(names)
        if unknown:
            raise ValueError(f"unknown Laurent names {sorted(unknown)}")
        self.base = base
        self.names = names
        self.laurent = tuple(n in laurent for n in names)
        self.lpos = tuple(i for i, flag in enumerate(self.laurent) if flag)
        self.nvars = len(names)
        self.characteristic = base.characteristic
        self.is_field = False
        tag = ",".join(n + ("^±" if f else "") for n, f in zip(names, self.laurent))
        self.name = f"{base.name}[{tag}]"
        self._index = {n: i for i, n in enumerate(names)}
        self._ctx = None
        if self.nvars and base == ZZ:
            self._ctx = flint.fmpz_mpoly_ctx.get(names, _ORDER)
            self._coef_in = int
            self._coef_out = int
        elif self.nvars and base == QQ:
            self._ctx = flint.fmpq_mpoly_ctx.get(names, _ORDER)
            self._coef_in = lambda c: flint.fmpq(c.numerator, c.denominator) if isinstance(c, Fraction) else c
            self._coef_out = lambda c: Fraction(int(c.p), int(c.q))
        elif self.nvars and isinstance(base, FiniteField) and base.k == 1:
            self._ctx = flint.nmod_mpoly_ctx.get(names, modulus=base.p, ordering=_ORDER)
            self._coef_in = lambda c: c.v if isinstance(c, _Residue) else c
            self._coef_out = lambda c: base(int(c))
        self.backend = "flint" if self._ctx is not None else "dict"
        self._zd = (0,) * len(self.lpos)
        self._monos: dict = {}

    # construction --------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.base, self.names, self.laurent) == (
            other.base, other.names, other.laurent)

    def __hash__(self):
        return hash((self.base, self.names, self.laurent))

    def gens(self):
        return [self.gen(n) for n in self.names]

    def gen(self, name):
        i = self._index[name]
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self.from_terms({exps: self.base.one})

    def _mono(self, d):
        m = self._monos.get(d)
        if m is None:
            exps = [0] * self.nvars
            for p, e in zip(self.lpos, d):
                exps[p] = e
            m = self._ctx.term(exp_vec=tuple(exps))
            self._monos[d] = m
        return m

    def from_terms(self, terms: dict):
        """Build an element from ``{exponent tuple: coefficient}``."""
        if self.backend == "dict":
            out = {}
            for e, c in terms.items():
                c = self.base(c)
                if not self.base.is_zero(c):
                    out[tuple(e)] = c
            return DictPoly(self, out)
        d = [0] * len(self.lpos)
        for e in terms:
            for k, p in enumerate(self.lpos):
                d[k] = max(d[k], -e[p])
        shifted = {}
        for e, c in terms.items():
            c = self.base(c)
            if self.base.is_zero(c):
                continue
            e = list(e)
            for k, p in enumerate(self.lpos):
                e[p] += d[k]
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent on a non-Laurent indeterminate: {e}")
            shifted[tuple(e)] = self._coef_in(c)
        f = self._ctx.from_dict(shifted) if shifted else self._ctx.constant(0)
        return FlintPoly._normal(self, f, tuple(d))

    def __call__(self, value):
        if isinstance(value, (FlintPoly, DictPoly)):
            if value.R is self:
                return value
            if value.R == self:
                return value.R_rebind(self)
            return self._embed(value)
        value = self.base(value)
        if self.backend == "dict":
            return DictPoly(self, {} if self.base.is_zero(value) else {(0,) * self.nvars: value})
        return FlintPoly(self, self._ctx.constant(self._coef_in(value)), self._zd)

    def _embed(self, p):
        """Map an element of a polynomial ring on a subset of our names."""
        src = p.R
        if src.base != self.base:
            raise TypeError(f"cannot coerce from {src} into {self}")
        try:
            idx = [self._index[n] for n in src.names]
        except KeyError as exc:
            raise TypeError(f"indeterminate {exc} unknown to {self}") from None
        for n, flag in zip(src.names, src.laurent):
            if flag and not self.laurent[self._index[n]]:
                raise TypeError(f"{n} is Laurent in the source ring only")
        terms = {}
        for e, c in p.terms().items():
            new = [0] * self.nvars
            for j, x in zip(idx, e):
                new[j] = x
            terms[tuple(new)] = c
        return self.from_terms(terms)

    # ring interface --------------------------------------------------------
    def is_zero(self, a) -> bool:
        return self(a).is_zero()

    def is_unit(self, a) -> bool:
        terms = self(a).terms()
        if len(terms) != 1:
            return False
        (e, c), = terms.items()
        return self.base.is_unit(c) and all(x == 0 for x, flag in zip(e, self.laurent) if not flag)

    def inv(self, a):
        a = self(a)
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        (e, c), = a.terms().items()
        return self.from_terms({tuple(-x for x in e): self.base.inv(c)})

    def random(self, rng, bound: int = 3):
        return self(self.base.random(rng, bound))


class FlintPoly:
    """A FLINT polynomial ``f`` divided by a monomial in the Laurent names."""

    __slots__ = ("R", "f", "d")

    def __init__(self, R, f, d):
        self.R = R
        self.f = f
        self.d = d

    @staticmethod
    def _normal(R, f, d):
        if any(d):
            if f.is_zero():
                return FlintPoly(R, f, R._zd)
            content = f.term_content().monoms()[0]
            cut = tuple(min(content[p], x) for p, x in zip(R.lpos, d))
            if any(cut):
                f = f / R._mono(cut)
                d = tuple(x - c for x, c in zip(d, cut))
        return FlintPoly(R, f, d)

    def R_rebind(self, R):
        return FlintPoly(R, self.f, self.d)

    def _other(self, other):
        if isinstance(other, FlintPoly) and other.R is self.R:
            return other
        return self.R(other)

    def __add__(self, other):
        if isinstance(other, int) and not self.R.lpos:
            return FlintPoly(self.R, self.f + other, self.d)
        o = self._other(other)
        if self.d == o.d:
            if not any(self.d):
                return FlintPoly(self.R, self.f + o.f, self.d)
            return FlintPoly._normal(self.R, self.f + o.f, self.d)
        d = tuple(max(a, b) for a, b in zip(self.d, o.d))
        f = self.f * self.R._mono(tuple(x - a for x, a in zip(d, self.d))) + \
            o.f * self.R._mono(tuple(x - b for x, b in zip(d, o.d)))
        return FlintPoly._normal(self.R, f, d)

    __radd__ = __add__

    def __neg__(self):
        return FlintPoly(self.R, -self.f, self.d)

    def __sub__(self, other):
        if isinstance(other, int) and not self.R.lpos:
            return FlintPoly(self.R, self.f - other, self.d)
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return FlintPoly(self.R, self.f * 0, self.R._zd)
            return FlintPoly(self.R, self.f * other, self.d)
        o = self._other(other)
        if not any(self.d) and not any(o.d):
            return FlintPoly(self.R, self.f * o.f, self.d)
        return FlintPoly._normal(self.R, self.f * o.f, tuple(a + b for a, b in zip(self.d, o.d)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.R.inv(self) ** (-e)
        return FlintPoly._normal(self.R, self.f**e, tuple(x * e for x in self.d))

    def __truediv__(self, other):
        return self * self.R.inv(other)

    def divexact(self, c: int):
        """Exact division by an integer; raises if some coefficient is not divisible."""
        return FlintPoly(self.R, self.f / c, self.d)

    def is_zero(self):
        return self.f.is_zero()

    def __bool__(self):
        return not self.f.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, _Residue)) and not any(self.d):
            return self.f == self.R._coef_in(other) if not isinstance(other, int) else self.f == other
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return self.d == o.d and self.f == o.f

    def __hash__(self):
        return hash((str(self.f), self.d))

    def terms(self) -> dict:
        out = {}
        conv = self.R._coef_out
        for e, c in self.f.terms():
            if any(self.d):
                e = list(e)
                for p, x in zip(self.R.lpos, self.d):
                    e[p] -= x
                e = tuple(e)
            out[e] = conv(c)
        return out

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms()), default=-1)

    def is_constant(self):
        return not any(self.d) and self.f.is_constant()

    def constant_value(self):
        return self.terms().get((0,) * self.R.nvars, self.R.base.zero)

    def __repr__(self):
        if not any(self.d):
            return str(self.f)
        den = "*".join(f"{self.R.names[p]}^{x}" for p, x in zip(self.R.lpos, self.d) if x)
        return f"({self.f})/({den})"


class DictPoly:
    """Dictionary-backed polynomial for base rings FLINT does not cover."""

    __slots__ = ("R", "t")

    def __init__(self, R, t: dict):
        self.R = R
        self.t = t

    def R_rebind(self, R):
        return DictPoly(R, self.t)

    def _other(self, other):
        if isinstance(other, DictPoly) and other.R is self.R:
            return other
        return self.R(other)

    def __add__(self, other):
        o = self._other(other)
        out = dict(self.t)
        base = self.R.base
        for e, c in o.t.items():
            s = out.get(e)
            s = c if s is None else s + c
            if base.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return DictPoly(self.R, out)

    __radd__ = __add__

    def __neg__(self):
        return DictPoly(self.R, {e: -c for e, c in self.t.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        out: dict = {}
        for e1, c1 in self.t.items():
            for e2, c2 in o.t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        base = self.R.base
        return DictPoly(self.R, {e: c for e, c in out.items() if not base.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.R.inv(self) ** (-e)
        out, b = self.R.one, self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def __truediv__(self, other):
        return self * self.R.inv(other)

    def is_zero(self):
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def __eq__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return self.t == o.t

    def __hash__(self):
        return hash(tuple(sorted(self.t.items(), key=lambda kv: kv[0])))

    def terms(self) -> dict:
        return dict(self.t)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.t), default=-1)

    def is_constant(self):
        return all(not any(e) for e in self.t)

    def constant_value(self):
        return self.t.get((0,) * self.R.nvars, self.R.base.zero)

    def __repr__(self):
        if not self.t:
            return "0"
        parts = []
        for e, c in sorted(self.t.items(), reverse=True):
            mono = "*".join(f"{n}^{x}" if x != 1 else n for n, x in zip(self.R.names, e) if x)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


Poly = (FlintPoly, DictPoly)


def evaluate(p, values: dict, target: Ring):
    """Substitute ``{name: value}`` into ``p``; unnamed indeterminates must be absent."""
    R = p.R
    out = target.zero
    for e, c in p.terms().items():
        term = target(c)
        for name, x in zip(R.names, e):
            if x:
                v, x = values[name], int(x)
                term = term * (v**x if x > 0 else target.inv(v) ** (-x))
        out = out + term
    return out
