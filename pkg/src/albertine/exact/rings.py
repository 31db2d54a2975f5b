"""Scalar rings used as coordinate domains.

Every ring object is a small immutable context exposing ``zero``, ``one``,
coercion via ``R(value)`` and a few predicates (``is_zero``, ``is_unit``,
``inv``).  Elements are plain Python numbers where that is enough (``int`` for
the integers, ``Fraction`` for the rationals) and small value classes
otherwise.  Algebra code only ever touches elements through ``+ - *`` and the
ring context, so the same routine runs over any of these rings.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterator


class Ring:
    """Common interface for coordinate rings."""

    name = "ring"
    is_field = False
    characteristic = 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return a * self.inv(b)

    def elements(self) -> Iterator:
        raise TypeError(f"{self.name} is not finite")

    def random(self, rng, bound: int = 5):
        return self(rng.randint(-bound, bound))

    def __repr__(self) -> str:
        return self.name


class IntegerRing(Ring):
    name = "ZZ"

    def __call__(self, value):
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        raise TypeError(f"cannot coerce {value!r} into ZZ")

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def inv(self, a):
        if a not in (1, -1):
            raise ZeroDivisionError(f"{a} is not a unit in ZZ")
        return a

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")


class RationalField(Ring):
    name = "QQ"
    is_field = True

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into QQ")

    def is_unit(self, a) -> bool:
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / Fraction(a)

    def random(self, rng, bound: int = 5):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


ZZ = IntegerRing()
QQ = RationalField()


class _Residue:
    """Element of a finite ring given by an integer code."""

    __slots__ = ("R", "v")

    def __init__(self, R, v: int):
        self.R = R
        self.v = v

    def _lift(self, other):
        if isinstance(other, _Residue):
            if other.R is not self.R and other.R != self.R:
                raise TypeError(f"mixing {self.R} and {other.R}")
            return other.v
        if isinstance(other, int):
            return self.R(other).v
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.R._make(self.R._add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.R._make(self.R._add(self.v, self.R._neg(o)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.R._make(self.R._add(o, self.R._neg(self.v)))

    def __neg__(self):
        return self.R._make(self.R._neg(self.v))

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.R._make(self.R._mul(self.v, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.R.inv(self) ** (-e)
        out, base = self.R.one, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        return self * self.R.inv(self.R(other) if not isinstance(other, _Residue) else other)

    def __eq__(self, other):
        if isinstance(other, _Residue):
            return self.R == other.R and self.v == other.v
        if isinstance(other, int):
            return self.v == self.R(other).v
        return NotImplemented

    def __hash__(self):
        return hash((self.R.name, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return self.R._show(self.v)


class ModularRing(Ring):
    """The residue ring ZZ/n."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("modulus must be at least 2")
        self.n = n
        self.characteristic = n
        self.name = f"ZZ/{n}"
        self.is_field = _is_prime(n)

    def _make(self, v):
        return _Residue(self, v)

    def _add(self, a, b):
        return (a + b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _show(self, v):
        return f"{v} mod {self.n}"

    def __call__(self, value):
        if isinstance(value, _Residue):
            if value.R == self:
                return value
            raise TypeError(f"cannot coerce {value!r} into {self.name}")
        if isinstance(value, Fraction):
            return self(value.numerator) * self.inv(self(value.denominator))
        return _Residue(self, int(value) % self.n)

    def is_unit(self, a) -> bool:
        return gcd(self(a).v, self.n) == 1

    def inv(self, a):
        a = self(a)
        if gcd(a.v, self.n) != 1:
            raise ZeroDivisionError(f"{a} is not a unit")
        return _Residue(self, pow(a.v, -1, self.n))

    def elements(self):
        return (_Residue(self, v) for v in range(self.n))

    def random(self, rng, bound: int = 0):
        return _Residue(self, rng.randrange(self.n))

    def __eq__(self, other):
        return isinstance(other, ModularRing) and other.n == self.n

    def __hash__(self):
        return hash(("mod", self.n))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_has_root(coeffs, p) -> bool:
    return any(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """Irreducibility over GF(p) of a monic polynomial (low-to-high coefficients)."""
    k = len(coeffs) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    # exhaustive trial division by monic polynomials of degree <= k/2
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(coeffs), list(tail) + [1], p):
                return False
    return True


class FiniteField(Ring):
    """GF(p^k) presented as GF(p)[w]/(modulus).

    Elements are encoded as integers ``sum(c_i * p**i)``; multiplication goes
    through precomputed tables, which is fine for the small fields in use.
    """

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = _first_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.k, self.modulus = p, k, modulus
        self.order = p**k
        self.characteristic = p
        self.is_field = True
        self.name = f"GF({p})" if k == 1 else f"GF({p}^{k})"
        if k > 1:
            self._build_tables()

    def _digits(self, v):
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return out

    def _encode(self, digits):
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _build_tables(self):
        q = self.order
        self._addt = [[self._encode([(a + b) % self.p for a, b in zip(self._digits(x), self._digits(y))])
                       for y in range(q)] for x in range(q)]
        self._negt = [self._encode([(-a) % self.p for a in self._digits(x)]) for x in range(q)]
        self._mult = [[0] * q for _ in range(q)]
        for x in range(q):
            dx = self._digits(x)
            for y in range(q):
                dy = self._digits(y)
                prod = [0] * (2 * self.k - 1)
                for i, a in enumerate(dx):
                    for j, b in enumerate(dy):
                        prod[i + j] += a * b
                prod = [c % self.p for c in prod]
                r = _poly_mod(prod, list(self.modulus), self.p)
                self._mult[x][y] = self._encode(r + [0] * (self.k - len(r)))
        self._invt = [0] * q
        for x in range(1, q):
            self._invt[x] = next(y for y in range(1, q) if self._mult[x][y] == 1)

    def _make(self, v):
        return _Residue(self, v)

    def _add(self, a, b):
        return (a + b) % self.p if self.k == 1 else self._addt[a][b]

    def _neg(self, a):
        return (-a) % self.p if self.k == 1 else self._negt[a]

    def _mul(self, a, b):
        return (a * b) % self.p if self.k == 1 else self._mult[a][b]

    def _show(self, v):
        if self.k == 1:
            return f"{v} in {self.name}"
        terms = [f"{c}*w^{i}" if i else str(c) for i, c in enumerate(self._digits(v)) if c]
        return "(" + (" + ".join(terms) or "0") + f") in {self.name}"

    def __call__(self, value):
        if isinstance(value, _Residue):
            if value.R == self:
                return value
            raise TypeError(f"cannot coerce {value!r} into {self.name}")
        if isinstance(value, Fraction):
            return self(value.numerator) * self.inv(self(value.denominator))
        return _Residue(self, int(value) % self.p)

    def gen(self):
        """The class of w (or 1 in a prime field)."""
        return _Residue(self, self.p if self.k > 1 else 1)

    def from_digits(self, digits):
        return _Residue(self, self._encode([int(c) % self.p for c in digits]))

    def is_unit(self, a) -> bool:
        return self(a).v != 0

    def inv(self, a):
        a = self(a)
        if a.v == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        if self.k == 1:
            return _Residue(self, pow(a.v, -1, self.p))
        return _Residue(self, self._invt[a.v])

    def elements(self):
        return (_Residue(self, v) for v in range(self.order))

    def random(self, rng, bound: int = 0):
        return _Residue(self, rng.randrange(self.order))

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (other.p, other.k, other.modulus) == (self.p, self.k, self.modulus)

    def __hash__(self):
        return hash(("gf", self.p, self.k, self.modulus))


def _first_irreducible(p: int, k: int) -> tuple[int, ...]:
    for tail in itertools.product(range(p), repeat=k):
        coeffs = list(tail) + [1]
        if coeffs[0] and is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ValueError("no irreducible polynomial found")


_FIELDS: dict = {}


def GF(p: int, k: int = 1, modulus=None) -> FiniteField:
    key = (p, k, tuple(modulus) if modulus else None)
    if key not in _FIELDS:
        _FIELDS[key] = FiniteField(p, k, modulus)
    return _FIELDS[key]


def Modular(n: int) -> ModularRing:
    key = ("mod", n)
    if key not in _FIELDS:
        _FIELDS[key] = ModularRing(n)
    return _FIELDS[key]


GF8 = GF(2, 3, (1, 1, 0, 1))
