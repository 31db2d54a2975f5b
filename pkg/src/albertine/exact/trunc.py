"""Truncated polynomial extensions used to read off derivative coefficients.

``TruncRing(R, n)`` is R[t]/(t^{n+1}); evaluating a polynomial law at
``x + t*v`` there and reading the t^k coefficient gives its k-th directional
derivative.  ``SquareFreeRing(R, k)`` is R[t_1..t_k]/(t_i^2); the coefficient of
t_1...t_k of ``f(sum t_i v_i)`` is the full polarization of a degree-k form.
"""

from __future__ import annotations

from .rings import Ring


class TruncRing(Ring):
    def __init__(self, base: Ring, n: int):
        self.base = base
        self.n = n
        self.characteristic = base.characteristic
        self.name = f"{base.name}[t]/(t^{n + 1})"

    def __call__(self, value):
        if isinstance(value, TruncElem) and value.R is self:
            return value
        return TruncElem(self, (self.base(value),) + (self.base.zero,) * self.n)

    def t(self):
        if self.n == 0:
            return self.zero
        z = self.base.zero
        return TruncElem(self, tuple(self.base.one if i == 1 else z for i in range(self.n + 1)))

    def is_zero(self, a) -> bool:
        return all(self.base.is_zero(c) for c in self(a).c)

    def is_unit(self, a) -> bool:
        return self.base.is_unit(self(a).c[0])

    def inv(self, a):
        a = self(a)
        u = self.base.inv(a.c[0])
        # geometric series in the nilpotent part
        nil = a * u - 1
        out, power = self.one, self.one
        for _ in range(self.n):
            power = power * (-nil)
            out = out + power
        return out * u


class TruncElem:
    __slots__ = ("R", "c")

    def __init__(self, R, c):
        self.R = R
        self.c = c

    def _o(self, other):
        return other if isinstance(other, TruncElem) and other.R is self.R else self.R(other)

    def __add__(self, other):
        o = self._o(other)
        return TruncElem(self.R, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return TruncElem(self.R, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._o(other)
        return TruncElem(self.R, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return self._o(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncElem(self.R, tuple(a * other for a in self.c))
        o = self._o(other)
        n = self.R.n
        zero = self.R.base.zero
        out = [zero] * (n + 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = o.c[j]
                if b == 0:
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncElem(self.R, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.R.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = self._o(other)
        except TypeError:
            return NotImplemented
        return all(a == b for a, b in zip(self.c, o.c))

    def __hash__(self):
        return hash(self.c)

    def coeff(self, k: int):
        return self.c[k]

    def __repr__(self):
        return " + ".join(f"({a})*t^{i}" for i, a in enumerate(self.c))


class SquareFreeRing(Ring):
    def __init__(self, base: Ring, k: int):
        self.base = base
        self.k = k
        self.full = (1 << k) - 1
        self.characteristic = base.characteristic
        self.name = f"{base.name}[t1..t{k}]/(t_i^2)"

    def __call__(self, value):
        if isinstance(value, SquareFreeElem) and value.R is self:
            return value
        v = self.base(value)
        return SquareFreeElem(self, {} if v == 0 else {0: v})

    def t(self, i: int):
        return SquareFreeElem(self, {1 << i: self.base.one})

    def is_zero(self, a) -> bool:
        return not self(a).d

    def is_unit(self, a) -> bool:
        return self.base.is_unit(self(a).d.get(0, self.base.zero))


class SquareFreeElem:
    __slots__ = ("R", "d")

    def __init__(self, R, d):
        self.R = R
        self.d = d

    def _o(self, other):
        return other if isinstance(other, SquareFreeElem) and other.R is self.R else self.R(other)

    def __add__(self, other):
        o = self._o(other)
        out = dict(self.d)
        for m, c in o.d.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return SquareFreeElem(self.R, out)

    __radd__ = __add__

    def __neg__(self):
        return SquareFreeElem(self.R, {m: -c for m, c in self.d.items()})

    def __sub__(self, other):
        return self + (-self._o(other))

    def __rsub__(self, other):
        return self._o(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return SquareFreeElem(self.R, {})
            return SquareFreeElem(self.R, {m: c * other for m, c in self.d.items()})
        o = self._o(other)
        out: dict = {}
        for m1, c1 in self.d.items():
            for m2, c2 in o.d.items():
                if m1 & m2:
                    continue
                m = m1 | m2
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return SquareFreeElem(self.R, {m: c for m, c in out.items() if not c == 0})

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = self._o(other)
        except TypeError:
            return NotImplemented
        return self.d == o.d

    def __hash__(self):
        return hash(tuple(sorted(self.d)))

    def coeff(self, mask: int):
        return self.d.get(mask, self.R.base.zero)

    def __repr__(self):
        return " + ".join(f"({c})*t{m:b}" for m, c in sorted(self.d.items()))
