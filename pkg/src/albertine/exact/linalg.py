"""Exact integer and rational linear algebra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rings import Ring


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def T(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def is_symmetric(self) -> bool:
        return self.rows == self.T().rows

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols}"]
        lines += [" ".join(str(x) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        tokens = text.split()
        r, c = int(tokens[0]), int(tokens[1])
        vals = [int(t) for t in tokens[2:]]
        if len(vals) != r * c:
            raise ValueError(f"expected {r * c} entries, got {len(vals)}")
        return cls(tuple(tuple(vals[i * c:(i + 1) * c]) for i in range(r)))


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` square unimodular and ``U @ M`` equal to ``H``
    stacked over the dropped zero rows.  Pivots are positive, entries above a
    pivot lie in ``[0, pivot)``.
    """
    A = [list(r) for r in M.rows]
    m, n = M.nrows, M.ncols
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for j in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if A[i][j] == 0:
                continue
            a, b = A[r][j], A[i][j]
            g, s, t = _xgcd(a, b)
            ag, bg = a // g, b // g
            for X in (A, U):
                ri, rr = X[i], X[r]
                X[r], X[i] = ([s * x + t * y for x, y in zip(rr, ri)],
                              [-bg * x + ag * y for x, y in zip(rr, ri)])
        if A[r][j] == 0:
            continue
        if A[r][j] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        p = A[r][j]
        for i in range(r):
            q = A[i][j] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return IntMatrix(tuple(tuple(row) for row in A[:r])), IntMatrix(tuple(tuple(row) for row in U))


def det(M) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    rows = M.rows if isinstance(M, IntMatrix) else M
    A = [list(r) for r in rows]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def ldl_signature(G) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric rational matrix, by exact congruence."""
    rows = G.rows if isinstance(G, IntMatrix) else G
    A = [[Fraction(x) for x in r] for r in rows]
    n = len(A)
    if any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise ValueError("ldl_signature needs a symmetric matrix")
    pos = neg = 0
    while A:
        k = len(A)
        piv = next((i for i in range(k) if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k) for j in range(i + 1, k) if A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i -> e_i + e_j makes the (i, i) entry 2 a_ij
            for c in range(k):
                A[i][c] += A[j][c]
            for c in range(k):
                A[c][i] += A[c][j]
            piv = i
        d = A[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = [i for i in range(k) if i != piv]
        A = [[A[a][b] - A[a][piv] * A[piv][b] / d for b in rest] for a in rest]
    return pos, neg, n - pos - neg


# --- linear algebra over an arbitrary field context ----------------------

def mat_mul(R: Ring, A, B):
    cols = list(zip(*B))
    out = []
    for r in A:
        row = []
        for c in cols:
            s = R.zero
            for a, b in zip(r, c):
                if a != 0 and b != 0:
                    s = s + a * b
            row.append(s)
        out.append(row)
    return out


def mat_vec(R: Ring, A, v):
    out = []
    for r in A:
        s = R.zero
        for a, b in zip(r, v):
            if a != 0 and b != 0:
                s = s + a * b
        out.append(s)
    return out


def mat_inverse(R: Ring, A):
    """Inverse by Gauss-Jordan; pivots must be units of ``R``."""
    n = len(A)
    M = [list(r) + [R.one if i == j else R.zero for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if R.is_unit(M[i][c])), None)
        if p is None:
            raise ZeroDivisionError("matrix is not invertible over " + R.name)
        M[c], M[p] = M[p], M[c]
        inv = R.inv(M[c][c])
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [r[n:] for r in M]


def mat_det(R: Ring, A):
    """Determinant by cofactor-free elimination over a field, Laplace for small rings."""
    n = len(A)
    if n == 0:
        return R.one
    if not R.is_field:
        return _laplace(R, A)
    M = [list(r) for r in A]
    out = R.one
    for c in range(n):
        p = next((i for i in range(c, n) if not R.is_zero(M[i][c])), None)
        if p is None:
            return R.zero
        if p != c:
            M[c], M[p] = M[p], M[c]
            out = -out
        out = out * M[c][c]
        inv = R.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return out


def _laplace(R, A):
    n = len(A)
    if n == 1:
        return A[0][0]
    out = R.zero
    for j in range(n):
        if A[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in A[1:]]
        term = A[0][j] * _laplace(R, minor)
        out = out + term if j % 2 == 0 else out - term
    return out


class FieldSpan:
    """Incrementally grown subspace of F^d in reduced echelon form."""

    def __init__(self, R: Ring, d: int):
        if not R.is_field:
            raise ValueError(f"{R} is not a field")
        self.R, self.d = R, d
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if not self.R.is_zero(x)), None)
        if p is None:
            return False
        inv = self.R.inv(v[p])
        v = [x * inv for x in v]
        for k, row in enumerate(self.rows):
            if row[p] != 0:
                f = row[p]
                self.rows[k] = [a - f * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def __contains__(self, v) -> bool:
        return all(self.R.is_zero(x) for x in self.reduce(v))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self):
        order = sorted(range(len(self.rows)), key=lambda k: self.pivots[k])
        return [self.rows[k] for k in order]


class ModSpan:
    """Submodule of (ZZ/n)^d, stored as the HNF of its preimage lattice in ZZ^d.

    The preimage always contains n*ZZ^d, so its HNF is square, upper
    triangular and has pivots dividing n; two submodules are equal exactly when
    these matrices agree.  Membership tests are vectorized over numpy arrays.
    """

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self.H = [[n if i == j else 0 for j in range(d)] for i in range(d)]

    def residual(self, W: np.ndarray) -> np.ndarray:
        """Rows reduced against the lattice; a row is a member iff it reduces to 0."""
        W = np.array(W, dtype=np.int64) % self.n
        if W.ndim == 1:
            W = W[None, :]
        for j in range(self.d):
            h = self.H[j][j]
            if h == self.n:
                continue
            q = W[:, j] // h
            if q.any():
                W = (W - np.outer(q, np.array(self.H[j], dtype=np.int64))) % self.n
        return W

    def contains(self, v) -> bool:
        return not self.residual(np.array([v])).any()

    def add(self, v) -> bool:
        v = [int(x) % self.n for x in v]
        if self.contains(v):
            return False
        H, _ = hnf(IntMatrix(tuple(tuple(r) for r in self.H) + (tuple(v),)))
        self.H = [list(r) for r in H.rows]
        return True

    def key(self) -> tuple:
        return tuple(tuple(r) for r in self.H)

    def is_full(self) -> bool:
        return all(self.H[j][j] == 1 for j in range(self.d))

    def size_log(self) -> list[int]:
        """Per-coordinate quotient orders n / pivot; their product is the submodule order."""
        return [self.n // self.H[j][j] for j in range(self.d)]

    @property
    def dim(self) -> int:
        """Number of free ZZ/n coordinates (the dimension when n is prime)."""
        return sum(1 for j in range(self.d) if self.H[j][j] == 1)

    def generators(self) -> list[list[int]]:
        return [[x % self.n for x in r] for j, r in enumerate(self.H) if self.H[j][j] != self.n]
