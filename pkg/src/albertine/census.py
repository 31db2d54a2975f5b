"""Integral lattices of the Coxeter-order Albert algebra and its isotope, short-vector
enumeration, and the count of trace-one elements with vanishing adjoint."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import flint

from . import comp, her3
from .cns import CubicJordan, generic_ring
from .exact import QQ, IntMatrix, det, ldl_signature


class IndefiniteLattice(ValueError):
    pass


class CertificateError(AssertionError):
    pass


@dataclass(frozen=True)
class IntLattice:
    gram: IntMatrix
    provenance: str = ""

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def signature(self):
        return ldl_signature(self.gram)

    def is_positive_definite(self) -> bool:
        return self.signature() == (self.dim, 0, 0)

    def det(self) -> int:
        return det(self.gram)

    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.dim))

    def value(self, x) -> int:
        g = self.gram.rows
        return sum(x[i] * g[i][j] * x[j] for i in range(self.dim) for j in range(self.dim))


# --- enumeration ---------------------------------------------------------------------

def _lll(G: IntMatrix):
    """Reduced Gram R = U G U^T and the transform U (rows express new basis vectors)."""
    M = flint.fmpz_mat([list(r) for r in G.rows])
    Rm, U = M.lll(rep="gram", transform=True)
    to_list = lambda A: [[int(A[i, j]) for j in range(A.ncols())] for i in range(A.nrows())]
    return to_list(Rm), to_list(U)


def _cholesky(G):
    """Rational q with x^T G x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2."""
    n = len(G)
    q = [[Fraction(v) for v in r] for r in G]
    for i in range(n):
        if q[i][i] <= 0:
            raise IndefiniteLattice("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for j in range(k, n):
                q[k][j] -= q[k][i] * q[i][j]
    return q


def _sqrt_ceil(r: Fraction) -> int:
    """An integer s >= sqrt(r)."""
    p, d = r.numerator, r.denominator
    return isqrt(p * d) // d + 1


def enumerate_upto(L: IntLattice, bound: int) -> list[tuple]:
    """All x with x^T G x <= bound, sorted."""
    if bound < 0:
        return []
    if not L.is_positive_definite():
        raise IndefiniteLattice("enumeration needs a positive definite lattice")
    Gr, U = _lll(L.gram)
    q = _cholesky(Gr)
    n = L.dim
    found = []
    y = [0] * n

    def walk(i, rem):
        if i < 0:
            found.append(tuple(y))
            return
        c = sum((q[i][j] * y[j] for j in range(i + 1, n)), Fraction(0))
        s = _sqrt_ceil(rem / q[i][i])
        centre = -c
        lo = (centre.numerator // centre.denominator) - s
        for v in range(lo, lo + 2 * s + 2):
            t = q[i][i] * (v + c) ** 2
            if t <= rem:
                y[i] = v
                walk(i - 1, rem - t)
        y[i] = 0

    walk(n - 1, Fraction(bound))
    # back to the original basis: x = U^T y
    out = [tuple(sum(U[k][i] * yy[k] for k in range(n)) for i in range(n)) for yy in found]
    return sorted(out)


def enumerate_norm(L: IntLattice, value: int) -> list[tuple]:
    return [x for x in enumerate_upto(L, value) if L.value(x) == value]


# --- the Coxeter-order models --------------------------------------------------------

@dataclass
class CensusData:
    J: CubicJordan
    her: IntLattice
    lam: IntLattice
    v: list
    beta: list
    certificates: dict


def beta_element(C=None):
    """(-1 + e1 + ... + e7)/2 in the HNF coordinates of the Coxeter order."""
    C = C or comp.coxeter_order()
    return C.frame.from_frame([Fraction(-1, 2)] + [Fraction(1, 2)] * 7)


def _trace_gram(J: CubicJordan, M=None) -> IntMatrix:
    d = J.dim
    if M is None:
        return IntMatrix(tuple(tuple(int(J.T[a][b]) for b in range(d)) for a in range(d)))
    cols = [[M[a][b] for a in range(d)] for b in range(d)]
    return IntMatrix(tuple(tuple(int(J.trace_form(cols[a], J.basis(b))) for b in range(d)) for a in range(d)))


_CACHE: dict = {}


def build_census_lattices() -> CensusData:
    if "data" in _CACHE:
        return _CACHE["data"]
    C = comp.coxeter_order()
    J = her3.her3(C)
    # the reduction to trace-form value 1 rests on this identity
    G, (x,) = generic_ring(J, "x")
    tr, s = J.trace(x, G), J.quad_trace(x, G)
    if J.trace_form(x, x, G) != tr * tr - 2 * s:
        raise CertificateError("T(x, x) = Tr(x)^2 - 2 S(x) fails")
    b = beta_element(C)
    one = C.one()
    b2 = C.mul(b, b)
    certs = {
        "trace(beta) = -1": C.trace(b) == -1,
        "n(beta) = 2": C.norm(b) == 2,
        "beta^2 + beta + 2 = 0": all(x + y + 2 * z == 0 for x, y, z in zip(b2, b, one)),
        "trace(beta^3) = 5": C.trace(C.mul(b2, b)) == 5,
    }
    v = her3.element(J, (2, 2, 2), [b, b, b])
    certs["N(v) = 1"] = J.norm(v) == 1
    tr, s, nv = J.trace(v), J.quad_trace(v), J.norm(v)
    certs["min poly of v is (t-1)(t^2-5t+1)"] = (tr, s, nv) == (6, 6, 1)
    v2 = J.power(v, 2)
    v3 = J.power(v, 3)
    certs["v^3 - 6v^2 + 6v - 1 = 0"] = all(
        a - 6 * bb + 6 * c - e == 0 for a, bb, c, e in zip(v3, v2, v, J.one()))
    bad = [k for k, ok in certs.items() if not ok]
    if bad:
        raise CertificateError(f"certificate failure: {bad}")
    her = IntLattice(_trace_gram(J), "T on Her3(O)")
    lam = IntLattice(_trace_gram(J, J.U_matrix(v)), "T(U_v x, y) on Her3(O)")
    for L in (her, lam):
        if not L.is_positive_definite():
            raise CertificateError(f"{L.provenance} is not positive definite")
    data = CensusData(J, her, lam, v, b, certs)
    _CACHE["data"] = data
    return data


@dataclass
class CensusResult:
    which: str
    count: int
    witnesses: list
    norm_one: int

    def to_json(self) -> str:
        return json.dumps({"which": self.which, "count": self.count, "norm_one_vectors": self.norm_one,
                           "witnesses": [list(w) for w in self.witnesses]})


def idempotent_census(which: str) -> CensusResult:
    """Elements x with x# = 0 and trace 1, found among the vectors of trace-form value 1."""
    data = build_census_lattices()
    J = data.J
    if which == "her":
        L, trace = data.her, (lambda x: J.trace(x))
    elif which == "lambda":
        L, trace = data.lam, (lambda x: J.trace_form(data.v, x))
    else:
        raise ValueError(f"unknown census {which!r}")
    cands = enumerate_norm(L, 1)
    wit = [x for x in cands if trace(list(x)) == 1 and all(c == 0 for c in J.sharp(list(x)))]
    return CensusResult(which, len(wit), wit, len(cands))


def coxeter_lattice() -> IntLattice:
    C = comp.coxeter_order()
    G = tuple(tuple(int(C.bilinear(C.basis(i), C.basis(j))) for j in range(8)) for i in range(8))
    return IntLattice(IntMatrix(G), "bilinear norm form of the Coxeter order")


def root_count() -> int:
    return len(enumerate_norm(coxeter_lattice(), 2))


# --- signatures of the real models ---------------------------------------------------

def _model(name: str) -> CubicJordan:
    kind, size = name.rsplit("-", 1)
    r = {"6": 0, "9": 1, "15": 2, "27": 3}[size]
    if kind == "compact":
        return her3.her3(comp.compact_subalgebra(r, QQ))
    if kind == "indefinite":
        return her3.her3(comp.compact_subalgebra(r, QQ), (1, 1, -1))
    if kind == "split" and r > 0:
        return her3.her3(comp.construct(["split_etale", "mat2", "zorn"][r - 1], QQ))
    raise KeyError(name)


REAL_MODELS = [f"compact-{d}" for d in (6, 9, 15, 27)] + [f"indefinite-{d}" for d in (6, 9, 15, 27)] + \
    [f"split-{d}" for d in (9, 15, 27)]


def expected_signature(name: str) -> int:
    kind, size = name.rsplit("-", 1)
    r = {"6": 0, "9": 1, "15": 2, "27": 3}[size]
    return {"compact": 3 * (1 + 2 ** r), "indefinite": 3 - 2 ** r, "split": 3}[kind]


def trace_signature(name: str) -> tuple[int, tuple]:
    if name not in REAL_MODELS:
        raise KeyError(f"unknown model {name!r}; choose from {', '.join(REAL_MODELS)}")
    J = _model(name)
    sig = ldl_signature([[J.T[a][b] for b in range(J.dim)] for a in range(J.dim)])
    return sig[0] - sig[1], sig
