from fractions import Fraction

import flint
import pytest

from albertine import comp, her3
from albertine.exact import (GF, GF8, QQ, ZZ, IntMatrix, Modular, PolyRing, SquareFreeRing, TruncRing, det,
                             evaluate, extend, hnf, ldl_signature, mat_det, mat_inverse, mat_mul)
from albertine.exact.rings import is_irreducible


# --- rings ---------------------------------------------------------------------------

def test_rationals_are_reduced():
    x = QQ(Fraction(6, -4))
    assert (x.numerator, x.denominator) == (-3, 2)


def test_integer_units():
    assert ZZ.is_unit(-1) and not ZZ.is_unit(2)
    with pytest.raises(ZeroDivisionError):
        ZZ.inv(3)


def test_gf8_modulus_and_generator():
    w = GF8.gen()
    assert GF8.order == 8
    assert w**3 + w + 1 == 0
    # w generates the multiplicative group of order 7
    assert len({(w**k).v for k in range(7)}) == 7


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        GF(2, 2, (1, 0, 1))  # w^2 + 1 = (w + 1)^2
    with pytest.raises(ValueError):
        GF(4)


def test_irreducibility_oracle_on_small_cubics():
    # a cubic over GF(p) is irreducible iff it has no root
    for p in (2, 3):
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    coeffs = [c, b, a, 1]
                    has_root = any((x**3 + a * x * x + b * x + c) % p == 0 for x in range(p))
                    assert is_irreducible(coeffs, p) == (not has_root)


def test_modular_partial_division():
    Z4 = Modular(4)
    assert Z4.inv(3) == 3
    with pytest.raises(ZeroDivisionError):
        Z4.inv(2)
    assert not Z4.is_field and Modular(5).is_field


def test_finite_field_inverses():
    for F in (GF(7), GF8, GF(3, 2)):
        for a in F.elements():
            if a != 0:
                assert a * F.inv(a) == 1


# --- polynomials ---------------------------------------------------------------------

def test_poly_names_distinct():
    with pytest.raises(ValueError):
        PolyRing(ZZ, ["x", "x"])


def test_laurent_inverse():
    R = PolyRing(ZZ, ["a", "b"], laurent=["a"])
    a, b = R.gen("a"), R.gen("b")
    assert a * R.inv(a) == 1
    with pytest.raises(ZeroDivisionError):
        R.inv(b)
    assert R.is_unit(-a**3) and not R.is_unit(2 * a)


def test_poly_canonical_form():
    R = extend(ZZ, "x", 2)
    x0, x1 = R.gens()
    f = (x0 + x1) ** 2
    g = x0 * x0 + 2 * x0 * x1 + x1 * x1
    assert f == g and hash(f) == hash(g)
    assert all(c != 0 for c in (f - g + x0).terms().values())


def test_dict_backend_over_extension_field():
    R = PolyRing(GF8, ["s"])
    s = R.gen("s")
    w = GF8.gen()
    f = (s + w) * (s + w)
    # characteristic 2: the cross term vanishes
    assert f == s * s + w * w
    assert R.backend == "dict"


def test_evaluate_specializes():
    R = extend(QQ, "x", 2)
    x0, x1 = R.gens()
    f = x0 * x0 * x1 - 3
    assert evaluate(f, {"x0": Fraction(1, 2), "x1": 4}, QQ) == -2


def test_truncated_ring_coefficients():
    # ZZ[t]/(t^3)
    T = TruncRing(ZZ, 2)
    t = T.t()
    e = (1 + t) ** 5
    assert [e.coeff(k) for k in range(3)] == [1, 5, 10]
    assert t * t * t == 0


def test_square_free_ring():
    S = SquareFreeRing(ZZ, 3)
    t0, t1, t2 = (S.t(i) for i in range(3))
    s = 1 + t0 + t1 + t2
    e = s * s * s
    assert e.coeff(0b111) == 6
    assert (t0 * t0).coeff(0b001) == 0


# --- integer matrices -----------------------------------------------------------------

def test_hnf_identity():
    Id = IntMatrix.identity(3)
    H, U = hnf(Id)
    assert H == Id and U == Id


def test_hnf_drops_zero_rows():
    M = IntMatrix(((2, 0), (0, 2), (1, 1)))
    H, U = hnf(M)
    assert H.rows == ((1, 1), (0, 2))
    assert (U @ M).rows[:2] == H.rows
    assert all(x == 0 for x in (U @ M).rows[2])
    assert abs(det(U)) == 1


def test_hnf_of_coxeter_spanning_set():
    M = comp.coxeter_spanning_matrix()
    H, U = hnf(M)
    assert (H.nrows, H.ncols) == (8, 8)
    assert abs(det(H)) == 16
    # agrees with FLINT's HNF up to the zero rows it keeps
    ref = flint.fmpz_mat([list(r) for r in M.rows]).hnf()
    ref_rows = [tuple(int(ref[i, j]) for j in range(8)) for i in range(ref.nrows())]
    assert list(H.rows) == [r for r in ref_rows if any(r)]


def test_det_against_flint():
    M = IntMatrix(((3, 1, 4, 1), (5, 9, 2, 6), (5, 3, 5, 8), (9, 7, 9, 3)))
    assert det(M) == int(flint.fmpz_mat([list(r) for r in M.rows]).det())
    assert det(IntMatrix(((1, 2), (2, 4)))) == 0


def test_int_matrix_text_roundtrip():
    M = IntMatrix(((1, -2, 3), (4, 5, -6)))
    text = M.to_text()
    assert text.splitlines()[0] == "2 3"
    assert IntMatrix.from_text(text) == M
    with pytest.raises(ValueError):
        IntMatrix.from_text("2 2\n1 2 3")


def test_ragged_matrix_rejected():
    with pytest.raises(ValueError):
        IntMatrix(((1, 2), (3,)))


@pytest.mark.parametrize("G, expected", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (3, 0, 0)),
    ([[1, 0, 0], [0, -1, 0], [0, 0, 0]], (1, 1, 1)),
    ([[0, 1], [1, 0]], (1, 1, 0)),
])
def test_ldl_signature_small(G, expected):
    assert ldl_signature(G) == expected


def test_ldl_rejects_asymmetric():
    with pytest.raises(ValueError):
        ldl_signature([[1, 2], [0, 1]])


def test_split_albert_trace_signature(split_albert_q):
    J = split_albert_q
    assert ldl_signature([[J.T[a][b] for b in range(27)] for a in range(27)]) == (15, 12, 0)


def test_field_linear_algebra():
    A = [[QQ(2), QQ(1)], [QQ(1), QQ(1)]]
    Ainv = mat_inverse(QQ, A)
    assert mat_mul(QQ, A, Ainv) == [[1, 0], [0, 1]]
    assert mat_det(QQ, A) == 1
    F = GF(7)
    B = [[F(3), F(5)], [F(1), F(4)]]
    assert mat_det(F, B) == F(3 * 4 - 5)
